use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_scalar, Error, Result};

/// Which side of the running mean loss the current loss falls on.
///
/// `Sparse` means the loss is strictly below the mean; everything else,
/// including a tie, is `NonSparse`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Sparse,
    NonSparse,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Sparse => "Sparse",
            Phase::NonSparse => "NonSparse",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Sparse" => Ok(Phase::Sparse),
            "NonSparse" => Ok(Phase::NonSparse),
            other => Err(Error::data(None, format!("unknown phase `{other}`"))),
        }
    }
}

pub fn classify_phase(loss: f64, mean_loss: f64) -> Result<Phase> {
    check_scalar("loss", loss)?;
    check_scalar("mean loss", mean_loss)?;
    Ok(if loss < mean_loss {
        Phase::Sparse
    } else {
        Phase::NonSparse
    })
}

/// How the running mean loss is formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrackerMode {
    /// Mean of every loss seen so far.
    Cumulative,
    /// Mean of the last `W` losses.
    Window(usize),
    /// `m ← (1 − α)·m + α·L`, seeded with the first loss.
    Ema(f64),
}

#[derive(Debug, Clone, PartialEq)]
enum Stats {
    Cumulative {
        sum: f64,
        count: u64,
    },
    Window {
        losses: VecDeque<f64>,
        capacity: usize,
    },
    Ema {
        alpha: f64,
        value: Option<f64>,
    },
}

/// Running loss statistics plus the most recent phase decision.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTracker {
    stats: Stats,
    current_phase: Option<Phase>,
}

impl PhaseTracker {
    pub fn new(mode: TrackerMode) -> Result<Self> {
        let stats = match mode {
            TrackerMode::Cumulative => Stats::Cumulative { sum: 0.0, count: 0 },
            TrackerMode::Window(0) => {
                return Err(Error::config(
                    "tracker.size",
                    "window must hold at least one loss",
                ))
            }
            TrackerMode::Window(capacity) => Stats::Window {
                losses: VecDeque::with_capacity(capacity),
                capacity,
            },
            TrackerMode::Ema(alpha) if alpha > 0.0 && alpha <= 1.0 => {
                Stats::Ema { alpha, value: None }
            }
            TrackerMode::Ema(alpha) => {
                return Err(Error::config(
                    "tracker.alpha",
                    format!("must lie in (0, 1], got {alpha}"),
                ))
            }
        };
        Ok(Self {
            stats,
            current_phase: None,
        })
    }

    pub fn mode(&self) -> TrackerMode {
        match &self.stats {
            Stats::Cumulative { .. } => TrackerMode::Cumulative,
            Stats::Window { capacity, .. } => TrackerMode::Window(*capacity),
            Stats::Ema { alpha, .. } => TrackerMode::Ema(*alpha),
        }
    }

    /// Fold one loss into the statistics and return the new mean.
    pub fn update_mean_loss(&mut self, loss: f64) -> Result<f64> {
        check_scalar("loss", loss)?;
        match &mut self.stats {
            Stats::Cumulative { sum, count } => {
                *sum += loss;
                *count += 1;
            }
            Stats::Window { losses, capacity } => {
                if losses.len() == *capacity {
                    losses.pop_front();
                }
                losses.push_back(loss);
            }
            Stats::Ema { alpha, value } => {
                *value = Some(match *value {
                    None => loss,
                    Some(m) => (1.0 - *alpha) * m + *alpha * loss,
                });
            }
        }
        Ok(self.mean_loss().expect("at least one loss observed"))
    }

    /// Update the mean with `loss`, classify `loss` against it and remember
    /// the resulting phase.
    pub fn observe(&mut self, loss: f64) -> Result<(f64, Phase)> {
        let mean = self.update_mean_loss(loss)?;
        let phase = classify_phase(loss, mean)?;
        self.current_phase = Some(phase);
        Ok((mean, phase))
    }

    pub fn mean_loss(&self) -> Option<f64> {
        match &self.stats {
            Stats::Cumulative { count: 0, .. } => None,
            Stats::Cumulative { sum, count } => Some(*sum / *count as f64),
            Stats::Window { losses, .. } if losses.is_empty() => None,
            Stats::Window { losses, .. } => Some(losses.iter().sum::<f64>() / losses.len() as f64),
            Stats::Ema { value, .. } => *value,
        }
    }

    /// Number of losses currently contributing to the mean (EMA counts as one).
    pub fn retained(&self) -> usize {
        match &self.stats {
            Stats::Cumulative { count, .. } => *count as usize,
            Stats::Window { losses, .. } => losses.len(),
            Stats::Ema { value, .. } => usize::from(value.is_some()),
        }
    }

    /// Phase decided by the latest `observe`, `None` before the first one.
    pub fn current_phase(&self) -> Option<Phase> {
        self.current_phase
    }
}
