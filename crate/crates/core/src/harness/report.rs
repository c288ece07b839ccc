//! Run summaries and side-by-side comparisons.

use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::optimizers::Phase;

use super::trace::{fmt_real, TraceRecord};

/// Fractions of iterations spent in the sparse and non-sparse phases.
pub fn phase_occupancy(records: &[TraceRecord]) -> Result<(f64, f64)> {
    if records.is_empty() {
        return Err(Error::data(
            None,
            "cannot compute phase occupancy of an empty trace",
        ));
    }
    let sparse = records.iter().filter(|r| r.phase == Phase::Sparse).count();
    let total = records.len() as f64;
    let sparse_fraction = sparse as f64 / total;
    Ok((sparse_fraction, 1.0 - sparse_fraction))
}

/// First iteration whose loss is strictly below `threshold`.
pub fn iterations_to_threshold(records: &[TraceRecord], threshold: f64) -> Option<u64> {
    records
        .iter()
        .find(|r| r.loss < threshold)
        .map(|r| r.global_iteration)
}

/// A trace plus the label and problem it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledTrace {
    pub label: String,
    /// Problem identifier; `None` when unknown, which skips the
    /// same-problem check for this trace.
    pub problem: Option<String>,
    pub records: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub label: String,
    pub iterations: usize,
    pub final_loss: f64,
    pub best_test_error: Option<f64>,
    pub best_epoch: Option<u64>,
    pub iterations_to_threshold: Option<u64>,
    pub sparse_fraction: f64,
    pub nonsparse_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub problem: Option<String>,
    pub threshold: Option<f64>,
    pub rows: Vec<SummaryRow>,
}

pub fn summarize(trace: &LabeledTrace, threshold: Option<f64>) -> Result<SummaryRow> {
    let (sparse_fraction, nonsparse_fraction) = phase_occupancy(&trace.records)?;
    let last = trace
        .records
        .last()
        .expect("non-empty after occupancy check");
    // earliest epoch wins ties
    let best = trace
        .records
        .iter()
        .filter_map(|r| r.test_error.map(|e| (e, r.epoch)))
        .fold(None, |best: Option<(f64, u64)>, cur| match best {
            Some(b) if b.0 <= cur.0 => Some(b),
            _ => Some(cur),
        });
    Ok(SummaryRow {
        label: trace.label.clone(),
        iterations: trace.records.len(),
        final_loss: last.loss,
        best_test_error: best.map(|b| b.0),
        best_epoch: best.map(|b| b.1),
        iterations_to_threshold: threshold.and_then(|t| iterations_to_threshold(&trace.records, t)),
        sparse_fraction,
        nonsparse_fraction,
    })
}

/// Summarise at least two traces of the same problem.
pub fn compare_runs(traces: &[LabeledTrace], threshold: Option<f64>) -> Result<ComparisonReport> {
    if traces.len() < 2 {
        return Err(Error::config(
            "traces",
            "need at least two traces to compare",
        ));
    }
    if let Some(t) = threshold {
        if !t.is_finite() {
            return Err(Error::config("threshold", "must be finite"));
        }
    }
    let mut problem: Option<&str> = None;
    for t in traces {
        match (problem, t.problem.as_deref()) {
            (Some(p), Some(q)) if p != q => {
                return Err(Error::config(
                    "traces",
                    format!("cannot compare runs of different problems (`{p}` vs `{q}`)"),
                ))
            }
            (None, Some(q)) => problem = Some(q),
            _ => {}
        }
    }
    let rows = traces
        .iter()
        .map(|t| {
            summarize(t, threshold).map_err(|e| match e {
                Error::Data { line, reason } => {
                    Error::data(line, format!("trace `{}`: {reason}", t.label))
                }
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport {
        problem: problem.map(str::to_string),
        threshold,
        rows,
    })
}

impl ComparisonReport {
    pub const CSV_HEADER: [&'static str; 8] = [
        "label",
        "iterations",
        "final_loss",
        "best_test_error",
        "best_epoch",
        "iterations_to_threshold",
        "sparse_fraction",
        "nonsparse_fraction",
    ];

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let err = |e: csv::Error| Error::data(None, e.to_string());
        w.write_record(Self::CSV_HEADER).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.label.clone(),
                r.iterations.to_string(),
                fmt_real(r.final_loss),
                r.best_test_error.map(fmt_real).unwrap_or_default(),
                r.best_epoch.map(|e| e.to_string()).unwrap_or_default(),
                match (self.threshold, r.iterations_to_threshold) {
                    (None, _) => String::new(),
                    (Some(_), None) => "never".into(),
                    (Some(_), Some(i)) => i.to_string(),
                },
                fmt_real(r.sparse_fraction),
                fmt_real(r.nonsparse_fraction),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| Error::data(None, e.to_string()))
    }

    pub fn row(&self, label: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.label == label)
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.problem {
            writeln!(f, "problem: {p}")?;
        }
        let width = self
            .rows
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let threshold = self
            .threshold
            .map_or_else(|| "to threshold".to_string(), |t| format!("iters < {t}"));
        writeln!(
            f,
            "{:<width$}  {:>10}  {:>14}  {:>10}  {:>6}  {:>14}  {:>7}  {:>9}",
            "label", "iters", "final loss", "best err", "epoch", threshold, "sparse", "nonsparse"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<width$}  {:>10}  {:>14.6e}  {:>10}  {:>6}  {:>14}  {:>7.3}  {:>9.3}",
                r.label,
                r.iterations,
                r.final_loss,
                r.best_test_error
                    .map_or_else(|| "-".into(), |e| format!("{e:.4}")),
                r.best_epoch.map_or_else(|| "-".into(), |e| e.to_string()),
                match (self.threshold, r.iterations_to_threshold) {
                    (None, _) => "-".into(),
                    (Some(_), None) => "never".into(),
                    (Some(_), Some(i)) => i.to_string(),
                },
                r.sparse_fraction,
                r.nonsparse_fraction,
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(losses: &[f64], phases: &[Phase]) -> Vec<TraceRecord> {
        losses
            .iter()
            .zip(phases)
            .enumerate()
            .map(|(i, (&loss, &phase))| TraceRecord {
                epoch: i as u64 / 2,
                global_iteration: i as u64,
                lr: 0.1,
                loss,
                mean_loss: 0.0,
                phase,
                beta_applied: 0.9,
                test_error: (i % 2 == 1).then_some(1.0 / (i as f64 + 1.0)),
                wall_ms: 0,
            })
            .collect()
    }

    #[test]
    fn occupancy_sums_to_one() {
        let t = trace(
            &[1.0; 3],
            &[Phase::Sparse, Phase::NonSparse, Phase::NonSparse],
        );
        let (s, n) = phase_occupancy(&t).unwrap();
        assert!((s - 1.0 / 3.0).abs() < 1e-15);
        assert!((s + n - 1.0).abs() < 1e-12);
        assert!(phase_occupancy(&[]).is_err());
    }

    #[test]
    fn summary_fields() {
        let t = LabeledTrace {
            label: "a".into(),
            problem: Some("p".into()),
            records: trace(&[3.0, 2.0, 1.0, 0.5], &[Phase::NonSparse; 4]),
        };
        let row = summarize(&t, Some(1.5)).unwrap();
        assert_eq!(row.iterations_to_threshold, Some(2));
        assert_eq!(row.final_loss, 0.5);
        assert_eq!(row.best_test_error, Some(0.25));
        assert_eq!(row.best_epoch, Some(1));
        assert_eq!(
            summarize(&t, Some(0.1)).unwrap().iterations_to_threshold,
            None
        );
    }

    #[test]
    fn mismatched_problems_rejected() {
        let a = LabeledTrace {
            label: "a".into(),
            problem: Some("saddle".into()),
            records: trace(&[1.0], &[Phase::Sparse]),
        };
        let mut b = a.clone();
        b.problem = Some("rosenbrock".into());
        assert!(compare_runs(&[a.clone(), b], None).is_err());
        assert!(compare_runs(std::slice::from_ref(&a), None).is_err());
        let mut c = a.clone();
        c.problem = None;
        assert!(compare_runs(&[a, c], None).is_ok());
    }
}
