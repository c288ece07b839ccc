//! Independent scalar reference implementations the integration tests
//! compare the library against. Written coordinate by coordinate with no
//! shared code from the crate.

#![allow(dead_code)]

use std::collections::VecDeque;

/// One heavy-ball step on a single coordinate: returns (θ', v').
pub fn momentum_scalar(theta: f64, v: f64, g: f64, lr: f64, beta: f64, wd: f64) -> (f64, f64) {
    let g = g + wd * theta;
    let v = beta * v + g;
    (theta - lr * v, v)
}

/// One AdaGrad step on a single coordinate: returns (θ', G').
pub fn adagrad_scalar(theta: f64, sum_sq: f64, g: f64, lr: f64, eps: f64) -> (f64, f64) {
    let sum_sq = sum_sq + g * g;
    (theta - lr / (sum_sq + eps).sqrt() * g, sum_sq)
}

/// One Adam step on a single coordinate, where `t` is the step number after
/// incrementing: returns (θ', m', v').
#[allow(clippy::too_many_arguments)]
pub fn adam_scalar(
    theta: f64,
    m: f64,
    v: f64,
    g: f64,
    t: u64,
    lr: f64,
    b1: f64,
    b2: f64,
    eps: f64,
) -> (f64, f64, f64) {
    let m = b1 * m + (1.0 - b1) * g;
    let v = b2 * v + (1.0 - b2) * g * g;
    let mut p1 = 1.0;
    let mut p2 = 1.0;
    for _ in 0..t {
        p1 *= b1;
        p2 *= b2;
    }
    let m_hat = m / (1.0 - p1);
    let v_hat = v / (1.0 - p2);
    (theta - lr * m_hat / (v_hat + eps).sqrt(), m, v)
}

/// Brute-force mean-loss oracle: keeps every loss and recomputes from scratch.
pub enum MeanOracle {
    Cumulative(Vec<f64>),
    Window(usize, VecDeque<f64>),
    Ema(f64, Option<f64>),
}

impl MeanOracle {
    pub fn push(&mut self, loss: f64) -> f64 {
        match self {
            MeanOracle::Cumulative(all) => {
                all.push(loss);
                all.iter().sum::<f64>() / all.len() as f64
            }
            MeanOracle::Window(w, buf) => {
                buf.push_back(loss);
                if buf.len() > *w {
                    buf.pop_front();
                }
                buf.iter().sum::<f64>() / buf.len() as f64
            }
            MeanOracle::Ema(alpha, state) => {
                let next = match *state {
                    None => loss,
                    Some(prev) => (1.0 - *alpha) * prev + *alpha * loss,
                };
                *state = Some(next);
                next
            }
        }
    }
}

/// Rosenbrock gradient in two dimensions, written out by hand.
pub fn rosenbrock2_grad(x: f64, y: f64) -> (f64, f64) {
    (
        -2.0 * (1.0 - x) - 400.0 * x * (y - x * x),
        200.0 * (y - x * x),
    )
}

/// Parse a trace CSV into rows of cells with the last (wall_ms) column removed.
pub fn strip_wall_ms(csv_text: &str) -> Vec<String> {
    csv_text
        .lines()
        .map(|line| match line.rfind(',') {
            Some(i) => line[..i].to_string(),
            None => line.to_string(),
        })
        .collect()
}
