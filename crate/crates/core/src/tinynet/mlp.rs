use rand::Rng;

use super::{Dataset, Split};
use crate::error::{check_finite, check_len, Error, Result};
use crate::optimizers::ParameterVector;
use crate::rng::{self, Domain};

/// Fully connected network, ReLU on hidden layers, softmax cross-entropy head.
///
/// Parameters are flattened layer by layer as the weight matrix
/// (`fan_out × fan_in`, row-major) followed by the bias vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    layer_sizes: Vec<usize>,
    params: ParameterVector,
}

/// Offsets of one layer inside the flat parameter vector.
#[derive(Debug, Clone, Copy)]
struct LayerView {
    fan_in: usize,
    fan_out: usize,
    weights: usize,
    biases: usize,
}

fn parameter_count(layer_sizes: &[usize]) -> usize {
    layer_sizes.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
}

/// Glorot-uniform weights drawn from the `Init` stream of `seed`, zero biases.
pub fn init_mlp(layer_sizes: &[usize], seed: u64) -> Result<Mlp> {
    if layer_sizes.len() < 2 {
        return Err(Error::config(
            "layer_sizes",
            "need at least an input and an output layer",
        ));
    }
    if layer_sizes.contains(&0) {
        return Err(Error::config("layer_sizes", "layer sizes must be positive"));
    }
    let mut values = Vec::with_capacity(parameter_count(layer_sizes));
    for (layer, w) in layer_sizes.windows(2).enumerate() {
        let (fan_in, fan_out) = (w[0], w[1]);
        let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
        let mut rng = rng::stream(seed, Domain::Init, layer as u64);
        values.extend((0..fan_in * fan_out).map(|_| rng.random_range(-limit..limit)));
        values.extend(std::iter::repeat_n(0.0, fan_out));
    }
    Ok(Mlp {
        layer_sizes: layer_sizes.to_vec(),
        params: ParameterVector::new(values)?,
    })
}

impl Mlp {
    pub fn from_params(layer_sizes: &[usize], params: ParameterVector) -> Result<Self> {
        let template = init_mlp(layer_sizes, 0)?;
        check_len("mlp parameters", template.params.len(), params.len())?;
        Ok(Self {
            layer_sizes: layer_sizes.to_vec(),
            params,
        })
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn input_dim(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn classes(&self) -> usize {
        *self.layer_sizes.last().expect("at least two layers")
    }

    pub fn params(&self) -> &ParameterVector {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut ParameterVector {
        &mut self.params
    }

    fn layers(&self) -> Vec<LayerView> {
        let mut offset = 0;
        self.layer_sizes
            .windows(2)
            .map(|w| {
                let view = LayerView {
                    fan_in: w[0],
                    fan_out: w[1],
                    weights: offset,
                    biases: offset + w[0] * w[1],
                };
                offset += w[0] * w[1] + w[1];
                view
            })
            .collect()
    }

    fn check_features(&self, features: &[f64]) -> Result<usize> {
        let d = self.input_dim();
        if !features.len().is_multiple_of(d) {
            return Err(Error::Dimension {
                context: "feature matrix width",
                expected: d,
                actual: features.len() % d,
            });
        }
        check_finite("features", features)?;
        Ok(features.len() / d)
    }

    /// Pre-activations of every layer for a row-major `m × d` batch.
    fn forward(&self, params: &[f64], features: &[f64], m: usize) -> Vec<Vec<f64>> {
        let layers = self.layers();
        let mut outputs: Vec<Vec<f64>> = Vec::with_capacity(layers.len());
        for (l, layer) in layers.iter().enumerate() {
            let input: &[f64] = if l == 0 { features } else { &outputs[l - 1] };
            let hidden_input = l > 0;
            let w = &params[layer.weights..layer.biases];
            let b = &params[layer.biases..layer.biases + layer.fan_out];
            let mut z = vec![0.0; m * layer.fan_out];
            for r in 0..m {
                let x = &input[r * layer.fan_in..(r + 1) * layer.fan_in];
                for o in 0..layer.fan_out {
                    let row = &w[o * layer.fan_in..(o + 1) * layer.fan_in];
                    let mut acc = b[o];
                    for (wi, xi) in row.iter().zip(x) {
                        let xi = if hidden_input { xi.max(0.0) } else { *xi };
                        acc += wi * xi;
                    }
                    z[r * layer.fan_out + o] = acc;
                }
            }
            outputs.push(z);
        }
        outputs
    }

    /// Logits for a row-major batch, `m × classes`.
    pub fn logits(&self, features: &[f64]) -> Result<Vec<f64>> {
        let m = self.check_features(features)?;
        Ok(self
            .forward(&self.params, features, m)
            .pop()
            .expect("non-empty"))
    }

    /// Argmax class per row; ties go to the lowest index.
    pub fn predict(&self, features: &[f64]) -> Result<Vec<usize>> {
        let k = self.classes();
        let logits = self.logits(features)?;
        Ok(logits
            .chunks(k)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
                        if v > best.1 {
                            (i, v)
                        } else {
                            best
                        }
                    })
                    .0
            })
            .collect())
    }

    /// Mean softmax cross-entropy over the batch and its gradient with respect
    /// to the flattened parameters.
    pub fn forward_loss(&self, features: &[f64], labels: &[usize]) -> Result<(f64, Vec<f64>)> {
        self.loss_and_grad_at(&self.params, features, labels)
    }

    /// Same as [`Mlp::forward_loss`] at an arbitrary parameter vector.
    pub fn loss_and_grad_at(
        &self,
        params: &[f64],
        features: &[f64],
        labels: &[usize],
    ) -> Result<(f64, Vec<f64>)> {
        check_len("mlp parameters", self.params.len(), params.len())?;
        let m = self.check_features(features)?;
        check_len("labels", m, labels.len())?;
        if m == 0 {
            return Err(Error::data(None, "empty batch"));
        }
        let k = self.classes();
        if let Some(pos) = labels.iter().position(|&y| y >= k) {
            return Err(Error::data(
                None,
                format!(
                    "label {} at row {pos} is out of range for {k} classes",
                    labels[pos]
                ),
            ));
        }

        let layers = self.layers();
        let z = self.forward(params, features, m);
        let logits = z.last().expect("non-empty");

        // Softmax cross-entropy, shifted by the row max.
        let scale = 1.0 / m as f64;
        let mut loss = 0.0;
        let mut delta = vec![0.0; m * k];
        for r in 0..m {
            let row = &logits[r * k..(r + 1) * k];
            let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let sum: f64 = row.iter().map(|v| (v - max).exp()).sum();
            let log_sum = sum.ln() + max;
            loss += log_sum - row[labels[r]];
            for c in 0..k {
                let p = (row[c] - log_sum).exp();
                delta[r * k + c] = (p - f64::from(u8::from(c == labels[r]))) * scale;
            }
        }
        loss *= scale;

        let mut grad = vec![0.0; params.len()];
        for l in (0..layers.len()).rev() {
            let layer = layers[l];
            let (fan_in, fan_out) = (layer.fan_in, layer.fan_out);
            let input: &[f64] = if l == 0 { features } else { &z[l - 1] };
            let act = |v: f64| if l == 0 { v } else { v.max(0.0) };
            for r in 0..m {
                let d = &delta[r * fan_out..(r + 1) * fan_out];
                let x = &input[r * fan_in..(r + 1) * fan_in];
                for o in 0..fan_out {
                    let dro = d[o];
                    if dro == 0.0 {
                        continue;
                    }
                    let gw =
                        &mut grad[layer.weights + o * fan_in..layer.weights + (o + 1) * fan_in];
                    for (g, xi) in gw.iter_mut().zip(x) {
                        *g += dro * act(*xi);
                    }
                    grad[layer.biases + o] += dro;
                }
            }
            if l > 0 {
                let w = &params[layer.weights..layer.biases];
                let prev = &z[l - 1];
                let mut next = vec![0.0; m * fan_in];
                for r in 0..m {
                    for o in 0..fan_out {
                        let dro = delta[r * fan_out + o];
                        if dro == 0.0 {
                            continue;
                        }
                        for i in 0..fan_in {
                            next[r * fan_in + i] += dro * w[o * fan_in + i];
                        }
                    }
                    for i in 0..fan_in {
                        if prev[r * fan_in + i] <= 0.0 {
                            next[r * fan_in + i] = 0.0;
                        }
                    }
                }
                delta = next;
            }
        }

        if !loss.is_finite() {
            return Err(Error::NonFinite {
                what: "loss",
                index: 0,
            });
        }
        check_finite("gradient", &grad)?;
        Ok((loss, grad))
    }
}

/// Fraction of misclassified samples in one split of `dataset`.
pub fn evaluate(model: &Mlp, dataset: &Dataset, split: Split) -> Result<f64> {
    let idx = dataset.split_indices(split);
    if idx.is_empty() {
        return Err(Error::data(None, format!("{split:?} split is empty")));
    }
    let (features, labels) = dataset.gather(idx);
    let predicted = model.predict(&features)?;
    let wrong = predicted
        .iter()
        .zip(&labels)
        .filter(|(p, y)| p != y)
        .count();
    Ok(wrong as f64 / idx.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_count_matches_layout() {
        let m = init_mlp(&[2, 8, 2], 1).unwrap();
        assert_eq!(m.params().len(), 2 * 8 + 8 + 8 * 2 + 2);
    }

    #[test]
    fn seeded_init() {
        let a = init_mlp(&[2, 8, 2], 5).unwrap();
        let b = init_mlp(&[2, 8, 2], 5).unwrap();
        let c = init_mlp(&[2, 8, 2], 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.params(), c.params());
    }

    #[test]
    fn rejects_bad_layers() {
        assert!(init_mlp(&[], 0).is_err());
        assert!(init_mlp(&[3], 0).is_err());
        assert!(init_mlp(&[3, 0, 2], 0).is_err());
    }

    #[test]
    fn out_of_range_label() {
        let m = init_mlp(&[2, 3], 0).unwrap();
        assert!(matches!(
            m.forward_loss(&[0.0, 1.0], &[3]),
            Err(Error::Data { .. })
        ));
        assert!(m.forward_loss(&[0.0, 1.0, 2.0], &[0]).is_err());
    }

    #[test]
    fn ties_go_to_lowest_class() {
        // zero weights: every logit equals the bias, all zero
        let m = Mlp::from_params(&[2, 3], ParameterVector::zeros(9).unwrap()).unwrap();
        assert_eq!(m.predict(&[1.0, -1.0, 0.5, 0.5]).unwrap(), vec![0, 0]);
    }
}
