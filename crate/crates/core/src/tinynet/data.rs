use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_finite, Error, Result};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

/// Row-major feature matrix with integer labels and a train/test partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<f64>,
    dim: usize,
    labels: Vec<usize>,
    classes: usize,
    train: Vec<usize>,
    test: Vec<usize>,
}

impl Dataset {
    pub fn new(
        features: Vec<f64>,
        dim: usize,
        labels: Vec<usize>,
        classes: usize,
        train: Vec<usize>,
        test: Vec<usize>,
    ) -> Result<Self> {
        if dim == 0 || features.len() != dim * labels.len() {
            return Err(Error::data(
                None,
                format!(
                    "{} feature values do not form {} rows of width {dim}",
                    features.len(),
                    labels.len()
                ),
            ));
        }
        check_finite("features", &features)?;
        if let Some(row) = labels.iter().position(|&y| y >= classes) {
            return Err(Error::data(
                None,
                format!("label {} in row {row} is not below {classes}", labels[row]),
            ));
        }
        let mut seen = vec![false; labels.len()];
        for &i in train.iter().chain(&test) {
            match seen.get_mut(i) {
                Some(s) if !*s => *s = true,
                Some(_) => {
                    return Err(Error::data(None, format!("row {i} appears in both splits")))
                }
                None => return Err(Error::data(None, format!("split index {i} out of range"))),
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::data(
                None,
                "train and test splits do not cover every row",
            ));
        }
        Ok(Self {
            features,
            dim,
            labels,
            classes,
            train,
            test,
        })
    }

    /// Build a dataset and split it 80/20 per class using the `Split` stream of `seed`.
    pub fn with_stratified_split(
        features: Vec<f64>,
        dim: usize,
        labels: Vec<usize>,
        classes: usize,
        seed: u64,
    ) -> Result<Self> {
        let (train, test) = stratified_split(&labels, classes, 0.8, seed);
        Self::new(features, dim, labels, classes, train, test)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn split_indices(&self, split: Split) -> &[usize] {
        match split {
            Split::Train => &self.train,
            Split::Test => &self.test,
        }
    }

    /// Copy the listed rows into a contiguous batch.
    pub fn gather(&self, rows: &[usize]) -> (Vec<f64>, Vec<usize>) {
        let mut features = Vec::with_capacity(rows.len() * self.dim);
        for &i in rows {
            features.extend_from_slice(self.row(i));
        }
        (features, rows.iter().map(|&i| self.labels[i]).collect())
    }
}

/// Per-class shuffle, then the first `round(fraction · count)` rows of every
/// class go to train. Both index lists come back sorted.
pub fn stratified_split(
    labels: &[usize],
    classes: usize,
    train_fraction: f64,
    seed: u64,
) -> (Vec<usize>, Vec<usize>) {
    let mut rng = rng::stream(seed, Domain::Split, 0);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in 0..classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        let cut = (members.len() as f64 * train_fraction).round() as usize;
        train.extend_from_slice(&members[..cut]);
        test.extend_from_slice(&members[cut..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

/// Isotropic Gaussian clusters in the plane.
///
/// Centres sit evenly on a circle whose radius grows with the class count so
/// neighbouring centres stay about two units apart.
pub fn generate_blobs(classes: usize, per_class: usize, spread: f64, seed: u64) -> Result<Dataset> {
    if classes < 2 {
        return Err(Error::config("classes", "need at least two classes"));
    }
    if per_class == 0 {
        return Err(Error::config("per_class", "must be positive"));
    }
    if !(spread >= 0.0 && spread.is_finite()) {
        return Err(Error::config(
            "spread",
            format!("must be non-negative, got {spread}"),
        ));
    }
    let radius = (classes as f64 / PI).max(2.0);
    let mut rng = rng::stream(seed, Domain::Data, 0);
    let mut features = Vec::with_capacity(classes * per_class * 2);
    let mut labels = Vec::with_capacity(classes * per_class);
    for class in 0..classes {
        let angle = 2.0 * PI * class as f64 / classes as f64;
        let (cx, cy) = (radius * angle.cos(), radius * angle.sin());
        for _ in 0..per_class {
            let dx: f64 = rng.sample(StandardNormal);
            let dy: f64 = rng.sample(StandardNormal);
            features.push(cx + spread * dx);
            features.push(cy + spread * dy);
            labels.push(class);
        }
    }
    Dataset::with_stratified_split(features, 2, labels, classes, seed)
}

/// Two interleaved half circles with Gaussian noise.
///
/// Class 0 lies on the upper unit half circle around the origin, class 1 on
/// the lower unit half circle around `(1, 0.5)`.
pub fn generate_two_moons(n: usize, noise: f64, seed: u64) -> Result<Dataset> {
    if n < 10 {
        return Err(Error::config(
            "n",
            format!("need at least 10 samples, got {n}"),
        ));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::config(
            "noise",
            format!("must be non-negative, got {noise}"),
        ));
    }
    let n_outer = n / 2;
    let n_inner = n - n_outer;
    let mut rng = rng::stream(seed, Domain::Data, 0);
    let mut features = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    let angle = |i: usize, count: usize| PI * i as f64 / (count - 1) as f64;
    for i in 0..n_outer {
        let t = angle(i, n_outer);
        features.extend([t.cos(), t.sin()]);
        labels.push(0);
    }
    for i in 0..n_inner {
        let t = angle(i, n_inner);
        features.extend([1.0 - t.cos(), 0.5 - t.sin()]);
        labels.push(1);
    }
    if noise > 0.0 {
        for x in &mut features {
            let z: f64 = rng.sample(StandardNormal);
            *x += noise * z;
        }
    }
    Dataset::with_stratified_split(features, 2, labels, 2, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blob_split_sizes() {
        let d = generate_blobs(2, 100, 0.5, 1).unwrap();
        assert_eq!(d.len(), 200);
        assert_eq!(d.split_indices(Split::Train).len(), 160);
        assert_eq!(d.split_indices(Split::Test).len(), 40);
        assert_eq!(d, generate_blobs(2, 100, 0.5, 1).unwrap());
    }

    #[test]
    fn noiseless_moons_lie_on_circles() {
        let d = generate_two_moons(101, 0.0, 3).unwrap();
        for i in 0..d.len() {
            let r = d.row(i);
            let (cx, cy) = if d.labels()[i] == 0 {
                (0.0, 0.0)
            } else {
                (1.0, 0.5)
            };
            let radius = ((r[0] - cx).powi(2) + (r[1] - cy).powi(2)).sqrt();
            assert!((radius - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        let f = vec![0.0; 6];
        let y = vec![0, 1, 0];
        assert!(Dataset::new(f.clone(), 2, y.clone(), 2, vec![0, 1], vec![2]).is_ok());
        assert!(Dataset::new(f.clone(), 2, y.clone(), 2, vec![0, 1], vec![1, 2]).is_err());
        assert!(Dataset::new(f.clone(), 2, y.clone(), 2, vec![0], vec![2]).is_err());
        assert!(Dataset::new(f.clone(), 2, vec![0, 2, 0], 2, vec![0, 1], vec![2]).is_err());
        assert!(Dataset::new(f, 4, y, 2, vec![0, 1], vec![2]).is_err());
    }

    #[test]
    fn generator_preconditions() {
        assert!(generate_two_moons(9, 0.1, 0).is_err());
        assert!(generate_blobs(1, 10, 0.1, 0).is_err());
    }
}
