use std::ops::Deref;

use crate::error::{check_finite, Error, Result};

/// Flat vector of model parameters.
///
/// Non-empty and finite on construction; the optimizers keep it finite and
/// never change its length.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::config(
                "parameters",
                "parameter vector must not be empty",
            ));
        }
        check_finite("parameters", &values)?;
        Ok(Self(values))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![0.0; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Overwrite all entries. Only the optimizers call this, after they have
    /// validated the new values.
    pub(crate) fn commit(&mut self, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.0.len());
        self.0 = values;
    }
}

impl Deref for ParameterVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ParameterVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(ParameterVector::new(vec![]).is_err());
        match ParameterVector::new(vec![0.0, f64::NAN]) {
            Err(Error::NonFinite { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
