//! Paired observations and the scaling applied before clustering.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Two aligned observation vectors of equal length `n >= 2` with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPair {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl DataPair {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        if x.len() < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: x.len() });
        }
        check_finite(&x)?;
        check_finite(&y)?;
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// The same observations with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        Self { x: self.y.clone(), y: self.x.clone() }
    }

    /// Rows at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let x = indices.iter().map(|&i| self.x[i]).collect();
        let y = indices.iter().map(|&i| self.y[i]).collect();
        Self::new(x, y)
    }
}

pub(crate) fn check_finite(v: &[f64]) -> Result<()> {
    match v.iter().position(|a| !a.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub(crate) fn is_constant(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// z-scores `v` with the population (divisor `n`) standard deviation.
///
/// A constant input maps to the zero vector.
pub fn standardize(v: &[f64]) -> Result<Vec<f64>> {
    if v.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: v.len() });
    }
    check_finite(v)?;
    if is_constant(v) {
        return Ok(alloc::vec![0.0; v.len()]);
    }
    let m = mean(v);
    let var = v.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / v.len() as f64;
    let sd = libm::sqrt(var);
    Ok(v.iter().map(|a| (a - m) / sd).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn standardize_hand_values() {
        // mean 2, population sd sqrt(2/3)
        let z = standardize(&[1.0, 2.0, 3.0]).unwrap();
        let s = libm::sqrt(1.5);
        for (a, b) in z.iter().zip([-s, 0.0, s]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((z[0] + 1.2247).abs() < 1e-4);
    }

    #[test]
    fn standardize_constant_is_zero() {
        assert_eq!(standardize(&[5.0, 5.0, 5.0]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn standardize_rejects_non_finite() {
        assert_eq!(standardize(&[1.0, f64::NAN]), Err(Error::NonFinite { index: 1 }));
        assert_eq!(standardize(&[f64::INFINITY, 1.0]), Err(Error::NonFinite { index: 0 }));
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(
            DataPair::new(vec![1.0, 2.0], vec![1.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(DataPair::new(vec![1.0], vec![1.0]), Err(Error::TooFewSamples { .. })));
        assert!(matches!(
            DataPair::new(vec![1.0, 2.0], vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
        let d = DataPair::new(vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]).unwrap();
        assert_eq!(d.swapped().x(), &[4.0, 5.0, 6.0]);
        assert_eq!(d.subset(&[2, 0]).unwrap().y(), &[6.0, 4.0]);
    }

    proptest! {
        #[test]
        fn standardize_moments_and_idempotence(v in prop::collection::vec(-1e3f64..1e3, 2..200)) {
            let z = standardize(&v).unwrap();
            if is_constant(&v) {
                prop_assert!(z.iter().all(|a| *a == 0.0));
            } else {
                let m = mean(&z);
                let var = z.iter().map(|a| (a - m) * (a - m)).sum::<f64>() / z.len() as f64;
                prop_assert!(m.abs() < 1e-9);
                prop_assert!((var - 1.0).abs() < 1e-9);
                let zz = standardize(&z).unwrap();
                for (a, b) in z.iter().zip(&zz) {
                    prop_assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }
}
