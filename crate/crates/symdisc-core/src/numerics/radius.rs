use super::eig::lambda_max;
use super::ComplexMatrix;
use crate::{Error, Result, C64};
use alloc::vec::Vec;
use num_traits::Float;

/// Default angular resolution for [`numerical_radius`].
pub const DEFAULT_RADIUS_ANGLES: usize = 720;

/// Numerical radius `ω(A) = max_θ λ_max((e^{iθ}A + e^{−iθ}A*)/2)` sampled on
/// an `angles`-point grid of `[0, 2π)`.
///
/// The grid maximum is a lower bound that converges to `ω(A)` from below as
/// the grid is refined.
pub fn numerical_radius(a: &ComplexMatrix, angles: usize) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension("numerical_radius needs a square matrix".into()));
    }
    if angles < 16 {
        return Err(Error::InvalidArgument("numerical_radius needs at least 16 angles".into()));
    }
    let n = a.rows();
    let adj = a.adjoint();
    let mut warm: Vec<C64> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for k in 0..angles {
        let theta = core::f64::consts::TAU * (k as f64) / (angles as f64);
        let w = C64::new(0.0, theta).exp();
        let h = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] * w + adj[(i, j)] * w.conj()) * 0.5);
        let lam = lambda_max(&h, Some(&mut warm));
        if lam > best {
            best = lam;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::operator_norm;
    use crate::sampling::{complex_gaussian, seeded_rng};
    use alloc::vec;

    #[test]
    fn zero_matrix() {
        assert_eq!(numerical_radius(&ComplexMatrix::zeros(3, 3), 16).unwrap(), 0.0);
    }

    #[test]
    fn nilpotent_jordan_block_is_half() {
        // For [[0,1],[0,0]] the Hermitian part has λ_max = 1/2 at every θ, so
        // any grid returns the analytic radius exactly.
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let coarse = numerical_radius(&a, 720).unwrap();
        let dense = numerical_radius(&a, 4096).unwrap();
        assert!((coarse - 0.5).abs() < 1e-12);
        assert!((dense - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hermitian_radius_equals_norm() {
        let mut rng = seeded_rng(31);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(5, 5, |_, _| complex_gaussian(&mut rng)).hermitize();
            let radius = numerical_radius(&a, 720).unwrap();
            let norm = operator_norm(&a);
            assert!((radius - norm).abs() <= 1e-9 * norm.max(1.0));
        }
    }

    #[test]
    fn classical_two_sided_bound() {
        let mut rng = seeded_rng(32);
        for _ in 0..20 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
            let radius = numerical_radius(&a, 720).unwrap();
            let norm = operator_norm(&a);
            assert!(radius <= norm + 1e-10);
            assert!(radius >= 0.5 * norm - 1e-9);
        }
    }

    #[test]
    fn rejects_coarse_grid() {
        assert!(numerical_radius(&ComplexMatrix::identity(2), 8).is_err());
    }
}
