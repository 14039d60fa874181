use super::{eigenvalues, ComplexMatrix};
use crate::{Error, Result, C64};
use alloc::vec::Vec;
use num_traits::Float;

/// Roots (with multiplicity) of the monic polynomial
/// `z^n + coeffs[n−1] z^{n−1} + … + coeffs[1] z + coeffs[0]`,
/// computed as the eigenvalues of its companion matrix.
///
/// The residual `|p(root)|` of every returned root is verified against
/// `1e-8·(1 + max|coeff|)^n`; roots are sorted by real then imaginary part.
pub fn companion_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len();
    if n == 0 {
        return Err(Error::InvalidArgument("degree-zero polynomial has no roots".into()));
    }
    if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let roots = if n == 1 {
        alloc::vec![-coeffs[0]]
    } else {
        let mut companion = ComplexMatrix::zeros(n, n);
        for i in 0..n - 1 {
            companion[(i + 1, i)] = C64::new(1.0, 0.0);
        }
        for i in 0..n {
            companion[(i, n - 1)] = -coeffs[i];
        }
        eigenvalues(&companion)?
    };
    let max_coeff = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let budget = 1e-8 * (1.0 + max_coeff).powi(n as i32);
    for &root in &roots {
        let mut value = C64::new(1.0, 0.0);
        for k in (0..n).rev() {
            value = value * root + coeffs[k];
        }
        if value.norm() > budget {
            return Err(Error::Convergence("companion root residual check"));
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted_moduli(roots: &[C64]) -> Vec<f64> {
        let mut m: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
        m.sort_by(f64::total_cmp);
        m
    }

    #[test]
    fn triple_root_at_one() {
        // z³ − 3z² + 3z − 1 = (z − 1)³
        let roots = companion_roots(&[c(-1.0, 0.0), c(3.0, 0.0), c(-3.0, 0.0)]).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-4, "clustered root {r}");
        }
    }

    #[test]
    fn quadratic_with_imaginary_pair() {
        // z² + 1 = (z − i)(z + i)
        let roots = companion_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        for expected in [c(0.0, -1.0), c(0.0, 1.0)] {
            assert!(
                roots.iter().any(|r| (r - expected).norm() < 1e-12),
                "missing root {expected}"
            );
        }
    }

    #[test]
    fn factored_cubic() {
        // z³ − 4z² = z²(z − 4)
        let roots = companion_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-4.0, 0.0)]).unwrap();
        let m = sorted_moduli(&roots);
        assert!(m[0] < 1e-7 && m[1] < 1e-7);
        assert!((m[2] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn degree_one() {
        let roots = companion_roots(&[c(2.0, -3.0)]).unwrap();
        assert_eq!(roots, vec![c(-2.0, 3.0)]);
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(companion_roots(&[]).is_err());
    }
}
