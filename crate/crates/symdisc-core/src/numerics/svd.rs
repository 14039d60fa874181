use super::ComplexMatrix;
use crate::{Error, Result, C64};
use alloc::vec::Vec;
use num_traits::Float;

const MAX_SWEEPS: usize = 64;

/// Singular values in descending order, via one-sided Jacobi.
///
/// Columns of a working copy are orthogonalized by right rotations; the
/// final column norms are the singular values. This route never forms
/// `A*A`, which keeps it independent of the Hermitian eigensolver.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let (values, _) = one_sided_jacobi(a, false);
    values
}

/// Singular values (descending) together with the right singular vectors.
///
/// `A ≈ U diag(σ) V*` with the returned matrix `V` unitary; its trailing
/// columns span the numerical null space.
pub fn svd(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let (values, v) = one_sided_jacobi(a, true);
    (values, v.expect("right vectors requested"))
}

/// Largest singular value `σ_max(A)`; exactly zero for the zero matrix.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a)[0]
}

/// Validating wrapper used by callers that accept untrusted shapes.
pub fn operator_norm_checked(a: &ComplexMatrix) -> Result<f64> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::Dimension("operator_norm of empty matrix".into()));
    }
    Ok(operator_norm(a))
}

fn one_sided_jacobi(a: &ComplexMatrix, want_v: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let m = a.rows();
    let n = a.cols();
    let mut b = a.clone();
    let mut v = want_v.then(|| ComplexMatrix::identity(n));
    if n > 1 {
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let mut gpp = 0.0;
                    let mut gqq = 0.0;
                    let mut gpq = C64::new(0.0, 0.0);
                    for i in 0..m {
                        let bp = b[(i, p)];
                        let bq = b[(i, q)];
                        gpp += bp.norm_sqr();
                        gqq += bq.norm_sqr();
                        gpq += bp.conj() * bq;
                    }
                    let mag = gpq.norm();
                    if mag <= 1e-15 * (gpp * gqq).sqrt() || mag == 0.0 {
                        continue;
                    }
                    rotated = true;
                    // Jacobi rotation diagonalizing the 2x2 Gram block.
                    let phase = gpq / mag;
                    let tau = (gqq - gpp) / (2.0 * mag);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s_fwd = phase * (t * c);
                    for i in 0..m {
                        let bp = b[(i, p)];
                        let bq = b[(i, q)];
                        b[(i, p)] = bp * c - bq * s_fwd.conj();
                        b[(i, q)] = bp * s_fwd + bq * c;
                    }
                    if let Some(v) = v.as_mut() {
                        for i in 0..n {
                            let vp = v[(i, p)];
                            let vq = v[(i, q)];
                            v[(i, p)] = vp * c - vq * s_fwd.conj();
                            v[(i, q)] = vp * s_fwd + vq * c;
                        }
                    }
                }
            }
            if !rotated {
                break;
            }
        }
    }
    let mut norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| b[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    norms = order.iter().map(|&j| norms[j]).collect();
    let v = v.map(|v| ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]));
    (norms, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{hermitian_eig, Tolerance};
    use crate::sampling::{complex_gaussian, seeded_rng};
    use alloc::vec;

    #[test]
    fn identity_norm_is_one() {
        assert_eq!(operator_norm(&ComplexMatrix::identity(3)), 1.0);
    }

    #[test]
    fn zero_matrix_norm_is_exactly_zero() {
        assert_eq!(operator_norm(&ComplexMatrix::zeros(4, 4)), 0.0);
    }

    #[test]
    fn nilpotent_eta_block() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.25, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert!((operator_norm(&a) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn matches_gram_eigenvalue_oracle() {
        // Independent route: σ_max(A) = sqrt(λ_max(A*A)) via the Hermitian
        // eigensolver.
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let a = ComplexMatrix::from_fn(5, 5, |_, _| complex_gaussian(&mut rng));
            let gram = a.adjoint().mul(&a);
            let (values, _) = hermitian_eig(&gram, &Tolerance::default()).unwrap();
            let oracle = values.last().unwrap().max(0.0).sqrt();
            assert!((operator_norm(&a) - oracle).abs() <= 1e-10 * oracle.max(1.0));
        }
    }

    #[test]
    fn right_vectors_reconstruct_gram() {
        let mut rng = seeded_rng(6);
        let a = ComplexMatrix::from_fn(7, 4, |_, _| complex_gaussian(&mut rng));
        let (values, v) = svd(&a);
        // A V should have orthogonal columns with the singular values as norms.
        let av = a.mul(&v);
        for j in 0..4 {
            let norm = (0..7).map(|i| av[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - values[j]).abs() < 1e-10 * values[0].max(1.0));
        }
        let vv = v.adjoint().mul(&v);
        assert!(vv.sub(&ComplexMatrix::identity(4)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn submultiplicative_on_random_pairs() {
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let a = ComplexMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
            let b = ComplexMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
            let lhs = operator_norm(&a.mul(&b));
            let rhs = operator_norm(&a) * operator_norm(&b);
            assert!(lhs <= rhs + 1e-10);
        }
    }
}
