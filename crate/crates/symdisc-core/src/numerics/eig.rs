use super::{ComplexMatrix, Tolerance};
use crate::{Error, Result, C64};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Returns the eigenvalues in ascending order and a unitary matrix whose
/// columns are the matching eigenvectors, so that `A ≈ V diag(λ) V*`.
/// Rejects inputs whose asymmetry `‖A − A*‖_F` exceeds the tolerance for the
/// matrix scale.
pub fn hermitian_eig(a: &ComplexMatrix, tol: &Tolerance) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::Dimension("hermitian_eig needs a square matrix".into()));
    }
    let asymmetry = a.hermitian_defect();
    if asymmetry > tol.for_scale(a.frobenius_norm()) {
        return Err(Error::NotHermitian { asymmetry });
    }
    let (values, vectors) = jacobi_hermitian(&a.hermitize())?;
    Ok((values, vectors))
}

fn jacobi_hermitian(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = a.rows();
    let mut h = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();
    if n == 1 {
        return Ok((vec![h[(0, 0)].re], v));
    }
    let stop = 1e-15 * fro.max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += h[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let hpq = h[(p, q)];
                let mag = hpq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = hpq / mag;
                let tau = (h[(q, q)].re - h[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_fwd = phase * s; // multiplies the q-column contribution
                // H <- J* H J with J = I except J[p,p]=c, J[p,q]=s·e^{iφ},
                // J[q,p]=−s·e^{−iφ}, J[q,q]=c.
                for i in 0..n {
                    let hip = h[(i, p)];
                    let hiq = h[(i, q)];
                    h[(i, p)] = hip * c - hiq * s_fwd.conj();
                    h[(i, q)] = hip * s_fwd + hiq * c;
                }
                for j in 0..n {
                    let hpj = h[(p, j)];
                    let hqj = h[(q, j)];
                    h[(p, j)] = hpj * c - hqj * s_fwd;
                    h[(q, j)] = hpj * s_fwd.conj() + hqj * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s_fwd.conj();
                    v[(i, q)] = vip * s_fwd + viq * c;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Convergence("Jacobi eigenvalue sweeps"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.total_cmp(&h[(j, j)].re).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

/// Hermitian PSD square root.
///
/// Eigenvalues in `[−abs_eps, 0]` are clamped to zero (round-off absorption);
/// anything below `−abs_eps` is a genuine negativity and is rejected with the
/// offending eigenvalue.
pub fn psd_sqrt(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eig(a, tol)?;
    let roots = clamped_sqrt(&values, tol)?;
    Ok(recompose(&roots, &vectors))
}

pub(crate) fn clamped_sqrt(values: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(values.len());
    for &lambda in values {
        if lambda < -tol.abs_eps {
            return Err(Error::NotPsd { eigenvalue: lambda });
        }
        out.push(lambda.max(0.0).sqrt());
    }
    Ok(out)
}

pub(crate) fn recompose(values: &[f64], vectors: &ComplexMatrix) -> ComplexMatrix {
    let scaled = ComplexMatrix::from_fn(vectors.rows(), vectors.cols(), |i, j| {
        vectors[(i, j)] * values[j]
    });
    scaled.mul(&vectors.adjoint()).hermitize()
}

/// Largest eigenvalue of a Hermitian matrix.
///
/// Small matrices go through the full Jacobi decomposition; larger ones use
/// shifted power iteration with an optional warm-start vector (useful when
/// scanning a smooth family such as `θ ↦ Re(e^{iθ}A)`), falling back to
/// Jacobi if the iteration stalls.
pub(crate) fn lambda_max(h: &ComplexMatrix, warm: Option<&mut Vec<C64>>) -> f64 {
    let n = h.rows();
    if n <= 24 {
        let (values, _) = jacobi_hermitian(h).expect("Jacobi on Hermitian input");
        return *values.last().expect("nonempty spectrum");
    }
    let scale = h.frobenius_norm().max(1.0);
    let shift = scale + 1.0;
    let mut local;
    let v: &mut Vec<C64> = match warm {
        Some(v) if v.len() == n => v,
        _ => {
            local = seed_vector(n);
            &mut local
        }
    };
    normalize(v);
    let mut rho_prev = f64::INFINITY;
    for iter in 0..500 {
        let mut w = h.matvec(v);
        for (wi, vi) in w.iter_mut().zip(v.iter()) {
            *wi += *vi * shift;
        }
        normalize(&mut w);
        *v = w;
        if iter % 4 == 3 {
            let hv = h.matvec(v);
            let rho: f64 = v
                .iter()
                .zip(hv.iter())
                .map(|(vi, hvi)| (vi.conj() * hvi).re)
                .sum();
            let mut res = 0.0;
            for (hvi, vi) in hv.iter().zip(v.iter()) {
                res += (hvi - vi * rho).norm_sqr();
            }
            let res = res.sqrt();
            if res <= 1e-12 * scale && (rho - rho_prev).abs() <= 1e-13 * scale {
                return rho;
            }
            rho_prev = rho;
        }
    }
    let (values, _) = jacobi_hermitian(h).expect("Jacobi fallback on Hermitian input");
    *values.last().expect("nonempty spectrum")
}

fn seed_vector(n: usize) -> Vec<C64> {
    // Fixed quasi-random start keeps the iteration deterministic.
    let mut state = 0x9e3779b97f4a7c15u64;
    (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
            C64::new(1.0 + a, b)
        })
        .collect()
}

fn normalize(v: &mut [C64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{complex_gaussian, seeded_rng};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn diagonal_spectrum_sorted_ascending() {
        let a = ComplexMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(-1.0, 0.0)]);
        let (values, _) = hermitian_eig(&a, &tol()).unwrap();
        assert_eq!(values, vec![-1.0, 3.0]);
    }

    #[test]
    fn symmetry_forced_pair() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        let (values, _) = hermitian_eig(&a, &tol()).unwrap();
        assert!((values[0] + 1.0).abs() < 1e-14);
        assert!((values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = seeded_rng(11);
        for _ in 0..20 {
            let g = ComplexMatrix::from_fn(6, 6, |_, _| complex_gaussian(&mut rng));
            let a = g.hermitize();
            let (values, vectors) = hermitian_eig(&a, &tol()).unwrap();
            let back = recompose(&values, &vectors);
            assert!(back.sub(&a).frobenius_norm() <= 1e-10 * a.frobenius_norm().max(1.0));
            let vv = vectors.adjoint().mul(&vectors);
            assert!(vv.sub(&ComplexMatrix::identity(6)).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        match hermitian_eig(&a, &tol()) {
            Err(Error::NotHermitian { asymmetry }) => assert!(asymmetry > 1.0),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn psd_sqrt_diagonal() {
        let a = ComplexMatrix::diagonal(&[C64::new(4.0, 0.0), C64::new(0.0, 0.0)]);
        let b = psd_sqrt(&a, &tol()).unwrap();
        assert!((b[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!(b[(1, 1)].norm() < 1e-14);
        let id = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&id, &tol()).unwrap().sub(&id).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let a = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(-0.5, 0.0)]);
        match psd_sqrt(&a, &tol()) {
            Err(Error::NotPsd { eigenvalue }) => assert!((eigenvalue + 0.5).abs() < 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
    }

    #[test]
    fn lambda_max_matches_jacobi_on_large_matrices() {
        let mut rng = seeded_rng(13);
        for _ in 0..5 {
            let g = ComplexMatrix::from_fn(40, 40, |_, _| complex_gaussian(&mut rng));
            let a = g.hermitize();
            let fast = lambda_max(&a, None);
            let (values, _) = hermitian_eig(&a, &Tolerance::default()).unwrap();
            let exact = *values.last().unwrap();
            assert!(
                (fast - exact).abs() <= 1e-9 * a.frobenius_norm().max(1.0),
                "power iteration {fast} vs jacobi {exact}"
            );
        }
    }
}
