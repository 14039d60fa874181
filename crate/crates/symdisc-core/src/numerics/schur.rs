use super::ComplexMatrix;
use crate::{Error, Result, C64};
use alloc::vec::Vec;
use num_traits::Float;

const MACHINE_EPS: f64 = 2.220446049250313e-16;
const MAX_ITERS_PER_EIGENVALUE: usize = 60;

/// Complex Schur decomposition `A = Q T Q*` with `Q` unitary and `T` upper
/// triangular.
///
/// Householder reduction to Hessenberg form followed by implicitly shifted
/// QR with Wilkinson shifts and occasional exceptional shifts.
pub fn schur(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (q, t) = schur_impl(a, true)?;
    Ok((q.expect("accumulated"), t))
}

/// Eigenvalues of a general complex square matrix (diagonal of its Schur
/// form), sorted by real then imaginary part.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let (_, t) = schur_impl(a, false)?;
    let mut lambdas: Vec<C64> = (0..t.rows()).map(|i| t[(i, i)]).collect();
    lambdas.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(lambdas)
}

fn schur_impl(a: &ComplexMatrix, want_q: bool) -> Result<(Option<ComplexMatrix>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::Dimension("schur needs a square matrix".into()));
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut q = want_q.then(|| ComplexMatrix::identity(n));
    if n == 1 {
        return Ok((q, h));
    }

    hessenberg(&mut h, q.as_mut());

    // Shifted QR on the Hessenberg form.
    let mut hi = n - 1;
    let mut iters_here = 0usize;
    loop {
        // Deflate negligible subdiagonals.
        for k in 0..hi {
            let tol = MACHINE_EPS * (h[(k, k)].norm() + h[(k + 1, k + 1)].norm());
            if h[(k + 1, k)].norm() <= tol.max(1e-300) {
                h[(k + 1, k)] = C64::new(0.0, 0.0);
            }
        }
        while hi > 0 && h[(hi, hi - 1)].norm() == 0.0 {
            hi -= 1;
            iters_here = 0;
        }
        if hi == 0 {
            break;
        }
        // Active block [lo..=hi]: walk up until a zero subdiagonal.
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }
        iters_here += 1;
        if iters_here > MAX_ITERS_PER_EIGENVALUE {
            return Err(Error::Convergence("shifted QR iteration"));
        }
        let mu = if iters_here % 12 == 0 {
            // Exceptional shift to break rare cycling.
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_step(&mut h, q.as_mut(), lo, hi, mu);
    }

    // The iteration drove every subdiagonal to zero; clear round-off below.
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok((q, h))
}

/// Householder reduction to upper Hessenberg form, accumulating into `q`.
fn hessenberg(h: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        // Reflector for column k below the subdiagonal.
        let mut norm_sq = 0.0;
        for i in k + 1..n {
            norm_sq += h[(i, k)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm <= 1e-300 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0.norm() == 0.0 {
            C64::new(-norm, 0.0)
        } else {
            -(x0 / x0.norm()) * norm
        };
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= 1e-300 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- P H with P = I − 2vv* acting on rows k+1..
        for j in k..n {
            let mut w = C64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                w += vi.conj() * h[(k + 1 + off, j)];
            }
            let w2 = w * 2.0;
            for (off, vi) in v.iter().enumerate() {
                let delta = *vi * w2;
                h[(k + 1 + off, j)] -= delta;
            }
        }
        // H <- H P on columns k+1..
        for i in 0..n {
            let mut w = C64::new(0.0, 0.0);
            for (off, vi) in v.iter().enumerate() {
                w += h[(i, k + 1 + off)] * *vi;
            }
            let w2 = w * 2.0;
            for (off, vi) in v.iter().enumerate() {
                let delta = w2 * vi.conj();
                h[(i, k + 1 + off)] -= delta;
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for i in 0..n {
                let mut w = C64::new(0.0, 0.0);
                for (off, vi) in v.iter().enumerate() {
                    w += q[(i, k + 1 + off)] * *vi;
                }
                let w2 = w * 2.0;
                for (off, vi) in v.iter().enumerate() {
                    let delta = w2 * vi.conj();
                    q[(i, k + 1 + off)] -= delta;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One implicit single-shift QR step on the active block `[lo..=hi]`.
fn qr_step(h: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>, lo: usize, hi: usize, mu: C64) {
    let first = h[(lo, lo)] - mu;
    let second = h[(lo + 1, lo)];
    let (c, s) = givens(first, second);
    apply_similarity(h, q.as_deref_mut(), lo, c, s);
    for k in lo..hi.saturating_sub(1) {
        // Chase the bulge at (k+2, k).
        let (c, s) = givens(h[(k + 1, k)], h[(k + 2, k)]);
        apply_similarity(h, q.as_deref_mut(), k + 1, c, s);
        h[(k + 2, k)] = C64::new(0.0, 0.0);
    }
}

/// Rotation `[[c, s], [−s̄, c]]` (c real) sending `(f, g)` to `(r, 0)`.
fn givens(f: C64, g: C64) -> (f64, C64) {
    if g.norm() == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / denom;
    let s = (f / f.norm()) * g.conj() / denom;
    (c, s)
}

/// Similarity `H ← G H G*`, `Q ← Q G*` with `G` acting on rows `k, k+1`.
fn apply_similarity(
    h: &mut ComplexMatrix,
    q: Option<&mut ComplexMatrix>,
    k: usize,
    c: f64,
    s: C64,
) {
    let n = h.rows();
    for j in 0..n {
        let a = h[(k, j)];
        let b = h[(k + 1, j)];
        h[(k, j)] = a * c + s * b;
        h[(k + 1, j)] = b * c - s.conj() * a;
    }
    for i in 0..n {
        let a = h[(i, k)];
        let b = h[(i, k + 1)];
        h[(i, k)] = a * c + s.conj() * b;
        h[(i, k + 1)] = b * c - s * a;
    }
    if let Some(q) = q {
        for i in 0..n {
            let a = q[(i, k)];
            let b = q[(i, k + 1)];
            q[(i, k)] = a * c + s.conj() * b;
            q[(i, k + 1)] = b * c - s * a;
        }
    }
}
