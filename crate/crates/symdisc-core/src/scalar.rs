//! Point-level geometry of the symmetrized polydisc.
//!
//! A point of `ℂⁿ` is read as symmetrized coordinates `(s₁, …, s_{n−1}, p)`.
//! Membership in the open set `𝔾ₙ`, the closed set `Γₙ` and the
//! distinguished boundary `bΓₙ` is decided two independent ways:
//!
//! * the *root oracle*: `pt ∈ Γₙ` iff all roots of
//!   `z^n − s₁ z^{n−1} + s₂ z^{n−2} − … + (−1)^n p` lie in the closed unit
//!   disk (this sign convention matches `∏(z − zᵢ)` and is used everywhere
//!   in this crate);
//! * the recursive theorem conditions (pencil pair sums together with a
//!   `Q`- or `R`-point membership one dimension lower, bottoming out at the
//!   unit disk).
//!
//! The oracle is ground truth: a disagreement outside the configured
//! boundary band is reported as `Inconclusive` with a diagnostic flag and is
//! treated as a defect by the test suite.

use crate::numerics::{companion_roots, Tolerance};
use crate::{Error, Result, C64};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

/// Default half-width of the band around `|root| = 1` inside which
/// membership is numerically ill-posed.
pub const DEFAULT_BOUNDARY_BAND: f64 = 1e-9;

/// Tolerances and boundary band used by the membership tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoConfig {
    pub tol: Tolerance,
    pub band: f64,
}

impl Default for GeoConfig {
    fn default() -> Self {
        GeoConfig { tol: Tolerance::default(), band: DEFAULT_BOUNDARY_BAND }
    }
}

/// A point `(s₁, …, s_{n−1}, p)` of `ℂⁿ` in symmetrized coordinates.
///
/// Construction implies no membership claim; membership is a query.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPoint {
    n: usize,
    s: Vec<C64>,
    p: C64,
}

impl GammaPoint {
    pub fn new(s: Vec<C64>, p: C64) -> Result<Self> {
        let n = s.len() + 1;
        if n < 2 {
            return Err(Error::Dimension("GammaPoint needs n ≥ 2".into()));
        }
        if s.iter().chain(core::iter::once(&p)).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(GammaPoint { n, s, p })
    }

    pub fn origin(n: usize) -> Self {
        assert!(n >= 2);
        GammaPoint { n, s: vec![C64::new(0.0, 0.0); n - 1], p: C64::new(0.0, 0.0) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `s₁, …, s_{n−1}`.
    pub fn s(&self) -> &[C64] {
        &self.s
    }

    /// `sᵢ` with the 1-based index used in the formulas.
    pub fn s_at(&self, i: usize) -> C64 {
        self.s[i - 1]
    }

    pub fn p(&self) -> C64 {
        self.p
    }

    /// All `n` coordinates `(s₁, …, s_{n−1}, p)`.
    pub fn coords(&self) -> Vec<C64> {
        let mut out = self.s.clone();
        out.push(self.p);
        out
    }
}

/// Symmetrization map: elementary symmetric polynomials of `z₁, …, zₙ`.
///
/// Inputs are canonically ordered before accumulation, so the result is
/// bit-for-bit invariant under permutations of `z`.
pub fn symmetrize(z: &[C64]) -> Result<GammaPoint> {
    if z.len() < 2 {
        return Err(Error::Dimension("symmetrize needs n ≥ 2 variables".into()));
    }
    if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite input".into()));
    }
    let n = z.len();
    let mut sorted = z.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    // e[j] accumulates the coefficients of ∏(1 + zᵢ t).
    let mut e = vec![C64::new(0.0, 0.0); n + 1];
    e[0] = C64::new(1.0, 0.0);
    for (i, &zi) in sorted.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            let bump = zi * e[j - 1];
            e[j] += bump;
        }
    }
    GammaPoint::new(e[1..n].to_vec(), e[n])
}

/// Monic coefficients (ascending powers) of
/// `z^n − s₁ z^{n−1} + s₂ z^{n−2} − … + (−1)^n p`.
pub fn oracle_coefficients(pt: &GammaPoint) -> Vec<C64> {
    let n = pt.n;
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    for (j, slot) in coeffs.iter_mut().enumerate() {
        // Coefficient of z^j is (−1)^{n−j} s_{n−j} with s_n := p.
        let k = n - j;
        let sk = if k == n { pt.p } else { pt.s[k - 1] };
        *slot = if k % 2 == 0 { sk } else { -sk };
    }
    coeffs
}

/// Brute-force membership oracle: the roots of the associated monic
/// polynomial and their largest modulus.
///
/// `pt ∈ Γₙ` iff `max_modulus ≤ 1`, `pt ∈ 𝔾ₙ` iff `max_modulus < 1`, and
/// `pt ∈ bΓₙ` iff every root is unimodular.
pub fn root_oracle(pt: &GammaPoint) -> Result<(f64, Vec<C64>)> {
    let roots = companion_roots(&oracle_coefficients(pt))?;
    let max_modulus = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((max_modulus, roots))
}

/// Scalar pencil `Φᵢ` evaluated at the α-scaled point
/// `(α s₁, α² s₂, …, α^{n−1} s_{n−1}, αⁿ p)`:
///
/// `n²(1−|p|²) + (|sᵢ|² − |s_{n−i}|²) − n(sᵢ − s̄_{n−i} p) − n(s̄ᵢ − p̄ s_{n−i})`.
///
/// The last two terms are conjugate, so the value is real; the imaginary
/// residue is asserted below `1e-12` of the scale and discarded.
pub fn phi_scalar(i: usize, pt: &GammaPoint, alpha: C64) -> Result<f64> {
    let (si, sni, p) = scaled_triple(i, pt, alpha)?;
    let n = pt.n as f64;
    let value = C64::new(n * n * (1.0 - p.norm_sqr()) + si.norm_sqr() - sni.norm_sqr(), 0.0)
        - (si - sni.conj() * p) * n
        - (si.conj() - p.conj() * sni) * n;
    let scale = n * n * (1.0 + p.norm_sqr()) + si.norm_sqr() + sni.norm_sqr();
    debug_assert!(value.im.abs() <= 1e-12 * scale.max(1.0), "imaginary residue {}", value.im);
    Ok(value.re)
}

/// The squared factors `(|n − αⁱsᵢ|², |n αⁿ p − α^{n−i} s_{n−i}|²)` whose
/// difference equals [`phi_scalar`] — an independent algebraic route used by
/// the property tests. The strict contraction inequality of the membership
/// theorems reads `factor.1 < factor.0`.
pub fn phi_scalar_factors(i: usize, pt: &GammaPoint, alpha: C64) -> Result<(f64, f64)> {
    let (si, sni, p) = scaled_triple(i, pt, alpha)?;
    let n = pt.n as f64;
    let left = (C64::new(n, 0.0) - si).norm_sqr();
    let right = (p * n - sni).norm_sqr();
    Ok((left, right))
}

fn scaled_triple(i: usize, pt: &GammaPoint, alpha: C64) -> Result<(C64, C64, C64)> {
    let n = pt.n;
    if i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!("pencil index {i} out of 1..={}", n - 1)));
    }
    if alpha.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument("alpha outside the closed unit disk".into()));
    }
    let si = alpha.powu(i as u32) * pt.s_at(i);
    let sni = alpha.powu((n - i) as u32) * pt.s_at(n - i);
    let p = alpha.powu(n as u32) * pt.p;
    Ok((si, sni, p))
}

/// The `Q` and `R` points of the closed-membership theorem.
///
/// `qᵢ = (sᵢ − s̄_{n−i} p)/(1 − |p|²)` (undefined within the band of
/// `|p| = 1`) and `rᵢ = ((n−i)/n) sᵢ`; both live in `ℂ^{n−1}` and feed the
/// one-lower-dimensional membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct QRPoints {
    pub q: Vec<C64>,
    pub r: Vec<C64>,
    pub q_defined: bool,
}

pub fn qr_points(pt: &GammaPoint, cfg: &GeoConfig) -> QRPoints {
    let n = pt.n;
    let denom = 1.0 - pt.p.norm_sqr();
    let q_defined = denom.abs() > cfg.band;
    let q = if q_defined {
        (1..n).map(|i| (pt.s_at(i) - pt.s_at(n - i).conj() * pt.p) / denom).collect()
    } else {
        vec![C64::new(0.0, 0.0); n - 1]
    };
    let r = (1..n).map(|i| pt.s_at(i) * ((n - i) as f64 / n as f64)).collect();
    QRPoints { q, r, q_defined }
}

/// Rotation action `(ω s₁, ω² s₂, …, ω^{n−1} s_{n−1}, ωⁿ p)`; membership is
/// invariant under it. Rejects non-unimodular `ω`.
pub fn rotation_orbit(pt: &GammaPoint, omega: C64) -> Result<GammaPoint> {
    if (omega.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument("omega must be unimodular".into()));
    }
    let s = (1..pt.n).map(|i| omega.powu(i as u32) * pt.s_at(i)).collect();
    GammaPoint::new(s, omega.powu(pt.n as u32) * pt.p)
}

/// Embedding of `Γ_{n−1}` into `Γₙ`: append a zero product coordinate,
/// shifting the old `p` into the last `s` slot.
pub fn embed(pt: &GammaPoint) -> GammaPoint {
    let mut s = pt.s.clone();
    s.push(pt.p);
    GammaPoint { n: pt.n + 1, s, p: C64::new(0.0, 0.0) }
}

/// The Γ₂ coordinate bound `|s| ≤ 1 + |p|`: returns whether it holds within
/// `abs_eps` and the slack `1 + |p| − |s|`.
pub fn lemma_s_bound(pt: &GammaPoint, tol: &Tolerance) -> Result<(bool, f64)> {
    if pt.n != 2 {
        return Err(Error::Dimension("lemma_s_bound is a Γ₂ statement".into()));
    }
    let margin = 1.0 + pt.p.norm() - pt.s[0].norm();
    Ok((margin >= -tol.abs_eps, margin))
}

/// Verdict of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// In the open set `𝔾ₙ`.
    InteriorG,
    /// On the distinguished boundary `bΓₙ`.
    BoundaryGammaB,
    /// In `Γₙ` but not in `𝔾ₙ` (and not certified as `bΓₙ`).
    GammaNotInterior,
    /// Outside `Γₙ`.
    Outside,
    /// Within the boundary band with no condition disambiguating, or — as a
    /// diagnostic — theorem/oracle disagreement outside the band.
    Inconclusive,
}

impl Verdict {
    /// Whether the verdict certifies membership in the closed set `Γₙ`.
    pub fn in_closed_gamma(&self) -> bool {
        matches!(self, Verdict::InteriorG | Verdict::BoundaryGammaB | Verdict::GammaNotInterior)
    }
}

/// One named theorem condition, its margin and whether it passed.
///
/// For inequality conditions the margin is the slack (positive means
/// comfortably satisfied); for equality conditions it is the measured
/// defect (near zero means satisfied).
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub id: String,
    pub margin: f64,
    pub passed: bool,
}

/// Structured result of a membership query.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    pub oracle_max_root_modulus: f64,
    pub tolerance_used: Tolerance,
    pub band: f64,
    /// Set when the theorem-based verdict contradicts the oracle outside the
    /// band; such a report is a defect, not a tolerated branch.
    pub oracle_disagreement: bool,
}

/// Membership in the open symmetrized polydisc `𝔾ₙ`.
///
/// Strict pair inequalities `|sᵢ − s̄_{n−i}p| + |s_{n−i} − s̄ᵢp| < n(1−|p|²)`
/// for every `i` plus `Q ∈ 𝔾_{n−1}`, recursing down to the open unit disk.
pub fn in_open_g(pt: &GammaPoint, cfg: &GeoConfig) -> Result<MembershipReport> {
    classify(pt, cfg, Focus::Open)
}

/// Membership in the closed symmetrized polydisc `Γₙ`.
///
/// Non-strict pair inequalities with the `|p| = 1` branch delegating to
/// `R ∈ Γ_{n−1}` and the rest to `Q ∈ Γ_{n−1}`, recursing down to the
/// closed unit disk.
pub fn in_closed_gamma(pt: &GammaPoint, cfg: &GeoConfig) -> Result<MembershipReport> {
    classify(pt, cfg, Focus::Closed)
}

/// Membership in the distinguished boundary `bΓₙ`:
/// `|p| = 1`, `sᵢ = s̄_{n−i} p` and `R ∈ Γ_{n−1}`.
pub fn in_distinguished_boundary(pt: &GammaPoint, cfg: &GeoConfig) -> Result<MembershipReport> {
    classify(pt, cfg, Focus::Boundary)
}

enum Focus {
    Open,
    Closed,
    Boundary,
}

fn classify(pt: &GammaPoint, cfg: &GeoConfig, focus: Focus) -> Result<MembershipReport> {
    let coords = pt.coords();
    let mut open_conditions = Vec::new();
    let open_pass = open_level(&coords, cfg, pt.n, &mut open_conditions);
    let mut closed_conditions = Vec::new();
    let closed_pass = closed_level(&coords, cfg, pt.n, &mut closed_conditions);
    let mut boundary_conditions = Vec::new();
    let boundary_pass = boundary_level(&coords, cfg, pt.n, &mut boundary_conditions);

    let (oracle_max, _) = root_oracle(pt)?;
    let in_band = (oracle_max - 1.0).abs() <= cfg.band;
    let theorem_verdict = if open_pass {
        Verdict::InteriorG
    } else if boundary_pass {
        Verdict::BoundaryGammaB
    } else if closed_pass {
        Verdict::GammaNotInterior
    } else {
        Verdict::Outside
    };
    let (verdict, disagreement) = if in_band {
        if theorem_verdict == Verdict::Outside {
            // Nothing passed while the oracle sits on the boundary: honest
            // ill-posedness, not a contradiction.
            (Verdict::Inconclusive, false)
        } else {
            (theorem_verdict, false)
        }
    } else if oracle_max < 1.0 - cfg.band {
        if open_pass {
            (Verdict::InteriorG, false)
        } else {
            (Verdict::Inconclusive, true)
        }
    } else if !closed_pass && !open_pass && !boundary_pass {
        (Verdict::Outside, false)
    } else {
        (Verdict::Inconclusive, true)
    };

    let conditions = match focus {
        Focus::Open => open_conditions,
        Focus::Closed => closed_conditions,
        Focus::Boundary => boundary_conditions,
    };
    Ok(MembershipReport {
        verdict,
        conditions,
        oracle_max_root_modulus: oracle_max,
        tolerance_used: cfg.tol,
        band: cfg.band,
        oracle_disagreement: disagreement,
    })
}

/// Strict pair inequalities at this level plus `Q` one level down; `coords`
/// is `(s₁, …, s_{k−1}, p)` with `k = coords.len()` and level 1 is the open
/// unit disk.
fn open_level(coords: &[C64], cfg: &GeoConfig, tag: usize, out: &mut Vec<Condition>) -> bool {
    let k = coords.len();
    if k == 1 {
        let slack = 1.0 - coords[0].norm();
        let passed = slack > 0.0;
        out.push(Condition { id: format!("g{tag}.disk"), margin: slack, passed });
        return passed;
    }
    let p = coords[k - 1];
    let s = &coords[..k - 1];
    let mut all = true;
    let rhs = k as f64 * (1.0 - p.norm_sqr());
    for i in 1..=k - 1 {
        let lhs = (s[i - 1] - s[k - 1 - i].conj() * p).norm()
            + (s[k - 1 - i] - s[i - 1].conj() * p).norm();
        let slack = rhs - lhs;
        let passed = slack > 0.0;
        all &= passed;
        out.push(Condition { id: format!("g{tag}.k{k}.pair{i}"), margin: slack, passed });
    }
    let denom = 1.0 - p.norm_sqr();
    if denom <= cfg.band {
        out.push(Condition {
            id: format!("g{tag}.k{k}.q_defined"),
            margin: denom - cfg.band,
            passed: false,
        });
        return false;
    }
    let q: Vec<C64> = (1..k).map(|i| (s[i - 1] - s[k - 1 - i].conj() * p) / denom).collect();
    all & open_level(&q, cfg, tag, out)
}

/// Non-strict pair inequalities plus `R ∈ Γ_{k−1}` on the `|p| = 1` branch
/// or `Q ∈ Γ_{k−1}` otherwise; level 1 is the closed unit disk.
fn closed_level(coords: &[C64], cfg: &GeoConfig, tag: usize, out: &mut Vec<Condition>) -> bool {
    let k = coords.len();
    let tol = &cfg.tol;
    if k == 1 {
        let slack = 1.0 - coords[0].norm();
        let passed = slack >= -tol.for_scale(1.0);
        out.push(Condition { id: format!("gamma{tag}.disk"), margin: slack, passed });
        return passed;
    }
    let p = coords[k - 1];
    let s = &coords[..k - 1];
    let mut all = true;
    let rhs = k as f64 * (1.0 - p.norm_sqr());
    for i in 1..=k - 1 {
        let lhs = (s[i - 1] - s[k - 1 - i].conj() * p).norm()
            + (s[k - 1 - i] - s[i - 1].conj() * p).norm();
        let scale = k as f64 * (1.0 + p.norm_sqr()) + lhs;
        let slack = rhs - lhs;
        let passed = slack >= -tol.for_scale(scale);
        all &= passed;
        out.push(Condition { id: format!("gamma{tag}.k{k}.pair{i}"), margin: slack, passed });
    }
    let denom = 1.0 - p.norm_sqr();
    let next: Vec<C64> = if denom.abs() <= cfg.band {
        // |p| = 1 within the band: delegate to R.
        (1..k).map(|i| s[i - 1] * ((k - i) as f64 / k as f64)).collect()
    } else {
        (1..k).map(|i| (s[i - 1] - s[k - 1 - i].conj() * p) / denom).collect()
    };
    all & closed_level(&next, cfg, tag, out)
}

/// `|p| = 1` (band), `sᵢ = s̄_{n−i} p` (abs_eps scale) and `R ∈ Γ_{k−1}`;
/// level 1 is the unit circle.
fn boundary_level(coords: &[C64], cfg: &GeoConfig, tag: usize, out: &mut Vec<Condition>) -> bool {
    let k = coords.len();
    if k == 1 {
        let defect = (coords[0].norm() - 1.0).abs();
        let passed = defect <= cfg.band.max(cfg.tol.abs_eps);
        out.push(Condition { id: format!("b{tag}.circle"), margin: defect, passed });
        return passed;
    }
    let p = coords[k - 1];
    let s = &coords[..k - 1];
    let unimodular_defect = (p.norm() - 1.0).abs();
    let mut all = unimodular_defect <= cfg.band.max(cfg.tol.abs_eps);
    out.push(Condition {
        id: format!("b{tag}.unimodular_p"),
        margin: unimodular_defect,
        passed: all,
    });
    for i in 1..=k - 1 {
        let defect = (s[i - 1] - s[k - 1 - i].conj() * p).norm();
        let passed = defect <= cfg.tol.for_scale(s[i - 1].norm() + s[k - 1 - i].norm());
        all &= passed;
        out.push(Condition { id: format!("b{tag}.conj_pair{i}"), margin: defect, passed });
    }
    let r: Vec<C64> = (1..k).map(|i| s[i - 1] * ((k - i) as f64 / k as f64)).collect();
    all & closed_level(&r, cfg, tag, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{seeded_rng, uniform_circle, uniform_disk};
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cfg() -> GeoConfig {
        GeoConfig::default()
    }

    fn pt(s: &[(f64, f64)], p: (f64, f64)) -> GammaPoint {
        GammaPoint::new(s.iter().map(|&(re, im)| c(re, im)).collect(), c(p.0, p.1)).unwrap()
    }

    #[test]
    fn symmetrize_basics() {
        let origin = symmetrize(&[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(origin, GammaPoint::origin(3));

        // (1, i, −i): s₁ = 1, s₂ = i·(−i) + 1·i + 1·(−i) = 1, p = 1.
        let q = symmetrize(&[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert!((q.s_at(1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((q.s_at(2) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((q.p() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn symmetrize_is_exactly_permutation_invariant() {
        let mut rng = seeded_rng(101);
        for _ in 0..50 {
            let z: alloc::vec::Vec<C64> = (0..4).map(|_| uniform_disk(&mut rng, 1.0)).collect();
            let mut perm = z.clone();
            perm.swap(0, 3);
            perm.swap(1, 2);
            assert_eq!(symmetrize(&z).unwrap(), symmetrize(&perm).unwrap());
        }
    }

    #[test]
    fn symmetrize_round_trips_through_roots() {
        let mut rng = seeded_rng(102);
        for _ in 0..100 {
            let z: alloc::vec::Vec<C64> = (0..4).map(|_| uniform_disk(&mut rng, 1.0)).collect();
            let point = symmetrize(&z).unwrap();
            let (_, mut roots) = root_oracle(&point).unwrap();
            let mut expected = z.clone();
            let key = |a: &C64, b: &C64| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
            roots.sort_by(key);
            expected.sort_by(key);
            for (r, e) in roots.iter().zip(&expected) {
                assert!((r - e).norm() < 1e-7, "root {r} vs input {e}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let (max, roots) = root_oracle(&pt(&[(3.0, 0.0), (3.0, 0.0)], (1.0, 0.0))).unwrap();
        assert!((max - 1.0).abs() < 1e-5);
        for r in roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-4);
        }
        let (max, _) = root_oracle(&GammaPoint::origin(3)).unwrap();
        assert_eq!(max, 0.0);
        let (max, _) = root_oracle(&pt(&[(4.0, 0.0), (0.0, 0.0)], (0.0, 0.0))).unwrap();
        assert!((max - 4.0).abs() < 1e-9);
    }

    #[test]
    fn phi_scalar_examples() {
        let one = c(1.0, 0.0);
        // Origin: only the n² term survives, for any α.
        let origin = GammaPoint::origin(4);
        assert_eq!(phi_scalar(2, &origin, c(0.3, 0.4)).unwrap(), 16.0);
        // (3,3,1) at i=1, α=1 gives 9·0 + 0 − 3·0 − 3·0 = 0.
        let boundary = pt(&[(3.0, 0.0), (3.0, 0.0)], (1.0, 0.0));
        assert!(phi_scalar(1, &boundary, one).unwrap().abs() < 1e-12);
        // n=2, (0, 1/2): 4(1 − 1/4) = 3.
        let half = pt(&[(0.0, 0.0)], (0.5, 0.0));
        assert!((phi_scalar(1, &half, one).unwrap() - 3.0).abs() < 1e-14);
        assert!(phi_scalar(3, &half, one).is_err());
        assert!(phi_scalar(1, &half, c(1.5, 0.0)).is_err());
    }

    #[test]
    fn phi_scalar_agrees_with_factored_route() {
        let mut rng = seeded_rng(103);
        for _ in 0..200 {
            let z: alloc::vec::Vec<C64> = (0..3).map(|_| uniform_disk(&mut rng, 1.2)).collect();
            let point = symmetrize(&z).unwrap();
            let alpha = uniform_disk(&mut rng, 1.0);
            for i in 1..=2 {
                let direct = phi_scalar(i, &point, alpha).unwrap();
                let (left, right) = phi_scalar_factors(i, &point, alpha).unwrap();
                let scale = left.abs() + right.abs() + 1.0;
                assert!(
                    (direct - (left - right)).abs() < 1e-11 * scale,
                    "route mismatch {direct} vs {}",
                    left - right
                );
            }
        }
    }

    #[test]
    fn qr_points_basics() {
        let origin = GammaPoint::origin(3);
        let qr = qr_points(&origin, &cfg());
        assert!(qr.q_defined);
        assert!(qr.q.iter().all(|z| z.norm() == 0.0));
        assert!(qr.r.iter().all(|z| z.norm() == 0.0));

        let boundary = pt(&[(3.0, 0.0), (3.0, 0.0)], (1.0, 0.0));
        assert!(!qr_points(&boundary, &cfg()).q_defined);
    }

    #[test]
    fn q_reconstructs_s() {
        let mut rng = seeded_rng(104);
        for _ in 0..200 {
            let z: alloc::vec::Vec<C64> = (0..3).map(|_| uniform_disk(&mut rng, 0.98)).collect();
            let point = symmetrize(&z).unwrap();
            let qr = qr_points(&point, &cfg());
            assert!(qr.q_defined);
            let n = point.n();
            for i in 1..n {
                let rebuilt = qr.q[i - 1] + qr.q[n - 1 - i].conj() * point.p();
                assert!((rebuilt - point.s_at(i)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let origin = GammaPoint::origin(3);
        assert_eq!(in_open_g(&origin, &cfg()).unwrap().verdict, Verdict::InteriorG);

        let interior = symmetrize(&[c(0.5, 0.0), c(0.0, 0.5), c(-0.3, 0.0)]).unwrap();
        let report = in_open_g(&interior, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::InteriorG);
        assert!(!report.oracle_disagreement);
        assert!(report.oracle_max_root_modulus < 1.0);

        // (3,3,1): |p| = 1 forces failure of the strict inequality, yet the
        // point is in Γ₃ through the R-branch, and in fact on bΓ₃.
        let triple = pt(&[(3.0, 0.0), (3.0, 0.0)], (1.0, 0.0));
        let report = in_open_g(&triple, &cfg()).unwrap();
        assert_ne!(report.verdict, Verdict::InteriorG);
        let report = in_closed_gamma(&triple, &cfg()).unwrap();
        assert!(report.verdict.in_closed_gamma(), "report {report:?}");

        let two_one = pt(&[(2.0, 0.0)], (1.0, 0.0));
        assert!(in_closed_gamma(&two_one, &cfg()).unwrap().verdict.in_closed_gamma());

        let outside = pt(&[(4.0, 0.0), (0.0, 0.0)], (0.0, 0.0));
        assert_eq!(in_closed_gamma(&outside, &cfg()).unwrap().verdict, Verdict::Outside);
    }

    #[test]
    fn distinguished_boundary_examples() {
        let mut rng = seeded_rng(105);
        for _ in 0..50 {
            let z: alloc::vec::Vec<C64> = (0..3).map(|_| uniform_circle(&mut rng)).collect();
            let point = symmetrize(&z).unwrap();
            let report = in_distinguished_boundary(&point, &cfg()).unwrap();
            assert_eq!(report.verdict, Verdict::BoundaryGammaB, "point {point:?}");
            for cond in &report.conditions {
                assert!(cond.passed, "condition {cond:?}");
            }
        }

        let ones = pt(&[(1.0, 0.0), (1.0, 0.0)], (1.0, 0.0));
        let report = in_distinguished_boundary(&ones, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::BoundaryGammaB);
        // The three top-level equality conditions hold exactly here.
        for cond in report.conditions.iter().take(3) {
            assert!(cond.margin.abs() <= 1e-12, "condition {cond:?}");
        }

        let origin = GammaPoint::origin(3);
        let report = in_distinguished_boundary(&origin, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::InteriorG);
        assert!(report.conditions.iter().any(|c| !c.passed));
    }

    #[test]
    fn rotation_orbit_examples() {
        let point = pt(&[(2.0, 0.0)], (1.0, 0.0));
        let same = rotation_orbit(&point, c(1.0, 0.0)).unwrap();
        assert_eq!(same, point);
        let flipped = rotation_orbit(&point, c(-1.0, 0.0)).unwrap();
        assert!((flipped.s_at(1) - c(-2.0, 0.0)).norm() < 1e-15);
        assert!((flipped.p() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(rotation_orbit(&point, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn rotation_preserves_membership_verdicts() {
        let mut rng = seeded_rng(106);
        for _ in 0..100 {
            let radius = if rng.gen::<bool>() { 0.9 } else { 1.05 };
            let z: alloc::vec::Vec<C64> =
                (0..3).map(|_| uniform_disk(&mut rng, radius)).collect();
            let point = symmetrize(&z).unwrap();
            let omega = uniform_circle(&mut rng);
            let rotated = rotation_orbit(&point, omega).unwrap();
            let a = in_closed_gamma(&point, &cfg()).unwrap().verdict;
            let b = in_closed_gamma(&rotated, &cfg()).unwrap().verdict;
            if a != Verdict::Inconclusive && b != Verdict::Inconclusive {
                assert_eq!(a, b, "rotation flipped verdict at {point:?}, ω={omega}");
            }
        }
    }

    #[test]
    fn embed_examples() {
        let two_one = pt(&[(2.0, 0.0)], (1.0, 0.0));
        let embedded = embed(&two_one);
        assert_eq!(embedded.n(), 3);
        assert!(in_closed_gamma(&embedded, &cfg()).unwrap().verdict.in_closed_gamma());

        assert_eq!(embed(&GammaPoint::origin(3)), GammaPoint::origin(4));

        let mut rng = seeded_rng(107);
        for _ in 0..200 {
            let z: alloc::vec::Vec<C64> = (0..3).map(|_| uniform_disk(&mut rng, 1.0)).collect();
            let point = symmetrize(&z).unwrap();
            let lifted = embed(&point);
            assert!(
                in_closed_gamma(&lifted, &cfg()).unwrap().verdict.in_closed_gamma(),
                "embedded image left Γ₄: {point:?}"
            );
        }
    }

    #[test]
    fn lemma_s_bound_examples() {
        let extreme = pt(&[(2.0, 0.0)], (1.0, 0.0));
        let (holds, margin) = lemma_s_bound(&extreme, &Tolerance::default()).unwrap();
        assert!(holds);
        assert!(margin.abs() < 1e-15);

        let inner = pt(&[(0.0, 0.0)], (0.5, 0.0));
        let (holds, margin) = lemma_s_bound(&inner, &Tolerance::default()).unwrap();
        assert!(holds);
        assert!((margin - 1.5).abs() < 1e-15);

        assert!(lemma_s_bound(&GammaPoint::origin(3), &Tolerance::default()).is_err());
    }

    #[test]
    fn oracle_agreement_on_mixed_samples() {
        let mut rng = seeded_rng(108);
        let cfg = cfg();
        for n in 2..=5 {
            for trial in 0..500 {
                let z: alloc::vec::Vec<C64> = (0..n)
                    .map(|_| match trial % 3 {
                        0 => uniform_disk(&mut rng, 1.0),
                        1 => uniform_circle(&mut rng),
                        _ => uniform_disk(&mut rng, 1.05),
                    })
                    .collect();
                let point = symmetrize(&z).unwrap();
                let report = in_closed_gamma(&point, &cfg).unwrap();
                assert!(!report.oracle_disagreement, "disagreement at {point:?}");
                let max = report.oracle_max_root_modulus;
                if max < 1.0 - 1e-6 {
                    assert_eq!(report.verdict, Verdict::InteriorG, "at {point:?}");
                } else if max > 1.0 + 1e-6 {
                    assert_eq!(report.verdict, Verdict::Outside, "at {point:?}");
                }
            }
        }
    }

    #[test]
    fn strict_pencil_positivity_inside_g() {
        // Condition (4) of the membership theorem, checked against the
        // pencil route on a coarse α-grid.
        let mut rng = seeded_rng(109);
        let grid = crate::grid::closed_disk_grid(8, 16);
        for _ in 0..20 {
            let z: alloc::vec::Vec<C64> = (0..3).map(|_| uniform_disk(&mut rng, 0.9)).collect();
            let point = symmetrize(&z).unwrap();
            if root_oracle(&point).unwrap().0 > 1.0 - 1e-3 {
                continue;
            }
            for &alpha in &grid {
                for i in 1..=2 {
                    let phi = phi_scalar(i, &point, alpha).unwrap();
                    assert!(phi > 0.0, "pencil failed at {point:?}, α={alpha}, i={i}");
                    let (left, right) = phi_scalar_factors(i, &point, alpha).unwrap();
                    assert_eq!(right < left, phi > 0.0);
                }
            }
        }
    }
}
