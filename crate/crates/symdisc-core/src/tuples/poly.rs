//! Polynomials in the symmetrized coordinates `(s₁, …, s_{n−1}, p)`,
//! evaluated at scalar points and at commuting matrix tuples.

use super::OperatorTuple;
use crate::numerics::ComplexMatrix;
use crate::sampling::complex_gaussian;
use crate::{Error, Result, C64};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

/// A polynomial `f(s₁, …, s_{n−1}, p)` in the `n` coordinates, stored as
/// graded-lexicographically ordered monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordPolynomial {
    n_vars: usize,
    terms: Vec<(Vec<u32>, C64)>,
}

impl CoordPolynomial {
    pub fn new(n_vars: usize, mut terms: Vec<(Vec<u32>, C64)>) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidArgument("polynomial needs at least one variable".into()));
        }
        if terms.iter().any(|(e, _)| e.len() != n_vars) {
            return Err(Error::Dimension("exponent vector length mismatch".into()));
        }
        terms.sort_by(|(a, _), (b, _)| grlex(a, b));
        terms.dedup_by(|later, earlier| {
            if later.0 == earlier.0 {
                earlier.1 += later.1;
                true
            } else {
                false
            }
        });
        terms.retain(|(_, c)| c.norm_sqr() != 0.0);
        Ok(CoordPolynomial { n_vars, terms })
    }

    pub fn constant(n_vars: usize, value: C64) -> Self {
        CoordPolynomial { n_vars, terms: vec![(vec![0; n_vars], value)] }
    }

    /// The bare coordinate `s_{index+1}` (or `p` for `index = n_vars − 1`).
    pub fn coordinate(n_vars: usize, index: usize) -> Self {
        assert!(index < n_vars);
        let mut e = vec![0u32; n_vars];
        e[index] = 1;
        CoordPolynomial { n_vars, terms: vec![(e, C64::new(1.0, 0.0))] }
    }

    /// Dense random polynomial of total degree ≤ `degree` with standard
    /// complex Gaussian coefficients on every monomial.
    pub fn random(n_vars: usize, degree: u32, rng: &mut impl Rng) -> Self {
        let terms = exponents_up_to(n_vars, degree)
            .into_iter()
            .map(|e| (e, complex_gaussian(rng)))
            .collect();
        CoordPolynomial { n_vars, terms }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, C64)] {
        &self.terms
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C64 {
        self.terms
            .iter()
            .find(|(e, _)| e == exponents)
            .map(|&(_, c)| c)
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    /// Value at a scalar coordinate point.
    pub fn eval_point(&self, coords: &[C64]) -> C64 {
        assert_eq!(coords.len(), self.n_vars);
        let maxdeg = self.total_degree() as usize;
        let mut powers: Vec<Vec<C64>> = Vec::with_capacity(self.n_vars);
        for &z in coords {
            let mut row = Vec::with_capacity(maxdeg + 1);
            row.push(C64::new(1.0, 0.0));
            for k in 1..=maxdeg {
                let next = row[k - 1] * z;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = *c;
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    term *= powers[v][ev as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Value at a commuting matrix tuple, through a per-call monomial table.
    pub fn eval_tuple(&self, t: &OperatorTuple) -> Result<ComplexMatrix> {
        let table = MonomialTable::build(t, self.total_degree())?;
        Ok(self.eval_with_table(&table))
    }

    /// Value at the tuple backing a prebuilt [`MonomialTable`].
    pub fn eval_with_table(&self, table: &MonomialTable) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(table.dim, table.dim);
        for (e, c) in &self.terms {
            let entry = table.get(e);
            if entry.zero {
                continue;
            }
            for (a, m) in acc.data_mut().iter_mut().zip(entry.matrix.data()) {
                *a += *c * *m;
            }
        }
        acc
    }
}

/// Graded lexicographic order on exponent vectors.
fn grlex(a: &[u32], b: &[u32]) -> core::cmp::Ordering {
    let ta: u32 = a.iter().sum();
    let tb: u32 = b.iter().sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

/// All exponent vectors over `n_vars` variables with total degree ≤ `degree`,
/// in graded-lex order.
pub fn exponents_up_to(n_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    push_exponents(n_vars, degree, 0, &mut current, &mut out);
    out.sort_by(|a, b| grlex(a, b));
    out
}

fn push_exponents(
    n_vars: usize,
    budget: u32,
    var: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if var == n_vars {
        out.push(current.clone());
        return;
    }
    for e in 0..=budget {
        current[var] = e;
        push_exponents(n_vars, budget - e, var + 1, current, out);
    }
    current[var] = 0;
}

struct TableEntry {
    matrix: ComplexMatrix,
    zero: bool,
}

/// Monomial values `S₁^{e₁} ⋯ S_{n−1}^{e_{n−1}} P^{eₙ}` for every exponent
/// vector up to a total degree, each built from its predecessor by one
/// product. Exactly-zero monomials are flagged so sums can skip them.
pub struct MonomialTable {
    dim: usize,
    index: BTreeMap<Vec<u32>, usize>,
    entries: Vec<TableEntry>,
}

impl MonomialTable {
    pub fn build(t: &OperatorTuple, degree: u32) -> Result<Self> {
        if !t.is_commuting() {
            return Err(Error::NonCommuting { residual: t.commute_residual() });
        }
        let dim = t.dim();
        let n = t.n();
        let mut index = BTreeMap::new();
        let mut entries = Vec::new();
        for e in exponents_up_to(n, degree) {
            let matrix = match last_nonzero(&e) {
                None => ComplexMatrix::identity(dim),
                Some(v) => {
                    let mut prev = e.clone();
                    prev[v] -= 1;
                    let prev_idx = index[&prev];
                    let prev_entry: &TableEntry = &entries[prev_idx];
                    if prev_entry.zero {
                        ComplexMatrix::zeros(dim, dim)
                    } else {
                        prev_entry.matrix.mul(t.member(v))
                    }
                }
            };
            let zero = matrix.max_abs_entry() == 0.0;
            index.insert(e, entries.len());
            entries.push(TableEntry { matrix, zero });
        }
        Ok(MonomialTable { dim, index, entries })
    }

    fn get(&self, exponents: &[u32]) -> &TableEntry {
        let idx = self.index[exponents];
        &self.entries[idx]
    }
}

fn last_nonzero(e: &[u32]) -> Option<usize> {
    e.iter().rposition(|&x| x > 0)
}
