//! Sparse exact linear algebra: fraction-free elimination with bookkeeping of
//! the pivot specialization locus, nullspaces, and an evaluation fast path.

use super::gcd::{divides, poly_div_exact, poly_gcd, squarefree_part};
use super::poly::{Coef, Parameters, Polynomial};
use super::ratfunc::RationalFunction;
use crate::error::ScalarError;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Squarefree factors of the polynomials whose nonvanishing certifies a
/// generic rank statement.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct ExceptionalLocus {
    factors: Vec<Polynomial>, // monic, squarefree, nonconstant, deduplicated
}

impl ExceptionalLocus {
    pub fn empty() -> Self {
        ExceptionalLocus { factors: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn add(&mut self, p: &Polynomial) {
        if p.is_zero() || p.is_constant() {
            return;
        }
        let sf = squarefree_part(p);
        if sf.is_constant() {
            return;
        }
        if !self.factors.contains(&sf) {
            self.factors.push(sf);
            self.factors.sort_by(|x, y| {
                format!("{x}").len().cmp(&format!("{y}").len()).then(format!("{x}").cmp(&format!("{y}")))
            });
        }
    }

    pub fn union(&mut self, other: &ExceptionalLocus) {
        for f in &other.factors {
            self.add(f);
        }
    }

    /// A point avoids the locus iff no factor vanishes there.
    pub fn avoided_by(&self, point: &[Coef]) -> bool {
        self.factors.iter().all(|f| !f.eval(point).is_zero())
    }

    /// True when every factor divides a product of powers of the given
    /// polynomials; used to certify statements like "locus within {a, a+1}".
    pub fn is_within(&self, allowed: &[Polynomial]) -> bool {
        self.factors.iter().all(|f| {
            let mut rem = f.clone();
            loop {
                let mut progressed = false;
                for k in allowed {
                    while !rem.is_constant() && divides(k, &rem) {
                        rem = poly_div_exact(&rem, k).unwrap();
                        progressed = true;
                    }
                }
                if rem.is_constant() {
                    return true;
                }
                if !progressed {
                    return false;
                }
            }
        })
    }
}

impl fmt::Debug for ExceptionalLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p.integer_normalized())?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct SparseMatrix {
    params: Parameters,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), RationalFunction>,
}

impl SparseMatrix {
    pub fn new(params: &Parameters, rows: usize, cols: usize) -> Self {
        SparseMatrix { params: params.clone(), rows, cols, entries: BTreeMap::new() }
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: RationalFunction) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &RationalFunction) {
        if v.is_zero() {
            return;
        }
        let nv = match self.entries.get(&(r, c)) {
            Some(cur) => cur.add(v),
            None => v.clone(),
        };
        if nv.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), nv);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> RationalFunction {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(&self.params))
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), RationalFunction> {
        &self.entries
    }

    /// Apply a vector on the right: (M v)_r = sum_c M[r][c] v[c].
    pub fn apply(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![RationalFunction::zero(&self.params); self.rows];
        for ((r, c), m) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] = out[*r].add(&m.mul(&v[*c]));
            }
        }
        out
    }

    /// Generic rank together with the locus outside which it is certified.
    pub fn rank_with_locus(&self) -> (usize, ExceptionalLocus) {
        let e = Eliminated::run(self);
        (e.pivots.len(), e.locus)
    }

    /// Basis of the generic kernel; each vector satisfies M v = 0 identically.
    pub fn nullspace(&self) -> (Vec<Vec<RationalFunction>>, ExceptionalLocus) {
        let e = Eliminated::run(self);
        let basis = e.kernel_basis();
        (basis, e.locus)
    }

    /// Exact rank at a specialization point (fast path); fails on poles.
    pub fn rank_at(&self, point: &[Coef]) -> Result<usize, ScalarError> {
        let mut rows: Vec<BTreeMap<usize, Coef>> = vec![BTreeMap::new(); self.rows];
        for ((r, c), v) in &self.entries {
            let x = v.eval(point)?;
            if !x.is_zero() {
                rows[*r].insert(*c, x);
            }
        }
        let mut rank = 0usize;
        let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
        let mut stored: Vec<BTreeMap<usize, Coef>> = Vec::new();
        for mut row in rows {
            loop {
                let Some((&c, _)) = row.iter().next() else { break };
                if let Some(&pi) = pivot_of_col.get(&c) {
                    let factor = row[&c].clone();
                    let prow = stored[pi].clone();
                    for (j, v) in prow {
                        let cur = row.remove(&j).unwrap_or_else(Coef::zero);
                        let nv = cur - &factor * v;
                        if !nv.is_zero() {
                            row.insert(j, nv);
                        }
                    }
                } else {
                    let lead = row[&c].clone();
                    let norm: BTreeMap<usize, Coef> =
                        row.iter().map(|(j, v)| (*j, v / &lead)).collect();
                    pivot_of_col.insert(c, stored.len());
                    stored.push(norm);
                    rank += 1;
                    break;
                }
            }
        }
        Ok(rank)
    }
}

/// Result of one fraction-free (Bareiss) elimination pass.
struct Eliminated {
    params: Parameters,
    cols: usize,
    /// (row-values at elimination time, pivot column), in elimination order.
    pivot_rows: Vec<(BTreeMap<usize, Polynomial>, usize)>,
    pivots: Vec<Polynomial>,
    locus: ExceptionalLocus,
}

impl Eliminated {
    fn run(m: &SparseMatrix) -> Eliminated {
        let params = m.params.clone();
        let mut locus = ExceptionalLocus::empty();

        // Clear denominators row by row; their vanishing sets join the locus.
        let mut rows: Vec<BTreeMap<usize, Polynomial>> = vec![BTreeMap::new(); m.rows];
        for r in 0..m.rows {
            let mut lcm = Polynomial::one(&params);
            for ((rr, _), v) in m.entries.range((r, 0)..(r + 1, 0)) {
                debug_assert_eq!(*rr, r);
                let d = v.denom();
                if !d.is_constant() {
                    locus.add(d);
                }
                let g = poly_gcd(&lcm, d);
                lcm = lcm.mul(&poly_div_exact(d, &g).unwrap());
            }
            for ((_, c), v) in m.entries.range((r, 0)..(r + 1, 0)) {
                let scaled = v
                    .numer()
                    .mul(&poly_div_exact(&lcm, v.denom()).unwrap_or_else(|| {
                        // denominator constant: lcm/den = lcm * den^{-1}
                        lcm.scale(&v.denom().constant_value().unwrap().recip())
                    }));
                if !scaled.is_zero() {
                    rows[r].insert(*c, scaled);
                }
            }
        }

        let mut active_rows: Vec<usize> = (0..m.rows).collect();
        let mut active_cols: Vec<bool> = vec![true; m.cols];
        let mut prev_pivot = Polynomial::one(&params);
        let mut pivot_rows = Vec::new();
        let mut pivots = Vec::new();

        loop {
            // Pick the sparsest/smallest nonzero entry among active cells.
            let mut best: Option<(usize, u32, usize, usize)> = None;
            for &r in &active_rows {
                for (c, v) in &rows[r] {
                    if !active_cols[*c] || v.is_zero() {
                        continue;
                    }
                    let key = (v.term_count(), v.total_degree(), r, *c);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let Some((_, _, pr, pc)) = best else { break };
            let pivot = rows[pr][&pc].clone();
            locus.add(&pivot);

            let pivot_row = rows[pr].clone();
            active_rows.retain(|&r| r != pr);
            active_cols[pc] = false;

            for &r in &active_rows {
                let factor = rows[r].get(&pc).cloned();
                let row = &mut rows[r];
                if let Some(factor) = factor {
                    // Bareiss one-step update on all active columns.
                    let mut cols: Vec<usize> = row
                        .keys()
                        .cloned()
                        .chain(pivot_row.keys().cloned())
                        .filter(|c| active_cols[*c])
                        .collect();
                    cols.sort_unstable();
                    cols.dedup();
                    for c in cols {
                        let cur = row.get(&c).cloned().unwrap_or_else(|| Polynomial::zero(&params));
                        let prow = pivot_row.get(&c).cloned().unwrap_or_else(|| Polynomial::zero(&params));
                        let num = cur.mul(&pivot).sub(&factor.mul(&prow));
                        let nv = if num.is_zero() {
                            num
                        } else {
                            poly_div_exact(&num, &prev_pivot).expect("Bareiss division is exact")
                        };
                        if nv.is_zero() {
                            row.remove(&c);
                        } else {
                            row.insert(c, nv);
                        }
                    }
                    row.remove(&pc);
                } else {
                    // No entry in the pivot column: plain rescale (keeps the
                    // fraction-free invariant).
                    let cols: Vec<usize> = row.keys().cloned().filter(|c| active_cols[*c]).collect();
                    for c in cols {
                        let cur = row.get(&c).cloned().unwrap();
                        let num = cur.mul(&pivot);
                        let nv = poly_div_exact(&num, &prev_pivot).expect("Bareiss division is exact");
                        row.insert(c, nv);
                    }
                }
            }

            prev_pivot = pivot.clone();
            pivot_rows.push((pivot_row, pc));
            pivots.push(pivot);
        }

        Eliminated { params, cols: m.cols, pivot_rows, pivots, locus }
    }

    fn kernel_basis(&self) -> Vec<Vec<RationalFunction>> {
        let pivot_cols: Vec<usize> = self.pivot_rows.iter().map(|(_, c)| *c).collect();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![RationalFunction::zero(&self.params); self.cols];
            x[free] = RationalFunction::one(&self.params);
            // Solve pivot rows from the last elimination step upwards.
            for (row, pc) in self.pivot_rows.iter().rev() {
                let mut acc = RationalFunction::zero(&self.params);
                for (c, v) in row {
                    if *c == *pc || x[*c].is_zero() {
                        continue;
                    }
                    acc = acc.add(&RationalFunction::from_poly(v.clone()).mul(&x[*c]));
                }
                let p = RationalFunction::from_poly(row[pc].clone());
                x[*pc] = acc.neg().div(&p).expect("pivot is nonzero");
            }
            basis.push(x);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qa() -> Parameters {
        Parameters::new(&["a"])
    }

    fn a() -> RationalFunction {
        RationalFunction::var(&qa(), "a")
    }

    #[test]
    fn identity_has_full_rank_and_empty_locus() {
        let p = qa();
        let mut m = SparseMatrix::new(&p, 2, 2);
        m.set(0, 0, RationalFunction::one(&p));
        m.set(1, 1, RationalFunction::one(&p));
        let (rank, locus) = m.rank_with_locus();
        assert_eq!(rank, 2);
        assert!(locus.is_empty());
        let (ns, _) = m.nullspace();
        assert!(ns.is_empty());
    }

    #[test]
    fn degenerate_rank_one() {
        // [[1, a],[a, a^2]] has vanishing determinant identically: rank 1.
        let p = qa();
        let mut m = SparseMatrix::new(&p, 2, 2);
        m.set(0, 0, RationalFunction::one(&p));
        m.set(0, 1, a());
        m.set(1, 0, a());
        m.set(1, 1, a().mul(&a()));
        let (rank, _) = m.rank_with_locus();
        assert_eq!(rank, 1);
    }

    #[test]
    fn pivot_locus_recorded() {
        // [[a, 1],[0, a]]: rank 2 generically, certified away from a = 0.
        let p = qa();
        let mut m = SparseMatrix::new(&p, 2, 2);
        m.set(0, 0, a());
        m.set(0, 1, RationalFunction::one(&p));
        m.set(1, 1, a());
        let (rank, locus) = m.rank_with_locus();
        assert_eq!(rank, 2);
        let a_poly = Polynomial::var(&p, "a");
        assert!(locus.is_within(&[a_poly]));
        assert!(!locus.is_empty());
    }

    #[test]
    fn nullspace_identities() {
        let p = qa();
        // zero 3x3: kernel is everything
        let z = SparseMatrix::new(&p, 3, 3);
        let (ns, _) = z.nullspace();
        assert_eq!(ns.len(), 3);
        // [[1, a]] -> kernel spanned by (-a, 1)
        let mut m = SparseMatrix::new(&p, 1, 2);
        m.set(0, 0, RationalFunction::one(&p));
        m.set(0, 1, a());
        let (ns, _) = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // check M v = 0 identically and the normalized direction
        let mv = m.apply(v);
        assert!(mv.iter().all(|x| x.is_zero()));
        let ratio = v[0].div(&v[1]).unwrap();
        assert_eq!(ratio, a().neg());
    }

    #[test]
    fn rank_specializes_off_locus() {
        let p = qa();
        let mut m = SparseMatrix::new(&p, 3, 3);
        m.set(0, 0, a());
        m.set(0, 2, RationalFunction::one(&p));
        m.set(1, 1, a().add(&RationalFunction::one(&p)));
        m.set(2, 2, a().mul(&a()));
        let (rank, locus) = m.rank_with_locus();
        for n in [2i64, 3, 5] {
            let pt = vec![Coef::from_integer(n.into())];
            if locus.avoided_by(&pt) {
                assert_eq!(m.rank_at(&pt).unwrap(), rank);
            }
        }
    }
}
