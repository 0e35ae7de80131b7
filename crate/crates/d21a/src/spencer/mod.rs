//! Generalized Spencer cohomology H^{i,j}(m, g): the Chevalley-Eilenberg
//! complex g (x) Lambda(m*) with the super-exterior algebra (skew in even
//! duals, symmetric in odd duals), sliced by weight.
//!
//! Cochains are stored through their evaluations on canonical non-decreasing
//! argument tuples; evaluation at arbitrary tuples sorts with Koszul signs.

mod table;

pub use table::{cohomology, h1_consistency, CohomologyTable, H1Consistency};

use crate::roots::GradingReport;
use crate::scalars::{
    ExceptionalLocus, Parameters, Parity, RationalFunction, SDim, SparseMatrix,
};
use crate::liesuper::BasisSuperalgebra;
use std::cell::RefCell;
use std::collections::BTreeMap;

/// Monomial of the super-exterior algebra on m*: non-decreasing positions
/// into the m basis; even positions occur at most once.
pub type Mono = Vec<usize>;

pub struct SpencerComplex {
    g: BasisSuperalgebra,
    /// positions of m inside g, ordered
    m_in_g: Vec<usize>,
    depth: Vec<i64>,
    m_parity: Vec<Parity>,
    params: Parameters,
    basis_cache: RefCell<BTreeMap<usize, BTreeMap<(i64, Parity), Vec<CochainKey>>>>,
    diff_cache: RefCell<BTreeMap<(usize, Parity), DiffEntries>>,
}

type DiffEntries = std::rc::Rc<BTreeMap<(CochainKey, CochainKey), RationalFunction>>;

/// One cochain basis vector: coefficient basis element of g and a dual
/// monomial.
pub type CochainKey = (usize, Mono);

impl SpencerComplex {
    pub fn new(report: &GradingReport) -> Self {
        let g = report.algebra().clone();
        let m_in_g: Vec<usize> = (0..g.dim())
            .filter(|&i| g.degree(i).unwrap() < 0)
            .collect();
        let depth = m_in_g.iter().map(|&i| -g.degree(i).unwrap()).collect();
        let m_parity = m_in_g.iter().map(|&i| g.parity(i)).collect();
        let params = g.params().clone();
        SpencerComplex {
            g,
            m_in_g,
            depth,
            m_parity,
            params,
            basis_cache: RefCell::new(BTreeMap::new()),
            diff_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn g(&self) -> &BasisSuperalgebra {
        &self.g
    }

    pub fn m_dim(&self) -> usize {
        self.m_in_g.len()
    }

    fn mono_weight(&self, m: &Mono) -> i64 {
        m.iter().map(|&p| self.depth[p]).sum()
    }

    fn mono_parity(&self, m: &Mono) -> Parity {
        m.iter().fold(Parity::Even, |acc, &p| acc.add(self.m_parity[p]))
    }

    /// All degree-n monomials.
    pub fn monomials(&self, n: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enum_rec(0, n, &mut cur, &mut out);
        out
    }

    fn enum_rec(&self, from: usize, remaining: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for p in from..self.m_dim() {
            // even duals are skew: no repetition
            if self.m_parity[p] == Parity::Even && cur.last() == Some(&p) {
                continue;
            }
            cur.push(p);
            self.enum_rec(p, remaining - 1, cur, out);
            cur.pop();
        }
    }

    /// Full cochain basis of C^n, grouped by (weight, parity).
    pub fn basis(&self, n: usize) -> BTreeMap<(i64, Parity), Vec<CochainKey>> {
        if let Some(b) = self.basis_cache.borrow().get(&n) {
            return b.clone();
        }
        let mut out: BTreeMap<(i64, Parity), Vec<CochainKey>> = BTreeMap::new();
        for mono in self.monomials(n) {
            let wm = self.mono_weight(&mono);
            let pm = self.mono_parity(&mono);
            for u in 0..self.g.dim() {
                let w = self.g.degree(u).unwrap() + wm;
                let p = self.g.parity(u).add(pm);
                out.entry((w, p)).or_default().push((u, mono.clone()));
            }
        }
        self.basis_cache.borrow_mut().insert(n, out.clone());
        out
    }

    /// Koszul-sort a tuple of m positions; returns None when the evaluation
    /// vanishes (repeated even argument), otherwise the sorted monomial and
    /// the sign.
    fn sort_tuple(&self, tuple: &[usize]) -> Option<(Mono, i64)> {
        let mut v = tuple.to_vec();
        let mut sign = 1i64;
        // bubble sort with super-swap signs
        loop {
            let mut swapped = false;
            for i in 0..v.len().saturating_sub(1) {
                if v[i] > v[i + 1] {
                    let both_odd = self.m_parity[v[i]] == Parity::Odd
                        && self.m_parity[v[i + 1]] == Parity::Odd;
                    sign *= if both_odd { 1 } else { -1 };
                    v.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        for i in 0..v.len().saturating_sub(1) {
            if v[i] == v[i + 1] && self.m_parity[v[i]] == Parity::Even {
                return None;
            }
        }
        Some((v, sign))
    }

    /// The full differential C^n -> C^{n+1} as a sparse entry table keyed by
    /// (row cochain, column cochain). `phi_parity` fixes the source parity
    /// (the Koszul sign of the action term sees it).
    fn differential_entries(&self, n: usize, phi_parity: Parity) -> DiffEntries {
        if let Some(e) = self.diff_cache.borrow().get(&(n, phi_parity)) {
            return e.clone();
        }
        let mut out: BTreeMap<(CochainKey, CochainKey), RationalFunction> = BTreeMap::new();
        let mut add = |row: CochainKey, col: CochainKey, c: RationalFunction| {
            if c.is_zero() {
                return;
            }
            let e = out
                .entry((row, col))
                .or_insert_with(|| RationalFunction::zero(&self.params));
            *e = e.add(&c);
        };
        let monos = self.monomials(n + 1);
        for mono in &monos {
            let x: Vec<usize> = mono.clone(); // canonical tuple
            let par_prefix = |i: usize| -> Parity {
                x[..i]
                    .iter()
                    .fold(Parity::Even, |acc, &p| acc.add(self.m_parity[p]))
            };
            // action terms
            for i in 0..x.len() {
                let mut sign = if i % 2 == 0 { 1i64 } else { -1 };
                let pi = self.m_parity[x[i]];
                if pi == Parity::Odd && par_prefix(i) == Parity::Odd {
                    sign = -sign;
                }
                if pi == Parity::Odd && phi_parity == Parity::Odd {
                    sign = -sign;
                }
                let rest: Mono = x
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, &p)| p)
                    .collect();
                // multiplicity guard: evaluation of the source basis cochain
                // on `rest` equals 1 only for the canonical tuple, which rest
                // is (sorted). Contributes [x_i, u] for every coefficient u.
                let gx = self.m_in_g[x[i]];
                for u in 0..self.g.dim() {
                    for (w, c) in self.g.bracket_terms(gx, u) {
                        add(
                            (*w, mono.clone()),
                            (u, rest.clone()),
                            c.scale_int(sign),
                        );
                    }
                }
            }
            // bracket terms
            for i in 0..x.len() {
                for j in (i + 1)..x.len() {
                    let mut sign = if (i + j) % 2 == 0 { 1i64 } else { -1 };
                    let (pi, pj) = (self.m_parity[x[i]], self.m_parity[x[j]]);
                    if pi == Parity::Odd && par_prefix(i) == Parity::Odd {
                        sign = -sign;
                    }
                    if pj == Parity::Odd && par_prefix(j) == Parity::Odd {
                        sign = -sign;
                    }
                    if pi == Parity::Odd && pj == Parity::Odd {
                        sign = -sign;
                    }
                    let gi = self.m_in_g[x[i]];
                    let gj = self.m_in_g[x[j]];
                    let bracket = self.g.bracket_terms(gi, gj);
                    if bracket.is_empty() {
                        continue;
                    }
                    let rest: Vec<usize> = x
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, &p)| p)
                        .collect();
                    for (z, cz) in bracket {
                        // z is an m element again ([m,m] stays in m)
                        let zp = self
                            .m_in_g
                            .iter()
                            .position(|&t| t == *z)
                            .expect("m is bracket-closed");
                        let mut tuple = Vec::with_capacity(n);
                        tuple.push(zp);
                        tuple.extend_from_slice(&rest);
                        let Some((sorted, ksign)) = self.sort_tuple(&tuple) else {
                            continue;
                        };
                        for u in 0..self.g.dim() {
                            add(
                                (u, mono.clone()),
                                (u, sorted.clone()),
                                cz.scale_int(sign * ksign),
                            );
                        }
                    }
                }
            }
        }
        let rc: DiffEntries = std::rc::Rc::new(out);
        self.diff_cache
            .borrow_mut()
            .insert((n, phi_parity), rc.clone());
        rc
    }

    /// Matrix of the differential on one (weight, parity) slice, together
    /// with the source and target bases.
    pub fn differential_slice(
        &self,
        n: usize,
        weight: i64,
        parity: Parity,
    ) -> (SparseMatrix, Vec<CochainKey>, Vec<CochainKey>) {
        let src = self.basis(n).remove(&(weight, parity)).unwrap_or_default();
        let dst = self
            .basis(n + 1)
            .remove(&(weight, parity))
            .unwrap_or_default();
        let src_idx: BTreeMap<&CochainKey, usize> =
            src.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let dst_idx: BTreeMap<&CochainKey, usize> =
            dst.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let entries = self.differential_entries(n, parity);
        let mut m = SparseMatrix::new(&self.params, dst.len(), src.len());
        for ((row, col), c) in entries.iter() {
            if let (Some(&r), Some(&cc)) = (dst_idx.get(row), src_idx.get(col)) {
                m.add_to(r, cc, c);
            }
        }
        (m, dst, src)
    }

    /// Super-dimension of one cochain slice.
    pub fn slice_sdim(&self, n: usize, weight: i64) -> SDim {
        let b = self.basis(n);
        let even = b.get(&(weight, Parity::Even)).map_or(0, |v| v.len());
        let odd = b.get(&(weight, Parity::Odd)).map_or(0, |v| v.len());
        SDim::new(even, odd)
    }

    /// H^n on a weight slice by rank-nullity, with locus bookkeeping.
    pub fn cohomology_slice(&self, n: usize, weight: i64) -> (SDim, ExceptionalLocus) {
        let mut locus = ExceptionalLocus::empty();
        let mut dims = [0usize; 2];
        for (pi, parity) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
            let (d_n, _, src) = self.differential_slice(n, weight, parity);
            let (r_n, l1) = d_n.rank_with_locus();
            locus.union(&l1);
            let r_prev = if n == 0 {
                0
            } else {
                let (d_prev, _, _) = self.differential_slice(n - 1, weight, parity);
                let (r, l2) = d_prev.rank_with_locus();
                locus.union(&l2);
                r
            };
            dims[pi] = src.len() - r_n - r_prev;
        }
        (SDim::new(dims[0], dims[1]), locus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{grading_of, DiagramLabel, ParabolicSpec};
    use crate::scalars::context_a;

    fn complex_for(label: DiagramLabel, crosses: &[usize]) -> SpencerComplex {
        let (_, s) = context_a();
        SpencerComplex::new(&grading_of(&ParabolicSpec::new(label, crosses), &s))
    }

    #[test]
    fn slice_dimensions_partition_the_complex() {
        let c = complex_for(DiagramLabel::IV, &[1, 2, 3]);
        for n in 0..=3 {
            let total: usize = c.basis(n).values().map(|v| v.len()).sum();
            let expect = 17 * c.monomials(n).len();
            assert_eq!(total, expect);
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for (label, crosses) in [
            (DiagramLabel::IV, &[1usize, 2, 3][..]),
            (DiagramLabel::I, &[1][..]),
            (DiagramLabel::I, &[2, 3][..]),
        ] {
            let c = complex_for(label, crosses);
            let weights: Vec<i64> = (-4..=4).collect();
            for n in 0..=1 {
                for &w in &weights {
                    for parity in [Parity::Even, Parity::Odd] {
                        let (d1, mid, _src) = c.differential_slice(n, w, parity);
                        let (d2, _, mid2) = c.differential_slice(n + 1, w, parity);
                        assert_eq!(mid.len(), mid2.len());
                        if d1.cols() == 0 || d2.rows() == 0 {
                            continue;
                        }
                        // multiply d2 * d1 and check zero
                        for col in 0..d1.cols() {
                            let v: Vec<_> = (0..d1.rows()).map(|r| d1.get(r, col)).collect();
                            let w2 = d2.apply(&v);
                            assert!(
                                w2.iter().all(|x| x.is_zero()),
                                "d^2 != 0 at n={n}, w={w}, {parity}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h0_is_the_deepest_level() {
        let (_, s) = context_a();
        for (label, crosses) in [
            (DiagramLabel::I, &[1usize][..]),
            (DiagramLabel::I, &[2][..]),
            (DiagramLabel::I, &[1, 2][..]),
            (DiagramLabel::I, &[2, 3][..]),
            (DiagramLabel::I, &[1, 2, 3][..]),
            (DiagramLabel::IV, &[1, 2, 3][..]),
        ] {
            let rep = grading_of(&ParabolicSpec::new(label, crosses), &s);
            let c = SpencerComplex::new(&rep);
            let nu = rep.nu;
            // H^0 concentrated at weight -nu with sdim = sdim g_{-nu}
            let (h0, _) = c.cohomology_slice(0, -nu);
            assert_eq!(h0, rep.level(-nu).sdim, "{label:?} {crosses:?}");
            for w in (-nu + 1)..=0 {
                let (h, _) = c.cohomology_slice(0, w);
                assert!(h.is_zero(), "H^0 at weight {w} for {label:?} {crosses:?}");
            }
        }
    }
}
