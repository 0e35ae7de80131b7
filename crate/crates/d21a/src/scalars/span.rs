//! Echelon spans of sparse vectors over the scalar field, keyed by an
//! arbitrary ordered coordinate type. Used for subspace reduction, bracket
//! closures and structure-constant extraction.

use super::poly::Parameters;
use super::ratfunc::RationalFunction;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<K: Ord + Clone> {
    entries: BTreeMap<K, RationalFunction>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, RationalFunction)>) -> Self {
        let mut v = SparseVec::new();
        for (k, c) in pairs {
            v.add_entry(k, &c);
        }
        v
    }

    pub fn unit(k: K, params: &Parameters) -> Self {
        Self::from_pairs([(k, RationalFunction::one(params))])
    }

    pub fn add_entry(&mut self, k: K, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        let cur = self.entries.remove(&k);
        let nv = match cur {
            Some(x) => x.add(c),
            None => c.clone(),
        };
        if !nv.is_zero() {
            self.entries.insert(k, nv);
        }
    }

    pub fn get(&self, k: &K) -> Option<&RationalFunction> {
        self.entries.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &RationalFunction)> {
        self.entries.iter()
    }

    pub fn leading_key(&self) -> Option<&K> {
        self.entries.keys().next()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_entry(k.clone(), &v.mul(c));
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), v.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(k.clone(), v);
        }
        out
    }
}

impl<K: Ord + Clone> Default for SparseVec<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Row-reduced span; rows have pivot coefficient one and each pivot key is
/// cleared from the other rows. Tracks the expression of every row in terms
/// of the originally inserted independent vectors, so coordinates with
/// respect to the caller's basis can be recovered.
#[derive(Clone, Debug)]
pub struct EchelonSpan<K: Ord + Clone> {
    params: Parameters,
    rows: Vec<SparseVec<K>>,
    /// rows[i] = sum_j expr[i][j] * basis[j]
    expr: Vec<Vec<RationalFunction>>,
    basis_len: usize,
}

impl<K: Ord + Clone> EchelonSpan<K> {
    pub fn new(params: &Parameters) -> Self {
        EchelonSpan { params: params.clone(), rows: Vec::new(), expr: Vec::new(), basis_len: 0 }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    /// Reduce `v` against the span: returns the residual and the combination
    /// coefficients with respect to the inserted basis vectors.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, Vec<RationalFunction>) {
        let mut res = v.clone();
        let mut coords = vec![RationalFunction::zero(&self.params); self.basis_len];
        for (i, row) in self.rows.iter().enumerate() {
            let Some(p) = row.leading_key() else { continue };
            let Some(c) = res.get(p).cloned() else { continue };
            res.add_scaled(row, &c.neg());
            for (j, e) in self.expr[i].iter().enumerate() {
                coords[j] = coords[j].add(&c.mul(e));
            }
        }
        (res, coords)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` in terms of the inserted basis, if `v` lies in the
    /// span.
    pub fn coords(&self, v: &SparseVec<K>) -> Option<Vec<RationalFunction>> {
        let (res, coords) = self.reduce(v);
        if res.is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    /// Insert a vector; returns true when the dimension grew. Newly inserted
    /// vectors count as basis elements for coordinate reporting.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let (mut res, coords) = self.reduce(v);
        if res.is_zero() {
            return false;
        }
        let pivot = res.leading_key().unwrap().clone();
        let lead = res.get(&pivot).unwrap().clone();
        let inv = lead.inv().expect("pivot nonzero");
        res = res.scale(&inv);
        let mut e: Vec<RationalFunction> = coords.iter().map(|c| c.neg().mul(&inv)).collect();
        e.push(inv.clone());
        self.basis_len += 1;
        for old in self.expr.iter_mut() {
            old.push(RationalFunction::zero(&self.params));
        }
        // Back-substitute the new pivot out of existing rows.
        for i in 0..self.rows.len() {
            if let Some(c) = self.rows[i].get(&pivot).cloned() {
                self.rows[i].add_scaled(&res, &c.neg());
                let e2: Vec<RationalFunction> =
                    self.expr[i].iter().zip(&e).map(|(x, y)| x.sub(&c.mul(y))).collect();
                self.expr[i] = e2;
            }
        }
        // Keep rows ordered by pivot key for determinism.
        let at = self
            .rows
            .iter()
            .position(|r| r.leading_key().map(|k| *k > pivot).unwrap_or(false))
            .unwrap_or(self.rows.len());
        self.rows.insert(at, res);
        self.expr.insert(at, e);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_and_coords() {
        let p = Parameters::new(&["a"]);
        let one = RationalFunction::one(&p);
        let a = RationalFunction::var(&p, "a");
        let v1 = SparseVec::from_pairs([(0usize, one.clone()), (1, a.clone())]);
        let v2 = SparseVec::from_pairs([(1usize, one.clone())]);
        let mut span = EchelonSpan::new(&p);
        assert!(span.insert(&v1));
        assert!(span.insert(&v2));
        assert!(!span.insert(&v1));
        // v1 + a*v2 has coordinates (1, a)
        let mut w = v1.clone();
        w.add_scaled(&v2, &a);
        let c = span.coords(&w).unwrap();
        assert_eq!(c[0], one);
        assert_eq!(c[1], a);
    }
}
