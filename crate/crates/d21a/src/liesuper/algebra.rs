//! Basis-indexed finite-dimensional Lie superalgebras with sparse structure
//! constants over the rational-function field.

use crate::error::AlgebraError;
use crate::scalars::{Parameters, Parity, RationalFunction, SDim, SparseVec};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    pub degree: Option<i64>,
}

impl BasisElement {
    pub fn new(name: &str, parity: Parity) -> Self {
        BasisElement { name: name.to_string(), parity, degree: None }
    }

    pub fn graded(name: &str, parity: Parity, degree: i64) -> Self {
        BasisElement { name: name.to_string(), parity, degree: Some(degree) }
    }
}

#[derive(Clone)]
pub struct BasisSuperalgebra {
    params: Parameters,
    basis: Vec<BasisElement>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, RationalFunction)>>,
}

#[derive(Debug)]
pub struct JacobiViolation {
    pub triple: (String, String, String),
    pub defect: Vec<(String, RationalFunction)>,
}

impl BasisSuperalgebra {
    pub fn new(params: &Parameters, basis: Vec<BasisElement>) -> Self {
        let names: std::collections::BTreeSet<&str> =
            basis.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names.len(), basis.len(), "duplicate basis names");
        BasisSuperalgebra { params: params.clone(), basis, brackets: BTreeMap::new() }
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sdim(&self) -> SDim {
        let even = self.basis.iter().filter(|b| b.parity == Parity::Even).count();
        SDim::new(even, self.basis.len() - even)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn degree(&self, i: usize) -> Option<i64> {
        self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    /// Set [e_i, e_j]; the mirrored bracket is derived from
    /// super-antisymmetry. Parity consistency and degree additivity are
    /// enforced.
    pub fn set_bracket(&mut self, i: usize, j: usize, terms: Vec<(usize, RationalFunction)>) {
        let terms: Vec<(usize, RationalFunction)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let pi = self.parity(i);
        let pj = self.parity(j);
        for (k, _) in &terms {
            assert_eq!(self.parity(*k), pi.add(pj), "parity inconsistency in bracket");
            if let (Some(di), Some(dj), Some(dk)) =
                (self.degree(i), self.degree(j), self.degree(*k))
            {
                assert_eq!(di + dj, dk, "degree inconsistency in bracket");
            }
        }
        let sign = pi.sign_if_both_odd(pj); // [y,x] = -(-1)^{|x||y|} [x,y]
        let mirrored: Vec<(usize, RationalFunction)> = terms
            .iter()
            .map(|(k, c)| (*k, c.scale_int(-sign)))
            .collect();
        if terms.is_empty() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), terms);
        }
        if i != j {
            if mirrored.is_empty() {
                self.brackets.remove(&(j, i));
            } else {
                self.brackets.insert((j, i), mirrored);
            }
        } else {
            // Diagonal: for even e_i super-antisymmetry forces [e_i,e_i] = 0.
            if pi == Parity::Even {
                assert!(
                    self.brackets.get(&(i, i)).map_or(true, |t| t.is_empty()),
                    "nonzero diagonal bracket on an even element"
                );
            }
        }
    }

    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, RationalFunction)] {
        self.brackets.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn stored_brackets(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, RationalFunction)>)> {
        self.brackets.iter()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec<usize> {
        SparseVec::from_pairs(self.bracket_terms(i, j).iter().cloned())
    }

    /// Bilinear extension of the bracket to sparse coordinate vectors.
    pub fn bracket_vec(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                let c = ci.mul(cj);
                for (k, s) in self.bracket_terms(*i, *j) {
                    out.add_entry(*k, &s.mul(&c));
                }
            }
        }
        out
    }

    pub fn unit(&self, name: &str) -> SparseVec<usize> {
        let i = self
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown basis element `{name}`"));
        SparseVec::unit(i, &self.params)
    }

    pub fn combo(&self, parts: &[(&str, RationalFunction)]) -> SparseVec<usize> {
        let mut v = SparseVec::new();
        for (n, c) in parts {
            let i = self.index_of(n).unwrap_or_else(|| panic!("unknown basis element `{n}`"));
            v.add_entry(i, c);
        }
        v
    }

    /// Format a coordinate vector in terms of basis names.
    pub fn describe(&self, v: &SparseVec<usize>) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in v.iter() {
            parts.push(format!("({})*{}", c, self.name(*i)));
        }
        parts.join(" + ")
    }

    /// All violations of the super-Jacobi identity on basis triples.
    pub fn check_jacobi(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            let xi = SparseVec::unit(i, &self.params);
            for j in 0..n {
                let xj = SparseVec::unit(j, &self.params);
                let sign = self.parity(i).sign_if_both_odd(self.parity(j));
                for k in 0..n {
                    let xk = SparseVec::unit(k, &self.params);
                    // [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
                    let lhs = self.bracket_vec(&xi, &self.bracket_vec(&xj, &xk));
                    let t1 = self.bracket_vec(&self.bracket_vec(&xi, &xj), &xk);
                    let mut t2 = self.bracket_vec(&xj, &self.bracket_vec(&xi, &xk));
                    if sign < 0 {
                        t2 = t2.neg();
                    }
                    let mut defect = lhs.clone();
                    defect.add_scaled(&t1, &RationalFunction::from_int(&self.params, -1));
                    defect.add_scaled(&t2, &RationalFunction::from_int(&self.params, -1));
                    if !defect.is_zero() {
                        out.push(JacobiViolation {
                            triple: (
                                self.name(i).to_string(),
                                self.name(j).to_string(),
                                self.name(k).to_string(),
                            ),
                            defect: defect
                                .iter()
                                .map(|(l, c)| (self.name(*l).to_string(), c.clone()))
                                .collect(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Verify the stored table satisfies super-antisymmetry (it should by
    /// construction; exposed for tests and the JSON loader).
    pub fn check_antisymmetry(&self) -> bool {
        for ((i, j), terms) in &self.brackets {
            let sign = self.parity(*i).sign_if_both_odd(self.parity(*j));
            let mirrored = self.bracket_basis(*j, *i);
            let mut expect = SparseVec::new();
            for (k, c) in terms {
                expect.add_entry(*k, &c.scale_int(-sign));
            }
            let mut diff = mirrored.clone();
            diff.add_scaled(&expect, &RationalFunction::from_int(&self.params, -1));
            if !diff.is_zero() {
                return false;
            }
        }
        true
    }

    /// Basis indices at a given degree.
    pub fn degree_indices(&self, k: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == Some(k)).collect()
    }

    pub fn sdim_at_degree(&self, k: i64) -> SDim {
        let idx = self.degree_indices(k);
        let even = idx.iter().filter(|&&i| self.parity(i) == Parity::Even).count();
        SDim::new(even, idx.len() - even)
    }

    /// Depth of a grading: largest nu with a nonzero component at -nu.
    pub fn depth(&self) -> i64 {
        -(0..self.dim())
            .filter_map(|i| self.degree(i))
            .min()
            .unwrap_or(0)
    }

    /// Restriction to a subset of basis indices; fails if the subset is not
    /// bracket-closed.
    pub fn restrict(&self, indices: &[usize]) -> Result<BasisSuperalgebra, AlgebraError> {
        let map: BTreeMap<usize, usize> =
            indices.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let basis: Vec<BasisElement> = indices.iter().map(|&i| self.basis[i].clone()).collect();
        let mut sub = BasisSuperalgebra::new(&self.params, basis);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                if b < a {
                    continue;
                }
                let terms = self.bracket_terms(i, j);
                let mut new_terms = Vec::new();
                for (k, c) in terms {
                    match map.get(k) {
                        Some(&nk) => new_terms.push((nk, c.clone())),
                        None => {
                            return Err(AlgebraError::Other(format!(
                                "subset not closed: [{}, {}] has component {}",
                                self.name(i),
                                self.name(j),
                                self.name(*k)
                            )))
                        }
                    }
                }
                sub.set_bracket(a, b, new_terms);
            }
        }
        Ok(sub)
    }

    /// Center: elements commuting with the whole algebra.
    pub fn center_sdim(&self) -> SDim {
        self.centralizer_sdim(&(0..self.dim()).collect::<Vec<_>>())
    }

    fn centralizer_sdim(&self, of: &[usize]) -> SDim {
        use crate::scalars::SparseMatrix;
        let n = self.dim();
        let mut even = 0usize;
        let mut odd = 0usize;
        for parity in [Parity::Even, Parity::Odd] {
            let cols: Vec<usize> = (0..n).filter(|&i| self.parity(i) == parity).collect();
            if cols.is_empty() {
                continue;
            }
            let mut m = SparseMatrix::new(&self.params, of.len() * n, cols.len());
            for (ci, &i) in cols.iter().enumerate() {
                for (wi, &w) in of.iter().enumerate() {
                    for (k, c) in self.bracket_terms(i, w) {
                        m.add_to(wi * n + k, ci, c);
                    }
                }
            }
            let (ns, _) = m.nullspace();
            match parity {
                Parity::Even => even = ns.len(),
                Parity::Odd => odd = ns.len(),
            }
        }
        SDim::new(even, odd)
    }

    /// Dimension data of the derived subalgebra [g, g].
    pub fn derived_sdim(&self) -> SDim {
        use crate::scalars::EchelonSpan;
        let mut even = EchelonSpan::new(&self.params);
        let mut odd = EchelonSpan::new(&self.params);
        for ((i, j), _) in self.brackets.iter() {
            let v = self.bracket_basis(*i, *j);
            if v.is_zero() {
                continue;
            }
            let p = self.parity(*i).add(self.parity(*j));
            match p {
                Parity::Even => {
                    even.insert(&v);
                }
                Parity::Odd => {
                    odd.insert(&v);
                }
            }
        }
        SDim::new(even.dim(), odd.dim())
    }
}
