//! Bracket closures of generating-function or vector-field spans, structure
//! constants in the generator basis, and correspondence checks against
//! abstract basis superalgebras.

use super::models::ContactModel;
use super::poly::{Coord, STerm, SuperPolynomial, SuperVectorField};
use crate::error::AlgebraError;
use crate::liesuper::{BasisElement, BasisSuperalgebra};
use crate::scalars::{
    poly_div_exact, EchelonSpan, Parameters, Parity, Polynomial, RationalFunction, SparseVec,
};

/// Key type for coordinatizing vector fields.
pub type FieldKey = (Coord, STerm);

pub fn poly_to_vec(f: &SuperPolynomial) -> SparseVec<STerm> {
    SparseVec::from_pairs(f.terms.iter().map(|(t, c)| (t.clone(), c.clone())))
}

pub fn field_to_vec(x: &SuperVectorField) -> SparseVec<FieldKey> {
    SparseVec::from_pairs(x.coeffs.iter().flat_map(|(c, p)| {
        p.terms
            .iter()
            .map(move |(t, v)| ((*c, t.clone()), v.clone()))
            .collect::<Vec<_>>()
    }))
}

/// Verify that the span of the generators is closed under the model bracket
/// and return the abstract algebra on the generator basis. Element parities
/// are the parities of the associated contact fields.
pub fn span_closure_functions(
    model: &ContactModel,
    gens: &[SuperPolynomial],
    names: Option<&[String]>,
) -> Result<BasisSuperalgebra, AlgebraError> {
    let params = model.params().clone();
    let mut span: EchelonSpan<STerm> = EchelonSpan::new(&params);
    for (i, g) in gens.iter().enumerate() {
        if !span.insert(&poly_to_vec(g)) {
            return Err(AlgebraError::Other(format!("generator {i} is dependent")));
        }
    }
    let basis: Vec<BasisElement> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let name = names
                .map(|n| n[i].clone())
                .unwrap_or_else(|| format!("g{}", i));
            BasisElement::new(&name, model.field_parity(g))
        })
        .collect();
    let mut alg = BasisSuperalgebra::new(&params, basis);
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let b = model.lagrange_jacobi(&gens[i], &gens[j]);
            let Some(coords) = span.coords(&poly_to_vec(&b)) else {
                return Err(AlgebraError::NotClosed(i, j));
            };
            let terms: Vec<(usize, RationalFunction)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            alg.set_bracket(i, j, terms);
        }
    }
    // Super-antisymmetry of the model bracket (mirrored pairs agree).
    for i in 0..gens.len() {
        for j in 0..i {
            let b = model.lagrange_jacobi(&gens[i], &gens[j]);
            let expect = alg.bracket_basis(i, j);
            let coords = span
                .coords(&poly_to_vec(&b))
                .ok_or(AlgebraError::NotClosed(i, j))?;
            let got = SparseVec::from_pairs(
                coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
            );
            let mut diff = got.clone();
            diff.add_scaled(&expect, &RationalFunction::from_int(&params, -1));
            if !diff.is_zero() {
                return Err(AlgebraError::Other(format!(
                    "bracket is not super-antisymmetric on generators ({i},{j})"
                )));
            }
        }
    }
    Ok(alg)
}

/// Same for explicit vector fields under the super commutator.
pub fn span_closure_fields(
    fields: &[SuperVectorField],
    names: Option<&[String]>,
) -> Result<BasisSuperalgebra, AlgebraError> {
    let params = fields[0].coords.params.clone();
    let mut span: EchelonSpan<FieldKey> = EchelonSpan::new(&params);
    for (i, x) in fields.iter().enumerate() {
        if !span.insert(&field_to_vec(x)) {
            return Err(AlgebraError::Other(format!("field {i} is dependent")));
        }
    }
    let basis: Vec<BasisElement> = fields
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let name = names
                .map(|n| n[i].clone())
                .unwrap_or_else(|| format!("v{}", i));
            BasisElement::new(&name, x.parity)
        })
        .collect();
    let mut alg = BasisSuperalgebra::new(&params, basis);
    for i in 0..fields.len() {
        for j in i..fields.len() {
            let b = fields[i].bracket(&fields[j]);
            let Some(coords) = span.coords(&field_to_vec(&b)) else {
                return Err(AlgebraError::NotClosed(i, j));
            };
            let terms: Vec<(usize, RationalFunction)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            alg.set_bracket(i, j, terms);
        }
    }
    Ok(alg)
}

/// Reduce powers of the designated square root of -1 (parameter `i`).
pub fn reduce_gaussian(p: &Polynomial) -> Polynomial {
    let params = p.params().clone();
    let Some(iv) = params.index_of("i") else { return p.clone() };
    let mut out = Polynomial::zero(&params);
    for (m, c) in p.terms() {
        let e = m[iv];
        let mut m2 = m.clone();
        m2[iv] = e % 2;
        let sign = if (e / 2) % 2 == 0 { 1i64 } else { -1 };
        let mut t = std::collections::BTreeMap::new();
        t.insert(m2, c * num::BigRational::from_integer(sign.into()));
        out = out.add(&Polynomial::from_terms(&params, t));
    }
    out
}

/// Equality of scalars modulo i^2 + 1 (cross-multiplied; denominators must
/// not involve i, which holds throughout).
pub fn eq_mod_i(a: &RationalFunction, b: &RationalFunction) -> bool {
    let lhs = a.numer().mul(b.denom());
    let rhs = b.numer().mul(a.denom());
    reduce_gaussian(&lhs.sub(&rhs)).is_zero()
}

/// Check that a degree- and parity-preserving linear map is an isomorphism
/// of superalgebras: Phi[u,v] = [Phi u, Phi v] on all basis pairs, after an
/// optional substitution of the source parameters and optionally modulo
/// i^2 + 1. The map sends source basis element k to `map[k]` (coordinates in
/// the target basis). Returns the first failing bracket, if any.
pub struct Correspondence<'a> {
    pub source: &'a BasisSuperalgebra,
    pub target: &'a BasisSuperalgebra,
    pub map: Vec<SparseVec<usize>>,
    /// images of the source parameters inside the target scalar field
    pub subst: Vec<RationalFunction>,
    pub gaussian: bool,
}

impl<'a> Correspondence<'a> {
    fn push(&self, c: &RationalFunction) -> RationalFunction {
        if self.subst.is_empty() && self.source.params().arity() == 0 {
            RationalFunction::constant_from(
                self.target.params(),
                c.numer().constant_value().unwrap()
                    / c.denom().constant_value().unwrap(),
            )
        } else {
            c.substitute(&self.subst)
        }
    }

    pub fn verify(&self) -> Result<(), AlgebraError> {
        let n = self.source.dim();
        assert_eq!(self.map.len(), n);
        // parity preservation
        for k in 0..n {
            for (t, _) in self.map[k].iter() {
                if self.target.parity(*t) != self.source.parity(k) {
                    return Err(AlgebraError::Correspondence(
                        self.source.name(k).to_string(),
                        "parity".to_string(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                // Phi([u_i, u_j])
                let mut lhs: SparseVec<usize> = SparseVec::new();
                for (k, c) in self.source.bracket_terms(i, j) {
                    lhs.add_scaled(&self.map[*k], &self.push(c));
                }
                // [Phi u_i, Phi u_j]
                let rhs = self.target.bracket_vec(&self.map[i], &self.map[j]);
                let mut diff = lhs.clone();
                diff.add_scaled(&rhs, &RationalFunction::from_int(self.target.params(), -1));
                let ok = if self.gaussian {
                    diff.iter().all(|(_, c)| {
                        eq_mod_i(c, &RationalFunction::zero(self.target.params()))
                    })
                } else {
                    diff.is_zero()
                };
                if !ok {
                    return Err(AlgebraError::Correspondence(
                        self.source.name(i).to_string(),
                        self.source.name(j).to_string(),
                    ));
                }
            }
        }
        // bijectivity: the map matrix has full rank (block check via
        // elimination over the target scalars; modulo i^2+1 when Gaussian).
        if !self.is_bijective() {
            return Err(AlgebraError::Correspondence(
                "map".to_string(),
                "not bijective".to_string(),
            ));
        }
        Ok(())
    }

    fn is_bijective(&self) -> bool {
        if self.target.dim() != self.source.dim() {
            return false;
        }
        if !self.gaussian {
            let mut span: EchelonSpan<usize> = EchelonSpan::new(self.target.params());
            return self.map.iter().filter(|v| span.insert(v)).count() == self.source.dim();
        }
        // Gaussian case: fraction-free determinant reduced mod i^2+1.
        let n = self.source.dim();
        let params = self.target.params();
        let mut rows: Vec<Vec<Polynomial>> = Vec::new();
        let mut den_scale = Polynomial::one(params);
        for v in &self.map {
            let mut lcm = Polynomial::one(params);
            for (_, c) in v.iter() {
                lcm = lcm.mul(c.denom());
            }
            let mut row = vec![Polynomial::zero(params); n];
            for (t, c) in v.iter() {
                row[*t] = c
                    .numer()
                    .mul(&poly_div_exact(&lcm, c.denom()).expect("lcm divisible"));
            }
            den_scale = den_scale.mul(&lcm);
            rows.push(row);
        }
        let det = fraction_free_det(rows, params);
        !reduce_gaussian(&det).is_zero()
    }
}

fn fraction_free_det(mut m: Vec<Vec<Polynomial>>, params: &Parameters) -> Polynomial {
    let n = m.len();
    let mut prev = Polynomial::one(params);
    let mut sign = 1i64;
    for k in 0..n {
        // pivot search
        let Some(pr) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Polynomial::zero(params);
        };
        if pr != k {
            m.swap(pr, k);
            sign = -sign;
        }
        let pivot = m[k][k].clone();
        for r in (k + 1)..n {
            for c in (k + 1)..n {
                let num = m[r][c].mul(&pivot).sub(&m[r][k].mul(&m[k][c]));
                m[r][c] = if num.is_zero() {
                    num
                } else {
                    poly_div_exact(&num, &prev).expect("Bareiss division")
                };
            }
            m[r][k] = Polynomial::zero(params);
        }
        prev = pivot;
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    det
}

/// Solve a small dense linear system A x = b exactly; None when unsolvable.
pub fn linsolve(
    a: &[Vec<RationalFunction>],
    b: &[RationalFunction],
    params: &Parameters,
) -> Option<Vec<RationalFunction>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<RationalFunction>> = a.to_vec();
    let mut rhs: Vec<RationalFunction> = b.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(pr, r);
        rhs.swap(pr, r);
        let inv = m[r][c].inv().unwrap();
        for j in 0..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        rhs[r] = rhs[r].mul(&inv);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                }
                rhs[i] = rhs[i].sub(&f.mul(&rhs[r]));
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency
    for i in r..rows {
        if !rhs[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![RationalFunction::zero(params); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = rhs[row].clone();
    }
    Some(x)
}

/// Solve a slot-diagonal graded correspondence: source basis elements listed
/// in `slots` map to scalar multiples of the paired target elements, and the
/// source elements in `level0` map into the span of the target `level0`
/// elements. Returns the full map on success.
pub fn solve_graded_correspondence(
    source: &BasisSuperalgebra,
    target: &BasisSuperalgebra,
    slots: &[(usize, usize)],
    level0: (&[usize], &[usize]),
) -> Option<Vec<SparseVec<usize>>> {
    let params = target.params();
    let n = source.dim();
    let mut scale: Vec<Option<RationalFunction>> = vec![None; n];
    let slot_target: std::collections::BTreeMap<usize, usize> =
        slots.iter().cloned().collect();

    // Propagate scales from brackets between diagonal slots.
    let mut progress = true;
    let mut guard = 0;
    while progress {
        progress = false;
        guard += 1;
        if guard > 64 {
            break;
        }
        for &(i, ti) in slots {
            for &(j, tj) in slots {
                let src = source.bracket_terms(i, j);
                let tgt = target.bracket_basis(ti, tj);
                // single-slot outputs only
                if src.len() != 1 {
                    continue;
                }
                let (k, ck) = (&src[0].0, &src[0].1);
                let Some(&tk) = slot_target.get(k) else { continue };
                let Some(ct) = tgt.get(&tk) else { continue };
                if tgt.iter().count() != 1 {
                    continue;
                }
                // d_i d_j ct = ck d_k
                let known = [&scale[i], &scale[j], &scale[*k]];
                let unknown_count = known.iter().filter(|s| s.is_none()).count();
                if unknown_count != 1 {
                    continue;
                }
                if scale[i].is_none() && i == j {
                    // d_i^2 needs a square root; skip
                    continue;
                }
                if scale[*k].is_none() {
                    let v = scale[i]
                        .clone()
                        .unwrap()
                        .mul(&scale[j].clone().unwrap())
                        .mul(ct)
                        .div(ck)
                        .ok()?;
                    scale[*k] = Some(v);
                } else if scale[i].is_none() {
                    let v = scale[*k]
                        .clone()
                        .unwrap()
                        .mul(ck)
                        .div(&scale[j].clone().unwrap().mul(ct))
                        .ok()?;
                    scale[i] = Some(v);
                } else {
                    let v = scale[*k]
                        .clone()
                        .unwrap()
                        .mul(ck)
                        .div(&scale[i].clone().unwrap().mul(ct))
                        .ok()?;
                    scale[j] = Some(v);
                }
                progress = true;
            }
        }
        if !progress {
            // seed one free scale
            if let Some(&(i, _)) = slots.iter().find(|(i, _)| scale[*i].is_none()) {
                scale[i] = Some(RationalFunction::one(params));
                progress = true;
            }
        }
    }
    for &(i, _) in slots {
        scale[i].as_ref()?;
    }

    // Level-0 block: target level-0 ad-action on the slot elements must be
    // diagonal; solve sum_s C_{rs} mu_{s,(slot)} = lambda_{r,(slot)}.
    let (src0, tgt0) = level0;
    let mut mu: Vec<Vec<RationalFunction>> = Vec::new(); // [slot][s]
    for &(_, ti) in slots {
        let mut row = Vec::new();
        for &t0 in tgt0 {
            let b = target.bracket_basis(t0, ti);
            let mut diag = RationalFunction::zero(params);
            for (k, c) in b.iter() {
                if *k == ti {
                    diag = c.clone();
                } else if !c.is_zero() {
                    return None; // not diagonal
                }
            }
            row.push(diag);
        }
        mu.push(row);
    }
    let mut map: Vec<SparseVec<usize>> = vec![SparseVec::new(); n];
    for &(i, ti) in slots {
        map[i] = SparseVec::from_pairs([(ti, scale[i].clone().unwrap())]);
    }
    for &h in src0 {
        let mut lambda = Vec::new();
        for &(i, _) in slots {
            let b = source.bracket_basis(h, i);
            let mut diag = RationalFunction::zero(params);
            for (k, c) in b.iter() {
                if *k == i {
                    diag = c.extend_context(params);
                } else if !c.is_zero() {
                    return None;
                }
            }
            lambda.push(diag);
        }
        let x = linsolve(&mu, &lambda, params)?;
        map[h] = SparseVec::from_pairs(
            tgt0.iter().cloned().zip(x.into_iter()).filter(|(_, c)| !c.is_zero()),
        );
    }
    Some(map)
}
