//! Linear super PDE systems imposed on a polynomial ansatz: operators are
//! sums of scalar multiples of compositions of partial derivatives and
//! coordinate multiplications.

use super::poly::{Coord, CoordSystem, SuperPolynomial};
use crate::scalars::{EchelonSpan, RationalFunction, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub enum PrimOp {
    Derive(Coord),
    Multiply(Coord),
}

/// sum_k c_k * op_{k,0} o op_{k,1} o ... (rightmost acts first).
#[derive(Clone)]
pub struct LinearOperator {
    pub terms: Vec<(RationalFunction, Vec<PrimOp>)>,
}

impl LinearOperator {
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let coords = f.coords.clone();
        let mut acc = SuperPolynomial::zero(&coords);
        for (c, ops) in &self.terms {
            let mut v = f.clone();
            for op in ops.iter().rev() {
                v = match op {
                    PrimOp::Derive(x) => v.derive(*x),
                    PrimOp::Multiply(x) => {
                        SuperPolynomial::var(&coords, coords.name(*x)).mul(&v)
                    }
                };
            }
            acc = acc.add(&v.scale(c));
        }
        acc
    }
}

/// Nullspace of the stacked operators on the span of the given ansatz
/// monomials.
pub fn solution_space(
    ops: &[LinearOperator],
    ansatz: &[SuperPolynomial],
    coords: &CoordSystem,
) -> Vec<SuperPolynomial> {
    let params = &coords.params;
    // output coordinates: all terms appearing in the images
    let images: Vec<Vec<SuperPolynomial>> = ops
        .iter()
        .map(|op| ansatz.iter().map(|f| op.apply(f)).collect())
        .collect();
    let mut keys: std::collections::BTreeMap<(usize, super::poly::STerm), usize> =
        std::collections::BTreeMap::new();
    for (oi, imgs) in images.iter().enumerate() {
        for img in imgs {
            for t in img.terms.keys() {
                let n = keys.len();
                keys.entry((oi, t.clone())).or_insert(n);
            }
        }
    }
    let mut m = SparseMatrix::new(params, keys.len(), ansatz.len());
    for (oi, imgs) in images.iter().enumerate() {
        for (col, img) in imgs.iter().enumerate() {
            for (t, c) in &img.terms {
                let row = keys[&(oi, t.clone())];
                m.add_to(row, col, c);
            }
        }
    }
    let (ns, _) = m.nullspace();
    ns.into_iter()
        .map(|coeffs| {
            let mut f = SuperPolynomial::zero(coords);
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    f = f.add(&ansatz[k].scale(&c));
                }
            }
            f
        })
        .collect()
}

/// Span equality of two sets of polynomials.
pub fn spans_equal(a: &[SuperPolynomial], b: &[SuperPolynomial]) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    let params = if let Some(f) = a.first() {
        f.coords.params.clone()
    } else {
        b[0].coords.params.clone()
    };
    let mut sa: EchelonSpan<super::poly::STerm> = EchelonSpan::new(&params);
    for f in a {
        sa.insert(&super::closure::poly_to_vec(f));
    }
    let mut sb: EchelonSpan<super::poly::STerm> = EchelonSpan::new(&params);
    for f in b {
        sb.insert(&super::closure::poly_to_vec(f));
    }
    if sa.dim() != sb.dim() {
        return false;
    }
    a.iter().all(|f| sb.contains(&super::closure::poly_to_vec(f)))
}

/// All monomials of the coordinate system with the even exponents bounded
/// coordinatewise (odd variables are automatically bounded).
pub fn bounded_ansatz(coords: &CoordSystem, even_bounds: &[u16]) -> Vec<SuperPolynomial> {
    assert_eq!(even_bounds.len(), coords.evens.len());
    let n_odd = coords.odds.len();
    let mut out = Vec::new();
    let mut exps = vec![0u16; coords.evens.len()];
    loop {
        for mask in 0..(1u32 << n_odd) {
            let odds: Vec<usize> = (0..n_odd).filter(|i| mask & (1 << i) != 0).collect();
            let mut p = SuperPolynomial::zero(coords);
            p.terms.insert(
                (exps.clone(), odds),
                RationalFunction::one(&coords.params),
            );
            out.push(p);
        }
        // increment multi-exponent
        let mut k = 0;
        loop {
            if k == exps.len() {
                return out;
            }
            if exps[k] < even_bounds[k] {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

/// Membership coordinates of a sparse vector against an echelon span of
/// polynomials (used by normalizer computations).
pub fn poly_span(gens: &[SuperPolynomial]) -> EchelonSpan<super::poly::STerm> {
    let params = gens[0].coords.params.clone();
    let mut span = EchelonSpan::new(&params);
    for g in gens {
        span.insert(&super::closure::poly_to_vec(g));
    }
    span
}

/// Degreewise normalizer within the ambient contact algebra: functions w of
/// field weight k with {w, g} in the span for every generator g.
pub fn normalizer_level(
    model: &super::models::ContactModel,
    weighting: super::models::Weighting,
    gens: &[SuperPolynomial],
    k: i64,
) -> Vec<SuperPolynomial> {
    let params = model.params().clone();
    let span = poly_span(gens);
    let monos = model.monomials_of_field_weight(weighting, k);
    if monos.is_empty() {
        return Vec::new();
    }
    // split by field parity: brackets need homogeneous inputs
    let mut out = Vec::new();
    for parity in [crate::scalars::Parity::Even, crate::scalars::Parity::Odd] {
        let cols: Vec<&SuperPolynomial> = monos
            .iter()
            .filter(|f| model.field_parity(f) == parity)
            .collect();
        if cols.is_empty() {
            continue;
        }
        let mut rows: std::collections::BTreeMap<(usize, super::poly::STerm), usize> =
            std::collections::BTreeMap::new();
        let mut entries: Vec<((usize, super::poly::STerm), usize, RationalFunction)> =
            Vec::new();
        for (ci, w) in cols.iter().enumerate() {
            for (gi, g) in gens.iter().enumerate() {
                let b = model.lagrange_jacobi(w, g);
                let (residual, _) = span.reduce(&super::closure::poly_to_vec(&b));
                for (t, c) in residual.iter() {
                    let key = (gi, t.clone());
                    let n = rows.len();
                    let row = *rows.entry(key.clone()).or_insert(n);
                    entries.push((key, ci, c.clone()));
                    let _ = row;
                }
            }
        }
        let mut m = SparseMatrix::new(&params, rows.len(), cols.len());
        for (key, ci, c) in entries {
            m.add_to(rows[&key], ci, &c);
        }
        let (ns, _) = m.nullspace();
        for sol in ns {
            let mut f = SuperPolynomial::zero(&model.coords);
            for (ci, c) in sol.into_iter().enumerate() {
                if !c.is_zero() {
                    f = f.add(&cols[ci].scale(&c));
                }
            }
            out.push(f);
        }
    }
    out
}

/// Structural helper: a sparse vector over polynomial term keys.
pub fn as_vec(f: &SuperPolynomial) -> SparseVec<super::poly::STerm> {
    super::closure::poly_to_vec(f)
}
