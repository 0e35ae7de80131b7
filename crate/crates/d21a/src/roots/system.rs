//! Roots in the epsilon basis, the four standard simple systems, Cartan
//! matrices and reflections.

use crate::error::AlgebraError;
use crate::liesuper::BasisSuperalgebra;
use crate::scalars::{Parity, RationalFunction};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramLabel {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for DiagramLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramLabel::I => write!(f, "I"),
            DiagramLabel::II => write!(f, "II"),
            DiagramLabel::III => write!(f, "III"),
            DiagramLabel::IV => write!(f, "IV"),
        }
    }
}

pub fn all_diagram_labels() -> [DiagramLabel; 4] {
    [DiagramLabel::I, DiagramLabel::II, DiagramLabel::III, DiagramLabel::IV]
}

/// A root in integer epsilon-coordinates. Even roots are +-2 eps_i, odd roots
/// are +-eps_1 +- eps_2 +- eps_3.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: [i64; 3],
}

impl Root {
    pub fn new(coords: [i64; 3]) -> Self {
        let r = Root { coords };
        assert!(r.parity_checked().is_some(), "not a root: {:?}", coords);
        r
    }

    fn parity_checked(&self) -> Option<Parity> {
        let c = &self.coords;
        let nonzero: Vec<i64> = c.iter().cloned().filter(|&x| x != 0).collect();
        if nonzero.len() == 1 && nonzero[0].abs() == 2 {
            Some(Parity::Even)
        } else if c.iter().all(|&x| x.abs() == 1) {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity_checked().expect("valid root")
    }

    pub fn neg(&self) -> Root {
        Root { coords: [-self.coords[0], -self.coords[1], -self.coords[2]] }
    }

    pub fn add(&self, other: &Root) -> Option<Root> {
        let coords = [
            self.coords[0] + other.coords[0],
            self.coords[1] + other.coords[1],
            self.coords[2] + other.coords[2],
        ];
        let r = Root { coords };
        r.parity_checked().map(|_| r)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            if c == -1 {
                write!(f, "-")?;
            } else if c != 1 {
                write!(f, "{}", c)?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The full root set: 6 even and 8 odd roots.
pub fn all_roots() -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..3 {
        for s in [2i64, -2] {
            let mut c = [0i64; 3];
            c[i] = s;
            out.push(Root::new(c));
        }
    }
    for s1 in [1i64, -1] {
        for s2 in [1i64, -1] {
            for s3 in [1i64, -1] {
                out.push(Root::new([s1, s2, s3]));
            }
        }
    }
    out
}

/// <alpha, beta> = sum_i s_i alpha_i beta_i, from B(eps_i, eps_j) = s_i d_ij.
pub fn pairing(s: &[RationalFunction; 3], a: &Root, b: &Root) -> RationalFunction {
    let params = s[0].params();
    let mut acc = RationalFunction::zero(params);
    for i in 0..3 {
        let c = a.coords[i] * b.coords[i];
        if c != 0 {
            acc = acc.add(&s[i].scale_int(c));
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimpleSystem {
    pub roots: [Root; 3],
    pub label: DiagramLabel,
    /// Family parameter carried through reflections and relabelings.
    pub parameter: RationalFunction,
}

/// The four standard simple systems.
pub fn standard_system(label: DiagramLabel, parameter: &RationalFunction) -> SimpleSystem {
    let roots = standard_roots(label);
    SimpleSystem { roots, label, parameter: parameter.clone() }
}

pub fn standard_roots(label: DiagramLabel) -> [Root; 3] {
    match label {
        DiagramLabel::I => [
            Root::new([1, -1, -1]),
            Root::new([0, 2, 0]),
            Root::new([0, 0, 2]),
        ],
        DiagramLabel::II => [
            Root::new([0, 2, 0]),
            Root::new([-1, -1, 1]),
            Root::new([2, 0, 0]),
        ],
        DiagramLabel::III => [
            Root::new([0, 0, 2]),
            Root::new([2, 0, 0]),
            Root::new([-1, 1, -1]),
        ],
        DiagramLabel::IV => [
            Root::new([-1, 1, 1]),
            Root::new([1, 1, -1]),
            Root::new([1, -1, 1]),
        ],
    }
}

/// Match a triple of roots against the standard systems up to a positional
/// permutation; returns the label and the permutation pi with
/// roots[i] = standard[pi[i]].
pub fn identify_system(roots: &[Root; 3]) -> Option<(DiagramLabel, [usize; 3])> {
    for label in all_diagram_labels() {
        let std_roots = standard_roots(label);
        'perm: for perm in permutations() {
            for i in 0..3 {
                if roots[i] != std_roots[perm[i]] {
                    continue 'perm;
                }
            }
            return Some((label, perm));
        }
    }
    None
}

pub fn permutations() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

/// Odd reflection at node j (0-based); alpha_j must be odd isotropic. The
/// result is re-identified with a standard system.
pub fn odd_reflection(
    pi: &SimpleSystem,
    j: usize,
    s: &[RationalFunction; 3],
) -> Result<(SimpleSystem, [usize; 3]), AlgebraError> {
    let alpha = pi.roots[j];
    if alpha.parity() != Parity::Odd || !pairing(s, &alpha, &alpha).is_zero() {
        return Err(AlgebraError::Other(format!(
            "node {} is not an odd isotropic simple root",
            j + 1
        )));
    }
    let mut new_roots = pi.roots;
    for (i, r) in new_roots.iter_mut().enumerate() {
        *r = reflect_root(&alpha, &pi.roots[i], s, i == j);
    }
    let (label, perm) = identify_system(&new_roots).ok_or_else(|| {
        AlgebraError::Other("reflected system does not match a standard diagram".into())
    })?;
    Ok((
        SimpleSystem { roots: new_roots, label, parameter: pi.parameter.clone() },
        perm,
    ))
}

/// The case formula for an odd isotropic reflection applied to a root.
pub fn reflect_root(
    alpha: &Root,
    beta: &Root,
    s: &[RationalFunction; 3],
    beta_is_alpha: bool,
) -> Root {
    if beta_is_alpha || beta == alpha {
        return alpha.neg();
    }
    if pairing(s, alpha, beta).is_zero() {
        *beta
    } else {
        beta.add(alpha).expect("alpha + beta is a root when the pairing is nonzero")
    }
}

/// Even (Weyl) reflection r_alpha(beta) = beta - 2<beta,alpha>/<alpha,alpha> alpha.
pub fn even_reflection(alpha: &Root, beta: &Root, s: &[RationalFunction; 3]) -> Root {
    assert_eq!(alpha.parity(), Parity::Even);
    let num = pairing(s, beta, alpha);
    let den = pairing(s, alpha, alpha);
    let ratio = num.div(&den).expect("even roots are anisotropic");
    // For this root system the ratio is integral: check and use it.
    let r = ratio
        .mul(&RationalFunction::from_int(ratio.params(), 2));
    let c = r
        .numer()
        .constant_value()
        .and_then(|n| {
            let d = r.denom().constant_value()?;
            let q = n / d;
            if q.is_integer() {
                Some(q.to_integer())
            } else {
                None
            }
        })
        .expect("Cartan integer");
    let k: i64 = c.try_into().expect("small Cartan integer");
    let coords = [
        beta.coords[0] - k * alpha.coords[0],
        beta.coords[1] - k * alpha.coords[1],
        beta.coords[2] - k * alpha.coords[2],
    ];
    Root::new(coords)
}

/// Cartan matrix over the scalar field after the row normalizations: even
/// rows scaled to C_jj = 2; isotropic odd rows carry a free scale, fixed per
/// diagram to reproduce the reference tables.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanMatrix {
    pub entries: [[RationalFunction; 3]; 3],
}

impl CartanMatrix {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            out.push_str(&format!(
                "[ {} , {} , {} ]\n",
                row[0], row[1], row[2]
            ));
        }
        out
    }
}

/// Free-scale choices for isotropic odd rows, per standard diagram.
fn odd_row_scale(label: DiagramLabel, row: usize) -> (i64, i64) {
    match (label, row) {
        (DiagramLabel::I, 0) => (-1, 2),
        (DiagramLabel::II, 1) => (1, 2),
        (DiagramLabel::III, 2) => (1, 2),
        (DiagramLabel::IV, _) => (1, 2),
        _ => (1, 2),
    }
}

pub fn cartan_matrix(pi: &SimpleSystem, s: &[RationalFunction; 3]) -> CartanMatrix {
    let params = s[0].params();
    let mut entries: [[RationalFunction; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| pairing(s, &pi.roots[i], &pi.roots[j]))
    });
    for i in 0..3 {
        let diag = entries[i][i].clone();
        let scale = if pi.roots[i].parity() == Parity::Even {
            RationalFunction::from_int(params, 2).div(&diag).expect("anisotropic")
        } else if diag.is_zero() {
            let (n, d) = odd_row_scale(pi.label, i);
            RationalFunction::from_ratio(params, n, d)
        } else {
            RationalFunction::one(params).div(&diag).expect("nonzero")
        };
        for j in 0..3 {
            entries[i][j] = entries[i][j].mul(&scale);
        }
    }
    CartanMatrix { entries }
}

/// Weights of the basis of an algebra under a diagonal Cartan triple.
/// Errors when the action is not diagonal.
pub fn root_decomposition(
    alg: &BasisSuperalgebra,
    cartan: [&str; 3],
) -> Result<Vec<(usize, Option<Root>)>, AlgebraError> {
    let h: Vec<usize> = cartan
        .iter()
        .map(|n| {
            alg.index_of(n)
                .ok_or_else(|| AlgebraError::Other(format!("no Cartan element {n}")))
        })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for e in 0..alg.dim() {
        let mut coords = [0i64; 3];
        let mut is_zero_weight = true;
        for (ci, &hi) in h.iter().enumerate() {
            let b = alg.bracket_basis(hi, e);
            let mut lambda = RationalFunction::zero(alg.params());
            for (k, c) in b.iter() {
                if *k == e {
                    lambda = c.clone();
                } else if !c.is_zero() {
                    return Err(AlgebraError::NotDiagonal(alg.name(e).to_string()));
                }
            }
            let v = lambda
                .numer()
                .constant_value()
                .zip(lambda.denom().constant_value())
                .map(|(n, d)| n / d)
                .ok_or_else(|| AlgebraError::NotDiagonal(alg.name(e).to_string()))?;
            if !v.is_integer() {
                return Err(AlgebraError::NotDiagonal(alg.name(e).to_string()));
            }
            let n: i64 = v.to_integer().try_into().unwrap();
            coords[ci] = n;
            if n != 0 {
                is_zero_weight = false;
            }
        }
        if is_zero_weight {
            out.push((e, None));
        } else {
            out.push((e, Some(Root::new(coords))));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::build_gamma;
    use crate::scalars::context_a;

    #[test]
    fn root_counts() {
        let roots = all_roots();
        assert_eq!(roots.iter().filter(|r| r.parity() == Parity::Even).count(), 6);
        assert_eq!(roots.iter().filter(|r| r.parity() == Parity::Odd).count(), 8);
    }

    #[test]
    fn weights_of_gamma_basis() {
        let (_, s) = context_a();
        let g = build_gamma(&s);
        let dec = root_decomposition(&g, ["H1", "H2", "H3"]).unwrap();
        let x1 = g.index_of("X1").unwrap();
        assert_eq!(dec[x1].1, Some(Root::new([2, 0, 0])));
        let xxx = g.index_of("xxx").unwrap();
        assert_eq!(dec[xxx].1, Some(Root::new([1, 1, 1])));
        let with_weight = dec.iter().filter(|(_, r)| r.is_some()).count();
        assert_eq!(with_weight, 14); // 6 even + 8 odd root vectors
    }

    #[test]
    fn cartan_matrices_match_reference() {
        let (p, s) = context_a();
        let a = RationalFunction::var(&p, "a");
        let one = RationalFunction::one(&p);
        let zero = RationalFunction::zero(&p);
        let two = RationalFunction::from_int(&p, 2);
        let m_one = one.neg();
        let one_plus_a = one.add(&a);

        let cm = |label| cartan_matrix(&standard_system(label, &a), &s).entries;

        let i = cm(DiagramLabel::I);
        assert_eq!(
            i,
            [
                [zero.clone(), one.clone(), a.clone()],
                [m_one.clone(), two.clone(), zero.clone()],
                [m_one.clone(), zero.clone(), two.clone()],
            ]
        );
        let ii = cm(DiagramLabel::II);
        assert_eq!(
            ii,
            [
                [two.clone(), m_one.clone(), zero.clone()],
                [m_one.clone(), zero.clone(), one_plus_a.clone()],
                [zero.clone(), m_one.clone(), two.clone()],
            ]
        );
        let iii = cm(DiagramLabel::III);
        assert_eq!(
            iii,
            [
                [two.clone(), zero.clone(), m_one.clone()],
                [zero.clone(), two.clone(), m_one.clone()],
                [a.neg(), one_plus_a.clone(), zero.clone()],
            ]
        );
        let iv = cm(DiagramLabel::IV);
        assert_eq!(
            iv,
            [
                [zero.clone(), one.clone(), a.clone()],
                [one.clone(), zero.clone(), one_plus_a.neg()],
                [a.clone(), one_plus_a.neg(), zero.clone()],
            ]
        );
    }

    #[test]
    fn odd_reflections_connect_diagrams() {
        let (p, s) = context_a();
        let a = RationalFunction::var(&p, "a");
        // I at node 1 <-> IV, II at node 2 <-> IV, III at node 3 <-> IV
        let (sys, perm) = odd_reflection(&standard_system(DiagramLabel::I, &a), 0, &s).unwrap();
        assert_eq!(sys.label, DiagramLabel::IV);
        assert_eq!(perm, [0, 1, 2]);
        let (sys, _) = odd_reflection(&standard_system(DiagramLabel::II, &a), 1, &s).unwrap();
        assert_eq!(sys.label, DiagramLabel::IV);
        let (sys, _) = odd_reflection(&standard_system(DiagramLabel::III, &a), 2, &s).unwrap();
        assert_eq!(sys.label, DiagramLabel::IV);
        // From IV each grey node goes back to I, II, III respectively.
        let iv = standard_system(DiagramLabel::IV, &a);
        let (s1, _) = odd_reflection(&iv, 0, &s).unwrap();
        assert_eq!(s1.label, DiagramLabel::I);
        let (s2, _) = odd_reflection(&iv, 1, &s).unwrap();
        assert_eq!(s2.label, DiagramLabel::II);
        let (s3, _) = odd_reflection(&iv, 2, &s).unwrap();
        assert_eq!(s3.label, DiagramLabel::III);
        // r_alpha(alpha) = -alpha and fixed roots stay put under zero pairing
        let alpha = standard_roots(DiagramLabel::I)[0];
        assert_eq!(reflect_root(&alpha, &alpha, &s, true), alpha.neg());
    }

    #[test]
    fn even_reflections_preserve_parity_split() {
        let (_, s) = context_a();
        let roots = all_roots();
        for alpha in roots.iter().filter(|r| r.parity() == Parity::Even) {
            for beta in &roots {
                let r = even_reflection(alpha, beta, &s);
                assert_eq!(r.parity(), beta.parity());
                assert!(roots.contains(&r));
            }
        }
    }
}
