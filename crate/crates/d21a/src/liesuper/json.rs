//! JSON interchange format for basis superalgebras. Only pairs with i <= j
//! are stored; the mirrored brackets are recovered on load through
//! super-antisymmetry.

use super::algebra::{BasisElement, BasisSuperalgebra};
use crate::error::ScalarError;
use crate::scalars::{parse_rational, Parameters, Parity};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
pub struct AlgebraJson {
    pub parameters: Vec<String>,
    pub basis: Vec<BasisElementJson>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Serialize, Deserialize)]
pub struct BasisElementJson {
    pub name: String,
    pub parity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    pub coeff: String,
}

pub fn to_json(alg: &BasisSuperalgebra) -> AlgebraJson {
    let mut brackets = Vec::new();
    for ((i, j), terms) in alg.stored_brackets() {
        if i > j {
            continue;
        }
        brackets.push(BracketJson {
            i: *i,
            j: *j,
            terms: terms
                .iter()
                .map(|(k, c)| TermJson { k: *k, coeff: format!("{}", c) })
                .collect(),
        });
    }
    AlgebraJson {
        parameters: alg.params().names().to_vec(),
        basis: alg
            .basis()
            .iter()
            .map(|b| BasisElementJson {
                name: b.name.clone(),
                parity: format!("{}", b.parity),
                degree: b.degree,
            })
            .collect(),
        brackets,
    }
}

pub fn from_json(j: &AlgebraJson) -> Result<BasisSuperalgebra, ScalarError> {
    let params = Parameters::new(&j.parameters);
    let basis: Vec<BasisElement> = j
        .basis
        .iter()
        .map(|b| {
            let parity = match b.parity.as_str() {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                other => return Err(ScalarError::Parse(format!("bad parity `{other}`"))),
            };
            Ok(BasisElement { name: b.name.clone(), parity, degree: b.degree })
        })
        .collect::<Result<_, _>>()?;
    let mut alg = BasisSuperalgebra::new(&params, basis);
    for b in &j.brackets {
        if b.i > b.j {
            return Err(ScalarError::Parse("brackets must be stored with i <= j".into()));
        }
        let terms = b
            .terms
            .iter()
            .map(|t| Ok((t.k, parse_rational(&t.coeff, &params)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        alg.set_bracket(b.i, b.j, terms);
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use crate::liesuper::gamma::build_gamma;
    use crate::scalars::context_a;

    #[test]
    fn roundtrip_preserves_brackets() {
        let (_, s) = context_a();
        let g = build_gamma(&s);
        let j = super::to_json(&g);
        let text = serde_json::to_string(&j).unwrap();
        let j2: super::AlgebraJson = serde_json::from_str(&text).unwrap();
        let g2 = super::from_json(&j2).unwrap();
        assert_eq!(g.dim(), g2.dim());
        for i in 0..g.dim() {
            for k in 0..g.dim() {
                assert_eq!(
                    g.bracket_basis(i, k),
                    g2.bracket_basis(i, k),
                    "bracket ({i},{k})"
                );
            }
        }
    }
}
