//! Symbol-level Cauchy characteristics of the weak derived flag of a graded
//! nilpotent Lie superalgebra: kernel of the bracket D^k x D^k -> m / D^k.

use super::algebra::BasisSuperalgebra;
use super::Subspace;
use crate::error::AlgebraError;
use crate::scalars::{ExceptionalLocus, Parity, SparseMatrix, SparseVec};

/// Cauchy space of D^k = g_{-1} + ... + g_{-k} inside the negatively graded
/// algebra: vectors v in D^k with [v, D^k] contained in D^k.
pub fn cauchy_characteristics(
    alg: &BasisSuperalgebra,
    k: usize,
) -> Result<(Subspace, ExceptionalLocus), AlgebraError> {
    let depth = alg.depth();
    if k == 0 || (k as i64) > depth {
        return Err(AlgebraError::DepthExceeded(k));
    }
    let in_dk = |i: usize| -> bool {
        matches!(alg.degree(i), Some(d) if d < 0 && -d <= k as i64)
    };
    let dk: Vec<usize> = (0..alg.dim()).filter(|&i| in_dk(i)).collect();
    let deep: Vec<usize> = (0..alg.dim())
        .filter(|&i| matches!(alg.degree(i), Some(d) if -d > k as i64))
        .collect();
    let mut locus = ExceptionalLocus::empty();
    let mut vectors: Vec<SparseVec<usize>> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let cols: Vec<usize> = dk.iter().cloned().filter(|&i| alg.parity(i) == parity).collect();
        if cols.is_empty() {
            continue;
        }
        // Rows: (w in D^k, target component below -k).
        let mut m = SparseMatrix::new(alg.params(), dk.len() * deep.len().max(1), cols.len());
        for (ci, &i) in cols.iter().enumerate() {
            for (wi, &w) in dk.iter().enumerate() {
                for (t, c) in alg.bracket_terms(i, w) {
                    if let Some(ti) = deep.iter().position(|&d| d == *t) {
                        m.add_to(wi * deep.len() + ti, ci, c);
                    }
                }
            }
        }
        let (ns, l) = m.nullspace();
        locus.union(&l);
        for v in ns {
            let vec = SparseVec::from_pairs(
                cols.iter().cloned().zip(v.into_iter()).filter(|(_, c)| !c.is_zero()),
            );
            vectors.push(vec);
        }
    }
    Ok((Subspace::from_vectors(alg, &vectors), locus))
}

#[cfg(test)]
mod tests {
    use crate::roots::{grading_of, DiagramLabel, ParabolicSpec};
    use crate::scalars::{context_a, SDim};

    #[test]
    fn cauchy_of_p12_depth2_is_y2() {
        let (_, s) = context_a();
        let spec = ParabolicSpec::new(DiagramLabel::I, &[1, 2]);
        let report = grading_of(&spec, &s);
        let m = report.negative_part();
        let (sub, _) = super::cauchy_characteristics(&m, 2).unwrap();
        assert_eq!(sub.sdim(), SDim::new(1, 0));
        assert!(sub.contains(&m.unit("Y2")));
    }

    #[test]
    fn cauchy_of_p123_depths() {
        let (_, s) = context_a();
        let spec = ParabolicSpec::new(DiagramLabel::I, &[1, 2, 3]);
        let report = grading_of(&spec, &s);
        let m = report.negative_part();
        let (sub3, _) = super::cauchy_characteristics(&m, 3).unwrap();
        assert_eq!(sub3.sdim(), SDim::new(2, 0));
        assert!(sub3.contains(&m.unit("Y2")));
        assert!(sub3.contains(&m.unit("Y3")));
        let (sub2, _) = super::cauchy_characteristics(&m, 2).unwrap();
        assert_eq!(sub2.sdim(), SDim::new(0, 1));
        assert!(sub2.contains(&m.unit("yxx")));
    }
}
