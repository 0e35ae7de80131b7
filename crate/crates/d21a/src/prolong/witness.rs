//! Infinite-type witnesses: a nonzero v in g_{-1} annihilating a hyperplane
//! of m forces an infinite prolongation. The criterion is necessary for
//! rigidity but not sufficient in the super setting, so a failed search
//! certifies nothing.

use crate::error::AlgebraError;
use crate::liesuper::BasisSuperalgebra;
use crate::scalars::{EchelonSpan, RationalFunction, SparseMatrix, SparseVec};

/// Check [v, V] = 0 for a codimension-one subspace V of m.
pub fn verify_witness(
    m: &BasisSuperalgebra,
    v: &SparseVec<usize>,
    subspace: &[SparseVec<usize>],
) -> Result<bool, AlgebraError> {
    let mut span = EchelonSpan::new(m.params());
    for w in subspace {
        span.insert(w);
    }
    if span.dim() + 1 != m.dim() {
        return Err(AlgebraError::NotHyperplane(m.dim() - span.dim()));
    }
    for w in subspace {
        if !m.bracket_vec(v, w).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub enum WitnessOutcome {
    /// |1|-graded m: the prolongation is m tensor the symmetric algebra of
    /// its dual, hence infinite; no search is needed.
    OneGradedShortcut,
    Witness { v: SparseVec<usize>, hyperplane: Vec<SparseVec<usize>> },
    NoneFound,
}

/// Search the candidate pool (vectors of g_{-1}) for v with rank(ad_v) <= 1
/// and return a kernel hyperplane when found.
pub fn witness_search(m: &BasisSuperalgebra, pool: &[SparseVec<usize>]) -> WitnessOutcome {
    if m.depth() == 1 {
        return WitnessOutcome::OneGradedShortcut;
    }
    let n = m.dim();
    for v in pool {
        let mut mat = SparseMatrix::new(m.params(), n, n);
        for x in 0..n {
            let b = m.bracket_vec(v, &SparseVec::unit(x, m.params()));
            for (k, c) in b.iter() {
                mat.add_to(*k, x, c);
            }
        }
        let (rank, _) = mat.rank_with_locus();
        if rank > 1 {
            continue;
        }
        if rank == 1 {
            let (kernel, _) = mat.nullspace();
            let hyperplane: Vec<SparseVec<usize>> = kernel
                .into_iter()
                .map(|coeffs| {
                    SparseVec::from_pairs(
                        coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
                    )
                })
                .collect();
            return WitnessOutcome::Witness { v: v.clone(), hyperplane };
        }
        // rank 0: v is central in m; any coordinate hyperplane works.
        let hyperplane: Vec<SparseVec<usize>> = (1..n)
            .map(|i| SparseVec::unit(i, m.params()))
            .collect();
        return WitnessOutcome::Witness { v: v.clone(), hyperplane };
    }
    WitnessOutcome::NoneFound
}

/// Convenience pool: the basis vectors of g_{-1}.
pub fn basis_pool(m: &BasisSuperalgebra) -> Vec<SparseVec<usize>> {
    m.degree_indices(-1)
        .into_iter()
        .map(|i| SparseVec::unit(i, m.params()))
        .collect()
}

/// All coordinate hyperplanes (spans of all basis vectors but one).
pub fn coordinate_hyperplanes(m: &BasisSuperalgebra) -> Vec<Vec<SparseVec<usize>>> {
    (0..m.dim())
        .map(|skip| {
            (0..m.dim())
                .filter(|&i| i != skip)
                .map(|i| SparseVec::unit(i, m.params()))
                .collect()
        })
        .collect()
}

#[allow(dead_code)]
fn unused(_: &RationalFunction) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{grading_of, DiagramLabel, ParabolicSpec};
    use crate::scalars::context_a;

    #[test]
    fn raising_witnesses_for_the_mixed_parabolic() {
        let (_, s) = context_a();
        let rep = grading_of(&ParabolicSpec::new(DiagramLabel::I, &[2, 3]), &s);
        let m = rep.positive_part_as_negative();
        // v = X2 with V = <X1, X2, X3, xxy, xxx>
        let v = m.unit("X2");
        let hyperplane: Vec<_> = ["X1", "X2", "X3", "xxy", "xxx"]
            .iter()
            .map(|n| m.unit(n))
            .collect();
        assert!(verify_witness(&m, &v, &hyperplane).unwrap());
        // v = X3 with V = <X1, X2, X3, xyx, xxx>
        let v = m.unit("X3");
        let hyperplane: Vec<_> = ["X1", "X2", "X3", "xyx", "xxx"]
            .iter()
            .map(|n| m.unit(n))
            .collect();
        assert!(verify_witness(&m, &v, &hyperplane).unwrap());
        // search over the basis pool finds one
        match witness_search(&m, &basis_pool(&m)) {
            WitnessOutcome::Witness { v, hyperplane } => {
                assert!(verify_witness(&m, &v, &hyperplane).unwrap());
            }
            _ => panic!("expected a witness"),
        }
    }

    #[test]
    fn no_basis_witness_for_depth3_and_borel() {
        let (_, s) = context_a();
        for crosses in [vec![1usize, 2], vec![1, 2, 3]] {
            let rep = grading_of(&ParabolicSpec::new(DiagramLabel::I, &crosses), &s);
            let m = rep.negative_part();
            match witness_search(&m, &basis_pool(&m)) {
                WitnessOutcome::NoneFound => {}
                _ => panic!("unexpected witness for crosses {crosses:?}"),
            }
        }
    }

    #[test]
    fn borel_iv_has_no_witness_at_all() {
        let (_, s) = context_a();
        let rep = grading_of(&ParabolicSpec::new(DiagramLabel::IV, &[1, 2, 3]), &s);
        let m = rep.negative_part();
        for v in basis_pool(&m) {
            for hp in coordinate_hyperplanes(&m) {
                // every candidate fails: consistent with a finite prolongation
                assert!(!verify_witness(&m, &v, &hp).unwrap());
            }
        }
    }

    #[test]
    fn one_graded_shortcut() {
        let (_, s) = context_a();
        let rep = grading_of(&ParabolicSpec::new(DiagramLabel::I, &[2]), &s);
        let m = rep.negative_part();
        assert!(matches!(
            witness_search(&m, &basis_pool(&m)),
            WitnessOutcome::OneGradedShortcut
        ));
    }
}
