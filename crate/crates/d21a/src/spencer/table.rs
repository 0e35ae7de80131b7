//! Cohomology tables H^{i,j} for j <= 2 and the first-cohomology
//! prolongation criteria.

use super::SpencerComplex;
use crate::roots::GradingReport;
use crate::scalars::{ExceptionalLocus, SDim};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyEntry {
    pub weight: i64,
    pub order: usize,
    pub sdim: SDim,
}

#[derive(Serialize)]
pub struct CohomologyTable {
    pub parabolic: String,
    pub entries: Vec<CohomologyEntry>,
    #[serde(skip)]
    pub locus: ExceptionalLocus,
    pub locus_factors: Vec<String>,
}

impl CohomologyTable {
    pub fn entries_at(&self, order: usize) -> Vec<(i64, SDim)> {
        self.entries
            .iter()
            .filter(|e| e.order == order)
            .map(|e| (e.weight, e.sdim))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.parabolic);
        for j in 0..=self.entries.iter().map(|e| e.order).max().unwrap_or(0) {
            let parts: Vec<String> = self
                .entries
                .iter()
                .filter(|e| e.order == j)
                .map(|e| format!("C^{{{}|{}}}_{{{}}}", e.sdim.even, e.sdim.odd, e.weight))
                .collect();
            out.push_str(&format!(
                "  H^{j} = {}\n",
                if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
            ));
        }
        if !self.locus.is_empty() {
            out.push_str(&format!("  locus {:?}\n", self.locus));
        }
        out
    }
}

/// Weight-sliced cohomology through order `j_max`.
pub fn cohomology(report: &GradingReport, j_max: usize) -> CohomologyTable {
    let c = SpencerComplex::new(report);
    let mut locus = ExceptionalLocus::empty();
    let mut entries = Vec::new();
    // Candidate weights: wherever C^n is nonzero for some n <= j_max.
    let mut weights: std::collections::BTreeSet<i64> = std::collections::BTreeSet::new();
    for n in 0..=j_max {
        for (w, _) in c.basis(n).keys() {
            weights.insert(*w);
        }
    }
    for &w in &weights {
        for n in 0..=j_max {
            let (sdim, l) = c.cohomology_slice(n, w);
            locus.union(&l);
            if !sdim.is_zero() {
                entries.push(CohomologyEntry { weight: w, order: n, sdim });
            }
        }
    }
    entries.sort_by_key(|e| (e.order, e.weight));
    let locus_factors = locus
        .factors()
        .iter()
        .map(|f| format!("{}", f.integer_normalized()))
        .collect();
    CohomologyTable { parabolic: report.spec.name(), entries, locus, locus_factors }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ImpliedProlongation {
    /// H^1 in negative weights only: pr(m) = g.
    FullFromM,
    /// H^1 vanishes in positive weights: pr(m, g0) = g.
    FullFromMG0,
    /// H^1 vanishes above weight k > 0: pr(g_{<=k}) = g.
    FullFromGLeK(usize),
}

#[derive(Serialize)]
pub struct H1Consistency {
    pub parabolic: String,
    pub h1_weights: Vec<i64>,
    pub implied: ImpliedProlongation,
}

/// Read the first-cohomology weights off a computed table.
pub fn h1_consistency(table: &CohomologyTable) -> H1Consistency {
    let h1: Vec<i64> = table.entries_at(1).into_iter().map(|(w, _)| w).collect();
    let max = h1.iter().cloned().max().unwrap_or(i64::MIN);
    let implied = if max < 0 {
        ImpliedProlongation::FullFromM
    } else if max == 0 {
        ImpliedProlongation::FullFromMG0
    } else {
        ImpliedProlongation::FullFromGLeK(max as usize)
    };
    H1Consistency { parabolic: table.parabolic.clone(), h1_weights: h1, implied }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{grading_of, DiagramLabel, ParabolicSpec};
    use crate::scalars::{context_a, Parameters, Polynomial, SDim};

    fn table_for(label: DiagramLabel, crosses: &[usize]) -> CohomologyTable {
        let (_, s) = context_a();
        cohomology(&grading_of(&ParabolicSpec::new(label, crosses), &s), 2)
    }

    #[test]
    fn borel_iv_cohomology_row() {
        let t = table_for(DiagramLabel::IV, &[1, 2, 3]);
        assert_eq!(t.entries_at(0), vec![(-3, SDim::new(0, 1))]);
        assert_eq!(t.entries_at(1), vec![(-1, SDim::new(0, 3))]);
        assert_eq!(
            t.entries_at(2),
            vec![(0, SDim::new(1, 0)), (2, SDim::new(3, 0))]
        );
        let p = Parameters::new(&["a"]);
        let a = Polynomial::var(&p, "a");
        let a1 = a.add(&Polynomial::one(&p));
        assert!(t.locus.is_within(&[a, a1]));
        assert_eq!(h1_consistency(&t).implied, ImpliedProlongation::FullFromM);
    }

    #[test]
    fn contact_cohomology_row() {
        let t = table_for(DiagramLabel::I, &[1]);
        assert_eq!(t.entries_at(0), vec![(-2, SDim::new(1, 0))]);
        assert_eq!(t.entries_at(1), vec![(1, SDim::new(0, 4))]);
        assert_eq!(t.entries_at(2), vec![(2, SDim::new(9, 0))]);
        assert_eq!(
            h1_consistency(&t).implied,
            ImpliedProlongation::FullFromGLeK(1)
        );
    }
}
