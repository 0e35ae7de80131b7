//! Root decomposition of D(2,1;a), the four simple systems and their Cartan
//! matrices, even/odd reflections, enumeration of the 28 parabolics, grading
//! construction from crosses and the classification into six families.

pub mod classify;
pub mod grading;
pub mod system;

pub use classify::{classify_parabolics, Classification};
pub use grading::{grading_of, G0Descriptor, GradingReport};
pub use system::{
    all_diagram_labels, cartan_matrix, even_reflection, identify_system, odd_reflection,
    root_decomposition, standard_system, CartanMatrix, DiagramLabel, Root, SimpleSystem,
};

use serde::{Deserialize, Serialize};

/// A parabolic: a diagram label and a nonempty cross set.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub label: DiagramLabel,
    pub crosses: Vec<usize>, // 1-based node indices, sorted
}

impl ParabolicSpec {
    pub fn new(label: DiagramLabel, crosses: &[usize]) -> Self {
        let mut c: Vec<usize> = crosses.to_vec();
        c.sort_unstable();
        c.dedup();
        assert!(!c.is_empty() && c.iter().all(|&i| (1..=3).contains(&i)));
        ParabolicSpec { label, crosses: c }
    }

    pub fn name(&self) -> String {
        let digits: String = self.crosses.iter().map(|c| c.to_string()).collect();
        format!("p{}^{}", digits, self.label)
    }
}

/// All 28 = 4 x 7 proper parabolic specs.
pub fn all_specs() -> Vec<ParabolicSpec> {
    let mut out = Vec::new();
    for label in all_diagram_labels() {
        for mask in 1u8..8 {
            let crosses: Vec<usize> = (1..=3).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            out.push(ParabolicSpec::new(label, &crosses));
        }
    }
    out
}
