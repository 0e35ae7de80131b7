//! Gradings induced by a cross set: the grading element Z = sum_{i in chi} Z_i
//! with alpha_i(Z_j) = delta_ij assigns to a root its total coefficient over
//! the crossed simple roots.

use super::system::{root_decomposition, standard_roots, Root};
use super::ParabolicSpec;
use crate::liesuper::{build_gamma, BasisElement, BasisSuperalgebra};
use crate::scalars::{RationalFunction, SDim};
use serde::Serialize;

/// Integer expansion of a root in a simple basis (Cramer's rule; the
/// expansion of a root of the system in a simple system is integral).
pub fn expand_in_basis(simple: &[Root; 3], w: &Root) -> [i64; 3] {
    let m = |r: usize, c: usize| simple[c].coords[r]; // columns are the simple roots
    let det3 = |a: [[i64; 3]; 3]| -> i64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let base = [[m(0, 0), m(0, 1), m(0, 2)], [m(1, 0), m(1, 1), m(1, 2)], [m(2, 0), m(2, 1), m(2, 2)]];
    let d = det3(base);
    assert!(d != 0, "simple roots form a basis");
    let mut out = [0i64; 3];
    for i in 0..3 {
        let mut rep = base;
        for r in 0..3 {
            rep[r][i] = w.coords[r];
        }
        let di = det3(rep);
        assert_eq!(di % d, 0, "non-integral expansion");
        out[i] = di / d;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G0Descriptor {
    pub sdim: SDim,
    pub center: SDim,
    pub derived: SDim,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelInfo {
    pub k: i64,
    pub sdim: SDim,
    pub names: Vec<String>,
}

#[derive(Clone)]
pub struct GradingReport {
    pub spec: ParabolicSpec,
    pub nu: i64,
    pub levels: Vec<LevelInfo>,
    pub g0: G0Descriptor,
    algebra: BasisSuperalgebra,
}

impl GradingReport {
    pub fn algebra(&self) -> &BasisSuperalgebra {
        &self.algebra
    }

    pub fn level(&self, k: i64) -> &LevelInfo {
        self.levels
            .iter()
            .find(|l| l.k == k)
            .expect("level within -nu..=nu")
    }

    /// Dimension signature used for the classification by invariants.
    pub fn signature(&self) -> (i64, Vec<(usize, usize)>, G0Descriptor) {
        let dims = self
            .levels
            .iter()
            .filter(|l| l.k <= 0)
            .map(|l| (l.sdim.even, l.sdim.odd))
            .collect();
        (self.nu, dims, self.g0.clone())
    }

    /// The nilpotent negative part, with its grading.
    pub fn negative_part(&self) -> BasisSuperalgebra {
        let idx: Vec<usize> = (0..self.algebra.dim())
            .filter(|&i| self.algebra.degree(i).unwrap() < 0)
            .collect();
        self.algebra.restrict(&idx).expect("negative part is a subalgebra")
    }

    /// The positive part viewed as a negatively graded algebra (degree k
    /// becomes -k); isomorphic to the negative part and used by witness
    /// checks stated in terms of raising vectors.
    pub fn positive_part_as_negative(&self) -> BasisSuperalgebra {
        let idx: Vec<usize> = (0..self.algebra.dim())
            .filter(|&i| self.algebra.degree(i).unwrap() > 0)
            .collect();
        let sub = self.algebra.restrict(&idx).expect("positive part is a subalgebra");
        let basis: Vec<BasisElement> = sub
            .basis()
            .iter()
            .map(|b| BasisElement::graded(&b.name, b.parity, -b.degree.unwrap()))
            .collect();
        let mut flipped = BasisSuperalgebra::new(sub.params(), basis);
        for ((i, j), terms) in sub.stored_brackets() {
            if i > j {
                continue;
            }
            flipped.set_bracket(*i, *j, terms.clone());
        }
        flipped
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}  nu = {}  g0: sdim {}, center {}, derived {}\n",
            self.spec.name(),
            self.nu,
            self.g0.sdim,
            self.g0.center,
            self.g0.derived
        ));
        for l in &self.levels {
            out.push_str(&format!("  g_{:>2}: {}  {{{}}}\n", l.k, l.sdim, l.names.join(", ")));
        }
        out
    }
}

/// Construct the graded algebra for a parabolic spec over Gamma(s1,s2,s3).
pub fn grading_of(spec: &ParabolicSpec, s: &[RationalFunction; 3]) -> GradingReport {
    let g = build_gamma(s);
    let simple = standard_roots(spec.label);
    let dec = root_decomposition(&g, ["H1", "H2", "H3"]).expect("diagonal Cartan");
    let mut degrees = vec![0i64; g.dim()];
    for (i, w) in &dec {
        if let Some(w) = w {
            let n = expand_in_basis(&simple, w);
            degrees[*i] = spec.crosses.iter().map(|&c| n[c - 1]).sum();
        }
    }
    let basis: Vec<BasisElement> = g
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| BasisElement::graded(&b.name, b.parity, degrees[i]))
        .collect();
    let mut graded = BasisSuperalgebra::new(g.params(), basis);
    for ((i, j), terms) in g.stored_brackets() {
        if i > j {
            continue;
        }
        graded.set_bracket(*i, *j, terms.clone());
    }
    let nu = graded.depth();
    let mut levels = Vec::new();
    for k in -nu..=nu {
        let idx = graded.degree_indices(k);
        let names = idx.iter().map(|&i| graded.name(i).to_string()).collect();
        levels.push(LevelInfo { k, sdim: graded.sdim_at_degree(k), names });
    }
    let zero_idx = graded.degree_indices(0);
    let g0alg = graded.restrict(&zero_idx).expect("g0 is a subalgebra");
    let g0 = G0Descriptor {
        sdim: g0alg.sdim(),
        center: g0alg.center_sdim(),
        derived: g0alg.derived_sdim(),
    };
    GradingReport { spec: spec.clone(), nu, levels, g0, algebra: graded }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::DiagramLabel;
    use crate::scalars::context_a;

    fn dims_of(spec: &ParabolicSpec) -> (i64, Vec<SDim>) {
        let (_, s) = context_a();
        let rep = grading_of(spec, &s);
        let dims = (0..=rep.nu).map(|k| rep.level(-k).sdim).collect();
        (rep.nu, dims)
    }

    #[test]
    fn contact_grading_dimensions() {
        // p1^I: depth 2, dims (7|0, 0|4, 1|0)
        let (nu, dims) = dims_of(&ParabolicSpec::new(DiagramLabel::I, &[1]));
        assert_eq!(nu, 2);
        assert_eq!(dims, vec![SDim::new(7, 0), SDim::new(0, 4), SDim::new(1, 0)]);
    }

    #[test]
    fn borel_iv_grading_dimensions() {
        let (nu, dims) = dims_of(&ParabolicSpec::new(DiagramLabel::IV, &[1, 2, 3]));
        assert_eq!(nu, 3);
        assert_eq!(
            dims,
            vec![SDim::new(3, 0), SDim::new(0, 3), SDim::new(3, 0), SDim::new(0, 1)]
        );
    }

    #[test]
    fn mixed_grading_dimensions() {
        let (nu, dims) = dims_of(&ParabolicSpec::new(DiagramLabel::I, &[2, 3]));
        assert_eq!(nu, 2);
        assert_eq!(dims, vec![SDim::new(3, 2), SDim::new(2, 2), SDim::new(1, 1)]);
    }

    #[test]
    fn totals_and_mirror_symmetry() {
        let (_, s) = context_a();
        for spec in crate::roots::all_specs() {
            let rep = grading_of(&spec, &s);
            let mut total = SDim::new(0, 0);
            for l in &rep.levels {
                total = total.add(&l.sdim);
                let mirror = rep.level(-l.k).sdim;
                assert_eq!(l.sdim, mirror, "{} level {}", spec.name(), l.k);
            }
            assert_eq!(total, SDim::new(9, 8), "{}", spec.name());
        }
    }

    #[test]
    fn g0_descriptor_of_gl21_family() {
        let (_, s) = context_a();
        let rep = grading_of(&ParabolicSpec::new(DiagramLabel::I, &[2]), &s);
        assert_eq!(rep.g0.sdim, SDim::new(5, 4));
        assert_eq!(rep.g0.center, SDim::new(1, 0));
        assert_eq!(rep.g0.derived, SDim::new(4, 4));
    }
}
