//! Classification of the 28 parabolics, computed two independent ways: by
//! dimension signatures of the gradings and by orbit closure under cross-free
//! odd reflections plus labeled-diagram relabelings (the S3 action on the
//! parameter).

use super::grading::{grading_of, G0Descriptor, GradingReport};
use super::system::{
    identify_system, odd_reflection, pairing, permutations, standard_system, Root,
};
use super::{all_specs, ParabolicSpec};
use crate::scalars::{Parity, RationalFunction};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEdge {
    pub from: String,
    pub to: String,
    /// "reflection at node j" or "relabeling (tau)" with the parameter image.
    pub kind: String,
    pub parameter_image: String,
}

pub struct Classification {
    pub classes: Vec<Vec<ParabolicSpec>>,
    pub representatives: Vec<ParabolicSpec>,
    pub reports: BTreeMap<ParabolicSpec, GradingReport>,
    pub certificates: Vec<OrbitEdge>,
}

fn apply_perm_to_coords(tau: &[usize; 3], r: &Root) -> Root {
    // epsilon_i -> epsilon_{tau[i]}
    let mut c = [0i64; 3];
    for (i, &v) in r.coords.iter().enumerate() {
        c[tau[i]] = v;
    }
    Root::new(c)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Parameter image under the relabeling tau: the isomorphism permuting the
/// three sl2 factors carries Gamma(s) to Gamma(s_tau); renormalizing so the
/// middle slot is 1 gives a' = s_{tau^{-1}(3)} / s_{tau^{-1}(2)}.
fn parameter_image(tau: &[usize; 3], s: &[RationalFunction; 3]) -> RationalFunction {
    let inv = |k: usize| tau.iter().position(|&t| t == k).unwrap();
    s[inv(2)].div(&s[inv(1)]).expect("s2-slot nonzero")
}

pub fn classify_parabolics(s: &[RationalFunction; 3]) -> Result<Classification, String> {
    let specs = all_specs();
    let index: BTreeMap<ParabolicSpec, usize> =
        specs.iter().cloned().enumerate().map(|(i, sp)| (sp, i)).collect();
    let mut reports = BTreeMap::new();
    for sp in &specs {
        reports.insert(sp.clone(), grading_of(sp, s));
    }

    // Route (a): signature partition.
    let mut sig_groups: BTreeMap<String, Vec<ParabolicSpec>> = BTreeMap::new();
    for sp in &specs {
        let (nu, dims, g0) = reports[sp].signature();
        let key = format!("{nu}|{dims:?}|{g0:?}");
        sig_groups.entry(key).or_default().push(sp.clone());
    }

    // Route (b): orbit closure.
    let mut uf = UnionFind::new(specs.len());
    let mut certificates = Vec::new();
    let a_param = s[2].div(&s[1]).expect("s2 nonzero");
    for sp in &specs {
        let system = standard_system(sp.label, &a_param);
        // Cross-free odd reflections.
        for j in 0..3 {
            if sp.crosses.contains(&(j + 1)) {
                continue;
            }
            let alpha = system.roots[j];
            if alpha.parity() != Parity::Odd || !pairing(s, &alpha, &alpha).is_zero() {
                continue;
            }
            let (new_sys, perm) = odd_reflection(&system, j, s).map_err(|e| e.to_string())?;
            let crosses: Vec<usize> = sp.crosses.iter().map(|&c| perm[c - 1] + 1).collect();
            let target = ParabolicSpec::new(new_sys.label, &crosses);
            uf.union(index[sp], index[&target]);
            certificates.push(OrbitEdge {
                from: sp.name(),
                to: target.name(),
                kind: format!("odd reflection at node {}", j + 1),
                parameter_image: format!("{}", new_sys.parameter),
            });
        }
        // Diagram relabelings from the S3 action on the epsilon coordinates.
        for tau in permutations() {
            let new_roots: [Root; 3] =
                std::array::from_fn(|i| apply_perm_to_coords(&tau, &system.roots[i]));
            let Some((label, perm)) = identify_system(&new_roots) else {
                return Err(format!(
                    "relabeled system of {} does not match a standard diagram",
                    sp.name()
                ));
            };
            let crosses: Vec<usize> = sp.crosses.iter().map(|&c| perm[c - 1] + 1).collect();
            let target = ParabolicSpec::new(label, &crosses);
            if target != *sp {
                uf.union(index[sp], index[&target]);
                certificates.push(OrbitEdge {
                    from: sp.name(),
                    to: target.name(),
                    kind: format!("relabeling ({:?})", tau),
                    parameter_image: format!("{}", parameter_image(&tau, s)),
                });
            }
        }
    }
    let mut orbit_groups: BTreeMap<usize, Vec<ParabolicSpec>> = BTreeMap::new();
    for sp in &specs {
        let root = uf.find(index[sp]);
        orbit_groups.entry(root).or_default().push(sp.clone());
    }

    // The two partitions must coincide.
    let mut sig_classes: Vec<Vec<ParabolicSpec>> = sig_groups.into_values().collect();
    for c in sig_classes.iter_mut() {
        c.sort();
    }
    sig_classes.sort();
    let mut orbit_classes: Vec<Vec<ParabolicSpec>> = orbit_groups.into_values().collect();
    for c in orbit_classes.iter_mut() {
        c.sort();
    }
    orbit_classes.sort();
    if sig_classes != orbit_classes {
        return Err(format!(
            "signature partition and reflection-orbit partition disagree:\n{:?}\nvs\n{:?}",
            sig_classes, orbit_classes
        ));
    }

    // Deterministic representatives: smallest member, ordered by depth then name.
    let mut classes = sig_classes;
    classes.sort_by_key(|c| {
        let rep = &c[0];
        let r = &reports[rep];
        (r.nu, rep.name())
    });
    let representatives = classes.iter().map(|c| c[0].clone()).collect();
    Ok(Classification { classes, representatives, reports, certificates })
}

/// The six canonical class representatives (one per family), in a fixed
/// order used throughout: p1^I, p2^I, p12^I, p23^I, p123^I, p123^IV.
pub fn canonical_representatives() -> Vec<ParabolicSpec> {
    use super::DiagramLabel::{I, IV};
    vec![
        ParabolicSpec::new(I, &[1]),
        ParabolicSpec::new(I, &[2]),
        ParabolicSpec::new(I, &[1, 2]),
        ParabolicSpec::new(I, &[2, 3]),
        ParabolicSpec::new(I, &[1, 2, 3]),
        ParabolicSpec::new(IV, &[1, 2, 3]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::DiagramLabel::{self, I, II, III, IV};
    use crate::scalars::context_a;

    fn class_of(c: &Classification, sp: &ParabolicSpec) -> Vec<String> {
        c.classes
            .iter()
            .find(|cl| cl.contains(sp))
            .unwrap()
            .iter()
            .map(|p| p.name())
            .collect()
    }

    fn named(label: DiagramLabel, crosses: &[usize]) -> ParabolicSpec {
        ParabolicSpec::new(label, crosses)
    }

    #[test]
    fn six_classes_with_reference_members() {
        let (_, s) = context_a();
        let c = classify_parabolics(&s).unwrap();
        assert_eq!(c.classes.len(), 6);

        let mut contact = class_of(&c, &named(I, &[1]));
        contact.sort();
        let mut expect = vec![
            named(I, &[1]).name(),
            named(II, &[2]).name(),
            named(III, &[3]).name(),
        ];
        expect.sort();
        assert_eq!(contact, expect);

        let borel_iv = class_of(&c, &named(IV, &[1, 2, 3]));
        assert_eq!(borel_iv, vec![named(IV, &[1, 2, 3]).name()]);

        let one_graded = class_of(&c, &named(I, &[2]));
        assert_eq!(one_graded.len(), 9);

        let depth3 = class_of(&c, &named(I, &[1, 2]));
        assert_eq!(depth3.len(), 6);
        assert!(depth3.contains(&named(I, &[1, 3]).name()));
        assert!(depth3.contains(&named(II, &[1, 2]).name()));
        assert!(depth3.contains(&named(II, &[2, 3]).name()));
        assert!(depth3.contains(&named(III, &[1, 3]).name()));
        assert!(depth3.contains(&named(III, &[2, 3]).name()));

        let mixed = class_of(&c, &named(I, &[2, 3]));
        assert_eq!(mixed.len(), 6);
        assert!(mixed.contains(&named(II, &[1, 3]).name()));
        assert!(mixed.contains(&named(III, &[1, 2]).name()));
        assert!(mixed.contains(&named(IV, &[1, 2]).name()));
        assert!(mixed.contains(&named(IV, &[1, 3]).name()));
        assert!(mixed.contains(&named(IV, &[2, 3]).name()));

        let borels = class_of(&c, &named(I, &[1, 2, 3]));
        assert_eq!(borels.len(), 3);
        assert!(borels.contains(&named(II, &[1, 2, 3]).name()));
        assert!(borels.contains(&named(III, &[1, 2, 3]).name()));
    }
}
