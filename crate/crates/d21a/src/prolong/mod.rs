//! The Tanaka-Weisfeiler prolongation engine.
//!
//! Nonnegative-degree elements are represented as degree-homogeneous linear
//! maps on the negative part m, with bracket-against-m given by evaluation.
//! Level j is the nullspace of the derivation constraint
//!     A[x,y] = [Ax, y] + (-1)^{|x||A|} [x, Ay]   for all x, y in m,
//! imposed on all homogeneous basis pairs. Seeded levels (prescribed g_0 or
//! g_{<=k}) embed via the adjoint action.

mod witness;

pub use witness::{verify_witness, witness_search, WitnessOutcome};

use crate::error::AlgebraError;
use crate::roots::GradingReport;
use crate::scalars::{
    EchelonSpan, ExceptionalLocus, Parameters, Parity, RationalFunction, SDim, SparseMatrix,
    SparseVec,
};
use crate::liesuper::BasisSuperalgebra;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// pr(m): maximal prolongation of the negative part alone.
    M,
    /// pr(m, g0): level zero prescribed to be the grading's g0.
    MG0,
    /// pr(g_{<=k}): levels 0..=k prescribed from the grading.
    GLeK(usize),
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::M => write!(f, "m"),
            Mode::MG0 => write!(f, "m-g0"),
            Mode::GLeK(k) => write!(f, "g<={k}"),
        }
    }
}

/// A coordinate of the prolongation carrier: either a basis element of m or
/// a basis map of an already computed nonnegative level.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Target {
    M(usize),
    Level(usize, usize),
}

/// A homogeneous degree-j map m -> (m + lower levels).
#[derive(Clone, Debug)]
pub struct MapElement {
    pub parity: Parity,
    /// entries[x] = value on the m-basis element x.
    pub entries: BTreeMap<usize, SparseVec<Target>>,
}

impl MapElement {
    fn is_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }
}

#[derive(Clone)]
pub struct GradedMapSpace {
    pub degree: usize,
    pub basis: Vec<MapElement>,
}

impl GradedMapSpace {
    pub fn sdim(&self) -> SDim {
        let even = self.basis.iter().filter(|b| b.parity == Parity::Even).count();
        SDim::new(even, self.basis.len() - even)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Termination {
    TerminatedAt(usize),
    CutoffReached(usize),
}

#[derive(Serialize)]
pub struct ProlongationReport {
    pub mode: String,
    pub seeded_through: Option<usize>,
    pub levels: Vec<(usize, SDim)>,
    pub termination: Termination,
    #[serde(skip)]
    pub locus: ExceptionalLocus,
    pub locus_factors: Vec<String>,
}

impl ProlongationReport {
    pub fn level_sdim(&self, j: usize) -> SDim {
        self.levels
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, d)| *d)
            .unwrap_or_default()
    }

    pub fn render(&self) -> String {
        let mut out = format!("mode {}  ", self.mode);
        for (j, d) in &self.levels {
            out.push_str(&format!("pr_{j} = {d}  "));
        }
        match self.termination {
            Termination::TerminatedAt(j) => out.push_str(&format!("(zero at level {j})")),
            Termination::CutoffReached(c) => out.push_str(&format!("(cutoff {c} reached)")),
        }
        if !self.locus.is_empty() {
            out.push_str(&format!("  locus {:?}", self.locus));
        }
        out
    }
}

pub struct ProlongationState {
    pub m: BasisSuperalgebra,
    nu: i64,
    levels: Vec<GradedMapSpace>,
    params: Parameters,
    locus: ExceptionalLocus,
    seeded_through: Option<usize>,
}

impl ProlongationState {
    pub fn levels(&self) -> &[GradedMapSpace] {
        &self.levels
    }

    fn target_parity(&self, t: &Target) -> Parity {
        match t {
            Target::M(i) => self.m.parity(*i),
            Target::Level(j, i) => self.levels[*j].basis[*i].parity,
        }
    }

    /// Basis of the degree-d carrier V_d for d < 0 (indices into m).
    fn m_basis_at(&self, d: i64) -> Vec<usize> {
        self.m.degree_indices(d)
    }

    /// Evaluate a level-j basis map on an m-basis element.
    fn eval_basis(&self, j: usize, idx: usize, x: usize) -> SparseVec<Target> {
        self.levels[j].basis[idx]
            .entries
            .get(&x)
            .cloned()
            .unwrap_or_default()
    }

    /// Bracket of a target vector (in V_d, d arbitrary) with an m element:
    /// [w, x] for w in V_d. For d < 0 this is the m-bracket; for d >= 0 it is
    /// evaluation w(x).
    fn bracket_target_with_m(&self, w: &Target, x: usize) -> SparseVec<Target> {
        match w {
            Target::M(i) => {
                let b = self.m.bracket_basis(*i, x);
                SparseVec::from_pairs(b.iter().map(|(k, c)| (Target::M(*k), c.clone())))
            }
            Target::Level(j, i) => self.eval_basis(*j, *i, x),
        }
    }

    /// Verify that g_{-1} bracket-generates m.
    fn check_fundamental(&self) -> Result<(), AlgebraError> {
        let mut span: EchelonSpan<usize> = EchelonSpan::new(&self.params);
        let mut frontier: Vec<SparseVec<usize>> = self
            .m_basis_at(-1)
            .into_iter()
            .map(|i| SparseVec::unit(i, &self.params))
            .collect();
        for v in &frontier {
            span.insert(v);
        }
        let g1: Vec<SparseVec<usize>> = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for w in &g1 {
                    let b = self.m.bracket_vec(w, v);
                    if !b.is_zero() && span.insert(&b) {
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        if span.dim() == self.m.dim() {
            Ok(())
        } else {
            Err(AlgebraError::NotFundamental)
        }
    }

    /// Solve the derivation constraints at level j and return the nullspace
    /// basis, split by parity.
    fn solve_level(&mut self, j: usize) -> Vec<MapElement> {
        let nu = self.nu;
        // Unknown layout per parity.
        let mut out = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            // unknowns: (x, target w in V_{j-t}) with |w| = parity + |x|
            let mut unknowns: Vec<(usize, Target)> = Vec::new();
            for t in 1..=nu {
                let d = j as i64 - t;
                let targets: Vec<Target> = if d < 0 {
                    if -d > nu {
                        vec![]
                    } else {
                        self.m_basis_at(d).into_iter().map(Target::M).collect()
                    }
                } else {
                    (0..self.levels[d as usize].basis.len())
                        .map(|i| Target::Level(d as usize, i))
                        .collect()
                };
                for x in self.m_basis_at(-t) {
                    let px = self.m.parity(x);
                    for w in &targets {
                        if self.target_parity(w) == parity.add(px) {
                            unknowns.push((x, *w));
                        }
                    }
                }
            }
            if unknowns.is_empty() {
                continue;
            }
            let uidx: BTreeMap<(usize, Target), usize> =
                unknowns.iter().cloned().enumerate().map(|(n, u)| (u, n)).collect();

            // Rows: (ordered pair (x,y), output coordinate) -> running index.
            let mut rows: Vec<BTreeMap<usize, RationalFunction>> = Vec::new();
            let mut row_of: BTreeMap<(usize, usize, Target), usize> = BTreeMap::new();
            let add = |rows: &mut Vec<BTreeMap<usize, RationalFunction>>,
                           row_of: &mut BTreeMap<(usize, usize, Target), usize>,
                           key: (usize, usize, Target),
                           col: usize,
                           c: &RationalFunction| {
                if c.is_zero() {
                    return;
                }
                let r = *row_of.entry(key).or_insert_with(|| {
                    rows.push(BTreeMap::new());
                    rows.len() - 1
                });
                let e = rows[r]
                    .entry(col)
                    .or_insert_with(|| RationalFunction::zero(&self.params));
                *e = e.add(c);
            };

            let m_dim = self.m.dim();
            for x in 0..m_dim {
                let tx = -self.m.degree(x).unwrap();
                let px = self.m.parity(x);
                for y in 0..m_dim {
                    let ty = -self.m.degree(y).unwrap();
                    let py = self.m.parity(y);
                    // LHS: A([x,y])
                    for (z, c) in self.m.bracket_basis(x, y).iter() {
                        let dz = j as i64 - tx - ty;
                        // A(z): unknowns (z, w) for w in V_dz
                        let wlist: Vec<Target> = if dz < 0 {
                            self.m_basis_at(dz).into_iter().map(Target::M).collect()
                        } else {
                            (0..self.levels[dz as usize].basis.len())
                                .map(|i| Target::Level(dz as usize, i))
                                .collect()
                        };
                        for w in wlist {
                            if let Some(&col) = uidx.get(&(*z, w)) {
                                add(&mut rows, &mut row_of, (x, y, w), col, c);
                            }
                        }
                    }
                    // RHS1: [A(x), y] with A(x) = sum_w u_{x,w} w
                    let dx = j as i64 - tx;
                    let wlist_x: Vec<Target> = if dx < 0 {
                        self.m_basis_at(dx).into_iter().map(Target::M).collect()
                    } else {
                        (0..self.levels[dx as usize].basis.len())
                            .map(|i| Target::Level(dx as usize, i))
                            .collect()
                    };
                    for w in wlist_x {
                        let Some(&col) = uidx.get(&(x, w)) else { continue };
                        for (tgt, c) in self.bracket_target_with_m(&w, y).iter() {
                            add(&mut rows, &mut row_of, (x, y, *tgt), col, &c.neg());
                        }
                    }
                    // RHS2: (-1)^{|x||A|} [x, A(y)]
                    let dy = j as i64 - ty;
                    let sign_xa = if px == Parity::Odd && parity == Parity::Odd { -1 } else { 1 };
                    if dy < 0 {
                        for w in self.m_basis_at(dy) {
                            let Some(&col) = uidx.get(&(y, Target::M(w))) else { continue };
                            let b = self.m.bracket_basis(x, w);
                            for (k, c) in b.iter() {
                                add(
                                    &mut rows,
                                    &mut row_of,
                                    (x, y, Target::M(*k)),
                                    col,
                                    &c.scale_int(-sign_xa),
                                );
                            }
                        }
                    } else {
                        // [x, B] = -(-1)^{|x||B|} B(x), |B| = |A| + |y|:
                        // total factor -(-1)^{|x||y|}, independent of |A|.
                        let sgn = if px == Parity::Odd && py == Parity::Odd { 1 } else { -1 };
                        for i in 0..self.levels[dy as usize].basis.len() {
                            let w = Target::Level(dy as usize, i);
                            let Some(&col) = uidx.get(&(y, w)) else { continue };
                            for (tgt, c) in self.eval_basis(dy as usize, i, x).iter() {
                                add(
                                    &mut rows,
                                    &mut row_of,
                                    (x, y, *tgt),
                                    col,
                                    &c.scale_int(-sgn),
                                );
                            }
                        }
                    }
                }
            }

            let mut mat = SparseMatrix::new(&self.params, rows.len(), unknowns.len());
            for (r, row) in rows.iter().enumerate() {
                for (c, v) in row {
                    mat.set(r, *c, v.clone());
                }
            }
            let (ns, locus) = mat.nullspace();
            self.locus.union(&locus);
            for sol in ns {
                let mut entries: BTreeMap<usize, SparseVec<Target>> = BTreeMap::new();
                for (n, (x, w)) in unknowns.iter().enumerate() {
                    if sol[n].is_zero() {
                        continue;
                    }
                    entries
                        .entry(*x)
                        .or_default()
                        .add_entry(*w, &sol[n]);
                }
                let el = MapElement { parity, entries };
                if !el.is_zero() {
                    out.push(el);
                }
            }
        }
        out
    }

    /// Embed the grading's level-s component via the adjoint action;
    /// earlier levels must already be present.
    fn embed_seed(&mut self, report: &GradingReport, s: usize) -> Result<(), AlgebraError> {
        let g = report.algebra();
        let idx = g.degree_indices(s as i64);
        // map from Gamma indices to m indices (negative part) by name
        let mut basis = Vec::new();
        for &u in &idx {
            let mut entries: BTreeMap<usize, SparseVec<Target>> = BTreeMap::new();
            for x in 0..self.m.dim() {
                let gx = g
                    .index_of(self.m.name(x))
                    .expect("m basis names exist in the graded algebra");
                let b = g.bracket_basis(u, gx);
                let mut val: SparseVec<Target> = SparseVec::new();
                for (k, c) in b.iter() {
                    let dk = g.degree(*k).unwrap();
                    if dk < 0 {
                        let mk = self
                            .m
                            .index_of(g.name(*k))
                            .expect("negative element is in m");
                        val.add_entry(Target::M(mk), c);
                    } else {
                        let level = dk as usize;
                        let pos = g
                            .degree_indices(dk)
                            .iter()
                            .position(|&t| t == *k)
                            .unwrap();
                        val.add_entry(Target::Level(level, pos), c);
                    }
                }
                if !val.is_zero() {
                    entries.insert(x, val);
                }
            }
            basis.push(MapElement { parity: g.parity(u), entries });
        }
        // Injectivity of the embedding (transitivity of the grading).
        let mut span: EchelonSpan<(usize, Target)> = EchelonSpan::new(&self.params);
        let mut count = 0usize;
        for b in &basis {
            let flat = SparseVec::from_pairs(
                b.entries
                    .iter()
                    .flat_map(|(x, v)| v.iter().map(move |(t, c)| ((*x, *t), c.clone()))),
            );
            if span.insert(&flat) {
                count += 1;
            }
        }
        if count != basis.len() {
            return Err(AlgebraError::SeedNotInjective);
        }
        self.levels.push(GradedMapSpace { degree: s, basis });
        Ok(())
    }

    /// Effectivity: restriction to g_{-1} is injective on the level.
    fn check_effectivity(&self, j: usize) -> bool {
        let g1 = self.m_basis_at(-1);
        let mut span: EchelonSpan<(usize, Target)> = EchelonSpan::new(&self.params);
        let mut count = 0usize;
        for b in &self.levels[j].basis {
            let flat = SparseVec::from_pairs(g1.iter().flat_map(|x| {
                b.entries
                    .get(x)
                    .map(|v| v.iter().map(|(t, c)| ((*x, *t), c.clone())).collect::<Vec<_>>())
                    .unwrap_or_default()
            }));
            if span.insert(&flat) {
                count += 1;
            }
        }
        count == self.levels[j].basis.len()
    }
}

/// Compute grade-preserving super-derivations of m (level zero of mode M).
pub fn der0(report_m: &BasisSuperalgebra) -> Result<GradedMapSpace, AlgebraError> {
    let mut st = new_state(report_m)?;
    let basis = st.solve_level(0);
    Ok(GradedMapSpace { degree: 0, basis })
}

fn new_state(m: &BasisSuperalgebra) -> Result<ProlongationState, AlgebraError> {
    let params = m.params().clone();
    let nu = m.depth();
    assert!(nu >= 1, "m must be negatively graded");
    let st = ProlongationState {
        m: m.clone(),
        nu,
        levels: Vec::new(),
        params,
        locus: ExceptionalLocus::empty(),
        seeded_through: None,
    };
    st.check_fundamental()?;
    Ok(st)
}

/// Run the prolongation for a parabolic grading in the given mode, stopping
/// at the first zero level or at the cutoff.
pub fn prolong(
    report: &GradingReport,
    mode: Mode,
    cutoff: usize,
) -> Result<(ProlongationReport, ProlongationState), AlgebraError> {
    let m = report.negative_part();
    let mut st = new_state(&m)?;
    let start;
    match mode {
        Mode::M => {
            start = 0;
        }
        Mode::MG0 => {
            st.embed_seed(report, 0)?;
            st.seeded_through = Some(0);
            start = 1;
        }
        Mode::GLeK(k) => {
            for s in 0..=k {
                st.embed_seed(report, s)?;
            }
            st.seeded_through = Some(k);
            start = k + 1;
        }
    }
    let mut levels = Vec::new();
    let mut termination = Termination::CutoffReached(cutoff);
    for j in start..=cutoff {
        let basis = st.solve_level(j);
        let space = GradedMapSpace { degree: j, basis };
        let sdim = space.sdim();
        st.levels.push(space);
        assert!(st.check_effectivity(j), "level {j} fails effectivity");
        levels.push((j, sdim));
        if sdim.is_zero() {
            termination = Termination::TerminatedAt(j);
            break;
        }
    }
    let locus = st.locus.clone();
    let locus_factors = locus
        .factors()
        .iter()
        .map(|f| format!("{}", f.integer_normalized()))
        .collect();
    Ok((
        ProlongationReport {
            mode: format!("{mode}"),
            seeded_through: st.seeded_through,
            levels,
            termination,
            locus,
            locus_factors,
        },
        st,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{grading_of, DiagramLabel, ParabolicSpec};
    use crate::scalars::context_a;

    fn report_for(label: DiagramLabel, crosses: &[usize]) -> GradingReport {
        let (_, s) = context_a();
        grading_of(&ParabolicSpec::new(label, crosses), &s)
    }

    #[test]
    fn der0_of_borel_iv_is_three_dimensional() {
        let rep = report_for(DiagramLabel::IV, &[1, 2, 3]);
        let d = der0(&rep.negative_part()).unwrap();
        assert_eq!(d.sdim(), SDim::new(3, 0));
    }

    #[test]
    fn der0_of_contact_grading_is_conformal_symplectic() {
        let rep = report_for(DiagramLabel::I, &[1]);
        let d = der0(&rep.negative_part()).unwrap();
        assert_eq!(d.sdim(), SDim::new(7, 0));
    }

    #[test]
    fn der0_of_abelian_m_is_full_gl() {
        use crate::liesuper::{BasisElement, BasisSuperalgebra};
        let p = crate::scalars::Parameters::none();
        let basis = vec![
            BasisElement::graded("u", Parity::Even, -1),
            BasisElement::graded("v", Parity::Even, -1),
        ];
        let m = BasisSuperalgebra::new(&p, basis);
        let d = der0(&m).unwrap();
        assert_eq!(d.sdim(), SDim::new(4, 0));
    }

    #[test]
    fn borel_iv_full_prolongation_recovers_gamma() {
        let rep = report_for(DiagramLabel::IV, &[1, 2, 3]);
        let (pr, _) = prolong(&rep, Mode::M, 6).unwrap();
        assert_eq!(pr.level_sdim(0), SDim::new(3, 0));
        assert_eq!(pr.level_sdim(1), SDim::new(0, 3));
        assert_eq!(pr.level_sdim(2), SDim::new(3, 0));
        assert_eq!(pr.level_sdim(3), SDim::new(0, 1));
        assert_eq!(pr.level_sdim(4), SDim::new(0, 0));
        assert_eq!(pr.termination, Termination::TerminatedAt(4));
    }

    #[test]
    fn mixed_case_restricted_prolongation() {
        let rep = report_for(DiagramLabel::I, &[2, 3]);
        let (pr, _) = prolong(&rep, Mode::MG0, 6).unwrap();
        assert_eq!(pr.level_sdim(1), SDim::new(2, 2));
        assert_eq!(pr.level_sdim(2), SDim::new(1, 1));
        assert_eq!(pr.level_sdim(3), SDim::new(0, 0));
    }

    #[test]
    fn one_graded_restricted_prolongation() {
        let rep = report_for(DiagramLabel::I, &[2]);
        let (pr, _) = prolong(&rep, Mode::MG0, 6).unwrap();
        assert_eq!(pr.level_sdim(1), SDim::new(2, 2));
        assert_eq!(pr.termination, Termination::TerminatedAt(2));
    }

    #[test]
    fn contact_grading_first_order_reduction() {
        let rep = report_for(DiagramLabel::I, &[1]);
        let (pr, _) = prolong(&rep, Mode::GLeK(1), 6).unwrap();
        assert_eq!(pr.level_sdim(2), SDim::new(1, 0));
        assert_eq!(pr.level_sdim(3), SDim::new(0, 0));
        assert_eq!(pr.termination, Termination::TerminatedAt(3));
    }

    #[test]
    fn depth3_first_order_reduction() {
        let rep = report_for(DiagramLabel::I, &[1, 2]);
        let (pr, _) = prolong(&rep, Mode::GLeK(1), 6).unwrap();
        assert_eq!(pr.level_sdim(2), SDim::new(0, 2));
        assert_eq!(pr.level_sdim(3), SDim::new(1, 0));
        assert_eq!(pr.termination, Termination::TerminatedAt(4));
    }

    #[test]
    fn borel_i_first_order_reduction() {
        let rep = report_for(DiagramLabel::I, &[1, 2, 3]);
        let (pr, _) = prolong(&rep, Mode::GLeK(1), 6).unwrap();
        assert_eq!(pr.level_sdim(2), SDim::new(0, 2));
        assert_eq!(pr.level_sdim(3), SDim::new(0, 1));
        assert_eq!(pr.level_sdim(4), SDim::new(1, 0));
        assert_eq!(pr.termination, Termination::TerminatedAt(5));
    }

    #[test]
    fn contact_unrestricted_growth_toward_contact_algebra() {
        let rep = report_for(DiagramLabel::I, &[1]);
        let (pr, _) = prolong(&rep, Mode::MG0, 2).unwrap();
        assert_eq!(pr.level_sdim(1), SDim::new(0, 8));
        assert_eq!(pr.level_sdim(2), SDim::new(8, 0));
        assert_eq!(pr.termination, Termination::CutoffReached(2));
    }

    #[test]
    fn finite_cases_mirror_their_gradings() {
        // pr_j matches g_j of the grading for 1 <= j <= nu, and pr_{nu+1} = 0.
        let cases: [(DiagramLabel, &[usize], Mode); 6] = [
            (DiagramLabel::IV, &[1, 2, 3], Mode::M),
            (DiagramLabel::I, &[2], Mode::MG0),
            (DiagramLabel::I, &[2, 3], Mode::MG0),
            (DiagramLabel::I, &[1], Mode::GLeK(1)),
            (DiagramLabel::I, &[1, 2], Mode::GLeK(1)),
            (DiagramLabel::I, &[1, 2, 3], Mode::GLeK(1)),
        ];
        for (label, crosses, mode) in cases {
            let rep = report_for(label, crosses);
            let (pr, _) = prolong(&rep, mode, (rep.nu + 1) as usize).unwrap();
            let start = match mode {
                Mode::M => 0,
                Mode::MG0 => 1,
                Mode::GLeK(k) => k + 1,
            };
            for j in start..=(rep.nu as usize) {
                assert_eq!(
                    pr.level_sdim(j),
                    rep.level(j as i64).sdim,
                    "{:?} {:?} level {}",
                    label,
                    crosses,
                    j
                );
            }
            assert_eq!(pr.termination, Termination::TerminatedAt(rep.nu as usize + 1));
        }
    }

    #[test]
    fn rank_results_agree_with_random_specializations() {
        use crate::scalars::big;
        let rep = report_for(DiagramLabel::IV, &[1, 2, 3]);
        let (pr, _) = prolong(&rep, Mode::M, 5).unwrap();
        // replay at a in {2, 3, 5}: outside {0,-1} and the reported locus
        for aval in [2i64, 3, 5] {
            let pt = [big(aval)];
            assert!(pr.locus.avoided_by(&pt));
            let p0 = Parameters::none();
            let a = RationalFunction::constant_from(&p0, big(aval));
            let one = RationalFunction::one(&p0);
            let s = [one.neg().sub(&a), one, a];
            let spec = crate::roots::ParabolicSpec::new(DiagramLabel::IV, &[1, 2, 3]);
            let rep2 = grading_of(&spec, &s);
            let (pr2, _) = prolong(&rep2, Mode::M, 5).unwrap();
            assert_eq!(
                pr.levels.iter().map(|(j, d)| (*j, *d)).collect::<Vec<_>>(),
                pr2.levels.iter().map(|(j, d)| (*j, *d)).collect::<Vec<_>>()
            );
        }
    }
}
