//! The three contact models carrying the realizations: the odd-coordinate
//! Darboux model on C^{1|4}, the split Darboux model on C^{1|4} with paired
//! odd coordinates, and the odd contact form on C^{3|4}.

use super::poly::{coord_system, Coord, CoordSystem, SuperPolynomial, SuperVectorField};
use crate::scalars::{Parameters, Parity, RationalFunction};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    /// sigma = dx + sum xi_i d xi_i on (x | xi_1..xi_4).
    M14,
    /// sigma = dy + nu_1 d theta_1 + nu_2 d theta_2 on (y | theta, nu).
    M24,
    /// sigma = d psi - sum (d xi_i) psi_i on (psi_1..psi_3 | xi_1..xi_3, psi).
    M34Diamond,
}

/// Weight assignments; the split model carries two gradings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Weighting {
    /// M14: w(xi) = 1, w(x) = 2, field shift -2.
    Contact14,
    /// M24 depth-3: w(theta) = 1, w(nu) = 2, w(y) = 3, shift -3.
    Contact24,
    /// M24 regraded to depth 4: w(theta1)=1, w(theta2)=w(nu2)=2, w(nu1)=3,
    /// w(y)=4, shift -4.
    Flag24,
    /// M34Diamond: w(xi)=1, w(psi_i)=2, w(psi)=3, shift -3.
    Odd33,
}

pub struct ContactModel {
    pub model: Model,
    pub coords: CoordSystem,
}

impl ContactModel {
    pub fn new(model: Model, params: &Parameters) -> Self {
        let coords = match model {
            Model::M14 => coord_system(params, &["x"], &["xi1", "xi2", "xi3", "xi4"]),
            Model::M24 => coord_system(params, &["y"], &["theta1", "theta2", "nu1", "nu2"]),
            Model::M34Diamond => coord_system(
                params,
                &["psi1", "psi2", "psi3"],
                &["xi1", "xi2", "xi3", "psi"],
            ),
        };
        ContactModel { model, coords }
    }

    pub fn params(&self) -> &Parameters {
        &self.coords.params
    }

    pub fn var(&self, name: &str) -> SuperPolynomial {
        SuperPolynomial::var(&self.coords, name)
    }

    pub fn one(&self) -> SuperPolynomial {
        SuperPolynomial::one(&self.coords)
    }

    /// The contact distribution operators D_i of the model.
    fn d_ops(&self) -> Vec<(Coord, Coord)> {
        // pairs (odd coordinate, companion direction): D = d_odd + companion * d_main
        match self.model {
            Model::M14 => (0..4).map(|i| (Coord::Odd(i), Coord::Odd(i))).collect(),
            Model::M24 => vec![(Coord::Odd(0), Coord::Odd(2)), (Coord::Odd(1), Coord::Odd(3))],
            Model::M34Diamond => (0..3).map(|i| (Coord::Odd(i), Coord::Even(i))).collect(),
        }
    }

    /// D_i f for the i-th distribution operator.
    pub fn d_op(&self, i: usize, f: &SuperPolynomial) -> SuperPolynomial {
        let (odd, companion) = self.d_ops()[i];
        match self.model {
            Model::M14 => {
                // D_j = d_{xi_j} + xi_j d_x
                let xi = SuperPolynomial::var(&self.coords, self.coords.name(odd));
                f.derive(odd).add(&xi.mul(&f.derive(Coord::Even(0))))
            }
            Model::M24 => {
                // D_{theta_j} = d_{theta_j} + nu_j d_y
                let nu = SuperPolynomial::var(&self.coords, self.coords.name(companion));
                f.derive(odd).add(&nu.mul(&f.derive(Coord::Even(0))))
            }
            Model::M34Diamond => {
                // D_{xi_i} = d_{xi_i} + psi_i d_psi
                let psi_i =
                    SuperPolynomial::var(&self.coords, self.coords.name(companion));
                f.derive(odd).add(&psi_i.mul(&f.derive(Coord::Odd(3))))
            }
        }
    }

    fn n_ops(&self) -> usize {
        self.d_ops().len()
    }

    /// Contact vector field of a generating function.
    pub fn contact_field(&self, f: &SuperPolynomial) -> SuperVectorField {
        let pf = f.parity_or_panic();
        let sgn = if pf == Parity::Odd { -1 } else { 1 };
        let c = &self.coords;
        let params = self.params();
        let half = RationalFunction::from_ratio(params, 1, 2);
        match self.model {
            Model::M14 => {
                // X_f = f d_x + (-1)^{|f|} 1/2 sum_j (D_j f) D_j
                let mut x = SuperVectorField::zero(c, pf);
                x = x.add(&SuperVectorField::partial(c, "x").scale_poly(f));
                for j in 0..4 {
                    let df = self.d_op(j, f).scale(&half).scale_int(sgn);
                    if df.is_zero() {
                        continue;
                    }
                    // D_j = d_{xi_j} + xi_j d_x with the coefficient on the left
                    let xi = self.var(c.name(Coord::Odd(j)));
                    let term = SuperVectorField::from_coeffs(
                        c,
                        vec![
                            (Coord::Odd(j), df.clone()),
                            (Coord::Even(0), df.mul(&xi)),
                        ],
                    );
                    x = x.add(&term);
                }
                x
            }
            Model::M24 => {
                // X_f = f d_y + (-1)^{|f|} sum_j [ D_j(f) d_{nu_j} + d_{nu_j}(f) D_j ]
                let mut x = SuperVectorField::zero(c, pf);
                x = x.add(&SuperVectorField::partial(c, "y").scale_poly(f));
                for j in 0..2 {
                    let dth = self.d_op(j, f).scale_int(sgn);
                    let dnu = f.derive(Coord::Odd(2 + j)).scale_int(sgn);
                    let nu = self.var(c.name(Coord::Odd(2 + j)));
                    let mut coeffs = Vec::new();
                    if !dth.is_zero() {
                        coeffs.push((Coord::Odd(2 + j), dth));
                    }
                    if !dnu.is_zero() {
                        coeffs.push((Coord::Odd(j), dnu.clone()));
                        coeffs.push((Coord::Even(0), dnu.mul(&nu)));
                    }
                    if !coeffs.is_empty() {
                        x = x.add(&SuperVectorField::from_coeffs(c, coeffs));
                    }
                }
                x
            }
            Model::M34Diamond => {
                // X_f = -sum_i (d_{psi_i} f) D_i + f d_psi - (-1)^{|f|} sum_i (D_i f) d_{psi_i}
                let mut x = SuperVectorField::zero(c, pf.flip());
                x = x.add(&SuperVectorField::partial(c, "psi").scale_poly(f));
                for i in 0..3 {
                    let dpsi_i = f.derive(Coord::Even(i));
                    if !dpsi_i.is_zero() {
                        let psi_i = self.var(c.name(Coord::Even(i)));
                        let term = SuperVectorField::from_coeffs(
                            c,
                            vec![
                                (Coord::Odd(i), dpsi_i.neg()),
                                (Coord::Odd(3), dpsi_i.neg().mul(&psi_i)),
                            ],
                        );
                        x = x.add(&term);
                    }
                    let df = self.d_op(i, f).scale_int(-sgn);
                    if !df.is_zero() {
                        x = x.add(&SuperVectorField::from_coeffs(
                            c,
                            vec![(Coord::Even(i), df)],
                        ));
                    }
                }
                x
            }
        }
    }

    /// Lagrange-Jacobi bracket of generating functions, satisfying
    /// [X_f, X_g] = X_{f,g}. Parity-preserving for the even contact forms
    /// and parity-reversing for the odd one.
    pub fn lagrange_jacobi(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
    ) -> SuperPolynomial {
        let pf = f.parity_or_panic();
        let pg = g.parity_or_panic();
        let sf = if pf == Parity::Odd { -1 } else { 1 };
        let sfg = if pf == Parity::Odd && pg == Parity::Odd { -1 } else { 1 };
        let params = self.params();
        match self.model {
            Model::M14 => {
                let half = RationalFunction::from_ratio(params, 1, 2);
                let mut acc = f
                    .mul(&g.derive(Coord::Even(0)))
                    .sub(&g.mul(&f.derive(Coord::Even(0))).scale_int(sfg));
                for j in 0..4 {
                    let t = self.d_op(j, f).mul(&self.d_op(j, g));
                    acc = acc.add(&t.scale(&half).scale_int(sf));
                }
                acc
            }
            Model::M24 => {
                let mut acc = f
                    .mul(&g.derive(Coord::Even(0)))
                    .sub(&g.mul(&f.derive(Coord::Even(0))).scale_int(sfg));
                for j in 0..2 {
                    let t1 = f.derive(Coord::Odd(2 + j)).mul(&self.d_op(j, g));
                    let t2 = self.d_op(j, f).mul(&g.derive(Coord::Odd(2 + j)));
                    acc = acc.add(&t1.add(&t2).scale_int(sf));
                }
                acc
            }
            Model::M34Diamond => {
                let dpsi = Coord::Odd(3);
                let mut acc = f
                    .mul(&g.derive(dpsi))
                    .add(&f.derive(dpsi).mul(g).scale_int(sf));
                for i in 0..3 {
                    let t1 = f.derive(Coord::Even(i)).mul(&self.d_op(i, g));
                    let t2 = self.d_op(i, f).mul(&g.derive(Coord::Even(i))).scale_int(sf);
                    acc = acc.sub(&t1).sub(&t2);
                }
                acc
            }
        }
    }

    /// Parity of the contact field of a generating function.
    pub fn field_parity(&self, f: &SuperPolynomial) -> Parity {
        let p = f.parity_or_panic();
        match self.model {
            Model::M34Diamond => p.flip(),
            _ => p,
        }
    }

    /// Coordinate weights.
    pub fn weight_of_coord(&self, weighting: Weighting, c: Coord) -> i64 {
        match (self.model, weighting, c) {
            (Model::M14, Weighting::Contact14, Coord::Even(0)) => 2,
            (Model::M14, Weighting::Contact14, Coord::Odd(_)) => 1,
            (Model::M24, Weighting::Contact24, Coord::Even(0)) => 3,
            (Model::M24, Weighting::Contact24, Coord::Odd(k)) => {
                if k < 2 {
                    1
                } else {
                    2
                }
            }
            (Model::M24, Weighting::Flag24, Coord::Even(0)) => 4,
            (Model::M24, Weighting::Flag24, Coord::Odd(0)) => 1,
            (Model::M24, Weighting::Flag24, Coord::Odd(1)) => 2,
            (Model::M24, Weighting::Flag24, Coord::Odd(2)) => 3,
            (Model::M24, Weighting::Flag24, Coord::Odd(3)) => 2,
            (Model::M34Diamond, Weighting::Odd33, Coord::Even(_)) => 2,
            (Model::M34Diamond, Weighting::Odd33, Coord::Odd(3)) => 3,
            (Model::M34Diamond, Weighting::Odd33, Coord::Odd(_)) => 1,
            _ => panic!("weighting does not apply to this model"),
        }
    }

    pub fn field_weight_shift(&self, weighting: Weighting) -> i64 {
        match weighting {
            Weighting::Contact14 => -2,
            Weighting::Contact24 => -3,
            Weighting::Flag24 => -4,
            Weighting::Odd33 => -3,
        }
    }

    /// Monomial generating functions of a given field weight.
    pub fn monomials_of_field_weight(
        &self,
        weighting: Weighting,
        k: i64,
    ) -> Vec<SuperPolynomial> {
        let target = k - self.field_weight_shift(weighting);
        if target < 0 {
            return Vec::new();
        }
        let c = &self.coords;
        let n_even = c.evens.len();
        let n_odd = c.odds.len();
        let mut out = Vec::new();
        // enumerate odd subsets
        for mask in 0..(1u32 << n_odd) {
            let odds: Vec<usize> = (0..n_odd).filter(|i| mask & (1 << i) != 0).collect();
            let odd_w: i64 = odds
                .iter()
                .map(|&i| self.weight_of_coord(weighting, Coord::Odd(i)))
                .sum();
            if odd_w > target {
                continue;
            }
            // enumerate even exponents filling the remaining weight
            let mut stack = vec![(vec![0u16; n_even], target - odd_w, 0usize)];
            while let Some((exps, rem, at)) = stack.pop() {
                if at == n_even {
                    if rem == 0 {
                        let mut p = SuperPolynomial::zero(c);
                        p.terms.insert(
                            (exps.clone(), odds.clone()),
                            RationalFunction::one(&c.params),
                        );
                        out.push(p);
                    }
                    continue;
                }
                let w = self.weight_of_coord(weighting, Coord::Even(at));
                let mut e = 0u16;
                loop {
                    let used = w * e as i64;
                    if used > rem {
                        break;
                    }
                    let mut ex = exps.clone();
                    ex[at] = e;
                    stack.push((ex, rem - used, at + 1));
                    e += 1;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::SDim;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_poly(
        m: &ContactModel,
        weighting: Weighting,
        rng: &mut StdRng,
        parity: Parity,
    ) -> SuperPolynomial {
        // random combination of monomials of mixed weights but fixed parity
        let mut p = SuperPolynomial::zero(&m.coords);
        for k in -4..=4 {
            for mono in m.monomials_of_field_weight(weighting, k) {
                if m.field_parity(&mono) != parity {
                    continue;
                }
                if rng.gen_range(0..3) == 0 {
                    let c = rng.gen_range(-3i64..=3);
                    p = p.add(&mono.scale_int(c));
                }
            }
        }
        p
    }

    #[test]
    fn contact_field_examples() {
        let params = Parameters::none();
        let m14 = ContactModel::new(Model::M14, &params);
        // f = 1 -> d_x
        let f = m14.one();
        let x_f = m14.contact_field(&f);
        assert_eq!(format!("{}", x_f), format!("{}", SuperVectorField::partial(&m14.coords, "x")));
        // f = x -> x d_x + 1/2 sum xi_i (d_{xi_i} + xi_i d_x)
        let f = m14.var("x");
        let x_f = m14.contact_field(&f);
        let mut expect = SuperVectorField::partial(&m14.coords, "x").scale_poly(&f);
        for j in 0..4 {
            let xi = m14.var(&format!("xi{}", j + 1));
            let half = RationalFunction::from_ratio(&params, 1, 2);
            expect = expect.add(
                &SuperVectorField::partial(&m14.coords, &format!("xi{}", j + 1))
                    .scale_poly(&xi.scale(&half)),
            );
        }
        assert_eq!(format!("{}", x_f), format!("{}", expect));
        // odd model: f = 1 -> d_psi
        let m34 = ContactModel::new(Model::M34Diamond, &params);
        let x1 = m34.contact_field(&m34.one());
        assert_eq!(
            format!("{}", x1),
            format!("{}", SuperVectorField::partial(&m34.coords, "psi"))
        );
        assert_eq!(x1.parity, Parity::Odd);
    }

    #[test]
    fn bracket_of_constant_and_x() {
        let params = Parameters::none();
        let m14 = ContactModel::new(Model::M14, &params);
        let b = m14.lagrange_jacobi(&m14.one(), &m14.var("x"));
        assert_eq!(format!("{}", b), format!("{}", m14.one()));
    }

    #[test]
    fn bracket_homomorphism_on_samples() {
        let params = Parameters::none();
        for (model, weighting) in [
            (Model::M14, Weighting::Contact14),
            (Model::M24, Weighting::Contact24),
            (Model::M34Diamond, Weighting::Odd33),
        ] {
            let m = ContactModel::new(model, &params);
            let mut rng = StdRng::seed_from_u64(0xD21A);
            for trial in 0..10 {
                let pf = if trial % 2 == 0 { Parity::Even } else { Parity::Odd };
                let pg = if trial % 3 == 0 { Parity::Even } else { Parity::Odd };
                let f = random_poly(&m, weighting, &mut rng, pf);
                let g = random_poly(&m, weighting, &mut rng, pg);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let lhs = m.contact_field(&f).bracket(&m.contact_field(&g));
                let rhs = m.contact_field(&m.lagrange_jacobi(&f, &g));
                let diff = lhs.sub(&rhs);
                assert!(diff.is_zero(), "model {model:?} trial {trial}");
            }
        }
    }

    #[test]
    fn odd_model_shifted_jacobi_identity() {
        let params = Parameters::none();
        let m = ContactModel::new(Model::M34Diamond, &params);
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..8 {
            let pf = if trial % 2 == 0 { Parity::Even } else { Parity::Odd };
            let pg = if trial % 3 == 0 { Parity::Even } else { Parity::Odd };
            let ph = if trial % 5 == 0 { Parity::Even } else { Parity::Odd };
            let f = random_poly(&m, Weighting::Odd33, &mut rng, pf);
            let g = random_poly(&m, Weighting::Odd33, &mut rng, pg);
            let h = random_poly(&m, Weighting::Odd33, &mut rng, ph);
            if f.is_zero() || g.is_zero() || h.is_zero() {
                continue;
            }
            // {f,{g,h}} = {{f,g},h} + (-1)^{(|f|+1)(|g|+1)} {g,{f,h}}
            let (qf, qg) = (f.parity_or_panic(), g.parity_or_panic());
            let lhs = m.lagrange_jacobi(&f, &m.lagrange_jacobi(&g, &h));
            let t1 = m.lagrange_jacobi(&m.lagrange_jacobi(&f, &g), &h);
            let sign = if qf == Parity::Even && qg == Parity::Even { -1 } else { 1 };
            let t2 = m.lagrange_jacobi(&g, &m.lagrange_jacobi(&f, &h)).scale_int(sign);
            let diff = lhs.sub(&t1).sub(&t2);
            assert!(diff.is_zero(), "trial {trial}");
        }
    }

    #[test]
    fn graded_dimension_tables() {
        let params = Parameters::none();
        let m14 = ContactModel::new(Model::M14, &params);
        // plain dimensions 1, 4, 7, 8, 8 for k = -2..2
        let dims: Vec<usize> = (-2..=2)
            .map(|k| m14.monomials_of_field_weight(Weighting::Contact14, k).len())
            .collect();
        assert_eq!(dims, vec![1, 4, 7, 8, 8]);

        let m24 = ContactModel::new(Model::M24, &params);
        let sdims: Vec<SDim> = (-3..=3)
            .map(|k| {
                let monos = m24.monomials_of_field_weight(Weighting::Contact24, k);
                let even = monos.iter().filter(|f| m24.field_parity(f) == Parity::Even).count();
                SDim::new(even, monos.len() - even)
            })
            .collect();
        assert_eq!(
            sdims,
            vec![
                SDim::new(1, 0),
                SDim::new(0, 2),
                SDim::new(1, 2),
                SDim::new(5, 0),
                SDim::new(1, 4),
                SDim::new(1, 4),
                SDim::new(6, 0)
            ]
        );

        let flag: Vec<SDim> = (-4..=4)
            .map(|k| {
                let monos = m24.monomials_of_field_weight(Weighting::Flag24, k);
                let even = monos.iter().filter(|f| m24.field_parity(f) == Parity::Even).count();
                SDim::new(even, monos.len() - even)
            })
            .collect();
        assert_eq!(
            flag,
            vec![
                SDim::new(1, 0),
                SDim::new(0, 1),
                SDim::new(0, 2),
                SDim::new(2, 1),
                SDim::new(3, 0),
                SDim::new(2, 2),
                SDim::new(0, 4),
                SDim::new(2, 2),
                SDim::new(4, 0)
            ]
        );
    }
}
