//! Changes of variable θ(a) = θ1·a + θ2·a² + … with θ1 ≠ 0.
//!
//! θ_*(E) is E on which a acts as α = θ(a) and b as β = b·θ′(a). These
//! satisfy αβ − βα = β² and βⁿE = bⁿE, so the basis e_j of E is still a
//! basis of θ_*(E) over Q[[β]].

use serde::{Deserialize, Serialize};

use crate::error::{AbError, Result};
use crate::linalg::Matrix;
use crate::module::{standard_presentation, AbModule, FrescoPresentation, ModuleVec};
use crate::ore::OreOperator;
use crate::rational::Rat;
use crate::series::TruncSeries;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTheta", into = "RawTheta")]
pub struct ChangeOfVariable {
    /// coeffs[i] is θ_{i+1}
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTheta {
    theta: Vec<Rat>,
}

impl TryFrom<RawTheta> for ChangeOfVariable {
    type Error = AbError;
    fn try_from(r: RawTheta) -> Result<Self> {
        ChangeOfVariable::new(r.theta)
    }
}

impl From<ChangeOfVariable> for RawTheta {
    fn from(t: ChangeOfVariable) -> Self {
        RawTheta { theta: t.coeffs }
    }
}

impl ChangeOfVariable {
    pub fn new(mut coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.first().map_or(true, Rat::is_zero) {
            return Err(AbError::Validation("θ1 must be nonzero".into()));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Ok(ChangeOfVariable { coeffs })
    }

    pub fn identity() -> Self {
        ChangeOfVariable {
            coeffs: vec![Rat::one()],
        }
    }

    /// θ1·a
    pub fn scaling(r: Rat) -> Result<Self> {
        ChangeOfVariable::new(vec![r])
    }

    /// a + ρ·a^d
    pub fn unitary(rho: Rat, d: usize) -> Result<Self> {
        let mut c = vec![Rat::zero(); d];
        c[0] = Rat::one();
        c[d - 1] = c[d - 1].clone() + rho;
        ChangeOfVariable::new(c)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn theta1(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn theta2(&self) -> Rat {
        self.coeffs.get(1).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// (η ∘ θ)(a) = η(θ(a)), truncated at degree `max_deg`; pushing forward by
    /// θ and then by η is pushing forward by this.
    pub fn then(&self, eta: &ChangeOfVariable, max_deg: usize) -> Self {
        let mul = |x: &[Rat], y: &[Rat]| {
            let mut out = vec![Rat::zero(); max_deg + 1];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    if i + j <= max_deg {
                        out[i + j] += &(a * b);
                    }
                }
            }
            out
        };
        let mut theta = vec![Rat::zero(); max_deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + 1 <= max_deg {
                theta[i + 1] = c.clone();
            }
        }
        let mut acc = vec![Rat::zero(); max_deg + 1];
        let mut power = theta.clone();
        for c in &eta.coeffs {
            for (a, p) in acc.iter_mut().zip(&power) {
                *a += &(c * p);
            }
            power = mul(&power, &theta);
        }
        ChangeOfVariable::new(acc[1..].to_vec()).expect("θ1·η1 ≠ 0")
    }

    /// α = θ(a) in the algebra.
    pub fn alpha(&self, order: usize) -> OreOperator {
        let mut c = vec![Rat::zero()];
        c.extend(self.coeffs.iter().cloned());
        OreOperator::poly_in_a(&c, order)
    }

    /// β = b·θ′(a)
    pub fn beta(&self, order: usize) -> OreOperator {
        let d: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::int(i as i64 + 1))
            .collect();
        OreOperator::b(order).mul(&OreOperator::poly_in_a(&d, order))
    }

    fn horner(&self, e: &AbModule, v: &[TruncSeries], c: &[Rat]) -> ModuleVec {
        let mut w: ModuleVec = v.iter().map(|s| s.scale(c.last().unwrap())).collect();
        for ci in c.iter().rev().skip(1) {
            w = e.apply_a(&w);
            if !ci.is_zero() {
                w = w.iter().zip(v).map(|(x, y)| x.add(&y.scale(ci))).collect();
            }
        }
        w
    }

    pub fn apply_alpha(&self, e: &AbModule, v: &[TruncSeries]) -> ModuleVec {
        // θ(a)v = a·(θ1 v + a·(θ2 v + …))
        let w = self.horner(e, v, &self.coeffs);
        e.apply_a(&w)
    }

    pub fn apply_beta(&self, e: &AbModule, v: &[TruncSeries]) -> ModuleVec {
        let d: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::int(i as i64 + 1))
            .collect();
        self.horner(e, v, &d).iter().map(|s| s.shift(1)).collect()
    }
}

/// Q-linear matrices of α and β on E/b^N·E in the basis b^n·e_i (index n·k + i).
pub fn alpha_beta_matrices(e: &AbModule, theta: &ChangeOfVariable) -> (Matrix, Matrix) {
    let k = e.rank();
    let n = e.order();
    let flat = |v: &ModuleVec| -> Vec<Rat> {
        (0..n).flat_map(|m| v.iter().map(move |s| s.coeff(m))).collect()
    };
    let mut acols = Vec::new();
    let mut bcols = Vec::new();
    for m in 0..n {
        for i in 0..k {
            let mut v = e.zero_vector();
            v[i] = TruncSeries::monomial(Rat::one(), m, n);
            acols.push(flat(&theta.apply_alpha(e, &v)));
            bcols.push(flat(&theta.apply_beta(e, &v)));
        }
    }
    (Matrix::from_cols(&acols, k * n), Matrix::from_cols(&bcols, k * n))
}

/// β^n·e_i for all n < N, used to rewrite vectors in the β-adic basis.
struct BetaBasis {
    powers: Vec<Vec<ModuleVec>>,
    /// inverse of the b^n-coefficient matrix of (β^n·e_1, …, β^n·e_k)
    leading_inv: Vec<Matrix>,
}

impl BetaBasis {
    fn new(e: &AbModule, theta: &ChangeOfVariable) -> Self {
        let k = e.rank();
        let n = e.order();
        let mut powers: Vec<Vec<ModuleVec>> = vec![(0..k).map(|i| e.basis_vector(i)).collect()];
        for _ in 1..n {
            let prev = powers.last().unwrap();
            let next = prev.iter().map(|v| theta.apply_beta(e, v)).collect();
            powers.push(next);
        }
        let leading_inv = powers
            .iter()
            .enumerate()
            .map(|(m, vs)| {
                let cols: Vec<Vec<Rat>> = vs
                    .iter()
                    .map(|v| v.iter().map(|s| s.coeff(m)).collect())
                    .collect();
                Matrix::from_cols(&cols, k)
                    .inverse()
                    .expect("leading part of β^n is θ1^n times a unipotent map")
            })
            .collect();
        BetaBasis { powers, leading_inv }
    }

    /// Coordinates c with w = Σ_n Σ_i c[i]_n·β^n·e_i.
    fn decompose(&self, w: &[TruncSeries]) -> ModuleVec {
        let k = w.len();
        let n = w[0].order();
        let mut res: ModuleVec = w.to_vec();
        let mut out = vec![vec![Rat::zero(); n]; k];
        for m in 0..n {
            let level: Vec<Rat> = res.iter().map(|s| s.coeff(m)).collect();
            let c = self.leading_inv[m].mul_vec(&level);
            for (i, ci) in c.into_iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (r, p) in res.iter_mut().zip(&self.powers[m][i]) {
                    *r = r.sub(&p.scale(&ci));
                }
                out[i][m] = ci;
            }
        }
        out.into_iter().map(|c| TruncSeries::new(c, n)).collect()
    }
}

/// θ_*(E) in the basis e_1..e_k, exact at the order of E.
pub fn module_pushforward(e: &AbModule, theta: &ChangeOfVariable) -> AbModule {
    let k = e.rank();
    let bb = BetaBasis::new(e, theta);
    let cols: Vec<ModuleVec> = (0..k)
        .map(|j| bb.decompose(&theta.apply_alpha(e, &e.basis_vector(j))))
        .collect();
    let action = (0..k)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    AbModule::new(action, e.order())
}

/// Standard presentation of θ_*(E).
pub fn pushforward(pres: &FrescoPresentation, theta: &ChangeOfVariable) -> Result<FrescoPresentation> {
    let f = module_pushforward(&pres.module(), theta);
    Ok(standard_presentation(&f)?.0)
}

/// S with S(0) = 1 such that ε = S(β)·e is an eigenvector, (α − λβ)ε = 0,
/// in θ_*(E_λ). Writing α·e = λβ·e + β²R(β)·e gives S′ + R·S = 0.
pub fn rank1_eigen_series(lambda: &Rat, theta: &ChangeOfVariable, order: usize) -> Result<TruncSeries> {
    let model = order + 1;
    let e = AbModule::e_lambda(lambda, model);
    let bb = BetaBasis::new(&e, theta);
    let ae = theta.apply_alpha(&e, &e.basis_vector(0));
    let be = theta.apply_beta(&e, &e.basis_vector(0));
    let w = ae[0].sub(&be[0].scale(lambda));
    let c = bb.decompose(&[w]).remove(0);
    if !c.coeff(0).is_zero() || !c.coeff(1).is_zero() {
        return Err(AbError::Degenerate("α·e − λβ·e is not in β²E".into()));
    }
    let r = c.unshift(2)?.with_order(model - 1);
    r.primitive().neg().exp()
}

/// The eigenvector S(β)·e of `rank1_eigen_series` in b-coordinates.
pub fn rank1_eigenvector(lambda: &Rat, theta: &ChangeOfVariable, order: usize) -> Result<TruncSeries> {
    let s = rank1_eigen_series(lambda, theta, order)?;
    let e = AbModule::e_lambda(lambda, order);
    let mut v = e.zero_vector();
    let mut p = e.basis_vector(0);
    for n in 0..order {
        let c = s.coeff(n);
        if !c.is_zero() {
            v[0] = v[0].add(&p[0].scale(&c));
        }
        p = theta.apply_beta(&e, &p);
    }
    Ok(v.remove(0))
}

/// Coefficients of the eigenvector S(b)·e for θ = a + ρa² from the recursion
/// γ_0 = 1, γ_{n+1} = (1 − 1/(n+1) + λ(1−λ)/(n+1)²)·γ_n, s_n = n!·(−ρ)^n·γ_n.
pub fn s_rho_lambda_recursion(lambda: &Rat, rho: &Rat, order: usize) -> TruncSeries {
    let mut out = Vec::with_capacity(order);
    let mut gamma = Rat::one();
    let mut fact_rho = Rat::one();
    let l1 = lambda * (Rat::one() - lambda);
    for n in 0..order {
        out.push(&fact_rho * &gamma);
        let m = Rat::int(n as i64 + 1);
        gamma = gamma * (Rat::one() - Rat::one() / &m + &l1 / (&m * &m));
        fact_rho = fact_rho * &m * -rho;
    }
    TruncSeries::new(out, order)
}

#[derive(Clone, Debug)]
pub struct FactorThrough {
    pub z0: TruncSeries,
    pub z1: TruncSeries,
    /// (α − λβ)·S − (Z̃0 + Z̃1·(a − μb))·(a − λb) vanishes
    pub exact: bool,
}

/// (α − λβ)·S^λ_ρ = (Z̃0 + Z̃1·(a − μb))·(a − λb) for θ = a + ρa².
pub fn alpha_factor_through(lambda: &Rat, mu: &Rat, rho: &Rat, order: usize) -> Result<FactorThrough> {
    let theta = ChangeOfVariable::unitary(rho.clone(), 2)?;
    let s = s_rho_lambda_recursion(lambda, rho, order);
    let lhs = theta
        .alpha(order)
        .sub(&theta.beta(order).scale(lambda))
        .mul(&OreOperator::series(s));
    let (t, r) = lhs.left_divmod(&OreOperator::a_minus(lambda, order))?;
    if t.a_degree().unwrap_or(0) > 1 {
        return Err(AbError::Degenerate("quotient has degree above one".into()));
    }
    let z1 = t.coeff(1);
    let z0 = t.coeff(0).add(&z1.shift(1).scale(mu));
    Ok(FactorThrough {
        z0,
        z1,
        exact: r.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn theta_validation() {
        assert!(ChangeOfVariable::new(vec![rat!(0), rat!(1)]).is_err());
        let t: ChangeOfVariable = serde_json::from_str(r#"{"theta":["1","0","1/3"]}"#).unwrap();
        assert_eq!(t.degree(), 3);
        assert!(serde_json::from_str::<ChangeOfVariable>(r#"{"theta":["0"]}"#).is_err());
    }

    #[test]
    fn alpha_beta_relation_in_algebra() {
        let t = ChangeOfVariable::new(vec![rat!(2), rat!(-1), rat!(1 / 3)]).unwrap();
        let (a, b) = (t.alpha(16), t.beta(16));
        assert_eq!(a.mul(&b).sub(&b.mul(&a)), b.mul(&b));
    }

    #[test]
    fn alpha_beta_relation_on_module() {
        let pres = FrescoPresentation::plain(rat!(5 / 2), vec![1, 2], 6);
        let t = ChangeOfVariable::new(vec![rat!(1), rat!(1)]).unwrap();
        let (a, b) = alpha_beta_matrices(&pres.module(), &t);
        assert_eq!(a.mul(&b).sub(&b.mul(&a)), b.mul(&b));
    }

    #[test]
    fn scaling_of_rank_one() {
        let l = rat!(7 / 3);
        let t = ChangeOfVariable::scaling(rat!(3)).unwrap();
        let f = module_pushforward(&AbModule::e_lambda(&l, 10), &t);
        assert_eq!(f, AbModule::e_lambda(&l, 10));
    }

    #[test]
    fn first_eigen_coefficient() {
        let (l, rho) = (rat!(5 / 2), rat!(2 / 3));
        let s = rank1_eigen_series(&l, &ChangeOfVariable::unitary(rho.clone(), 2).unwrap(), 8).unwrap();
        assert_eq!(s.coeff(1), &rho * &l * (&l - rat!(1)));
    }

    #[test]
    fn eigenvector_matches_recursion() {
        let (l, rho) = (rat!(7 / 2), rat!(-1 / 2));
        let v = rank1_eigenvector(&l, &ChangeOfVariable::unitary(rho.clone(), 2).unwrap(), 12).unwrap();
        assert_eq!(v, s_rho_lambda_recursion(&l, &rho, 12));
    }

    #[test]
    fn recursion_solves_the_ode() {
        // ρb²S″ + (1 + 2ρb)S′ + λρ(1−λ)S = 0
        let (l, rho) = (rat!(5 / 3), rat!(3));
        let n = 14;
        let s = s_rho_lambda_recursion(&l, &rho, n);
        let d1 = s.derivative().with_order(n - 1);
        let d2 = d1.derivative().with_order(n - 2);
        let lhs = d2
            .with_order(n - 2)
            .shift(0)
            .mul(&TruncSeries::monomial(rho.clone(), 2, n - 2))
            .add(&d1.truncate(n - 2).mul(&TruncSeries::new(vec![rat!(1), &rho * rat!(2)], n - 2)))
            .add(&s.truncate(n - 2).scale(&(&l * &rho * (rat!(1) - &l))));
        assert!(lhs.is_zero());
    }

    #[test]
    fn factor_through_low_order() {
        let (l, mu, rho) = (rat!(7 / 2), rat!(9 / 2), rat!(2));
        let ft = alpha_factor_through(&l, &mu, &rho, 16).unwrap();
        assert!(ft.exact);
        let s1 = &rho * &l * (&l - rat!(1));
        assert_eq!(ft.z0.coeff(0), rat!(1));
        assert_eq!(ft.z0.coeff(1), &rho * (&mu - &l) + &s1);
        assert_eq!(ft.z1.coeff(0), rho.clone());
        assert_eq!(ft.z1.coeff(1), &rho * &s1);
    }

    #[test]
    fn cubic_change_starts_at_b_squared() {
        let l = rat!(9 / 4);
        let t = ChangeOfVariable::unitary(rat!(-3), 3).unwrap();
        let s = rank1_eigen_series(&l, &t, 10).unwrap();
        let s2 = rat!(-3) * &l * (&l + rat!(1)) * (&l - rat!(1));
        assert_eq!((s.coeff(0), s.coeff(1), s.coeff(2)), (rat!(1), rat!(0), s2));
        // with S = 1 + O(β³) the b³ coefficient of (α − λβ)e does not vanish
        let e = AbModule::e_lambda(&l, 8);
        let v = e.basis_vector(0);
        let r = t.apply_alpha(&e, &v)[0].sub(&t.apply_beta(&e, &v)[0].scale(&l));
        assert_eq!(r.valuation(), Some(3));
    }

    #[test]
    fn identity_change_is_trivial() {
        let s = rank1_eigen_series(&rat!(5 / 2), &ChangeOfVariable::identity(), 8).unwrap();
        assert_eq!(s, TruncSeries::one(8));
        let ft = alpha_factor_through(&rat!(5 / 2), &rat!(1), &rat!(0), 8).unwrap();
        assert!(ft.exact);
        assert_eq!(ft.z0, TruncSeries::one(8));
        assert!(ft.z1.is_zero());
    }

    #[test]
    fn factor_through_full_identity() {
        let ft = alpha_factor_through(&rat!(7 / 2), &rat!(3 / 2), &rat!(1), 16).unwrap();
        assert!(ft.exact);
    }

    #[test]
    fn composition_matches_successive_pushforwards() {
        let pres = FrescoPresentation::plain(rat!(7 / 2), vec![2], 10);
        let e = pres.module();
        let t = ChangeOfVariable::new(vec![rat!(2), rat!(1)]).unwrap();
        let u = ChangeOfVariable::new(vec![rat!(1), rat!(0), rat!(-1)]).unwrap();
        let twice = module_pushforward(&module_pushforward(&e, &t), &u);
        let once = module_pushforward(&e, &t.then(&u, 12));
        assert_eq!(twice, once);
    }
}
