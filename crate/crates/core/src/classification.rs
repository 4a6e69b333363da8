//! Classification parameters of [λ]-primitive frescos and how they move
//! under a change of variable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::change_of_variable::{pushforward, ChangeOfVariable};
use crate::error::{AbError, Result};
use crate::module::{
    delta_and_depth_module, kernel_dim, principal_jh, quotient_by_normal_rank1, saturate_and_bernstein,
    standard_from_jh, standard_presentation, subquotient_of, vec_add, vec_reduction, vec_scale,
    vec_sub, vec_truncate, AbModule, FrescoPresentation, ModuleVec,
};
use crate::rational::Rat;
use crate::series::{solve_linear_b_ode, TruncSeries};

pub(crate) const FIND_L_SEED: u64 = 0x4c5f_5eed;

/// 4·(p_1 + … ) + 16
pub fn default_order(p: &[usize]) -> usize {
    4 * p.iter().sum::<usize>() + 16
}

/// E(γ): S_1 = 1 + γ·b, S_2 = 1.
pub fn make_e_gamma(lambda1: &Rat, p1: usize, p2: usize, gamma: &Rat, order: usize) -> Result<FrescoPresentation> {
    if p1 < 2 || p2 < 1 {
        return Err(AbError::Validation("E(γ) needs p1 ≥ 2 and p2 ≥ 1".into()));
    }
    if *lambda1 <= Rat::int(2) {
        return Err(AbError::Validation("E(γ) needs λ1 > 2".into()));
    }
    let s1 = TruncSeries::new(vec![Rat::one(), gamma.clone()], order);
    FrescoPresentation::new(lambda1.clone(), vec![p1, p2], vec![s1, TruncSeries::one(order)], order)
}

/// 1 + s_p·b^p, reached from S by the moves e_2 ↦ e_2 + W·e_1, which send S
/// to S + b²W′ − (p−1)·b·W.
pub fn rank2_normal_form(s: &TruncSeries, p: usize) -> Result<TruncSeries> {
    let order = s.order();
    if p >= order {
        return Err(AbError::InsufficientOrder { needed: p + 1, have: order });
    }
    let z = s.coeff(p);
    let target = TruncSeries::one(order).add(&TruncSeries::monomial(z, p, order));
    // b·(b·W′ − (p−1)·W) = target − S
    let f = target.sub(s).unshift(1)?;
    let w = solve_linear_b_ode(&Rat::int(p as i64 - 1), &f, &Rat::zero())?;
    let moved = s
        .truncate(order - 1)
        .add(&w.b2_derivative())
        .sub(&w.shift(1).scale(&Rat::int(p as i64 - 1)));
    debug_assert_eq!(moved, target.truncate(order - 1));
    Ok(moved)
}

/// z with F_2 ≅ Â/Â·(a − λ1·b)(1 + z·b^p)^{-1}(a − λ2·b).
pub fn rank2_theme_param(e: &AbModule) -> Result<Rat> {
    if e.rank() != 2 {
        return Err(AbError::WrongRank { expected: 2, got: e.rank() });
    }
    let (pres, _) = standard_presentation(e)?;
    presentation_theme_param(&pres)
}

pub fn presentation_theme_param(pres: &FrescoPresentation) -> Result<Rat> {
    if pres.rank() != 2 {
        return Err(AbError::WrongRank { expected: 2, got: pres.rank() });
    }
    let p = pres.p[0];
    if p == 0 {
        return Err(AbError::UniqueClass);
    }
    Ok(rank2_normal_form(&pres.s[0], p)?.coeff(p))
}

/// A basis ε_1, ε_2, ε_3 with (a−λ3b)ε3 = ε2, (a−λ2b)ε2 = (1+γb)ε1,
/// (a−λ1b)ε1 = 0, written in the standard basis of the presentation.
#[derive(Clone, Debug)]
pub struct GammaNormalBasis {
    pub gamma: Rat,
    pub eps: Vec<ModuleVec>,
}

/// ε3 = e3 + V·e2 + W·e1, ε2 = e2 + Σ·e1, ε1 = e1, solved coefficient by
/// coefficient with the free value of V at b^{p2−1} set to 0.
pub fn gamma_normal_basis(pres: &FrescoPresentation) -> Result<GammaNormalBasis> {
    if pres.rank() != 3 {
        return Err(AbError::WrongRank { expected: 3, got: pres.rank() });
    }
    let (p1, p2) = (pres.p[0], pres.p[1]);
    if p1 < 2 {
        return Err(AbError::Invalid("γ needs p1 ≥ 2".into()));
    }
    if p2 == 0 {
        return Err(AbError::Invalid("γ needs p2 ≥ 1".into()));
    }
    if p2 == 1 {
        return Err(AbError::NonUnique);
    }
    let n = pres.order;
    if n < p1 + p2 + 2 {
        return Err(AbError::InsufficientOrder { needed: p1 + p2 + 2, have: n });
    }
    let (s1, s2) = (&pres.s[0], &pres.s[1]);
    if !s1.coeff(p1).is_zero() || !s2.coeff(p2).is_zero() {
        return Err(AbError::NotSemisimple);
    }
    // S2 + b²V′ − (p2−1)·b·V = 1
    let mut v = vec![Rat::zero(); n];
    for m in 1..n {
        if m != p2 {
            v[m - 1] = -s2.coeff(m) / Rat::int(m as i64 - p2 as i64);
        }
    }
    let v = TruncSeries::new(v, n);
    // S1 + b²Σ′ − (p1−1)·b·Σ = 1 + γ·b
    let mut sigma = vec![Rat::zero(); n];
    sigma[0] = v.coeff(0);
    for m in 2..n {
        if m != p1 {
            sigma[m - 1] = -s1.coeff(m) / Rat::int(m as i64 - p1 as i64);
        }
    }
    let gamma = s1.coeff(1) - &sigma[0] * Rat::int(p1 as i64 - 1);
    // Σ = V·S1 + b²W′ − (p1+p2−2)·b·W
    let vs1 = v.mul(s1);
    let res = p1 + p2 - 1;
    let mut w = vec![Rat::zero(); n];
    for m in 1..n {
        let rhs = &sigma[m] - vs1.coeff(m);
        if m == res {
            if !rhs.is_zero() {
                return Err(AbError::NotSemisimple);
            }
        } else {
            w[m - 1] = rhs / Rat::int(m as i64 - res as i64);
        }
    }
    let sigma = TruncSeries::new(sigma, n);
    let w = TruncSeries::new(w, n);
    let one = TruncSeries::one(n);
    let zero = TruncSeries::zero(n);
    let eps = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![sigma, one.clone(), zero],
        vec![w, v, one],
    ];
    let basis = GammaNormalBasis { gamma, eps };
    check_gamma_basis(pres, &basis)?;
    Ok(basis)
}

fn check_gamma_basis(pres: &FrescoPresentation, nb: &GammaNormalBasis) -> Result<()> {
    let m = pres.module();
    let lambdas = pres.lambdas();
    let top = pres.order - 1;
    let shifted = |j: usize| {
        let x = &nb.eps[j];
        let ax = m.apply_a(x);
        vec_truncate(&vec_sub(&ax, &x.iter().map(|s| s.shift(1).scale(&lambdas[j])).collect::<Vec<_>>()), top)
    };
    let one_gb = TruncSeries::new(vec![Rat::one(), nb.gamma.clone()], pres.order);
    let ok = shifted(2) == vec_truncate(&nb.eps[1], top)
        && shifted(1) == vec_truncate(&nb.eps[0].iter().map(|s| s.mul(&one_gb)).collect::<Vec<_>>(), top)
        && shifted(0).iter().all(TruncSeries::is_zero);
    if ok {
        Ok(())
    } else {
        Err(AbError::Degenerate("normal basis check failed".into()))
    }
}

/// γ of a rank-3 semi-simple fresco, E ≅ E(γ).
pub fn extract_gamma(e: &AbModule) -> Result<Rat> {
    if e.rank() != 3 {
        return Err(AbError::WrongRank { expected: 3, got: e.rank() });
    }
    let (pres, _) = standard_presentation(e)?;
    Ok(gamma_normal_basis(&pres)?.gamma)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SemisimplicityVerdict {
    SemiSimple,
    DepthTwo { l_exponent: Rat },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimplicityWitness {
    pub alpha_coeff: Rat,
    pub beta_coeff: Rat,
    pub gamma_coeff: Option<Rat>,
    pub verdict: SemisimplicityVerdict,
}

/// For (a − λ1b)S1⁻¹(a − λ2b)S2⁻¹(a − λ3b): α = [S1]_{p1}, β = [S2]_{p2}; when
/// both vanish γ = [U·S2]_{p1+p2} with b·U′ − p1·U = −p1·S1.
pub fn semisimplicity_witness(
    lambda1: &Rat,
    p1: usize,
    p2: usize,
    s1: &TruncSeries,
    s2: &TruncSeries,
) -> Result<SemisimplicityWitness> {
    if !s1.coeff(0).is_one() || !s2.coeff(0).is_one() {
        return Err(AbError::Validation("S1(0) and S2(0) must be 1".into()));
    }
    let order = s1.order().min(s2.order());
    if order <= p1 + p2 {
        return Err(AbError::InsufficientOrder { needed: p1 + p2 + 1, have: order });
    }
    let alpha_coeff = s1.coeff(p1);
    let beta_coeff = s2.coeff(p2);
    if !alpha_coeff.is_zero() || !beta_coeff.is_zero() {
        return Ok(SemisimplicityWitness {
            alpha_coeff,
            beta_coeff,
            gamma_coeff: None,
            verdict: SemisimplicityVerdict::NotApplicable,
        });
    }
    let p1r = Rat::int(p1 as i64);
    let u = solve_linear_b_ode(&p1r, &s1.truncate(order).scale(&-&p1r), &Rat::zero())?;
    let gamma = u.mul_coeff(&s2.truncate(order), p1 + p2);
    let verdict = if gamma.is_zero() {
        SemisimplicityVerdict::SemiSimple
    } else {
        SemisimplicityVerdict::DepthTwo {
            l_exponent: lambda1.clone(),
        }
    };
    Ok(SemisimplicityWitness {
        alpha_coeff,
        beta_coeff,
        gamma_coeff: Some(gamma),
        verdict,
    })
}

/// Exponent μ of L(E) ≅ E_μ, or None when E is semi-simple.
///
/// L(E) is the normal rank-1 submodule F with d(E/F) = d(E) − 1. The lines
/// tried for each candidate μ are the normal kernel vectors x of a − μb, and
/// for rank 3 the unique member of each pencil x + c·y (y ∈ Ker ∩ bE) whose
/// rank-2 quotient has parameter 0, then a seeded combination of the kernel.
pub fn find_l(e: &AbModule) -> Result<Option<Rat>> {
    let k = e.rank();
    if k > 4 {
        return Err(AbError::Invalid("find_L is limited to rank ≤ 4".into()));
    }
    let jh = principal_jh(e)?;
    let (_, d) = delta_and_depth_module(e)?;
    if d == 1 {
        return Ok(None);
    }
    let lambda1 = jh.exponents[0].clone();
    let mut values: Vec<Rat> = jh
        .exponents
        .iter()
        .enumerate()
        .map(|(j, l)| l + Rat::int(j as i64))
        .collect();
    values.sort();
    values.dedup();
    let passes = |x: &ModuleVec| -> Result<bool> {
        if vec_reduction(x).iter().all(Rat::is_zero) {
            return Ok(false);
        }
        let (q, _) = quotient_by_normal_rank1(e, x)?;
        let dq = if q.rank() == 1 { 1 } else { delta_and_depth_module(&q)?.1 };
        Ok(dq + 1 == d)
    };
    let quotient_param = |x: &ModuleVec| -> Result<Option<Rat>> {
        let (q, _) = quotient_by_normal_rank1(e, x)?;
        let (pres, _) = standard_presentation(&q)?;
        match presentation_theme_param(&pres) {
            Ok(z) => Ok(Some(z)),
            Err(AbError::UniqueClass) => Ok(None),
            Err(err) => Err(err),
        }
    };
    let mut found: Vec<Rat> = Vec::new();
    for mu in values {
        let m = usize::try_from((&mu - &lambda1).floor()).unwrap_or(0) + 1;
        let ker = kernel_dim(e, &mu, m)?;
        let (normal, inner): (Vec<ModuleVec>, Vec<ModuleVec>) = ker
            .basis
            .iter()
            .cloned()
            .partition(|x| vec_reduction(x).iter().any(|c| !c.is_zero()));
        let mut candidates: Vec<ModuleVec> = normal.clone();
        if k == 3 {
            for x0 in &normal {
                for y in &inner {
                    let at = |c: &Rat| vec_add(x0, &vec_scale(y, c));
                    let (Some(f0), Some(f1), Some(f2)) = (
                        quotient_param(x0)?,
                        quotient_param(&at(&Rat::one()))?,
                        quotient_param(&at(&Rat::int(2)))?,
                    ) else {
                        continue;
                    };
                    let slope = &f1 - &f0;
                    if slope.is_zero() || &f2 - &f1 != slope {
                        continue;
                    }
                    candidates.push(at(&(-f0 / slope)));
                }
            }
        }
        if ker.dim > 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(FIND_L_SEED);
            let mut combo = vec![TruncSeries::zero(ker.order); k];
            for v in &ker.basis {
                combo = vec_add(&combo, &vec_scale(v, &Rat::int(rng.gen_range(1..=7))));
            }
            candidates.push(combo);
        }
        for x in &candidates {
            if passes(x)? {
                found.push(mu.clone());
                break;
            }
        }
    }
    match found.len() {
        0 => Err(AbError::SearchExhausted),
        1 => Ok(found.pop()),
        _ => Err(AbError::Degenerate(format!(
            "several exponents satisfy the L criterion: {}",
            found.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    pub formula: String,
    pub value: Rat,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalL {
    pub lambda1: Rat,
    pub p1: usize,
    pub p2: usize,
    pub order: usize,
    pub l: Rat,
    /// γ′ − γ is the same for γ ∈ {0, 1, −2}
    pub gamma_independent: bool,
    /// ρ = 2 moves γ by 2L
    pub rho_linear: bool,
    /// a + a³ fixes γ
    pub tangent_fixed: bool,
    pub formulas: Vec<FormulaCheck>,
}

impl EmpiricalL {
    pub fn flags(&self) -> Vec<String> {
        self.formulas
            .iter()
            .filter(|f| f.matches)
            .map(|f| format!("L matches {}", f.name))
            .collect()
    }
}

/// Candidate closed forms for L in terms of the fundamental invariants.
pub fn printed_l_formulas(lambda1: &Rat, p1: usize, p2: usize) -> Vec<(String, String, Rat)> {
    let (p1r, p2r) = (Rat::int(p1 as i64), Rat::int(p2 as i64));
    let one = Rat::one();
    let l1 = lambda1.clone();
    let l2 = &l1 + &p1r - &one;
    let l3 = &l2 + &p2r - &one;
    let q = (&p1r - &one) * (&p1r - &p2r + Rat::int(3));
    vec![
        (
            "lambda2_form".into(),
            "λ2² − (2p1−3)·λ2 + (p1−1)(p2−5)".into(),
            &l2 * &l2 - (&p1r * Rat::int(2) - Rat::int(3)) * &l2 + (&p1r - &one) * (&p2r - Rat::int(5)),
        ),
        (
            "lambda1_form".into(),
            "λ1² + λ1 + (p1−1)(p1−p2+3)".into(),
            &l1 * &l1 + &l1 + &q,
        ),
        (
            "lambda1_form_minus".into(),
            "λ1² + λ1 − (p1−1)(p1−p2+3)".into(),
            &l1 * &l1 + &l1 - &q,
        ),
        (
            "derivation_form".into(),
            "λ2² − λ2 + (p1−1)(λ2+λ3−4)".into(),
            &l2 * &l2 - &l2 + (&p1r - &one) * (&l2 + &l3 - Rat::int(4)),
        ),
    ]
}

fn gamma_after(lambda1: &Rat, p1: usize, p2: usize, gamma: &Rat, theta: &ChangeOfVariable, order: usize) -> Result<Rat> {
    let e = make_e_gamma(lambda1, p1, p2, gamma, order)?;
    let f = pushforward(&e, theta)?;
    Ok(gamma_normal_basis(&f)?.gamma)
}

/// L with θ_*(E(γ)) ≅ E(γ + ρ·L) for θ = a + ρ·a², measured on E(0).
pub fn empirical_l(lambda1: &Rat, p1: usize, p2: usize, order: usize) -> Result<EmpiricalL> {
    if p1 < 2 || p2 < 2 {
        return Err(AbError::Invalid("empirical L needs p1, p2 ≥ 2".into()));
    }
    let jobs: Vec<(Rat, ChangeOfVariable)> = vec![
        (Rat::zero(), ChangeOfVariable::unitary(Rat::one(), 2)?),
        (Rat::one(), ChangeOfVariable::unitary(Rat::one(), 2)?),
        (Rat::int(-2), ChangeOfVariable::unitary(Rat::one(), 2)?),
        (Rat::zero(), ChangeOfVariable::unitary(Rat::int(2), 2)?),
        (Rat::one(), ChangeOfVariable::unitary(Rat::one(), 3)?),
    ];
    let out: Vec<Rat> = jobs
        .par_iter()
        .map(|(g, t)| gamma_after(lambda1, p1, p2, g, t, order).map(|x| x - g))
        .collect::<Result<_>>()?;
    let l = out[0].clone();
    let formulas = printed_l_formulas(lambda1, p1, p2)
        .into_iter()
        .map(|(name, formula, value)| FormulaCheck {
            matches: value == l,
            name,
            formula,
            value,
        })
        .collect();
    Ok(EmpiricalL {
        lambda1: lambda1.clone(),
        p1,
        p2,
        order,
        gamma_independent: out[1] == l && out[2] == l,
        rho_linear: out[3] == &l * Rat::int(2),
        tangent_fixed: out[4].is_zero(),
        l,
        formulas,
    })
}

fn gamma_of_subquotient(jh: &crate::module::JordanHolderData, j: usize) -> Result<Rat> {
    let sq = subquotient_of(jh, j - 3, j);
    let (pres, _) = standard_presentation(&sq)?;
    Ok(gamma_normal_basis(&pres)?.gamma)
}

/// (γ3 − γ2)/(γ3 − γ1) for the γ_i of F_{j_i}/F_{j_i − 3} (1-based j_i).
pub fn cross_ratio(e: &AbModule, j: [usize; 3]) -> Result<Rat> {
    let k = e.rank();
    if k < 5 {
        return Err(AbError::Invalid("cross ratio needs rank ≥ 5".into()));
    }
    if !(3 <= j[0] && j[0] < j[1] && j[1] < j[2] && j[2] <= k) {
        return Err(AbError::Invalid("need 3 ≤ j1 < j2 < j3 ≤ k".into()));
    }
    let jh = principal_jh(e)?;
    let lambdas = &jh.exponents;
    for &ji in &j {
        for idx in [ji - 3, ji - 2] {
            let gap = &lambdas[idx + 1] - &lambdas[idx] + Rat::one();
            if gap < Rat::int(2) {
                return Err(AbError::Invalid(format!("p_{} < 2", idx + 1)));
            }
        }
    }
    let g: Vec<Rat> = j
        .par_iter()
        .map(|&ji| gamma_of_subquotient(&jh, ji))
        .collect::<Result<_>>()?;
    let den = &g[2] - &g[0];
    if den.is_zero() {
        return Err(AbError::Degenerate("γ3 = γ1".into()));
    }
    Ok((&g[2] - &g[1]) / den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub rank: usize,
    pub lambda1: Rat,
    pub p: Vec<usize>,
    pub bernstein_roots: Vec<Rat>,
    pub delta: usize,
    pub d: usize,
    /// parameter of F_{j+1}/F_{j−1}, j = 1..k−1
    pub z_params: Vec<Option<Rat>>,
    /// γ of F_{j+2}/F_{j−1}, j = 1..k−2, where defined
    pub gamma_params: Vec<Option<Rat>>,
    pub cross_ratio: Option<Rat>,
    pub flags: Vec<String>,
}

pub fn invariants(e: &AbModule) -> Result<InvariantReport> {
    let k = e.rank();
    let jh = principal_jh(e)?;
    let (pres, _) = standard_from_jh(&jh)?;
    let sat = saturate_and_bernstein(e, k + 1)?;
    let (mut roots, _) = sat.bernstein.rational_roots();
    roots.sort();
    let (delta, d) = delta_and_depth_module(e)?;
    let mut flags = Vec::new();
    let z_params = (1..k)
        .map(|j| {
            let sq = subquotient_of(&jh, j - 1, j + 1);
            let (p2, _) = standard_presentation(&sq)?;
            match presentation_theme_param(&p2) {
                Ok(z) => Ok(Some(z)),
                Err(AbError::UniqueClass) => Ok(None),
                Err(err) => Err(err),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma_params: Vec<Option<Rat>> = (3..=k)
        .map(|j| match gamma_of_subquotient(&jh, j) {
            Ok(g) => Some(g),
            Err(err) => {
                flags.push(format!("gamma_{} undefined: {}", j - 2, err));
                None
            }
        })
        .collect();
    let cross = if k >= 5 {
        let g: Vec<&Rat> = gamma_params[..3].iter().flatten().collect();
        if g.len() == 3 && g[2] != g[0] {
            Some((g[2] - g[1]) / (g[2] - g[0]))
        } else {
            None
        }
    } else {
        None
    };
    Ok(InvariantReport {
        rank: k,
        lambda1: pres.lambda1.clone(),
        p: pres.p.clone(),
        bernstein_roots: roots,
        delta,
        d,
        z_params,
        gamma_params,
        cross_ratio: cross,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn s(c: &[Rat], n: usize) -> TruncSeries {
        TruncSeries::new(c.to_vec(), n)
    }

    #[test]
    fn rank2_normal_form_kills_other_terms() {
        let n = 12;
        let x = s(&[rat!(1), rat!(1), rat!(-2), rat!(3), rat!(5)], n);
        let nf = rank2_normal_form(&x, 3).unwrap();
        assert_eq!(nf, s(&[rat!(1), rat!(0), rat!(0), rat!(3)], n - 1));
    }

    #[test]
    fn theme_param_of_presentation() {
        let n = 20;
        let pres = FrescoPresentation::new(rat!(7 / 2), vec![2], vec![s(&[rat!(1), rat!(0), rat!(5)], n)], n).unwrap();
        assert_eq!(rank2_theme_param(&pres.module()).unwrap(), rat!(5));
        let pres = FrescoPresentation::new(rat!(7 / 2), vec![2], vec![s(&[rat!(1), rat!(1)], n)], n).unwrap();
        assert_eq!(rank2_theme_param(&pres.module()).unwrap(), rat!(0));
        let pres = FrescoPresentation::plain(rat!(7 / 2), vec![0], n);
        assert!(matches!(rank2_theme_param(&pres.module()), Err(AbError::UniqueClass)));
    }

    #[test]
    fn gamma_round_trip() {
        let n = default_order(&[2, 3]);
        for g in [rat!(0), rat!(1 / 2), rat!(-3)] {
            let e = make_e_gamma(&rat!(7 / 2), 2, 3, &g, n).unwrap();
            assert_eq!(extract_gamma(&e.module()).unwrap(), g);
        }
    }

    #[test]
    fn gamma_closed_form() {
        // γ = [S1]_1 − (p1−1)/(p2−1)·[S2]_1 when S1, S2 have no other terms below b^{p1}, b^{p2}
        let n = 24;
        let pres = FrescoPresentation::new(
            rat!(7 / 2),
            vec![3, 3],
            vec![s(&[rat!(1), rat!(2)], n), s(&[rat!(1), rat!(3)], n)],
            n,
        )
        .unwrap();
        let g = gamma_normal_basis(&pres).unwrap().gamma;
        assert_eq!(g, rat!(2) - rat!(2) / rat!(2) * rat!(3));
    }

    #[test]
    fn gamma_p2_one_is_non_unique() {
        let e = make_e_gamma(&rat!(7 / 2), 2, 1, &rat!(1), 20).unwrap();
        assert!(matches!(extract_gamma(&e.module()), Err(AbError::NonUnique)));
    }

    #[test]
    fn gamma_rejects_themes() {
        let n = 24;
        let pres = FrescoPresentation::new(
            rat!(7 / 2),
            vec![2, 3],
            vec![s(&[rat!(1), rat!(0), rat!(1)], n), TruncSeries::one(n)],
            n,
        )
        .unwrap();
        assert!(matches!(gamma_normal_basis(&pres), Err(AbError::NotSemisimple)));
    }

    #[test]
    fn witness_example() {
        let n = 12;
        let (p1, p2) = (2, 3);
        let s1 = TruncSeries::one(n).add(&TruncSeries::monomial(rat!(1), p1 + p2, n));
        let w = semisimplicity_witness(&rat!(7 / 2), p1, p2, &s1, &TruncSeries::one(n)).unwrap();
        assert_eq!(w.gamma_coeff, Some(rat!(-2 / 3)));
        let w = semisimplicity_witness(&rat!(7 / 2), p1, p2, &TruncSeries::one(n), &TruncSeries::one(n)).unwrap();
        assert_eq!(w.verdict, SemisimplicityVerdict::SemiSimple);
        let s2 = TruncSeries::one(n).add(&TruncSeries::monomial(rat!(1), p2, n));
        let w = semisimplicity_witness(&rat!(7 / 2), p1, p2, &TruncSeries::one(n), &s2).unwrap();
        assert_eq!(w.verdict, SemisimplicityVerdict::NotApplicable);
    }
}
