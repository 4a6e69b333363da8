//! The principal Jordan–Hölder sequence and the standard presentation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AbError, Result};
use crate::rational::Rat;
use crate::series::TruncSeries;

use super::kernel::kernel_dim;
use super::saturation::fundamental_invariants;
use super::{
    matrix_from_columns, vec_add, vec_is_zero, vec_reduction, vec_scale, vec_scale_series,
    vec_truncate, AbModule, FrescoPresentation, ModuleVec, SeriesMatrix,
};

pub(crate) const TIE_SEED: u64 = 0x5eed_ab0d;

#[derive(Clone, Debug)]
pub struct JordanHolderData {
    /// λ_1..λ_k
    pub exponents: Vec<Rat>,
    /// u_1..u_k in the coordinates of E; F_j is spanned by u_1..u_j.
    pub basis: Vec<ModuleVec>,
    /// E in the basis u (upper triangular action).
    pub adapted: AbModule,
}

impl JordanHolderData {
    pub fn order(&self) -> usize {
        self.adapted.order()
    }

    /// Spanning vectors of F_j.
    pub fn flag(&self, j: usize) -> &[ModuleVec] {
        &self.basis[..j]
    }
}

/// E/Q[[b]]x for a normal a-stable line; the basis of the quotient is the
/// image of the e_i other than the pivot (first coordinate of x that is a unit).
pub fn quotient_by_normal_rank1(e: &AbModule, x: &[TruncSeries]) -> Result<(AbModule, usize)> {
    let pivot = x
        .iter()
        .position(|s| !s.coeff(0).is_zero())
        .ok_or(AbError::NotNormal)?;
    let order = e.order().min(x.iter().map(TruncSeries::order).min().unwrap_or(0));
    let e = e.truncate(order);
    let x = vec_truncate(x, order);
    let ax = e.apply_a(&x);
    let c = ax[pivot].div(&x[pivot])?;
    if ax != vec_scale_series(&x, &c) {
        return Err(AbError::NotStable);
    }
    let k = e.rank();
    let mut cols: Vec<ModuleVec> = (0..k).map(|j| e.basis_vector(j)).collect();
    cols[pivot] = x;
    let f = e.change_basis(&matrix_from_columns(&cols))?;
    let keep: Vec<usize> = (0..k).filter(|&i| i != pivot).collect();
    let action: SeriesMatrix = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| f.entry(i, j).clone()).collect())
        .collect();
    Ok((AbModule::new(action, order), pivot))
}

fn without_one(vals: &[Rat], mu: &Rat) -> Vec<Rat> {
    let mut out = vals.to_vec();
    let pos = out.iter().position(|v| v == mu).expect("value present");
    out.remove(pos);
    out.iter().map(|v| v - Rat::one()).collect()
}

/// Candidate values λ_j + j − 1, sorted.
fn candidate_values(lambdas: &[Rat]) -> Vec<Rat> {
    let mut v: Vec<Rat> = lambdas
        .iter()
        .enumerate()
        .map(|(j, l)| l + Rat::int(j as i64))
        .collect();
    v.sort();
    v
}

fn jh_rec(e: &AbModule, vals: &[Rat]) -> Result<(Vec<ModuleVec>, Vec<Rat>)> {
    let k = e.rank();
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut distinct = vals.to_vec();
    distinct.dedup();
    for mu in &distinct {
        let ker = kernel_dim(e, mu, 1)?;
        if ker.dim == 0 {
            continue;
        }
        let rest = without_one(vals, mu);
        let mut candidates = ker.basis.clone();
        if ker.dim > 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(TIE_SEED);
            let mut combo = vec![TruncSeries::zero(ker.order); k];
            for v in &ker.basis {
                let c = Rat::int(rng.gen_range(1..=7));
                combo = vec_add(&combo, &vec_scale(v, &c));
            }
            candidates.push(combo);
        }
        for x in candidates {
            if vec_reduction(&x).iter().all(Rat::is_zero) {
                continue;
            }
            let (q, pivot) = quotient_by_normal_rank1(e, &x)?;
            if ker.dim > 1 && k > 1 {
                let sub = fundamental_invariants(&q)?;
                if candidate_values(&sub) != rest {
                    continue;
                }
            }
            let (sub_basis, sub_exps) = jh_rec(&q, &rest)?;
            let order = q.order();
            let mut basis = vec![vec_truncate(&x, order)];
            for u in sub_basis {
                let ord = u[0].order();
                let mut lifted = vec![TruncSeries::zero(ord); k];
                let mut it = u.into_iter();
                for (i, slot) in lifted.iter_mut().enumerate() {
                    if i != pivot {
                        *slot = it.next().unwrap();
                    }
                }
                basis.push(lifted);
            }
            let mut exps = vec![mu.clone()];
            exps.extend(sub_exps);
            return Ok((basis, exps));
        }
    }
    Err(AbError::NotAFresco("no normal eigenvector among the candidates".into()))
}

pub fn principal_jh(e: &AbModule) -> Result<JordanHolderData> {
    let lambdas = fundamental_invariants(e)?;
    let vals = candidate_values(&lambdas);
    let (basis, exponents) = jh_rec(e, &vals)?;
    let order = basis.iter().flatten().map(TruncSeries::order).min().unwrap_or(e.order());
    let basis: Vec<ModuleVec> = basis.iter().map(|u| vec_truncate(u, order)).collect();
    let adapted = e.truncate(order).change_basis(&matrix_from_columns(&basis))?;
    let k = e.rank();
    for i in 0..k {
        for j in 0..i {
            if !adapted.entry(i, j).is_zero() {
                return Err(AbError::NotAFresco("flag is not a-stable".into()));
            }
        }
    }
    if exponents != lambdas {
        return Err(AbError::NotAFresco("exponents disagree with Bernstein roots".into()));
    }
    Ok(JordanHolderData {
        exponents,
        basis,
        adapted,
    })
}

/// F_j/F_i in the adapted basis (0 ≤ i < j ≤ k).
pub fn jh_subquotient(e: &AbModule, i: usize, j: usize) -> Result<AbModule> {
    let jh = principal_jh(e)?;
    Ok(subquotient_of(&jh, i, j))
}

pub(crate) fn subquotient_of(jh: &JordanHolderData, i: usize, j: usize) -> AbModule {
    let a = &jh.adapted;
    let action: SeriesMatrix = (i..j)
        .map(|r| (i..j).map(|c| a.entry(r, c).clone()).collect())
        .collect();
    AbModule::new(action, a.order())
}

/// A presentation of E together with its standard basis e_1..e_k (in the
/// coordinates of E): (a − λ_j b)e_j = S_{j−1}·e_{j−1}, S_j(0) = 1.
pub fn standard_presentation(e: &AbModule) -> Result<(FrescoPresentation, Vec<ModuleVec>)> {
    let jh = principal_jh(e)?;
    standard_from_jh(&jh)
}

pub(crate) fn standard_from_jh(jh: &JordanHolderData) -> Result<(FrescoPresentation, Vec<ModuleVec>)> {
    let k = jh.exponents.len();
    let lambdas = &jh.exponents;
    let mut p = Vec::new();
    for w in lambdas.windows(2) {
        let gap = &w[1] - &w[0] + Rat::one();
        match gap.to_i64() {
            Some(g) if g >= 0 => p.push(g as usize),
            _ => {
                return Err(AbError::NotAFresco(format!(
                    "exponents {} and {} do not differ by an integer ≥ −1",
                    w[0], w[1]
                )))
            }
        }
    }
    // make each diagonal entry exactly λ_j·b
    let a = &jh.adapted;
    let order = a.order().saturating_sub(1);
    let mut scale = Vec::new();
    for (j, lambda) in lambdas.iter().enumerate() {
        let d = a.entry(j, j);
        if !d.coeff(0).is_zero() || d.coeff(1) != *lambda {
            return Err(AbError::NotAFresco("diagonal is not λ_j·b mod b²".into()));
        }
        let r = d
            .sub(&TruncSeries::monomial(lambda.clone(), 1, d.order()))
            .unshift(2)?;
        let s = r.primitive().neg().with_order(order).exp()?;
        scale.push(s);
    }
    let diag: SeriesMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        scale[i].clone()
                    } else {
                        TruncSeries::zero(order)
                    }
                })
                .collect()
        })
        .collect();
    let m = a.truncate(order).change_basis(&diag)?;

    // top-down: e_k = u_k, S_{j−1}·e_{j−1} = (a − λ_j b)e_j
    let mut es: Vec<ModuleVec> = vec![m.basis_vector(k - 1)];
    let mut s_list: Vec<TruncSeries> = Vec::new();
    for j in (1..k).rev() {
        let ej = es.last().unwrap();
        let mut f = m.apply_a(ej);
        let lb = TruncSeries::monomial(lambdas[j].clone(), 1, order);
        for (fi, xi) in f.iter_mut().zip(ej) {
            *fi = fi.sub(&lb.mul(xi));
        }
        if f[j..].iter().any(|x| !x.is_zero()) {
            return Err(AbError::NotAFresco("standard basis does not close".into()));
        }
        let sj = f[j - 1].clone();
        if sj.coeff(0).is_zero() {
            return Err(AbError::NotAFresco("not generated by a single element".into()));
        }
        let next = vec_scale_series(&f, &sj.inv()?);
        s_list.push(sj);
        es.push(next);
    }
    es.reverse();
    s_list.reverse();
    // rescale so that every S_j(0) = 1: e'_j = κ_j e_j, κ_k = 1, κ_{j−1} = κ_j·S_{j−1}(0)
    let mut kappa = vec![Rat::one(); k];
    for j in (1..k).rev() {
        kappa[j - 1] = &kappa[j] * s_list[j - 1].coeff(0);
    }
    let s_norm: Vec<TruncSeries> = s_list
        .iter()
        .map(|s| s.scale(&s.coeff(0).recip().unwrap()))
        .collect();
    // back to the coordinates of E
    let u_mat = matrix_from_columns(&jh.basis.iter().map(|u| vec_truncate(u, order)).collect::<Vec<_>>());
    let basis: Vec<ModuleVec> = es
        .iter()
        .zip(&kappa)
        .map(|(ej, kj)| {
            let in_u: ModuleVec = ej.iter().zip(&scale).map(|(x, s)| x.mul(s).scale(kj)).collect();
            super::series_matrix_vec(&u_mat, &in_u)
        })
        .collect();
    debug_assert!(!basis.iter().any(|b| vec_is_zero(b)));
    let pres = FrescoPresentation::new(lambdas[0].clone(), p, s_norm, order)?;
    Ok((pres, basis))
}
