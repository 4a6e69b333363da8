//! Free finite-rank modules over Q[[b]] with an action of a satisfying
//! a(S·v) = S·a(v) + b²S′·v.
//!
//! In the basis e_1..e_k the action is a matrix A of series, column j being
//! a(e_j), so a(v) = A·v + b²·v′ on coordinate vectors.

mod filtration;
mod iso;
mod jh;
mod kernel;
mod normal;
mod saturation;

pub use filtration::{phi_weight, Weight};
pub use iso::{modules_isomorphic, Isomorphism};
pub use jh::{
    jh_subquotient, principal_jh, quotient_by_normal_rank1, standard_presentation,
    JordanHolderData,
};
pub(crate) use jh::{standard_from_jh, subquotient_of};
pub use kernel::{delta_and_depth, delta_and_depth_module, kernel_dim, KernelInfo, KERNEL_GUARD};
pub use normal::simple_pole_normalize;
pub use saturation::{fundamental_invariants, saturate_and_bernstein, Saturation};

use serde::{Deserialize, Serialize};

use crate::error::{AbError, Result};
use crate::levels::{LevelMap, Levels};
use crate::linalg::{Matrix, Vector};
use crate::ore::OreOperator;
use crate::rational::Rat;
use crate::series::TruncSeries;

/// Coordinates of an element in the module basis.
pub type ModuleVec = Vec<TruncSeries>;

/// k×k matrix of series, row-major.
pub type SeriesMatrix = Vec<Vec<TruncSeries>>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawModule", into = "RawModule")]
pub struct AbModule {
    order: usize,
    action: SeriesMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    rank: usize,
    order: usize,
    action: Vec<Vec<Vec<Rat>>>,
}

impl TryFrom<RawModule> for AbModule {
    type Error = AbError;
    fn try_from(r: RawModule) -> Result<Self> {
        if r.action.len() != r.rank || r.action.iter().any(|row| row.len() != r.rank) {
            return Err(AbError::Validation("action must be rank × rank".into()));
        }
        if r.action.iter().flatten().any(|s| s.len() > r.order) {
            return Err(AbError::Validation("series longer than order".into()));
        }
        Ok(AbModule::new(
            r.action
                .into_iter()
                .map(|row| row.into_iter().map(|s| TruncSeries::new(s, r.order)).collect())
                .collect(),
            r.order,
        ))
    }
}

impl From<AbModule> for RawModule {
    fn from(m: AbModule) -> Self {
        RawModule {
            rank: m.rank(),
            order: m.order,
            action: m
                .action
                .iter()
                .map(|row| row.iter().map(|s| s.coeffs().to_vec()).collect())
                .collect(),
        }
    }
}

impl AbModule {
    pub fn new(action: SeriesMatrix, order: usize) -> Self {
        let k = action.len();
        assert!(action.iter().all(|r| r.len() == k), "action must be square");
        let action = action
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.truncate(order)).collect())
            .collect();
        AbModule { order, action }
    }

    pub fn rank(&self) -> usize {
        self.action.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn action(&self) -> &SeriesMatrix {
        &self.action
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncSeries {
        &self.action[i][j]
    }

    pub fn truncate(&self, order: usize) -> Self {
        AbModule::new(self.action.clone(), order)
    }

    /// The rank one module E_λ: a·e = λ·b·e.
    pub fn e_lambda(lambda: &Rat, order: usize) -> Self {
        AbModule::new(vec![vec![TruncSeries::monomial(lambda.clone(), 1, order)]], order)
    }

    /// Ξ_λ^{(p)}: a·e_0 = λb·e_0 and a·e_j = λb·e_j + b·e_{j−1}.
    pub fn xi(lambda: &Rat, p: usize, order: usize) -> Self {
        let k = p + 1;
        let mut a = vec![vec![TruncSeries::zero(order); k]; k];
        for j in 0..k {
            a[j][j] = TruncSeries::monomial(lambda.clone(), 1, order);
            if j > 0 {
                a[j - 1][j] = TruncSeries::monomial(Rat::one(), 1, order);
            }
        }
        AbModule::new(a, order)
    }

    pub fn basis_vector(&self, j: usize) -> ModuleVec {
        let mut v = vec![TruncSeries::zero(self.order); self.rank()];
        v[j] = TruncSeries::one(self.order);
        v
    }

    pub fn zero_vector(&self) -> ModuleVec {
        vec![TruncSeries::zero(self.order); self.rank()]
    }

    /// a(v) = A·v + b²·v′
    pub fn apply_a(&self, v: &[TruncSeries]) -> ModuleVec {
        (0..self.rank())
            .map(|i| {
                let mut acc = v[i].b2_derivative();
                for (a, x) in self.action[i].iter().zip(v) {
                    if !x.is_zero() && !a.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply_operator(&self, p: &OreOperator, v: &[TruncSeries]) -> ModuleVec {
        let mut out = self.zero_vector();
        let mut cur = v.to_vec();
        for (j, s) in p.coeffs().iter().enumerate() {
            if j > 0 {
                cur = self.apply_a(&cur);
            }
            if !s.is_zero() {
                out = vec_add(&out, &vec_scale_series(&cur, s));
            }
        }
        out
    }

    /// Coefficient of b^n in (a − μb)(x) for x given by levels 0..=n.
    pub fn shifted_action_level(&self, x: &[Vector], mu: &Rat, n: usize) -> Vector {
        let k = self.rank();
        let mut out = vec![Rat::zero(); k];
        for (m, xm) in x.iter().enumerate().take(n + 1) {
            let i = n - m;
            for (r, o) in out.iter_mut().enumerate() {
                for (c, xc) in xm.iter().enumerate() {
                    if xc.is_zero() {
                        continue;
                    }
                    if let Some(a) = self.action[r][c].coeff_ref(i) {
                        if !a.is_zero() {
                            *o += &(a * xc);
                        }
                    }
                }
            }
        }
        if n >= 1 {
            let f = Rat::int(n as i64 - 1) - mu;
            if !f.is_zero() {
                for (o, x) in out.iter_mut().zip(&x[n - 1]) {
                    *o += &(&f * x);
                }
            }
        }
        out
    }

    /// a(e_j) = Σ_i A_ij e_i read as the constant term of A.
    pub fn action_at(&self, n: usize) -> Matrix {
        Matrix::from_rows(
            self.action
                .iter()
                .map(|row| row.iter().map(|s| s.coeff(n)).collect())
                .collect(),
        )
    }

    /// a·E ⊂ b·E
    pub fn is_simple_pole(&self) -> bool {
        self.action_at(0).is_zero()
    }

    /// The module in the basis given by the columns of P (P(0) invertible):
    /// new action P⁻¹·(A·P + b²·P′).
    pub fn change_basis(&self, p: &SeriesMatrix) -> Result<Self> {
        let order = self.order;
        let pinv = series_matrix_inverse(p)?;
        let k = self.rank();
        let ap = series_matrix_mul(&self.action, p);
        let mut m = ap;
        for i in 0..k {
            for j in 0..k {
                m[i][j] = m[i][j].add(&p[i][j].b2_derivative());
            }
        }
        let out = series_matrix_mul(&pinv, &m);
        Ok(AbModule::new(out, order))
    }

    /// Pushes the vector through a change of basis: coordinates in the new basis.
    pub fn coords_in_basis(p: &SeriesMatrix, v: &[TruncSeries]) -> Result<ModuleVec> {
        let pinv = series_matrix_inverse(p)?;
        Ok(series_matrix_vec(&pinv, v))
    }
}

/// The level map of v ↦ (a − μb)v.
pub(crate) struct ShiftedAction<'a> {
    pub module: &'a AbModule,
    pub mu: Rat,
}

impl LevelMap for ShiftedAction<'_> {
    fn dim(&self) -> usize {
        self.module.rank()
    }
    fn eq_dim(&self) -> usize {
        self.module.rank()
    }
    fn apply_level(&self, x: &[Vector], n: usize) -> Vector {
        self.module.shifted_action_level(x, &self.mu, n)
    }
}

pub fn vec_add(a: &[TruncSeries], b: &[TruncSeries]) -> ModuleVec {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[TruncSeries], b: &[TruncSeries]) -> ModuleVec {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(a: &[TruncSeries], c: &Rat) -> ModuleVec {
    a.iter().map(|x| x.scale(c)).collect()
}

pub fn vec_scale_series(a: &[TruncSeries], s: &TruncSeries) -> ModuleVec {
    a.iter().map(|x| x.mul(s)).collect()
}

pub fn vec_truncate(a: &[TruncSeries], order: usize) -> ModuleVec {
    a.iter().map(|x| x.truncate(order)).collect()
}

pub fn vec_is_zero(a: &[TruncSeries]) -> bool {
    a.iter().all(TruncSeries::is_zero)
}

/// Constant terms of the coordinates.
pub fn vec_reduction(a: &[TruncSeries]) -> Vector {
    a.iter().map(|x| x.coeff(0)).collect()
}

pub fn levels_to_vec(x: &Levels, k: usize, order: usize) -> ModuleVec {
    (0..k)
        .map(|i| TruncSeries::new(x.iter().take(order).map(|l| l[i].clone()).collect(), order))
        .collect()
}

pub fn vec_to_levels(v: &[TruncSeries]) -> Levels {
    let order = v.iter().map(TruncSeries::order).min().unwrap_or(0);
    (0..order)
        .map(|n| v.iter().map(|s| s.coeff(n)).collect())
        .collect()
}

pub fn series_matrix_mul(a: &SeriesMatrix, b: &SeriesMatrix) -> SeriesMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let order = a
        .iter()
        .chain(b)
        .flatten()
        .map(TruncSeries::order)
        .min()
        .unwrap_or(0);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = TruncSeries::zero(order);
                    for (k, bk) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !bk[j].is_zero() {
                            acc = acc.add(&a[i][k].mul(&bk[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn series_matrix_vec(a: &SeriesMatrix, v: &[TruncSeries]) -> ModuleVec {
    let col: SeriesMatrix = v.iter().map(|s| vec![s.clone()]).collect();
    series_matrix_mul(a, &col).into_iter().map(|r| r[0].clone()).collect()
}

/// Columns → matrix.
pub fn matrix_from_columns(cols: &[ModuleVec]) -> SeriesMatrix {
    let k = cols.first().map_or(0, Vec::len);
    (0..k)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Inverse of a series matrix with invertible constant term.
pub fn series_matrix_inverse(p: &SeriesMatrix) -> Result<SeriesMatrix> {
    let k = p.len();
    let order = p.iter().flatten().map(TruncSeries::order).min().unwrap_or(0);
    let coeff = |n: usize| {
        Matrix::from_rows(
            p.iter()
                .map(|row| row.iter().map(|s| s.coeff(n)).collect())
                .collect(),
        )
    };
    let p0inv = coeff(0).inverse().ok_or(AbError::NotInvertible)?;
    let pn: Vec<Matrix> = (0..order).map(coeff).collect();
    let mut x: Vec<Matrix> = vec![p0inv.clone()];
    for n in 1..order {
        let mut acc = Matrix::zeros(k, k);
        for i in 1..=n {
            if !pn[i].is_zero() {
                acc = acc.add(&pn[i].mul(&x[n - i]));
            }
        }
        x.push(p0inv.mul(&acc).scale(&-Rat::one()));
    }
    Ok((0..k)
        .map(|i| {
            (0..k)
                .map(|j| TruncSeries::new(x.iter().map(|m| m.data[i][j].clone()).collect(), order))
                .collect()
        })
        .collect())
}

/// A fresco given by λ1, the gaps p_j and the series S_j (S_j(0) = 1):
/// a·e_j = λ_j·b·e_j + S_{j−1}·e_{j−1}, with λ_{j+1} = λ_j + p_j − 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct FrescoPresentation {
    pub lambda1: Rat,
    pub p: Vec<usize>,
    pub s: Vec<TruncSeries>,
    pub order: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    lambda1: Rat,
    p: Vec<usize>,
    #[serde(rename = "S")]
    s: Vec<Vec<Rat>>,
    order: usize,
}

impl TryFrom<RawPresentation> for FrescoPresentation {
    type Error = AbError;
    fn try_from(r: RawPresentation) -> Result<Self> {
        if r.s.iter().any(|c| c.len() > r.order) {
            return Err(AbError::Validation("series longer than order".into()));
        }
        FrescoPresentation::new(
            r.lambda1,
            r.p,
            r.s.into_iter().map(|c| TruncSeries::new(c, r.order)).collect(),
            r.order,
        )
    }
}

impl From<FrescoPresentation> for RawPresentation {
    fn from(f: FrescoPresentation) -> Self {
        RawPresentation {
            lambda1: f.lambda1,
            p: f.p,
            s: f.s.iter().map(|s| s.coeffs().to_vec()).collect(),
            order: f.order,
        }
    }
}

impl FrescoPresentation {
    pub fn new(lambda1: Rat, p: Vec<usize>, s: Vec<TruncSeries>, order: usize) -> Result<Self> {
        if p.len() != s.len() {
            return Err(AbError::Validation(format!(
                "{} gaps but {} series",
                p.len(),
                s.len()
            )));
        }
        if order == 0 {
            return Err(AbError::Validation("order must be positive".into()));
        }
        if let Some(j) = s.iter().position(|sj| !sj.coeff(0).is_one()) {
            return Err(AbError::Validation(format!("S_{}(0) must be 1", j + 1)));
        }
        let s = s.into_iter().map(|x| x.with_order(order)).collect();
        Ok(FrescoPresentation {
            lambda1,
            p,
            s,
            order,
        })
    }

    /// Presentation with every S_j = 1.
    pub fn plain(lambda1: Rat, p: Vec<usize>, order: usize) -> Self {
        let s = vec![TruncSeries::one(order); p.len()];
        FrescoPresentation::new(lambda1, p, s, order).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.p.len() + 1
    }

    pub fn lambdas(&self) -> Vec<Rat> {
        let mut out = vec![self.lambda1.clone()];
        for &pj in &self.p {
            let next = out.last().unwrap() + Rat::int(pj as i64 - 1);
            out.push(next);
        }
        out
    }

    /// λ1 > k − 1
    pub fn is_geometric(&self) -> bool {
        self.lambda1 > Rat::int(self.rank() as i64 - 1)
    }

    pub fn operator(&self) -> Result<OreOperator> {
        OreOperator::from_factors(&self.lambdas(), &self.s, self.order)
    }

    pub fn module(&self) -> AbModule {
        let k = self.rank();
        let n = self.order;
        let lambdas = self.lambdas();
        let mut a = vec![vec![TruncSeries::zero(n); k]; k];
        for j in 0..k {
            a[j][j] = TruncSeries::monomial(lambdas[j].clone(), 1, n);
            if j > 0 {
                a[j - 1][j] = self.s[j - 1].clone();
            }
        }
        AbModule::new(a, n)
    }

    pub fn with_order(&self, order: usize) -> Self {
        FrescoPresentation {
            lambda1: self.lambda1.clone(),
            p: self.p.clone(),
            s: self.s.iter().map(|s| s.with_order(order)).collect(),
            order,
        }
    }

    /// B(z) = Π_j (z + λ_j + j − k)
    pub fn bernstein_formula(&self) -> crate::poly::Poly {
        let k = self.rank() as i64;
        let roots: Vec<Rat> = self
            .lambdas()
            .iter()
            .enumerate()
            .map(|(j, l)| -(l + Rat::int(j as i64 + 1 - k)))
            .collect();
        crate::poly::Poly::from_roots(&roots)
    }
}

/// Monic P with P·φ = 0, of degree k, read off the relation
/// a^k φ = Σ_{j<k} T_j·a^j φ.
///
/// When φ, aφ, …, a^{k−1}φ are independent over Q((b)) but not a basis the
/// relation is still solvable at a lower order, which is returned.
pub fn annihilator_of_generator(e: &AbModule, phi: &[TruncSeries]) -> Result<OreOperator> {
    let k = e.rank();
    let mut powers = vec![phi.to_vec()];
    for _ in 0..k {
        let next = e.apply_a(powers.last().unwrap());
        powers.push(next);
    }
    let m = matrix_from_columns(&powers[..k]);
    let target = &powers[k];
    let (t, order) = solve_series_system(&m, target)?;
    let mut coeffs: Vec<TruncSeries> = t.iter().map(|s| s.neg()).collect();
    coeffs.push(TruncSeries::one(order));
    Ok(OreOperator::new(coeffs, order))
}

struct MatrixMap<'a> {
    m: &'a SeriesMatrix,
}

impl LevelMap for MatrixMap<'_> {
    fn dim(&self) -> usize {
        self.m[0].len()
    }
    fn eq_dim(&self) -> usize {
        self.m.len()
    }
    fn apply_level(&self, x: &[Vector], n: usize) -> Vector {
        (0..self.m.len())
            .map(|r| {
                let mut acc = Rat::zero();
                for (lvl, xl) in x.iter().enumerate().take(n + 1) {
                    for (c, xc) in xl.iter().enumerate() {
                        if xc.is_zero() {
                            continue;
                        }
                        if let Some(a) = self.m[r][c].coeff_ref(n - lvl) {
                            if !a.is_zero() {
                                acc += &(a * xc);
                            }
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

/// Solves M·x = y over Q[[b]] for square M with det M ≠ 0. Returns x and the
/// order to which it is determined.
pub fn solve_series_system(m: &SeriesMatrix, y: &[TruncSeries]) -> Result<(ModuleVec, usize)> {
    let k = m.len();
    let order = m
        .iter()
        .flatten()
        .chain(y)
        .map(TruncSeries::order)
        .min()
        .unwrap_or(0);
    let map = MatrixMap { m };
    let rhs = |n: usize| -> Vector { y.iter().map(|s| s.coeff(n)).collect() };
    let sol = crate::levels::solve_levels(&map, Some(&rhs), order)
        .map_err(|_| AbError::NotAGenerator)?;
    let unique = sol.unique_prefix();
    if unique == 0 {
        return Err(AbError::NotAGenerator);
    }
    // the solution is only trusted on levels no homogeneous solution reaches
    Ok((levels_to_vec(&sol.particular, k, unique), unique))
}
