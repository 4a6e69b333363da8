//! The algebra generated by a and b with ab − ba = b², elements written in
//! left normal form Σ_j S_j(b)·a^j and truncated in b.
//!
//! Moving a past a series uses a·S = S·a + b²S′, hence
//! a^i·T = Σ_m C(i,m)·D^m(T)·a^{i−m} with D = b²·d/db.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AbError, Result};
use crate::rational::Rat;
use crate::series::{solve_linear_b_ode, TruncSeries};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOperator", into = "RawOperator")]
pub struct OreOperator {
    order: usize,
    /// `coeffs[j]` multiplies a^j; trailing zero coefficients are dropped.
    coeffs: Vec<TruncSeries>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperator {
    a_degree: usize,
    order: usize,
    coeffs: Vec<Vec<Rat>>,
}

impl TryFrom<RawOperator> for OreOperator {
    type Error = AbError;
    fn try_from(r: RawOperator) -> Result<Self> {
        if r.coeffs.len() != r.a_degree + 1 {
            return Err(AbError::Validation(format!(
                "a_degree {} but {} coefficient rows",
                r.a_degree,
                r.coeffs.len()
            )));
        }
        if r.coeffs.iter().any(|c| c.len() > r.order) {
            return Err(AbError::Validation("coefficient row longer than order".into()));
        }
        let coeffs = r
            .coeffs
            .into_iter()
            .map(|c| TruncSeries::new(c, r.order))
            .collect();
        Ok(OreOperator::new(coeffs, r.order))
    }
}

impl From<OreOperator> for RawOperator {
    fn from(op: OreOperator) -> Self {
        RawOperator {
            a_degree: op.coeffs.len().saturating_sub(1),
            order: op.order,
            coeffs: op.coeffs.iter().map(|s| s.coeffs().to_vec()).collect(),
        }
    }
}

fn binomial(n: usize, k: usize) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r = r * Rat::int((n - i) as i64) / Rat::int((i + 1) as i64);
    }
    r
}

impl OreOperator {
    pub fn new(coeffs: Vec<TruncSeries>, order: usize) -> Self {
        let mut coeffs: Vec<TruncSeries> = coeffs
            .into_iter()
            .map(|s| {
                if s.order() >= order {
                    s.truncate(order)
                } else {
                    panic!("coefficient of order {} below operator order {order}", s.order())
                }
            })
            .collect();
        while coeffs.last().is_some_and(TruncSeries::is_zero) {
            coeffs.pop();
        }
        OreOperator { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        OreOperator::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        OreOperator::series(TruncSeries::one(order))
    }

    pub fn series(s: TruncSeries) -> Self {
        let order = s.order();
        OreOperator::new(vec![s], order)
    }

    pub fn a(order: usize) -> Self {
        OreOperator::new(vec![TruncSeries::zero(order), TruncSeries::one(order)], order)
    }

    pub fn b(order: usize) -> Self {
        OreOperator::series(TruncSeries::monomial(Rat::one(), 1, order))
    }

    /// a − λ·b
    pub fn a_minus(lambda: &Rat, order: usize) -> Self {
        OreOperator::new(
            vec![
                TruncSeries::monomial(-lambda, 1, order),
                TruncSeries::one(order),
            ],
            order,
        )
    }

    /// Polynomial Σ c_j a^j with constant coefficients.
    pub fn poly_in_a(c: &[Rat], order: usize) -> Self {
        OreOperator::new(
            c.iter()
                .map(|x| TruncSeries::constant(x.clone(), order))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    /// Coefficient of a^j (zero series past the degree).
    pub fn coeff(&self, j: usize) -> TruncSeries {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| TruncSeries::zero(self.order))
    }

    pub fn a_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|s| *s == TruncSeries::one(self.order))
    }

    /// Smallest b-valuation among the coefficients.
    pub fn b_valuation(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(TruncSeries::valuation).min()
    }

    pub fn truncate(&self, order: usize) -> Self {
        OreOperator::new(self.coeffs.clone(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let n = self.coeffs.len().max(o.coeffs.len());
        OreOperator::new(
            (0..n)
                .map(|j| self.coeff(j).truncate(order).add(&o.coeff(j).truncate(order)))
                .collect(),
            order,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        OreOperator::new(self.coeffs.iter().map(TruncSeries::neg).collect(), self.order)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        OreOperator::new(self.coeffs.iter().map(|s| s.scale(c)).collect(), self.order)
    }

    /// S·P (series on the left is free in normal form).
    pub fn left_series(&self, s: &TruncSeries) -> Self {
        let order = self.order.min(s.order());
        OreOperator::new(
            self.coeffs
                .iter()
                .map(|c| c.truncate(order).mul(&s.truncate(order)))
                .collect(),
            order,
        )
    }

    /// P·S
    pub fn right_series(&self, s: &TruncSeries) -> Self {
        self.mul(&OreOperator::series(s.clone()))
    }

    /// a^i·T in normal form.
    pub fn a_pow_times(i: usize, t: &TruncSeries) -> Self {
        let order = t.order();
        let mut coeffs = vec![TruncSeries::zero(order); i + 1];
        let mut d = t.clone();
        for m in 0..=i {
            coeffs[i - m] = d.scale(&binomial(i, m));
            d = d.b2_derivative();
        }
        OreOperator::new(coeffs, order)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        if self.is_zero() || o.is_zero() {
            return OreOperator::zero(order);
        }
        let deg = self.coeffs.len() - 1 + o.coeffs.len() - 1;
        let mut out = vec![TruncSeries::zero(order); deg + 1];
        let imax = self.coeffs.len() - 1;
        for (j, t) in o.coeffs.iter().enumerate() {
            let mut dm = vec![t.truncate(order)];
            for m in 1..=imax {
                let next = dm[m - 1].b2_derivative();
                dm.push(next);
            }
            for (i, s) in self.coeffs.iter().enumerate() {
                let s = s.truncate(order);
                if s.is_zero() {
                    continue;
                }
                for (m, dmt) in dm.iter().enumerate().take(i + 1) {
                    if dmt.is_zero() {
                        continue;
                    }
                    let term = s.mul(dmt).scale(&binomial(i, m));
                    out[i - m + j] = out[i - m + j].add(&term);
                }
            }
        }
        OreOperator::new(out, order)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(OreOperator::one(self.order), |acc, _| acc.mul(self))
    }

    /// Inverse of an operator S_0 + Σ_{j≥1} S_j·a^j with S_0(0) ≠ 0 and
    /// S_j(0) = 0 for j ≥ 1, as a geometric series truncated at `target`.
    pub fn invert_unit(&self, target: usize) -> Result<Self> {
        let order = target.min(self.order);
        let s0 = self.coeff(0);
        if s0.coeff(0).is_zero() || self.coeffs.iter().skip(1).any(|s| !s.coeff(0).is_zero()) {
            return Err(AbError::NotAUnit);
        }
        let s0 = s0.truncate(order);
        let s0_inv = s0.inv()?;
        // x = S0·(1 − y)
        let y = OreOperator::one(order).sub(&self.truncate(order).left_series(&s0_inv));
        let mut sum = OreOperator::one(order);
        let mut term = OreOperator::one(order);
        for _ in 1..order.max(1) {
            term = term.mul(&y);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        Ok(sum.right_series(&s0_inv))
    }

    /// Q = T·P + R with deg_a R < deg_a P, for monic P.
    pub fn left_divmod(&self, p: &Self) -> Result<(Self, Self)> {
        if !p.is_monic() {
            return Err(AbError::NotMonic);
        }
        let order = self.order.min(p.order);
        let d = p.coeffs.len() - 1;
        let p = p.truncate(order);
        let mut r = self.truncate(order);
        let mut t = OreOperator::zero(order);
        while let Some(m) = r.a_degree() {
            if m < d {
                break;
            }
            let lead = r.coeffs[m].clone();
            let mut c = vec![TruncSeries::zero(order); m - d + 1];
            c[m - d] = lead;
            let step = OreOperator::new(c, order);
            r = r.sub(&step.mul(&p));
            t = t.add(&step);
            debug_assert!(r.a_degree().map_or(true, |k| k < m));
        }
        Ok((t, r))
    }

    /// (a − λ1·b)·S1⁻¹·(a − λ2·b)···S_{k−1}⁻¹·(a − λk·b)
    pub fn from_factors(lambdas: &[Rat], s: &[TruncSeries], order: usize) -> Result<Self> {
        if lambdas.is_empty() || s.len() + 1 != lambdas.len() {
            return Err(AbError::Invalid("need k exponents and k−1 series".into()));
        }
        let mut p = OreOperator::a_minus(&lambdas[0], order);
        for (lambda, sj) in lambdas[1..].iter().zip(s) {
            let inv = sj.truncate(order).inv()?;
            p = p.mul(&OreOperator::series(inv));
            p = p.mul(&OreOperator::a_minus(lambda, order));
        }
        Ok(p)
    }
}

impl fmt::Display for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| match j {
                0 => format!("({s})"),
                1 => format!("({s})·a"),
                _ => format!("({s})·a^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Both sides of the commuting rewrite
/// (a − λ1 b)·S⁻¹·(a − λ2 b) = U⁻¹·(a − (λ2+1)b)·[S·U⁻²]⁻¹·(a − (λ1−1)b)·U⁻¹
/// where λ2 = λ1 + p − 1 and b·U′ = p·(U − S).
#[derive(Clone, Debug)]
pub struct CommutingRewrite {
    pub lambda2: Rat,
    pub u: TruncSeries,
    pub left: OreOperator,
    pub right: OreOperator,
}

impl CommutingRewrite {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn commuting_rewrite(
    lambda1: &Rat,
    p: usize,
    s: &TruncSeries,
    resonant: &Rat,
) -> Result<CommutingRewrite> {
    let order = s.order();
    let pr = Rat::int(p as i64);
    let lambda2 = lambda1 + &pr - Rat::one();
    let u = solve_linear_b_ode(&pr, &s.scale(&-&pr), resonant)?;
    let u_inv = u.inv()?;
    let left = OreOperator::a_minus(lambda1, order)
        .mul(&OreOperator::series(s.inv()?))
        .mul(&OreOperator::a_minus(&lambda2, order));
    let mid = s.mul(&u_inv).mul(&u_inv).inv()?;
    let right = OreOperator::series(u_inv.clone())
        .mul(&OreOperator::a_minus(&(&lambda2 + Rat::one()), order))
        .mul(&OreOperator::series(mid))
        .mul(&OreOperator::a_minus(&(lambda1 - Rat::one()), order))
        .mul(&OreOperator::series(u_inv));
    Ok(CommutingRewrite {
        lambda2,
        u,
        left,
        right,
    })
}

/// Data of the rank three rewrite obtained by commuting twice.
#[derive(Clone, Debug)]
pub struct StandardComputation {
    pub u: TruncSeries,
    pub v: TruncSeries,
    /// Z = U⁻¹
    pub z: TruncSeries,
    /// Coefficient of b^{p2} in S2.
    pub alpha: Rat,
    /// Coefficient of b^{p2} in S1·U⁻²·V.
    pub coeff_p2: Rat,
    /// (p1+p2)·α·p1
    pub variant_product: Rat,
    /// (p1+p2)/p1·α
    pub variant_quotient: Rat,
    /// b(ZV)′ − p2·ZV = p1·S1·U⁻²·V − (p1+p2)·S2
    pub conservation_holds: bool,
    /// P equals U⁻¹(a−(λ2+1)b)[S1U⁻²V]⁻¹(a−(λ3+1)b)[US2V⁻²]⁻¹(a−(λ1−2)b)V⁻¹
    pub operator_identity_holds: bool,
}

impl StandardComputation {
    pub fn matches_product(&self) -> bool {
        self.coeff_p2 == self.variant_product
    }

    pub fn matches_quotient(&self) -> bool {
        self.coeff_p2 == self.variant_quotient
    }
}

pub fn standard_computation(
    lambda1: &Rat,
    p1: usize,
    p2: usize,
    s1: &TruncSeries,
    s2: &TruncSeries,
) -> Result<StandardComputation> {
    let order = s1.order().min(s2.order());
    let (s1, s2) = (s1.truncate(order), s2.truncate(order));
    let (r1, r2, r12) = (
        Rat::int(p1 as i64),
        Rat::int(p2 as i64),
        Rat::int((p1 + p2) as i64),
    );
    let alpha = s2.coeff(p2);
    let u0 = solve_linear_b_ode(&r1, &s1.scale(&-&r1), &Rat::zero())?;
    let u = if alpha.is_zero() {
        u0
    } else {
        // U = U0 + ρ·b^{p1}; kill the b^{p1+p2} coefficient of U·S2
        let rho = -u0.mul(&s2).coeff(p1 + p2) / &alpha;
        let mut u = u0;
        u.set_coeff(p1, rho);
        u
    };
    let us2 = u.mul(&s2);
    let v = solve_linear_b_ode(&r12, &us2.scale(&-&r12), &Rat::zero())?;
    let z = u.inv()?;
    let s1u2v = s1.mul(&z).mul(&z).mul(&v);
    let coeff_p2 = s1u2v.coeff(p2);

    let zv = z.mul(&v);
    let lhs = zv.derivative().with_order(order).shift(1).sub(&zv.scale(&r2));
    let rhs = s1u2v.scale(&r1).sub(&s2.scale(&r12));
    let conservation_holds = lhs == rhs;

    let lambda2 = lambda1 + &r1 - Rat::one();
    let lambda3 = &lambda2 + &r2 - Rat::one();
    let p = OreOperator::from_factors(
        &[lambda1.clone(), lambda2.clone(), lambda3.clone()],
        &[s1.clone(), s2.clone()],
        order,
    )?;
    let v_inv = v.inv()?;
    let q = OreOperator::series(z.clone())
        .mul(&OreOperator::a_minus(&(&lambda2 + Rat::one()), order))
        .mul(&OreOperator::series(s1u2v.inv()?))
        .mul(&OreOperator::a_minus(&(&lambda3 + Rat::one()), order))
        .mul(&OreOperator::series(us2.mul(&v_inv).mul(&v_inv).inv()?))
        .mul(&OreOperator::a_minus(&(lambda1 - Rat::int(2)), order))
        .mul(&OreOperator::series(v_inv));

    Ok(StandardComputation {
        variant_product: &r12 * &alpha * &r1,
        variant_quotient: &r12 / &r1 * &alpha,
        u,
        v,
        z,
        alpha,
        coeff_p2,
        conservation_holds,
        operator_identity_holds: p == q,
    })
}
