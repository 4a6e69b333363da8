//! Power series in b over Q, truncated at a fixed order N (known mod b^N).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{AbError, Result};
use crate::rational::Rat;

/// `coeffs[n]` is the coefficient of b^n; always exactly `order` entries.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct TruncSeries {
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    order: usize,
    coeffs: Vec<Rat>,
}

impl TryFrom<RawSeries> for TruncSeries {
    type Error = AbError;
    fn try_from(r: RawSeries) -> Result<Self> {
        if r.coeffs.len() > r.order {
            return Err(AbError::Validation(format!(
                "{} coefficients given for order {}",
                r.coeffs.len(),
                r.order
            )));
        }
        Ok(TruncSeries::new(r.coeffs, r.order))
    }
}

impl From<TruncSeries> for RawSeries {
    fn from(s: TruncSeries) -> Self {
        RawSeries {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl TruncSeries {
    /// Pads with zeros or drops terms so that exactly `order` coefficients remain.
    pub fn new(mut coeffs: Vec<Rat>, order: usize) -> Self {
        coeffs.resize(order, Rat::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        TruncSeries::new(c.iter().map(|&x| Rat::int(x)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(Vec::new(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        TruncSeries::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(Rat::one(), order)
    }

    /// c·b^n
    pub fn monomial(c: Rat, n: usize, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        if n < order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of b^n; zero past the stored order.
    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_ref(&self, n: usize) -> Option<&Rat> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, c: Rat) {
        if n < self.order() {
            self.coeffs[n] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` if zero to this order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        TruncSeries::new(self.coeffs[..order].to_vec(), order)
    }

    /// Forget everything from b^order on, allowing order to exceed the current one
    /// only by padding zeros (the caller vouches for exactness).
    pub fn with_order(&self, order: usize) -> Self {
        TruncSeries::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by b^n, same order.
    pub fn shift(&self, n: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); n.min(order)];
        coeffs.extend(self.coeffs.iter().take(order.saturating_sub(n)).cloned());
        TruncSeries { coeffs }
    }

    /// Division by b^n; the first n coefficients must vanish. Loses n orders.
    pub fn unshift(&self, n: usize) -> Result<Self> {
        if self.coeffs.iter().take(n).any(|c| !c.is_zero()) {
            return Err(AbError::Invalid(format!("series not divisible by b^{n}")));
        }
        if n > self.order() {
            return Err(AbError::InsufficientOrder {
                needed: n,
                have: self.order(),
            });
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[n..].to_vec(),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![Rat::zero(); n];
        for (i, x) in self.coeffs.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += &(x * y);
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Coefficient of b^n in the product, without forming it.
    pub fn mul_coeff(&self, o: &Self, n: usize) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..=n {
            let (Some(x), Some(y)) = (self.coeffs.get(i), o.coeffs.get(n - i)) else {
                continue;
            };
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = TruncSeries::one(self.order());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// d/db. The result is exact to one order less.
    pub fn derivative(&self) -> Self {
        TruncSeries {
            coeffs: (1..self.order())
                .map(|n| &self.coeffs[n] * Rat::int(n as i64))
                .collect(),
        }
    }

    /// b²·S′ at the same order (exact: it only needs coefficients below N−1).
    pub fn b2_derivative(&self) -> Self {
        let order = self.order();
        let mut out = vec![Rat::zero(); order];
        for n in 2..order {
            let m = n - 1;
            if !self.coeffs[m].is_zero() {
                out[n] = &self.coeffs[m] * Rat::int(m as i64);
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Primitive with zero constant term, kept at the same order.
    pub fn primitive(&self) -> Self {
        let order = self.order();
        let mut out = vec![Rat::zero(); order];
        for n in 1..order {
            out[n] = &self.coeffs[n - 1] / Rat::int(n as i64);
        }
        TruncSeries { coeffs: out }
    }

    pub fn inv(&self) -> Result<Self> {
        let order = self.order();
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(AbError::NotInvertible);
        }
        let inv0 = c0.recip()?;
        let mut out: Vec<Rat> = Vec::with_capacity(order);
        if order == 0 {
            return Ok(TruncSeries { coeffs: out });
        }
        out.push(inv0.clone());
        for n in 1..order {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// exp(S) for S(0) = 0, via E′ = S′E.
    pub fn exp(&self) -> Result<Self> {
        let order = self.order();
        if !self.coeff(0).is_zero() {
            return Err(AbError::NonzeroConstantTerm);
        }
        let mut out = vec![Rat::zero(); order];
        if order == 0 {
            return Ok(TruncSeries { coeffs: out });
        }
        out[0] = Rat::one();
        for n in 1..order {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(Rat::int(k as i64) * &self.coeffs[k] * &out[n - k]);
                }
            }
            out[n] = acc / Rat::int(n as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// log(S) for S(0) = 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(AbError::Invalid("log needs constant term 1".into()));
        }
        let d = self.derivative().with_order(self.order());
        Ok(d.mul(&self.inv()?).primitive())
    }

    /// Evaluates at a rational point, treating the series as a polynomial.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }
}

/// Solves b·U′ − c·U = F coefficientwise: (n − c)·u_n = f_n.
///
/// When c is a nonnegative integer p below the order, f_p must vanish and
/// u_p takes `resonant`.
pub fn solve_linear_b_ode(c: &Rat, f: &TruncSeries, resonant: &Rat) -> Result<TruncSeries> {
    let order = f.order();
    let mut out = Vec::with_capacity(order);
    for n in 0..order {
        let k = Rat::int(n as i64) - c;
        if k.is_zero() {
            if !f.coeff(n).is_zero() {
                return Err(AbError::Obstruction(n));
            }
            out.push(resonant.clone());
        } else {
            out.push(f.coeff(n) / k);
        }
    }
    Ok(TruncSeries::new(out, order))
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·b")?,
                _ => write!(f, "{c}·b^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(b^{})", self.order())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        TruncSeries::add(self, o)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        TruncSeries::sub(self, o)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        TruncSeries::mul(self, o)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries::neg(self)
    }
}
