//! Univariate polynomials over Q, coefficients in ascending degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rat::one()])
    }

    /// z + c
    pub fn linear(c: Rat) -> Self {
        Poly::new(vec![c, Rat::one()])
    }

    /// Monic polynomial with the given roots (with repetition).
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |p, r| p.mul(&Poly::linear(-r)))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        Poly::new(c)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by (z − r); returns the quotient if r is a root.
    fn deflate(&self, r: &Rat) -> Option<Poly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut q = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for i in (1..n).rev() {
            carry = &carry * r + &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        let rem = carry * r + &self.coeffs[0];
        rem.is_zero().then(|| Poly::new(q))
    }

    /// All rational roots with multiplicity, ascending. Also returns the
    /// leftover factor without rational roots.
    pub fn rational_roots(&self) -> (Vec<Rat>, Poly) {
        let mut p = self.clone();
        let mut roots = Vec::new();
        while p.coeffs.first().is_some_and(Rat::is_zero) {
            roots.push(Rat::zero());
            p = Poly::new(p.coeffs[1..].to_vec());
        }
        loop {
            let Some(deg) = p.degree() else { break };
            if deg == 0 {
                break;
            }
            let l = Rat::lcm_denominators(p.coeffs.iter());
            let ints: Vec<BigInt> = p
                .coeffs
                .iter()
                .map(|c| (c * Rat::from(l.clone())).numer().clone())
                .collect();
            let found = candidates(&ints[0], &ints[deg])
                .into_iter()
                .find(|r| p.eval(r).is_zero());
            match found {
                Some(r) => {
                    p = p.deflate(&r).expect("root deflates");
                    roots.push(r);
                }
                None => break,
            }
        }
        roots.sort();
        (roots, p)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

fn candidates(a0: &BigInt, an: &BigInt) -> Vec<Rat> {
    let mut out = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            let r = Rat::checked_new(p.clone(), q).expect("nonzero divisor");
            out.push(-&r);
            out.push(r);
        }
    }
    if a0.is_zero() {
        out.push(Rat::zero());
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}·z")?,
                _ if c.is_one() => write!(f, "z^{n}")?,
                _ => write!(f, "{c}·z^{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
