use serde::{Deserialize, Serialize};

use crate::series::TruncSeries;

/// Largest ν with v ∈ Φ_ν, where Φ_{kn+h} = a^h·b^n·E + b^{n+1}·E.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Weight {
    Finite(usize),
    Infinite,
}

/// Weight of a vector given in the standard basis e_1..e_k of a fresco,
/// where b^n·e_j has weight k·n + (k − j).
pub fn phi_weight(v: &[TruncSeries]) -> Weight {
    let k = v.len();
    let mut best: Option<usize> = None;
    for (j, s) in v.iter().enumerate() {
        if let Some(n) = s.valuation() {
            let w = k * n + (k - 1 - j);
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best.map_or(Weight::Infinite, Weight::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn generator_and_zero() {
        let n = 6;
        let e = |j: usize, p: usize| {
            let mut v = vec![TruncSeries::zero(n); 3];
            v[j] = TruncSeries::monomial(rat!(1), p, n);
            v
        };
        assert_eq!(phi_weight(&e(2, 0)), Weight::Finite(0));
        assert_eq!(phi_weight(&e(0, 0)), Weight::Finite(2));
        assert_eq!(phi_weight(&e(2, 1)), Weight::Finite(3));
        assert_eq!(phi_weight(&vec![TruncSeries::zero(n); 3]), Weight::Infinite);
    }
}
