use crate::error::{AbError, Result};
use crate::linalg::Matrix;
use crate::rational::Rat;
use crate::series::TruncSeries;

use super::{AbModule, SeriesMatrix};

/// For a simple pole module with A = b(λ·Id + N) + b²Σ_j Z_j b^j, N the
/// nilpotent shift, finds P with P(0) = Id taking E to Ξ_λ.
///
/// P_ν solves N·P_ν − P_ν·N + ν·P_ν = −Σ_{j<ν} Z_j·P_{ν−1−j}; the left side
/// is ν + ad_N with ad_N nilpotent, inverted by a finite Neumann series.
pub fn simple_pole_normalize(e: &AbModule, lambda: &Rat) -> Result<(SeriesMatrix, AbModule)> {
    let k = e.rank();
    let order = e.order();
    if !e.is_simple_pole() {
        return Err(AbError::WrongShape);
    }
    let mut shift = Matrix::zeros(k, k);
    for j in 1..k {
        shift.data[j - 1][j] = Rat::one();
    }
    let expected = Matrix::identity(k).scale(lambda).add(&shift);
    if e.action_at(1) != expected {
        return Err(AbError::WrongShape);
    }
    let z: Vec<Matrix> = (0..order.saturating_sub(2)).map(|j| e.action_at(j + 2)).collect();
    let ad = |x: &Matrix| shift.mul(x).sub(&x.mul(&shift));
    let mut p = vec![Matrix::identity(k)];
    for nu in 1..order {
        let mut r = Matrix::zeros(k, k);
        for j in 0..nu {
            if j < z.len() && !z[j].is_zero() {
                r = r.sub(&z[j].mul(&p[nu - 1 - j]));
            }
        }
        let inv_nu = Rat::new(1, nu as i64);
        let mut term = r.scale(&inv_nu);
        let mut x = term.clone();
        for _ in 0..2 * k {
            term = ad(&term).scale(&-&inv_nu);
            if term.is_zero() {
                break;
            }
            x = x.add(&term);
        }
        p.push(x);
    }
    let pm: SeriesMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| TruncSeries::new(p.iter().map(|m| m.data[i][j].clone()).collect(), order))
                .collect()
        })
        .collect();
    let normalized = e.change_basis(&pm)?;
    Ok((pm, normalized))
}
