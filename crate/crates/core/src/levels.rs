//! Linear systems over Q[[b]] solved one power of b at a time.
//!
//! The unknown is x = Σ x_n b^n with x_n ∈ Q^d and the n-th equation only
//! involves x_0..x_n. Solving through level N−1 gives the affine space of
//! solutions on the finite model; its top levels may carry spurious freedom,
//! which callers remove by projecting to fewer levels.

use crate::error::{AbError, Result};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;

/// Levels of a vector: `x[n]` is the coefficient vector of b^n.
pub type Levels = Vec<Vector>;

pub trait LevelMap {
    /// Unknowns per level.
    fn dim(&self) -> usize;
    /// Equations per level.
    fn eq_dim(&self) -> usize;
    /// Coefficient of b^n in L(x), where `x` holds levels 0..=n.
    fn apply_level(&self, x: &[Vector], n: usize) -> Vector;
}

#[derive(Clone, Debug)]
pub struct LevelSolution {
    pub levels: usize,
    pub particular: Levels,
    pub homogeneous: Vec<Levels>,
}

fn axpy(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

/// Solves L(x) = rhs on levels 0..levels. `rhs(n)` gives the n-th level of
/// the right-hand side (`None` for a homogeneous system).
pub fn solve_levels(
    map: &dyn LevelMap,
    rhs: Option<&dyn Fn(usize) -> Vector>,
    levels: usize,
) -> Result<LevelSolution> {
    let d = map.dim();
    let e = map.eq_dim();
    let zero = vec![Rat::zero(); d];
    let mut particular: Levels = Vec::new();
    let mut homogeneous: Vec<Levels> = Vec::new();
    for n in 0..levels {
        let with_zero = |x: &Levels| {
            let mut y = x.clone();
            y.push(zero.clone());
            y
        };
        let mut cols: Vec<Vector> = homogeneous
            .iter()
            .map(|h| map.apply_level(&with_zero(h), n))
            .collect();
        for j in 0..d {
            let mut unit = vec![zero.clone(); n + 1];
            unit[n][j] = Rat::one();
            cols.push(map.apply_level(&unit, n));
        }
        let mut target = map.apply_level(&with_zero(&particular), n);
        for t in target.iter_mut() {
            *t = -&*t;
        }
        if let Some(r) = rhs {
            for (t, v) in target.iter_mut().zip(r(n)) {
                *t += &v;
            }
        }
        let m = Matrix::from_cols(&cols, e);
        let Some(sol) = m.solve(&target) else {
            return Err(AbError::Obstruction(n));
        };
        let s = homogeneous.len();
        let combine = |coef: &[Rat], base: Option<&Levels>| -> Levels {
            let mut out: Levels = match base {
                Some(b) => with_zero(b),
                None => vec![zero.clone(); n + 1],
            };
            for (c, h) in coef[..s].iter().zip(&homogeneous) {
                for (lvl, hv) in out.iter_mut().zip(h) {
                    axpy(lvl, c, hv);
                }
            }
            for (j, c) in coef[s..].iter().enumerate() {
                out[n][j] += c;
            }
            out
        };
        let new_part = combine(&sol, Some(&particular));
        let new_hom: Vec<Levels> = m.nullspace().iter().map(|v| combine(v, None)).collect();
        particular = new_part;
        homogeneous = new_hom;
    }
    Ok(LevelSolution {
        levels,
        particular,
        homogeneous,
    })
}

pub fn flatten(x: &[Vector], levels: usize) -> Vector {
    x.iter().take(levels).flatten().cloned().collect()
}

/// Index of the first nonzero level.
pub fn level_valuation(x: &[Vector]) -> Option<usize> {
    x.iter().position(|v| v.iter().any(|c| !c.is_zero()))
}

impl LevelSolution {
    /// Number of leading levels on which the solution is unique.
    pub fn unique_prefix(&self) -> usize {
        self.homogeneous
            .iter()
            .map(|h| level_valuation(h).unwrap_or(self.levels))
            .min()
            .unwrap_or(self.levels)
    }

    /// Dimension of the homogeneous space projected to the first m levels.
    pub fn projected_rank(&self, m: usize) -> usize {
        if self.homogeneous.is_empty() || m == 0 {
            return 0;
        }
        Matrix::from_rows(self.homogeneous.iter().map(|h| flatten(h, m)).collect()).rank()
    }

    /// Homogeneous solutions whose projections to the first m levels are
    /// independent and span the projected space, reduced to echelon form so
    /// the choice is canonical.
    pub fn projected_basis(&self, m: usize) -> Vec<Levels> {
        if self.homogeneous.is_empty() || m == 0 {
            return Vec::new();
        }
        let rows: Vec<Vector> = self.homogeneous.iter().map(|h| flatten(h, m)).collect();
        // rows of Hᵀ-combinations: row-reduce [proj | coefficients]
        let s = rows.len();
        let width = rows[0].len();
        let aug: Vec<Vector> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..s).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                r
            })
            .collect();
        let (red, pivots) = Matrix::from_rows(aug).rref();
        let rank = pivots.iter().take_while(|&&c| c < width).count();
        red.data
            .iter()
            .take(rank)
            .map(|row| {
                let coef = &row[width..];
                let mut out: Levels = vec![vec![Rat::zero(); self.homogeneous[0][0].len()]; self.levels];
                for (c, h) in coef.iter().zip(&self.homogeneous) {
                    for (lvl, hv) in out.iter_mut().zip(h) {
                        axpy(lvl, c, hv);
                    }
                }
                out
            })
            .collect()
    }
}
