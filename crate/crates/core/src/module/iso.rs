use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::levels::{solve_levels, LevelMap};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rat;
use crate::series::TruncSeries;

use super::{AbModule, SeriesMatrix, KERNEL_GUARD};

/// Φ with A_F·Φ + b²Φ′ = Φ·A_E and Φ(0) invertible, i.e. the matrix of an
/// isomorphism E → F (column j is the image of e_j).
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub phi: SeriesMatrix,
}

struct Intertwiner<'a> {
    e: &'a AbModule,
    f: &'a AbModule,
}

impl LevelMap for Intertwiner<'_> {
    fn dim(&self) -> usize {
        self.e.rank() * self.e.rank()
    }
    fn eq_dim(&self) -> usize {
        self.dim()
    }
    fn apply_level(&self, x: &[Vector], n: usize) -> Vector {
        let k = self.e.rank();
        let mut out = vec![Rat::zero(); k * k];
        for (m, xm) in x.iter().enumerate().take(n + 1) {
            if xm.iter().all(Rat::is_zero) {
                continue;
            }
            let i = n - m;
            let af = self.f.action_at(i);
            let ae = self.e.action_at(i);
            for r in 0..k {
                for c in 0..k {
                    let mut acc = Rat::zero();
                    for t in 0..k {
                        let a = af.get(r, t);
                        let p = &xm[t * k + c];
                        if !a.is_zero() && !p.is_zero() {
                            acc += &(a * p);
                        }
                        let p = &xm[r * k + t];
                        let a = ae.get(t, c);
                        if !a.is_zero() && !p.is_zero() {
                            acc -= &(p * a);
                        }
                    }
                    out[r * k + c] += &acc;
                }
            }
        }
        if n >= 1 {
            let f = Rat::int(n as i64 - 1);
            for (o, x) in out.iter_mut().zip(&x[n - 1]) {
                *o += &(&f * x);
            }
        }
        out
    }
}

/// Searches the intertwiners for one with invertible constant term: the
/// projected basis first, then a few seeded random combinations.
pub fn modules_isomorphic(e: &AbModule, f: &AbModule) -> Result<Option<Isomorphism>> {
    if e.rank() != f.rank() {
        return Ok(None);
    }
    let k = e.rank();
    let order = e.order().min(f.order());
    let (e, f) = (e.truncate(order), f.truncate(order));
    let sol = solve_levels(&Intertwiner { e: &e, f: &f }, None, order)?;
    let basis = sol.projected_basis(1);
    if basis.is_empty() {
        return Ok(None);
    }
    let phi0 = |h: &[Vector]| {
        Matrix::from_rows((0..k).map(|r| h[0][r * k..(r + 1) * k].to_vec()).collect())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(super::jh::TIE_SEED);
    let mut trials: Vec<Vec<Vector>> = basis.clone();
    for _ in 0..8 {
        let mut combo = vec![vec![Rat::zero(); k * k]; order];
        for h in &basis {
            let c = Rat::int(rng.gen_range(-9..=9));
            for (lvl, hv) in combo.iter_mut().zip(h) {
                for (a, x) in lvl.iter_mut().zip(hv) {
                    *a += &(&c * x);
                }
            }
        }
        trials.push(combo);
    }
    let keep = order - KERNEL_GUARD;
    for h in trials {
        if phi0(&h).det().is_zero() {
            continue;
        }
        let phi = (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        TruncSeries::new(h.iter().take(keep).map(|l| l[r * k + c].clone()).collect(), keep)
                    })
                    .collect()
            })
            .collect();
        return Ok(Some(Isomorphism { phi }));
    }
    Ok(None)
}
