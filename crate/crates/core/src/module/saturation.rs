//! E♯: the smallest Q[[b]]-lattice containing E and stable under b⁻¹a.
//!
//! Stability only has to be tested modulo b·E, so the search runs in the
//! finite Q-space b^{−G−1}E / bE. The Bernstein polynomial is the
//! characteristic polynomial of −b⁻¹a on E♯/bE♯.

use crate::error::{AbError, Result};
use crate::linalg::{Matrix, Vector};
use crate::poly::Poly;
use crate::rational::Rat;
use crate::series::TruncSeries;

use super::{matrix_from_columns, solve_series_system, AbModule, ModuleVec};

#[derive(Clone, Debug)]
pub struct Saturation {
    /// E♯ in the basis b^{−shift}·w_i.
    pub esharp: AbModule,
    pub basis: Vec<ModuleVec>,
    pub shift: usize,
    pub bernstein: Poly,
    pub minimal: Poly,
    /// Matrix of b⁻¹a on E♯/bE♯.
    pub residue: Matrix,
}

struct Space {
    k: usize,
    /// levels m = −depth..=0
    depth: usize,
}

impl Space {
    fn len(&self) -> usize {
        self.k * (self.depth + 1)
    }
    fn idx(&self, m: i64, j: usize) -> Option<usize> {
        let t = m + self.depth as i64;
        (t >= 0 && m <= 0).then(|| t as usize * self.k + j)
    }
    fn level(&self, i: usize) -> i64 {
        (i / self.k) as i64 - self.depth as i64
    }

    /// b⁻¹a modulo bE: T(b^m c) = Σ_i b^{m+i−1}A_i c + m·b^m c.
    fn t(&self, e: &AbModule, y: &[Rat]) -> Result<Vector> {
        let mut out = vec![Rat::zero(); self.len()];
        for (pos, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m, j) = (self.level(pos), pos % self.k);
            if m != 0 {
                out[pos] += &(c * Rat::int(m));
            }
            for i in 0..=(1 - m) as usize {
                let lvl = m + i as i64 - 1;
                for r in 0..self.k {
                    let a = e.entry(r, j).coeff(i);
                    if a.is_zero() {
                        continue;
                    }
                    match self.idx(lvl, r) {
                        Some(q) => out[q] += &(&a * c),
                        None => return Err(AbError::NotRegular),
                    }
                }
            }
        }
        Ok(out)
    }

    fn times_b(&self, y: &[Rat]) -> Vector {
        let mut out = vec![Rat::zero(); self.len()];
        for (pos, c) in y.iter().enumerate() {
            if let Some(q) = self.idx(self.level(pos) + 1, pos % self.k) {
                out[q] = c.clone();
            }
        }
        out
    }
}

fn in_span(rows: &[Vector], v: &[Rat]) -> bool {
    if rows.is_empty() {
        return v.iter().all(Rat::is_zero);
    }
    let m = Matrix::from_rows(rows.to_vec());
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    Matrix::from_rows(with).rank() == m.rank()
}

pub fn saturate_and_bernstein(e: &AbModule, guard: usize) -> Result<Saturation> {
    let k = e.rank();
    let depth = guard + 1;
    if e.order() < depth + 2 {
        return Err(AbError::InsufficientOrder {
            needed: depth + 2,
            have: e.order(),
        });
    }
    let sp = Space { k, depth };
    let mut basis: Vec<Vector> = (0..k)
        .map(|j| {
            let mut v = vec![Rat::zero(); sp.len()];
            v[sp.idx(0, j).unwrap()] = Rat::one();
            v
        })
        .collect();
    let mut queue = basis.clone();
    while let Some(y) = queue.pop() {
        for z in [sp.t(e, &y)?, sp.times_b(&y)] {
            if !in_span(&basis, &z) {
                basis.push(z.clone());
                queue.push(z);
            }
        }
        if basis.len() > sp.len() {
            return Err(AbError::NotRegular);
        }
    }
    // complement of b·L inside L
    let bl: Vec<Vector> = basis.iter().map(|y| sp.times_b(y)).collect();
    let mut bl_basis: Vec<Vector> = Vec::new();
    for v in bl {
        if !in_span(&bl_basis, &v) {
            bl_basis.push(v);
        }
    }
    let mut reps: Vec<Vector> = Vec::new();
    for y in &basis {
        let mut trial = bl_basis.clone();
        trial.extend(reps.iter().cloned());
        if !in_span(&trial, y) {
            reps.push(y.clone());
        }
    }
    if reps.len() != k {
        return Err(AbError::NotRegular);
    }
    // coordinates of T(y_i) in reps modulo bL
    let mut cols = reps.clone();
    cols.extend(bl_basis.iter().cloned());
    let sys = Matrix::from_cols(&cols, sp.len());
    let mut c = Matrix::zeros(k, k);
    for (i, y) in reps.iter().enumerate() {
        let ty = sp.t(e, y)?;
        let x = sys.solve(&ty).ok_or(AbError::NotRegular)?;
        for j in 0..k {
            c.data[j][i] = x[j].clone();
        }
    }
    let neg = c.scale(&-Rat::one());
    let bernstein = neg.charpoly();
    let minimal = neg.minpoly();

    // E♯ as a module in the basis b^{−depth}·w_i, w_i ∈ E
    let order = e.order();
    let w: Vec<ModuleVec> = reps
        .iter()
        .map(|y| {
            (0..k)
                .map(|j| {
                    let coeffs: Vec<Rat> = (0..=depth)
                        .map(|t| y[t * k + j].clone())
                        .collect();
                    TruncSeries::new(coeffs, order)
                })
                .collect()
        })
        .collect();
    let wm = matrix_from_columns(&w);
    let s = Rat::int(depth as i64);
    let mut cols_out: Vec<ModuleVec> = Vec::new();
    let mut out_order = order;
    for wi in &w {
        // a(b^{−s}w) = b^{−s}(a w − s·b·w)
        let aw = e.apply_a(wi);
        let rhs: ModuleVec = aw
            .iter()
            .zip(wi)
            .map(|(x, y)| x.sub(&y.shift(1).scale(&s)))
            .collect();
        let (x, ord) = solve_series_system(&wm, &rhs)?;
        out_order = out_order.min(ord);
        cols_out.push(x);
    }
    let action: Vec<Vec<TruncSeries>> = (0..k)
        .map(|i| cols_out.iter().map(|c| c[i].truncate(out_order)).collect())
        .collect();
    Ok(Saturation {
        esharp: AbModule::new(action, out_order),
        basis: w,
        shift: depth,
        bernstein,
        minimal,
        residue: c,
    })
}

/// λ_1..λ_k recovered from the Bernstein roots: the values λ_j + j − 1 are
/// the numbers k − 1 − r over the roots r, and sorting them gives the λ_j.
pub fn fundamental_invariants(e: &AbModule) -> Result<Vec<Rat>> {
    let k = e.rank();
    let sat = saturate_and_bernstein(e, k + 1)?;
    let (roots, rest) = sat.bernstein.rational_roots();
    if rest.degree() != Some(0) {
        return Err(AbError::NotAFresco("Bernstein polynomial has irrational roots".into()));
    }
    let mut vals: Vec<Rat> = roots
        .iter()
        .map(|r| Rat::int(k as i64 - 1) - r)
        .collect();
    vals.sort();
    Ok(vals
        .iter()
        .enumerate()
        .map(|(j, v)| v - Rat::int(j as i64))
        .collect())
}
