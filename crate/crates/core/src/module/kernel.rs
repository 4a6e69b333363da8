use crate::error::{AbError, Result};
use crate::levels::solve_levels;
use crate::rational::Rat;

use super::saturation::fundamental_invariants;
use super::{levels_to_vec, AbModule, FrescoPresentation, ModuleVec, ShiftedAction};

/// Top levels of the finite model that are not trusted after a kernel solve.
pub const KERNEL_GUARD: usize = 2;

#[derive(Clone, Debug)]
pub struct KernelInfo {
    pub dim: usize,
    /// Kernel elements (true to `order`) whose images in E/b^M·E form a basis.
    pub basis: Vec<ModuleVec>,
    pub order: usize,
}

/// Kernel of a − μb on E, seen in E/b^M·E.
///
/// The map is solved on every level of the stored order and the solution
/// space is projected to the first M levels, which discards the freedom
/// that truncation creates at the top.
pub fn kernel_dim(e: &AbModule, mu: &Rat, m: usize) -> Result<KernelInfo> {
    let n = e.order();
    if n < m + KERNEL_GUARD {
        return Err(AbError::InsufficientOrder {
            needed: m + KERNEL_GUARD,
            have: n,
        });
    }
    let map = ShiftedAction {
        module: e,
        mu: mu.clone(),
    };
    let sol = solve_levels(&map, None, n)?;
    let order = n - KERNEL_GUARD;
    let basis: Vec<ModuleVec> = sol
        .projected_basis(m)
        .iter()
        .map(|h| levels_to_vec(h, e.rank(), order))
        .collect();
    Ok(KernelInfo {
        dim: basis.len(),
        basis,
        order,
    })
}

/// δ = dim Ker(a − μb) for μ = λ_k + k − 1, and d = k − δ + 1.
pub fn delta_and_depth(pres: &FrescoPresentation) -> Result<(usize, usize)> {
    let lambdas = pres.lambdas();
    delta_from_invariants(&pres.module(), &lambdas)
}

/// Same, reading the fundamental invariants off the Bernstein polynomial.
pub fn delta_and_depth_module(e: &AbModule) -> Result<(usize, usize)> {
    let lambdas = fundamental_invariants(e)?;
    delta_from_invariants(e, &lambdas)
}

pub(crate) fn delta_from_invariants(e: &AbModule, lambdas: &[Rat]) -> Result<(usize, usize)> {
    let k = lambdas.len();
    let mu = &lambdas[k - 1] + Rat::int(k as i64 - 1);
    let span = &mu - &lambdas[0];
    let m = usize::try_from(span.floor()).map_err(|_| AbError::Invalid("μ below λ1".into()))? + 1;
    let delta = kernel_dim(e, &mu, m)?.dim;
    Ok((delta, k + 1 - delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::series::TruncSeries;

    #[test]
    fn rank_one_kernel() {
        let e = AbModule::e_lambda(&rat!(5 / 2), 10);
        assert_eq!(kernel_dim(&e, &rat!(5 / 2), 1).unwrap().dim, 1);
        assert_eq!(kernel_dim(&e, &rat!(5 / 2), 6).unwrap().dim, 1);
        // μ = λ + 2: b²·e is an eigenvector
        let ker = kernel_dim(&e, &rat!(9 / 2), 4).unwrap();
        assert_eq!(ker.dim, 1);
        assert_eq!(ker.basis[0][0].valuation(), Some(2));
        assert_eq!(kernel_dim(&e, &rat!(3), 4).unwrap().dim, 0);
    }

    #[test]
    fn xi_kernel() {
        let e = AbModule::xi(&rat!(7 / 3), 1, 12);
        let ker = kernel_dim(&e, &rat!(7 / 3), 3).unwrap();
        assert_eq!(ker.dim, 1);
        assert_eq!(ker.basis[0][1], TruncSeries::zero(ker.order));
    }

    #[test]
    fn rank_two_theme_and_split() {
        let theme = FrescoPresentation::new(
            rat!(7 / 2),
            vec![2],
            vec![TruncSeries::new(vec![rat!(1), rat!(0), rat!(1)], 16)],
            16,
        )
        .unwrap();
        assert_eq!(delta_and_depth(&theme).unwrap(), (1, 2));
        let split = FrescoPresentation::plain(rat!(7 / 2), vec![2], 16);
        assert_eq!(delta_and_depth(&split).unwrap(), (2, 1));
    }
}
