use log::warn;
use serde::{Deserialize, Serialize};

use super::tdo::check_tdo;
use super::{Comparison, OrderStatus, OrderVerdict};
use crate::copula::Copula;
use crate::error::{Error, Result};
use crate::grid::{GridConfig, Lattice};

/// Largest k in the search ε = 2^−k.
pub const MAX_HALVINGS: u32 = 20;

/// The cone {w ∈ (0,∞)^d : min_k w_k ≥ c ‖w‖₁}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub c: f64,
}

impl ConeSpec {
    pub fn new(c: f64, dim: usize) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0 / dim as f64) {
            return Err(Error::param(format!("cone parameter c must lie in (0, 1/{dim}], got {c}")));
        }
        Ok(ConeSpec { c })
    }

    pub fn contains(&self, w: &[f64]) -> bool {
        let l1: f64 = w.iter().sum();
        let m = w.iter().copied().fold(f64::INFINITY, f64::min);
        l1 > 0.0 && m >= self.c * l1 * (1.0 - 1e-12)
    }
}

fn check_pair(c1: &Copula, c2: &Copula) -> Result<()> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch { expected: c1.dim(), got: c2.dim() });
    }
    Ok(())
}

fn check_epsilon(eps: f64, dim: usize) -> Result<()> {
    if !(eps > 0.0 && eps <= (dim as f64).sqrt() * (1.0 + 1e-12)) {
        return Err(Error::param(format!("ε must lie in (0, √{dim}], got {eps}")));
    }
    Ok(())
}

/// Lattice points of [0, min(ε, 1)]^d inside the closed Euclidean ball of
/// radius ε, in lexicographic order.
fn ball_points(dim: usize, eps: f64, g: &GridConfig, keep: impl Fn(&[f64]) -> bool) -> Vec<Vec<f64>> {
    let lattice = Lattice { dim, n: g.resolution, extent: eps.min(1.0) };
    let r2 = eps * eps * (1.0 + 1e-12);
    (0..lattice.len())
        .map(|i| lattice.point(i))
        .filter(|u| u.iter().map(|x| x * x).sum::<f64>() <= r2 && keep(u))
        .collect()
}

/// C₁ ≤ C₂ + τ on the lattice sample of B_ε(0) ∩ [0,1]^d.
pub fn check_loc(c1: &Copula, c2: &Copula, eps: f64, g: &GridConfig) -> Result<OrderVerdict> {
    check_pair(c1, c2)?;
    check_epsilon(eps, c1.dim())?;
    let g = g.validated()?;
    let points = ball_points(c1.dim(), eps, &g, |_| true);
    let cmp = Comparison::evaluate(points, g.parallel, |u| c1.eval_unchecked(u), |u| c2.eval_unchecked(u));
    let mut v = cmp.verdict(g.tau, g.parallel);
    v.epsilon = Some(eps);
    Ok(v)
}

/// C₁ ≤ C₂ + τ on the lattice sample of the cone intersected with B_ε(0).
pub fn check_cone_order(
    c1: &Copula,
    c2: &Copula,
    cone: ConeSpec,
    eps: f64,
    g: &GridConfig,
) -> Result<OrderVerdict> {
    check_pair(c1, c2)?;
    check_epsilon(eps, c1.dim())?;
    let g = g.validated()?;
    if let (Some(l1), Some(l2)) = (c1.analytic_tdf(), c2.analytic_tdf()) {
        let strict = check_tdo(&l1, &l2, &g)?;
        if strict.status != OrderStatus::HoldsStrictly {
            warn!("cone order check on a pair that is not strictly tail ordered ({:?})", strict.status);
        }
    }
    let points = ball_points(c1.dim(), eps, &g, |u| cone.contains(u));
    if points.is_empty() {
        return Err(Error::EmptySample(format!(
            "no lattice point of resolution {} lies in the cone c = {} within ε = {eps}",
            g.resolution, cone.c
        )));
    }
    let cmp = Comparison::evaluate(points, g.parallel, |u| c1.eval_unchecked(u), |u| c2.eval_unchecked(u));
    let mut v = cmp.verdict(g.tau, g.parallel);
    v.epsilon = Some(eps);
    Ok(v)
}

/// Halving search ε = 2^−k, k = 0..=20, skipping ε > √d. Returns the first
/// verdict that is not `Fails`; if every ε fails, the verdict for the
/// smallest ε is returned with `epsilon = None` (no ε found at this
/// resolution, which does not refute the order). Copula values near the
/// origin are at most ε, so once ε drops to the order of τ every pair is
/// `Indistinguishable`.
fn halving(dim: usize, mut check: impl FnMut(f64) -> Result<OrderVerdict>) -> Result<OrderVerdict> {
    let mut last = None;
    for k in 0..=MAX_HALVINGS {
        let eps = 0.5f64.powi(k as i32);
        if eps > (dim as f64).sqrt() {
            continue;
        }
        let v = check(eps)?;
        if v.status != OrderStatus::Fails {
            return Ok(v);
        }
        last = Some(v);
    }
    let mut v = last.expect("the search visits at least one ε");
    v.epsilon = None;
    Ok(v)
}

pub fn find_loc_epsilon(c1: &Copula, c2: &Copula, g: &GridConfig) -> Result<OrderVerdict> {
    halving(c1.dim(), |eps| check_loc(c1, c2, eps, g))
}

pub fn find_cone_epsilon(c1: &Copula, c2: &Copula, cone: ConeSpec, g: &GridConfig) -> Result<OrderVerdict> {
    halving(c1.dim(), |eps| check_cone_order(c1, c2, cone, eps, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{archimedean, clayton_generator, marshall_olkin};

    fn g() -> GridConfig {
        GridConfig::default()
    }

    fn clayton(theta: f64) -> Copula {
        archimedean(clayton_generator(theta).unwrap(), 2).unwrap()
    }

    #[test]
    fn product_below_comonotone() {
        let (pi, cp) = (Copula::independence(2).unwrap(), Copula::comonotone(2).unwrap());
        let v = check_loc(&pi, &cp, 0.5, &g()).unwrap();
        assert_eq!(v.status, OrderStatus::Holds);
        assert_eq!(check_loc(&cp, &pi, 0.5, &g()).unwrap().status, OrderStatus::Fails);
        let cone = ConeSpec::new(0.3, 2).unwrap();
        assert_eq!(check_cone_order(&pi, &cp, cone, 0.3, &g()).unwrap().status, OrderStatus::Holds);
    }

    #[test]
    fn clayton_pair_is_locally_ordered() {
        let v = check_loc(&clayton(1.0), &clayton(2.0), 0.2, &g()).unwrap();
        assert_eq!(v.status, OrderStatus::Holds);
    }

    #[test]
    fn marshall_olkin_bends_around_cones() {
        let (m, c) = (marshall_olkin(0.5).unwrap(), clayton(1.0));
        let v = check_loc(&m, &c, 0.1, &g()).unwrap();
        assert_eq!(v.status, OrderStatus::Fails);
        let w = v.witness.unwrap();
        let (t, s) = (w.point[0], w.point[1]);
        let h = 0.1 / 63.0;
        assert!((s - t.sqrt()).abs() < 2.0 * h, "{t} {s}");
        let narrow = ConeSpec::new(0.2, 2).unwrap();
        assert_eq!(check_cone_order(&m, &c, narrow, 0.05, &g()).unwrap().status, OrderStatus::Holds);
        let wide = ConeSpec::new(0.001, 2).unwrap();
        assert_eq!(check_cone_order(&m, &c, wide, 0.05, &g()).unwrap().status, OrderStatus::Fails);
    }

    #[test]
    fn halving_search() {
        let (m, c) = (marshall_olkin(0.5).unwrap(), clayton(1.0));
        let v = find_cone_epsilon(&m, &c, ConeSpec::new(0.2, 2).unwrap(), &g()).unwrap();
        assert!(v.is_ordered());
        assert!(v.epsilon.unwrap() >= 0.5f64.powi(20));
        let (pi, cp) = (Copula::independence(2).unwrap(), Copula::comonotone(2).unwrap());
        // every gap shrinks with ε, so a refutation at ε = 2^−20 needs τ
        // well below 2^−20
        let fine = GridConfig { tau: 1e-9, ..g() };
        let none = find_loc_epsilon(&cp, &pi, &fine).unwrap();
        assert_eq!(none.status, OrderStatus::Fails);
        assert_eq!(none.epsilon, None);
        let v = find_loc_epsilon(&pi, &cp, &g()).unwrap();
        assert_eq!(v.epsilon, Some(1.0));
    }

    #[test]
    fn argument_errors() {
        let pi = Copula::independence(2).unwrap();
        assert!(check_loc(&pi, &pi, 0.0, &g()).is_err());
        assert!(check_loc(&pi, &pi, 1.5, &g()).is_err());
        assert!(check_loc(&pi, &Copula::independence(3).unwrap(), 0.5, &g()).is_err());
        assert!(ConeSpec::new(0.6, 2).is_err());
        assert!(ConeSpec::new(0.0, 2).is_err());
        // a cone hugging the diagonal has no lattice point for coarse grids
        let tight = ConeSpec::new(0.5, 2).unwrap();
        let coarse = GridConfig::with_resolution(8).unwrap();
        let v = check_cone_order(&pi, &pi, tight, 0.5, &coarse).unwrap();
        assert_eq!(v.status, OrderStatus::Indistinguishable);
    }
}
