use serde::{Deserialize, Serialize};

use super::tdo::check_tdo;
use super::{OrderStatus, OrderVerdict, Witness};
use crate::error::{Error, Result};
use crate::families::Generator;
use crate::grid::GridConfig;
use crate::par;
use crate::taildep::{archimedean_tdf, regular_variation_index, LimitSchedule};

/// The subadditivity sample covers [M, SUBADDITIVITY_SPAN · M].
pub const SUBADDITIVITY_SPAN: f64 = 100.0;

fn require_strict(g: &Generator) -> Result<()> {
    if g.is_strict() {
        Ok(())
    } else {
        Err(Error::param(format!("{:?} is not a strict generator", g.kind())))
    }
}

/// ψ = φ₁/φ₂ nondecreasing (within τ) on t_i = ε i / N, i = 1..N.
pub fn ratio_monotonicity_check(g1: &Generator, g2: &Generator, eps: f64, g: &GridConfig) -> Result<OrderVerdict> {
    require_strict(g1)?;
    require_strict(g2)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param(format!("ε must lie in (0, 1), got {eps}")));
    }
    let g = g.validated()?;
    let n = g.resolution;
    let t = |i: usize| eps * i as f64 / n as f64;
    let psi: Vec<f64> = (1..=n).map(|i| g1.phi(t(i)) / g2.phi(t(i))).collect();
    let worst = par::min_indexed(n - 1, g.parallel, |i| Some(psi[i + 1] - psi[i]));
    let (margin, i) = worst.expect("at least two grid points");
    let status = if margin < -g.tau { OrderStatus::Fails } else { OrderStatus::Holds };
    let witness = Witness { point: vec![t(i + 1), t(i + 2)], first: psi[i], second: psi[i + 1] };
    Ok(OrderVerdict { status, witness: Some(witness), margin, grid: n, tolerance: g.tau, epsilon: Some(eps) })
}

/// f(x + y) ≤ f(x) + f(y) + τ for f = φ₁ ∘ φ₂^[−1] on all pairs of the
/// grid of `g.resolution` points spanning [M, 100 M].
pub fn subadditivity_check(g1: &Generator, g2: &Generator, m: f64, g: &GridConfig) -> Result<OrderVerdict> {
    require_strict(g1)?;
    require_strict(g2)?;
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::param(format!("M must be positive, got {m}")));
    }
    let g = g.validated()?;
    let n = g.resolution;
    let x = |i: usize| m + (SUBADDITIVITY_SPAN - 1.0) * m * i as f64 / (n - 1) as f64;
    let f = |v: f64| g1.phi(g2.inverse(v));
    let fx: Vec<f64> = (0..n).map(|i| f(x(i))).collect();
    let slack_at = |k: usize| {
        let (i, j) = (k / n, k % n);
        (j >= i).then(|| fx[i] + fx[j] - f(x(i) + x(j)))
    };
    let (margin, k) = par::min_indexed(n * n, g.parallel, slack_at).expect("nonempty grid");
    let (i, j) = (k / n, k % n);
    let status = if margin < -g.tau { OrderStatus::Fails } else { OrderStatus::Holds };
    let witness = Witness { point: vec![x(i), x(j)], first: f(x(i) + x(j)), second: fx[i] + fx[j] };
    Ok(OrderVerdict { status, witness: Some(witness), margin, grid: n * (n + 1) / 2, tolerance: g.tau, epsilon: None })
}

/// The three equivalent statements for strict, regularly varying
/// generators in dimension d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub alpha1: f64,
    pub alpha2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Λ_{α₁} strictly below Λ_{α₂} (check_tdo is `HoldsStrictly`).
    pub strict_tdo: bool,
    /// λ₁ < λ₂ by more than τ.
    pub lambda_ordered: bool,
    /// α₁ < α₂.
    pub alpha_ordered: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.strict_tdo == self.lambda_ordered && self.lambda_ordered == self.alpha_ordered
    }

    /// Name of the clause that disagrees with the other two, if any.
    pub fn disagreeing_clause(&self) -> Option<&'static str> {
        let (a, b, c) = (self.strict_tdo, self.lambda_ordered, self.alpha_ordered);
        if a == b && b == c {
            None
        } else if b == c {
            Some("strict_tdo")
        } else if a == c {
            Some("lambda_ordered")
        } else {
            Some("alpha_ordered")
        }
    }
}

fn index_of(g: &Generator) -> Result<f64> {
    if let Some(a) = g.rv_index_at_0() {
        return Ok(a);
    }
    let est = regular_variation_index(g, &LimitSchedule::default())?;
    if !est.converged {
        return Err(Error::IndexNotConverged(format!("{:?}: last estimate {}", g.kind(), est.alpha)));
    }
    Ok(est.alpha)
}

/// λ = d^{−1/α}, with λ = 0 for α = 0 and λ = 1 for α = ∞.
fn coefficient(alpha: f64, d: usize) -> f64 {
    if alpha <= 0.0 {
        0.0
    } else {
        (d as f64).powf(-1.0 / alpha)
    }
}

pub fn archimedean_order_equivalence(g1: &Generator, g2: &Generator, d: usize, g: &GridConfig) -> Result<EquivalenceReport> {
    require_strict(g1)?;
    require_strict(g2)?;
    if d < 2 {
        return Err(Error::param(format!("dimension must be at least 2, got {d}")));
    }
    let (alpha1, alpha2) = (index_of(g1)?, index_of(g2)?);
    let tdo = check_tdo(&archimedean_tdf(alpha1, d), &archimedean_tdf(alpha2, d), g)?;
    let (lambda1, lambda2) = (coefficient(alpha1, d), coefficient(alpha2, d));
    Ok(EquivalenceReport {
        alpha1,
        alpha2,
        lambda1,
        lambda2,
        strict_tdo: tdo.status == OrderStatus::HoldsStrictly,
        lambda_ordered: lambda2 - lambda1 > g.tau,
        alpha_ordered: alpha1 < alpha2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{clayton_generator, gumbel_generator, nonstrict_linear_generator};

    fn g() -> GridConfig {
        GridConfig::default()
    }

    fn c(theta: f64) -> Generator {
        clayton_generator(theta).unwrap()
    }

    #[test]
    fn ratio_monotonicity() {
        assert_eq!(ratio_monotonicity_check(&c(2.0), &c(2.0), 0.5, &g()).unwrap().status, OrderStatus::Holds);
        assert_eq!(ratio_monotonicity_check(&c(1.0), &c(2.0), 0.5, &g()).unwrap().status, OrderStatus::Holds);
        assert_eq!(ratio_monotonicity_check(&c(2.0), &c(1.0), 0.5, &g()).unwrap().status, OrderStatus::Fails);
        // ψ(t) = 2t/(1 + t) for the (1, 2) pair
        for i in 1..10 {
            let t = i as f64 / 20.0;
            assert!((c(1.0).phi(t) / c(2.0).phi(t) - 2.0 * t / (1.0 + t)).abs() < 1e-14);
        }
    }

    #[test]
    fn subadditivity() {
        let v = subadditivity_check(&c(2.0), &c(2.0), 10.0, &g()).unwrap();
        assert_eq!(v.status, OrderStatus::Holds);
        assert_eq!(subadditivity_check(&c(1.0), &c(2.0), 10.0, &g()).unwrap().status, OrderStatus::Holds);
        let v = subadditivity_check(&c(2.0), &c(1.0), 10.0, &g()).unwrap();
        assert_eq!(v.status, OrderStatus::Fails);
        // f(x) = ((x + 1)² − 1)/2 is superadditive: f(x+y) − f(x) − f(y) = xy
        let w = v.witness.unwrap();
        let (x, y) = (w.point[0], w.point[1]);
        assert!((w.first - w.second - x * y).abs() < 1e-6 * x * y);
    }

    #[test]
    fn nonstrict_is_rejected() {
        let w = nonstrict_linear_generator();
        assert!(ratio_monotonicity_check(&w, &c(1.0), 0.5, &g()).is_err());
        assert!(subadditivity_check(&c(1.0), &w, 10.0, &g()).is_err());
        assert!(archimedean_order_equivalence(&w, &c(1.0), 2, &g()).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let r = archimedean_order_equivalence(&c(1.0), &c(2.0), 2, &g()).unwrap();
        assert!(r.strict_tdo && r.lambda_ordered && r.alpha_ordered);
        let gu = gumbel_generator(2.0).unwrap();
        let r = archimedean_order_equivalence(&gu, &c(1.0), 2, &g()).unwrap();
        assert!(r.strict_tdo && r.lambda_ordered && r.alpha_ordered);
        assert_eq!((r.lambda1, r.lambda2), (0.0, 0.5));
        let r = archimedean_order_equivalence(&c(2.0), &c(2.0), 2, &g()).unwrap();
        assert!(!r.strict_tdo && !r.lambda_ordered && !r.alpha_ordered);
        assert!(r.agree() && r.disagreeing_clause().is_none());
    }
}
