//! Gauss-Legendre rules: fixed tensor products for smooth integrands and a
//! nested adaptive scheme for integrands with kinks.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// An n-point Gauss-Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of P_n, found by Newton iteration from the
    /// Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p1, mut p2) = (1.0, 0.0);
                for j in 1..=n {
                    let jf = j as f64;
                    let p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
                }
                dp = nf * (z * p1 - p2) / (z * z - 1.0);
                let step = p1 / dp;
                z -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Cached 64-point rule.
pub fn rule64() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(64))
}

/// Cached 96-point rule.
pub fn rule96() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(96))
}

/// Tensor-product n-point rule over [0, 1]^d.
pub fn tensor_gauss_legendre(f: impl Fn(&[f64]) -> f64, d: usize, n: usize) -> f64 {
    let rule = GaussLegendre::new(n);
    let nodes: Vec<f64> = rule.nodes().iter().map(|x| 0.5 * (x + 1.0)).collect();
    let weights: Vec<f64> = rule.weights().iter().map(|w| 0.5 * w).collect();
    let mut idx = vec![0usize; d];
    let mut point = vec![0.0; d];
    let mut acc = 0.0;
    loop {
        let mut w = 1.0;
        for k in 0..d {
            point[k] = nodes[idx[k]];
            w *= weights[idx[k]];
        }
        acc += w * f(&point);
        let mut k = d;
        loop {
            if k == 0 {
                return acc;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Panel sums of an adaptive integration under the 64- and 96-point rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveResult {
    pub low: f64,
    pub high: f64,
    pub panels: usize,
}

impl AdaptiveResult {
    /// The 96-point value, or an error when the two totals differ by more
    /// than `agreement`.
    pub fn checked(&self, agreement: f64) -> Result<f64> {
        if (self.low - self.high).abs() <= agreement {
            Ok(self.high)
        } else {
            Err(Error::QuadratureDisagreement { low: self.low, high: self.high })
        }
    }
}

const MAX_DEPTH: usize = 50;

/// ∫_a^b f by bisecting panels until the 64- and 96-point rules agree to
/// `tol` (split evenly between halves).
pub fn adaptive_gauss_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> AdaptiveResult {
    let mut out = AdaptiveResult { low: 0.0, high: 0.0, panels: 0 };
    panel(f, a, b, tol, 0, &mut out);
    out
}

fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize, out: &mut AdaptiveResult) {
    let low = rule64().integrate(a, b, f);
    let high = rule96().integrate(a, b, f);
    if (low - high).abs() <= tol || depth >= MAX_DEPTH {
        out.low += low;
        out.high += high;
        out.panels += 1;
        return;
    }
    let mid = 0.5 * (a + b);
    panel(f, a, mid, 0.5 * tol, depth + 1, out);
    panel(f, mid, b, 0.5 * tol, depth + 1, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in [1, 2, 5, 64, 96] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            for i in 0..n {
                assert!((r.nodes()[i] + r.nodes()[n - 1 - i]).abs() < 1e-15);
            }
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let r = GaussLegendre::new(5);
        // ∫_0^1 x^9 = 0.1
        let v = r.integrate(0.0, 1.0, |x| x.powi(9));
        assert!((v - 0.1).abs() < 1e-15);
        let r64 = rule64();
        let v = r64.integrate(0.0, 2.0, |x| x.powi(127));
        assert!((v / (2f64.powi(128) / 128.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_rule_on_smooth_integrand() {
        // ∫∫ w1 w2 = 1/4, ∫∫∫ exp(x+y+z) = (e−1)^3
        let v = tensor_gauss_legendre(|w| w[0] * w[1], 2, 8);
        assert!((v - 0.25).abs() < 1e-15);
        let v = tensor_gauss_legendre(|w| (w[0] + w[1] + w[2]).exp(), 3, 12);
        assert!((v - (std::f64::consts::E - 1.0).powi(3)).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_kinks() {
        // ∫_0^1 |x − 1/3| = 5/18
        let r = adaptive_gauss_legendre(&|x: f64| (x - 1.0 / 3.0).abs(), 0.0, 1.0, 1e-13);
        assert!((r.high - 5.0 / 18.0).abs() < 1e-12, "{r:?}");
        assert!(r.checked(1e-6).is_ok());
        assert!(r.panels > 1);
    }

    #[test]
    fn disagreement_is_reported() {
        let r = AdaptiveResult { low: 0.0, high: 1.0, panels: 1 };
        assert!(matches!(r.checked(1e-6), Err(Error::QuadratureDisagreement { .. })));
    }
}
