use std::sync::Arc;

use crate::copula::{CheckOutcome, Copula, UserFn, ValidityReport};
use crate::error::{Error, Result};

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Debug, Clone)]
pub(crate) enum DiagonalKind {
    Power { p: f64 },
    OfCopula(Arc<Copula>),
    Custom(UserFn<ScalarFn>),
}

/// A candidate diagonal section δ: [0,1] → [0,1] of a d-copula.
#[derive(Debug, Clone)]
pub struct DiagonalSection {
    dim: usize,
    pub(crate) kind: DiagonalKind,
}

impl DiagonalSection {
    /// δ(t) = t^p in dimension 2.
    pub fn power(p: f64) -> Result<Self> {
        Self::power_in(p, 2)
    }

    pub fn power_in(p: f64, dim: usize) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidDiagonal(format!("power exponent must be positive, got {p}")));
        }
        if dim < 2 {
            return Err(Error::InvalidDiagonal(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(DiagonalSection { dim, kind: DiagonalKind::Power { p } })
    }

    /// t ↦ C(t, ..., t).
    pub fn of_copula(c: Copula) -> Self {
        DiagonalSection { dim: c.dim(), kind: DiagonalKind::OfCopula(Arc::new(c)) }
    }

    pub fn from_fn<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        DiagonalSection {
            dim,
            kind: DiagonalKind::Custom(UserFn { f: Arc::new(f), label: label.into() }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, t: f64) -> f64 {
        match &self.kind {
            DiagonalKind::Power { p } => {
                if t <= 0.0 {
                    0.0
                } else {
                    t.powf(*p)
                }
            }
            DiagonalKind::OfCopula(c) => c.eval_unchecked(&vec![t.clamp(0.0, 1.0); self.dim]),
            DiagonalKind::Custom(uf) => (uf.f)(t),
        }
    }
}

/// Number of intervals in the diagonal audit grid.
const DIAGONAL_GRID: usize = 10_000;
const DIAGONAL_TOL: f64 = 1e-9;

pub const ENDPOINTS: &str = "endpoints";
pub const BELOW_IDENTITY: &str = "below_identity";
pub const INCREASING: &str = "increasing";
pub const LIPSCHITZ: &str = "lipschitz";
pub const RATIO_INCREASING: &str = "ratio_increasing";
pub const RATIO_SQ_DECREASING: &str = "ratio_sq_decreasing";

fn grid(i: usize) -> f64 {
    i as f64 / DIAGONAL_GRID as f64
}

/// Worst slack over consecutive grid pairs (i, i+1) for i in `range`.
fn worst_pair(
    values: &[f64],
    range: std::ops::Range<usize>,
    slack: impl Fn(usize, f64, f64) -> f64,
) -> Option<(f64, usize)> {
    range
        .map(|i| (slack(i, values[i], values[i + 1]), i))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
}

/// Audits δ(0) = 0, δ(1) = 1, δ(t) ≤ t, monotonicity and the d-Lipschitz
/// bound on a grid of 10⁴ + 1 points.
pub fn validate_diagonal(delta: &DiagonalSection) -> ValidityReport {
    let values: Vec<f64> = (0..=DIAGONAL_GRID).map(|i| delta.value(grid(i))).collect();
    diagonal_checks(delta, &values)
}

fn diagonal_checks(delta: &DiagonalSection, values: &[f64]) -> ValidityReport {
    let tol = DIAGONAL_TOL;
    let n = DIAGONAL_GRID;
    let h = 1.0 / n as f64;
    let d = delta.dim() as f64;

    let end_slack = [(-values[0].abs(), 0), (-(values[n] - 1.0).abs(), n)];
    let endpoints = end_slack
        .into_iter()
        .map(|(s, i)| (if s.is_nan() { f64::NEG_INFINITY } else { s }, i))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    let point = |i: usize| (vec![grid(i), values[i]], format!("δ({}) = {}", grid(i), values[i]));
    let pair = |i: usize| {
        (
            vec![grid(i), grid(i + 1)],
            format!("δ({}) = {}, δ({}) = {}", grid(i), values[i], grid(i + 1), values[i + 1]),
        )
    };

    let below = (0..=n)
        .map(|i| (nan_low(grid(i) - values[i]), i))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let increasing = worst_pair(values, 0..n, |_, a, b| nan_low(b - a));
    let lipschitz = worst_pair(values, 0..n, |_, a, b| nan_low(d * h - (b - a).abs()));

    ValidityReport {
        checks: vec![
            CheckOutcome::from_slack(ENDPOINTS, tol, endpoints, point),
            CheckOutcome::from_slack(BELOW_IDENTITY, tol, below, point),
            CheckOutcome::from_slack(INCREASING, tol, increasing, pair),
            CheckOutcome::from_slack(LIPSCHITZ, tol, lipschitz, pair),
        ],
    }
}

fn nan_low(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x
    }
}

/// The diagonal audit plus weak monotonicity of δ(t)/t (nondecreasing) and
/// δ(t)/t² (nonincreasing) on (0, 1]. Ratio comparisons use a tolerance
/// relative to the ratio magnitude.
pub fn validate_semilinear_diagonal(delta: &DiagonalSection) -> ValidityReport {
    let values: Vec<f64> = (0..=DIAGONAL_GRID).map(|i| delta.value(grid(i))).collect();
    let mut report = diagonal_checks(delta, &values);
    let n = DIAGONAL_GRID;
    let tol = DIAGONAL_TOL;
    let r1: Vec<f64> = (1..=n).map(|i| values[i] / grid(i)).collect();
    let r2: Vec<f64> = (1..=n).map(|i| values[i] / (grid(i) * grid(i))).collect();
    let rel = |a: f64, b: f64| a.abs().max(b.abs()).max(1.0);
    let inc = worst_pair(&r1, 0..n - 1, |_, a, b| nan_low((b - a) / rel(a, b)));
    let dec = worst_pair(&r2, 0..n - 1, |_, a, b| nan_low((a - b) / rel(a, b)));
    let witness = |r: &[f64], i: usize, what: &str| {
        (
            vec![grid(i + 1), grid(i + 2)],
            format!("{what}: {} at t = {}, {} at t = {}", r[i], grid(i + 1), r[i + 1], grid(i + 2)),
        )
    };
    report.checks.push(CheckOutcome::from_slack(RATIO_INCREASING, tol, inc, |i| {
        witness(&r1, i, "δ(t)/t")
    }));
    report.checks.push(CheckOutcome::from_slack(RATIO_SQ_DECREASING, tol, dec, |i| {
        witness(&r2, i, "δ(t)/t²")
    }));
    report
}

pub(crate) fn require_valid(report: &ValidityReport) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(f) => Err(Error::InvalidDiagonal(format!("{} check failed: {}", f.name, f.detail))),
    }
}

const SCAN_POINTS: usize = 1024;
const GOLDEN_TOL: f64 = 1e-12;

/// C_B(u, v) = min(u, v) − min_{t ∈ [min, max]} (t − δ(t)).
pub(crate) fn bertino_value(delta: &DiagonalSection, u: f64, v: f64) -> f64 {
    let (lo, hi) = (u.min(v), u.max(v));
    lo - min_gap(delta, lo, hi)
}

/// min of t − δ(t) over [lo, hi]: dense scan, then golden-section search in
/// the bracket around the best scan point. The scan value is kept if the
/// refinement does not improve on it.
fn min_gap(delta: &DiagonalSection, lo: f64, hi: f64) -> f64 {
    let f = |t: f64| t - delta.value(t);
    if hi <= lo {
        return f(lo);
    }
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let at = |j: usize| if j == SCAN_POINTS - 1 { hi } else { lo + step * j as f64 };
    let (mut best, mut best_j) = (f64::INFINITY, 0);
    for j in 0..SCAN_POINTS {
        let v = f(at(j));
        if v < best {
            best = v;
            best_j = j;
        }
    }
    let mut a = at(best_j.saturating_sub(1));
    let mut b = at((best_j + 1).min(SCAN_POINTS - 1));
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > GOLDEN_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    best.min(f1).min(f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_rejects_bad_exponent() {
        assert!(DiagonalSection::power(0.0).is_err());
        assert!(DiagonalSection::power(f64::INFINITY).is_err());
        assert!(DiagonalSection::power_in(2.0, 1).is_err());
    }

    #[test]
    fn documented_audits() {
        assert!(validate_diagonal(&DiagonalSection::power(1.0).unwrap()).passed());
        assert!(validate_diagonal(&DiagonalSection::power(2.0).unwrap()).passed());
        let r = validate_diagonal(&DiagonalSection::power(0.5).unwrap());
        assert!(!r.passed());
        let below = r.check(BELOW_IDENTITY).unwrap();
        assert!(!below.passed && below.witness.is_some());
        assert!(r.check(ENDPOINTS).unwrap().passed);
    }

    #[test]
    fn lipschitz_bound_depends_on_dimension() {
        // t³ has slope 3 at 1: fine in d = 3, not in d = 2
        assert!(!validate_diagonal(&DiagonalSection::power(3.0).unwrap()).passed());
        assert!(validate_diagonal(&DiagonalSection::power_in(3.0, 3).unwrap()).passed());
    }

    #[test]
    fn endpoints_and_monotonicity_failures() {
        let shifted = DiagonalSection::from_fn(2, "0.9t", |t| 0.9 * t);
        let r = validate_diagonal(&shifted);
        assert!(!r.check(ENDPOINTS).unwrap().passed);
        let wiggle = DiagonalSection::from_fn(2, "dip", |t: f64| {
            if t > 0.5 && t < 0.6 { 0.2 } else { t * t }
        });
        assert!(!validate_diagonal(&wiggle).check(INCREASING).unwrap().passed);
    }

    #[test]
    fn semilinear_conditions() {
        for p in [1.0, 1.5, 2.0] {
            let d = DiagonalSection::power(p).unwrap();
            assert!(validate_semilinear_diagonal(&d).passed(), "p = {p}");
        }
        // t³ is a valid 3-dimensional diagonal, but t³/t² = t increases
        let cubic = DiagonalSection::power_in(3.0, 3).unwrap();
        assert!(validate_diagonal(&cubic).passed());
        let r = validate_semilinear_diagonal(&cubic);
        assert!(r.check(RATIO_INCREASING).unwrap().passed);
        assert!(!r.check(RATIO_SQ_DECREASING).unwrap().passed, "{r:?}");
    }

    #[test]
    fn bertino_documented_value() {
        let d = DiagonalSection::power(2.0).unwrap();
        assert!((bertino_value(&d, 0.3, 0.4) - 0.09).abs() < 1e-15);
        assert!((bertino_value(&d, 0.4, 0.3) - 0.09).abs() < 1e-15);
        // interior minimum when the gap t − δ(t) dips inside the interval
        let dip = DiagonalSection::from_fn(2, "dip", |t: f64| {
            if (t - 0.5).abs() < 0.1 { t } else { t * t }
        });
        let v = bertino_value(&dip, 0.3, 0.7);
        assert!((v - 0.3).abs() < 1e-12, "{v}");
    }
}
