use serde::{Deserialize, Serialize};

use super::tdf::TailDepFunction;
use crate::copula::{Copula, Point};
use crate::error::{Error, Result};

/// Smallest scale the estimator will evaluate at.
pub const SCHEDULE_FLOOR: f64 = 1e-300;

/// Differences below this are treated as round-off when judging whether
/// successive differences decrease.
const ROUNDOFF: f64 = 1e-14;

/// Geometric schedule s_k = s0 · ratio^k, k = 0..steps, for the limit
/// s ↓ 0, plus the convergence rule applied to the resulting trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSchedule {
    pub s0: f64,
    pub ratio: f64,
    pub steps: usize,
    /// Number of trailing differences that must be nonincreasing.
    #[serde(default = "default_window")]
    pub window: usize,
    /// Bound on the last difference for a converged estimate.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_window() -> usize {
    5
}

fn default_tolerance() -> f64 {
    1e-4
}

impl Default for LimitSchedule {
    fn default() -> Self {
        LimitSchedule {
            s0: 1e-2,
            ratio: 0.5,
            steps: 24,
            window: default_window(),
            tolerance: default_tolerance(),
        }
    }
}

impl LimitSchedule {
    pub fn new(s0: f64, ratio: f64, steps: usize) -> Result<Self> {
        LimitSchedule { s0, ratio, steps, ..Default::default() }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.s0 > 0.0 && self.s0 < 1.0) {
            return Err(Error::param(format!("schedule s0 must lie in (0, 1), got {}", self.s0)));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::param(format!(
                "schedule ratio must lie in (0, 1), got {}",
                self.ratio
            )));
        }
        if self.steps < 3 {
            return Err(Error::param(format!("schedule needs at least 3 steps, got {}", self.steps)));
        }
        if self.window == 0 || !(self.tolerance > 0.0) {
            return Err(Error::param("convergence window and tolerance must be positive"));
        }
        Ok(self)
    }

    /// The scales s_0 > s_1 > ... of the schedule.
    pub fn points(&self) -> Result<Vec<f64>> {
        (0..self.steps)
            .map(|k| {
                let s = self.s0 * self.ratio.powi(k as i32);
                if s < SCHEDULE_FLOOR {
                    Err(Error::ScheduleUnderflow(s))
                } else {
                    Ok(s)
                }
            })
            .collect()
    }
}

/// Result of evaluating C(sw)/s along a schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TdfEstimate {
    /// Last iterate.
    pub value: f64,
    /// Last absolute difference between successive iterates.
    pub error_estimate: f64,
    pub converged: bool,
    /// (s, C(sw)/s) pairs in schedule order (decreasing s).
    pub trace: Vec<(f64, f64)>,
}

impl TdfEstimate {
    fn from_trace(trace: Vec<(f64, f64)>, sched: &LimitSchedule) -> Self {
        let diffs: Vec<f64> = trace.windows(2).map(|p| (p[1].1 - p[0].1).abs()).collect();
        let value = trace.last().map_or(f64::NAN, |p| p.1);
        let error_estimate = diffs.last().copied().unwrap_or(f64::INFINITY);
        let tail = &diffs[diffs.len().saturating_sub(sched.window)..];
        let monotone = tail.len() == sched.window.min(diffs.len())
            && tail.windows(2).all(|p| p[1] <= p[0] || p[1] <= ROUNDOFF);
        let converged = monotone && error_estimate < sched.tolerance && value.is_finite();
        TdfEstimate { value, error_estimate, converged, trace }
    }

    /// Rows (s, C(sw)/s, |difference to previous row|); the first row has
    /// no difference.
    pub fn rows(&self) -> Vec<(f64, f64, Option<f64>)> {
        self.trace
            .iter()
            .enumerate()
            .map(|(i, &(s, r))| (s, r, (i > 0).then(|| (r - self.trace[i - 1].1).abs())))
            .collect()
    }
}

fn check_direction(dim: usize, w: &[f64]) -> Result<()> {
    if w.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: w.len() });
    }
    if let Some((i, &x)) = w.iter().enumerate().find(|(_, x)| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::param(format!("direction component {i} = {x} must be finite and >= 0")));
    }
    if w.iter().all(|&x| x == 0.0) {
        return Err(Error::param("direction must be nonzero"));
    }
    Ok(())
}

/// Evaluates C(sw)/s along the schedule. The value is the last iterate and
/// the error estimate is the last successive difference; no convergence
/// rate is assumed.
pub fn estimate_tdf(c: &Copula, w: &[f64], sched: &LimitSchedule) -> Result<TdfEstimate> {
    check_direction(c.dim(), w)?;
    let top = w.iter().copied().fold(0.0, f64::max);
    if sched.s0 * top > 1.0 + 1e-12 {
        return Err(Error::param(format!(
            "s0 · max w = {} exceeds 1; the first point leaves the unit cube",
            sched.s0 * top
        )));
    }
    let points = sched.points()?;
    let mut u = vec![0.0; w.len()];
    let trace = points
        .into_iter()
        .map(|s| {
            for (x, &wk) in u.iter_mut().zip(w) {
                *x = (s * wk).min(1.0);
            }
            (s, c.eval_unchecked(&u) / s)
        })
        .collect();
    Ok(TdfEstimate::from_trace(trace, sched))
}

/// Tail dependence coefficient λ(C): the estimate along w = (1, ..., 1).
pub fn tdc(c: &Copula, sched: &LimitSchedule) -> Result<TdfEstimate> {
    estimate_tdf(c, &vec![1.0; c.dim()], sched)
}

/// R(u) = (C(u) − Λ(u)) / ‖u‖₁.
pub fn tail_expansion_residual(c: &Copula, tdf: &TailDepFunction, u: &Point) -> Result<f64> {
    let u = u.coords();
    if tdf.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: tdf.dim() });
    }
    let norm: f64 = u.iter().map(|x| x.abs()).sum();
    if norm == 0.0 {
        return Err(Error::param("the residual is undefined at u = 0"));
    }
    Ok((c.eval(u)? - tdf.value(u)) / norm)
}
