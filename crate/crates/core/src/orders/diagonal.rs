use super::{OrderStatus, OrderVerdict, Witness};
use crate::error::Result;
use crate::families::DiagonalSection;
use crate::grid::GridConfig;

/// Largest grid prefix [0, ε] of t_i = i/(N − 1) on which δ₁ ≤ δ₂ + τ.
/// `Fails` when the first nonzero grid point already violates; otherwise
/// `Holds` with `epsilon` the end of the verified prefix. The witness is
/// the first violating point, if any, and `margin` the smallest gap on the
/// prefix.
pub fn check_diagonal_order(d1: &DiagonalSection, d2: &DiagonalSection, g: &GridConfig) -> Result<OrderVerdict> {
    let g = g.validated()?;
    let n = g.resolution;
    let t = |i: usize| i as f64 / (n - 1) as f64;
    let mut margin = f64::INFINITY;
    let mut violation = None;
    for i in 0..n {
        let (a, b) = (d1.value(t(i)), d2.value(t(i)));
        let gap = b - a;
        if !(gap >= -g.tau) {
            violation = Some((i, Witness { point: vec![t(i)], first: a, second: b }));
            break;
        }
        margin = margin.min(gap);
    }
    let (status, epsilon, witness) = match violation {
        None => (OrderStatus::Holds, 1.0, None),
        Some((i, w)) if i <= 1 => {
            margin = w.second - w.first;
            (OrderStatus::Fails, 0.0, Some(w))
        }
        Some((i, w)) => (OrderStatus::Holds, t(i - 1), Some(w)),
    };
    Ok(OrderVerdict { status, witness, margin, grid: n, tolerance: g.tau, epsilon: Some(epsilon) })
}
