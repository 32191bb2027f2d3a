use super::{Comparison, OrderStatus, OrderVerdict};
use crate::error::{Error, Result};
use crate::grid::{simplex_lattice, GridConfig};
use crate::taildep::TailDepFunction;

/// Λ₁ ≼ Λ₂ on the unit simplex, sampled with `g.resolution − 1` divisions
/// per edge; by homogeneity this covers all of [0,∞)^d. The strict order
/// is decided on simplex points whose coordinates all exceed the interior
/// margin.
pub fn check_tdo(l1: &TailDepFunction, l2: &TailDepFunction, g: &GridConfig) -> Result<OrderVerdict> {
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch { expected: l1.dim(), got: l2.dim() });
    }
    let g = g.validated()?;
    let points = simplex_lattice(l1.dim(), g.resolution - 1);
    let cmp = Comparison::evaluate(points, g.parallel, |w| l1.value(w), |w| l2.value(w));
    let mut verdict = cmp.verdict(g.tau, g.parallel);
    if verdict.status == OrderStatus::Holds {
        let interior = |i: usize| cmp.points[i].iter().all(|&x| x >= g.interior_margin);
        if let Some((m, i)) = cmp.min_gap(g.parallel, interior) {
            if m > g.tau {
                verdict.status = OrderStatus::HoldsStrictly;
                verdict.margin = m;
                verdict.witness = Some(cmp.witness(i));
            }
        }
    }
    Ok(verdict)
}
