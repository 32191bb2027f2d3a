//! Order checkers on finite grids. Every verdict is a certificate of the
//! sampled behaviour only; a failing verdict carries a witness that can be
//! re-evaluated exactly.

mod archimedean;
mod diagonal;
mod local;
mod tdo;
mod too;

use serde::{Deserialize, Serialize};

pub use archimedean::{
    archimedean_order_equivalence, ratio_monotonicity_check, subadditivity_check,
    EquivalenceReport, SUBADDITIVITY_SPAN,
};
pub use diagonal::check_diagonal_order;
pub use local::{
    check_cone_order, check_loc, find_cone_epsilon, find_loc_epsilon, ConeSpec, MAX_HALVINGS,
};
pub use tdo::check_tdo;
pub use too::{check_too, default_directions, DirectionalVerdict};

use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderStatus {
    Holds,
    HoldsStrictly,
    Fails,
    Indistinguishable,
}

/// A sampled point with the values of the first and second object there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub first: f64,
    pub second: f64,
}

/// Outcome of an order check. `margin` is the worst signed gap
/// second − first over the sample (over the interior band for
/// `HoldsStrictly`); `witness` is where that gap occurs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub status: OrderStatus,
    pub witness: Option<Witness>,
    pub margin: f64,
    /// Number of sampled points.
    pub grid: usize,
    pub tolerance: f64,
    /// Neighbourhood size the verdict refers to, when one applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
}

impl OrderVerdict {
    /// True unless the check found a violation.
    pub fn is_ordered(&self) -> bool {
        self.status != OrderStatus::Fails
    }
}

/// Evaluated pairs at sample points, reduced deterministically.
pub(crate) struct Comparison {
    pub points: Vec<Vec<f64>>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl Comparison {
    pub fn evaluate(
        points: Vec<Vec<f64>>,
        parallel: bool,
        f1: impl Fn(&[f64]) -> f64 + Sync + Send,
        f2: impl Fn(&[f64]) -> f64 + Sync + Send,
    ) -> Self {
        let pairs: Vec<(f64, f64)> =
            par::map_indexed(points.len(), parallel, |i| (f1(&points[i]), f2(&points[i])));
        let (first, second) = pairs.into_iter().unzip();
        Comparison { points, first, second }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn gap(&self, i: usize) -> f64 {
        self.second[i] - self.first[i]
    }

    pub fn witness(&self, i: usize) -> Witness {
        Witness { point: self.points[i].clone(), first: self.first[i], second: self.second[i] }
    }

    /// Smallest gap (NaN counts as −∞) over indices accepted by `keep`.
    pub fn min_gap(&self, parallel: bool, keep: impl Fn(usize) -> bool + Sync + Send) -> Option<(f64, usize)> {
        par::min_indexed(self.len(), parallel, |i| keep(i).then(|| self.gap(i)))
    }

    pub fn max_abs_gap(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let g = self.gap(i).abs();
                if g.is_nan() {
                    f64::INFINITY
                } else {
                    g
                }
            })
            .fold(0.0, f64::max)
    }

    /// Holds / Fails / Indistinguishable over the whole sample.
    pub fn verdict(&self, tau: f64, parallel: bool) -> OrderVerdict {
        let worst = self.min_gap(parallel, |_| true);
        let (margin, witness) = match worst {
            Some((m, i)) => (m, Some(self.witness(i))),
            None => (f64::INFINITY, None),
        };
        let status = if margin < -tau {
            OrderStatus::Fails
        } else if self.max_abs_gap() <= tau {
            OrderStatus::Indistinguishable
        } else {
            OrderStatus::Holds
        };
        OrderVerdict { status, witness, margin, grid: self.len(), tolerance: tau, epsilon: None }
    }
}
