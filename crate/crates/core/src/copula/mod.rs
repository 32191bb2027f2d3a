//! The copula abstraction, its axiomatic audit and the structural
//! combinators.

mod validity;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families::{bertino_value, gaussian_value, DiagonalSection, Generator};
use crate::taildep::TailDepFunction;

pub use validity::{validate_copula, CheckOutcome, ValidityReport, D_INCREASING, GROUNDED, MARGINS};
pub(crate) use validity::cell_volumes;

/// Coordinates within this distance outside `[0, 1]` are clamped instead
/// of rejected.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// A point of `[0, 1]^d`, `d >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::param(format!("points need d >= 2, got {}", coords.len())));
        }
        let coords = clamp_coords(&coords)?;
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Axis-aligned box `[lower, upper]` inside the unit cube.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperbox {
    lower: Point,
    upper: Point,
}

impl Hyperbox {
    pub fn new(lower: Point, upper: Point) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch { expected: lower.dim(), got: upper.dim() });
        }
        if let Some(k) = (0..lower.dim()).find(|&k| lower.0[k] > upper.0[k]) {
            return Err(Error::param(format!("box corner order violated on axis {k}")));
        }
        Ok(Hyperbox { lower, upper })
    }

    pub fn from_coords(lower: &[f64], upper: &[f64]) -> Result<Self> {
        Self::new(Point::new(lower.to_vec())?, Point::new(upper.to_vec())?)
    }

    pub fn lower(&self) -> &Point {
        &self.lower
    }

    pub fn upper(&self) -> &Point {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }
}

fn clamp_coords(u: &[f64]) -> Result<Vec<f64>> {
    u.iter()
        .enumerate()
        .map(|(index, &value)| {
            if !(-BOUNDARY_TOLERANCE..=1.0 + BOUNDARY_TOLERANCE).contains(&value) {
                Err(Error::CoordinateOutOfRange { index, value })
            } else {
                Ok(value.clamp(0.0, 1.0))
            }
        })
        .collect()
}

/// Anything that can be audited as a candidate copula: a dimension and a
/// raw evaluator on `[0, 1]^d`.
pub trait CopulaFn: Send + Sync {
    fn dim(&self) -> usize;

    /// Raw evaluation. Callers guarantee `u.len() == self.dim()` and
    /// `u ∈ [0, 1]^d`.
    fn value(&self, u: &[f64]) -> f64;
}

/// User-supplied closure carried inside a copula or function object.
pub(crate) struct UserFn<F: ?Sized> {
    pub f: Arc<F>,
    pub label: String,
}

impl<F: ?Sized> Clone for UserFn<F> {
    fn clone(&self) -> Self {
        UserFn { f: Arc::clone(&self.f), label: self.label.clone() }
    }
}

impl<F: ?Sized> fmt::Debug for UserFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.label)
    }
}

pub(crate) type PointFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Independence,
    Comonotone,
    Countermonotone,
    Archimedean(Generator),
    MarshallOlkin { alpha: f64 },
    ExtremeValue(TailDepFunction),
    LowerExtremeValue(TailDepFunction),
    FredricksNelsen(DiagonalSection),
    Bertino(DiagonalSection),
    Semilinear(DiagonalSection),
    Gaussian { rho: f64 },
    /// `axis` is zero-based here; descriptors and the public API use 1 and 2.
    Glue { axis: usize, split: f64, left: Arc<Copula>, right: Arc<Copula> },
    Survival(Arc<Copula>),
    Hierarchical { outer: Arc<Copula>, inner: Arc<Copula>, free: usize, leaves: [usize; 2] },
    Custom(UserFn<PointFn>),
}

/// An evaluatable `d`-copula. Immutable and cheap to clone.
#[derive(Debug, Clone)]
pub struct Copula {
    dim: usize,
    pub(crate) node: Node,
}

impl Copula {
    pub(crate) fn from_node(dim: usize, node: Node) -> Self {
        Copula { dim, node }
    }

    /// Product copula Π in dimension `d`.
    pub fn independence(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::from_node(dim, Node::Independence))
    }

    /// Upper Fréchet bound C⁺(u) = min u_k.
    pub fn comonotone(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::from_node(dim, Node::Comonotone))
    }

    /// Lower Fréchet bound; a copula only for `d = 2`.
    pub fn countermonotone() -> Self {
        Self::from_node(2, Node::Countermonotone)
    }

    /// Wraps an arbitrary map as a candidate copula, mainly for audits.
    /// No validation is performed.
    pub fn from_fn<F>(dim: usize, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::from_node(dim, Node::Custom(UserFn { f: Arc::new(f), label: label.into() }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Checked evaluation: validates the point, then applies the axioms at
    /// exact boundary values before falling back to the family formula.
    pub fn eval(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: u.len() });
        }
        let u = clamp_coords(u)?;
        Ok(self.eval_unchecked(&u))
    }

    pub fn eval_point(&self, u: &Point) -> Result<f64> {
        self.eval(u.coords())
    }

    /// Evaluation for points already known to lie in the unit cube.
    pub fn eval_unchecked(&self, u: &[f64]) -> f64 {
        if u.contains(&0.0) {
            return 0.0;
        }
        let mut below_one = u.iter().filter(|&&x| x < 1.0);
        match (below_one.next(), below_one.next()) {
            (None, _) => return 1.0,
            (Some(&x), None) => return x,
            _ => {}
        }
        let v = self.raw(u);
        if v.is_nan() {
            v
        } else {
            v.clamp(0.0, 1.0)
        }
    }

    fn raw(&self, u: &[f64]) -> f64 {
        match &self.node {
            Node::Independence => u.iter().product(),
            Node::Comonotone => u.iter().copied().fold(1.0, f64::min),
            Node::Countermonotone => (u[0] + u[1] - 1.0).max(0.0),
            Node::Archimedean(g) => g.inverse(u.iter().map(|&x| g.phi(x)).sum()),
            Node::MarshallOlkin { alpha } => (u[0].powf(1.0 - alpha) * u[1]).min(u[0]),
            Node::ExtremeValue(tdf) => {
                if u[0] == 0.0 || u[1] == 0.0 {
                    return 0.0;
                }
                let (a, b) = (-u[0].ln(), -u[1].ln());
                (-(a + b) + tdf.value(&[a, b])).exp()
            }
            Node::LowerExtremeValue(tdf) => lower_ev_value(tdf, u[0], u[1]),
            Node::FredricksNelsen(d) => {
                let (s, t) = (u[0], u[1]);
                s.min(t).min(0.5 * (d.value(s) + d.value(t)))
            }
            Node::Bertino(d) => bertino_value(d, u[0], u[1]),
            Node::Semilinear(d) => {
                let (lo, hi) = (u[0].min(u[1]), u[0].max(u[1]));
                if hi == 0.0 {
                    0.0
                } else {
                    lo * d.value(hi) / hi
                }
            }
            Node::Gaussian { rho } => gaussian_value(*rho, u[0], u[1]),
            Node::Glue { axis, split, left, right } => glue_value(*axis, *split, left, right, u),
            Node::Survival(inner) => {
                u[0] + u[1] - 1.0 + inner.eval_unchecked(&[1.0 - u[0], 1.0 - u[1]])
            }
            Node::Hierarchical { outer, inner, free, leaves } => {
                let v = inner.eval_unchecked(&[u[leaves[0]], u[leaves[1]]]);
                outer.eval_unchecked(&[u[*free], v])
            }
            Node::Custom(uf) => (uf.f)(u),
        }
    }

    /// The diagonal section t ↦ C(t, ..., t).
    pub fn diagonal(&self) -> DiagonalSection {
        DiagonalSection::of_copula(self.clone())
    }

    /// Closed-form tail dependence function where the family provides one.
    pub fn analytic_tdf(&self) -> Option<TailDepFunction> {
        match &self.node {
            Node::Independence | Node::Countermonotone | Node::MarshallOlkin { .. } => {
                Some(TailDepFunction::zero(self.dim))
            }
            Node::Comonotone => Some(TailDepFunction::min(self.dim)),
            Node::Archimedean(g) if !g.is_strict() => Some(TailDepFunction::zero(self.dim)),
            Node::Archimedean(g) => {
                g.rv_index_at_0().map(|a| crate::taildep::archimedean_tdf(a, self.dim))
            }
            Node::LowerExtremeValue(tdf) => Some(tdf.clone()),
            Node::Gaussian { rho } if *rho >= 1.0 => Some(TailDepFunction::min(2)),
            Node::Gaussian { .. } => Some(TailDepFunction::zero(2)),
            _ => None,
        }
    }
}

impl CopulaFn for Copula {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, u: &[f64]) -> f64 {
        self.raw(u)
    }
}

impl<T: CopulaFn + ?Sized> CopulaFn for Arc<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn value(&self, u: &[f64]) -> f64 {
        (**self).value(u)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        Err(Error::param(format!("copula dimension must be at least 2, got {dim}")))
    } else {
        Ok(())
    }
}

/// û + v̂ − 1 + C^EV(1−u, 1−v) written so that no O(1) terms cancel near the
/// origin: with A = −log(1−u), B = −log(1−v) and E = A + B − Λ(A, B) the
/// value is u + v + expm1(−E).
fn lower_ev_value(tdf: &TailDepFunction, u: f64, v: f64) -> f64 {
    if u == 0.0 || v == 0.0 {
        return 0.0;
    }
    if u == 1.0 {
        return v;
    }
    if v == 1.0 {
        return u;
    }
    let a = -(-u).ln_1p();
    let b = -(-v).ln_1p();
    let e = a + b - tdf.value(&[a, b]);
    u + v + (-e).exp_m1()
}

fn glue_value(axis: usize, split: f64, left: &Copula, right: &Copula, u: &[f64]) -> f64 {
    let (x, y) = (u[axis], u[1 - axis]);
    let arrange = |along: f64| if axis == 0 { [along, y] } else { [y, along] };
    if x <= split {
        split * left.eval_unchecked(&arrange((x / split).min(1.0)))
    } else {
        let t = ((x - split) / (1.0 - split)).clamp(0.0, 1.0);
        split * y + (1.0 - split) * right.eval_unchecked(&arrange(t))
    }
}

/// H-volume of `b` under `c`: the signed sum over the 2^d corners, each
/// weighted by (−1)^(number of lower coordinates).
pub fn h_volume<C: CopulaFn + ?Sized>(c: &C, b: &Hyperbox) -> Result<f64> {
    if b.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: b.dim() });
    }
    Ok(signed_corner_sum(b.lower.coords(), b.upper.coords(), |x| c.value(x)))
}

pub(crate) fn signed_corner_sum(lo: &[f64], hi: &[f64], f: impl Fn(&[f64]) -> f64) -> f64 {
    let d = lo.len();
    let mut corner = vec![0.0; d];
    let mut sum = 0.0;
    for mask in 0..(1usize << d) {
        let mut lowers = 0;
        for k in 0..d {
            if mask & (1 << k) == 0 {
                corner[k] = lo[k];
                lowers += 1;
            } else {
                corner[k] = hi[k];
            }
        }
        let v = f(&corner);
        if lowers % 2 == 0 {
            sum += v;
        } else {
            sum -= v;
        }
    }
    sum
}

/// Glues two bivariate copulas along `axis` (1 or 2) at `split` ∈ (0, 1):
/// on the strip `u_axis <= split` the rescaled `left` copula, beyond it the
/// rescaled `right` copula stacked on the strip's top margin.
pub fn glue(left: &Copula, right: &Copula, axis: usize, split: f64) -> Result<Copula> {
    if left.dim() != 2 || right.dim() != 2 {
        return Err(Error::param("gluing requires bivariate copulas"));
    }
    if axis != 1 && axis != 2 {
        return Err(Error::param(format!("glue axis must be 1 or 2, got {axis}")));
    }
    if !(split > 0.0 && split < 1.0) {
        return Err(Error::param(format!("glue split must lie in (0, 1), got {split}")));
    }
    Ok(Copula::from_node(
        2,
        Node::Glue {
            axis: axis - 1,
            split,
            left: Arc::new(left.clone()),
            right: Arc::new(right.clone()),
        },
    ))
}

/// Survival copula (u, v) ↦ u + v − 1 + C(1 − u, 1 − v).
pub fn survival(c: &Copula) -> Result<Copula> {
    if c.dim() != 2 {
        return Err(Error::param(format!("survival copula requires d = 2, got {}", c.dim())));
    }
    Ok(Copula::from_node(2, Node::Survival(Arc::new(c.clone()))))
}
