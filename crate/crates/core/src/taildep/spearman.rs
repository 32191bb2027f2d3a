use super::tdf::TailDepFunction;
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_gauss_legendre, AdaptiveResult};

/// Required agreement between the 64- and 96-point totals.
const AGREEMENT: f64 = 1e-6;
const TOL_1D: f64 = 1e-12;
const TOL_INNER: f64 = 1e-10;
const TOL_OUTER: f64 = 1e-9;

/// (d + 1) ∫_{[0,1]^d} Λ(w) dw for d ≤ 3.
///
/// Homogeneity reduces the cube integral to faces: splitting the cube by
/// the index k of the largest coordinate and writing w = m (y with 1 at
/// k) gives (d + 1) ∫ Λ = Σ_k ∫_{[0,1]^{d−1}} Λ(y with 1 at k) dy. The face
/// integrals are computed adaptively, which keeps kinks of Λ from
/// spoiling the accuracy.
pub fn spearman_tdf_limit(tdf: &TailDepFunction, d: usize) -> Result<f64> {
    if d != tdf.dim() {
        return Err(Error::DimensionMismatch { expected: tdf.dim(), got: d });
    }
    if d > 3 {
        return Err(Error::QuadratureDimension(d));
    }
    let mut total = AdaptiveResult { low: 0.0, high: 0.0, panels: 0 };
    for k in 0..d {
        let face = |y: &[f64]| {
            let mut w = [0.0; 3];
            let mut it = y.iter();
            for (j, x) in w.iter_mut().enumerate().take(d) {
                *x = if j == k { 1.0 } else { *it.next().unwrap() };
            }
            tdf.value(&w[..d])
        };
        let r = match d {
            1 => AdaptiveResult { low: face(&[]), high: face(&[]), panels: 1 },
            2 => adaptive_gauss_legendre(&|y| face(&[y]), 0.0, 1.0, TOL_1D),
            _ => adaptive_gauss_legendre(
                &|y1| adaptive_gauss_legendre(&|y2| face(&[y1, y2]), 0.0, 1.0, TOL_INNER).high,
                0.0,
                1.0,
                TOL_OUTER,
            ),
        };
        total.low += r.low;
        total.high += r.high;
        total.panels += r.panels;
    }
    total.checked(AGREEMENT)
}
