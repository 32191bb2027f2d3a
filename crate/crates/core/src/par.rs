//! Index-space reductions that run on rayon when available.
//!
//! Every reduction here is deterministic: minima are ordered by value and
//! then by index, so the reported witness does not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest `f(i)` over `0..n` together with the first index attaining it.
/// NaN counts as negative infinity so that broken evaluations surface as
/// violations.
pub(crate) fn min_indexed<F>(n: usize, parallel: bool, f: F) -> Option<(f64, usize)>
where
    F: Fn(usize) -> Option<f64> + Sync + Send,
{
    let key = |i: usize| f(i).map(|v| (if v.is_nan() { f64::NEG_INFINITY } else { v }, i));
    let pick = |a: Option<(f64, usize)>, b: Option<(f64, usize)>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
    };
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n)
            .into_par_iter()
            .with_min_len(64)
            .map(key)
            .reduce(|| None, pick);
    }
    let _ = parallel;
    (0..n).map(key).fold(None, pick)
}

/// `f` applied to `0..n`, in index order.
pub(crate) fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().with_min_len(16).map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}
