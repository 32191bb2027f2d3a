use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use statrs::function::erf::erfc_inv;

use crate::quadrature::{rule64, GaussLegendre};

/// Beyond this |ρ| the copula is evaluated as C⁺ or C⁻.
pub const RHO_CUTOFF: f64 = 0.999;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal quantile: the inverse error function gives a starting
/// point that two Newton steps on the CDF polish to full precision.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let mut x = -SQRT_2 * erfc_inv(2.0 * p);
    for _ in 0..2 {
        let density = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        if density == 0.0 {
            break;
        }
        x -= (normal_cdf(x) - p) / density;
    }
    x
}

/// P(X ≤ h, Y ≤ k) for a standard bivariate normal with correlation ρ,
/// from the single-integral form
/// Φ(h)Φ(k) + (1/2π) ∫_0^{asin ρ} exp(−(h² + k² − 2hk sin θ) / (2 cos² θ)) dθ.
pub fn bivariate_normal_cdf(h: f64, k: f64, rho: f64) -> f64 {
    bivariate_normal_cdf_with(rule64(), h, k, rho)
}

pub fn bivariate_normal_cdf_with(rule: &GaussLegendre, h: f64, k: f64, rho: f64) -> f64 {
    let base = normal_cdf(h) * normal_cdf(k);
    if rho == 0.0 {
        return base;
    }
    let (hh, kk, hk) = (h * h, k * k, h * k);
    let integral = rule.integrate(0.0, rho.asin(), |theta| {
        let (s, c) = theta.sin_cos();
        (-(hh + kk - 2.0 * hk * s) / (2.0 * c * c)).exp()
    });
    base + integral / (2.0 * PI)
}

pub(crate) fn gaussian_value(rho: f64, u: f64, v: f64) -> f64 {
    if rho > RHO_CUTOFF {
        return u.min(v);
    }
    if rho < -RHO_CUTOFF {
        return (u + v - 1.0).max(0.0);
    }
    if rho == 0.0 {
        return u * v;
    }
    if u <= 0.0 || v <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 || v >= 1.0 {
        return u.min(v);
    }
    bivariate_normal_cdf(normal_quantile(u), normal_quantile(v), rho).clamp(0.0, u.min(v))
}
