use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampling configuration shared by audits and order checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Points per axis.
    pub resolution: usize,
    /// Order-check tolerance: gaps within `tau` are not violations, and
    /// strict orders need a gap larger than `tau`.
    pub tau: f64,
    /// Width of the band near the simplex boundary excluded from strict
    /// tail-order checks.
    pub interior_margin: f64,
    /// Tolerance for axiomatic audits (groundedness, margins, volumes,
    /// homogeneity, Lipschitz, concavity).
    pub audit_tolerance: f64,
    /// Run grid work on the rayon pool (only with the `parallel` feature).
    pub parallel: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            resolution: 64,
            tau: 1e-6,
            interior_margin: 1e-3,
            audit_tolerance: 1e-9,
            parallel: true,
        }
    }
}

impl GridConfig {
    pub fn with_resolution(resolution: usize) -> Result<Self> {
        GridConfig { resolution, ..Default::default() }.validated()
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn validated(self) -> Result<Self> {
        if self.resolution < 8 {
            return Err(Error::param(format!(
                "grid resolution must be at least 8, got {}",
                self.resolution
            )));
        }
        if !(self.tau > 0.0) || !(self.audit_tolerance > 0.0) {
            return Err(Error::param("tolerances must be positive"));
        }
        if !(0.0..0.5).contains(&self.interior_margin) {
            return Err(Error::param("interior margin must lie in [0, 1/2)"));
        }
        Ok(self)
    }
}

/// Regular lattice `{0, h, ..., (n-1)h}^d` with `h = extent / (n - 1)`,
/// addressed by a flat row-major index (last coordinate fastest).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Lattice {
    pub dim: usize,
    pub n: usize,
    pub extent: f64,
}

impl Lattice {
    pub fn unit(dim: usize, n: usize) -> Self {
        Lattice { dim, n, extent: 1.0 }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn coord(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.extent
        } else {
            self.extent * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn indices(&self, mut flat: usize, out: &mut [usize]) {
        for k in (0..self.dim).rev() {
            out[k] = flat % self.n;
            flat /= self.n;
        }
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut idx = vec![0; self.dim];
        self.indices(flat, &mut idx);
        idx.iter().map(|&i| self.coord(i)).collect()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }
}

/// Points of the simplex `{w >= 0 : sum w = 1}` on the lattice with
/// `divisions` steps per edge, in lexicographic order of the integer
/// compositions.
pub(crate) fn simplex_lattice(dim: usize, divisions: usize) -> Vec<Vec<f64>> {
    fn rec(dim: usize, left: usize, prefix: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<f64>>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(prefix.iter().map(|&k| k as f64 / total as f64).collect());
            prefix.pop();
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(dim, left - k, prefix, total, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, divisions, &mut Vec::with_capacity(dim), divisions, &mut out);
    out
}
