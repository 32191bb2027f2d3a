use serde::{Deserialize, Serialize};

use super::CopulaFn;
use crate::grid::{GridConfig, Lattice};
use crate::par;

/// One named property check with its worst sampled violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Largest violation amount seen (values <= tolerance pass; negative
    /// values mean every sample held with room to spare).
    pub worst_violation: f64,
    pub witness: Option<Vec<f64>>,
    pub detail: String,
}

impl CheckOutcome {
    pub(crate) fn from_slack(
        name: &str,
        tolerance: f64,
        worst: Option<(f64, usize)>,
        witness: impl Fn(usize) -> (Vec<f64>, String),
    ) -> Self {
        match worst {
            None => CheckOutcome {
                name: name.to_string(),
                passed: true,
                worst_violation: f64::NEG_INFINITY,
                witness: None,
                detail: "no samples".into(),
            },
            Some((slack, i)) => {
                let violation = -slack;
                let passed = violation <= tolerance;
                let (point, detail) = witness(i);
                CheckOutcome {
                    name: name.to_string(),
                    passed,
                    worst_violation: violation,
                    witness: (!passed).then_some(point),
                    detail,
                }
            }
        }
    }
}

/// Collection of named checks; passes when every check passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn grounded(&self) -> bool {
        self.check(GROUNDED).is_some_and(|c| c.passed)
    }

    pub fn uniform_margins(&self) -> bool {
        self.check(MARGINS).is_some_and(|c| c.passed)
    }

    pub fn d_increasing(&self) -> bool {
        self.check(D_INCREASING).is_some_and(|c| c.passed)
    }
}

pub const GROUNDED: &str = "grounded";
pub const MARGINS: &str = "uniform_margins";
pub const D_INCREASING: &str = "d_increasing";

/// Audits the copula axioms on the regular grid with `g.resolution` points
/// per axis: groundedness on the faces `u_k = 0`, uniform margins on the
/// edges through `1`, and nonnegative H-volume of every grid cell.
pub fn validate_copula<C: CopulaFn + ?Sized>(c: &C, g: &GridConfig) -> ValidityReport {
    let d = c.dim();
    let n = g.resolution.max(2);
    let lattice = Lattice::unit(d, n);
    let tol = g.audit_tolerance;

    let table: Vec<f64> = par::map_indexed(lattice.len(), g.parallel, |i| {
        c.value(&lattice.point(i))
    });

    let grounded = par::min_indexed(lattice.len(), g.parallel, |i| {
        let mut idx = vec![0; d];
        lattice.indices(i, &mut idx);
        idx.contains(&0).then(|| -table[i].abs())
    });
    let margins = par::min_indexed(lattice.len(), g.parallel, |i| {
        let mut idx = vec![0; d];
        lattice.indices(i, &mut idx);
        let free: Vec<usize> = (0..d).filter(|&k| idx[k] + 1 != n).collect();
        match free.len() {
            0 => Some(-(table[i] - 1.0).abs()),
            1 => Some(-(table[i] - lattice.coord(idx[free[0]])).abs()),
            _ => None,
        }
    });
    let (volumes, cell_witness) = cell_volumes(&table, &lattice, g.parallel);
    let point_witness = |i: usize| (lattice.point(i), format!("value {}", table[i]));
    ValidityReport {
        checks: vec![
            CheckOutcome::from_slack(GROUNDED, tol, grounded, point_witness),
            CheckOutcome::from_slack(MARGINS, tol, margins, point_witness),
            CheckOutcome::from_slack(D_INCREASING, tol, volumes, cell_witness),
        ],
    }
}

/// Builds the (point, detail) witness for a flat index.
pub(crate) trait WitnessFn: Fn(usize) -> (Vec<f64>, String) {}
impl<F: Fn(usize) -> (Vec<f64>, String)> WitnessFn for F {}

/// Smallest H-volume over the cells of a tabulated lattice, and a witness
/// builder for the offending cell.
pub(crate) fn cell_volumes<'a>(
    table: &'a [f64],
    lattice: &'a Lattice,
    parallel: bool,
) -> (Option<(f64, usize)>, impl WitnessFn + 'a) {
    let d = lattice.dim;
    let cells = Lattice { dim: d, n: lattice.n - 1, extent: 1.0 };
    let volumes = par::min_indexed(cells.len(), parallel, |i| {
        let mut idx = vec![0; d];
        cells.indices(i, &mut idx);
        let mut corner = vec![0; d];
        let mut vol = 0.0;
        for mask in 0..(1usize << d) {
            let mut lowers = 0;
            for k in 0..d {
                corner[k] = idx[k] + usize::from(mask & (1 << k) != 0);
                lowers += usize::from(mask & (1 << k) == 0);
            }
            let v = table[lattice.flat(&corner)];
            vol += if lowers % 2 == 0 { v } else { -v };
        }
        Some(vol)
    });
    let witness = move |i: usize| {
        let mut idx = vec![0; d];
        cells.indices(i, &mut idx);
        let lo: Vec<f64> = idx.iter().map(|&k| lattice.coord(k)).collect();
        let hi: Vec<f64> = idx.iter().map(|&k| lattice.coord(k + 1)).collect();
        (lo.clone(), format!("cell {lo:?} .. {hi:?}"))
    };
    (volumes, witness)
}
