use super::tdf::TailDepFunction;
use crate::copula::{cell_volumes, CheckOutcome, ValidityReport, D_INCREASING};
use crate::grid::{GridConfig, Lattice};
use crate::par;

pub const BOUNDS: &str = "bounds";
pub const HOMOGENEITY: &str = "homogeneity";
pub const LIPSCHITZ: &str = "lipschitz";
pub const CONCAVITY: &str = "concavity";

const SCALES: [f64; 2] = [0.5, 2.0];
const OFFSETS: [usize; 4] = [1, 3, 9, 27];

/// Unit steps e_i, e_i + e_j and e_i − e_j used to pair lattice points.
fn directions(d: usize) -> Vec<Vec<isize>> {
    let mut dirs = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        dirs.push(e);
    }
    for i in 0..d {
        for j in i + 1..d {
            for sign in [1, -1] {
                let mut e = vec![0; d];
                e[i] = 1;
                e[j] = sign;
                dirs.push(e);
            }
        }
    }
    dirs
}

/// Audits Λ on the lattice with `g.resolution` points per axis over
/// [0,1]^d: bounds 0 ≤ Λ ≤ min w, nonnegative cell volumes, homogeneity
/// under w ↦ sw for s ∈ {1/2, 2}, and the Lipschitz and midpoint-concavity
/// inequalities on point pairs offset by 1, 3, 9 and 27 steps along the
/// axes and the two-coordinate diagonals.
pub fn validate_tdf(tdf: &TailDepFunction, g: &GridConfig) -> ValidityReport {
    let d = tdf.dim();
    let n = g.resolution.max(2);
    let lattice = Lattice::unit(d, n);
    let tol = g.audit_tolerance;
    let table: Vec<f64> = par::map_indexed(lattice.len(), g.parallel, |i| {
        tdf.value(&lattice.point(i))
    });

    let bounds = par::min_indexed(lattice.len(), g.parallel, |i| {
        let w = lattice.point(i);
        let m = w.iter().copied().fold(f64::INFINITY, f64::min);
        Some(table[i].min(m - table[i]))
    });
    let (volumes, cell_witness) = cell_volumes(&table, &lattice, g.parallel);

    let homogeneity_at = |i: usize| -> (f64, Vec<f64>) {
        let w = lattice.point(i);
        let mut worst = (f64::INFINITY, w.clone());
        for s in SCALES {
            let sw: Vec<f64> = w.iter().map(|x| s * x).collect();
            let slack = -(tdf.value(&sw) - s * table[i]).abs();
            let slack = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
            if slack < worst.0 {
                worst = (slack, sw);
            }
        }
        worst
    };
    let homogeneity = par::min_indexed(lattice.len(), g.parallel, |i| Some(homogeneity_at(i).0));

    let dirs = directions(d);
    // worst (lipschitz, concavity) slack over pairs starting at point i,
    // with the flat index of the partner point
    let pairs_at = |i: usize| -> [(f64, usize); 2] {
        let mut idx = vec![0usize; d];
        lattice.indices(i, &mut idx);
        let mut worst = [(f64::INFINITY, i), (f64::INFINITY, i)];
        let mut other = vec![0usize; d];
        let mut mid = vec![0.0; d];
        for dir in &dirs {
            for off in OFFSETS {
                let inside = idx.iter().zip(dir).zip(other.iter_mut()).all(|((&k, &e), o)| {
                    let j = k as isize + e * off as isize;
                    *o = j.max(0) as usize;
                    (0..n as isize).contains(&j)
                });
                if !inside {
                    continue;
                }
                let j = lattice.flat(&other);
                let mut dist = 0.0;
                for ((m, &a), &b) in mid.iter_mut().zip(&idx).zip(&other) {
                    let (x, y) = (lattice.coord(a), lattice.coord(b));
                    dist += (x - y).abs();
                    *m = 0.5 * (x + y);
                }
                let lv = table[j];
                let lip = dist - (lv - table[i]).abs();
                let conc = tdf.value(&mid) - 0.5 * (lv + table[i]);
                for (slot, slack) in worst.iter_mut().zip([lip, conc]) {
                    let slack = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
                    if slack < slot.0 {
                        *slot = (slack, j);
                    }
                }
            }
        }
        worst
    };
    let pair_slacks: Vec<[f64; 2]> = par::map_indexed(lattice.len(), g.parallel, |i| {
        let [a, b] = pairs_at(i);
        [a.0, b.0]
    });
    let pair_min = |k: usize| {
        par::min_indexed(lattice.len(), g.parallel, |i| {
            let s = pair_slacks[i][k];
            (s != f64::INFINITY).then_some(s)
        })
    };
    let (lipschitz, concavity) = (pair_min(0), pair_min(1));

    let point_witness = |i: usize| (lattice.point(i), format!("Λ = {}", table[i]));
    let pair_witness = |k: usize| {
        move |i: usize| {
            let w = lattice.point(i);
            let v = lattice.point(pairs_at(i)[k].1);
            let detail = format!("pair {w:?} and {v:?}");
            (w, detail)
        }
    };

    ValidityReport {
        checks: vec![
            CheckOutcome::from_slack(BOUNDS, tol, bounds, point_witness),
            CheckOutcome::from_slack(D_INCREASING, tol, volumes, cell_witness),
            CheckOutcome::from_slack(HOMOGENEITY, tol, homogeneity, |i| {
                let (_, sw) = homogeneity_at(i);
                let w = lattice.point(i);
                (w.clone(), format!("Λ({sw:?}) vs scaled Λ({w:?})"))
            }),
            CheckOutcome::from_slack(LIPSCHITZ, tol, lipschitz, pair_witness(0)),
            CheckOutcome::from_slack(CONCAVITY, tol, concavity, pair_witness(1)),
        ],
    }
}
