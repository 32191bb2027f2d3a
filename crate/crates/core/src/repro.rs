//! Data behind the counterexamples: the Marshall-Olkin/Clayton curve, the
//! two simplex-restricted tail dependence functions that cross, and the
//! glued Joe pair ordered conversely along two rays.
//!
//! Every value is recomputed from the library; the checks re-evaluate the
//! displayed inequality row by row.

use serde::Serialize;

use crate::copula::{glue, Copula};
use crate::error::{Error, Result};
use crate::families::{archimedean, clayton_generator, joe_generator, marshall_olkin};
use crate::orders::{check_too, default_directions, DirectionalVerdict, OrderStatus};
use crate::output::{num, Table};
use crate::taildep::{estimate_tdf, LimitSchedule, SimplexTdf};

pub const NAMES: &[&str] = &["mo-clayton", "fig1-tdfs", "glued-joe"];

#[derive(Debug, Clone, Serialize)]
pub struct ReproCheck {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl ReproCheck {
    fn new(check: &str, passed: bool, detail: impl Into<String>) -> Self {
        ReproCheck { check: check.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone)]
pub struct Repro {
    pub name: &'static str,
    pub table: Table,
    pub checks: Vec<ReproCheck>,
    pub verdicts: Vec<DirectionalVerdict>,
}

impl Repro {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run(name: &str) -> Result<Repro> {
    match name {
        "mo-clayton" => mo_clayton(0.5, 1.0),
        "fig1-tdfs" => fig1_tdfs(),
        "glued-joe" => glued_joe(2.0, &LimitSchedule::default()),
        _ => Err(Error::Parse(format!(
            "unknown counterexample `{name}` (expected one of {})",
            NAMES.join(", ")
        ))),
    }
}

/// Values of M_α and Clayton C_ϑ on the curve (t, t^α), t = i/100.
/// On the curve M_α equals t while C_ϑ stays strictly below it, so no ball
/// around the origin carries the order M_α ≤ C_ϑ.
pub fn mo_clayton(alpha: f64, theta: f64) -> Result<Repro> {
    let m = marshall_olkin(alpha)?;
    let c = archimedean(clayton_generator(theta)?, 2)?;
    let mut table = Table::new(["t", "m_alpha", "c_theta", "gap"]);
    let (mut below, mut on_diag) = (true, true);
    let mut first_bad = None;
    for i in 1..100 {
        let t = i as f64 / 100.0;
        let u = [t, t.powf(alpha)];
        let (mv, cv) = (m.eval(&u)?, c.eval(&u)?);
        let ok_eq = (mv - t).abs() <= 4.0 * f64::EPSILON * t;
        let ok_lt = cv < mv;
        if !(ok_eq && ok_lt) && first_bad.is_none() {
            first_bad = Some(t);
        }
        on_diag &= ok_eq;
        below &= ok_lt;
        table.push(vec![num(t), num(mv), num(cv), num(mv - cv)]);
    }
    let detail = first_bad.map_or_else(|| "all 99 rows".to_string(), |t| format!("first violation at t = {t}"));
    Ok(Repro {
        name: "mo-clayton",
        table,
        checks: vec![
            ReproCheck::new("m_alpha_equals_t", on_diag, detail.clone()),
            ReproCheck::new("c_theta_below_m_alpha", below, detail),
        ],
        verdicts: Vec::new(),
    })
}

/// The two simplex restrictions t(1−t) and min{t/2, 1−t} with the upper
/// bound min{t, 1−t}, t = i/100.
pub fn fig1_tdfs() -> Result<Repro> {
    let (p, q, up) = (SimplexTdf::parabola(), SimplexTdf::piecewise(), SimplexTdf::upper());
    let mut table = Table::new(["t", "parabola", "piecewise", "upper"]);
    let (mut bounded, mut p_above, mut q_above) = (true, None, None);
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        let (a, b, u) = (p.value(t), q.value(t), up.value(t));
        bounded &= a <= u && b <= u && a >= 0.0 && b >= 0.0;
        if a > b && p_above.is_none() {
            p_above = Some(t);
        }
        if b > a && q_above.is_none() {
            q_above = Some(t);
        }
        table.push(vec![num(t), num(a), num(b), num(u)]);
    }
    let meet = (p.value(0.5) - q.value(0.5)).abs();
    let crossing = match (p_above, q_above) {
        (Some(a), Some(b)) => (true, format!("parabola above at t = {a}, piecewise above at t = {b}")),
        _ => (false, "one curve dominates the other".to_string()),
    };
    Ok(Repro {
        name: "fig1-tdfs",
        table,
        checks: vec![
            ReproCheck::new("below_upper_bound", bounded, "0 <= curve <= min(t, 1-t)"),
            ReproCheck::new("equal_at_one_half", meet == 0.0, format!("|difference| = {meet:e}")),
            ReproCheck::new("not_ordered", crossing.0, crossing.1),
        ],
        verdicts: Vec::new(),
    })
}

/// The glued pair C₁ = glue(Joe_ϑ, C⁺, 1, ½), C₂ = glue(Joe_ϑ, C⁺, 2, ½):
/// ray traces along (1/2, 1) and (1, 1/2) plus the tail orthant verdicts
/// in both argument orders.
pub fn glued_joe(theta: f64, sched: &LimitSchedule) -> Result<Repro> {
    let (c1, c2) = glued_joe_pair(theta)?;
    let dirs: Vec<Vec<f64>> = vec![vec![0.5, 1.0], vec![1.0, 0.5]];
    let mut table = Table::new(["w1", "w2", "s", "c1", "c2", "gap"]);
    for w in &dirs {
        for s in sched.points()? {
            if s * w[0].max(w[1]) > 1.0 {
                continue;
            }
            let u = [s * w[0], s * w[1]];
            let (a, b) = (c1.eval(&u)?, c2.eval(&u)?);
            table.push(vec![num(w[0]), num(w[1]), num(s), num(a), num(b), num(b - a)]);
        }
    }
    let tau = 1e-6;
    let forward = check_too(&c1, &c2, &dirs, sched, tau)?;
    let backward = check_too(&c2, &c1, &dirs, sched, tau)?;
    let st = |v: &[DirectionalVerdict], k: usize| v[k].verdict.status;
    let converse = st(&forward, 0) == OrderStatus::Fails
        && st(&backward, 0) != OrderStatus::Fails
        && st(&forward, 1) != OrderStatus::Fails
        && st(&backward, 1) == OrderStatus::Fails;
    let detail = format!(
        "c1 vs c2: {:?} along (1/2,1), {:?} along (1,1/2); c2 vs c1: {:?}, {:?}",
        st(&forward, 0),
        st(&forward, 1),
        st(&backward, 0),
        st(&backward, 1)
    );

    let mut worst: f64 = 0.0;
    for w in default_directions(2) {
        let a = estimate_tdf(&c1, &w, sched)?.value;
        let b = estimate_tdf(&c2, &w, sched)?.value;
        worst = worst.max((a - b).abs());
    }
    let mut verdicts = forward;
    verdicts.extend(backward);
    Ok(Repro {
        name: "glued-joe",
        table,
        checks: vec![
            ReproCheck::new("equal_tail_dependence", worst <= 5e-3, format!("max |Λ₁ − Λ₂| = {worst:e} over 23 directions")),
            ReproCheck::new("conversely_ordered", converse, detail),
        ],
        verdicts,
    })
}

/// The glued Joe fixtures, glued along the first and the second axis.
pub fn glued_joe_pair(theta: f64) -> Result<(Copula, Copula)> {
    let joe = archimedean(joe_generator(theta)?, 2)?;
    let cp = Copula::comonotone(2)?;
    Ok((glue(&joe, &cp, 1, 0.5)?, glue(&joe, &cp, 2, 0.5)?))
}
