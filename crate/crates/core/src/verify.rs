//! Verification suites run by `tailorder verify`.
//!
//! Each suite evaluates its named checks on the shipped fixtures and
//! reports one row per check. A check that errors is reported as failed
//! with the error message as detail.

use serde::Serialize;

use crate::copula::{validate_copula, Copula, Point};
use crate::error::{Error, Result};
use crate::families::{
    archimedean, bertino, clayton_generator, fredricks_nelsen, gumbel_generator, lower_ev_copula,
    marshall_olkin, nonstrict_linear_generator, semilinear, DiagonalSection, Generator,
};
use crate::fixtures::{parse_tdf, standard_fixtures, STANDARD_TDFS};
use crate::grid::GridConfig;
use crate::orders::{
    archimedean_order_equivalence, check_diagonal_order, check_loc, check_tdo, find_cone_epsilon,
    ratio_monotonicity_check, subadditivity_check, ConeSpec, OrderStatus,
};
use crate::taildep::{
    estimate_tdf, simplex_restriction, spearman_tdf_limit, tail_expansion_residual, tdc_from_simplex,
    validate_tdf, LimitSchedule, TailDepFunction,
};

pub const SUITES: &[&str] = &["expansion", "archimedean", "ev", "diagonal", "cone", "spearman"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub suite: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite<'a> {
    name: &'static str,
    rows: &'a mut Vec<VerifyRow>,
}

impl Suite<'_> {
    fn record(&mut self, check: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.rows.push(VerifyRow { suite: self.name, check: check.into(), passed, detail });
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run(suite: &str, g: &GridConfig) -> Result<Vec<VerifyRow>> {
    let names: Vec<&'static str> = match suite {
        "all" => SUITES.to_vec(),
        s => vec![*SUITES
            .iter()
            .find(|&&n| n == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}` (expected all, {})", SUITES.join(", "))))?],
    };
    let mut rows = Vec::new();
    for name in names {
        let mut s = Suite { name, rows: &mut rows };
        match name {
            "expansion" => expansion(&mut s),
            "archimedean" => archimedean_suite(&mut s, g),
            "ev" => ev(&mut s, g),
            "diagonal" => diagonal(&mut s, g),
            "cone" => cone(&mut s, g),
            "spearman" => spearman(&mut s),
            _ => unreachable!(),
        }
    }
    Ok(rows)
}

fn clayton(theta: f64) -> Result<Copula> {
    archimedean(clayton_generator(theta)?, 2)
}

fn simplex21() -> Vec<Vec<f64>> {
    (0..=20).map(|i| i as f64 / 20.0).map(|t| vec![t, 1.0 - t]).collect()
}

/// Largest |Λ̂(w) − Λ(w)| over the 21-point simplex grid.
fn surface_error(c: &Copula, tdf: &TailDepFunction) -> Result<f64> {
    let sched = LimitSchedule::default();
    let mut worst: f64 = 0.0;
    for w in simplex21() {
        worst = worst.max((estimate_tdf(c, &w, &sched)?.value - tdf.value(&w)).abs());
    }
    Ok(worst)
}

fn expansion(s: &mut Suite) {
    for theta in [1.0, 2.0, 4.0] {
        s.record(format!("clayton_{theta}_coefficient"), (|| {
            let est = estimate_tdf(&clayton(theta)?, &[1.0, 1.0], &LimitSchedule::default())?;
            let err = (est.value - 2f64.powf(-1.0 / theta)).abs();
            Ok((err <= 1e-3, format!("|λ̂ − 2^(−1/ϑ)| = {err:.3e}")))
        })());
    }
    s.record("clayton_2_surface", (|| {
        let err = surface_error(&clayton(2.0)?, &TailDepFunction::clayton(2.0, 2)?)?;
        Ok((err <= 5e-3, format!("max error {err:.3e} on 21 directions")))
    })());
    s.record("clayton_1_residuals", (|| {
        let (c, l) = (clayton(1.0)?, TailDepFunction::clayton(1.0, 2)?);
        let mut prev = f64::INFINITY;
        let mut worst: f64 = 0.0;
        let mut monotone = true;
        for t in [0.1, 0.01, 0.001] {
            let r = tail_expansion_residual(&c, &l, &Point::new(vec![t, t])?)?;
            worst = worst.max((r - t / (4.0 * (2.0 - t))).abs());
            monotone &= r.abs() < prev;
            prev = r.abs();
        }
        Ok((worst <= 1e-9 && monotone, format!("max deviation {worst:.3e}, decreasing: {monotone}")))
    })());
    for name in STANDARD_TDFS {
        s.record(format!("validate_tdf_{name}"), (|| {
            let r = validate_tdf(&parse_tdf(name)?, &GridConfig::default());
            let bad: Vec<_> = r.failures().map(|f| f.name.clone()).collect();
            Ok((r.passed(), if bad.is_empty() { "five checks pass".into() } else { bad.join(", ") }))
        })());
    }
    s.record("non_homogeneous_rejected", (|| {
        let sq = TailDepFunction::from_fn(2, "min²", |w| w[0].min(w[1]).powi(2));
        let r = validate_tdf(&sq, &GridConfig::default());
        let h = r.check(crate::taildep::HOMOGENEITY).ok_or(Error::param("no homogeneity check"))?;
        Ok((!h.passed && h.witness.is_some(), h.detail.clone()))
    })());
    s.record("coefficient_from_restriction", (|| {
        let mut ok = true;
        for name in ["zero", "min", "clayton:1", "clayton:2", "fig1-parabola", "fig1-piecewise"] {
            let l = parse_tdf(name)?;
            ok &= l.coefficient() == tdc_from_simplex(&simplex_restriction(&l)?);
        }
        Ok((ok, "λ = 2 φ(1/2) exactly".into()))
    })());
}

fn archimedean_suite(s: &mut Suite, g: &GridConfig) {
    for (a, b) in [(1.0, 2.0), (1.0, 4.0), (2.0, 4.0)] {
        s.record(format!("pipeline_clayton_{a}_{b}"), (|| {
            let (g1, g2) = (clayton_generator(a)?, clayton_generator(b)?);
            let fwd = [
                ratio_monotonicity_check(&g1, &g2, 0.5, g)?.status,
                subadditivity_check(&g1, &g2, 10.0, g)?.status,
                check_loc(&clayton(a)?, &clayton(b)?, 0.2, g)?.status,
            ];
            let rev = [
                ratio_monotonicity_check(&g2, &g1, 0.5, g)?.status,
                subadditivity_check(&g2, &g1, 10.0, g)?.status,
                check_loc(&clayton(b)?, &clayton(a)?, 0.2, g)?.status,
            ];
            let ok = fwd.iter().all(|&x| x == OrderStatus::Holds) && rev.iter().all(|&x| x == OrderStatus::Fails);
            Ok((ok, format!("forward {fwd:?}, reversed {rev:?}")))
        })());
    }
    let gens: Vec<(&str, Result<Generator>)> = vec![
        ("clayton:1", clayton_generator(1.0)),
        ("clayton:2", clayton_generator(2.0)),
        ("clayton:4", clayton_generator(4.0)),
        ("gumbel:2", gumbel_generator(2.0)),
        ("gumbel:3", gumbel_generator(3.0)),
    ];
    s.record("equivalence_chain", (|| {
        let mut bad = Vec::new();
        for (n1, g1) in &gens {
            for (n2, g2) in &gens {
                let (g1, g2) = (g1.as_ref().map_err(|e| Error::param(e.to_string()))?, g2.as_ref().map_err(|e| Error::param(e.to_string()))?);
                let r = archimedean_order_equivalence(g1, g2, 2, g)?;
                if let Some(clause) = r.disagreeing_clause() {
                    bad.push(format!("({n1}, {n2}): {clause}"));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "25 pairs agree".into() } else { bad.join("; ") }))
    })());
    s.record("nonstrict_flatness", (|| {
        let c = archimedean(nonstrict_linear_generator(), 2)?;
        let n = 200;
        let mut worst: f64 = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
                if u + v <= 0.999 {
                    worst = worst.max(c.eval(&[u, v])?.abs());
                }
            }
        }
        let fx = standard_fixtures()?;
        let failing: Vec<_> = fx
            .iter()
            .filter_map(|f| match check_loc(&c, &f.copula, 0.5, g) {
                Ok(v) if v.is_ordered() => None,
                _ => Some(f.name),
            })
            .collect();
        Ok((
            worst == 0.0 && failing.is_empty(),
            format!("max |C| on u1+u2 <= 0.999: {worst:e}; loc failures: {failing:?}"),
        ))
    })());
}

const EV_TDFS: &[&str] = &["zero", "min", "clayton:2", "fig1-parabola", "fig1-piecewise"];
const EV_ORDERED: &[(&str, &str)] = &[
    ("zero", "clayton:2"),
    ("clayton:1", "clayton:2"),
    ("clayton:2", "min"),
    ("fig1-parabola", "min"),
    ("fig1-piecewise", "min"),
    ("zero", "fig1-parabola"),
];

fn ev(s: &mut Suite, g: &GridConfig) {
    for name in EV_TDFS {
        s.record(format!("roundtrip_{name}"), (|| {
            let l = parse_tdf(name)?;
            let err = surface_error(&lower_ev_copula(l.clone())?, &l)?;
            Ok((err <= 5e-3, format!("max error {err:.3e} on 21 directions")))
        })());
    }
    for (a, b) in EV_ORDERED {
        s.record(format!("global_order_{a}_{b}"), (|| {
            let (la, lb) = (parse_tdf(a)?, parse_tdf(b)?);
            let tdo = check_tdo(&la, &lb, g)?;
            let fine = GridConfig { tau: 1e-9, ..*g };
            let v = check_loc(&lower_ev_copula(la)?, &lower_ev_copula(lb)?, 2f64.sqrt(), &fine)?;
            Ok((
                tdo.is_ordered() && v.status == OrderStatus::Holds,
                format!("tdo {:?}, global {:?} (margin {:.3e})", tdo.status, v.status, v.margin),
            ))
        })());
    }
}

fn diagonal(s: &mut Suite, g: &GridConfig) {
    for p in [1.0, 1.5, 2.0] {
        s.record(format!("fn_bertino_power_{p}"), (|| {
            let delta = DiagonalSection::power(p)?;
            let (fnc, bc) = (fredricks_nelsen(delta.clone())?, bertino(delta.clone())?);
            let mut worst: f64 = 0.0;
            for i in 0..=1000 {
                let t = i as f64 / 1000.0;
                let d = delta.value(t);
                worst = worst.max((fnc.eval(&[t, t])? - d).abs()).max((bc.eval(&[t, t])? - d).abs());
            }
            let fine = GridConfig { tau: 1e-9, ..*g };
            let order = check_loc(&bc, &fnc, 2f64.sqrt(), &fine)?;
            let valid = validate_copula(&fnc, g).passed() && validate_copula(&bc, g).passed();
            Ok((
                worst <= 1e-9 && order.is_ordered() && valid,
                format!("diagonal error {worst:.3e}, C_B <= C_FN: {:?}, valid: {valid}", order.status),
            ))
        })());
    }
    s.record("semilinear_square_is_product", (|| {
        let c = semilinear(DiagonalSection::power(2.0)?)?;
        let mut worst: f64 = 0.0;
        for i in 0..=32 {
            for j in 0..=32 {
                let (u, v) = (i as f64 / 32.0, j as f64 / 32.0);
                worst = worst.max((c.eval(&[u, v])? - u * v).abs());
            }
        }
        Ok((worst <= 1e-12, format!("max deviation {worst:.3e}")))
    })());
    s.record("diagonal_order_clayton", (|| {
        let v = check_diagonal_order(&clayton(1.0)?.diagonal(), &clayton(2.0)?.diagonal(), g)?;
        Ok((v.status == OrderStatus::Holds, format!("{:?} up to ε = {:?}", v.status, v.epsilon)))
    })());
    s.record("diagonal_order_powers", (|| {
        let (sq, id) = (DiagonalSection::power(2.0)?, DiagonalSection::power(1.0)?);
        let up = check_diagonal_order(&sq, &id, g)?;
        let down = check_diagonal_order(&id, &sq, g)?;
        let ok = up.status == OrderStatus::Holds && up.epsilon == Some(1.0) && down.status == OrderStatus::Fails;
        Ok((ok, format!("t² vs t: {:?} ε = {:?}; t vs t²: {:?}", up.status, up.epsilon, down.status)))
    })());
}

fn cone(s: &mut Suite, g: &GridConfig) {
    s.record("mo_clayton_strict_tdo", (|| {
        let v = check_tdo(&TailDepFunction::zero(2), &TailDepFunction::clayton(1.0, 2)?, g)?;
        Ok((v.status == OrderStatus::HoldsStrictly, format!("{:?}, margin {:.3e}", v.status, v.margin)))
    })());
    for eps in [0.2, 0.1, 0.05] {
        s.record(format!("mo_clayton_loc_fails_{eps}"), (|| {
            let alpha = 0.5;
            let v = check_loc(&marshall_olkin(alpha)?, &clayton(1.0)?, eps, g)?;
            let h = eps / (g.resolution - 1) as f64;
            let on_curve = v.witness.as_ref().is_some_and(|w| (w.point[1] - w.point[0].powf(alpha)).abs() < 2.0 * h);
            Ok((
                v.status == OrderStatus::Fails && on_curve,
                format!("{:?}, witness {:?}", v.status, v.witness.map(|w| w.point)),
            ))
        })());
    }
    s.record("mo_clayton_cone_epsilon", (|| {
        let v = find_cone_epsilon(&marshall_olkin(0.5)?, &clayton(1.0)?, ConeSpec::new(0.2, 2)?, g)?;
        let ok = v.is_ordered() && v.epsilon.is_some_and(|e| e >= 0.5f64.powi(20));
        Ok((ok, format!("{:?} at ε = {:?}", v.status, v.epsilon)))
    })());
    s.record("strictly_ordered_pairs_have_cone_epsilon", (|| {
        let fx = standard_fixtures()?;
        let mut bad = Vec::new();
        let mut pairs = 0;
        for a in &fx {
            for b in &fx {
                let (Some(la), Some(lb)) = (&a.tdf, &b.tdf) else { continue };
                if check_tdo(la, lb, g)?.status != OrderStatus::HoldsStrictly {
                    continue;
                }
                pairs += 1;
                let v = find_cone_epsilon(&a.copula, &b.copula, ConeSpec::new(0.2, 2)?, g)?;
                if v.epsilon.is_none() {
                    bad.push(format!("({}, {})", a.name, b.name));
                }
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{pairs} pairs") } else { bad.join("; ") }))
    })());
}

fn spearman(s: &mut Suite) {
    s.record("coefficient_below_functional", (|| {
        let fx = standard_fixtures()?;
        let mut bad = Vec::new();
        for f in &fx {
            let Some(l) = &f.tdf else { continue };
            let lambda = l.coefficient();
            let rho = spearman_tdf_limit(l, 2)?;
            if lambda > rho + 1e-12 {
                bad.push(format!("{}: {lambda} > {rho}", f.name));
            }
        }
        for name in ["min@3", "clayton:2@3"] {
            let l = parse_tdf(name)?;
            let (lambda, rho) = (l.coefficient(), spearman_tdf_limit(&l, 3)?);
            if lambda > rho + 1e-12 {
                bad.push(format!("{name}: {lambda} > {rho}"));
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { "λ <= (d+1)∫Λ on every fixture".into() } else { bad.join("; ") }))
    })());
    s.record("comonotone_equality", (|| {
        let rho = spearman_tdf_limit(&TailDepFunction::min(2), 2)?;
        Ok(((rho - 1.0).abs() <= 1e-6, format!("(d+1)∫min = {rho:.12}")))
    })());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run("bogus", &GridConfig::default()).is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in ["expansion", "diagonal", "spearman"] {
            let rows = run(suite, &GridConfig::default()).unwrap();
            for r in &rows {
                assert!(r.passed, "{r:?}");
            }
        }
    }
}
