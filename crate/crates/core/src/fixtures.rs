//! Named fixtures and the `family:param` shorthand accepted by the CLI.
//!
//! Copula shorthand: `independence`, `comonotone`, `countermonotone`,
//! `clayton:θ`, `gumbel:θ`, `joe:θ`, `nonstrict-linear`,
//! `marshall-olkin:α`, `gaussian:ρ`, `fn-power:p`, `bertino-power:p`,
//! `semilinear-power:p`, `ev:<tdf>` and `lev:<tdf>`. Independence and
//! comonotone take an optional dimension (`independence:3`).
//!
//! TDF shorthand: `zero`, `min`, `clayton:α`, `fig1-parabola`,
//! `fig1-piecewise`, with an optional trailing `@d` dimension for the
//! first three (`min@3`).
//!
//! Diagonal shorthand: `power:p` (optionally `power:p@d`), or any copula
//! shorthand, which stands for that copula's diagonal section.

use crate::copula::Copula;
use crate::descriptor::CopulaDescriptor;
use crate::error::{Error, Result};
use crate::families::{
    self, clayton_generator, gumbel_generator, joe_generator, nonstrict_linear_generator,
    DiagonalSection,
};
use crate::taildep::TailDepFunction;

fn number(name: &str, arg: Option<&str>) -> Result<f64> {
    let arg = arg.ok_or_else(|| Error::Parse(format!("`{name}` needs a parameter, e.g. `{name}:2`")))?;
    arg.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("`{arg}` is not a number (in `{name}:{arg}`)")))
}

fn dimension(name: &str, arg: Option<&str>) -> Result<usize> {
    match arg {
        None => Ok(2),
        Some(a) => a
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("`{a}` is not a dimension (in `{name}:{a}`)"))),
    }
}

/// Parses copula shorthand, or a JSON descriptor if the text starts with `{`.
pub fn parse_copula(text: &str) -> Result<Copula> {
    let text = text.trim();
    if text.starts_with('{') {
        return CopulaDescriptor::from_json(text)?.build();
    }
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    match name {
        "independence" => Copula::independence(dimension(name, arg)?),
        "comonotone" => Copula::comonotone(dimension(name, arg)?),
        "countermonotone" => Ok(Copula::countermonotone()),
        "clayton" => families::archimedean(clayton_generator(number(name, arg)?)?, 2),
        "gumbel" => families::archimedean(gumbel_generator(number(name, arg)?)?, 2),
        "joe" => families::archimedean(joe_generator(number(name, arg)?)?, 2),
        "nonstrict-linear" => families::archimedean(nonstrict_linear_generator(), 2),
        "marshall-olkin" => families::marshall_olkin(number(name, arg)?),
        "gaussian" => families::gaussian(number(name, arg)?),
        "fn-power" => families::fredricks_nelsen(DiagonalSection::power(number(name, arg)?)?),
        "bertino-power" => families::bertino(DiagonalSection::power(number(name, arg)?)?),
        "semilinear-power" => families::semilinear(DiagonalSection::power(number(name, arg)?)?),
        "ev" | "lev" => {
            let tdf = parse_tdf(arg.ok_or_else(|| Error::Parse(format!("`{name}` needs a tdf, e.g. `{name}:min`")))?)?;
            if name == "ev" {
                families::ev_copula(tdf)
            } else {
                families::lower_ev_copula(tdf)
            }
        }
        _ => Err(Error::Parse(format!("unknown copula fixture `{text}`"))),
    }
}

/// Parses TDF shorthand.
pub fn parse_tdf(text: &str) -> Result<TailDepFunction> {
    let text = text.trim();
    let (body, dim) = match text.rsplit_once('@') {
        Some((b, d)) => (
            b,
            d.parse::<usize>().map_err(|_| Error::Parse(format!("`{d}` is not a dimension in `{text}`")))?,
        ),
        None => (text, 2),
    };
    if dim < 2 {
        return Err(Error::param(format!("dimension must be at least 2, got {dim}")));
    }
    let (name, arg) = match body.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (body, None),
    };
    let fixed_dim = |t: TailDepFunction| {
        if dim != 2 {
            Err(Error::param(format!("`{name}` is bivariate")))
        } else {
            Ok(t)
        }
    };
    match name {
        "zero" => Ok(TailDepFunction::zero(dim)),
        "min" => Ok(TailDepFunction::min(dim)),
        "clayton" => TailDepFunction::clayton(number(name, arg)?, dim),
        "fig1-parabola" => fixed_dim(TailDepFunction::fig1_parabola()),
        "fig1-piecewise" => fixed_dim(TailDepFunction::fig1_piecewise()),
        _ => Err(Error::Parse(format!("unknown tdf fixture `{text}`"))),
    }
}

/// Parses diagonal shorthand.
pub fn parse_diagonal(text: &str) -> Result<DiagonalSection> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("power:") {
        let (p, dim) = match rest.rsplit_once('@') {
            Some((p, d)) => (
                p,
                d.parse::<usize>().map_err(|_| Error::Parse(format!("`{d}` is not a dimension in `{text}`")))?,
            ),
            None => (rest, 2),
        };
        return DiagonalSection::power_in(number("power", Some(p))?, dim);
    }
    Ok(parse_copula(text)?.diagonal())
}

/// A shipped copula together with its closed-form tail dependence function,
/// when there is one.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub copula: Copula,
    pub tdf: Option<TailDepFunction>,
}

/// Shorthand names of the bivariate fixture set exercised by the
/// verification suites.
pub const STANDARD_FIXTURES: &[&str] = &[
    "independence",
    "comonotone",
    "countermonotone",
    "clayton:1",
    "clayton:2",
    "clayton:4",
    "gumbel:2",
    "joe:2",
    "marshall-olkin:0.5",
    "gaussian:0.5",
    "fn-power:1.5",
    "bertino-power:1.5",
    "semilinear-power:1.5",
    "lev:zero",
    "lev:min",
    "lev:clayton:2",
    "lev:fig1-parabola",
    "lev:fig1-piecewise",
];

/// Builds the standard fixture set.
pub fn standard_fixtures() -> Result<Vec<Fixture>> {
    STANDARD_FIXTURES
        .iter()
        .map(|&name| {
            let copula = parse_copula(name)?;
            let tdf = copula.analytic_tdf();
            Ok(Fixture { name, copula, tdf })
        })
        .collect()
}

/// Analytic tail dependence fixtures by name.
pub const STANDARD_TDFS: &[&str] =
    &["zero", "min", "clayton:1", "clayton:2", "clayton:4", "fig1-parabola", "fig1-piecewise", "min@3", "clayton:2@3"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_values() {
        let c = parse_copula("clayton:1").unwrap();
        assert!((c.eval(&[0.5, 0.5]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let p = parse_copula("independence:3").unwrap();
        assert_eq!(p.dim(), 3);
        let b = parse_copula("bertino-power:2").unwrap();
        assert!((b.eval(&[0.3, 0.4]).unwrap() - 0.09).abs() < 1e-12);
        let l = parse_copula("lev:min").unwrap();
        assert!((l.eval(&[0.3, 0.4]).unwrap() - 0.3).abs() < 1e-12);
        let j = parse_copula(r#"{"family":"gaussian","params":{"rho":0}}"#).unwrap();
        assert!((j.eval(&[0.5, 0.5]).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn tdf_shorthand() {
        assert_eq!(parse_tdf("min@3").unwrap().dim(), 3);
        assert!((parse_tdf("clayton:1").unwrap().value(&[1.0, 1.0]) - 0.5).abs() < 1e-15);
        assert!((parse_tdf("fig1-parabola").unwrap().value(&[0.5, 0.5]) - 0.25).abs() < 1e-15);
        assert!(parse_tdf("fig1-piecewise@3").is_err());
    }

    #[test]
    fn diagonal_shorthand() {
        assert_eq!(parse_diagonal("power:2").unwrap().value(0.5), 0.25);
        assert_eq!(parse_diagonal("power:2@3").unwrap().dim(), 3);
        assert!((parse_diagonal("clayton:1").unwrap().value(0.5) - 1.0 / 3.0).abs() < 1e-15);
        assert!(parse_diagonal("power:x").is_err());
    }

    #[test]
    fn bad_shorthand() {
        for bad in ["clayton", "clayton:x", "frank:2", "lev", "lev:bogus", "marshall-olkin:3", "independence:q"] {
            assert!(parse_copula(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fixture_sets_build() {
        let fx = standard_fixtures().unwrap();
        assert_eq!(fx.len(), STANDARD_FIXTURES.len());
        for name in STANDARD_TDFS {
            parse_tdf(name).unwrap();
        }
    }
}
