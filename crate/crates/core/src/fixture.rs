//! Configuration fixtures.
//!
//! A fixture is a JSON object
//!
//! ```json
//! { "vars": ["a", "a′"], "nu": 2,
//!   "points": [[["1", "0"], ["0", "0"]], …],
//!   "centers": [], "map": "cross-ratio" }
//! ```
//!
//! Every coordinate is a sequence of `nu` coefficient strings, lowest order
//! first. Without `vars` the coefficients are rationals `num/den`; with
//! `vars` they are rational functions in exactly those variables.

use serde::{Deserialize, Serialize};

use crate::configs::{Configuration, Point};
use crate::epsring::TruncPoly;
use crate::error::{Error, Result};
use crate::maps::{tau2_0, tau2_1, tau3_0, tau3_1, tau3_1_alt, tau3_2, tau_n_0};
use crate::ratios::{cross_ratio, projected_cross_ratio, triple_ratio};
use crate::scalars::poly::{declare_vars, Var};
use crate::scalars::{RatFunc, Rational, Scalar};

/// Names accepted by [`eval_map`].
pub const MAPS: &[&str] = &[
    "cross-ratio",
    "projected-cross-ratio",
    "triple-ratio",
    "tau2_0",
    "tau2_1",
    "tau3_0",
    "tau3_1",
    "tau3_1_alt",
    "tau3_2",
    "tau_n_0",
];

type Layers = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    vars: Vec<String>,
    nu: usize,
    points: Layers,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    centers: Layers,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<String>,
}

/// A parsed configuration over ℚ or over ℚ(vars).
#[derive(Clone, Debug, PartialEq)]
pub enum FixtureConfig {
    Rational(Configuration<Rational>),
    Symbolic(Configuration<RatFunc>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub vars: Vec<String>,
    pub nu: usize,
    pub map: Option<String>,
    pub config: FixtureConfig,
}

/// Line and column (1-based) of the first occurrence of `needle` in `src`.
fn locate(src: &str, needle: &str) -> (usize, usize) {
    let Some(at) = src.find(needle) else {
        return (0, 0);
    };
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(src: &str, literal: &str, message: String) -> Error {
    let (line, column) = locate(src, &serde_json::to_string(literal).expect("strings serialize"));
    Error::Parse {
        line,
        column,
        message,
    }
}

fn build<S: Scalar>(
    src: &str,
    raw: &Layers,
    nu: usize,
    coeff: &impl Fn(&str) -> Result<S>,
) -> Result<Vec<Point<S>>> {
    raw.iter()
        .map(|p| {
            p.iter()
                .map(|c| {
                    if c.len() != nu {
                        let first = c.first().map(String::as_str).unwrap_or("]");
                        return Err(parse_error(
                            src,
                            first,
                            format!("coordinate has {} coefficients, expected nu = {}", c.len(), nu),
                        ));
                    }
                    let xs = c
                        .iter()
                        .map(|s| coeff(s).map_err(|e| parse_error(src, s, format!("`{}`: {}", s, e))))
                        .collect::<Result<Vec<S>>>()?;
                    TruncPoly::new(xs)
                })
                .collect()
        })
        .collect()
}

fn symbolic_coefficient(vars: &[Var]) -> impl Fn(&str) -> Result<RatFunc> + '_ {
    move |s| {
        let f = RatFunc::parse(s)?;
        for v in f.num().vars().into_iter().chain(f.den().vars()) {
            if !vars.contains(&v) {
                return Err(Error::Invalid(format!("undeclared variable `{}`", v.name())));
            }
        }
        Ok(f)
    }
}

impl Fixture {
    pub fn parse(src: &str) -> Result<Fixture> {
        let raw: Raw = serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if raw.nu == 0 {
            return Err(parse_error(src, "nu", "nu must be at least 1".into()));
        }
        if let Some(m) = &raw.map {
            if !MAPS.contains(&m.as_str()) {
                return Err(parse_error(src, m, format!("unknown map `{}`", m)));
            }
        }
        let config = if raw.vars.is_empty() {
            let q = |s: &str| Rational::parse(s);
            FixtureConfig::Rational(Configuration::projected(
                build(src, &raw.centers, raw.nu, &q)?,
                build(src, &raw.points, raw.nu, &q)?,
            )?)
        } else {
            let names: Vec<&str> = raw.vars.iter().map(String::as_str).collect();
            let vars = declare_vars(&names).ok_or(Error::TooManyVariables(crate::scalars::poly::MAX_VARS))?;
            let f = symbolic_coefficient(&vars);
            FixtureConfig::Symbolic(Configuration::projected(
                build(src, &raw.centers, raw.nu, &f)?,
                build(src, &raw.points, raw.nu, &f)?,
            )?)
        };
        Ok(Fixture {
            vars: raw.vars,
            nu: raw.nu,
            map: raw.map,
            config,
        })
    }

    /// Canonical JSON; `parse` of the output yields an equal fixture.
    pub fn to_json(&self) -> String {
        fn layers<S: Scalar>(ps: &[Point<S>]) -> Layers {
            ps.iter()
                .map(|p| {
                    p.iter()
                        .map(|c: &TruncPoly<S>| c.coeffs().iter().map(|x| x.to_string()).collect())
                        .collect()
                })
                .collect()
        }
        let (points, centers) = match &self.config {
            FixtureConfig::Rational(c) => (layers(c.points()), layers(c.centers())),
            FixtureConfig::Symbolic(c) => (layers(c.points()), layers(c.centers())),
        };
        let raw = Raw {
            vars: self.vars.clone(),
            nu: self.nu,
            points,
            centers,
            map: self.map.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("fixtures serialize")
    }

    /// Evaluates `name`, or the fixture's own map, and prints the result.
    pub fn eval(&self, name: Option<&str>) -> Result<String> {
        let name = name
            .or(self.map.as_deref())
            .ok_or_else(|| Error::Invalid("no map given and the fixture names none".into()))?;
        match &self.config {
            FixtureConfig::Rational(c) => eval_map(name, c),
            FixtureConfig::Symbolic(c) => eval_map(name, c),
        }
    }
}

/// Evaluates a named ratio or map on a generic configuration.
pub fn eval_map<S: Scalar>(name: &str, c: &Configuration<S>) -> Result<String> {
    c.require_generic()?;
    let s = match name {
        "cross-ratio" => cross_ratio(c)?.to_string(),
        "projected-cross-ratio" => projected_cross_ratio(c)?.to_string(),
        "triple-ratio" => triple_ratio(c)?.to_string(),
        "tau2_0" => tau2_0(c)?.to_string(),
        "tau2_1" => tau2_1(c)?.to_string(),
        "tau3_0" => tau3_0(c)?.to_string(),
        "tau3_1" => tau3_1(c)?.to_string(),
        "tau3_1_alt" => tau3_1_alt(c)?.to_string(),
        "tau3_2" => tau3_2(c)?.to_string(),
        "tau_n_0" => tau_n_0(c)?.to_string(),
        _ => return Err(Error::Invalid(format!("unknown map `{}`; known: {}", name, MAPS.join(", ")))),
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAME: &str = r#"{
  "vars": ["a", "a′"],
  "nu": 2,
  "points": [
    [["1", "0"], ["0", "0"]],
    [["0", "0"], ["1", "0"]],
    [["1", "0"], ["1", "0"]],
    [["1/a", "-a′/a^2"], ["1", "0"]]
  ]
}"#;

    #[test]
    fn standard_frame_prints_its_parameters() {
        let f = Fixture::parse(FRAME).unwrap();
        assert_eq!(f.eval(Some("cross-ratio")).unwrap(), "a + a′·ε");
        assert_eq!(f.eval(Some("tau2_1")).unwrap(), "⟨a; a′]₂");
    }

    #[test]
    fn round_trip_is_exact() {
        let f = Fixture::parse(FRAME).unwrap();
        let s = f.to_json();
        let g = Fixture::parse(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_json(), s);
    }

    #[test]
    fn bad_coefficient_reports_its_line() {
        let src = "{\n  \"nu\": 1,\n  \"points\": [\n    [[\"1\"], [\"x/\"]]\n  ]\n}";
        match Fixture::parse(src) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected a parse error, got {:?}", other),
        }
        match Fixture::parse("{\n  \"nu\": 1,\n  \"points\": [\n") {
            Err(Error::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("expected a parse error, got {:?}", other),
        }
    }

    #[test]
    fn degenerate_fixture_is_rejected() {
        let src = r#"{"nu": 1, "points": [[["1"], ["0"]], [["2"], ["0"]], [["1"], ["1"]], [["0"], ["1"]]]}"#;
        let f = Fixture::parse(src).unwrap();
        assert!(matches!(f.eval(Some("cross-ratio")), Err(Error::Degenerate(_))));
    }
}
