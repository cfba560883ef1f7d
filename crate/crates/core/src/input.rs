//! System specification files (TOML or JSON) and analysis settings.
//!
//! ```toml
//! name = "cubic"
//! Q = [["1", 0, 3], ["-3", 1, 2], ["2", 2, 1]]
//! a = ["1", "1"]
//!
//! [settings]
//! grid = 360
//! ```
//!
//! `Q`, `H`, `thm2.p` and `thm2.h` take either `[coef, i, j]` triples for
//! `coef·x^i·y^j` or a polynomial string such as `"y^3 - 3*x*y^2"`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ode::OdeSettings;
use crate::poly::{format_rational, parse_rational, BivarPoly, Rational};
use crate::system::{build_thm2, FactoredSystem, SystemError, UniformSystem};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("exactly one of `Q` (with `a`), `H` or `thm2` must be given; found {0}")]
    Form(String),
    #[error("`a` is required with `Q`")]
    MissingRadial,
    #[error("`a` is only meaningful with `Q`")]
    StrayRadial,
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("bad polynomial {0:?}: {1}")]
    Polynomial(String, String),
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    fn to_rational(&self) -> Result<Rational, InputError> {
        match self {
            Coef::Int(n) => Ok(Rational::from_integer((*n).into())),
            Coef::Text(s) => parse_rational(s.trim()).map_err(|_| InputError::Coefficient(s.clone())),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Text(String),
    Terms(Vec<(Coef, u32, u32)>),
}

impl PolyInput {
    fn to_poly(&self) -> Result<BivarPoly, InputError> {
        match self {
            PolyInput::Text(s) => s.parse().map_err(|e: crate::poly::ParseError| InputError::Polynomial(s.clone(), e.to_string())),
            PolyInput::Terms(ts) => {
                let mut terms = Vec::with_capacity(ts.len());
                for (c, i, j) in ts {
                    terms.push((c.to_rational()?, *i, *j));
                }
                Ok(BivarPoly::from_terms(terms))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThm2 {
    p: PolyInput,
    c: Coef,
    h: PolyInput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    #[serde(rename = "Q")]
    q: Option<PolyInput>,
    a: Option<Vec<Coef>>,
    #[serde(rename = "H")]
    h: Option<PolyInput>,
    thm2: Option<RawThm2>,
    #[serde(default)]
    settings: Settings,
}

/// Optional overrides; `None` falls through to the next source.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub ceiling: Option<f64>,
    pub grid: Option<usize>,
    pub cluster_tol: Option<f64>,
    pub n_max: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl Settings {
    /// `self` over `fallback` over built-in defaults.
    pub fn resolve(&self, fallback: &Settings) -> Resolved {
        let d = Resolved::default();
        Resolved {
            rtol: self.rtol.or(fallback.rtol).unwrap_or(d.rtol),
            atol: self.atol.or(fallback.atol).unwrap_or(d.atol),
            ceiling: self.ceiling.or(fallback.ceiling).unwrap_or(d.ceiling),
            grid: self.grid.or(fallback.grid).unwrap_or(d.grid),
            cluster_tol: self.cluster_tol.or(fallback.cluster_tol).unwrap_or(d.cluster_tol),
            n_max: self.n_max.or(fallback.n_max),
            samples: self.samples.or(fallback.samples).unwrap_or(d.samples),
            seed: self.seed.or(fallback.seed).unwrap_or(d.seed),
        }
    }
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub rtol: f64,
    pub atol: f64,
    pub ceiling: f64,
    pub grid: usize,
    pub cluster_tol: f64,
    /// Commutant degree bound; `None` means the degree of the field.
    pub n_max: Option<u32>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Resolved {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            ceiling: 1e6,
            grid: 720,
            cluster_tol: crate::trig::DEFAULT_CLUSTER_TOL,
            n_max: None,
            samples: 10,
            seed: 2024,
        }
    }
}

impl Resolved {
    pub fn ode(&self) -> OdeSettings {
        OdeSettings::default()
            .with_rtol(self.rtol)
            .with_atol(self.atol)
            .with_ceiling(self.ceiling)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SystemForm {
    Factored(FactoredSystem),
    Raw(UniformSystem),
    Thm2 {
        p: BivarPoly,
        c: Rational,
        h: BivarPoly,
        system: UniformSystem,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub name: Option<String>,
    pub form: SystemForm,
    pub settings: Settings,
}

/// Canonical echo of the input system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemEcho {
    pub name: Option<String>,
    pub form: &'static str,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm2: Option<[String; 3]>,
}

impl SystemSpec {
    pub fn from_path(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.display().to_string(),
            source,
        })?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::from_json(&text),
            Some("toml") => Self::from_toml(&text),
            _ => Self::parse(&text),
        }
    }

    /// JSON when the text starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_toml(text)
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, InputError> {
        Self::from_raw(toml::from_str(text)?)
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        Self::from_raw(serde_json::from_str(text)?)
    }

    fn from_raw(raw: RawSpec) -> Result<Self, InputError> {
        let present: Vec<&str> = [("Q", raw.q.is_some()), ("H", raw.h.is_some()), ("thm2", raw.thm2.is_some())]
            .into_iter()
            .filter_map(|(n, p)| p.then_some(n))
            .collect();
        if present.len() != 1 {
            let found = if present.is_empty() { "none".to_string() } else { present.join(", ") };
            return Err(InputError::Form(found));
        }
        if raw.q.is_none() && raw.a.is_some() {
            return Err(InputError::StrayRadial);
        }
        let form = if let Some(q) = raw.q {
            let a = raw.a.ok_or(InputError::MissingRadial)?;
            let a = a.iter().map(Coef::to_rational).collect::<Result<Vec<_>, _>>()?;
            SystemForm::Factored(FactoredSystem::new(q.to_poly()?, a)?)
        } else if let Some(h) = raw.h {
            SystemForm::Raw(UniformSystem::new(h.to_poly()?)?)
        } else {
            let t = raw.thm2.expect("checked above");
            let (p, c, h) = (t.p.to_poly()?, t.c.to_rational()?, t.h.to_poly()?);
            let system = build_thm2(&p, &c, &h)?;
            SystemForm::Thm2 { p, c, h, system }
        };
        Ok(Self {
            name: raw.name,
            form,
            settings: raw.settings,
        })
    }

    pub fn uniform(&self) -> UniformSystem {
        match &self.form {
            SystemForm::Factored(s) => s.uniform(),
            SystemForm::Raw(u) => u.clone(),
            SystemForm::Thm2 { system, .. } => system.clone(),
        }
    }

    /// The factored form, given directly or recovered by factoring `H`.
    pub fn factored(&self) -> Option<FactoredSystem> {
        match &self.form {
            SystemForm::Factored(s) => Some(s.clone()),
            SystemForm::Raw(u) => FactoredSystem::from_h(u.h()),
            SystemForm::Thm2 { system, .. } => FactoredSystem::from_h(system.h()),
        }
    }

    pub fn echo(&self) -> SystemEcho {
        let h = self.uniform().h().to_string();
        let mut echo = SystemEcho {
            name: self.name.clone(),
            form: "",
            h,
            q: None,
            a: None,
            thm2: None,
        };
        match &self.form {
            SystemForm::Factored(s) => {
                echo.form = "factored";
                echo.q = Some(s.q().to_string());
                echo.a = Some(s.a().iter().map(format_rational).collect());
            }
            SystemForm::Raw(_) => echo.form = "H",
            SystemForm::Thm2 { p, c, h, .. } => {
                echo.form = "thm2";
                echo.thm2 = Some([p.to_string(), format_rational(c), h.to_string()]);
            }
        }
        echo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    const SYSTEM9_TOML: &str = r#"
name = "cubic"
Q = [["1", 0, 3], ["-3", 1, 2], [2, 2, 1]]
a = ["1", "1"]

[settings]
grid = 360
"#;

    #[test]
    fn parses_toml_triples() {
        let s = SystemSpec::from_toml(SYSTEM9_TOML).unwrap();
        let f = s.factored().unwrap();
        assert_eq!(f.q(), &"y^3 - 3*x*y^2 + 2*x^2*y".parse::<BivarPoly>().unwrap());
        assert_eq!(f.a(), &[rat_int(1), rat_int(1)]);
        assert_eq!(s.settings.grid, Some(360));
        assert_eq!(s.echo().form, "factored");
    }

    #[test]
    fn parses_json_and_strings() {
        let s = SystemSpec::from_json(r#"{"H": "x^2 - y^2 + x^4 - y^4"}"#).unwrap();
        let f = s.factored().unwrap();
        assert_eq!(f.a(), &[rat_int(1), rat_int(1)]);
        let t = SystemSpec::from_json(r#"{"thm2": {"p": "x*y", "c": "1/2", "h": [[1, 0, 0], [1, 1, 0]]}}"#).unwrap();
        assert_eq!(t.echo().form, "thm2");
        assert!(t.uniform().h().constant_term() == Rational::from_integer(0.into()));
    }

    #[test]
    fn rejects_ambiguous_or_missing_forms() {
        assert!(matches!(SystemSpec::from_json(r#"{"H": "x", "Q": "x", "a": [1]}"#), Err(InputError::Form(_))));
        assert!(matches!(SystemSpec::from_json(r#"{}"#), Err(InputError::Form(_))));
        assert!(matches!(SystemSpec::from_json(r#"{"Q": "x"}"#), Err(InputError::MissingRadial)));
        assert!(matches!(SystemSpec::from_json(r#"{"H": "x", "a": [1]}"#), Err(InputError::StrayRadial)));
        assert!(matches!(SystemSpec::from_json(r#"{"H": "1 + x"}"#), Err(InputError::System(_))));
        assert!(matches!(SystemSpec::from_json(r#"{"H": [["1/0", 1, 0]]}"#), Err(InputError::Coefficient(_))));
    }

    #[test]
    fn malformed_toml_reports_position() {
        let err = SystemSpec::from_toml("Q = [[\"1\", 0, 3]\na = ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn settings_precedence() {
        let cli = Settings { grid: Some(90), ..Default::default() };
        let file = Settings { grid: Some(360), rtol: Some(1e-8), ..Default::default() };
        let r = cli.resolve(&file);
        assert_eq!(r.grid, 90);
        assert_eq!(r.rtol, 1e-8);
        assert_eq!(r.atol, 1e-12);
    }
}
