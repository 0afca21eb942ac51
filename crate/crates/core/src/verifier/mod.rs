//! Named suites, the form parser and 2-form decomposition rendering used by
//! the `holoform` command-line tool.

pub mod parse;

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use parse::parse_form;

use crate::cone;
use crate::derivation_extend;
use crate::error::{Error, Result};
use crate::form::ConstForm;
use crate::gauge;
use crate::holonomy::{self, canonical_structure, split2, type_rotation, StructureKind, TwoFormSplit};
use crate::kahler;
use crate::report::SuiteReport;
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 100;

/// Environment variable holding the default report format.
pub const FORMAT_ENV: &str = "HOLOFORM_FORMAT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    /// Record wall-clock time in `elapsed_ms`. Off by default so reports
    /// stay byte-identical across runs.
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            timing: false,
        }
    }
}

pub const SUITES: [&str; 10] = [
    "g2-identities",
    "spin7-identities",
    "kahler-identities",
    "eigen-decompositions",
    "potentials",
    "growth",
    "gauge-g2",
    "gauge-spin7",
    "gauge-kahler",
    "all",
];

/// Every suite name `all` expands to, cone presets included.
pub fn all_suite_names() -> Vec<String> {
    let mut names: Vec<String> = SUITES[..SUITES.len() - 1].iter().map(|s| s.to_string()).collect();
    names.extend(cone::shipped_presets().iter().map(|p| format!("cone:{}", p.name)));
    names
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (seed, samples) = (cfg.seed, cfg.samples);
    let mut report = match name {
        "g2-identities" => holonomy::identity_suite_g2(&holonomy::identity_samples(7, samples, seed), seed),
        "spin7-identities" => holonomy::identity_suite_spin7(&holonomy::identity_samples(8, samples, seed), seed),
        "kahler-identities" => kahler::kahler_suite(samples, seed)?,
        "eigen-decompositions" => holonomy::eigen_suite(seed),
        "potentials" => cone::potentials_suite(&cone::shipped_presets()),
        "growth" => cone::growth_suite(&cone::shipped_presets()),
        "gauge-g2" => gauge::gauge_suite(StructureKind::G2, samples, seed)?,
        "gauge-spin7" => gauge::gauge_suite(StructureKind::Spin7, samples, seed)?,
        "gauge-kahler" => gauge::kahler_gauge_suite(samples, seed)?,
        _ => match name.strip_prefix("cone:") {
            Some(preset) => cone::verify_structure_preset(&cone::load_preset(preset)?),
            None => {
                return Err(Error::Unknown {
                    kind: "suite",
                    name: name.to_string(),
                })
            }
        },
    };
    report.suite = name.to_string();
    report.seed = seed;
    Ok(report)
}

/// Runs a named suite; `all` runs every suite concurrently and merges the
/// reports in a fixed order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = if name == "all" {
        let parts: Vec<Result<SuiteReport>> = all_suite_names().par_iter().map(|n| run_one(n, cfg)).collect();
        let mut all = SuiteReport::new("all", cfg.seed, Vec::new());
        for part in parts {
            all.absorb(part?);
        }
        all
    } else {
        run_one(name, cfg)?
    };
    report.elapsed_ms = if cfg.timing { start.elapsed().as_millis().max(1) as u64 } else { 0 };
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub name: String,
    pub form: String,
    pub norm_sq: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub identity: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub structure: String,
    pub input: String,
    pub components: Vec<Component>,
    /// α⁰ = ⅓Λα, CY3 only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<String>,
    pub recombines: bool,
    pub residuals: Vec<Residual>,
}

impl Decomposition {
    pub fn all_residuals_zero(&self) -> bool {
        self.recombines && self.residuals.iter().all(|r| r.value == "0")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "structure {}: α = {}", self.structure, self.input);
        for c in &self.components {
            let _ = writeln!(out, "  {:<8} {}    |·|² = {}", c.name, c.form, c.norm_sq);
        }
        if let Some(t) = &self.trace {
            let _ = writeln!(out, "  α⁰ = {t}");
        }
        let _ = writeln!(out, "  components sum to α: {}", self.recombines);
        for r in &self.residuals {
            let _ = writeln!(out, "  residual {}: {}", r.identity, r.value);
        }
        out
    }
}

/// Splits a 2-form and evaluates the eigen identities of each component.
pub fn decompose(alpha: &ConstForm, kind: StructureKind, base: usize) -> Result<Decomposition> {
    let preset = canonical_structure(kind);
    let split = split2(alpha, &preset)?;
    let show = |f: &ConstForm| f.display(base);
    let components = split
        .components()
        .into_iter()
        .map(|(name, f)| Component {
            name: name.to_string(),
            norm_sq: f.norm_sq().to_string(),
            form: show(&f),
        })
        .collect();
    let residual = |identity: &str, f: ConstForm| Residual {
        identity: identity.to_string(),
        value: show(&f),
    };
    let residuals = match &split {
        TwoFormSplit::G2 { a7, a14 } => {
            let phi = preset.form("phi");
            vec![
                residual("∗(α⁷∧φ) − 2α⁷", &a7.wedge(phi).star() - &a7.scale(Scalar::int(2))),
                residual("∗(α¹⁴∧φ) + α¹⁴", &a14.wedge(phi).star() + a14),
            ]
        }
        TwoFormSplit::Spin7 { a7, a21 } => {
            let omega = preset.form("Omega");
            vec![
                residual("∗(α⁷∧Ω) − 3α⁷", &a7.wedge(omega).star() - &a7.scale(Scalar::int(3))),
                residual("∗(α²¹∧Ω) + α²¹", &a21.wedge(omega).star() + a21),
            ]
        }
        TwoFormSplit::Cy3 { a20, a02, a11_0, .. } => {
            let rho = |f: &ConstForm| derivation_extend(&type_rotation(), f).expect("form on ℝ⁶");
            let i2 = Scalar::new(Rational::ZERO, Rational::from_int(2));
            vec![
                residual("ρα²'⁰ − 2iα²'⁰", &rho(a20) - &a20.scale(i2)),
                residual("ρα⁰'² + 2iα⁰'²", &rho(a02) + &a02.scale(i2)),
                residual("ρα¹'¹₀", rho(a11_0)),
                residual("Λα¹'¹₀", ConstForm::one(6).scale(holonomy::lefschetz_trace(a11_0))),
            ]
        }
    };
    Ok(Decomposition {
        structure: kind.name().to_string(),
        input: show(alpha),
        recombines: split.sum() == *alpha,
        trace: split.trace().map(|t| t.to_string()),
        components,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::Unknown { .. })));
    }

    #[test]
    fn eigen_suite_reports_factorizations() {
        let r = run_suite("eigen-decompositions", &SuiteConfig::default()).unwrap();
        let text = r.to_text();
        assert!(text.contains("(t-2)^7 (t+1)^14") && text.contains("(t-3)^7 (t+1)^21"), "{text}");
        assert!(r.passed());
    }

    #[test]
    fn cy3_omega_is_pure_trace() {
        let omega = parse_form("e12+e34+e56", 6, 1).unwrap();
        let d = decompose(&omega, StructureKind::Cy3, 1).unwrap();
        assert_eq!(d.trace.as_deref(), Some("1"));
        assert!(d.all_residuals_zero());
        let a11 = d.components.iter().find(|c| c.name == "a11_0").unwrap();
        assert_eq!(a11.form, "0");
    }

    #[test]
    fn g2_basis_blade_recombines() {
        let a = parse_form("e01", 7, 0).unwrap();
        let d = decompose(&a, StructureKind::G2, 0).unwrap();
        assert!(d.all_residuals_zero());
        assert_eq!(d.components.len(), 2);
    }

    #[test]
    fn zero_has_zero_components() {
        let d = decompose(&parse_form("0", 8, 0).unwrap(), StructureKind::Spin7, 0).unwrap();
        assert!(d.components.iter().all(|c| c.form == "0"));
    }

    #[test]
    fn decompose_rejects_three_forms() {
        let a = parse_form("e012", 7, 0).unwrap();
        assert!(decompose(&a, StructureKind::G2, 0).is_err());
    }
}
