use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use holoform::cone::{self, expand_ansatz, growth_classify, solve_potential, ConePreset, PotentialSolution};
use holoform::holonomy::StructureKind;
use holoform::verifier::{self, decompose, parse_form, run_suite, SuiteConfig, FORMAT_ENV};
use holoform::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Structure {
    G2,
    Spin7,
    Cy3,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> StructureKind {
        match s {
            Structure::G2 => StructureKind::G2,
            Structure::Spin7 => StructureKind::Spin7,
            Structure::Cy3 => StructureKind::Cy3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "holoform", version, about = "Exact identity checks for parallel forms, cone algebras and gauge fields")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named suite (`all` runs every suite).
    Verify {
        /// g2-identities, spin7-identities, kahler-identities,
        /// eigen-decompositions, cone:<preset>, potentials, growth,
        /// gauge-g2, gauge-spin7, gauge-kahler or all.
        suite: String,
        #[arg(long, default_value_t = verifier::DEFAULT_SEED)]
        seed: u64,
        /// Random forms per randomized check.
        #[arg(long, default_value_t = verifier::DEFAULT_SAMPLES)]
        samples: usize,
        /// Fill in elapsed_ms; reports then differ between runs.
        #[arg(long)]
        timing: bool,
    },
    /// Split a 2-form into its irreducible components.
    Decompose {
        expr: String,
        #[arg(long, value_enum)]
        structure: Structure,
        /// First axis label: 0 (e01 is the first 2-blade) or 1 (e12).
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        axes: u8,
    },
    /// Inspect a cone or cylinder preset (a shipped name or a .toml path).
    Cone {
        preset: String,
        /// Solve d(β) = target.
        #[arg(long)]
        solve: Option<String>,
        /// Ansatz shapes for --solve; `r^a` ranges over --exponents.
        #[arg(long, num_args = 1..)]
        ansatz: Vec<String>,
        #[arg(long, num_args = 2, default_values_t = [-3, 8], allow_negative_numbers = true)]
        exponents: Vec<i32>,
        /// Growth class of an element.
        #[arg(long)]
        classify: Option<String>,
        /// Parameter override, e.g. lambda=2.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, Rational)>,
    },
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v: Rational = v.parse().map_err(|e: Error| e.to_string())?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Usage(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable output"));
}

fn verify(suite: &str, cfg: SuiteConfig, format: Format) -> Result<(), Failure> {
    let report = run_suite(suite, &cfg)?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn decompose_cmd(expr: &str, structure: Structure, base: usize, format: Format) -> Result<(), Failure> {
    let kind = StructureKind::from(structure);
    let alpha = parse_form(expr, kind.dim(), base)?;
    let d = decompose(&alpha, kind, base)?;
    match format {
        Format::Text => print!("{}", d.to_text()),
        Format::Json => print_json(&d),
    }
    if d.all_residuals_zero() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn load(preset: &str, params: &[(String, Rational)]) -> Result<ConePreset, Error> {
    if preset.ends_with(".toml") {
        if !params.is_empty() {
            return Err(Error::Invalid("--param applies to shipped presets only".into()));
        }
        let src = std::fs::read_to_string(preset).map_err(|e| Error::Preset(format!("{preset}: {e}")))?;
        return cone::preset_from_toml(&src);
    }
    let overrides: BTreeMap<String, Rational> = params.iter().cloned().collect();
    cone::load_preset_with(preset, &overrides)
}

/// Ansatz shapes of a declared potential with the same target, else
/// r^a-multiples of every generator and of dr∧generator, also times t
/// on cylinders.
fn default_ansatz(preset: &ConePreset, target: &str) -> Vec<String> {
    if let Some(spec) = preset.potentials.iter().find(|p| p.target.trim() == target.trim()) {
        return spec.ansatz.clone();
    }
    let mut shapes = Vec::new();
    for g in preset.base.generators().iter().map(|g| &g.name) {
        shapes.push(format!("r^a {g}"));
        shapes.push(format!("r^a dr∧{g}"));
        if preset.uses_t {
            shapes.push(format!("t r^a {g}"));
            shapes.push(format!("t r^a dr∧{g}"));
        }
    }
    shapes
}

fn cone_cmd(
    name: &str,
    solve: Option<&str>,
    ansatz: &[String],
    exponents: [i32; 2],
    classify: Option<&str>,
    params: &[(String, Rational)],
    format: Format,
) -> Result<(), Failure> {
    let preset = load(name, params)?;
    if solve.is_none() && classify.is_none() {
        let report = cone::verify_structure_preset(&preset);
        match format {
            Format::Text => {
                println!("{}: {}", preset.name, preset.description);
                for (n, e) in &preset.elements {
                    println!("  {n} = {}", preset.show(e));
                }
                print!("{}", report.to_text());
            }
            Format::Json => println!("{}", report.to_json()),
        }
        return if report.passed() { Ok(()) } else { Err(Failure::Checks) };
    }
    let mut out = serde_json::Map::new();
    out.insert("preset".into(), json!(preset.name));
    let mut ok = true;
    if let Some(target_src) = solve {
        let target = preset.parse(target_src)?;
        let shapes = if ansatz.is_empty() { default_ansatz(&preset, target_src) } else { ansatz.to_vec() };
        let k = target.degree(&preset.base).unwrap_or(0);
        let basis: Vec<_> = expand_ansatz(&preset, &shapes, exponents)?
            .into_iter()
            .filter(|m| k > 0 && m.degree(&preset.base) == Some(k - 1))
            .collect();
        match solve_potential(&preset, &target, &basis)? {
            PotentialSolution::Solved { potential, kernel_dim, .. } => {
                let growth = growth_classify(&preset, &potential).map(|g| g.kind.to_string()).unwrap_or_else(|e| e.to_string());
                out.insert(
                    "solve".into(),
                    json!({
                        "target": preset.show(&target),
                        "potential": preset.show(&potential),
                        "kernel_dim": kernel_dim,
                        "growth": growth,
                    }),
                );
            }
            PotentialSolution::NoSolution => {
                ok = false;
                out.insert("solve".into(), json!({ "target": preset.show(&target), "potential": null }));
            }
        }
    }
    if let Some(src) = classify {
        let e = preset.parse(src)?;
        let g = growth_classify(&preset, &e)?;
        out.insert("classify".into(), json!({ "element": preset.show(&e), "class": g.kind.to_string(), "growth": g }));
    }
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("preset {}", preset.name);
            if let Some(s) = out.get("solve") {
                println!("  d β = {}", s["target"].as_str().unwrap_or_default());
                match s["potential"].as_str() {
                    Some(p) => {
                        println!("  β = {p}");
                        println!("  kernel dimension {}, growth {}", s["kernel_dim"], s["growth"].as_str().unwrap_or_default());
                    }
                    None => println!("  no potential in the ansatz span"),
                }
            }
            if let Some(c) = out.get("classify") {
                println!("  {}: {}", c["element"].as_str().unwrap_or_default(), c["class"].as_str().unwrap_or_default());
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify {
            suite,
            seed,
            samples,
            timing,
        } => verify(
            suite,
            SuiteConfig {
                seed: *seed,
                samples: *samples,
                timing: *timing,
            },
            cli.format,
        ),
        Command::Decompose { expr, structure, axes } => decompose_cmd(expr, *structure, *axes as usize, cli.format),
        Command::Cone {
            preset,
            solve,
            ansatz,
            exponents,
            classify,
            params,
        } => cone_cmd(
            preset,
            solve.as_deref(),
            ansatz,
            [exponents[0], exponents[1]],
            classify.as_deref(),
            params,
            cli.format,
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
