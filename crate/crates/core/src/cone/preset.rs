//! Declarative cone presets. A preset names a base algebra by its tables,
//! defines cone elements by expression, and lists the equations and
//! potentials it claims.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::algebra::{BaseAlgebra, BaseElement, Gen};
use super::element::{self, ConeElement, ConeMonomial};
use super::parse::{parse, Scope};
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetFile {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub extends: Option<String>,
    #[serde(default)]
    pub base_dim: Option<usize>,
    #[serde(default)]
    pub uses_t: bool,
    #[serde(default)]
    pub normalization: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub mult: BTreeMap<String, String>,
    #[serde(default)]
    pub d: BTreeMap<String, String>,
    #[serde(default)]
    pub star: BTreeMap<String, String>,
    #[serde(default)]
    pub norm_sq: BTreeMap<String, String>,
    #[serde(default)]
    pub elements: Vec<NamedExpr>,
    pub structure: String,
    #[serde(default)]
    pub equations: Vec<Equation>,
    #[serde(default)]
    pub potentials: Vec<PotentialSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedExpr {
    pub name: String,
    pub expr: String,
}

/// lhs = rhs, as stated by `anchor`. `claimed` marks equations quoted
/// from the literature rather than consequences of the tables.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Equation {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub anchor: String,
    #[serde(default)]
    pub claimed: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    pub id: String,
    pub target: String,
    /// Shapes; `r^a` ranges over `exponents`.
    pub ansatz: Vec<String>,
    #[serde(default = "default_exponents")]
    pub exponents: [i32; 2],
    #[serde(default)]
    pub claims: Vec<Claim>,
}

fn default_exponents() -> [i32; 2] {
    [-3, 8]
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub id: String,
    pub potential: String,
    pub anchor: String,
}

#[derive(Clone, Debug)]
pub struct ConePreset {
    pub name: String,
    pub aliases: Vec<String>,
    pub description: String,
    pub normalization: Option<String>,
    pub uses_t: bool,
    pub params: BTreeMap<String, Rational>,
    pub base: BaseAlgebra,
    pub elements: Vec<(String, ConeElement)>,
    pub structure: String,
    pub equations: Vec<Equation>,
    pub potentials: Vec<PotentialSpec>,
}

/// Name resolution against a possibly partially built preset.
struct Builder<'a> {
    base: &'a BaseAlgebra,
    params: &'a BTreeMap<String, Rational>,
    elements: &'a [(String, ConeElement)],
    uses_t: bool,
    base_only: bool,
}

impl Scope for Builder<'_> {
    fn algebra(&self) -> &BaseAlgebra {
        self.base
    }

    fn lookup(&self, name: &str) -> Option<ConeElement> {
        if let Some(v) = self.params.get(name) {
            return Some(ConeElement::constant(*v));
        }
        if !self.base_only {
            if let Some((_, e)) = self.elements.iter().rev().find(|(n, _)| n == name) {
                return Some(e.clone());
            }
        }
        self.base.index(name).map(ConeElement::generator)
    }

    fn star(&self, e: &ConeElement) -> Result<ConeElement> {
        if self.base_only {
            return Err(Error::Invalid("star is not available in table entries".into()));
        }
        star_with(self.base, self.uses_t, e)
    }
}

fn star_with(base: &BaseAlgebra, uses_t: bool, e: &ConeElement) -> Result<ConeElement> {
    if uses_t {
        element::cylinder_star(base, e)
    } else {
        element::cone_star(base, e)
    }
}

fn to_base(e: &ConeElement, what: &str) -> Result<BaseElement> {
    let mut out = BaseElement::new();
    for (m, c) in e.terms() {
        if *m != ConeMonomial::base(m.base) {
            return Err(Error::Preset(format!("{what}: table entries must be base linear combinations")));
        }
        out.insert(m.base, *c);
    }
    Ok(out)
}

fn context(name: &str, key: &str, e: Error) -> Error {
    Error::Preset(format!("{name}: {key}: {e}"))
}

impl ConePreset {
    /// Builds a preset; `resolve` supplies parents named by `extends`.
    pub fn from_file(file: &PresetFile, resolve: &dyn Fn(&str) -> Result<ConePreset>) -> Result<ConePreset> {
        let name = &file.name;
        let parent = file.extends.as_deref().map(resolve).transpose()?;
        let mut params: BTreeMap<String, Rational> = parent.as_ref().map(|p| p.params.clone()).unwrap_or_default();
        for (k, v) in &file.params {
            params.insert(k.clone(), v.parse().map_err(|e| context(name, k, e))?);
        }
        let base = match &parent {
            Some(p) => {
                if !file.generators.is_empty() || file.base_dim.is_some() {
                    return Err(Error::Preset(format!("{name}: an extending preset cannot redefine the base")));
                }
                p.base.clone()
            }
            None => Self::build_base(file, &params)?,
        };
        let mut elements = parent.as_ref().map(|p| p.elements.clone()).unwrap_or_default();
        for ne in &file.elements {
            let scope = Builder {
                base: &base,
                params: &params,
                elements: &elements,
                uses_t: file.uses_t,
                base_only: false,
            };
            let e = parse(&ne.expr, &scope).map_err(|e| context(name, &ne.name, e))?;
            elements.push((ne.name.clone(), e));
        }
        if !elements.iter().any(|(n, _)| *n == file.structure) {
            return Err(Error::Preset(format!("{name}: structure element {} is not defined", file.structure)));
        }
        Ok(ConePreset {
            name: name.clone(),
            aliases: file.aliases.clone(),
            description: file.description.clone(),
            normalization: file.normalization.clone().or_else(|| parent.as_ref().and_then(|p| p.normalization.clone())),
            uses_t: file.uses_t,
            params,
            base,
            elements,
            structure: file.structure.clone(),
            equations: file.equations.clone(),
            potentials: file.potentials.clone(),
        })
    }

    fn build_base(file: &PresetFile, params: &BTreeMap<String, Rational>) -> Result<BaseAlgebra> {
        let name = &file.name;
        let base_dim = file.base_dim.ok_or_else(|| Error::Preset(format!("{name}: base_dim missing")))?;
        let gens: Vec<(&str, usize)> = file.generators.iter().map(|g| (g.name.as_str(), g.degree)).collect();
        let mut base = BaseAlgebra::new(base_dim, &gens).map_err(|e| context(name, "generators", e))?;
        let gen_index = |base: &BaseAlgebra, key: &str| -> Result<Gen> {
            base.index(key.trim()).ok_or_else(|| Error::Unknown {
                kind: "generator",
                name: key.trim().to_string(),
            })
        };
        let entry = |base: &BaseAlgebra, key: &str, src: &str| -> Result<BaseElement> {
            let scope = Builder {
                base,
                params,
                elements: &[],
                uses_t: false,
                base_only: true,
            };
            to_base(&parse(src, &scope)?, key)
        };
        for (key, src) in &file.mult {
            let (a, b) = key
                .split_once('*')
                .ok_or_else(|| Error::Preset(format!("{name}: mult key {key} is not of the form a*b")))?;
            let (a, b) = (gen_index(&base, a).map_err(|e| context(name, key, e))?, gen_index(&base, b).map_err(|e| context(name, key, e))?);
            let v = entry(&base, key, src).map_err(|e| context(name, key, e))?;
            base.set_product(a, b, v).map_err(|e| context(name, key, e))?;
        }
        for (key, src) in &file.d {
            let g = gen_index(&base, key).map_err(|e| context(name, key, e))?;
            let v = entry(&base, key, src).map_err(|e| context(name, key, e))?;
            base.set_d(g, v).map_err(|e| context(name, key, e))?;
        }
        for (key, src) in &file.star {
            let g = gen_index(&base, key).map_err(|e| context(name, key, e))?;
            let v = entry(&base, key, src).map_err(|e| context(name, key, e))?;
            base.set_star(g, v).map_err(|e| context(name, key, e))?;
        }
        for (key, src) in &file.norm_sq {
            let g = gen_index(&base, key).map_err(|e| context(name, key, e))?;
            let v = entry(&base, key, src).map_err(|e| context(name, key, e))?;
            let c = ConeElement::from_base(ConeMonomial::base(0), &v)
                .as_constant()
                .ok_or_else(|| Error::Preset(format!("{name}: norm_sq.{key} must be a number")))?;
            base.set_norm_sq(g, c);
        }
        Ok(base)
    }

    pub fn from_toml(src: &str, resolve: &dyn Fn(&str) -> Result<ConePreset>) -> Result<ConePreset> {
        let file: PresetFile = toml::from_str(src).map_err(|e| Error::Preset(e.to_string()))?;
        ConePreset::from_file(&file, resolve)
    }

    pub fn matches(&self, name: &str) -> bool {
        self.name.eq_ignore_ascii_case(name) || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }

    /// Total dimension of the cone or cylinder.
    pub fn dim(&self) -> usize {
        self.base.base_dim + 1 + self.uses_t as usize
    }

    pub fn element(&self, name: &str) -> Option<&ConeElement> {
        self.elements.iter().rev().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn parse(&self, src: &str) -> Result<ConeElement> {
        parse(src, &self.scope())
    }

    fn scope(&self) -> Builder<'_> {
        Builder {
            base: &self.base,
            params: &self.params,
            elements: &self.elements,
            uses_t: self.uses_t,
            base_only: false,
        }
    }

    pub fn d(&self, a: &ConeElement) -> ConeElement {
        element::d(&self.base, a)
    }

    pub fn wedge(&self, a: &ConeElement, b: &ConeElement) -> ConeElement {
        element::wedge(&self.base, a, b)
    }

    pub fn star(&self, a: &ConeElement) -> Result<ConeElement> {
        star_with(&self.base, self.uses_t, a)
    }

    pub fn show(&self, a: &ConeElement) -> String {
        a.display(&self.base)
    }

    /// The structure form named by the preset.
    pub fn structure_form(&self) -> &ConeElement {
        self.element(&self.structure).expect("structure element checked at load")
    }
}
