//! Exact potentials for closed cone forms and the growth classifier.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::element::{ConeElement, ConeMonomial};
use super::preset::ConePreset;
use crate::error::{Error, Result};
use crate::linalg::{LinearSolution, Matrix};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PotentialSolution {
    Solved {
        potential: ConeElement,
        /// Nonzero coefficients against the expanded ansatz.
        coefficients: Vec<(ConeElement, Rational)>,
        kernel_dim: usize,
    },
    NoSolution,
}

/// Expands shapes containing `r^a` over the exponent range; other shapes
/// contribute themselves once.
pub fn expand_ansatz(preset: &ConePreset, shapes: &[String], exponents: [i32; 2]) -> Result<Vec<ConeElement>> {
    let mut out: Vec<ConeElement> = Vec::new();
    for shape in shapes {
        let instances: Vec<String> = if shape.contains("r^a") {
            (exponents[0]..=exponents[1]).map(|k| shape.replace("r^a", &format!("r^{k}"))).collect()
        } else {
            vec![shape.clone()]
        };
        for src in instances {
            let e = preset.parse(&src)?;
            if !e.is_zero() && !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Finds c with d(Σ cᵢ mᵢ) = target by exact linear algebra.
pub fn solve_potential(preset: &ConePreset, target: &ConeElement, ansatz: &[ConeElement]) -> Result<PotentialSolution> {
    let dt = preset.d(target);
    if !dt.is_zero() {
        return Err(Error::NotClosed(format!("d(target) = {}", preset.show(&dt))));
    }
    let images: Vec<ConeElement> = ansatz.iter().map(|m| preset.d(m)).collect();
    let mut rows: BTreeMap<ConeMonomial, usize> = BTreeMap::new();
    for e in images.iter().chain(std::iter::once(target)) {
        for m in e.terms().keys() {
            let next = rows.len();
            rows.entry(*m).or_insert(next);
        }
    }
    let mut a = Matrix::zeros(rows.len(), ansatz.len());
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            a[(rows[m], j)] = *c;
        }
    }
    let mut b = vec![Rational::ZERO; rows.len()];
    for (m, c) in target.terms() {
        b[rows[m]] = *c;
    }
    match a.solve(&b) {
        LinearSolution::Inconsistent => Ok(PotentialSolution::NoSolution),
        LinearSolution::Solved { particular, kernel_dim } => {
            let mut potential = ConeElement::zero();
            let mut coefficients = Vec::new();
            for (m, c) in ansatz.iter().zip(particular) {
                if !c.is_zero() {
                    potential.add_scaled(m, c);
                    coefficients.push((m.clone(), c));
                }
            }
            debug_assert_eq!(&preset.d(&potential), target);
            Ok(PotentialSolution::Solved {
                potential,
                coefficients,
                kernel_dim,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    DecayingOrBounded,
    Linear,
    Polynomial(u32),
    SingularAtApex,
}

impl fmt::Display for GrowthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthKind::DecayingOrBounded => f.write_str("decaying_or_bounded"),
            GrowthKind::Linear => f.write_str("linear"),
            GrowthKind::Polynomial(k) => write!(f, "polynomial({k})"),
            GrowthKind::SingularAtApex => f.write_str("singular_at_apex"),
        }
    }
}

/// Per-monomial growth: the pointwise norm of rᵃ tᵇ [dt][dr] g is
/// r^{a − deg g} tᵇ |g|, so `r_exponent` = a − deg g and the growth in the
/// distance function is `r_exponent + t_exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthWitness {
    pub r_exponent: i32,
    pub t_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    pub witnesses: Vec<GrowthWitness>,
}

pub fn growth_classify(preset: &ConePreset, a: &ConeElement) -> Result<GrowthClass> {
    let mut witnesses = Vec::new();
    for m in a.terms().keys() {
        preset.base.norm_sq(m.base)?;
        witnesses.push(GrowthWitness {
            r_exponent: m.r_exp - preset.base.degree(m.base) as i32,
            t_exponent: m.t_exp,
        });
    }
    witnesses.sort_by_key(|w| (w.r_exponent, w.t_exponent));
    witnesses.dedup();
    let kind = if witnesses.iter().any(|w| w.r_exponent < 0) {
        GrowthKind::SingularAtApex
    } else {
        match witnesses.iter().map(|w| w.r_exponent as u32 + w.t_exponent).max().unwrap_or(0) {
            0 => GrowthKind::DecayingOrBounded,
            1 => GrowthKind::Linear,
            k => GrowthKind::Polynomial(k),
        }
    };
    Ok(GrowthClass { kind, witnesses })
}
