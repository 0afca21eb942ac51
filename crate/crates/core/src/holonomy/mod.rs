//! Canonical parallel forms of the flat G₂, Spin(7) and Calabi–Yau models,
//! their 2-form decompositions, and the identity suites built on them.

mod decompose;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::ConstForm;
use crate::scalar::Scalar;

pub use decompose::{
    eigen_map_matrix, has_type, lefschetz_trace, seven_part_potential, split2, type_decompose_c3, type_rotation, volume_pairing_c3,
    EigenSummary, TwoFormSplit, VolumePairing,
};
pub use suites::{eigen_suite, identity_suite_g2, identity_suite_spin7, identity_samples};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    G2,
    Spin7,
    Cy3,
}

impl StructureKind {
    pub fn dim(self) -> usize {
        match self {
            StructureKind::G2 => 7,
            StructureKind::Spin7 => 8,
            StructureKind::Cy3 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::G2 => "g2",
            StructureKind::Spin7 => "spin7",
            StructureKind::Cy3 => "cy3",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(StructureKind::G2),
            "spin7" => Ok(StructureKind::Spin7),
            "cy3" => Ok(StructureKind::Cy3),
            _ => Err(Error::Unknown {
                kind: "structure",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePreset {
    pub kind: StructureKind,
    pub n: usize,
    pub forms: BTreeMap<&'static str, ConstForm>,
}

impl StructurePreset {
    pub fn form(&self, name: &str) -> &ConstForm {
        self.forms
            .get(name)
            .unwrap_or_else(|| panic!("{} preset has no form {name}", self.kind))
    }

    /// The form whose wedge-star map splits Λ²: φ or Ω. `None` for CY3.
    pub fn calibration(&self) -> Option<&ConstForm> {
        match self.kind {
            StructureKind::G2 => Some(self.form("phi")),
            StructureKind::Spin7 => Some(self.form("Omega")),
            StructureKind::Cy3 => None,
        }
    }
}

fn e(n: usize, axes: &[usize]) -> ConstForm {
    ConstForm::from_axes(n, axes)
}

/// φ = e012 + e034 + e056 + e135 − e146 − e236 − e245.
pub fn g2_phi() -> ConstForm {
    let plus: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5]];
    let minus: [[usize; 3]; 3] = [[1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let p: ConstForm = plus.iter().map(|a| e(7, a)).sum();
    let m: ConstForm = minus.iter().map(|a| e(7, a)).sum();
    &p - &m
}

/// Pushes a form on ℝ⁷ to ℝ⁸ along the first seven axes.
pub fn embed(f: &ConstForm, n: usize) -> ConstForm {
    assert!(n >= f.n());
    ConstForm::from_terms(n, f.terms().iter().map(|(b, c)| (*b, *c)))
}

/// Ω = φ∧e⁷ + ∗₇φ, self-dual for the orientation e⁰∧…∧e⁷.
pub fn spin7_omega() -> ConstForm {
    let phi = g2_phi();
    let psi = embed(&phi.star(), 8);
    let phi8 = embed(&phi, 8);
    &phi8.wedge(&e(8, &[7])) + &psi
}

pub fn kahler_omega() -> ConstForm {
    &(&e(6, &[0, 1]) + &e(6, &[2, 3])) + &e(6, &[4, 5])
}

/// dz_k = e^{2k} + i e^{2k+1}.
pub fn dz(k: usize) -> ConstForm {
    &e(6, &[2 * k]) + &e(6, &[2 * k + 1]).scale(Scalar::I)
}

pub fn dzbar(k: usize) -> ConstForm {
    dz(k).conj()
}

/// Ω³'⁰ = dz₀∧dz₁∧dz₂.
pub fn holomorphic_volume() -> ConstForm {
    dz(0).wedge(&dz(1)).wedge(&dz(2))
}

pub fn canonical_structure(kind: StructureKind) -> StructurePreset {
    let mut forms = BTreeMap::new();
    match kind {
        StructureKind::G2 => {
            let phi = g2_phi();
            forms.insert("psi", phi.star());
            forms.insert("phi", phi);
        }
        StructureKind::Spin7 => {
            let phi = g2_phi();
            forms.insert("psi", embed(&phi.star(), 8));
            forms.insert("phi", embed(&phi, 8));
            forms.insert("Omega", spin7_omega());
        }
        StructureKind::Cy3 => {
            let hol = holomorphic_volume();
            let re = ConstForm::from_terms(6, hol.terms().iter().map(|(b, c)| (*b, Scalar::real(c.re))));
            let im = ConstForm::from_terms(6, hol.terms().iter().map(|(b, c)| (*b, Scalar::real(c.im))));
            forms.insert("omega", kahler_omega());
            forms.insert("Omega30", hol);
            forms.insert("ReOmega", re);
            forms.insert("ImOmega", im);
        }
    }
    StructurePreset {
        kind,
        n: kind.dim(),
        forms,
    }
}

/// The basis of Λ²(ℝⁿ) in bitmask order, used as matrix coordinates.
pub fn two_form_basis(n: usize) -> Vec<Blade> {
    Blade::of_degree(n, 2)
}
