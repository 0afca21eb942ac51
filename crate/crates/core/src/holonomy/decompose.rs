use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::{derivation_extend, ConstForm, DerivationSpec};
use crate::linalg::{Matrix, Poly};
use crate::scalar::{Rational, Scalar};

use super::{canonical_structure, two_form_basis, StructureKind, StructurePreset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoFormSplit {
    G2 {
        a7: ConstForm,
        a14: ConstForm,
    },
    Spin7 {
        a7: ConstForm,
        a21: ConstForm,
    },
    Cy3 {
        a20: ConstForm,
        a02: ConstForm,
        a0: Scalar,
        omega: ConstForm,
        a11_0: ConstForm,
    },
}

impl TwoFormSplit {
    /// Named components, in display order. The CY3 trace part appears as
    /// the form α⁰·ω.
    pub fn components(&self) -> Vec<(&'static str, ConstForm)> {
        match self {
            TwoFormSplit::G2 { a7, a14 } => vec![("a7", a7.clone()), ("a14", a14.clone())],
            TwoFormSplit::Spin7 { a7, a21 } => vec![("a7", a7.clone()), ("a21", a21.clone())],
            TwoFormSplit::Cy3 {
                a20,
                a02,
                a0,
                omega,
                a11_0,
            } => vec![
                ("a20", a20.clone()),
                ("a02", a02.clone()),
                ("a0_omega", omega.scale(*a0)),
                ("a11_0", a11_0.clone()),
            ],
        }
    }

    pub fn sum(&self) -> ConstForm {
        self.components().into_iter().map(|(_, f)| f).sum()
    }

    pub fn trace(&self) -> Option<Scalar> {
        match self {
            TwoFormSplit::Cy3 { a0, .. } => Some(*a0),
            _ => None,
        }
    }

    /// Hermitian inner products of all distinct component pairs vanish.
    pub fn pairwise_orthogonal(&self) -> bool {
        let parts = self.components();
        parts.iter().enumerate().all(|(i, (_, a))| {
            parts[i + 1..].iter().all(|(_, b)| a.hermitian(b).is_zero())
        })
    }
}

fn require_two_form(alpha: &ConstForm, n: usize) -> Result<()> {
    if alpha.n() != n {
        return Err(Error::DimensionMismatch {
            left: alpha.n(),
            right: n,
        });
    }
    if !alpha.is_homogeneous(2) {
        return Err(Error::WrongDegree {
            expected: 2,
            found: alpha.degree().map_or("mixed".to_string(), |d| d.to_string()),
        });
    }
    Ok(())
}

/// G₂: α⁷ = ⅓(α + ∗(α∧φ)). Spin(7): α⁷ = ¼(α + ∗(α∧Ω)). CY3: type split.
pub fn split2(alpha: &ConstForm, preset: &StructurePreset) -> Result<TwoFormSplit> {
    require_two_form(alpha, preset.n)?;
    match preset.kind {
        StructureKind::G2 => {
            let phi = preset.form("phi");
            let a7 = (alpha + &alpha.wedge(phi).star()).scale(Scalar::ratio(1, 3));
            let a14 = alpha - &a7;
            Ok(TwoFormSplit::G2 { a7, a14 })
        }
        StructureKind::Spin7 => {
            let omega = preset.form("Omega");
            let a7 = (alpha + &alpha.wedge(omega).star()).scale(Scalar::ratio(1, 4));
            let a21 = alpha - &a7;
            Ok(TwoFormSplit::Spin7 { a7, a21 })
        }
        StructureKind::Cy3 => type_decompose_c3(alpha),
    }
}

/// The even derivation ρ with ρ(e^{2k}) = −e^{2k+1}, ρ(e^{2k+1}) = e^{2k}.
/// It acts on (p,q)-forms as multiplication by i(p−q).
pub fn type_rotation() -> DerivationSpec {
    let n = 6;
    let images = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                -ConstForm::basis(n, Blade::axis(i + 1))
            } else {
                ConstForm::basis(n, Blade::axis(i - 1))
            }
        })
        .collect();
    DerivationSpec::new(n, images, false).expect("uniform 1-form images")
}

fn rho(a: &ConstForm) -> ConstForm {
    derivation_extend(&type_rotation(), a).expect("form on ℝ⁶")
}

/// Projects onto the ρ-eigenspace with eigenvalue i·`target` among
/// the eigenvalues i·`all`.
fn type_projection(a: &ConstForm, target: i128, all: &[i128]) -> ConstForm {
    let mut out = a.clone();
    let mut denom = Scalar::ONE;
    for &other in all.iter().filter(|&&v| v != target) {
        let shift = Scalar::new(Rational::ZERO, Rational::from_int(other));
        out = &rho(&out) - &out.scale(shift);
        denom *= Scalar::new(Rational::ZERO, Rational::from_int(target - other));
    }
    out.scale(denom.recip())
}

/// α = α^{2,0} + α^{0,2} + α⁰ω + α^{1,1}₀ with α⁰ = Λα/3.
pub fn type_decompose_c3(alpha: &ConstForm) -> Result<TwoFormSplit> {
    require_two_form(alpha, 6)?;
    let omega = canonical_structure(StructureKind::Cy3).form("omega").clone();
    let weights = [2, 0, -2];
    let a20 = type_projection(alpha, 2, &weights);
    let a02 = type_projection(alpha, -2, &weights);
    let a11 = type_projection(alpha, 0, &weights);
    let a0 = alpha.inner(&omega) * Scalar::ratio(1, 3);
    let a11_0 = &a11 - &omega.scale(a0);
    Ok(TwoFormSplit::Cy3 {
        a20,
        a02,
        a0,
        omega,
        a11_0,
    })
}

/// True when `a` is a nonzero-or-zero form of pure type (p,q) on ℂ³.
pub fn has_type(a: &ConstForm, p: usize, q: usize) -> bool {
    a.is_homogeneous(p + q) && rho(a) == a.scale(Scalar::new(Rational::ZERO, Rational::from_int(p as i128 - q as i128)))
}

/// Λ_ω on 2-forms, the metric contraction with ω.
pub fn lefschetz_trace(a: &ConstForm) -> Scalar {
    a.inner(&super::kahler_omega())
}

/// β = ⅓∗(α⁷∧∗φ), the 1-form with ∗(∗φ∧β) = α⁷.
pub fn seven_part_potential(a7: &ConstForm) -> Result<ConstForm> {
    let g2 = canonical_structure(StructureKind::G2);
    match split2(a7, &g2)? {
        TwoFormSplit::G2 { a14, .. } if !a14.is_zero() => Err(Error::NotInSubspace(format!(
            "input has a Λ²₁₄ component of squared norm {}",
            a14.norm_sq()
        ))),
        _ => Ok(a7.wedge(g2.form("psi")).star().scale(Scalar::ratio(1, 3))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePairing {
    pub p: usize,
    pub image: ConstForm,
    pub composite: ConstForm,
    /// c with composite = c·β, when β ≠ 0.
    pub constant: Option<Scalar>,
}

/// β ↦ ∗conj(β∧Ω³'⁰) sends Λ^{0,p} to Λ^{0,3−p}. The conjugation makes the
/// star the Hermitian one; the complex-linear star would land in Λ^{3−p,0}.
pub fn volume_pairing_c3(beta: &ConstForm) -> Result<VolumePairing> {
    let hol = canonical_structure(StructureKind::Cy3).form("Omega30").clone();
    if beta.n() != 6 {
        return Err(Error::DimensionMismatch {
            left: beta.n(),
            right: 6,
        });
    }
    let p = match beta.degree() {
        None if beta.is_zero() => 0,
        Some(p) if (1..=2).contains(&p) => p,
        _ => {
            return Err(Error::NotInSubspace(format!("expected a (0,1)- or (0,2)-form, got {beta}")));
        }
    };
    if p > 0 && !has_type(beta, 0, p) {
        return Err(Error::NotInSubspace(format!("{beta} is not of pure type (0,{p})")));
    }
    let map = |b: &ConstForm| b.wedge(&hol).conj().star();
    let image = map(beta);
    let composite = map(&image);
    let constant = proportionality(&composite, beta);
    Ok(VolumePairing {
        p,
        image,
        composite,
        constant,
    })
}

/// c with a = c·b, if one exists and b ≠ 0.
pub fn proportionality(a: &ConstForm, b: &ConstForm) -> Option<Scalar> {
    let (blade, coef) = b.terms().iter().next()?;
    let c = a.coef(*blade) / *coef;
    (b.scale(c) == *a).then_some(c)
}

pub fn to_coords(f: &ConstForm, basis: &[Blade]) -> Vec<Rational> {
    assert!(f.is_real(), "coordinates of a complex form");
    basis.iter().map(|b| f.coef(*b).re).collect()
}

/// Matrix of α ↦ ∗(α∧form) on Λ²(ℝⁿ), columns indexed by basis blades.
pub fn eigen_map_matrix(form: &ConstForm) -> Matrix {
    let n = form.n();
    let basis = two_form_basis(n);
    let columns: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| to_coords(&ConstForm::basis(n, *b).wedge(form).star(), &basis))
        .collect();
    Matrix::from_columns(basis.len(), &columns)
}

#[derive(Clone, Debug)]
pub struct EigenSummary {
    pub matrix: Matrix,
    pub char_poly: Poly,
    pub roots: Vec<(Rational, usize)>,
    pub factored: String,
    /// (M − λ₁)(M − λ₂) = 0 for the two expected eigenvalues.
    pub minimal_poly_holds: bool,
    /// Multiplicities from trace and dimension alone.
    pub trace_multiplicities: Option<(usize, usize)>,
}

impl EigenSummary {
    pub fn compute(form: &ConstForm, top: Rational, bottom: Rational) -> EigenSummary {
        let matrix = eigen_map_matrix(form);
        let char_poly = matrix.char_poly();
        let (roots, _) = char_poly.rational_factorization();
        let factored = char_poly.factored_string();
        let dim = matrix.rows();
        let id = Matrix::identity(dim);
        let minimal_poly_holds = matrix
            .add(&id.scale(-top))
            .mul(&matrix.add(&id.scale(-bottom)))
            .is_zero();
        // m₁ + m₂ = dim, top·m₁ + bottom·m₂ = tr.
        let tr = matrix.trace();
        let m1 = (tr - bottom * Rational::from_int(dim as i128)) / (top - bottom);
        let trace_multiplicities = (m1.is_integer() && !m1.is_negative() && m1.numer() <= dim as i128)
            .then(|| (m1.numer() as usize, dim - m1.numer() as usize));
        EigenSummary {
            matrix,
            char_poly,
            roots,
            factored,
            minimal_poly_holds,
            trace_multiplicities,
        }
    }
}
