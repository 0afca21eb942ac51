//! Parity-graded operators on polynomial forms: d, d*, Δ, pointwise
//! algebraic operators (L_ω, Λ_ω, the structure operator C and adjoints),
//! compositions and supercommutators.

use std::fmt;
use std::sync::Arc;

use crate::blade::Blade;
use crate::error::Result;
use crate::form::{ConstForm, DerivationSpec};
use crate::polyform::PolyForm;
use crate::scalar::Scalar;

/// A C^∞-linear operator given by its value on every basis blade.
#[derive(Clone, PartialEq, Eq)]
pub struct PointwiseOp {
    pub name: String,
    pub n: usize,
    pub odd: bool,
    pub shift: isize,
    images: Vec<ConstForm>,
}

impl PointwiseOp {
    pub fn from_fn(name: impl Into<String>, n: usize, odd: bool, shift: isize, f: impl Fn(Blade) -> ConstForm) -> PointwiseOp {
        PointwiseOp {
            name: name.into(),
            n,
            odd,
            shift,
            images: Blade::all(n).map(f).collect(),
        }
    }

    /// L_ω: a ↦ ω∧a.
    pub fn wedge_left(name: impl Into<String>, omega: &ConstForm) -> PointwiseOp {
        let k = omega.degree().unwrap_or(0);
        let n = omega.n();
        PointwiseOp::from_fn(name, n, k % 2 == 1, k as isize, |b| omega.wedge(&ConstForm::basis(n, b)))
    }

    /// Λ_ω b = (−1)^{kp + p(n−p)} ∗(ω∧∗b) with p = deg b − k, the metric
    /// adjoint of L_ω on real forms.
    pub fn adjoint_wedge(name: impl Into<String>, omega: &ConstForm) -> PointwiseOp {
        let k = omega.degree().unwrap_or(0);
        let n = omega.n();
        PointwiseOp::from_fn(name, n, k % 2 == 1, -(k as isize), |b| {
            let q = b.degree();
            if q < k {
                return ConstForm::zero(n);
            }
            let p = q - k;
            let odd = (k * p + p * (n - p)) % 2 == 1;
            omega.wedge(&ConstForm::basis(n, b).star()).star().scale(Scalar::sign(odd))
        })
    }

    /// The derivation extension of C̲(α) = ∗(∗ω∧α).
    pub fn structure(name: impl Into<String>, omega: &ConstForm) -> Result<PointwiseOp> {
        let spec = DerivationSpec::structure(omega)?;
        let k = omega.degree().unwrap_or(2) as isize;
        Ok(PointwiseOp::from_fn(name, omega.n(), spec.is_odd(), k - 2, |b| spec.on_blade(b)))
    }

    pub fn image(&self, blade: Blade) -> &ConstForm {
        &self.images[blade.0 as usize]
    }

    /// Conjugate transpose with respect to the blade basis, which is
    /// orthonormal; this is the pointwise metric adjoint.
    pub fn transpose(&self, name: impl Into<String>) -> PointwiseOp {
        let n = self.n;
        let mut images = vec![ConstForm::zero(n); 1 << n];
        for src in Blade::all(n) {
            for (dst, c) in self.image(src).terms() {
                images[dst.0 as usize].add_term(src, c.conj());
            }
        }
        PointwiseOp {
            name: name.into(),
            n,
            odd: self.odd,
            shift: -self.shift,
            images,
        }
    }

    pub fn apply_const(&self, a: &ConstForm) -> ConstForm {
        let mut out = ConstForm::zero(self.n);
        for (b, c) in a.terms() {
            for (dst, v) in self.image(*b).terms() {
                out.add_term(*dst, *c * *v);
            }
        }
        out
    }

    pub fn apply(&self, a: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((b, e), c) in a.terms() {
            for (dst, v) in self.image(*b).terms() {
                out.add_term(*dst, *e, *c * *v);
            }
        }
        out
    }
}

impl fmt::Debug for PointwiseOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointwiseOp({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub enum FormOperator {
    D,
    Codiff,
    Laplacian,
    Pointwise(Arc<PointwiseOp>),
    /// A∘B.
    Compose(Box<FormOperator>, Box<FormOperator>),
    /// {A,B} = AB − (−1)^{ÃB̃} BA.
    SuperCommutator(Box<FormOperator>, Box<FormOperator>),
    Scaled(Scalar, Box<FormOperator>),
}

impl FormOperator {
    pub fn pointwise(op: PointwiseOp) -> FormOperator {
        FormOperator::Pointwise(Arc::new(op))
    }

    pub fn is_odd(&self) -> bool {
        match self {
            FormOperator::D | FormOperator::Codiff => true,
            FormOperator::Laplacian => false,
            FormOperator::Pointwise(p) => p.odd,
            FormOperator::Compose(a, b) | FormOperator::SuperCommutator(a, b) => a.is_odd() ^ b.is_odd(),
            FormOperator::Scaled(_, a) => a.is_odd(),
        }
    }

    pub fn shift(&self) -> isize {
        match self {
            FormOperator::D => 1,
            FormOperator::Codiff => -1,
            FormOperator::Laplacian => 0,
            FormOperator::Pointwise(p) => p.shift,
            FormOperator::Compose(a, b) | FormOperator::SuperCommutator(a, b) => a.shift() + b.shift(),
            FormOperator::Scaled(_, a) => a.shift(),
        }
    }

    pub fn apply(&self, a: &PolyForm) -> PolyForm {
        match self {
            FormOperator::D => a.d(),
            FormOperator::Codiff => a.codiff(),
            FormOperator::Laplacian => a.laplacian(),
            FormOperator::Pointwise(p) => p.apply(a),
            FormOperator::Compose(x, y) => x.apply(&y.apply(a)),
            FormOperator::SuperCommutator(x, y) => {
                let mut out = x.apply(&y.apply(a));
                let both_odd = x.is_odd() && y.is_odd();
                out.add_scaled(&y.apply(&x.apply(a)), Scalar::sign(!both_odd));
                out
            }
            FormOperator::Scaled(c, x) => x.apply(a).scale(*c),
        }
    }

    /// Formal adjoint: (AB)* = B*A*, {A,B}* = −(−1)^{ÃB̃}{A*,B*}.
    pub fn adjoint(&self) -> FormOperator {
        match self {
            FormOperator::D => FormOperator::Codiff,
            FormOperator::Codiff => FormOperator::D,
            FormOperator::Laplacian => FormOperator::Laplacian,
            FormOperator::Pointwise(p) => FormOperator::pointwise(p.transpose(format!("{}*", p.name))),
            FormOperator::Compose(a, b) => compose(b.adjoint(), a.adjoint()),
            FormOperator::SuperCommutator(a, b) => {
                let both_odd = a.is_odd() && b.is_odd();
                let c = supercommutator(a.adjoint(), b.adjoint());
                FormOperator::Scaled(Scalar::sign(!both_odd), Box::new(c))
            }
            FormOperator::Scaled(c, a) => FormOperator::Scaled(c.conj(), Box::new(a.adjoint())),
        }
    }
}

impl fmt::Display for FormOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormOperator::D => f.write_str("d"),
            FormOperator::Codiff => f.write_str("d*"),
            FormOperator::Laplacian => f.write_str("Δ"),
            FormOperator::Pointwise(p) => f.write_str(&p.name),
            FormOperator::Compose(a, b) => write!(f, "{a}∘{b}"),
            FormOperator::SuperCommutator(a, b) => write!(f, "{{{a},{b}}}"),
            FormOperator::Scaled(c, a) => write!(f, "({c})·{a}"),
        }
    }
}

pub fn compose(a: FormOperator, b: FormOperator) -> FormOperator {
    FormOperator::Compose(Box::new(a), Box::new(b))
}

pub fn supercommutator(a: FormOperator, b: FormOperator) -> FormOperator {
    FormOperator::SuperCommutator(Box::new(a), Box::new(b))
}

/// C for a constant form ω, as an operator on polynomial forms.
pub fn structure_operator(omega: &ConstForm, name: &str) -> Result<FormOperator> {
    Ok(FormOperator::pointwise(PointwiseOp::structure(format!("C_{name}"), omega)?))
}

pub fn adjoint_wedge(omega: &ConstForm, name: &str) -> FormOperator {
    FormOperator::pointwise(PointwiseOp::adjoint_wedge(format!("Λ_{name}"), omega))
}

pub fn wedge_with(omega: &ConstForm, name: &str) -> FormOperator {
    FormOperator::pointwise(PointwiseOp::wedge_left(format!("L_{name}"), omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::{canonical_structure, StructureKind};
    use crate::poly::PolyScalar;
    use crate::polyform::blade_monomial_family;

    fn phi() -> ConstForm {
        canonical_structure(StructureKind::G2).form("phi").clone()
    }

    #[test]
    fn adjoint_wedge_is_transpose() {
        for omega in [phi(), phi().star()] {
            let l = PointwiseOp::wedge_left("L", &omega);
            let lam = PointwiseOp::adjoint_wedge("Λ", &omega);
            let t = l.transpose("Lᵀ");
            for b in Blade::all(7) {
                assert_eq!(lam.image(b), t.image(b), "{b:?}");
            }
        }
    }

    #[test]
    fn lambda_of_phi_is_norm() {
        let lam = PointwiseOp::adjoint_wedge("Λ", &phi());
        assert_eq!(lam.apply_const(&phi()), ConstForm::one(7).scale(Scalar::int(7)));
        assert!(lam.apply_const(&ConstForm::from_axes(7, &[0, 1])).is_zero());
    }

    #[test]
    fn structure_operator_basics() {
        let c = PointwiseOp::structure("C", &phi()).unwrap();
        assert!(c.odd);
        assert_eq!(c.shift, 1);
        assert!(c.image(Blade::ONE).is_zero());
        let e1 = ConstForm::from_axes(7, &[1]);
        assert_eq!(c.apply_const(&e1), phi().star().wedge(&e1).star());
        // Λ⁰-linearity: C(f·a) = f·C(a).
        let f = &PolyScalar::var(2) * &PolyScalar::var(3);
        let a = PolyForm::from_const(&ConstForm::from_axes(7, &[0, 4]));
        assert_eq!(c.apply(&a.multiply_poly(&f)), c.apply(&a).multiply_poly(&f));
    }

    #[test]
    fn structure_extension_matches_derivation_extend() {
        let spec = DerivationSpec::structure(&phi()).unwrap();
        let c = PointwiseOp::structure("C", &phi()).unwrap();
        let a = ConstForm::from_axes(7, &[1, 2]);
        assert_eq!(c.apply_const(&a), crate::form::derivation_extend(&spec, &a).unwrap());
    }

    #[test]
    fn supercommutator_of_d_with_itself_vanishes() {
        let dd = supercommutator(FormOperator::D, FormOperator::D);
        assert!(!dd.is_odd());
        for f in blade_monomial_family(4, 2).iter().step_by(3) {
            assert!(dd.apply(f).is_zero());
        }
    }

    #[test]
    fn laplacian_is_d_codiff_supercommutator() {
        let lap = supercommutator(FormOperator::D, FormOperator::Codiff);
        for f in blade_monomial_family(5, 2).iter().step_by(4) {
            assert_eq!(lap.apply(f), FormOperator::Laplacian.apply(f));
        }
    }

    #[test]
    fn adjoint_reverses_composition() {
        let l = wedge_with(&phi(), "φ");
        let op = compose(FormOperator::D, l.clone());
        assert_eq!(op.adjoint().to_string(), "L_φ*∘d*");
        assert_eq!(op.shift(), 4);
        assert!(!op.is_odd());
    }
}
