//! Matrix-valued forms with polynomial coefficients. Constant-coefficient
//! ones are the Lie-valued forms of a single fibre.

use std::collections::BTreeMap;
use std::fmt;

use super::lie::Mat2;
use crate::blade::{Blade, MAX_DIM};
use crate::form::ConstForm;
use crate::poly::{monomial_label, Exponents};
use crate::polyform::PolyForm;
use crate::scalar::Scalar;

const CONST: Exponents = [0; MAX_DIM];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MatForm {
    n: usize,
    terms: BTreeMap<(Blade, Exponents), Mat2>,
}

/// A Lie-valued form with constant coefficients.
pub type LieForm = MatForm;

/// A connection 1-form A on the trivial bundle over ℝⁿ.
pub type PolyConnection = MatForm;

impl MatForm {
    pub fn zero(n: usize) -> MatForm {
        MatForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// g ⊗ f for a matrix g and a scalar polynomial form f.
    pub fn tensor(g: &Mat2, f: &PolyForm) -> MatForm {
        let mut out = MatForm::zero(f.n());
        for ((b, e), c) in f.terms() {
            out.add_term(*b, *e, g.scale(*c));
        }
        out
    }

    pub fn tensor_const(g: &Mat2, f: &ConstForm) -> MatForm {
        MatForm::tensor(g, &PolyForm::from_const(f))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Blade, Exponents), Mat2> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Blade, e: Exponents, m: Mat2) {
        if m.is_zero() {
            return;
        }
        let key = (b, e);
        let slot = self.terms.entry(key).or_default();
        *slot = *slot + m;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &MatForm, c: Scalar) {
        assert_eq!(self.n, other.n, "sum of forms on different ℝⁿ");
        for ((b, e), m) in &other.terms {
            self.add_term(*b, *e, m.scale(c));
        }
    }

    pub fn scale(&self, c: Scalar) -> MatForm {
        let mut out = MatForm::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.terms.keys().all(|(b, _)| b.degree() == p)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(_, e)| *e == CONST)
    }

    /// a∧b with matrix multiplication of coefficients.
    pub fn wedge(&self, other: &MatForm) -> MatForm {
        assert_eq!(self.n, other.n, "wedge of forms on different ℝⁿ");
        let mut out = MatForm::zero(self.n);
        for ((a, e), x) in &self.terms {
            for ((b, f), y) in &other.terms {
                if let Some((blade, odd)) = a.wedge(*b) {
                    let mut g = *e;
                    for k in 0..MAX_DIM {
                        g[k] += f[k];
                    }
                    let m = *x * *y;
                    out.add_term(blade, g, if odd { -m } else { m });
                }
            }
        }
        out
    }

    /// a∧ω for a scalar form ω on the right.
    pub fn wedge_scalar(&self, omega: &ConstForm) -> MatForm {
        self.wedge(&MatForm::tensor_const(&Mat2::IDENTITY, omega))
    }

    /// [a∧b] = a∧b − (−1)^{pq} b∧a.
    pub fn bracket(&self, other: &MatForm, p: usize, q: usize) -> MatForm {
        let mut out = self.wedge(other);
        out.add_scaled(&other.wedge(self), Scalar::sign((p * q).is_multiple_of(2)));
        out
    }

    pub fn d(&self) -> MatForm {
        self.map_scalar(|f| f.d())
    }

    pub fn star(&self) -> MatForm {
        self.map_scalar(|f| f.star())
    }

    /// Applies a ℂ-linear operator on scalar forms entrywise.
    pub fn map_scalar(&self, op: impl Fn(&PolyForm) -> PolyForm) -> MatForm {
        let mut out = MatForm::zero(self.n);
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = Mat2::ZERO;
                unit.0[i][j] = Scalar::ONE;
                out.add_scaled(&MatForm::tensor(&unit, &op(&self.entry(i, j))), Scalar::ONE);
            }
        }
        out
    }

    /// Applies a ℂ-linear map of constant forms, given on basis blades.
    pub fn map_const(&self, op: impl Fn(&ConstForm) -> ConstForm) -> MatForm {
        let mut out = MatForm::zero(self.n);
        for ((b, e), m) in &self.terms {
            for (dst, c) in op(&ConstForm::basis(self.n, *b)).terms() {
                out.add_term(*dst, *e, m.scale(*c));
            }
        }
        out
    }

    pub fn entry(&self, i: usize, j: usize) -> PolyForm {
        let mut f = PolyForm::zero(self.n);
        for ((b, e), m) in &self.terms {
            f.add_term(*b, *e, m.entry(i, j));
        }
        f
    }

    pub fn trace(&self) -> PolyForm {
        let mut f = PolyForm::zero(self.n);
        for ((b, e), m) in &self.terms {
            f.add_term(*b, *e, m.trace());
        }
        f
    }

    /// Σ_I −tr(a_I a_I) for a constant-coefficient form; |a|² on real
    /// Lie-valued forms, bilinear in general.
    pub fn norm_sq(&self) -> Scalar {
        assert!(self.is_constant(), "pointwise norm of a non-constant form");
        self.terms.values().map(|m| m.pairing(m)).fold(Scalar::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for MatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((b, e), m)| {
                let mono = if *e == CONST { String::new() } else { format!("{}·", monomial_label(e, 0)) };
                format!("{mono}{m}·{}", b.label(0))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for MatForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
