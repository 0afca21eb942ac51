//! Forms on ℝⁿ with polynomial coefficients and the flat-space operators
//! d, d*, Δ and ∗.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::blade::{Blade, MAX_DIM};
use crate::form::ConstForm;
use crate::poly::{monomial_label, Exponents, PolyScalar};
use crate::scalar::Scalar;

/// Σ c·x^e·e_I, stored flat by (blade, exponent vector).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyForm {
    n: usize,
    terms: BTreeMap<(Blade, Exponents), Scalar>,
}

const CONST: Exponents = [0; MAX_DIM];

impl PolyForm {
    pub fn zero(n: usize) -> PolyForm {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        PolyForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(n: usize, blade: Blade, exps: Exponents, c: Scalar) -> PolyForm {
        let mut f = PolyForm::zero(n);
        f.add_term(blade, exps, c);
        f
    }

    pub fn from_poly(n: usize, blade: Blade, p: &PolyScalar) -> PolyForm {
        let mut f = PolyForm::zero(n);
        for (e, c) in p.terms() {
            f.add_term(blade, *e, *c);
        }
        f
    }

    pub fn from_const(f: &ConstForm) -> PolyForm {
        let mut out = PolyForm::zero(f.n());
        for (b, c) in f.terms() {
            out.add_term(*b, CONST, *c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Blade, Exponents), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, blade: Blade, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(blade.min_dim() <= self.n);
        let key = (blade, exps);
        let entry = self.terms.entry(key).or_insert(Scalar::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &PolyForm, c: Scalar) {
        assert_eq!(self.n, other.n, "sum of forms on different ℝⁿ");
        for ((b, e), v) in &other.terms {
            self.add_term(*b, *e, *v * c);
        }
    }

    pub fn scale(&self, c: Scalar) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        if !c.is_zero() {
            out.add_scaled(self, c);
        }
        out
    }

    /// Coefficient polynomial of one blade.
    pub fn coefficient(&self, blade: Blade) -> PolyScalar {
        let mut p = PolyScalar::zero();
        for ((b, e), c) in self.terms.range((blade, CONST)..) {
            if *b != blade {
                break;
            }
            p.add_term(*e, *c);
        }
        p
    }

    pub fn blades(&self) -> Vec<Blade> {
        let mut out: Vec<Blade> = self.terms.keys().map(|(b, _)| *b).collect();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.terms.keys().all(|(b, _)| b.degree() == p)
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(b, _)| b.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The constant-coefficient form, if every coefficient is constant.
    pub fn as_const(&self) -> Option<ConstForm> {
        let mut f = ConstForm::zero(self.n);
        for ((b, e), c) in &self.terms {
            if *e != CONST {
                return None;
            }
            f.add_term(*b, *c);
        }
        Some(f)
    }

    pub fn multiply_poly(&self, p: &PolyScalar) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((b, e), c) in &self.terms {
            for (f, v) in p.terms() {
                let mut g = *e;
                for k in 0..MAX_DIM {
                    g[k] += f[k];
                }
                out.add_term(*b, g, *c * *v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.n, other.n, "wedge of forms on different ℝⁿ");
        let mut out = PolyForm::zero(self.n);
        for ((a, e), x) in &self.terms {
            for ((b, f), y) in &other.terms {
                if let Some((blade, odd)) = a.wedge(*b) {
                    let mut g = *e;
                    for k in 0..MAX_DIM {
                        g[k] += f[k];
                    }
                    let c = *x * *y;
                    out.add_term(blade, g, if odd { -c } else { c });
                }
            }
        }
        out
    }

    pub fn wedge_const(&self, other: &ConstForm) -> PolyForm {
        self.wedge(&PolyForm::from_const(other))
    }

    /// Exterior derivative: d(f e_I) = Σᵢ ∂ᵢf e^i∧e_I.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((b, e), c) in &self.terms {
            for i in 0..self.n {
                if e[i] == 0 {
                    continue;
                }
                let Some((blade, odd)) = Blade::axis(i).wedge(*b) else {
                    continue;
                };
                let mut f = *e;
                f[i] -= 1;
                let v = *c * Scalar::int(e[i] as i128);
                out.add_term(blade, f, if odd { -v } else { v });
            }
        }
        out
    }

    /// Codifferential −Σᵢ ι(eᵢ)∂ᵢ, the formal adjoint of d.
    pub fn codiff(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((b, e), c) in &self.terms {
            for i in 0..self.n {
                if e[i] == 0 {
                    continue;
                }
                let Some((blade, odd)) = b.contract(i) else {
                    continue;
                };
                let mut f = *e;
                f[i] -= 1;
                let v = *c * Scalar::int(e[i] as i128);
                out.add_term(blade, f, if odd { v } else { -v });
            }
        }
        out
    }

    /// (−1)^{n(p+1)+1} ∗d∗ applied degree by degree.
    pub fn codiff_via_star(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for p in 0..=self.n {
            let part = self.grade(p);
            if part.is_zero() {
                continue;
            }
            let odd = (self.n * (p + 1) + 1) % 2 == 1;
            out.add_scaled(&part.star().d().star(), Scalar::sign(odd));
        }
        out
    }

    pub fn laplacian(&self) -> PolyForm {
        let mut out = self.codiff().d();
        out.add_scaled(&self.d().codiff(), Scalar::ONE);
        out
    }

    /// Componentwise −Σ∂², valid on flat space.
    pub fn laplacian_componentwise(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for b in self.blades() {
            let p = self.coefficient(b).neg_laplacian(self.n);
            out.add_scaled(&PolyForm::from_poly(self.n, b, &p), Scalar::ONE);
        }
        out
    }

    pub fn star(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((b, e), c) in &self.terms {
            let odd = b.star_parity(self.n);
            out.add_term(b.complement(self.n), *e, if odd { -*c } else { *c });
        }
        out
    }

    pub fn grade(&self, p: usize) -> PolyForm {
        PolyForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((b, _), _)| b.degree() == p)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// c with self = c·other, if one exists and other ≠ 0.
    pub fn ratio_to(&self, other: &PolyForm) -> Option<Scalar> {
        let ((b, e), v) = other.terms.iter().next()?;
        let c = self.terms.get(&(*b, *e)).copied().unwrap_or(Scalar::ZERO) / *v;
        (other.scale(c) == *self).then_some(c)
    }

    pub fn display(&self, base: usize) -> String {
        let mut parts: Vec<String> = Vec::new();
        for b in self.blades() {
            let coef = self.coefficient(b);
            let label = b.label(base);
            let text = match coef.as_constant() {
                Some(c) => crate::form::format_terms(std::iter::once((label, c))),
                None => {
                    let poly = coef.display(base);
                    if label == "1" {
                        format!("({poly})")
                    } else {
                        format!("({poly}) {label}")
                    }
                }
            };
            parts.push(text);
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(0))
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyForm[n={}]({})", self.n, self.display(0))
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;
    fn add(self, rhs: &PolyForm) -> PolyForm {
        let mut out = self.clone();
        out.add_scaled(rhs, Scalar::ONE);
        out
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;
    fn sub(self, rhs: &PolyForm) -> PolyForm {
        let mut out = self.clone();
        out.add_scaled(rhs, -Scalar::ONE);
        out
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.scale(-Scalar::ONE)
    }
}

/// x^e·e_I for every blade of ℝⁿ and every monomial of degree ≤ `max_degree`.
pub fn blade_monomial_family(n: usize, max_degree: usize) -> Vec<PolyForm> {
    let monos = crate::poly::monomials_up_to(n, max_degree);
    Blade::all(n)
        .flat_map(|b| monos.iter().map(move |e| PolyForm::term(n, b, *e, Scalar::ONE)))
        .collect()
}

/// Human-readable label of a single monomial term, for counterexamples.
pub fn term_label(blade: Blade, e: &Exponents, base: usize) -> String {
    let m = monomial_label(e, base);
    match (m.as_str(), blade.0) {
        ("1", _) => blade.label(base),
        (_, 0) => m,
        _ => format!("{m} {}", blade.label(base)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> PolyScalar {
        PolyScalar::var(i)
    }

    fn pf(n: usize, axes: &[usize], p: &PolyScalar) -> PolyForm {
        let (b, odd) = Blade::from_axes(axes).unwrap();
        PolyForm::from_poly(n, b, p).scale(Scalar::sign(odd))
    }

    #[test]
    fn d_examples() {
        let n = 7;
        assert_eq!(pf(n, &[], &x(1)).d(), pf(n, &[1], &PolyScalar::one()));
        assert_eq!(pf(n, &[2], &x(1)).d(), pf(n, &[1, 2], &PolyScalar::one()));
        let f = pf(n, &[3], &(&x(1) * &x(2)));
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn codiff_examples() {
        let n = 7;
        assert_eq!(pf(n, &[1], &x(1)).codiff(), pf(n, &[], &PolyScalar::one()).scale(-Scalar::ONE));
        assert!(pf(n, &[1, 2], &PolyScalar::one()).codiff().is_zero());
        let f = pf(n, &[1, 2, 3], &(&x(1) * &x(2)));
        assert!(f.codiff().codiff().is_zero());
    }

    #[test]
    fn codiff_matches_star_formula() {
        for n in [5, 6, 7, 8] {
            for f in blade_monomial_family(n, 1).iter().step_by(7) {
                assert_eq!(f.codiff(), f.codiff_via_star(), "n={n}, {f}");
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let n = 7;
        let x1sq = &x(1) * &x(1);
        assert_eq!(pf(n, &[], &x1sq).laplacian(), pf(n, &[], &PolyScalar::constant(Scalar::int(-2))));
        assert!(pf(n, &[], &(&x(1) * &x(2))).laplacian().is_zero());
        assert_eq!(pf(n, &[2], &x1sq).laplacian(), pf(n, &[2], &PolyScalar::constant(Scalar::int(-2))));
    }

    #[test]
    fn laplacian_is_componentwise_on_family() {
        for f in blade_monomial_family(6, 2).iter().step_by(5) {
            assert_eq!(f.laplacian(), f.laplacian_componentwise());
        }
    }

    #[test]
    fn display_groups_by_blade() {
        let f = &pf(7, &[0, 1], &x(2)) - &pf(7, &[3], &PolyScalar::one());
        assert_eq!(f.display(0), "(x2) e01 - e3");
    }
}
