//! Sparse multivariate polynomials in x₀…x₇ with Gaussian-rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::MAX_DIM;
use crate::scalar::Scalar;

pub type Exponents = [u8; MAX_DIM];

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Exponents, Scalar>,
}

impl PolyScalar {
    pub fn zero() -> PolyScalar {
        PolyScalar::default()
    }

    pub fn constant(c: Scalar) -> PolyScalar {
        PolyScalar::monomial([0; MAX_DIM], c)
    }

    pub fn one() -> PolyScalar {
        PolyScalar::constant(Scalar::ONE)
    }

    pub fn var(i: usize) -> PolyScalar {
        let mut e = [0; MAX_DIM];
        e[i] = 1;
        PolyScalar::monomial(e, Scalar::ONE)
    }

    pub fn monomial(exps: Exponents, c: Scalar) -> PolyScalar {
        let mut p = PolyScalar::zero();
        p.add_term(exps, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(Scalar::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// self += c·other, in place.
    pub fn add_scaled(&mut self, other: &PolyScalar, c: Scalar) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(*e, *v * c);
        }
    }

    pub fn scale(&self, c: Scalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// The constant term, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::ZERO),
            1 => self.terms.get(&[0; MAX_DIM]).copied(),
            _ => None,
        }
    }

    pub fn derivative(&self, i: usize) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, *c * Scalar::int(e[i] as i128));
        }
        out
    }

    /// −Σ ∂²/∂xᵢ² over the first n variables.
    pub fn neg_laplacian(&self, n: usize) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for i in 0..n {
            out.add_scaled(&self.derivative(i).derivative(i), -Scalar::ONE);
        }
        out
    }

    pub fn conj(&self) -> PolyScalar {
        PolyScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    pub fn display(&self, base: usize) -> String {
        let labels = self.terms.iter().map(|(e, c)| (monomial_label(e, base), *c));
        crate::form::format_terms(labels)
    }
}

pub fn monomial_label(e: &Exponents, base: usize) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{}", i + base)),
            _ => parts.push(format!("x{}^{k}", i + base)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// All exponent vectors in n variables of total degree ≤ `max_degree`.
pub fn monomials_up_to(n: usize, max_degree: usize) -> Vec<Exponents> {
    let mut out = vec![[0u8; MAX_DIM]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &out {
            for i in 0..n {
                let mut f = *e;
                f[i] += 1;
                next.push(f);
            }
        }
        out.extend(next);
        out.sort();
        out.dedup();
    }
    out.retain(|e| e.iter().map(|&k| k as usize).sum::<usize>() <= max_degree);
    out
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out.add_scaled(rhs, Scalar::ONE);
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out.add_scaled(rhs, -Scalar::ONE);
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        self.scale(-Scalar::ONE)
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut e = *a;
                for (k, v) in e.iter_mut().enumerate() {
                    *v = v.checked_add(b[k]).expect("polynomial exponent overflow");
                }
                out.add_term(e, *x * *y);
            }
        }
        out
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(0))
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_operations() {
        let x = PolyScalar::var(0);
        let y = PolyScalar::var(1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expected);
        assert!((&s - &s).is_zero());
        assert_eq!(prod.total_degree(), 2);
    }

    #[test]
    fn derivatives_and_laplacian() {
        let x = PolyScalar::var(0);
        let x2 = &x * &x;
        assert_eq!(x2.derivative(0), x.scale(Scalar::int(2)));
        assert!(x2.derivative(1).is_zero());
        assert_eq!(x2.neg_laplacian(3), PolyScalar::constant(Scalar::int(-2)));
        let xy = &x * &PolyScalar::var(1);
        assert!(xy.neg_laplacian(3).is_zero());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(7, 2).len(), 36);
        assert_eq!(monomials_up_to(8, 2).len(), 45);
        assert_eq!(monomials_up_to(6, 0).len(), 1);
    }

    #[test]
    fn display() {
        let p = &PolyScalar::var(0) - &(&PolyScalar::var(2) * &PolyScalar::var(2)).scale(Scalar::ratio(1, 2));
        assert_eq!(p.display(1), "-1/2 x3^2 + x1");
    }
}
