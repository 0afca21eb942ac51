//! Forms on a cone ℝ⁺×X or a cylinder ℝ×C(X), written as sums of
//! monomials c·rᵃ·tᵇ·[dt][dr]·g with g a base generator.

use std::collections::BTreeMap;
use std::fmt;

use super::algebra::{BaseAlgebra, BaseElement, Gen};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeMonomial {
    pub r_exp: i32,
    pub t_exp: u32,
    pub has_dt: bool,
    pub has_dr: bool,
    pub base: Gen,
}

impl ConeMonomial {
    pub fn base(g: Gen) -> ConeMonomial {
        ConeMonomial {
            r_exp: 0,
            t_exp: 0,
            has_dt: false,
            has_dr: false,
            base: g,
        }
    }

    pub fn degree(&self, alg: &BaseAlgebra) -> usize {
        self.has_dt as usize + self.has_dr as usize + alg.degree(self.base)
    }

    /// Degree of the [dt][dr] prefix.
    fn prefix(&self) -> usize {
        self.has_dt as usize + self.has_dr as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeElement {
    terms: BTreeMap<ConeMonomial, Rational>,
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

impl ConeElement {
    pub fn zero() -> ConeElement {
        ConeElement::default()
    }

    pub fn constant(c: Rational) -> ConeElement {
        ConeElement::monomial(ConeMonomial::base(0), c)
    }

    pub fn one() -> ConeElement {
        ConeElement::constant(Rational::ONE)
    }

    pub fn monomial(m: ConeMonomial, c: Rational) -> ConeElement {
        let mut e = ConeElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(g: Gen) -> ConeElement {
        ConeElement::monomial(ConeMonomial::base(g), Rational::ONE)
    }

    pub fn r_power(k: i32) -> ConeElement {
        ConeElement::monomial(
            ConeMonomial {
                r_exp: k,
                ..ConeMonomial::base(0)
            },
            Rational::ONE,
        )
    }

    pub fn t_power(k: u32) -> ConeElement {
        ConeElement::monomial(
            ConeMonomial {
                t_exp: k,
                ..ConeMonomial::base(0)
            },
            Rational::ONE,
        )
    }

    pub fn dr() -> ConeElement {
        ConeElement::monomial(
            ConeMonomial {
                has_dr: true,
                ..ConeMonomial::base(0)
            },
            Rational::ONE,
        )
    }

    pub fn dt() -> ConeElement {
        ConeElement::monomial(
            ConeMonomial {
                has_dt: true,
                ..ConeMonomial::base(0)
            },
            Rational::ONE,
        )
    }

    /// Lifts a base linear combination with a fixed monomial shape.
    pub fn from_base(shape: ConeMonomial, e: &BaseElement) -> ConeElement {
        let mut out = ConeElement::zero();
        for (g, c) in e {
            out.add_term(ConeMonomial { base: *g, ..shape }, *c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<ConeMonomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: ConeMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(Rational::ZERO);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &ConeElement, c: Rational) {
        for (m, v) in &other.terms {
            self.add_term(*m, *v * c);
        }
    }

    pub fn scale(&self, c: Rational) -> ConeElement {
        let mut out = ConeElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn degree(&self, alg: &BaseAlgebra) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree(alg));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn uses_t(&self) -> bool {
        self.terms.keys().any(|m| m.has_dt || m.t_exp > 0)
    }

    /// A pure power of r with coefficient one, if that is what this is.
    pub fn as_r_power(&self) -> Option<i32> {
        let (m, c) = self.terms.iter().next()?;
        (self.terms.len() == 1 && *c == Rational::ONE && *m == ConeMonomial { r_exp: m.r_exp, ..ConeMonomial::base(0) })
            .then_some(m.r_exp)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::ZERO),
            1 => self.terms.get(&ConeMonomial::base(0)).copied(),
            _ => None,
        }
    }

    pub fn display(&self, alg: &BaseAlgebra) -> String {
        let labels = self.terms.iter().map(|(m, c)| (monomial_label(m, alg), Scalar::real(*c)));
        crate::form::format_terms(labels)
    }

    pub fn displayed<'a>(&'a self, alg: &'a BaseAlgebra) -> Displayed<'a> {
        Displayed { e: self, alg }
    }
}

pub struct Displayed<'a> {
    e: &'a ConeElement,
    alg: &'a BaseAlgebra,
}

impl fmt::Display for Displayed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.e.display(self.alg))
    }
}

fn monomial_label(m: &ConeMonomial, alg: &BaseAlgebra) -> String {
    let mut scalars = Vec::new();
    match m.r_exp {
        0 => {}
        1 => scalars.push("r".to_string()),
        k => scalars.push(format!("r^{k}")),
    }
    match m.t_exp {
        0 => {}
        1 => scalars.push("t".to_string()),
        k => scalars.push(format!("t^{k}")),
    }
    let mut forms = Vec::new();
    if m.has_dt {
        forms.push("dt".to_string());
    }
    if m.has_dr {
        forms.push("dr".to_string());
    }
    if m.base != 0 {
        forms.push(alg.name(m.base).to_string());
    }
    let mut out = scalars.join(" ");
    if !forms.is_empty() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&forms.join("∧"));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

fn wedge_monomials(alg: &BaseAlgebra, x: &ConeMonomial, y: &ConeMonomial) -> ConeElement {
    if (x.has_dt && y.has_dt) || (x.has_dr && y.has_dr) {
        return ConeElement::zero();
    }
    let gx = alg.degree(x.base);
    let mut odd = false;
    // Move y's dt left past x's dr and base part, then y's dr past x's base.
    if y.has_dt {
        odd ^= (x.has_dr as usize + gx) % 2 == 1;
    }
    if y.has_dr {
        odd ^= gx % 2 == 1;
    }
    let shape = ConeMonomial {
        r_exp: x.r_exp + y.r_exp,
        t_exp: x.t_exp + y.t_exp,
        has_dt: x.has_dt || y.has_dt,
        has_dr: x.has_dr || y.has_dr,
        base: 0,
    };
    ConeElement::from_base(shape, &alg.mul_gens(x.base, y.base)).scale(sign(odd))
}

pub fn wedge(alg: &BaseAlgebra, a: &ConeElement, b: &ConeElement) -> ConeElement {
    let mut out = ConeElement::zero();
    for (x, u) in &a.terms {
        for (y, v) in &b.terms {
            out.add_scaled(&wedge_monomials(alg, x, y), *u * *v);
        }
    }
    out
}

/// d(rᵃtᵇ D g) = a rᵃ⁻¹ dr∧(tᵇ D g) + b tᵇ⁻¹ dt∧(rᵃ D g) + (−1)^{|D|} rᵃtᵇ D dg.
pub fn d(alg: &BaseAlgebra, a: &ConeElement) -> ConeElement {
    let mut out = ConeElement::zero();
    for (m, c) in &a.terms {
        if m.r_exp != 0 {
            let rest = ConeElement::monomial(ConeMonomial { r_exp: m.r_exp - 1, ..*m }, *c * Rational::from_int(m.r_exp as i128));
            out.add_scaled(&wedge(alg, &ConeElement::dr(), &rest), Rational::ONE);
        }
        if m.t_exp != 0 {
            let rest = ConeElement::monomial(ConeMonomial { t_exp: m.t_exp - 1, ..*m }, *c * Rational::from_int(m.t_exp as i128));
            out.add_scaled(&wedge(alg, &ConeElement::dt(), &rest), Rational::ONE);
        }
        let dg = ConeElement::from_base(ConeMonomial { base: 0, ..*m }, &alg.d_gen(m.base));
        out.add_scaled(&dg, *c * sign(m.prefix() % 2 == 1));
    }
    out
}

/// Star of dr² + r²g_X with orientation dr∧vol_X, for p = deg g:
/// ∗(rᵃ g) = (−1)ᵖ r^{a+b−2p} dr∧∗g and ∗(rᵃ dr∧g) = r^{a+b−2p} ∗g.
pub fn cone_star(alg: &BaseAlgebra, a: &ConeElement) -> Result<ConeElement> {
    let b = alg.base_dim as i32;
    let mut out = ConeElement::zero();
    for (m, c) in &a.terms {
        if m.has_dt {
            return Err(Error::Invalid("cone star applied to a form containing dt".into()));
        }
        let p = alg.degree(m.base) as i32;
        let shape = ConeMonomial {
            r_exp: m.r_exp + b - 2 * p,
            has_dr: !m.has_dr,
            base: 0,
            ..*m
        };
        let s = alg.star_gen(m.base)?;
        let odd = !m.has_dr && p % 2 == 1;
        out.add_scaled(&ConeElement::from_base(shape, s), *c * sign(odd));
    }
    Ok(out)
}

/// Star of dt² + g_C with orientation dt∧vol_C:
/// ∗β = (−1)^q dt∧∗_C β and ∗(dt∧β) = ∗_C β for β of degree q without dt.
pub fn cylinder_star(alg: &BaseAlgebra, a: &ConeElement) -> Result<ConeElement> {
    let mut out = ConeElement::zero();
    for (m, c) in &a.terms {
        let inner = ConeElement::monomial(ConeMonomial { has_dt: false, ..*m }, *c);
        let s = cone_star(alg, &inner)?;
        if m.has_dt {
            out.add_scaled(&s, Rational::ONE);
        } else {
            let q = m.degree(alg);
            out.add_scaled(&wedge(alg, &ConeElement::dt(), &s), sign(q % 2 == 1));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A 2-dimensional flat base: x, y, vol = x∧y.
    fn plane() -> BaseAlgebra {
        let mut a = BaseAlgebra::new(2, &[("x", 1), ("y", 1), ("vol", 2)]).unwrap();
        a.set_product(1, 2, BaseAlgebra::gen(3)).unwrap();
        a.set_star(0, BaseAlgebra::gen(3)).unwrap();
        a.set_star(1, BaseAlgebra::gen(2)).unwrap();
        a.set_star(2, BaseElement::from([(1, -Rational::ONE)])).unwrap();
        a.set_star(3, BaseAlgebra::unit()).unwrap();
        a.set_d(1, BaseAlgebra::gen(3)).unwrap();
        a
    }

    #[test]
    fn koszul_signs() {
        let a = plane();
        let x = ConeElement::generator(1);
        let dr = ConeElement::dr();
        assert_eq!(wedge(&a, &x, &dr), wedge(&a, &dr, &x).scale(-Rational::ONE));
        let dt = ConeElement::dt();
        let dtdr = wedge(&a, &dt, &dr);
        assert_eq!(wedge(&a, &dr, &dt), dtdr.scale(-Rational::ONE));
        assert!(wedge(&a, &dr, &dr).is_zero());
    }

    #[test]
    fn d_squared_and_leibniz() {
        let a = plane();
        let f = wedge(&a, &ConeElement::r_power(3), &ConeElement::generator(1));
        assert!(d(&a, &d(&a, &f)).is_zero());
        let g = wedge(&a, &ConeElement::t_power(2), &ConeElement::generator(2));
        let lhs = d(&a, &wedge(&a, &f, &g));
        let mut rhs = wedge(&a, &d(&a, &f), &g);
        rhs.add_scaled(&wedge(&a, &f, &d(&a, &g)), -Rational::ONE);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cone_star_of_one_is_volume() {
        let a = plane();
        let s = cone_star(&a, &ConeElement::one()).unwrap();
        let expected = wedge(&a, &wedge(&a, &ConeElement::r_power(2), &ConeElement::dr()), &ConeElement::generator(3));
        assert_eq!(s, expected);
    }

    #[test]
    fn double_star_signs() {
        let a = plane();
        for g in 0..a.len() {
            for prefix in [ConeElement::one(), ConeElement::dr(), ConeElement::dt(), wedge(&a, &ConeElement::dt(), &ConeElement::dr())] {
                let e = wedge(&a, &prefix, &ConeElement::generator(g));
                let p = e.degree(&a).unwrap();
                let ss = cylinder_star(&a, &cylinder_star(&a, &e).unwrap()).unwrap();
                assert_eq!(ss, e.scale(sign(p * (4 - p) % 2 == 1)), "{}", e.display(&a));
                if !e.uses_t() {
                    let cs = cone_star(&a, &cone_star(&a, &e).unwrap()).unwrap();
                    assert_eq!(cs, e.scale(sign(p * (3 - p) % 2 == 1)));
                }
            }
        }
    }

    #[test]
    fn labels() {
        let a = plane();
        let e = wedge(&a, &wedge(&a, &ConeElement::r_power(2), &ConeElement::dr()), &ConeElement::generator(1)).scale(Rational::new(1, 3));
        assert_eq!(e.display(&a), "1/3 r^2 dr∧x");
    }
}
