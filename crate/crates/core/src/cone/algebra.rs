//! Finite presentations of base algebras: named generators with products,
//! differential, Hodge star and squared norms given by tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Index into [`BaseAlgebra::generators`]; 0 is the unit.
pub type Gen = usize;

/// A linear combination of generators.
pub type BaseElement = BTreeMap<Gen, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseAlgebra {
    pub base_dim: usize,
    generators: Vec<Generator>,
    mult: BTreeMap<(Gen, Gen), BaseElement>,
    d: BTreeMap<Gen, BaseElement>,
    star: BTreeMap<Gen, BaseElement>,
    norm_sq: BTreeMap<Gen, Rational>,
}

pub fn add_into(acc: &mut BaseElement, g: Gen, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(g).or_insert(Rational::ZERO);
    *e += c;
    if e.is_zero() {
        acc.remove(&g);
    }
}

fn scaled(e: &BaseElement, c: Rational) -> BaseElement {
    let mut out = BaseElement::new();
    for (g, v) in e {
        add_into(&mut out, *g, *v * c);
    }
    out
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::ONE
    } else {
        Rational::ONE
    }
}

impl BaseAlgebra {
    /// An algebra with the unit and the given generators and empty tables.
    pub fn new(base_dim: usize, generators: &[(&str, usize)]) -> Result<BaseAlgebra> {
        let mut gens = vec![Generator {
            name: "1".into(),
            degree: 0,
        }];
        for (name, degree) in generators {
            if *degree > base_dim {
                return Err(Error::Preset(format!("generator {name} has degree {degree} > {base_dim}")));
            }
            if gens.iter().any(|g| g.name == *name) {
                return Err(Error::Preset(format!("duplicate generator {name}")));
            }
            gens.push(Generator {
                name: name.to_string(),
                degree: *degree,
            });
        }
        Ok(BaseAlgebra {
            base_dim,
            generators: gens,
            mult: BTreeMap::new(),
            d: BTreeMap::new(),
            star: BTreeMap::new(),
            norm_sq: BTreeMap::new(),
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.generators[g].name
    }

    pub fn degree(&self, g: Gen) -> usize {
        self.generators[g].degree
    }

    fn check_degree(&self, what: &str, e: &BaseElement, degree: usize) -> Result<()> {
        for g in e.keys() {
            if self.degree(*g) != degree {
                return Err(Error::Preset(format!(
                    "{what}: expected degree {degree}, found {} of degree {}",
                    self.name(*g),
                    self.degree(*g)
                )));
            }
        }
        Ok(())
    }

    pub fn set_product(&mut self, a: Gen, b: Gen, value: BaseElement) -> Result<()> {
        let deg = self.degree(a) + self.degree(b);
        self.check_degree(&format!("{}*{}", self.name(a), self.name(b)), &value, deg)?;
        self.mult.insert((a, b), value);
        Ok(())
    }

    pub fn set_d(&mut self, g: Gen, value: BaseElement) -> Result<()> {
        self.check_degree(&format!("d({})", self.name(g)), &value, self.degree(g) + 1)?;
        self.d.insert(g, value);
        Ok(())
    }

    pub fn set_star(&mut self, g: Gen, value: BaseElement) -> Result<()> {
        let deg = self.base_dim - self.degree(g);
        self.check_degree(&format!("star({})", self.name(g)), &value, deg)?;
        self.star.insert(g, value);
        Ok(())
    }

    pub fn set_norm_sq(&mut self, g: Gen, value: Rational) {
        self.norm_sq.insert(g, value);
    }

    /// Product of two generators. Unspecified products fall back to the
    /// graded-commuted entry, then to zero.
    pub fn mul_gens(&self, a: Gen, b: Gen) -> BaseElement {
        if a == 0 {
            return BaseElement::from([(b, Rational::ONE)]);
        }
        if b == 0 {
            return BaseElement::from([(a, Rational::ONE)]);
        }
        if let Some(v) = self.mult.get(&(a, b)) {
            return v.clone();
        }
        if let Some(v) = self.mult.get(&(b, a)) {
            return scaled(v, sign(self.degree(a) * self.degree(b) % 2 == 1));
        }
        BaseElement::new()
    }

    pub fn mul(&self, x: &BaseElement, y: &BaseElement) -> BaseElement {
        let mut out = BaseElement::new();
        for (a, u) in x {
            for (b, v) in y {
                for (g, w) in self.mul_gens(*a, *b) {
                    add_into(&mut out, g, *u * *v * w);
                }
            }
        }
        out
    }

    pub fn d_gen(&self, g: Gen) -> BaseElement {
        self.d.get(&g).cloned().unwrap_or_default()
    }

    pub fn d(&self, x: &BaseElement) -> BaseElement {
        let mut out = BaseElement::new();
        for (g, c) in x {
            for (h, v) in self.d_gen(*g) {
                add_into(&mut out, h, *c * v);
            }
        }
        out
    }

    pub fn star_gen(&self, g: Gen) -> Result<&BaseElement> {
        self.star.get(&g).ok_or_else(|| Error::Unknown {
            kind: "star table entry",
            name: self.name(g).to_string(),
        })
    }

    pub fn star(&self, x: &BaseElement) -> Result<BaseElement> {
        let mut out = BaseElement::new();
        for (g, c) in x {
            for (h, v) in self.star_gen(*g)? {
                add_into(&mut out, *h, *c * *v);
            }
        }
        Ok(out)
    }

    pub fn norm_sq(&self, g: Gen) -> Result<Rational> {
        self.norm_sq.get(&g).copied().ok_or_else(|| Error::Unknown {
            kind: "norm table entry",
            name: self.name(g).to_string(),
        })
    }

    pub fn unit() -> BaseElement {
        BaseElement::from([(0, Rational::ONE)])
    }

    pub fn gen(g: Gen) -> BaseElement {
        BaseElement::from([(g, Rational::ONE)])
    }

    pub fn display(&self, e: &BaseElement) -> String {
        let labels = e.iter().map(|(g, c)| (self.name(*g).to_string(), crate::scalar::Scalar::real(*c)));
        crate::form::format_terms(labels)
    }

    /// Every failure of the table axioms, as (check, message) pairs.
    pub fn axiom_failures(&self) -> BTreeMap<&'static str, Vec<String>> {
        let mut out: BTreeMap<&'static str, Vec<String>> = BTreeMap::new();
        let gens: Vec<Gen> = (0..self.len()).collect();
        let name = |e: &BaseElement| self.display(e);
        for &a in &gens {
            let dd = self.d(&self.d_gen(a));
            if !dd.is_empty() {
                out.entry("d-squared").or_default().push(format!("d(d({})) = {}", self.name(a), name(&dd)));
            }
        }
        for &a in &gens {
            for &b in &gens {
                let ab = self.mul_gens(a, b);
                let ba = self.mul_gens(b, a);
                let odd = self.degree(a) * self.degree(b) % 2 == 1;
                if ab != scaled(&ba, sign(odd)) {
                    out.entry("graded-commutative").or_default().push(format!(
                        "{0}*{1} = {2} but {1}*{0} = {3}",
                        self.name(a),
                        self.name(b),
                        name(&ab),
                        name(&ba)
                    ));
                }
                let lhs = self.d(&ab);
                let mut rhs = self.mul(&self.d_gen(a), &BaseAlgebra::gen(b));
                for (g, c) in self.mul(&BaseAlgebra::gen(a), &self.d_gen(b)) {
                    add_into(&mut rhs, g, c * sign(self.degree(a) % 2 == 1));
                }
                if lhs != rhs {
                    out.entry("leibniz").or_default().push(format!(
                        "d({}*{}) = {} but Leibniz gives {}",
                        self.name(a),
                        self.name(b),
                        name(&lhs),
                        name(&rhs)
                    ));
                }
                for &c in &gens {
                    let left = self.mul(&ab, &BaseAlgebra::gen(c));
                    let right = self.mul(&BaseAlgebra::gen(a), &self.mul_gens(b, c));
                    if left != right {
                        out.entry("associative").or_default().push(format!(
                            "({0}*{1})*{2} = {3} but {0}*({1}*{2}) = {4}",
                            self.name(a),
                            self.name(b),
                            self.name(c),
                            name(&left),
                            name(&right)
                        ));
                    }
                }
            }
        }
        let vol = self.star.get(&0).cloned();
        if vol.as_ref().is_none_or(|v| v.is_empty()) {
            out.entry("star-unit").or_default().push("star(1) missing or zero".into());
        }
        for &a in &gens {
            let p = self.degree(a);
            let Ok(s) = self.star_gen(a) else {
                out.entry("double-star").or_default().push(format!("star({}) missing", self.name(a)));
                continue;
            };
            let ss = self.star(s);
            let expected = scaled(&BaseAlgebra::gen(a), sign(p * (self.base_dim - p) % 2 == 1));
            match ss {
                Ok(ss) if ss == expected => {}
                Ok(ss) => out.entry("double-star").or_default().push(format!(
                    "star(star({})) = {}, expected {}",
                    self.name(a),
                    name(&ss),
                    name(&expected)
                )),
                Err(e) => out.entry("double-star").or_default().push(e.to_string()),
            }
        }
        // g∧∗h = δ_gh |g|² ∗1 on equal-degree generators.
        if let Some(vol) = vol {
            for &a in &gens {
                for &b in &gens {
                    if self.degree(a) != self.degree(b) {
                        continue;
                    }
                    let Ok(sb) = self.star_gen(b) else { continue };
                    let pairing = self.mul(&BaseAlgebra::gen(a), sb);
                    let expected = if a == b {
                        match self.norm_sq(a) {
                            Ok(n) => scaled(&vol, n),
                            Err(e) => {
                                out.entry("metric").or_default().push(e.to_string());
                                continue;
                            }
                        }
                    } else {
                        BaseElement::new()
                    };
                    if pairing != expected {
                        out.entry("metric").or_default().push(format!(
                            "{}∧star({}) = {}, expected {}",
                            self.name(a),
                            self.name(b),
                            name(&pairing),
                            name(&expected)
                        ));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::from_int(n)
    }

    fn circle() -> BaseAlgebra {
        let mut a = BaseAlgebra::new(1, &[("theta", 1)]).unwrap();
        a.set_star(0, BaseAlgebra::gen(1)).unwrap();
        a.set_star(1, BaseAlgebra::unit()).unwrap();
        a.set_norm_sq(0, r(1));
        a.set_norm_sq(1, r(1));
        a
    }

    #[test]
    fn circle_axioms_hold() {
        assert!(circle().axiom_failures().is_empty(), "{:?}", circle().axiom_failures());
    }

    #[test]
    fn graded_commuted_products() {
        let mut a = BaseAlgebra::new(2, &[("x", 1), ("y", 1), ("xy", 2)]).unwrap();
        a.set_product(1, 2, BaseAlgebra::gen(3)).unwrap();
        assert_eq!(a.mul_gens(2, 1), BaseElement::from([(3, r(-1))]));
        assert!(a.mul_gens(1, 1).is_empty());
        assert!(a.set_product(1, 1, BaseAlgebra::gen(1)).is_err());
    }

    #[test]
    fn bad_d_table_is_reported() {
        let mut a = circle();
        a.set_d(0, BaseAlgebra::gen(1)).unwrap();
        let f = a.axiom_failures();
        assert!(f.contains_key("leibniz"));
    }
}
