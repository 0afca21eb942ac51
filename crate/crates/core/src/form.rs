//! Constant-coefficient forms on ℝⁿ with the Euclidean metric and the
//! orientation e⁰∧…∧e^{n−1}.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::{Blade, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstForm {
    n: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl ConstForm {
    pub fn zero(n: usize) -> ConstForm {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        ConstForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> ConstForm {
        ConstForm::monomial(n, Blade::ONE, Scalar::ONE)
    }

    pub fn volume(n: usize) -> ConstForm {
        ConstForm::monomial(n, Blade::volume(n), Scalar::ONE)
    }

    pub fn basis(n: usize, blade: Blade) -> ConstForm {
        ConstForm::monomial(n, blade, Scalar::ONE)
    }

    /// e^{axes} in the given order, sign included.
    pub fn from_axes(n: usize, axes: &[usize]) -> ConstForm {
        match Blade::from_axes(axes) {
            Some((b, odd)) => ConstForm::monomial(n, b, Scalar::sign(odd)),
            None => ConstForm::zero(n),
        }
    }

    pub fn monomial(n: usize, blade: Blade, coef: Scalar) -> ConstForm {
        let mut f = ConstForm::zero(n);
        assert!(blade.min_dim() <= n, "blade {blade:?} outside ℝ^{n}");
        f.add_term(blade, coef);
        f
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Blade, Scalar)>) -> ConstForm {
        let mut f = ConstForm::zero(n);
        for (b, c) in terms {
            assert!(b.min_dim() <= n, "blade {b:?} outside ℝ^{n}");
            f.add_term(b, c);
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Blade, Scalar> {
        &self.terms
    }

    pub fn coef(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn add_term(&mut self, blade: Blade, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert(Scalar::ZERO);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    /// The pure degree, if there is one. Zero has every degree; `None` is
    /// returned for it as well as for mixed forms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.terms.keys().all(|b| b.degree() == p)
    }

    pub fn grade(&self, p: usize) -> ConstForm {
        ConstForm {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == p)
                .map(|(b, c)| (*b, *c))
                .collect(),
        }
    }

    pub fn grade_components(&self) -> Vec<ConstForm> {
        (0..=self.n).map(|p| self.grade(p)).collect()
    }

    pub fn scale(&self, c: Scalar) -> ConstForm {
        if c.is_zero() {
            return ConstForm::zero(self.n);
        }
        ConstForm {
            n: self.n,
            terms: self.terms.iter().map(|(b, v)| (*b, *v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: Rational) -> ConstForm {
        self.scale(Scalar::real(c))
    }

    pub fn conj(&self) -> ConstForm {
        ConstForm {
            n: self.n,
            terms: self.terms.iter().map(|(b, v)| (*b, v.conj())).collect(),
        }
    }

    pub fn check_same_dim(&self, other: &ConstForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_wedge(&self, other: &ConstForm) -> Result<ConstForm> {
        self.check_same_dim(other)?;
        Ok(self.wedge(other))
    }

    /// Exterior product. Panics on mismatched dimensions; use `try_wedge`
    /// for untrusted input.
    pub fn wedge(&self, other: &ConstForm) -> ConstForm {
        assert_eq!(self.n, other.n, "wedge of forms on different ℝⁿ");
        let mut out = ConstForm::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((blade, odd)) = a.wedge(*b) {
                    let c = *x * *y;
                    out.add_term(blade, if odd { -c } else { c });
                }
            }
        }
        out
    }

    /// Euclidean Hodge star, ∗e_I = sign(I, Iᶜ)·e_{Iᶜ}. Linear over ℚ(i).
    pub fn star(&self) -> ConstForm {
        let mut out = ConstForm::zero(self.n);
        for (b, c) in &self.terms {
            let odd = b.star_parity(self.n);
            out.add_term(b.complement(self.n), if odd { -*c } else { *c });
        }
        out
    }

    /// Bilinear pairing: Σ a_I b_I. Equal to the metric product on real forms.
    pub fn inner(&self, other: &ConstForm) -> Scalar {
        assert_eq!(self.n, other.n, "inner product of forms on different ℝⁿ");
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(b, x)| large.terms.get(b).map(|y| *x * *y))
            .sum()
    }

    pub fn try_inner(&self, other: &ConstForm) -> Result<Scalar> {
        self.check_same_dim(other)?;
        Ok(self.inner(other))
    }

    /// Hermitian pairing Σ a_I·conj(b_I).
    pub fn hermitian(&self, other: &ConstForm) -> Scalar {
        self.inner(&other.conj())
    }

    /// |a|² = Σ |a_I|², real and non-negative.
    pub fn norm_sq(&self) -> Rational {
        self.terms.values().map(Scalar::norm_sq).sum()
    }

    /// The coefficient of the volume blade.
    pub fn top_coefficient(&self) -> Scalar {
        self.coef(Blade::volume(self.n))
    }

    pub fn display(&self, base: usize) -> String {
        format_terms(self.terms.iter().map(|(b, c)| (b.label(base), *c)))
    }
}

/// Shared pretty printer: `e12 + 2/3 e47 - (1+i) e5`.
pub(crate) fn format_terms(terms: impl Iterator<Item = (String, Scalar)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let negative = c.is_real() && c.re.is_negative();
        let mag = if negative { -c } else { c };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let unit = mag == Scalar::ONE;
        if label == "1" {
            out.push_str(&mag.to_string());
        } else if unit {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{mag} {label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for ConstForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(0))
    }
}

impl fmt::Debug for ConstForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstForm[n={}]({})", self.n, self.display(0))
    }
}

impl Add for &ConstForm {
    type Output = ConstForm;
    fn add(self, rhs: &ConstForm) -> ConstForm {
        assert_eq!(self.n, rhs.n, "sum of forms on different ℝⁿ");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, *c);
        }
        out
    }
}

impl Sub for &ConstForm {
    type Output = ConstForm;
    fn sub(self, rhs: &ConstForm) -> ConstForm {
        assert_eq!(self.n, rhs.n, "difference of forms on different ℝⁿ");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -*c);
        }
        out
    }
}

impl Neg for &ConstForm {
    type Output = ConstForm;
    fn neg(self) -> ConstForm {
        self.scale(-Scalar::ONE)
    }
}

impl Add for ConstForm {
    type Output = ConstForm;
    fn add(self, rhs: ConstForm) -> ConstForm {
        &self + &rhs
    }
}

impl Sub for ConstForm {
    type Output = ConstForm;
    fn sub(self, rhs: ConstForm) -> ConstForm {
        &self - &rhs
    }
}

impl Neg for ConstForm {
    type Output = ConstForm;
    fn neg(self) -> ConstForm {
        -&self
    }
}

impl Mul<&ConstForm> for Scalar {
    type Output = ConstForm;
    fn mul(self, rhs: &ConstForm) -> ConstForm {
        rhs.scale(self)
    }
}

impl Mul<ConstForm> for Scalar {
    type Output = ConstForm;
    fn mul(self, rhs: ConstForm) -> ConstForm {
        rhs.scale(self)
    }
}

impl std::iter::Sum for ConstForm {
    /// Panics on an empty iterator, which has no dimension.
    fn sum<I: Iterator<Item = ConstForm>>(mut iter: I) -> ConstForm {
        let first = iter.next().expect("sum of an empty form iterator");
        iter.fold(first, |acc, f| &acc + &f)
    }
}

/// A degree-shifting operator given on 1-forms, extended to all of Λ* by
/// the graded Leibniz rule and to functions by zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    n: usize,
    odd: bool,
    images: Vec<ConstForm>,
    target_degree: Option<usize>,
}

impl DerivationSpec {
    /// `images[i]` is the value on e^i. All nonzero images must share a
    /// degree; the parity is that of the degree shift unless overridden.
    pub fn new(n: usize, images: Vec<ConstForm>, odd: bool) -> Result<DerivationSpec> {
        if images.len() != n {
            return Err(Error::DimensionMismatch {
                left: images.len(),
                right: n,
            });
        }
        let mut target = None;
        for img in &images {
            if img.n() != n {
                return Err(Error::DimensionMismatch {
                    left: img.n(),
                    right: n,
                });
            }
            if img.is_zero() {
                continue;
            }
            let d = img.degree().ok_or(Error::NonUniformDerivation)?;
            match target {
                None => target = Some(d),
                Some(t) if t != d => return Err(Error::NonUniformDerivation),
                _ => {}
            }
        }
        Ok(DerivationSpec {
            n,
            odd,
            images,
            target_degree: target,
        })
    }

    /// C̲(α) = ∗(∗ω∧α) on 1-forms; parity of deg ω − 2.
    pub fn structure(omega: &ConstForm) -> Result<DerivationSpec> {
        let k = omega.degree().ok_or_else(|| Error::WrongDegree {
            expected: 1,
            found: "inhomogeneous".into(),
        })?;
        let n = omega.n();
        let star_omega = omega.star();
        let images = (0..n)
            .map(|i| star_omega.wedge(&ConstForm::basis(n, Blade::axis(i))).star())
            .collect();
        DerivationSpec::new(n, images, k % 2 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn images(&self) -> &[ConstForm] {
        &self.images
    }

    /// Degree shift k−1 of the 1-form images, if any image is nonzero.
    pub fn shift(&self) -> Option<isize> {
        self.target_degree.map(|t| t as isize - 1)
    }

    /// Value on a single basis blade.
    pub fn on_blade(&self, blade: Blade) -> ConstForm {
        let n = self.n;
        let axes: Vec<usize> = blade.axes().collect();
        let mut out = ConstForm::zero(n);
        for (k, &ax) in axes.iter().enumerate() {
            let before = Blade::from_axes(&axes[..k]).expect("distinct axes").0;
            let after = Blade::from_axes(&axes[k + 1..]).expect("distinct axes").0;
            let term = ConstForm::basis(n, before)
                .wedge(&self.images[ax])
                .wedge(&ConstForm::basis(n, after));
            let odd = self.odd && k % 2 == 1;
            out = &out + &term.scale(Scalar::sign(odd));
        }
        out
    }
}

pub fn derivation_extend(spec: &DerivationSpec, a: &ConstForm) -> Result<ConstForm> {
    if spec.n != a.n {
        return Err(Error::DimensionMismatch {
            left: spec.n,
            right: a.n,
        });
    }
    let mut out = ConstForm::zero(a.n);
    for (b, c) in &a.terms {
        out = &out + &spec.on_blade(*b).scale(*c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, axes: &[usize]) -> ConstForm {
        ConstForm::from_axes(n, axes)
    }

    #[test]
    fn basic_wedges() {
        assert_eq!(e(7, &[1]).wedge(&e(7, &[2])), e(7, &[1, 2]));
        assert!(e(7, &[1, 2]).wedge(&e(7, &[1, 3])).is_zero());
        assert_eq!(e(7, &[2]).wedge(&e(7, &[1])), -e(7, &[1, 2]));
    }

    #[test]
    fn star_of_one_is_volume() {
        assert_eq!(ConstForm::one(7).star(), ConstForm::volume(7));
        assert_eq!(ConstForm::volume(7).star(), ConstForm::one(7));
        assert_eq!(e(7, &[1, 2]).star().star(), e(7, &[1, 2]));
    }

    #[test]
    fn double_star_sign_every_blade() {
        for n in [6, 7, 8] {
            for b in Blade::all(n) {
                let p = b.degree();
                let f = ConstForm::basis(n, b);
                let sign = Scalar::sign((p * (n - p)) % 2 == 1);
                assert_eq!(f.star().star(), f.scale(sign), "n={n} {b:?}");
            }
        }
    }

    #[test]
    fn wedge_with_star_is_inner_times_volume() {
        let n = 6;
        for p in 0..=n {
            for a in Blade::of_degree(n, p) {
                for b in Blade::of_degree(n, p) {
                    let fa = ConstForm::basis(n, a);
                    let fb = ConstForm::basis(n, b);
                    let lhs = fa.wedge(&fb.star());
                    let rhs = ConstForm::volume(n).scale(fa.inner(&fb));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inner_examples() {
        assert_eq!(e(7, &[1, 2]).inner(&e(7, &[1, 2])), Scalar::ONE);
        assert_eq!(e(7, &[1, 2]).inner(&e(7, &[1, 3])), Scalar::ZERO);
        assert!(e(7, &[1]).try_inner(&e(6, &[1])).is_err());
        assert!(e(7, &[1]).try_wedge(&e(6, &[1])).is_err());
    }

    #[test]
    fn grades_recover_form() {
        let f = &(&ConstForm::one(5) + &e(5, &[0, 3])) + &e(5, &[1]);
        let total: ConstForm = f.grade_components().into_iter().sum();
        assert_eq!(total, f);
        assert_eq!(f.degree(), None);
        assert_eq!(e(5, &[0, 3]).degree(), Some(2));
    }

    #[test]
    fn identity_derivation_counts_degree() {
        let n = 7;
        let images = (0..n).map(|i| ConstForm::basis(n, Blade::axis(i))).collect();
        let spec = DerivationSpec::new(n, images, false).unwrap();
        assert!(derivation_extend(&spec, &ConstForm::one(n)).unwrap().is_zero());
        let a = e(n, &[1, 2]);
        assert_eq!(derivation_extend(&spec, &a).unwrap(), a.scale(Scalar::int(2)));
    }

    #[test]
    fn mixed_degree_images_rejected() {
        let n = 3;
        let images = vec![ConstForm::one(n), e(n, &[0, 1]), ConstForm::zero(n)];
        assert_eq!(
            DerivationSpec::new(n, images, false),
            Err(Error::NonUniformDerivation)
        );
    }

    #[test]
    fn display_uses_axis_base() {
        let f = &e(7, &[0, 1]) - &e(7, &[3, 6]).scale(Scalar::ratio(2, 3));
        assert_eq!(f.display(0), "e01 - 2/3 e36");
        assert_eq!(f.display(1), "e12 - 2/3 e47");
        assert_eq!(ConstForm::zero(7).display(0), "0");
    }
}
