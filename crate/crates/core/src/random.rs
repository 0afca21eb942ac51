//! Seeded sample generators. Every randomized check draws from its own
//! ChaCha stream so adding a check never perturbs another one's samples.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::Blade;
use crate::form::ConstForm;
use crate::poly::monomials_up_to;
use crate::polyform::PolyForm;
use crate::scalar::{Rational, Scalar};

pub const DEFAULT_SEED: u64 = 7;

pub fn stream(seed: u64, stream_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// A small nonzero-biased rational p/q with |p| ≤ 5, 1 ≤ q ≤ 4.
pub fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.random_range(-5..=5);
    let q: i64 = rng.random_range(1..=4);
    Rational::new(p as i128, q as i128)
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rational(rng), rational(rng))
}

/// A real p-form on ℝⁿ where each blade is present with probability
/// `density`. Never returns zero unless Λᵖ is trivial.
pub fn form(rng: &mut ChaCha8Rng, n: usize, p: usize, density: f64) -> ConstForm {
    let blades = Blade::of_degree(n, p);
    loop {
        let mut f = ConstForm::zero(n);
        for b in &blades {
            if rng.random_bool(density) {
                f.add_term(*b, Scalar::real(rational(rng)));
            }
        }
        if !f.is_zero() || blades.is_empty() {
            return f;
        }
    }
}

pub fn complex_form(rng: &mut ChaCha8Rng, n: usize, p: usize, density: f64) -> ConstForm {
    let re = form(rng, n, p, density);
    let im = form(rng, n, p, density);
    &re + &im.scale(Scalar::I)
}

/// A real form of random mixed degrees.
pub fn mixed_form(rng: &mut ChaCha8Rng, n: usize, density: f64) -> ConstForm {
    (0..=n).map(|p| if rng.random_bool(0.5) { form(rng, n, p, density) } else { ConstForm::zero(n) }).sum()
}

/// A sparse polynomial form: `terms` random (blade, monomial) pairs with
/// monomials of degree ≤ `max_degree`.
pub fn poly_form(rng: &mut ChaCha8Rng, n: usize, terms: usize, max_degree: usize) -> PolyForm {
    let monos = monomials_up_to(n, max_degree);
    let mut f = PolyForm::zero(n);
    while f.is_zero() {
        for _ in 0..terms {
            let b = Blade(rng.random_range(0..(1u16 << n)) as u8);
            let e = monos[rng.random_range(0..monos.len())];
            f.add_term(b, e, Scalar::real(nonzero_rational(rng)));
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = form(&mut stream(7, 1), 7, 2, 0.5);
        let b = form(&mut stream(7, 1), 7, 2, 0.5);
        let c = form(&mut stream(7, 2), 7, 2, 0.5);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.is_homogeneous(2));
    }
}
