//! Basis monomials e^{i₁…i_p} of Λ*(ℝⁿ), encoded as axis bitmasks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// An axis subset of {0,…,7}. Bit `i` set means e^i is a factor; the
/// factors are always read in increasing axis order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Blade(pub u8);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn axis(i: usize) -> Blade {
        assert!(i < MAX_DIM, "axis {i} out of range");
        Blade(1 << i)
    }

    /// Builds a blade from axes in any order, returning the permutation
    /// sign needed to sort them (`None` on a repeated axis).
    pub fn from_axes(axes: &[usize]) -> Option<(Blade, bool)> {
        let mut acc = Blade::ONE;
        let mut odd = false;
        for &a in axes {
            let (b, s) = acc.wedge(Blade::axis(a))?;
            acc = b;
            odd ^= s;
        }
        Some((acc, odd))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, axis: usize) -> bool {
        self.0 & (1 << axis) != 0
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (0..MAX_DIM).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// Highest axis + 1, i.e. the smallest n that can hold this blade.
    pub fn min_dim(self) -> usize {
        MAX_DIM - self.0.leading_zeros() as usize
    }

    pub fn volume(n: usize) -> Blade {
        Blade(((1u16 << n) - 1) as u8)
    }

    pub fn complement(self, n: usize) -> Blade {
        Blade(!self.0 & Blade::volume(n).0)
    }

    /// e_I ∧ e_J = ±e_{I∪J}. Returns the product blade and whether the sign
    /// is negative, or `None` if the blades share an axis.
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        Some((Blade(self.0 | other.0), wedge_parity(self.0, other.0)))
    }

    /// Sign of ∗e_I = ±e_{Iᶜ}, the parity of the shuffle (I, Iᶜ).
    pub fn star_parity(self, n: usize) -> bool {
        wedge_parity(self.0, self.complement(n).0)
    }

    /// Interior product of e^axis into this blade: ι e^I = ±e^{I∖axis}.
    pub fn contract(self, axis: usize) -> Option<(Blade, bool)> {
        if !self.contains(axis) {
            return None;
        }
        let below = (self.0 & ((1u16 << axis) - 1) as u8).count_ones();
        Some((Blade(self.0 & !(1 << axis)), below % 2 == 1))
    }

    /// All blades of Λ^p(ℝⁿ) in increasing bitmask order.
    pub fn of_degree(n: usize, p: usize) -> Vec<Blade> {
        Blade::all(n).filter(|b| b.degree() == p).collect()
    }

    pub fn all(n: usize) -> impl Iterator<Item = Blade> {
        (0..(1u16 << n)).map(|m| Blade(m as u8))
    }

    /// Renders as `e` followed by axis labels; `base` is 0 or 1.
    pub fn label(self, base: usize) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut s = String::from("e");
        for a in self.axes() {
            s.push(char::from_digit((a + base) as u32, 10).unwrap_or('?'));
        }
        s
    }

    pub fn check_dim(self, n: usize) -> Result<()> {
        match self.min_dim() {
            m if m > n => Err(Error::AxisOutOfRange { axis: m - 1, n }),
            _ => Ok(()),
        }
    }
}

/// Parity of the number of inversions (i ∈ a, j ∈ b, i > j).
fn wedge_parity(a: u8, b: u8) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        count += ((a as u16) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(axes: &[usize]) -> Blade {
        Blade::from_axes(axes).unwrap().0
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(Blade::axis(1).wedge(Blade::axis(2)), Some((b(&[1, 2]), false)));
        assert_eq!(Blade::axis(2).wedge(Blade::axis(1)), Some((b(&[1, 2]), true)));
        assert_eq!(b(&[1, 2]).wedge(b(&[1, 3])), None);
        // e3 ∧ e012 needs three transpositions.
        assert_eq!(Blade::axis(3).wedge(b(&[0, 1, 2])), Some((b(&[0, 1, 2, 3]), true)));
    }

    #[test]
    fn from_axes_sorts_with_sign() {
        assert_eq!(Blade::from_axes(&[2, 0, 1]), Some((b(&[0, 1, 2]), false)));
        assert_eq!(Blade::from_axes(&[1, 0]), Some((b(&[0, 1]), true)));
        assert_eq!(Blade::from_axes(&[1, 1]), None);
    }

    #[test]
    fn contraction() {
        assert_eq!(b(&[0, 2]).contract(2), Some((b(&[0]), true)));
        assert_eq!(b(&[0, 2]).contract(0), Some((b(&[2]), false)));
        assert_eq!(b(&[0, 2]).contract(1), None);
    }

    #[test]
    fn labels_and_counts() {
        assert_eq!(b(&[0, 4, 6]).label(0), "e046");
        assert_eq!(b(&[0, 4, 6]).label(1), "e157");
        assert_eq!(Blade::of_degree(7, 2).len(), 21);
        assert_eq!(Blade::of_degree(8, 4).len(), 70);
        assert_eq!(Blade::volume(8), Blade(0xff));
        assert_eq!(b(&[3]).min_dim(), 4);
    }
}
