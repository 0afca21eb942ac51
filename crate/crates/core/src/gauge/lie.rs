//! 2×2 matrices over ℚ(i) and the compact algebra su(2) inside them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mat2(pub [[Scalar; 2]; 2]);

/// Elements of the gauge algebra are anti-hermitian `Mat2`s.
pub type LieAlg = Mat2;

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[Scalar::ZERO; 2]; 2]);
    pub const IDENTITY: Mat2 = Mat2([[Scalar::ONE, Scalar::ZERO], [Scalar::ZERO, Scalar::ONE]]);

    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
        Mat2([[a, b], [c, d]])
    }

    pub fn is_zero(&self) -> bool {
        *self == Mat2::ZERO
    }

    pub fn trace(&self) -> Scalar {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, c: Scalar) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0] * c, m[0][1] * c], [m[1][0] * c, m[1][1] * c]])
    }

    pub fn conj_transpose(&self) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.conj_transpose() == -*self
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// The positive pairing −tr(ab), bilinear.
    pub fn pairing(&self, other: &Mat2) -> Scalar {
        -(*self * *other).trace()
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.0[i][j]
    }
}

/// g₁ = [[i,0],[0,−i]], g₂ = [[0,1],[−1,0]], g₃ = [[0,i],[i,0]], with
/// [g₁,g₂] = 2g₃ and cyclically.
pub fn su2_basis() -> [Mat2; 3] {
    let (o, z, i) = (Scalar::ONE, Scalar::ZERO, Scalar::I);
    [Mat2::new(i, z, z, -i), Mat2::new(z, o, -o, z), Mat2::new(z, i, i, z)]
}

/// Σ cₖ gₖ.
pub fn lie_element(coords: [Scalar; 3]) -> Mat2 {
    su2_basis().iter().zip(coords).fold(Mat2::ZERO, |acc, (g, c)| acc + g.scale(c))
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-Scalar::ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[Scalar::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Mul<Rational> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Rational) -> Mat2 {
        self.scale(Scalar::real(rhs))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
