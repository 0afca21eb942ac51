//! Small dense exact linear algebra over ℚ: RREF, kernels, characteristic
//! polynomials and rational-root factorization.

use std::fmt;

use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose column j is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn scale(&self, c: Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| *a * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].recip();
            for j in col..self.cols {
                let v = self[(row, j)];
                self[(row, j)] = v * inv;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self[(r, col)];
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self[(row, j)];
                    if !v.is_zero() {
                        let cur = self[(r, j)];
                        self[(r, j)] = cur - f * v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::ZERO; self.cols];
                v[f] = Rational::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b` exactly.
    pub fn solve(&self, b: &[Rational]) -> LinearSolution {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return LinearSolution::Inconsistent;
        }
        let mut x = vec![Rational::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)];
        }
        let kernel = self.kernel();
        LinearSolution::Solved {
            particular: minimal_support(self, b, x, &kernel),
            kernel_dim: kernel.len(),
        }
    }

    /// Characteristic polynomial det(tI − A) by Faddeev–LeVerrier,
    /// coefficients in increasing degree.
    pub fn char_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::ZERO; n + 1];
        coeffs[n] = Rational::ONE;
        let mut m = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(coeffs[n - k + 1]));
            let c = -self.mul(&m).trace() / Rational::from_int(k as i128);
            coeffs[n - k] = c;
        }
        Poly::new(coeffs)
    }
}

/// Among solutions x + Σ λ_i k_i, picks one with the fewest nonzeros by
/// trying to zero out coordinates greedily with kernel directions.
fn minimal_support(a: &Matrix, b: &[Rational], x: Vec<Rational>, kernel: &[Vec<Rational>]) -> Vec<Rational> {
    if kernel.is_empty() {
        return x;
    }
    let support = |v: &[Rational]| v.iter().filter(|c| !c.is_zero()).count();
    let mut best = x.clone();
    // Greedy: from each starting column, cancel coordinates one at a time.
    let cols = a.cols();
    for start in 0..cols {
        let mut cur = x.clone();
        let mut used = vec![false; kernel.len()];
        for off in 0..cols {
            let j = (start + off) % cols;
            if cur[j].is_zero() {
                continue;
            }
            if let Some(k) = (0..kernel.len()).find(|&k| !used[k] && !kernel[k][j].is_zero()) {
                let f = cur[j] / kernel[k][j];
                for (c, kv) in cur.iter_mut().zip(&kernel[k]) {
                    *c -= f * *kv;
                }
                used[k] = true;
            }
        }
        if support(&cur) < support(&best) {
            best = cur;
        }
    }
    debug_assert!(residual_is_zero(a, b, &best));
    best
}

fn residual_is_zero(a: &Matrix, b: &[Rational], x: &[Rational]) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).map(|j| a[(i, j)] * x[j]).sum::<Rational>() == b[i])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solved {
        particular: Vec<Rational>,
        kernel_dim: usize,
    },
    Inconsistent,
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Univariate polynomial over ℚ, coefficients in increasing degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// (t − root)^mult.
    pub fn linear_power(root: Rational, mult: usize) -> Poly {
        let mut p = Poly::new(vec![Rational::ONE]);
        let lin = Poly::new(vec![-root, Rational::ONE]);
        for _ in 0..mult {
            p = p.mul(&lin);
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, t: Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::ZERO, |acc, c| acc * t + *c)
    }

    /// Horner evaluation that reports overflow instead of panicking. At a
    /// true root the intermediates are the quotient's coefficients, so an
    /// overflow certifies a non-root for the polynomials seen here.
    pub fn checked_eval(&self, t: Rational) -> Option<Rational> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(Rational::ZERO, |acc, c| acc.checked_mul(&t)?.checked_add(c))
    }

    /// Division by (t − root), assuming it divides exactly.
    fn deflate(&self, root: Rational) -> Poly {
        let d = self.degree();
        let mut q = vec![Rational::ZERO; d];
        let mut carry = Rational::ZERO;
        for k in (0..d).rev() {
            carry = self.coeffs[k + 1] + carry * root;
            q[k] = carry;
        }
        Poly::new(q)
    }

    /// Rational roots with multiplicity (rational root theorem), plus the
    /// leftover factor with no rational roots.
    pub fn rational_factorization(&self) -> (Vec<(Rational, usize)>, Poly) {
        let mut rest = self.clone();
        let mut roots: Vec<(Rational, usize)> = Vec::new();
        while rest.degree() > 0 && rest.coeffs[0].is_zero() {
            rest = rest.deflate(Rational::ZERO);
            bump(&mut roots, Rational::ZERO);
        }
        if rest.degree() == 0 {
            return (roots, rest);
        }
        let scale = crate::scalar::lcm_denominators(rest.coeffs.iter());
        let ints: Vec<i128> = rest.coeffs.iter().map(|c| (*c * Rational::from_int(scale)).numer()).collect();
        let lead = ints[ints.len() - 1];
        let constant = ints[0];
        let mut candidates = Vec::new();
        for p in divisors(constant.unsigned_abs()) {
            for q in divisors(lead.unsigned_abs()) {
                let r = Rational::new(p as i128, q as i128);
                candidates.push(r);
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            while rest.degree() > 0 && rest.checked_eval(r).is_some_and(|v| v.is_zero()) {
                rest = rest.deflate(r);
                bump(&mut roots, r);
            }
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        (roots, rest)
    }

    /// Renders a fully split polynomial as `(t-2)^7 (t+1)^14`.
    pub fn factored_string(&self) -> String {
        let (roots, rest) = self.rational_factorization();
        let mut parts: Vec<String> = roots
            .iter()
            .map(|(r, m)| {
                let lin = if r.is_zero() {
                    "t".to_string()
                } else if r.is_negative() {
                    format!("(t+{})", -*r)
                } else {
                    format!("(t-{r})")
                };
                if *m == 1 {
                    lin
                } else {
                    format!("{lin}^{m}")
                }
            })
            .collect();
        if rest.degree() > 0 || rest.coeffs[0] != Rational::ONE {
            parts.push(format!("[{}]", rest));
        }
        parts.join(" ")
    }
}

fn bump(roots: &mut Vec<(Rational, usize)>, r: Rational) {
    match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    }
}

fn divisors(v: u128) -> Vec<u128> {
    if v == 0 {
        return vec![1];
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            if d * d != v {
                out.push(v / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn char_poly_of_small_matrix() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(0), q(3)]]);
        let p = m.char_poly();
        assert_eq!(p, Poly::linear_power(q(2), 1).mul(&Poly::linear_power(q(3), 1)));
        assert_eq!(p.factored_string(), "(t-3) (t-2)");
    }

    #[test]
    fn factorization_with_rational_roots_and_remainder() {
        let p = Poly::linear_power(Rational::new(1, 2), 2)
            .mul(&Poly::linear_power(q(-1), 3))
            .mul(&Poly::new(vec![q(1), q(0), q(1)]));
        let (roots, rest) = p.rational_factorization();
        assert_eq!(roots, vec![(Rational::new(1, 2), 2), (q(-1), 3)]);
        assert_eq!(rest, Poly::new(vec![q(1), q(0), q(1)]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(residual_is_zero(&a, &[q(0), q(0)], v));
        }
        match a.solve(&[q(3), q(6)]) {
            LinearSolution::Solved { particular, kernel_dim } => {
                assert_eq!(kernel_dim, 2);
                assert_eq!(particular.iter().filter(|c| !c.is_zero()).count(), 1);
                assert!(residual_is_zero(&a, &[q(3), q(6)], &particular));
            }
            LinearSolution::Inconsistent => panic!("solvable system"),
        }
        assert_eq!(a.solve(&[q(1), q(1)]), LinearSolution::Inconsistent);
    }
}
