use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::scalar::{Ring, Scalar};

/// Small dense matrix over a commutative ring, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Ring> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(r > 0 && c > 0, "empty matrix");
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Square matrix `c·I` shaped like `n × n`, with constants taken from `like`.
    pub fn scalar(n: usize, c: &E) -> Self {
        let z = c.zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn identity(n: usize, like: &E) -> Self {
        Matrix::scalar(n, &like.one_like())
    }

    pub fn diag(d: Vec<E>) -> Self {
        let n = d.len();
        let z = d[0].zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.vanishes())
    }

    /// Determinant; cofactor expansion up to 3×3, Berkowitz beyond.
    pub fn det(&self) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let g = |i, j| self.get(i, j).clone();
        match self.rows {
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            3 => {
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                    - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
            n => {
                let cp = self.char_poly();
                if n % 2 == 0 {
                    cp[0].clone()
                } else {
                    -cp[0].clone()
                }
            }
        }
    }

    /// Characteristic polynomial det(tI - A), coefficients ascending, monic of
    /// degree n. Berkowitz's algorithm: no divisions, so valid over any ring.
    pub fn char_poly(&self) -> Vec<E> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let one = self.data[0].one_like();
        let zero = one.zero_like();
        // descending coefficients of the char poly of the leading r×r block
        let mut v: Vec<E> = vec![one.clone(), -self.get(0, 0).clone()];
        for r in 1..n {
            // A_r = leading r×r block, R = row r (first r entries), C = column r, a = A[r][r]
            let col: Vec<E> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let rowv: Vec<E> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let a = self.get(r, r).clone();
            // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
            let mut t = Vec::with_capacity(r + 2);
            t.push(one.clone());
            t.push(-a);
            let mut w = col;
            for _ in 0..r {
                let rc = rowv.iter().zip(&w).fold(zero.clone(), |acc, (x, y)| acc + x.clone() * y.clone());
                t.push(-rc);
                w = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, j| acc + self.get(i, j).clone() * w[j].clone()))
                    .collect();
            }
            let mut nv = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut s = zero.clone();
                for j in 0..=i.min(r) {
                    s = s + t[i - j].clone() * v[j].clone();
                }
                nv.push(s);
            }
            v = nv;
        }
        v.reverse();
        v
    }

    pub fn trace(&self) -> E {
        (1..self.rows).fold(self.get(0, 0).clone(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn minor(&self, r: usize, c: usize) -> Self {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            self.get(if i < r { i } else { i + 1 }, if j < c { j } else { j + 1 }).clone()
        })
    }

    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1, self.get(0, 0));
        }
        Matrix::from_fn(n, n, |i, j| {
            let m = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }

    /// Inverse via the adjugate; `None` when the determinant is not a unit.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inverse()?;
        Some(self.adjugate().scale(&d))
    }

    pub fn mul_vec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (1..self.cols).fold(self.get(i, 0).clone() * v[0].clone(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }
}

impl<S: Scalar> Matrix<S> {
    /// Solves `A x = b` by Gaussian elimination; `None` if A is singular.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert!(self.is_square() && b.len() == self.rows);
        let n = self.rows;
        let mut a: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.push(b[i].clone());
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let inv = S::one() / a[c][c].clone();
            for x in a[c].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in c..=n {
                        let v = a[c][k].clone();
                        a[r][k] = a[r][k].clone() - f.clone() * v;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n].clone()).collect())
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (n, m) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..m {
            let Some(p) = (rank..n).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = S::one() / a[rank][c].clone();
            for r in 0..n {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].clone() * inv.clone();
                    for k in c..m {
                        let v = a[rank][k].clone();
                        a[r][k] = a[r][k].clone() - f.clone() * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<E: Ring> Add for Matrix<E> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<E: Ring> Sub for Matrix<E> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<E: Ring> Neg for Matrix<E> {
    type Output = Self;
    fn neg(self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.into_iter().map(|a| -a).collect() }
    }
}

impl<E: Ring> Mul for &Matrix<E> {
    type Output = Matrix<E>;
    fn mul(self, rhs: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not match");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (1..self.cols).fold(self.get(i, 0).clone() * rhs.get(0, j).clone(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        })
    }
}

impl<E: Ring> Mul for Matrix<E> {
    type Output = Matrix<E>;
    fn mul(self, rhs: Matrix<E>) -> Matrix<E> {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::Fp;
    use crate::Q;
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn berkowitz_matches_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![q(2), q(-1), q(0), q(3)],
            vec![q(1), q(4), q(5), q(0)],
            vec![q(0), q(7), q(-2), q(1)],
            vec![q(3), q(1), q(1), q(1)],
        ]);
        let lap = (0..4).fold(q(0), |acc, j| {
            let t = m.get(0, j).clone() * m.minor(0, j).det();
            if j % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        });
        assert_eq!(m.det(), lap);
        let cp = m.char_poly();
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[3], -m.trace());
    }

    #[test]
    fn inverse_and_solve() {
        type F = Fp<5>;
        let m = Matrix::from_rows(vec![vec![F::new(1), F::new(2)], vec![F::new(3), F::new(4)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2, &F::new(1)));
        let x = m.solve(&[F::new(1), F::zero()]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![F::new(1), F::zero()]);
        let s = Matrix::from_rows(vec![vec![F::new(1), F::new(2)], vec![F::new(2), F::new(4)]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.rank(), 1);
    }
}
