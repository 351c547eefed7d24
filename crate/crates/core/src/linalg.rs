//! Dense matrices and vectors over an exact scalar.
//!
//! Everything here is generic over [`Scalar`]; the crate root fixes the two
//! instantiations actually used by the group code (`i64` lattices and
//! `Ratio<i64>` rational spaces). Ranks are tiny (at most 8), so storage is a
//! flat row-major `Vec`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exact ring scalar used by the linear algebra layer.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Signed
{
}

impl<T> Scalar for T where
    T: Clone
        + fmt::Debug
        + PartialEq
        + PartialOrd
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Signed
{
}

/// A scalar with exact division.
pub trait Field: Scalar + std::ops::Div<Output = Self> {}

impl<T: Clone + Integer + Signed + fmt::Debug> Field for Ratio<T> where Ratio<T>: Scalar {}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<T: Scalar>(c: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn neg<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Lift an integer vector into the rational space.
pub fn to_rational(v: &[i64]) -> Vec<Ratio<i64>> {
    v.iter().map(|&x| Ratio::from_integer(x)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `v^T M` for a row vector `v`.
    pub fn apply_left(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(T::zero(), |acc, i| {
                    acc + v[i].clone() * self[(i, j)].clone()
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: sub(&self.data, &other.data),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Smallest `n >= 1` with `M^n = I`, if it is at most `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut p = self.clone();
        for n in 1..=limit {
            if p.is_identity() {
                return Some(n);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn pow(&self, mut n: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = T::one() / m[(r, c)].clone();
        for j in 0..m.cols {
            m[(r, j)] = m[(r, j)].clone() * inv.clone();
        }
        for i in 0..m.rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    row_reduce(&mut m.clone()).len()
}

/// Solution set `{x : A x = b}` as a particular solution plus a nullspace basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<T> {
    pub particular: Vec<T>,
    pub directions: Vec<Vec<T>>,
}

/// Solve `A x = b` exactly. Free variables of the particular solution are zero.
pub fn solve<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<AffineSolution<T>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![T::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); n];
            v[f] = T::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[(r, f)].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution {
        particular,
        directions,
    })
}

pub fn nullspace<T: Field>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let zero = vec![T::zero(); a.rows];
    solve(a, &zero).map(|s| s.directions).unwrap_or_default()
}

/// Exact inverse of a square matrix over a field.
pub fn inverse<T: Field>(a: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = T::one();
    }
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = aug[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Inverse of a unimodular integer matrix, computed over the rationals.
pub fn integer_inverse(a: &Matrix<i64>) -> Option<Matrix<i64>> {
    let inv = inverse(&a.map(|&x| Ratio::from_integer(x)))?;
    let ok = inv.data.iter().all(Ratio::is_integer);
    ok.then(|| inv.map(|x| x.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn solve_underdetermined_system() {
        let a = Matrix::from_rows(&[vec![q(1, 1), q(-1, 1), q(0, 1)]]);
        let s = solve(&a, &[q(1, 2)]).unwrap();
        assert_eq!(a.apply(&s.particular), vec![q(1, 2)]);
        assert_eq!(s.directions.len(), 2);
        for d in &s.directions {
            assert!(is_zero(&a.apply(d)));
        }
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let a = Matrix::from_rows(&[vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]]);
        assert!(solve(&a, &[q(1, 1), q(3, 1)]).is_none());
    }

    #[test]
    fn integer_inverse_roundtrip() {
        let a = Matrix::from_rows(&[vec![2i64, 1], vec![1, 1]]);
        let inv = integer_inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = Matrix::from_rows(&[vec![2i64, 0], vec![0, 1]]);
        assert!(integer_inverse(&b).is_none());
    }

    #[test]
    fn order_of_rotation() {
        let r = Matrix::from_rows(&[vec![0i64, -1], vec![1, -1]]);
        assert_eq!(r.order(10), Some(3));
        assert!(r.pow(3).is_identity());
    }
}
