//! Small dense square matrices over exact or floating scalars.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{gauss, to_f64, Gaussian, Rational};
use crate::poly::Coeff;

pub trait Scalar: Coeff {
    /// Size used to choose pivots; exact types only need nonzero-ness.
    fn magnitude(&self) -> f64;
}

impl Scalar for Gaussian {
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Rational {
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Matrix<Gaussian>;
pub type ComplexMatrix = Matrix<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix must be square"));
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Matrix { n, data }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Matrix { n, data: vec![T::zero(); n * n] };
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = data[i * n + j].clone() + a.clone() * other.data[k * n + j].clone();
                }
            }
        }
        Matrix { n, data }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let n = self.n;
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = self.data[j * n + i].clone();
            }
        }
        m
    }

    /// Gauss-Jordan inverse with largest-magnitude pivoting.
    pub fn inverse(&self) -> Result<Matrix<T>> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    a.get(i, col)
                        .magnitude()
                        .partial_cmp(&a.get(j, col).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            if a.get(pivot, col).is_zero() || a.get(pivot, col).magnitude() == 0.0 {
                return Err(Error::domain("singular matrix"));
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j].clone() / p.clone();
                inv.data[col * n + j] = inv.data[col * n + j].clone() / p.clone();
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.data[i * n + j] = a.data[i * n + j].clone() - f.clone() * a.data[col * n + j].clone();
                    inv.data[i * n + j] = inv.data[i * n + j].clone() - f.clone() * inv.data[col * n + j].clone();
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> T {
        let n = self.n;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| {
                a.get(i, col)
                    .magnitude()
                    .partial_cmp(&a.get(j, col).magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            let pivot = pivot.unwrap();
            if a.get(pivot, col).is_zero() {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = det * p.clone();
            for i in col + 1..n {
                let f = a.get(i, col).clone() / p.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    a.data[i * n + j] = a.data[i * n + j].clone() - f.clone() * a.data[col * n + j].clone();
                }
            }
        }
        det
    }
}

impl ExactMatrix {
    pub fn from_rational_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(gauss).collect()).collect())
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|z| Complex64::new(to_f64(&z.re), to_f64(&z.im))).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut m = self.transpose();
        m.data.iter_mut().for_each(|z| *z = z.conj());
        m
    }

    /// Hilbert-Schmidt norm.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        Matrix { n: self.n, data: self.data.iter().map(|z| z * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Whether the determinant is exactly one.
pub fn is_unimodular(m: &ExactMatrix) -> bool {
    m.determinant().is_one()
}

/// Basis of `{x : A x = 0}` for a rational `A` given by rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let lead = a[r][c].clone();
        a[r].iter_mut().for_each(|x| *x = &*x / &lead);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); ncols];
            x[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][free].clone();
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    fn exact(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rational_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn exact_inverse_and_determinant() {
        let m = exact(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), gauss(rat(18)));
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(3));
        assert!(exact(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert!(is_unimodular(&exact(&[&[1, 1], &[0, 1]])));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let basis = nullspace(&rows, 3);
        assert_eq!(basis.len(), 2);
        for x in basis {
            assert!(rows.iter().all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<Rational>().is_zero()));
        }
    }

    #[test]
    fn complex_inverse() {
        let m = exact(&[&[0, 1], &[1, 5]]).to_complex();
        let i = m.mul(&m.inverse().unwrap());
        assert!(i.max_abs_diff(&Matrix::identity(2)) < 1e-14);
        assert!((m.determinant() - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }
}
