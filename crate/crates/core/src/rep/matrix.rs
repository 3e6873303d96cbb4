//! Small dense complex matrices.

use std::fmt;
use std::ops::Mul;

pub use num_complex::Complex64 as ComplexScalar;

/// `e^{2πik/n}`, computed from the reduced exponent so that equal roots are
/// bitwise equal.
pub fn root_of_unity(n: u32, k: i64) -> ComplexScalar {
    let k = k.rem_euclid(n as i64);
    ComplexScalar::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

/// All `n`-th roots of unity indexed by exponent.
pub fn roots_of_unity(n: u32) -> Vec<ComplexScalar> {
    (0..n as i64).map(|k| root_of_unity(n, k)).collect()
}

/// A square complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<ComplexScalar>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ComplexScalar::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ComplexScalar::new(1.0, 0.0);
        }
        m
    }

    pub fn scalar(z: ComplexScalar) -> Self {
        Self {
            n: 1,
            data: vec![z],
        }
    }

    pub fn diagonal(d: &[ComplexScalar]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m.data[i * d.len() + i] = z;
        }
        m
    }

    /// Panics unless the rows form a square.
    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: ComplexScalar) {
        self.data[i * self.n + j] = z;
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.n == other.n && self.max_diff(other) <= tol
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            write!(f, " ")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
