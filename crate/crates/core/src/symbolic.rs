//! Square matrices with polynomial entries.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::gaussian::GaussianRational;
use crate::poly::FormalPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    dim: usize,
    entries: Vec<FormalPolynomial>,
}

impl SymbolicMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![FormalPolynomial::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, FormalPolynomial::integer(1));
        }
        m
    }

    /// Builds a constant matrix from row-major Gaussian-integer pairs `(re, im)`.
    pub fn from_complex_integers(dim: usize, rows: &[(i64, i64)]) -> Self {
        assert_eq!(rows.len(), dim * dim);
        let mut m = Self::zeros(dim);
        for (k, &(re, im)) in rows.iter().enumerate() {
            m.entries[k] = FormalPolynomial::constant(GaussianRational::from_fractions(re, 1, im, 1));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &FormalPolynomial {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: FormalPolynomial) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn scale(&self, c: &FormalPolynomial) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn scale_exact(&self, c: &GaussianRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise complex conjugation of the coefficients.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(FormalPolynomial::conj).collect(),
        }
    }

    pub fn trace(&self) -> FormalPolynomial {
        (0..self.dim).fold(FormalPolynomial::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn kron(&self, other: &SymbolicMatrix) -> Self {
        let d = self.dim * other.dim;
        let mut out = Self::zeros(d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out.set(i * other.dim + k, j * other.dim + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FormalPolynomial::is_zero)
    }

    pub fn commutator(&self, other: &SymbolicMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Evaluates a constant matrix numerically; panics if any entry carries a symbol.
    pub fn to_complex(&self) -> Vec<num_complex::Complex64> {
        self.entries
            .iter()
            .map(|p| {
                let mut z = num_complex::Complex64::new(0.0, 0.0);
                for (m, c) in p.terms() {
                    assert_eq!(*m, crate::poly::Monomial::one(), "matrix entry is not constant");
                    let (re, im) = c.to_f64_pair();
                    z += num_complex::Complex64::new(re, im);
                }
                z
            })
            .collect()
    }
}

impl<'a> Mul<&'a SymbolicMatrix> for &'a SymbolicMatrix {
    type Output = SymbolicMatrix;
    fn mul(self, rhs: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = SymbolicMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let next = cur + &(a * b);
                    out.set(i, j, next);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a SymbolicMatrix> for &'a SymbolicMatrix {
    type Output = SymbolicMatrix;
    fn add(self, rhs: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SymbolicMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a SymbolicMatrix> for &'a SymbolicMatrix {
    type Output = SymbolicMatrix;
    fn sub(self, rhs: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SymbolicMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
