//! Row-major sparse complex matrices with deterministic entry order.

use std::io::{self, Write};
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Per row, `(col, value)` sorted by column; no duplicates, no stored zeros.
    data: Vec<Vec<(usize, C64)>>,
}

fn push_sorted(row: &mut Vec<(usize, C64)>, col: usize, v: C64) {
    match row.binary_search_by_key(&col, |e| e.0) {
        Ok(pos) => {
            row[pos].1 += v;
            if row[pos].1 == C64::new(0.0, 0.0) {
                row.remove(pos);
            }
        }
        Err(pos) => {
            if v != C64::new(0.0, 0.0) {
                row.insert(pos, (col, v));
            }
        }
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            if v != C64::new(0.0, 0.0) {
                m.data[i].push((i, v));
            }
        }
        m
    }

    /// Duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) out of bounds");
            push_sorted(&mut m.data[r], c, v);
        }
        m
    }

    pub fn from_dense(d: &DMatrix<C64>) -> Self {
        let mut m = Self::zeros(d.nrows(), d.ncols());
        for r in 0..d.nrows() {
            for c in 0..d.ncols() {
                let v = d[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    m.data[r].push((c, v));
                }
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

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, C64)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(pos) => self.data[r][pos].1,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// `‖A - A†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    pub fn commutator(&self, other: &SparseMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// `A ⊗ B` with row index `i_A * rows_B + i_B`.
    pub fn kron(&self, other: &SparseMatrix) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (ra, ca, va) in self.triplets() {
            for (rb, cb, vb) in other.triplets() {
                push_sorted(&mut m.data[ra * other.rows + rb], ca * other.cols + cb, va * vb);
            }
        }
        m
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let mut m = Self::zeros(rows.len(), cols.len());
        for (k, &r) in rows.iter().enumerate() {
            for &(c, v) in &self.data[r] {
                if col_pos[c] != usize::MAX {
                    push_sorted(&mut m.data[k], col_pos[c], v);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut d = DMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            d[(r, c)] = v;
        }
        d
    }

    /// Coordinate-triplet dump: `row col re im` per line.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# {} {} {}", self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.triplets() {
            writeln!(w, "{r} {c} {:.17e} {:.17e}", v.re, v.im)?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        let mut acc = vec![C64::new(0.0, 0.0); rhs.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut seen = vec![false; rhs.cols];
        for r in 0..self.rows {
            for &(k, a) in &self.data[r] {
                for &(c, b) in &rhs.data[k] {
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            touched.sort_unstable();
            let row = &mut out.data[r];
            for &c in &touched {
                if acc[c] != C64::new(0.0, 0.0) {
                    row.push((c, acc[c]));
                }
                acc[c] = C64::new(0.0, 0.0);
                seen[c] = false;
            }
            touched.clear();
        }
        out
    }
}

fn combine(a: &SparseMatrix, b: &SparseMatrix, sign: f64) -> SparseMatrix {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "dimension mismatch in sum");
    let mut out = a.clone();
    for (r, c, v) in b.triplets() {
        push_sorted(&mut out.data[r], c, v * sign);
    }
    out
}

impl<'a> Add<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;
    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        combine(self, rhs, 1.0)
    }
}

impl<'a> Sub<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;
    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        combine(self, rhs, -1.0)
    }
}
