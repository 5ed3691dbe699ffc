//! Dense Hermitian eigendecomposition.

use faer::{c64, Mat, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn solve(m: &DMatrix<Complex64>) -> (Vec<f64>, Mat<c64>) {
    assert_eq!(m.nrows(), m.ncols(), "eigendecomposition of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), Mat::zeros(0, 0));
    }
    let a = Mat::<c64>::from_fn(n, n, |r, c| {
        let z = m[(r, c)];
        c64::new(z.re, z.im)
    });
    let eig = a
        .self_adjoint_eigen(Side::Lower)
        .expect("Hermitian eigendecomposition did not converge");
    let s = eig.S();
    let u = eig.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[a].re.total_cmp(&s[b].re));
    let values = order.iter().map(|&k| s[k].re).collect();
    (values, Mat::from_fn(n, n, |r, c| u[(r, order[c])]))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    solve(m).0
}

/// Ascending eigenvalues and orthonormal eigenvectors (as columns) of a
/// Hermitian matrix.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let (values, u) = solve(m);
    let n = values.len();
    let vectors = DMatrix::from_fn(n, n, |r, c| {
        let z = u[(r, c)];
        Complex64::new(z.re, z.im)
    });
    (values, vectors)
}
