//! Spectral analysis of an effective Hamiltonian on `(spin) ⊗ Fock`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::hermitian::{hermitian_eigen, hermitian_eigenvalues};
use crate::fock::{InteriorProjector, Kinematics, IDENTITY_MARGIN};
use crate::sparse::SparseMatrix;
use crate::spectrum::{spin_orbit_value, to_f64};

use super::EngineError;

/// Weight of `J²` in the labeling operator `L² + γJ²`; irrational so that
/// distinct `(ℓ, j)` never collide.
const LABEL_MIX: f64 = std::f64::consts::SQRT_2 / 10.0;
const CLUSTER_GAP: f64 = 1e-6;

/// Which field equations produced the effective Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    Minimal,
    NonMinimal,
    Bispinor,
}

/// One `(N, ℓ, j)` eigenspace.
#[derive(Clone, Debug, Serialize)]
pub struct SectorEigen {
    pub shell: usize,
    pub n: usize,
    pub l: u32,
    pub two_j: u32,
    pub degeneracy: usize,
    /// Mean eigenvalue over the eigenspace.
    pub eigenvalue: f64,
    /// Largest distance of any eigenvalue in the eigenspace from the mean.
    pub spread: f64,
    pub closed_form: f64,
    pub deviation: f64,
}

/// Result of one engine run.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub theory: Theory,
    pub two_s: usize,
    pub lambda: f64,
    pub n_max: usize,
    pub mass: f64,
    pub omega: f64,
    pub field_components: usize,
    pub hermiticity_defect: f64,
    pub interior_shells: usize,
    pub sectors: Vec<SectorEigen>,
    /// Largest multiset distance between sorted eigenvalues and sorted
    /// closed-form values, over all interior shells.
    pub multiset_deviation: f64,
    /// Largest deviation over labeled eigenspaces and the multiset comparison.
    pub max_deviation: f64,
    pub lowest_eigenvalue: f64,
}

impl ReductionReport {
    pub fn matches(&self, tol: f64) -> bool {
        self.max_deviation <= tol && self.hermiticity_defect <= tol
    }
}

/// `E/ω = 2n + ℓ - (λ/S)⟨S·L⟩` as a float.
pub fn expected_energy(n: usize, l: u32, two_j: u32, two_s: usize, lambda: f64) -> Result<f64, EngineError> {
    let base = (2 * n) as f64 + f64::from(l);
    if two_s == 0 {
        return Ok(base);
    }
    let so = to_f64(spin_orbit_value(l, two_j, two_s as u32)?);
    Ok(base - lambda * so * 2.0 / two_s as f64)
}

fn dense_identity(n: usize) -> DMatrix<Complex64> {
    DMatrix::identity(n, n)
}

fn expectation(v: &DMatrix<Complex64>, op: &DMatrix<Complex64>) -> f64 {
    let m = v.adjoint() * op * v;
    m.trace().re / v.ncols() as f64
}

fn quantum_number(casimir: f64) -> f64 {
    // x(x+1) = casimir
    (-1.0 + (1.0 + 4.0 * casimir).sqrt()) / 2.0
}

/// Total angular momentum pieces restricted to one Fock shell.
pub struct ShellOperators {
    pub indices: Vec<usize>,
    pub h: DMatrix<Complex64>,
    pub l_squared: DMatrix<Complex64>,
    pub j_squared: DMatrix<Complex64>,
    pub s_dot_l: DMatrix<Complex64>,
}

pub fn shell_operators(
    h_eff: &SparseMatrix,
    kin: &Kinematics,
    spin: &[DMatrix<Complex64>; 3],
    shell: usize,
) -> ShellOperators {
    let ds = spin[0].nrows();
    let f = kin.dim();
    let range = kin.basis.shell(shell);
    let fock_idx: Vec<usize> = range.clone().collect();
    let indices: Vec<usize> = (0..ds).flat_map(|s| range.clone().map(move |i| s * f + i)).collect();
    let h = h_eff.select(&indices, &indices).to_dense();
    let ls: Vec<DMatrix<Complex64>> = (0..3).map(|k| kin.l[k].select(&fock_idx, &fock_idx).to_dense()).collect();
    let id_f = dense_identity(fock_idx.len());
    let id_s = dense_identity(ds);
    let l_full: Vec<DMatrix<Complex64>> = ls.iter().map(|l| id_s.kronecker(l)).collect();
    let j_full: Vec<DMatrix<Complex64>> = (0..3).map(|k| spin[k].kronecker(&id_f) + &l_full[k]).collect();
    let sq = |v: &[DMatrix<Complex64>]| &v[0] * &v[0] + &v[1] * &v[1] + &v[2] * &v[2];
    let s_dot_l = (0..3)
        .map(|k| spin[k].kronecker(&ls[k]))
        .fold(DMatrix::zeros(indices.len(), indices.len()), |a, b| a + b);
    ShellOperators {
        l_squared: sq(&l_full),
        j_squared: sq(&j_full),
        s_dot_l,
        h,
        indices,
    }
}

/// Diagonalizes every interior shell, labels eigenspaces by `(ℓ, j)` through
/// simultaneous diagonalization of `L²`, `J²` and `H`, and compares against
/// the closed form at spin-orbit strength `λ`.
pub fn analyze(
    theory: Theory,
    h_eff: &SparseMatrix,
    kin: &Kinematics,
    spin: &[DMatrix<Complex64>; 3],
    two_s: usize,
    lambda: f64,
    field_components: usize,
) -> Result<ReductionReport, EngineError> {
    let ds = spin[0].nrows();
    let n_max = kin.basis.n_max();
    let interior = InteriorProjector::new(&kin.basis, IDENTITY_MARGIN);
    let h_int = interior.compress(h_eff, ds);
    let hermiticity_defect = h_int.hermiticity_defect();
    let omega = kin.omega;

    let interior_shells = n_max - IDENTITY_MARGIN + 1;
    let mut sectors = Vec::new();
    let mut multiset_deviation: f64 = 0.0;
    let mut lowest = f64::INFINITY;
    for shell in 0..interior_shells {
        let ops = shell_operators(h_eff, kin, spin, shell);
        let h_vals = hermitian_eigenvalues(&ops.h);
        lowest = lowest.min(h_vals[0]);

        let mut expected = Vec::with_capacity(h_vals.len());
        for l in (shell % 2..=shell).step_by(2) {
            let n = (shell - l as usize) / 2;
            let l = l as u32;
            let two_l = 2 * l;
            let mut two_j = two_l.abs_diff(two_s as u32);
            while two_j <= two_l + two_s as u32 {
                let e = omega * expected_energy(n, l, two_j, two_s, lambda)?;
                expected.extend(std::iter::repeat(e).take(two_j as usize + 1));
                two_j += 2;
            }
        }
        expected.sort_by(f64::total_cmp);
        if expected.len() != h_vals.len() {
            return Err(EngineError::ReductionFailure(format!(
                "shell {shell}: {} eigenvalues but {} closed-form states",
                h_vals.len(),
                expected.len()
            )));
        }
        for (a, b) in h_vals.iter().zip(&expected) {
            multiset_deviation = multiset_deviation.max((a - b).abs());
        }

        let label_op = &ops.l_squared + &ops.j_squared * Complex64::new(LABEL_MIX, 0.0);
        let (q_vals, q_vecs) = hermitian_eigen(&label_op);
        let mut start = 0;
        while start < q_vals.len() {
            let mut end = start + 1;
            while end < q_vals.len() && q_vals[end] - q_vals[end - 1] < CLUSTER_GAP {
                end += 1;
            }
            let v = q_vecs.columns(start, end - start).into_owned();
            let l = quantum_number(expectation(&v, &ops.l_squared)).round() as u32;
            let two_j = (2.0 * quantum_number(expectation(&v, &ops.j_squared))).round() as u32;
            let vals = hermitian_eigenvalues(&(v.adjoint() * &ops.h * &v));
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let spread = vals.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
            let n = (shell - l as usize) / 2;
            let closed_form = omega * expected_energy(n, l, two_j, two_s, lambda)?;
            let deviation = vals.iter().map(|x| (x - closed_form).abs()).fold(0.0, f64::max);
            sectors.push(SectorEigen {
                shell,
                n,
                l,
                two_j,
                degeneracy: end - start,
                eigenvalue: mean,
                spread,
                closed_form,
                deviation,
            });
            start = end;
        }
    }
    sectors.sort_by(|a, b| (a.shell, a.l, a.two_j).cmp(&(b.shell, b.l, b.two_j)));
    let labeled = sectors.iter().map(|s| s.deviation).fold(0.0, f64::max);
    Ok(ReductionReport {
        theory,
        two_s,
        lambda,
        n_max,
        mass: kin.mass,
        omega,
        field_components,
        hermiticity_defect,
        interior_shells,
        sectors,
        multiset_deviation,
        max_deviation: labeled.max(multiset_deviation),
        lowest_eigenvalue: lowest,
    })
}

/// Least-squares fit of `H = ω(N) - c·S·L` on the `N = 1` shell.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpinOrbitFit {
    pub coefficient: f64,
    /// `‖H - ω - (-c S·L)‖_max` on the shell after the fit.
    pub residual: f64,
    /// Coefficient from the extreme eigenvalue splitting of the shell.
    pub splitting_coefficient: f64,
}

pub fn fit_spin_orbit(
    h_eff: &SparseMatrix,
    kin: &Kinematics,
    spin: &[DMatrix<Complex64>; 3],
) -> Result<SpinOrbitFit, EngineError> {
    let two_s = spin[0].nrows() - 1;
    let ops = shell_operators(h_eff, kin, spin, 1);
    let shifted = &ops.h - dense_identity(ops.h.nrows()) * Complex64::new(kin.omega, 0.0);
    let sl = &ops.s_dot_l;
    let num: f64 = sl.iter().zip(shifted.iter()).map(|(a, b)| (a.conj() * b).re).sum();
    let den: f64 = sl.iter().map(|a| a.norm_sqr()).sum();
    if den == 0.0 {
        return Err(EngineError::ReductionFailure("S·L vanishes on the N = 1 shell".into()));
    }
    let coefficient = -num / den;
    let residual = (&shifted + sl * Complex64::new(coefficient, 0.0))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);

    // ℓ = 1: S·L runs from ℓS (j = ℓ+S) down to its smallest channel value
    let two_s32 = two_s as u32;
    let channel_values: Vec<f64> = ((2u32.abs_diff(two_s32))..=(2 + two_s32))
        .step_by(2)
        .map(|tj| spin_orbit_value(1, tj, two_s32).map(to_f64))
        .collect::<Result<_, _>>()?;
    let so_span = channel_values.iter().cloned().fold(f64::MIN, f64::max)
        - channel_values.iter().cloned().fold(f64::MAX, f64::min);
    let vals = hermitian_eigenvalues(&ops.h);
    let splitting_coefficient = (vals[vals.len() - 1] - vals[0]) / so_span;
    Ok(SpinOrbitFit {
        coefficient,
        residual,
        splitting_coefficient,
    })
}

/// `‖H_eff - (p²/2M + ½Mω²r² - 3ω/2 - (ωλ/S) S·L)‖_max` on the interior.
pub fn effective_hamiltonian_defect(
    h_eff: &SparseMatrix,
    kin: &Kinematics,
    spin: &[DMatrix<Complex64>; 3],
    lambda: f64,
) -> f64 {
    let ds = spin[0].nrows();
    let two_s = (ds - 1) as f64;
    let id_s = SparseMatrix::identity(ds);
    let shifted = &kin.oscillator_hamiltonian() - &kin.identity().scale_real(1.5 * kin.omega);
    let mut expected = id_s.kron(&shifted);
    if ds > 1 {
        let coupling = kin.omega * lambda * 2.0 / two_s;
        for k in 0..3 {
            let sk = SparseMatrix::from_dense(&spin[k]);
            expected = &expected - &sk.kron(&kin.l[k]).scale_real(coupling);
        }
    }
    let interior = InteriorProjector::new(&kin.basis, IDENTITY_MARGIN);
    interior.compress(&(h_eff - &expected), ds).max_abs()
}

/// `max ‖[H, X]‖` over `N`, `J_k` and `J²` on the interior.
pub fn rotational_invariance_defect(h_eff: &SparseMatrix, kin: &Kinematics, spin: &[DMatrix<Complex64>; 3]) -> f64 {
    let ds = spin[0].nrows();
    let id_s = SparseMatrix::identity(ds);
    let id_f = kin.identity();
    let j: Vec<SparseMatrix> = (0..3)
        .map(|k| &SparseMatrix::from_dense(&spin[k]).kron(&id_f) + &id_s.kron(&kin.l[k]))
        .collect();
    let j2 = &(&(&j[0] * &j[0]) + &(&j[1] * &j[1])) + &(&j[2] * &j[2]);
    let n = id_s.kron(&kin.n);
    let interior = InteriorProjector::new(&kin.basis, IDENTITY_MARGIN);
    let mut worst: f64 = 0.0;
    for op in j.iter().chain([&j2, &n]) {
        worst = worst.max(interior.compress(&h_eff.commutator(op), ds).max_abs());
    }
    worst
}
