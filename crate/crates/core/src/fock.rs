//! Truncated three-dimensional oscillator space in the Cartesian occupation basis.
//!
//! Position and momentum are realized with ladder operators,
//! `r_k = (a_k + a_k†)/√(2Mω)` and `p_k = i√(Mω/2)(a_k† - a_k)`. Products of
//! two such operators are exact on states with `N ≤ n_max - 2`; the
//! [`InteriorProjector`] selects those.

use std::collections::HashMap;
use std::ops::Range;

use num_complex::Complex64;
use thiserror::Error;

use crate::sparse::SparseMatrix;

pub const MAX_CUTOFF: usize = 40;
pub const IDENTITY_MARGIN: usize = 2;

#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("total-quanta cutoff {0} outside 0..={MAX_CUTOFF}")]
    CutoffOutOfRange(usize),
    #[error("mass and frequency must be positive (M = {mass}, omega = {omega})")]
    NonPositiveScale { mass: f64, omega: f64 },
    #[error("cutoff {n_max} too small; need at least {min}")]
    CutoffTooSmall { n_max: usize, min: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockBasis {
    n_max: usize,
    states: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], usize>,
    shell_start: Vec<usize>,
}

impl FockBasis {
    pub fn new(n_max: usize) -> Result<Self, FockError> {
        if n_max > MAX_CUTOFF {
            return Err(FockError::CutoffOutOfRange(n_max));
        }
        let mut states = Vec::new();
        let mut shell_start = Vec::with_capacity(n_max + 2);
        for total in 0..=n_max as u32 {
            shell_start.push(states.len());
            for n1 in 0..=total {
                for n2 in 0..=total - n1 {
                    states.push([n1, n2, total - n1 - n2]);
                }
            }
        }
        shell_start.push(states.len());
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(Self {
            n_max,
            states,
            index,
            shell_start,
        })
    }

    /// `(n_max+1)(n_max+2)(n_max+3)/6`.
    pub fn expected_dim(n_max: usize) -> usize {
        (n_max + 1) * (n_max + 2) * (n_max + 3) / 6
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[[u32; 3]] {
        &self.states
    }

    pub fn index_of(&self, occ: &[u32; 3]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn total_quanta(&self, i: usize) -> usize {
        self.states[i].iter().sum::<u32>() as usize
    }

    /// Contiguous index range of the `N = total` shell.
    pub fn shell(&self, total: usize) -> Range<usize> {
        self.shell_start[total]..self.shell_start[total + 1]
    }

    /// Lowering operator `a_k`.
    pub fn annihilation(&self, axis: usize) -> SparseMatrix {
        let mut trips = Vec::new();
        for (col, occ) in self.states.iter().enumerate() {
            if occ[axis] == 0 {
                continue;
            }
            let mut lowered = *occ;
            lowered[axis] -= 1;
            let row = self.index[&lowered];
            trips.push((row, col, Complex64::new(f64::from(occ[axis]).sqrt(), 0.0)));
        }
        SparseMatrix::from_triplets(self.dim(), self.dim(), trips)
    }

    pub fn number_operator(&self) -> SparseMatrix {
        let d: Vec<Complex64> = (0..self.dim())
            .map(|i| Complex64::new(self.total_quanta(i) as f64, 0.0))
            .collect();
        SparseMatrix::diagonal(&d)
    }
}

pub fn build_basis(n_max: usize) -> Result<FockBasis, FockError> {
    FockBasis::new(n_max)
}

/// Projector onto states with `N ≤ n_max - margin`.
#[derive(Clone, Debug)]
pub struct InteriorProjector {
    margin: usize,
    dim: usize,
    indices: Vec<usize>,
}

impl InteriorProjector {
    pub fn new(basis: &FockBasis, margin: usize) -> Self {
        let indices = if margin > basis.n_max() {
            Vec::new()
        } else {
            (0..basis.shell(basis.n_max() - margin).end).collect()
        };
        Self {
            margin,
            dim: basis.dim(),
            indices,
        }
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Interior indices of `(spin block) ⊗ Fock` with `blocks` spin copies.
    pub fn lifted_indices(&self, blocks: usize) -> Vec<usize> {
        (0..blocks)
            .flat_map(|b| self.indices.iter().map(move |&i| b * self.dim + i))
            .collect()
    }

    pub fn as_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.dim,
            self.dim,
            self.indices.iter().map(|&i| (i, i, Complex64::new(1.0, 0.0))),
        )
    }

    /// `P A P` restricted to the interior, for an operator on `blocks` copies.
    pub fn compress(&self, op: &SparseMatrix, blocks: usize) -> SparseMatrix {
        let idx = self.lifted_indices(blocks);
        op.select(&idx, &idx)
    }
}

/// `r_k`, `p_k`, `L_k` and `N` on one basis.
#[derive(Clone, Debug)]
pub struct Kinematics {
    pub basis: FockBasis,
    pub mass: f64,
    pub omega: f64,
    pub lowering: [SparseMatrix; 3],
    pub raising: [SparseMatrix; 3],
    pub r: [SparseMatrix; 3],
    pub p: [SparseMatrix; 3],
    pub l: [SparseMatrix; 3],
    pub n: SparseMatrix,
}

pub fn build_kinematics(basis: &FockBasis, mass: f64, omega: f64) -> Result<Kinematics, FockError> {
    if !(mass > 0.0 && omega > 0.0) {
        return Err(FockError::NonPositiveScale { mass, omega });
    }
    let lowering = [0, 1, 2].map(|k| basis.annihilation(k));
    let raising = [0, 1, 2].map(|k| lowering[k].adjoint());
    let r_scale = 1.0 / (2.0 * mass * omega).sqrt();
    let p_scale = Complex64::new(0.0, (mass * omega / 2.0).sqrt());
    let r = [0, 1, 2].map(|k| (&lowering[k] + &raising[k]).scale_real(r_scale));
    let p = [0, 1, 2].map(|k| (&raising[k] - &lowering[k]).scale(p_scale));
    // L_k = -i ε_kij a_i† a_j, number conserving and exact under truncation
    let l = [0, 1, 2].map(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let forward = &raising[i] * &lowering[j];
        let backward = &raising[j] * &lowering[i];
        (&forward - &backward).scale(Complex64::new(0.0, -1.0))
    });
    Ok(Kinematics {
        basis: basis.clone(),
        mass,
        omega,
        lowering,
        raising,
        r,
        p,
        l,
        n: basis.number_operator(),
    })
}

impl Kinematics {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn identity(&self) -> SparseMatrix {
        SparseMatrix::identity(self.dim())
    }

    pub fn p_squared(&self) -> SparseMatrix {
        sum_of_squares(&self.p)
    }

    pub fn r_squared(&self) -> SparseMatrix {
        sum_of_squares(&self.r)
    }

    /// `p²/2M + ½Mω²r²`, truncated products (exact on the interior).
    pub fn oscillator_hamiltonian(&self) -> SparseMatrix {
        let kinetic = self.p_squared().scale_real(0.5 / self.mass);
        let potential = self.r_squared().scale_real(0.5 * self.mass * self.omega * self.omega);
        &kinetic + &potential
    }

    /// `p_k + i c r_k` for a real `c`.
    pub fn shifted_momentum(&self, axis: usize, c: f64) -> SparseMatrix {
        &self.p[axis] + &self.r[axis].scale(Complex64::new(0.0, c))
    }

    /// `L² = Σ L_k L_k`.
    pub fn l_squared(&self) -> SparseMatrix {
        sum_of_squares(&self.l)
    }
}

fn sum_of_squares(ops: &[SparseMatrix; 3]) -> SparseMatrix {
    let mut acc = &ops[0] * &ops[0];
    for op in &ops[1..] {
        acc = &acc + &(op * op);
    }
    acc
}

/// 2×2 Pauli matrices as sparse matrices.
pub fn pauli_sparse() -> [SparseMatrix; 3] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        SparseMatrix::from_triplets(2, 2, [(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))]),
        SparseMatrix::from_triplets(2, 2, [(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))]),
        SparseMatrix::from_triplets(2, 2, [(0, 0, c(1.0, 0.0)), (1, 1, c(-1.0, 0.0))]),
    ]
}

/// Max-norm of `σ·(p+iMωr) σ·(p−iMωr) − (p² + M²ω²r² − 3Mω − 2Mω L·σ)` on the
/// interior (margin 2) of `spin-½ ⊗ Fock`.
///
/// Any canonical realization of `r, p` will do, so with `omega = 0` the ladder
/// realization uses unit frequency while the identity itself is taken at `ω = 0`.
pub fn oscillator_identity_check(basis: &FockBasis, mass: f64, omega: f64) -> Result<f64, FockError> {
    if basis.n_max() < 3 {
        return Err(FockError::CutoffTooSmall {
            n_max: basis.n_max(),
            min: 3,
        });
    }
    if !(mass > 0.0 && omega >= 0.0) {
        return Err(FockError::NonPositiveScale { mass, omega });
    }
    let rep_omega = if omega > 0.0 { omega } else { 1.0 };
    let kin = build_kinematics(basis, mass, rep_omega)?;
    let sigma = pauli_sparse();
    let mw = mass * omega;

    let sigma_dot = |ops: [SparseMatrix; 3]| -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(2 * kin.dim(), 2 * kin.dim());
        for (s, op) in sigma.iter().zip(ops.iter()) {
            acc = &acc + &s.kron(op);
        }
        acc
    };
    let plus = sigma_dot([0, 1, 2].map(|k| kin.shifted_momentum(k, mw)));
    let minus = sigma_dot([0, 1, 2].map(|k| kin.shifted_momentum(k, -mw)));
    let lhs = &plus * &minus;

    let scalar = &(&kin.p_squared() + &kin.r_squared().scale_real(mw * mw)) - &kin.identity().scale_real(3.0 * mw);
    let l_dot_sigma = sigma_dot(kin.l.clone());
    let rhs = &SparseMatrix::identity(2).kron(&scalar) - &l_dot_sigma.scale_real(2.0 * mw);

    let proj = InteriorProjector::new(basis, IDENTITY_MARGIN);
    Ok(proj.compress(&(&lhs - &rhs), 2).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn kin(n_max: usize, m: f64, w: f64) -> Kinematics {
        build_kinematics(&build_basis(n_max).unwrap(), m, w).unwrap()
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(build_basis(0).unwrap().dim(), 1);
        assert_eq!(build_basis(1).unwrap().dim(), 4);
        assert_eq!(build_basis(8).unwrap().dim(), 165);
        for n in 0..=12 {
            assert_eq!(build_basis(n).unwrap().dim(), FockBasis::expected_dim(n));
        }
        assert_eq!(build_basis(41), Err(FockError::CutoffOutOfRange(41)));
    }

    #[test]
    fn graded_lexicographic_order() {
        let b = build_basis(2).unwrap();
        assert_eq!(&b.states()[..4], &[[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        assert_eq!(b.shell(2), 4..10);
    }

    #[test]
    fn position_ladder_element() {
        let (m, w) = (2.0, 0.7);
        let k = kin(3, m, w);
        let b = &k.basis;
        let (one, vac) = (b.index_of(&[1, 0, 0]).unwrap(), b.index_of(&[0, 0, 0]).unwrap());
        let expect = 1.0 / (2.0 * m * w).sqrt();
        assert!((k.r[0].get(one, vac).re - expect).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_scales() {
        let b = build_basis(2).unwrap();
        assert!(build_kinematics(&b, 0.0, 1.0).is_err());
        assert!(build_kinematics(&b, 1.0, -1.0).is_err());
    }

    #[test]
    fn canonical_commutators_on_interior() {
        let k = kin(6, 1.3, 0.8);
        let proj = InteriorProjector::new(&k.basis, 2);
        let i = Complex64::new(0.0, 1.0);
        for a in 0..3 {
            for b in 0..3 {
                let rp = k.r[a].commutator(&k.p[b]);
                let expect = if a == b { k.identity().scale(i) } else { SparseMatrix::zeros(k.dim(), k.dim()) };
                assert!(proj.compress(&(&rp - &expect), 1).max_abs() < 1e-12);
                assert!(proj.compress(&k.r[a].commutator(&k.r[b]), 1).max_abs() < 1e-12);
                assert!(proj.compress(&k.p[a].commutator(&k.p[b]), 1).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angular_momentum_algebra_is_exact() {
        let k = kin(5, 1.0, 1.0);
        let i = Complex64::new(0.0, 1.0);
        for a in 0..3 {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            let lhs = k.l[a].commutator(&k.l[b]);
            assert!((&lhs - &k.l[c].scale(i)).max_abs() < 1e-12);
            assert!(k.l[a].hermiticity_defect() < 1e-12);
            assert!(k.l[a].commutator(&k.n).max_abs() < 1e-12);
        }
    }

    #[test]
    fn l_matches_r_cross_p_on_interior() {
        let k = kin(6, 1.0, 2.0);
        let proj = InteriorProjector::new(&k.basis, 2);
        for a in 0..3 {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            let cross = &(&k.r[b] * &k.p[c]) - &(&k.r[c] * &k.p[b]);
            assert!(proj.compress(&(&cross - &k.l[a]), 1).max_abs() < 1e-12);
        }
    }

    #[test]
    fn lz_on_first_shell_has_eigenvalues_minus_one_zero_one() {
        let k = kin(3, 1.0, 1.0);
        let shell: Vec<usize> = k.basis.shell(1).collect();
        let block = k.l[2].select(&shell, &shell).to_dense();
        let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillator_is_diagonal_on_interior() {
        let (m, w) = (0.6, 1.7);
        let k = kin(7, m, w);
        let proj = InteriorProjector::new(&k.basis, 2);
        let expect = &k.n.scale_real(w) + &k.identity().scale_real(1.5 * w);
        assert!(proj.compress(&(&k.oscillator_hamiltonian() - &expect), 1).max_abs() < 1e-12);
        assert!(proj.compress(&k.oscillator_hamiltonian().commutator(&k.n), 1).max_abs() < 1e-12);
    }

    #[test]
    fn interior_projector_is_idempotent_and_commutes_with_n() {
        let b = build_basis(5).unwrap();
        let p = InteriorProjector::new(&b, 2).as_matrix();
        assert_eq!(&p * &p, p);
        assert!(p.commutator(&b.number_operator()).max_abs() == 0.0);
        assert_eq!(InteriorProjector::new(&b, 2).indices().len(), FockBasis::expected_dim(3));
    }

    #[test]
    fn spin_orbit_identity() {
        let b = build_basis(6).unwrap();
        assert!(oscillator_identity_check(&b, 1.0, 1.0).unwrap() <= 1e-10);
        assert!(oscillator_identity_check(&b, 2.0, 0.5).unwrap() <= 1e-10);
        assert!(oscillator_identity_check(&b, 1.0, 0.0).unwrap() <= 1e-12);
    }

    #[test]
    fn identity_check_on_larger_cutoff_agrees() {
        // same parameters as the n_max = 6 check, re-derived on a bigger space
        let d = oscillator_identity_check(&build_basis(9).unwrap(), 2.0, 0.5).unwrap();
        assert!(d <= 1e-10);
    }

    #[test]
    fn identity_check_needs_room() {
        assert!(oscillator_identity_check(&build_basis(2).unwrap(), 1.0, 1.0).is_err());
    }

    #[test]
    fn hermitian_position_and_momentum() {
        let k = kin(4, 1.0, 1.0);
        for a in 0..3 {
            assert!(k.r[a].hermiticity_defect() < 1e-12);
            assert!(k.p[a].hermiticity_defect() < 1e-12);
        }
        let _ = DMatrix::<Complex64>::zeros(1, 1);
    }
}
