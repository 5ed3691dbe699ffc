//! Rank-2S symmetric multispinor equations on a truncated oscillator space.

pub mod analysis;
pub mod engine;
pub mod field_equations;
pub mod lift;

use num_complex::Complex64;
use nalgebra::DMatrix;
use thiserror::Error;

use crate::fock::{FockError, Kinematics};
use crate::sparse::SparseMatrix;
use crate::spectrum::SpectrumError;
use crate::spinor::Symmetry;

pub use analysis::{
    analyze, effective_hamiltonian_defect, expected_energy, fit_spin_orbit, rotational_invariance_defect,
    ReductionReport, SectorEigen, SpinOrbitFit, Theory,
};
pub use engine::{
    assemble_sector_blocks, minimal_system, nonminimal_system, ConstrainedBlock, ConstrainedSystem, EngineParams,
    SectorBlocks,
};
pub use field_equations::{cartesian_spin_one, reduce_bispinor, reduce_lagrangian, FieldEquationReduction};
pub use lift::{build_spin_matrices, build_symmetric_action, OneIndexOperator, SpinMatrices};

/// Smallest Fock cutoff that leaves a non-empty interior for `N ≤ 1`.
pub const MIN_CUTOFF: usize = 4;

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("2S = {0} outside the supported range")]
    SpinOutOfRange(usize),
    #[error("cutoff n_max = {0} below the minimum {MIN_CUTOFF}")]
    CutoffTooSmall(usize),
    #[error("lambda = {0} is not finite")]
    InvalidLambda(f64),
    #[error("reduction failed: {0}")]
    ReductionFailure(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported Lagrangian term {0}")]
    UnsupportedTerm(String),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// An effective Hamiltonian with the operators needed to analyze it.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub theory: Theory,
    pub two_s: usize,
    pub lambda: f64,
    pub field_components: usize,
    pub kinematics: Kinematics,
    pub spin: [DMatrix<Complex64>; 3],
    pub hamiltonian: SparseMatrix,
}

impl Reduction {
    pub fn report(&self) -> Result<ReductionReport, EngineError> {
        analyze(
            self.theory,
            &self.hamiltonian,
            &self.kinematics,
            &self.spin,
            self.two_s,
            self.lambda,
            self.field_components,
        )
    }

    /// Distance from `H_osc - 3ω/2 - (ωλ/S) S·L` on the interior.
    pub fn identity_defect(&self) -> f64 {
        effective_hamiltonian_defect(&self.hamiltonian, &self.kinematics, &self.spin, self.lambda)
    }

    pub fn rotational_defect(&self) -> f64 {
        rotational_invariance_defect(&self.hamiltonian, &self.kinematics, &self.spin)
    }

    pub fn spin_orbit(&self) -> Result<SpinOrbitFit, EngineError> {
        fit_spin_orbit(&self.hamiltonian, &self.kinematics, &self.spin)
    }
}

/// Builds the minimal theory for spin `S = two_s/2` and reduces it.
pub fn assemble_and_reduce(two_s: usize, n_max: usize, mass: f64, omega: f64) -> Result<Reduction, EngineError> {
    let params = EngineParams::new(two_s, n_max, mass, omega);
    params.validate(1)?;
    let kin = params.kinematics()?;
    let system = minimal_system(&params, &kin)?;
    Ok(Reduction {
        theory: Theory::Minimal,
        two_s,
        lambda: 1.0,
        field_components: system.field_components(),
        hamiltonian: system.effective_hamiltonian(),
        spin: build_spin_matrices(two_s).s,
        kinematics: kin,
    })
}

/// Builds the non-minimal theory with spin-orbit strength `λ` and reduces it.
pub fn assemble_nonminimal(
    two_s: usize,
    lambda: f64,
    n_max: usize,
    mass: f64,
    omega: f64,
) -> Result<Reduction, EngineError> {
    let params = EngineParams::new(two_s, n_max, mass, omega);
    params.validate(1)?;
    let kin = params.kinematics()?;
    let system = nonminimal_system(&params, lambda, &kin)?;
    Ok(Reduction {
        theory: Theory::NonMinimal,
        two_s,
        lambda,
        field_components: system.field_components(),
        hamiltonian: system.effective_hamiltonian(),
        spin: build_spin_matrices(two_s).s,
        kinematics: kin,
    })
}

/// Reduces the spin-1 or spin-0 bispinor Lagrangian directly.
pub fn assemble_bispinor(symmetry: Symmetry, n_max: usize, mass: f64, omega: f64) -> Result<Reduction, EngineError> {
    let two_s = match symmetry {
        Symmetry::Symmetric => 2,
        Symmetry::Antisymmetric => 0,
    };
    let params = EngineParams::new(two_s, n_max, mass, omega);
    params.validate(0)?;
    let kin = params.kinematics()?;
    let reduced = reduce_bispinor(symmetry, &kin)?;
    let spin = match symmetry {
        Symmetry::Symmetric => cartesian_spin_one(),
        Symmetry::Antisymmetric => [0, 1, 2].map(|_| DMatrix::zeros(1, 1)),
    };
    if reduced.dynamical.len() != spin[0].nrows() {
        return Err(EngineError::DimensionMismatch {
            expected: spin[0].nrows(),
            found: reduced.dynamical.len(),
        });
    }
    Ok(Reduction {
        theory: Theory::Bispinor,
        two_s,
        lambda: 1.0,
        field_components: reduced.field_components(),
        hamiltonian: reduced.hamiltonian,
        spin,
        kinematics: kin,
    })
}

/// `‖H_eff - (H_osc - 3ω/2 - (ωλ/S) S·L)‖_max` on the interior.
pub fn effective_hamiltonian_identity(
    two_s: usize,
    n_max: usize,
    mass: f64,
    omega: f64,
    lambda: f64,
) -> Result<f64, EngineError> {
    let r = if lambda == 1.0 {
        assemble_and_reduce(two_s, n_max, mass, omega)?
    } else {
        assemble_nonminimal(two_s, lambda, n_max, mass, omega)?
    };
    Ok(r.identity_defect())
}

/// Coefficient `c` in `H_eff|_{N=1} = ω - c S·L`; the closed form has `c S = λω`.
pub fn spin_orbit_coefficient(
    two_s: usize,
    n_max: usize,
    mass: f64,
    omega: f64,
    lambda: f64,
) -> Result<SpinOrbitFit, EngineError> {
    let r = if lambda == 1.0 {
        assemble_and_reduce(two_s, n_max, mass, omega)?
    } else {
        assemble_nonminimal(two_s, lambda, n_max, mass, omega)?
    };
    r.spin_orbit()
}
