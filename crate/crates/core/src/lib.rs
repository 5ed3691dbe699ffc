//! Arbitrary-spin Galilean oscillator.
//!
//! The crate covers four layers:
//!
//! * [`spinor`]: exact 4×4 algebra of the first-order Galilean wave operator,
//!   the spin-1 and spin-0 bispinor Lagrangians and component counting.
//! * [`fock`] and [`multispinor`]: the rank-2S symmetric multispinor equation
//!   on a truncated oscillator space, reduced to an effective Hamiltonian on
//!   the dynamical components.
//! * [`spectrum`]: the closed-form levels `E/ω = 2n + ((ℓ+S)(ℓ+S+1) - j(j+1))/2S`.
//! * [`radial`]: finite-difference radial eigenvalues as an independent check.

pub mod gaussian;
pub mod poly;
pub mod symbolic;
pub mod symbasis;
pub mod sparse;
pub mod hermitian;
pub mod fock;
pub mod spinor;
pub mod spectrum;
pub mod multispinor;
pub mod radial;

pub use gaussian::GaussianRational;
pub use poly::{Axis, FormalPolynomial, Kin, Monomial};
pub use symbasis::{Dressing, SpinSector, SymmetricSpinBasis};
pub use symbolic::SymbolicMatrix;
pub use sparse::SparseMatrix;
pub use fock::{FockBasis, FockError, Kinematics};
pub use spectrum::{closed_form_energy, enumerate_levels, lambda_energy, LevelTable, SpectrumError, SpectrumLevel};
pub use multispinor::{assemble_and_reduce, assemble_nonminimal, EngineError, Reduction, ReductionReport};
pub use radial::{solve_channel, RadialChannel, RadialGrid};
