//! Field equations read off a bilinear Lagrangian and reduced on Fock space.
//!
//! Varying `L = Σ X* O_XY Y` with respect to `X*` gives `Σ_Y O_XY Y = 0`.
//! Each monomial becomes an operator with positions to the left of
//! derivatives, `∂_k → i p_k` and `∂_t → -iE`.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::fock::Kinematics;
use crate::poly::{Axis, FormalPolynomial, Kin};
use crate::sparse::SparseMatrix;
use crate::spinor::{build_generators, expand_trace_lagrangian, parametrize_bispinor, BilinearLagrangian, FieldName, Symmetry};

use super::EngineError;

const SCALAR_TOL: f64 = 1e-12;

/// A polynomial split into its `E` coefficient and its `E`-free operator.
struct SplitOperator {
    energy: Complex64,
    rest: SparseMatrix,
}

fn monomial_operator(m: &crate::poly::Monomial, kin: &Kinematics) -> Result<SparseMatrix, EngineError> {
    let mut op = kin.identity();
    let mut scalar = 1.0;
    for _ in 0..m.exponent(Kin::Mass) {
        scalar *= kin.mass;
    }
    for _ in 0..m.exponent(Kin::Omega) {
        scalar *= kin.omega;
    }
    if m.exponent(Kin::Lambda) > 0 {
        return Err(EngineError::UnsupportedTerm(format!("{m:?}")));
    }
    for a in Axis::ALL {
        for _ in 0..m.exponent(Kin::R(a)) {
            op = &op * &kin.r[a.index()];
        }
    }
    for a in Axis::ALL {
        for _ in 0..m.exponent(Kin::D(a)) {
            op = &op * &kin.p[a.index()].scale(Complex64::new(0.0, 1.0));
        }
    }
    Ok(op.scale_real(scalar))
}

fn split(poly: &FormalPolynomial, kin: &Kinematics) -> Result<SplitOperator, EngineError> {
    let mut energy = Complex64::new(0.0, 0.0);
    let mut rest = SparseMatrix::zeros(kin.dim(), kin.dim());
    for (m, c) in poly.terms() {
        let (re, im) = c.to_f64_pair();
        let c = Complex64::new(re, im);
        match m.exponent(Kin::Dt) {
            0 => rest = &rest + &monomial_operator(m, kin)?.scale(c),
            1 => {
                if m.derivative_degree() != 1 {
                    return Err(EngineError::UnsupportedTerm(format!("{m:?}")));
                }
                let scalar = monomial_operator(m, kin)?;
                if (&scalar - &kin.identity().scale(scalar.get(0, 0))).max_abs() > SCALAR_TOL {
                    return Err(EngineError::UnsupportedTerm(format!("{m:?}")));
                }
                energy += c * scalar.get(0, 0) * Complex64::new(0.0, -1.0);
            }
            _ => return Err(EngineError::UnsupportedTerm(format!("{m:?}"))),
        }
    }
    Ok(SplitOperator { energy, rest })
}

/// Reduced bispinor field equations.
#[derive(Clone, Debug)]
pub struct FieldEquationReduction {
    pub dynamical: Vec<FieldName>,
    pub constrained: Vec<FieldName>,
    /// Fields with no terms in the Lagrangian.
    pub absent: Vec<FieldName>,
    /// `H` on `dynamical ⊗ Fock`, index `field * F + fock`.
    pub hamiltonian: SparseMatrix,
}

impl FieldEquationReduction {
    pub fn field_components(&self) -> usize {
        self.dynamical.len() + self.constrained.len()
    }
}

fn block_matrix(
    lag: &BilinearLagrangian,
    rows: &[FieldName],
    cols: &[FieldName],
    kin: &Kinematics,
) -> Result<(DMatrix<Complex64>, SparseMatrix), EngineError> {
    let f = kin.dim();
    let mut energy = DMatrix::zeros(rows.len(), cols.len());
    let mut triplets = Vec::new();
    for (i, &x) in rows.iter().enumerate() {
        for (j, &y) in cols.iter().enumerate() {
            let s = split(&lag.coefficient(x, y), kin)?;
            energy[(i, j)] = s.energy;
            triplets.extend(s.rest.triplets().map(|(r, c, v)| (i * f + r, j * f + c, v)));
        }
    }
    Ok((energy, SparseMatrix::from_triplets(rows.len() * f, cols.len() * f, triplets)))
}

/// Eliminates the constrained fields of a bilinear Lagrangian and returns
/// `H` with `E φ = H φ`.
pub fn reduce_lagrangian(
    lag: &BilinearLagrangian,
    fields: &[FieldName],
    kin: &Kinematics,
) -> Result<FieldEquationReduction, EngineError> {
    let mut present = BTreeSet::new();
    for ((s, u), _) in lag.terms() {
        present.insert(*s);
        present.insert(*u);
    }
    let mut dynamical = Vec::new();
    let mut constrained = Vec::new();
    for &name in &present {
        let self_term = lag.coefficient(name, name);
        if self_term.terms().any(|(m, _)| m.exponent(Kin::Dt) > 0) {
            dynamical.push(name);
        } else {
            constrained.push(name);
        }
    }
    if dynamical.is_empty() {
        return Err(EngineError::ReductionFailure("no dynamical field".into()));
    }

    let (e_dd, k_dd) = block_matrix(lag, &dynamical, &dynamical, kin)?;
    let (e_dc, k_dc) = block_matrix(lag, &dynamical, &constrained, kin)?;
    let (e_cd, k_cd) = block_matrix(lag, &constrained, &dynamical, kin)?;
    let (e_cc, k_cc) = block_matrix(lag, &constrained, &constrained, kin)?;
    if e_dc.iter().chain(e_cd.iter()).chain(e_cc.iter()).any(|z| z.norm() > SCALAR_TOL) {
        return Err(EngineError::ReductionFailure("time derivative couples to a constrained field".into()));
    }

    // The constraint block must be a scalar multiple of the identity.
    let f = kin.dim();
    let dc = constrained.len() * f;
    let diag = if dc > 0 { k_cc.get(0, 0) } else { Complex64::new(1.0, 0.0) };
    if dc > 0 && (diag.norm() < SCALAR_TOL || (&k_cc - &SparseMatrix::identity(dc).scale(diag)).max_abs() > SCALAR_TOL) {
        return Err(EngineError::ReductionFailure("constraint block is not scalar".into()));
    }

    // The time part must be a scalar multiple of the identity as well.
    let e0 = e_dd[(0, 0)];
    let nd = dynamical.len();
    if e0.norm() < SCALAR_TOL || (&e_dd - DMatrix::identity(nd, nd) * e0).iter().any(|z| z.norm() > SCALAR_TOL) {
        return Err(EngineError::ReductionFailure("time part is not scalar".into()));
    }

    // e0 E φ + K_dd φ + K_dc c = 0,  K_cd φ + diag c = 0
    let schur = if dc > 0 {
        &k_dd - &(&k_dc * &k_cd).scale(Complex64::new(1.0, 0.0) / diag)
    } else {
        k_dd
    };
    let hamiltonian = schur.scale(-Complex64::new(1.0, 0.0) / e0);
    let absent = fields.iter().filter(|f| !present.contains(*f)).copied().collect();
    Ok(FieldEquationReduction {
        dynamical,
        constrained,
        absent,
        hamiltonian,
    })
}

/// Reduces the spin-1 (symmetric) or spin-0 (antisymmetric) bispinor theory
/// with oscillator coupling.
pub fn reduce_bispinor(symmetry: Symmetry, kin: &Kinematics) -> Result<FieldEquationReduction, EngineError> {
    let fields = parametrize_bispinor(&build_generators(), symmetry).field_names();
    reduce_lagrangian(&expand_trace_lagrangian(symmetry, true), &fields, kin)
}

/// Cartesian spin-1 matrices `(S_k)_ij = -i ε_kij`.
pub fn cartesian_spin_one() -> [DMatrix<Complex64>; 3] {
    [0, 1, 2].map(|k| {
        DMatrix::from_fn(3, 3, |i, j| Complex64::new(0.0, -(crate::poly::levi_civita(k, i, j) as f64)))
    })
}
