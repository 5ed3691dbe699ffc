//! Assembly of the constrained field equations and their reduction to an
//! effective Hamiltonian on the dynamical components.
//!
//! Every theory handled here has the shape
//!
//! ```text
//! E φ + Σ_c B_φc c = 0,      B_cφ φ + 2M c = 0,
//! ```
//!
//! so the constrained fields are eliminated by `H_eff = Σ_c B_φc B_cφ / 2M`.

use num_complex::Complex64;

use crate::fock::{build_basis, build_kinematics, Kinematics};
use crate::sparse::SparseMatrix;
use crate::spinor::build_generators;
use crate::symbasis::{Dressing, SpinSector, SymmetricSpinBasis};

use super::lift::{build_symmetric_action, sector_fock_indices, OneIndexOperator};
use super::EngineError;

const ASSEMBLY_TOL: f64 = 1e-12;

/// Physical and truncation parameters of one engine run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineParams {
    pub two_s: usize,
    pub n_max: usize,
    pub mass: f64,
    pub omega: f64,
}

impl EngineParams {
    pub fn new(two_s: usize, n_max: usize, mass: f64, omega: f64) -> Self {
        Self {
            two_s,
            n_max,
            mass,
            omega,
        }
    }

    pub fn validate(&self, min_two_s: usize) -> Result<(), EngineError> {
        if self.two_s < min_two_s || self.two_s > crate::symbasis::MAX_TWO_S {
            return Err(EngineError::SpinOutOfRange(self.two_s));
        }
        if self.n_max < super::MIN_CUTOFF {
            return Err(EngineError::CutoffTooSmall(self.n_max));
        }
        Ok(())
    }

    pub fn kinematics(&self) -> Result<Kinematics, EngineError> {
        let basis = build_basis(self.n_max)?;
        Ok(build_kinematics(&basis, self.mass, self.omega)?)
    }
}

/// One constrained field (all its spin components) and its couplings to
/// the dynamical sector.
#[derive(Clone, Debug)]
pub struct ConstrainedBlock {
    pub name: String,
    pub spin_components: usize,
    /// `B_φc`, dynamical rows by constrained columns.
    pub to_dynamical: SparseMatrix,
    /// `B_cφ`, constrained rows by dynamical columns.
    pub from_dynamical: SparseMatrix,
}

/// Field equations with a scalar constraint diagonal `2M`.
#[derive(Clone, Debug)]
pub struct ConstrainedSystem {
    pub dynamical_components: usize,
    pub fock_dim: usize,
    pub constraint_diagonal: f64,
    pub blocks: Vec<ConstrainedBlock>,
    /// Non-time-derivative couplings among dynamical fields, entering as `E φ + D φ`.
    pub direct: Option<SparseMatrix>,
}

impl ConstrainedSystem {
    /// Spin-space components of the field content (Fock factor excluded).
    pub fn field_components(&self) -> usize {
        self.dynamical_components + self.blocks.iter().map(|b| b.spin_components).sum::<usize>()
    }

    /// Schur complement onto the dynamical sector.
    pub fn effective_hamiltonian(&self) -> SparseMatrix {
        let dim = self.dynamical_components * self.fock_dim;
        let mut h = SparseMatrix::zeros(dim, dim);
        for b in &self.blocks {
            h = &h + &(&b.to_dynamical * &b.from_dynamical);
        }
        h = h.scale_real(1.0 / self.constraint_diagonal);
        if let Some(d) = &self.direct {
            h = &h - d;
        }
        h
    }
}

/// Blocks of `Σᵢ Γ…Kᵢ…Γ` (no `1/2S`) between the φ and χ sectors, where
/// `K = B·(p - iMω r ρ₃) + C` is the wave operator without its time part.
#[derive(Clone, Debug)]
pub struct SectorBlocks {
    pub two_s: usize,
    pub fock_dim: usize,
    /// `Σᵢ Γ…Aᵢ…Γ` on φ; equals `2S` times the identity.
    pub time_phi: SparseMatrix,
    /// Same on χ; vanishes.
    pub time_chi: SparseMatrix,
    pub k_phi_phi: SparseMatrix,
    pub k_phi_chi: SparseMatrix,
    pub k_chi_phi: SparseMatrix,
    pub k_chi_chi: SparseMatrix,
    /// Stored entries of the lifted operator touching a decoupled component.
    pub decoupled_nnz: usize,
}

fn spin_matrix(m: &crate::symbolic::SymbolicMatrix) -> Vec<Complex64> {
    m.to_complex()
}

/// The constant-coefficient parts of the wave operator as numeric 4×4 matrices.
struct NumericGenerators {
    a: Vec<Complex64>,
    b: [Vec<Complex64>; 3],
    b_rho3: [Vec<Complex64>; 3],
    lower: Vec<Complex64>,
}

fn numeric_generators() -> NumericGenerators {
    let g = build_generators();
    let id = crate::symbolic::SymbolicMatrix::identity(4);
    NumericGenerators {
        a: spin_matrix(&g.a),
        b: [0, 1, 2].map(|k| spin_matrix(&g.b[k])),
        b_rho3: [0, 1, 2].map(|k| spin_matrix(&(&g.b[k] * &g.rho[2]))),
        lower: spin_matrix(&(&id - &g.rho[2])),
    }
}

pub fn assemble_sector_blocks(two_s: usize, kin: &Kinematics) -> Result<SectorBlocks, EngineError> {
    let basis = SymmetricSpinBasis::new(two_s);
    let f = kin.dim();
    let gens = numeric_generators();
    let id = kin.identity();
    let mw = Complex64::new(0.0, -kin.mass * kin.omega);

    let c_mat: Vec<Complex64> = gens.lower.iter().map(|z| z * kin.mass).collect();
    let osc: Vec<SparseMatrix> = (0..3).map(|k| kin.r[k].scale(mw)).collect();
    let mut terms: Vec<(&[Complex64], &SparseMatrix)> = vec![(&c_mat[..], &id)];
    for k in 0..3 {
        terms.push((&gens.b[k][..], &kin.p[k]));
        terms.push((&gens.b_rho3[k][..], &osc[k]));
    }
    let k_op = OneIndexOperator::from_terms(f, terms)?;
    let a_op = OneIndexOperator::from_terms(f, [(&gens.a[..], &id)])?;

    let scale = two_s as f64;
    let k_full = build_symmetric_action(&basis, &k_op, Dressing::Gamma).scale_real(scale);
    let a_full = build_symmetric_action(&basis, &a_op, Dressing::Gamma).scale_real(scale);

    let phi = sector_fock_indices(&basis, SpinSector::Phi, f);
    let chi = sector_fock_indices(&basis, SpinSector::Chi, f);
    let decoupled = sector_fock_indices(&basis, SpinSector::Decoupled, f);
    let mut is_decoupled = vec![false; basis.dim() * f];
    for &i in &decoupled {
        is_decoupled[i] = true;
    }
    let decoupled_nnz = k_full
        .triplets()
        .chain(a_full.triplets())
        .filter(|&(r, c, _)| is_decoupled[r] || is_decoupled[c])
        .count();

    Ok(SectorBlocks {
        two_s,
        fock_dim: f,
        time_phi: a_full.select(&phi, &phi),
        time_chi: a_full.select(&chi, &chi),
        k_phi_phi: k_full.select(&phi, &phi),
        k_phi_chi: k_full.select(&phi, &chi),
        k_chi_phi: k_full.select(&chi, &phi),
        k_chi_chi: k_full.select(&chi, &chi),
        decoupled_nnz,
    })
}

impl SectorBlocks {
    /// Checks the structure the reduction relies on: `K_χχ = 2M`, time part
    /// `2S` on φ and absent on χ, no φφ coupling, nothing on decoupled components.
    pub fn verify(&self, mass: f64) -> Result<(), EngineError> {
        let chi_dim = self.k_chi_chi.rows();
        let chi_defect = (&self.k_chi_chi - &SparseMatrix::identity(chi_dim).scale_real(2.0 * mass)).max_abs();
        if chi_defect > ASSEMBLY_TOL {
            return Err(EngineError::ReductionFailure(format!(
                "K_chichi deviates from 2M by {chi_defect:e}"
            )));
        }
        let phi_dim = self.time_phi.rows();
        let time_defect = (&self.time_phi - &SparseMatrix::identity(phi_dim).scale_real(self.two_s as f64)).max_abs();
        if time_defect > ASSEMBLY_TOL || self.time_chi.max_abs() > ASSEMBLY_TOL {
            return Err(EngineError::ReductionFailure(format!(
                "time-derivative blocks malformed (phi defect {time_defect:e})"
            )));
        }
        if self.k_phi_phi.max_abs() > ASSEMBLY_TOL {
            return Err(EngineError::ReductionFailure("phi-phi coupling present".into()));
        }
        if self.decoupled_nnz != 0 {
            return Err(EngineError::ReductionFailure(format!(
                "{} entries touch decoupled components",
                self.decoupled_nnz
            )));
        }
        Ok(())
    }

    /// `‖K_φχ - K_χφ†‖_max`.
    pub fn adjoint_defect(&self) -> f64 {
        (&self.k_phi_chi - &self.k_chi_phi.adjoint()).max_abs()
    }
}

/// The minimal `6S+1`-component theory: `E φ + (1/2S) K_φχ χ = 0`,
/// `K_χφ φ + 2M χ = 0`.
pub fn minimal_system(params: &EngineParams, kin: &Kinematics) -> Result<ConstrainedSystem, EngineError> {
    params.validate(1)?;
    let blocks = assemble_sector_blocks(params.two_s, kin)?;
    blocks.verify(kin.mass)?;
    let two_s = params.two_s as f64;
    Ok(ConstrainedSystem {
        dynamical_components: params.two_s + 1,
        fock_dim: kin.dim(),
        constraint_diagonal: 2.0 * kin.mass,
        blocks: vec![ConstrainedBlock {
            name: "chi".into(),
            spin_components: 2 * params.two_s,
            to_dynamical: blocks.k_phi_chi.scale_real(1.0 / two_s),
            from_dynamical: blocks.k_chi_phi,
        }],
        direct: None,
    })
}

/// The `12S+4`-component theory with fields φ, ψ^k, χ^r:
///
/// ```text
/// E φ + (1-λ)(p + iMωr)·ψ + (λ/2S) K_φχ χ = 0
/// 2M ψ^k + (p_k - iMω r_k) φ = 0
/// K_χφ φ + 2M χ = 0
/// ```
pub fn nonminimal_system(
    params: &EngineParams,
    lambda: f64,
    kin: &Kinematics,
) -> Result<ConstrainedSystem, EngineError> {
    params.validate(1)?;
    if !lambda.is_finite() {
        return Err(EngineError::InvalidLambda(lambda));
    }
    let sectors = assemble_sector_blocks(params.two_s, kin)?;
    sectors.verify(kin.mass)?;
    let phi_dim = params.two_s + 1;
    let id_phi = SparseMatrix::identity(phi_dim);
    let mw = kin.mass * kin.omega;
    let mut blocks: Vec<ConstrainedBlock> = (0..3)
        .map(|k| ConstrainedBlock {
            name: format!("psi{}", k + 1),
            spin_components: phi_dim,
            to_dynamical: id_phi.kron(&kin.shifted_momentum(k, mw)).scale_real(1.0 - lambda),
            from_dynamical: id_phi.kron(&kin.shifted_momentum(k, -mw)),
        })
        .collect();
    blocks.push(ConstrainedBlock {
        name: "chi".into(),
        spin_components: 2 * params.two_s,
        to_dynamical: sectors.k_phi_chi.scale_real(lambda / params.two_s as f64),
        from_dynamical: sectors.k_chi_phi,
    });
    Ok(ConstrainedSystem {
        dynamical_components: phi_dim,
        fock_dim: kin.dim(),
        constraint_diagonal: 2.0 * kin.mass,
        blocks,
        direct: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kin(n_max: usize) -> Kinematics {
        EngineParams::new(1, n_max, 1.0, 1.0).kinematics().unwrap()
    }

    #[test]
    fn sector_structure_holds() {
        let k = kin(4);
        for two_s in 1..=4 {
            let b = assemble_sector_blocks(two_s, &k).unwrap();
            b.verify(1.0).unwrap();
            assert!(b.adjoint_defect() < 1e-12);
        }
    }

    #[test]
    fn field_counts() {
        let k = kin(4);
        for two_s in 1..=4 {
            let p = EngineParams::new(two_s, 4, 1.0, 1.0);
            // 6S+1 and 12S+4
            assert_eq!(minimal_system(&p, &k).unwrap().field_components(), 3 * two_s + 1);
            assert_eq!(nonminimal_system(&p, 0.3, &k).unwrap().field_components(), 6 * two_s + 4);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let k = kin(4);
        assert!(matches!(
            minimal_system(&EngineParams::new(0, 4, 1.0, 1.0), &k),
            Err(EngineError::SpinOutOfRange(0))
        ));
        assert!(matches!(
            minimal_system(&EngineParams::new(1, 3, 1.0, 1.0), &k),
            Err(EngineError::CutoffTooSmall(3))
        ));
        assert!(nonminimal_system(&EngineParams::new(1, 4, 1.0, 1.0), f64::NAN, &k).is_err());
    }
}
