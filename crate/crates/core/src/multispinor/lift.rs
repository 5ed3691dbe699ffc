//! Symmetrized one-index actions on `(symmetric spin space) ⊗ Fock`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::sparse::SparseMatrix;
use crate::symbasis::{Dressing, SpinSector, SymmetricSpinBasis};

use super::EngineError;

/// A 4×4 matrix whose entries are operators on one Fock space.
#[derive(Clone, Debug)]
pub struct OneIndexOperator {
    fock_dim: usize,
    entries: Vec<Option<SparseMatrix>>,
}

impl OneIndexOperator {
    pub fn zeros(fock_dim: usize) -> Self {
        Self {
            fock_dim,
            entries: vec![None; 16],
        }
    }

    /// `Σ_t spin_t ⊗ fock_t` with 4×4 spin matrices given row-major.
    pub fn from_terms<'a>(
        fock_dim: usize,
        terms: impl IntoIterator<Item = (&'a [Complex64], &'a SparseMatrix)>,
    ) -> Result<Self, EngineError> {
        let mut op = Self::zeros(fock_dim);
        for (spin, fock) in terms {
            assert_eq!(spin.len(), 16, "spin factor must be 4×4");
            for (k, &s) in spin.iter().enumerate() {
                if s == Complex64::new(0.0, 0.0) {
                    continue;
                }
                op.add_entry(k / 4, k % 4, &fock.scale(s))?;
            }
        }
        Ok(op)
    }

    pub fn add_entry(&mut self, row: usize, col: usize, value: &SparseMatrix) -> Result<(), EngineError> {
        if value.rows() != self.fock_dim || value.cols() != self.fock_dim {
            return Err(EngineError::DimensionMismatch {
                expected: self.fock_dim,
                found: value.rows(),
            });
        }
        let slot = &mut self.entries[row * 4 + col];
        *slot = Some(match slot.take() {
            Some(prev) => &prev + value,
            None => value.clone(),
        });
        Ok(())
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&SparseMatrix> {
        self.entries[row * 4 + col].as_ref()
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }
}

/// `(1/2S) Σᵢ Oᵢ` (plain) or `(1/2S) Σᵢ Γ…Oᵢ…Γ` (Γ-dressed) on the
/// symmetric space, with index `spin * fock_dim + fock`.
pub fn build_symmetric_action(
    basis: &SymmetricSpinBasis,
    op: &OneIndexOperator,
    dressing: Dressing,
) -> SparseMatrix {
    let f = op.fock_dim();
    let norm = 1.0 / basis.two_s() as f64;
    let mut trips = Vec::new();
    for t in basis.transitions(dressing) {
        let Some(entry) = op.entry(t.to, t.from) else {
            continue;
        };
        let w = t.orthonormal_weight() * norm;
        for (r, c, v) in entry.triplets() {
            trips.push((t.target * f + r, t.source * f + c, v * w));
        }
    }
    let dim = basis.dim() * f;
    SparseMatrix::from_triplets(dim, dim, trips)
}

/// Indices of `sector ⊗ Fock` inside the lifted space.
pub fn sector_fock_indices(basis: &SymmetricSpinBasis, sector: SpinSector, fock_dim: usize) -> Vec<usize> {
    basis
        .indices_in(sector)
        .into_iter()
        .flat_map(|s| (0..fock_dim).map(move |i| s * fock_dim + i))
        .collect()
}

/// Total spin `S_k` on the all-upper sector: the symmetrized lift of `½σ_k`.
#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub two_s: usize,
    pub s: [DMatrix<Complex64>; 3],
}

impl SpinMatrices {
    pub fn dim(&self) -> usize {
        self.two_s + 1
    }

    pub fn casimir(&self) -> DMatrix<Complex64> {
        &self.s[0] * &self.s[0] + &self.s[1] * &self.s[1] + &self.s[2] * &self.s[2]
    }
}

pub fn build_spin_matrices(two_s: usize) -> SpinMatrices {
    let basis = SymmetricSpinBasis::new(two_s);
    let phi = basis.indices_in(SpinSector::Phi);
    let id1 = SparseMatrix::identity(1);
    let sigma = crate::fock::pauli_sparse();
    let s = [0, 1, 2].map(|k| {
        let mut op = OneIndexOperator::zeros(1);
        // ½σ_k acts on the σ slot of both the upper and the lower letters
        for u in 0..2 {
            for (r, c, v) in sigma[k].triplets() {
                op.add_entry(2 * u + r, 2 * u + c, &id1.scale(v * 0.5)).expect("1×1 entries");
            }
        }
        build_symmetric_action(&basis, &op, Dressing::Plain)
            .scale_real(two_s as f64)
            .select(&phi, &phi)
            .to_dense()
    });
    SpinMatrices { two_s, s }
}
