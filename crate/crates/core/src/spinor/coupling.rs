//! Which symmetric rank-2S components survive the Γ-dressed wave operator.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::gaussian::GaussianRational;
use crate::poly::FormalPolynomial;
use crate::symbasis::{Dressing, SpinSector, SymmetricSpinBasis};
use crate::symbolic::SymbolicMatrix;

use super::generators::{build_generators, build_wave_operator};
use super::SpinorError;

pub const MAX_COUPLING_RANK: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCoupling {
    pub occupation: [u8; 4],
    pub sector: SpinSector,
    pub retained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingReport {
    pub rank_2s: usize,
    pub total: usize,
    pub retained: usize,
    pub decoupled: usize,
    pub components: Vec<ComponentCoupling>,
}

impl CouplingReport {
    /// Retained exactly when at most one index is lower.
    pub fn matches_sector_rule(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.retained == (c.sector != SpinSector::Decoupled))
    }
}

/// Exact lift of a 4×4 polynomial operator to `Σᵢ Γ…Oᵢ…Γ` in the
/// unnormalized word-sum basis, as a sparse map `(row, col) → entry`.
pub fn symbolic_dressed_lift(
    basis: &SymmetricSpinBasis,
    op: &SymbolicMatrix,
) -> BTreeMap<(usize, usize), FormalPolynomial> {
    let mut out: BTreeMap<(usize, usize), FormalPolynomial> = BTreeMap::new();
    for t in basis.transitions(Dressing::Gamma) {
        let entry = op.get(t.to, t.from);
        if entry.is_zero() {
            continue;
        }
        let w = entry.scale(&GaussianRational::from_integer(t.monomial_weight()));
        let slot = out.entry((t.target, t.source)).or_default();
        *slot = &*slot + &w;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn coupling_analysis(rank_2s: usize) -> Result<CouplingReport, SpinorError> {
    if !(1..=MAX_COUPLING_RANK).contains(&rank_2s) {
        return Err(SpinorError::RankOutOfRange(rank_2s));
    }
    let basis = SymmetricSpinBasis::new(rank_2s);
    let wave = build_wave_operator(&build_generators(), true);
    let lifted = symbolic_dressed_lift(&basis, &wave);
    let mut touched = vec![false; basis.dim()];
    for &(r, c) in lifted.keys() {
        touched[r] = true;
        touched[c] = true;
    }
    let components: Vec<ComponentCoupling> = basis
        .states()
        .iter()
        .enumerate()
        .map(|(i, occ)| ComponentCoupling {
            occupation: *occ,
            sector: basis.sector(i),
            retained: touched[i],
        })
        .collect();
    let retained = touched.iter().filter(|&&t| t).count();
    Ok(CouplingReport {
        rank_2s,
        total: basis.dim(),
        retained,
        decoupled: basis.dim() - retained,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_one_counts() {
        let r = coupling_analysis(2).unwrap();
        assert_eq!((r.total, r.retained), (10, 7));
    }

    #[test]
    fn spin_half_keeps_everything() {
        let r = coupling_analysis(1).unwrap();
        assert_eq!((r.total, r.retained), (4, 4));
    }

    #[test]
    fn spin_two_counts() {
        // (5·6·7)/6 = 35 and 6·2+1 = 13
        let r = coupling_analysis(4).unwrap();
        assert_eq!((r.total, r.retained), (35, 13));
        assert!(r.matches_sector_rule());
    }

    #[test]
    fn rank_bounds() {
        assert!(matches!(coupling_analysis(0), Err(SpinorError::RankOutOfRange(0))));
        assert!(coupling_analysis(9).is_err());
    }

    #[test]
    fn rank_one_lift_is_the_operator() {
        let basis = SymmetricSpinBasis::new(1);
        let wave = build_wave_operator(&build_generators(), true);
        let lifted = symbolic_dressed_lift(&basis, &wave);
        for r in 0..4 {
            for c in 0..4 {
                let (br, bc) = (
                    basis.index_of(&unit(r)).unwrap(),
                    basis.index_of(&unit(c)).unwrap(),
                );
                let got = lifted.get(&(br, bc)).cloned().unwrap_or_default();
                assert_eq!(&got, wave.get(r, c));
            }
        }
    }

    fn unit(a: usize) -> [u8; 4] {
        let mut o = [0; 4];
        o[a] = 1;
        o
    }
}
