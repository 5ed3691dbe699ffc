//! Totally symmetric rank-2S multispinors over the four spinor letters,
//! indexed by occupation 4-tuples.
//!
//! Letters 0 and 1 are the upper components, 2 and 3 the lower ones. A state
//! `(k₀, k₁, k₂, k₃)` stands for the normalized symmetrization of any word with
//! those letter counts.

use std::collections::HashMap;

use serde::Serialize;

pub const MAX_TWO_S: usize = 16;

/// Which part of the field a symmetric component belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinSector {
    /// All indices upper.
    Phi,
    /// Exactly one lower index.
    Chi,
    /// Two or more lower indices.
    Decoupled,
}

/// Whether the other `2S-1` slots of a one-index action carry the Γ projector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dressing {
    Plain,
    Gamma,
}

#[derive(Clone, Debug)]
pub struct SymmetricSpinBasis {
    two_s: usize,
    states: Vec<[u8; 4]>,
    index: HashMap<[u8; 4], usize>,
}

/// One nonzero slot of the symmetrized action `Σᵢ O⁽ⁱ⁾`: letter `from` of the
/// source state is replaced by letter `to`.
#[derive(Clone, Copy, Debug)]
pub struct Transition {
    pub target: usize,
    pub source: usize,
    pub to: usize,
    pub from: usize,
    /// Occupation of `to` in the target state.
    pub target_count: u32,
    /// Occupation of `from` in the source state.
    pub source_count: u32,
}

impl Transition {
    /// Matrix-element weight in the orthonormal occupation basis.
    pub fn orthonormal_weight(&self) -> f64 {
        (f64::from(self.target_count) * f64::from(self.source_count)).sqrt()
    }

    /// Integer weight in the unnormalized basis of word sums.
    pub fn monomial_weight(&self) -> i64 {
        i64::from(self.target_count)
    }
}

fn lower(occ: &[u8; 4]) -> u8 {
    occ[2] + occ[3]
}

impl SymmetricSpinBasis {
    pub fn new(two_s: usize) -> Self {
        assert!(
            (1..=MAX_TWO_S).contains(&two_s),
            "two_s must be in 1..={MAX_TWO_S}, got {two_s}"
        );
        let n = two_s as u8;
        let mut states = Vec::new();
        for k0 in 0..=n {
            for k1 in 0..=n - k0 {
                for k2 in 0..=n - k0 - k1 {
                    states.push([k0, k1, k2, n - k0 - k1 - k2]);
                }
            }
        }
        states.sort_by(|a, b| lower(a).cmp(&lower(b)).then_with(|| b.cmp(a)));
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self {
            two_s,
            states,
            index,
        }
    }

    pub fn two_s(&self) -> usize {
        self.two_s
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// `(2S+1)(2S+2)(2S+3)/6`.
    pub fn expected_dim(two_s: usize) -> usize {
        (two_s + 1) * (two_s + 2) * (two_s + 3) / 6
    }

    pub fn states(&self) -> &[[u8; 4]] {
        &self.states
    }

    pub fn index_of(&self, occ: &[u8; 4]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn sector(&self, i: usize) -> SpinSector {
        match lower(&self.states[i]) {
            0 => SpinSector::Phi,
            1 => SpinSector::Chi,
            _ => SpinSector::Decoupled,
        }
    }

    pub fn indices_in(&self, sector: SpinSector) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.sector(i) == sector).collect()
    }

    /// Number of distinct words with this occupation, `(2S)! / Π kₐ!`.
    pub fn multiplicity(&self, i: usize) -> u64 {
        let fact = |n: u64| (1..=n).product::<u64>();
        let occ = &self.states[i];
        fact(self.two_s as u64) / occ.iter().map(|&k| fact(u64::from(k))).product::<u64>()
    }

    /// Every nonzero slot of the symmetrized one-index action. With
    /// [`Dressing::Gamma`] only sources whose remaining `2S-1` letters are all
    /// upper contribute, which is the action of `Σᵢ Γ⊗…⊗Oᵢ⊗…⊗Γ`.
    pub fn transitions(&self, dressing: Dressing) -> Vec<Transition> {
        let mut out = Vec::new();
        for (source, occ) in self.states.iter().enumerate() {
            for from in 0..4 {
                if occ[from] == 0 {
                    continue;
                }
                let mut rest = *occ;
                rest[from] -= 1;
                if dressing == Dressing::Gamma && lower(&rest) > 0 {
                    continue;
                }
                for to in 0..4 {
                    let mut tgt = rest;
                    tgt[to] += 1;
                    let target = self.index[&tgt];
                    out.push(Transition {
                        target,
                        source,
                        to,
                        from,
                        target_count: u32::from(tgt[to]),
                        source_count: u32::from(occ[from]),
                    });
                }
            }
        }
        out
    }
}
