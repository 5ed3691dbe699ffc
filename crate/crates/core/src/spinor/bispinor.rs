//! Second-rank spinors for spin 1 (symmetric) and spin 0 (antisymmetric),
//! written as linear combinations of constant 4×4 matrices times field symbols.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::gaussian::GaussianRational;
use crate::poly::Axis;
use crate::symbolic::SymbolicMatrix;

use super::generators::Generators;
use super::lagrangian::{trace_bilinear, BilinearLagrangian};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    /// `+1` if `ψᵀ = ψ`, `-1` if `ψᵀ = -ψ`.
    pub fn sign(self) -> i64 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::Antisymmetric => -1,
        }
    }
}

/// Field symbols of the bispinor parametrizations.
///
/// `W` and `V` are the extra components `½(1-ρ₃)σᵢσ₂` (symmetric) and
/// `½(1-ρ₃)σ₂` (antisymmetric) that the minimal parametrizations leave out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldName {
    X(Axis),
    Y(Axis),
    Z,
    A(Axis),
    B,
    C,
    W(Axis),
    V,
}

impl fmt::Display for FieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldName::X(a) => write!(f, "X{}", a.index() + 1),
            FieldName::Y(a) => write!(f, "Y{}", a.index() + 1),
            FieldName::Z => write!(f, "Z"),
            FieldName::A(a) => write!(f, "A{}", a.index() + 1),
            FieldName::B => write!(f, "B"),
            FieldName::C => write!(f, "C"),
            FieldName::W(a) => write!(f, "W{}", a.index() + 1),
            FieldName::V => write!(f, "V"),
        }
    }
}

impl Serialize for FieldName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    /// Carries a time derivative.
    Dynamical,
    /// Algebraic, coupled to other fields.
    Constrained,
    /// Decouples from everything else or does not appear at all.
    Absent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldComponentLabel {
    pub name: FieldName,
    pub kind: FieldKind,
}

/// `ψ = (1/√2) Σ_f f·M_f`. The `1/√2` is not multiplied in; `inv_sqrt2`
/// records it so bilinears pick up exactly `½`.
#[derive(Clone, Debug)]
pub struct ParametrizedBispinor {
    pub symmetry: Symmetry,
    pub components: Vec<(FieldName, SymbolicMatrix)>,
    pub inv_sqrt2: bool,
    pub labels: Vec<FieldComponentLabel>,
}

impl ParametrizedBispinor {
    /// Entry `ψ_ab` (without the `1/√2`) as field → coefficient.
    pub fn entry(&self, row: usize, col: usize) -> BTreeMap<FieldName, GaussianRational> {
        let mut out = BTreeMap::new();
        for (name, m) in &self.components {
            let p = m.get(row, col);
            if !p.is_zero() {
                out.insert(*name, p.coefficient(&crate::poly::Monomial::one()));
            }
        }
        out
    }

    /// `ψ ∓ ψᵀ` for the declared symmetry; the zero matrix when consistent.
    pub fn symmetry_defect(&self) -> Vec<(FieldName, SymbolicMatrix)> {
        let s = GaussianRational::from_integer(self.symmetry.sign());
        self.components
            .iter()
            .map(|(n, m)| (*n, m - &m.transpose().scale_exact(&s)))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.symmetry_defect().iter().all(|(_, d)| d.is_zero())
    }

    pub fn field_names(&self) -> Vec<FieldName> {
        self.components.iter().map(|(n, _)| *n).collect()
    }

    pub fn label(&self, name: FieldName) -> Option<FieldKind> {
        self.labels.iter().find(|l| l.name == name).map(|l| l.kind)
    }
}

fn base_components(gens: &Generators, symmetry: Symmetry, augmented: bool) -> Vec<(FieldName, SymbolicMatrix)> {
    let s2 = &gens.sigma[1];
    let lower_proj =
        (&Generators::identity() - &gens.rho[2]).scale_exact(&GaussianRational::real(1, 2));
    let mut out = Vec::new();
    match symmetry {
        Symmetry::Symmetric => {
            for a in Axis::ALL {
                let k = a.index();
                out.push((FieldName::X(a), &(&gens.sigma[k] * &gens.gamma) * s2));
            }
            for a in Axis::ALL {
                let k = a.index();
                out.push((FieldName::Y(a), &(&gens.sigma[k] * &gens.rho[0]) * s2));
            }
            out.push((FieldName::Z, &gens.rho[1] * s2));
            if augmented {
                for a in Axis::ALL {
                    let k = a.index();
                    out.push((FieldName::W(a), &(&lower_proj * &gens.sigma[k]) * s2));
                }
            }
        }
        Symmetry::Antisymmetric => {
            for a in Axis::ALL {
                let k = a.index();
                out.push((FieldName::A(a), &(&gens.sigma[k] * &gens.rho[1]) * s2));
            }
            out.push((FieldName::B, &gens.rho[0] * s2));
            out.push((FieldName::C, &gens.gamma * s2));
            if augmented {
                out.push((FieldName::V, &lower_proj * s2));
            }
        }
    }
    out
}

fn classify(names: &[FieldName], lag: &BilinearLagrangian) -> Vec<FieldComponentLabel> {
    use crate::poly::Kin;
    names
        .iter()
        .map(|&name| {
            let self_coeff = lag.coefficient(name, name);
            let dynamical = self_coeff.terms().any(|(m, _)| m.exponent(Kin::Dt) > 0);
            let coupled = lag
                .terms()
                .any(|((s, u), _)| (*s == name || *u == name) && s != u);
            let kind = if dynamical {
                FieldKind::Dynamical
            } else if coupled {
                FieldKind::Constrained
            } else {
                FieldKind::Absent
            };
            FieldComponentLabel { name, kind }
        })
        .collect()
}

fn build(gens: &Generators, symmetry: Symmetry, augmented: bool) -> ParametrizedBispinor {
    let mut psi = ParametrizedBispinor {
        symmetry,
        components: base_components(gens, symmetry, augmented),
        inv_sqrt2: true,
        labels: Vec::new(),
    };
    let wave = super::generators::build_wave_operator(gens, true);
    let lag = trace_bilinear(&wave, &gens.gamma, &psi);
    psi.labels = classify(&psi.field_names(), &lag);
    psi
}

/// The minimal parametrization: X, Y, Z for spin 1 and A, B, C for spin 0.
pub fn parametrize_bispinor(gens: &Generators, symmetry: Symmetry) -> ParametrizedBispinor {
    build(gens, symmetry, false)
}

/// The minimal parametrization plus the lower-projected components it omits.
pub fn parametrize_bispinor_augmented(gens: &Generators, symmetry: Symmetry) -> ParametrizedBispinor {
    build(gens, symmetry, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::generators::build_generators;

    #[test]
    fn symmetric_parametrization_is_symmetric() {
        let psi = parametrize_bispinor_augmented(&build_generators(), Symmetry::Symmetric);
        assert!(psi.is_consistent());
    }

    #[test]
    fn antisymmetric_parametrization_is_antisymmetric() {
        let psi = parametrize_bispinor_augmented(&build_generators(), Symmetry::Antisymmetric);
        assert!(psi.is_consistent());
    }

    #[test]
    fn spin_one_has_seven_independent_symbols() {
        let psi = parametrize_bispinor(&build_generators(), Symmetry::Symmetric);
        assert_eq!(psi.field_names().len(), 7);
        // and together with the three omitted ones they span all ten symmetric matrices
        let aug = parametrize_bispinor_augmented(&build_generators(), Symmetry::Symmetric);
        assert_eq!(aug.field_names().len(), 10);
    }

    #[test]
    fn field_kinds_follow_from_the_lagrangian() {
        let gens = build_generators();
        let s = parametrize_bispinor_augmented(&gens, Symmetry::Symmetric);
        assert_eq!(s.label(FieldName::X(Axis::X)), Some(FieldKind::Dynamical));
        assert_eq!(s.label(FieldName::Y(Axis::Z)), Some(FieldKind::Constrained));
        assert_eq!(s.label(FieldName::Z), Some(FieldKind::Constrained));
        assert_eq!(s.label(FieldName::W(Axis::Y)), Some(FieldKind::Absent));
        let a = parametrize_bispinor_augmented(&gens, Symmetry::Antisymmetric);
        assert_eq!(a.label(FieldName::C), Some(FieldKind::Dynamical));
        assert_eq!(a.label(FieldName::A(Axis::X)), Some(FieldKind::Constrained));
        assert_eq!(a.label(FieldName::B), Some(FieldKind::Absent));
        assert_eq!(a.label(FieldName::V), Some(FieldKind::Absent));
    }

    #[test]
    fn entries_are_linear_in_fields() {
        let psi = parametrize_bispinor(&build_generators(), Symmetry::Symmetric);
        // ψ₀₀ (upper, upper): X·σ Γ σ₂ gives X₁σ₁σ₂ + X₃σ₃σ₂ entries
        let e = psi.entry(0, 0);
        assert!(e.keys().all(|k| matches!(k, FieldName::X(_))));
        assert!(!e.is_empty());
    }
}
