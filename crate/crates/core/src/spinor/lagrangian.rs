//! Trace-form Lagrangians of the bispinor fields as bilinear forms.
//!
//! A [`BilinearLagrangian`] maps an ordered pair `(starred, unstarred)` of
//! field symbols to a kinematic polynomial. Derivative symbols in that
//! polynomial act on the unstarred field, which is the normal form modulo
//! total derivatives.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::gaussian::GaussianRational;
use crate::poly::{levi_civita, Axis, FormalPolynomial, Kin};
use crate::symbolic::SymbolicMatrix;

use super::bispinor::{parametrize_bispinor, parametrize_bispinor_augmented, FieldName, ParametrizedBispinor, Symmetry};
use super::generators::{build_generators, build_wave_operator};
use super::SpinorError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BilinearLagrangian {
    terms: BTreeMap<(FieldName, FieldName), FormalPolynomial>,
}

impl BilinearLagrangian {
    pub fn terms(&self) -> impl Iterator<Item = (&(FieldName, FieldName), &FormalPolynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, starred: FieldName, unstarred: FieldName) -> FormalPolynomial {
        self.terms
            .get(&(starred, unstarred))
            .cloned()
            .unwrap_or_else(FormalPolynomial::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `c · f*  (∂-acting-on) g`, derivative symbols in `c` acting on `g`.
    pub fn add(&mut self, starred: FieldName, unstarred: FieldName, c: &FormalPolynomial) {
        if c.is_zero() {
            return;
        }
        let key = (starred, unstarred);
        let next = &self.coefficient(starred, unstarred) + c;
        if next.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
    }

    /// `(∂ f*) · c · g` with the derivative on the starred field, folded into
    /// normal form by `(∂u*) c w ≡ -u* c ∂w - u* (∂c) w`.
    ///
    /// `derivative` must be `Kin::Dt` or `Kin::D(_)` and `c` must carry no
    /// further derivatives.
    pub fn add_starred_derivative(
        &mut self,
        starred: FieldName,
        unstarred: FieldName,
        derivative: Kin,
        c: &FormalPolynomial,
    ) -> Result<(), SpinorError> {
        if !derivative.is_derivative() || c.max_derivative_degree() > 0 {
            return Err(SpinorError::NotFirstOrder);
        }
        let minus = GaussianRational::from_integer(-1);
        let moved = (&FormalPolynomial::symbol(derivative) * c).scale(&minus);
        self.add(starred, unstarred, &moved);
        if let Kin::D(axis) = derivative {
            let product_rule = c.differentiate(Kin::R(axis)).scale(&minus);
            self.add(starred, unstarred, &product_rule);
        }
        Ok(())
    }

    pub fn difference(&self, other: &BilinearLagrangian) -> BilinearLagrangian {
        let mut out = self.clone();
        let minus = GaussianRational::from_integer(-1);
        for ((s, u), c) in &other.terms {
            out.add(*s, *u, &c.scale(&minus));
        }
        out
    }

    pub fn drop_symbol(&self, sym: Kin) -> BilinearLagrangian {
        let mut out = BilinearLagrangian::default();
        for ((s, u), c) in &self.terms {
            out.add(*s, *u, &c.drop_symbol(sym));
        }
        out
    }

    /// Terms touching `field` in either slot.
    pub fn involving(&self, field: FieldName) -> Vec<((FieldName, FieldName), FormalPolynomial)> {
        self.terms
            .iter()
            .filter(|((s, u), _)| *s == field || *u == field)
            .map(|(k, c)| (*k, c.clone()))
            .collect()
    }

    /// Plain-text table, one line per `(starred, unstarred)` pair.
    pub fn term_table(&self) -> String {
        let mut out = String::new();
        for ((s, u), c) in &self.terms {
            let _ = writeln!(out, "{s}*\t{u}\t{c}");
        }
        out
    }
}

/// `sign · ½ · Tr(G ψ Γ ψ*)` with ψ* the entrywise conjugate carrying starred fields.
pub fn trace_bilinear(
    wave: &SymbolicMatrix,
    gamma: &SymbolicMatrix,
    psi: &ParametrizedBispinor,
) -> BilinearLagrangian {
    let mut scale = GaussianRational::from_integer(psi.symmetry.sign());
    if psi.inv_sqrt2 {
        scale = &scale * &GaussianRational::real(1, 2);
    }
    let mut lag = BilinearLagrangian::default();
    for (f, mf) in &psi.components {
        let left = &(wave * mf) * gamma;
        for (g, mg) in &psi.components {
            let c = (&left * &mg.conj()).trace().scale(&scale);
            lag.add(*g, *f, &c);
        }
    }
    lag
}

/// Expands `Tr GψΓψ*` (symmetric) or `-Tr GψΓψ*` (antisymmetric) for the
/// minimal parametrization.
pub fn expand_trace_lagrangian(symmetry: Symmetry, with_oscillator: bool) -> BilinearLagrangian {
    let gens = build_generators();
    let wave = build_wave_operator(&gens, with_oscillator);
    trace_bilinear(&wave, &gens.gamma, &parametrize_bispinor(&gens, symmetry))
}

/// The same expansion with the omitted lower-projected components included.
pub fn expand_augmented_lagrangian(symmetry: Symmetry, with_oscillator: bool) -> BilinearLagrangian {
    let gens = build_generators();
    let wave = build_wave_operator(&gens, with_oscillator);
    trace_bilinear(&wave, &gens.gamma, &parametrize_bispinor_augmented(&gens, symmetry))
}

fn sym(k: Kin) -> FormalPolynomial {
    FormalPolynomial::symbol(k)
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

fn m_omega() -> FormalPolynomial {
    &sym(Kin::Mass) * &sym(Kin::Omega)
}

/// Hand transcription of the known spin-1 and spin-0 expansions, written
/// term by term in vector notation. With `with_oscillator = false` the `Mω`
/// terms are omitted.
pub fn reference_expansion(symmetry: Symmetry, with_oscillator: bool) -> BilinearLagrangian {
    let mut l = BilinearLagrangian::default();
    let i_dt = sym(Kin::Dt).scale(&GaussianRational::i());
    let two_m = sym(Kin::Mass).scale(&int(2));
    let mw = m_omega();
    match symmetry {
        Symmetry::Symmetric => {
            for a in Axis::ALL {
                let k = a.index();
                // X*·i∂t X
                l.add(FieldName::X(a), FieldName::X(a), &i_dt);
                // X*·∇Z - Z*∇·X
                l.add(FieldName::X(a), FieldName::Z, &sym(Kin::D(a)));
                l.add(FieldName::Z, FieldName::X(a), &sym(Kin::D(a)).scale(&int(-1)));
                // 2M(Y*·Y)
                l.add(FieldName::Y(a), FieldName::Y(a), &two_m);
                if with_oscillator {
                    // -Mω X*·r Z - Mω Z* r·X
                    let c = (&mw * &sym(Kin::R(a))).scale(&int(-1));
                    l.add(FieldName::X(a), FieldName::Z, &c);
                    l.add(FieldName::Z, FieldName::X(a), &c);
                }
                for b in Axis::ALL {
                    for c in Axis::ALL {
                        let e = levi_civita(k, b.index(), c.index());
                        if e == 0 {
                            continue;
                        }
                        // X*·∇×Y + Y*·∇×X
                        let curl = sym(Kin::D(b)).scale(&int(e));
                        l.add(FieldName::X(a), FieldName::Y(c), &curl);
                        l.add(FieldName::Y(a), FieldName::X(c), &curl);
                        if with_oscillator {
                            // Mω[-X*·r×Y + Y*·r×X]
                            let cross = (&mw * &sym(Kin::R(b))).scale(&int(e));
                            l.add(FieldName::X(a), FieldName::Y(c), &cross.scale(&int(-1)));
                            l.add(FieldName::Y(a), FieldName::X(c), &cross);
                        }
                    }
                }
            }
            // 2M Z*Z
            l.add(FieldName::Z, FieldName::Z, &two_m);
        }
        Symmetry::Antisymmetric => {
            l.add(FieldName::C, FieldName::C, &i_dt);
            l.add(FieldName::B, FieldName::B, &two_m);
            for a in Axis::ALL {
                l.add(FieldName::A(a), FieldName::A(a), &two_m);
                // -A*·∇C + C*∇·A
                l.add(FieldName::A(a), FieldName::C, &sym(Kin::D(a)).scale(&int(-1)));
                l.add(FieldName::C, FieldName::A(a), &sym(Kin::D(a)));
                if with_oscillator {
                    // -Mω[C* r·A + A*·r C]
                    let c = (&mw * &sym(Kin::R(a))).scale(&int(-1));
                    l.add(FieldName::C, FieldName::A(a), &c);
                    l.add(FieldName::A(a), FieldName::C, &c);
                }
            }
        }
    }
    l
}

/// Outcome of comparing the computed expansion against the transcription.
#[derive(Clone, Debug)]
pub struct ExpansionComparison {
    pub symmetry: Symmetry,
    pub with_oscillator: bool,
    pub computed_terms: usize,
    pub residual: BilinearLagrangian,
}

impl ExpansionComparison {
    pub fn matches(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn compare_with_reference(symmetry: Symmetry, with_oscillator: bool) -> ExpansionComparison {
    let computed = expand_trace_lagrangian(symmetry, with_oscillator);
    let residual = computed.difference(&reference_expansion(symmetry, with_oscillator));
    ExpansionComparison {
        symmetry,
        with_oscillator,
        computed_terms: computed.terms().count(),
        residual,
    }
}

/// Terms of the augmented expansion that involve an omitted component.
/// Empty when those components contribute nothing.
pub fn omitted_component_terms(symmetry: Symmetry) -> Vec<((FieldName, FieldName), FormalPolynomial)> {
    let lag = expand_augmented_lagrangian(symmetry, true);
    lag.terms()
        .filter(|((s, u), _)| {
            matches!(s, FieldName::W(_) | FieldName::V) || matches!(u, FieldName::W(_) | FieldName::V)
        })
        .map(|(k, c)| (*k, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_one_expansion_matches_reference() {
        for osc in [false, true] {
            let cmp = compare_with_reference(Symmetry::Symmetric, osc);
            assert!(cmp.matches(), "residual:\n{}", cmp.residual.term_table());
        }
    }

    #[test]
    fn spin_zero_expansion_matches_reference() {
        for osc in [false, true] {
            let cmp = compare_with_reference(Symmetry::Antisymmetric, osc);
            assert!(cmp.matches(), "residual:\n{}", cmp.residual.term_table());
        }
    }

    #[test]
    fn y_mass_term_is_two_m() {
        let l = expand_trace_lagrangian(Symmetry::Symmetric, true);
        for a in Axis::ALL {
            assert_eq!(l.coefficient(FieldName::Y(a), FieldName::Y(a)), sym(Kin::Mass).scale(&int(2)));
        }
    }

    #[test]
    fn spin_zero_oscillator_coupling_is_minus_m_omega() {
        let l = expand_trace_lagrangian(Symmetry::Antisymmetric, true);
        for a in Axis::ALL {
            let c = l.coefficient(FieldName::C, FieldName::A(a)).linear_coefficient(Kin::Omega);
            assert_eq!(c, (&sym(Kin::Mass) * &sym(Kin::R(a))).scale(&int(-1)));
        }
    }

    #[test]
    fn b_only_has_its_mass_term() {
        let l = expand_trace_lagrangian(Symmetry::Antisymmetric, false);
        let b_terms = l.involving(FieldName::B);
        assert_eq!(b_terms.len(), 1);
        assert_eq!(b_terms[0].0, (FieldName::B, FieldName::B));
        assert_eq!(b_terms[0].1, sym(Kin::Mass).scale(&int(2)));
    }

    #[test]
    fn omitted_components_contribute_nothing() {
        assert!(omitted_component_terms(Symmetry::Symmetric).is_empty());
        assert!(omitted_component_terms(Symmetry::Antisymmetric).is_empty());
    }

    #[test]
    fn integration_by_parts_normal_form() {
        // (∇Z*)·X  ≡  -Z* ∇·X
        let mut by_parts = BilinearLagrangian::default();
        let mut direct = BilinearLagrangian::default();
        for a in Axis::ALL {
            by_parts
                .add_starred_derivative(FieldName::Z, FieldName::X(a), Kin::D(a), &FormalPolynomial::integer(1))
                .unwrap();
            direct.add(FieldName::Z, FieldName::X(a), &sym(Kin::D(a)).scale(&int(-1)));
        }
        assert_eq!(by_parts, direct);

        // (∂₁ Z*) r₁ C  ≡  -Z* r₁ ∂₁C - Z* C
        let mut l = BilinearLagrangian::default();
        l.add_starred_derivative(FieldName::Z, FieldName::C, Kin::D(Axis::X), &sym(Kin::R(Axis::X)))
            .unwrap();
        let expect = &(&sym(Kin::D(Axis::X)) * &sym(Kin::R(Axis::X))).scale(&int(-1))
            + &FormalPolynomial::integer(-1);
        assert_eq!(l.coefficient(FieldName::Z, FieldName::C), expect);

        assert!(l
            .add_starred_derivative(FieldName::Z, FieldName::C, Kin::Mass, &FormalPolynomial::integer(1))
            .is_err());
    }

    #[test]
    fn term_table_is_stable() {
        let l = expand_trace_lagrangian(Symmetry::Antisymmetric, true);
        let table = l.term_table();
        assert!(table.contains("C*\tC\t1i*dt") || table.contains("C*\tC\ti*dt"), "{table}");
        assert_eq!(table, expand_trace_lagrangian(Symmetry::Antisymmetric, true).term_table());
    }
}
