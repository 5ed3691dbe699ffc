//! Pauli sets, the projector Γ and the first-order Galilean wave operator.

use std::collections::BTreeMap;

use crate::gaussian::GaussianRational;
use crate::poly::{Axis, FormalPolynomial, Kin};
use crate::symbolic::SymbolicMatrix;

/// 2×2 Pauli matrices `τ₁, τ₂, τ₃`.
pub fn pauli(axis: Axis) -> SymbolicMatrix {
    match axis {
        Axis::X => SymbolicMatrix::from_complex_integers(2, &[(0, 0), (1, 0), (1, 0), (0, 0)]),
        Axis::Y => SymbolicMatrix::from_complex_integers(2, &[(0, 0), (0, -1), (0, 1), (0, 0)]),
        Axis::Z => SymbolicMatrix::from_complex_integers(2, &[(1, 0), (0, 0), (0, 0), (-1, 0)]),
    }
}

/// The generator set of the spin-½ Galilean equation on the 4-dim spinor space.
///
/// Spinor index `a = 2·u + s` where `u` is the ρ (upper/lower) slot and `s`
/// the σ slot, so `ρᵢ = τᵢ ⊗ 1` and `σᵢ = 1 ⊗ τᵢ` and indices 0, 1 are the
/// upper components.
#[derive(Clone, Debug)]
pub struct Generators {
    pub sigma: [SymbolicMatrix; 3],
    pub rho: [SymbolicMatrix; 3],
    pub gamma: SymbolicMatrix,
    pub a: SymbolicMatrix,
    pub b: [SymbolicMatrix; 3],
    pub c: SymbolicMatrix,
}

impl Generators {
    pub fn identity() -> SymbolicMatrix {
        SymbolicMatrix::identity(4)
    }

    /// Every generator keyed by its conventional name.
    pub fn by_name(&self) -> BTreeMap<String, SymbolicMatrix> {
        let mut map = BTreeMap::new();
        for k in 0..3 {
            map.insert(format!("sigma{}", k + 1), self.sigma[k].clone());
            map.insert(format!("rho{}", k + 1), self.rho[k].clone());
            map.insert(format!("B{}", k + 1), self.b[k].clone());
        }
        map.insert("Gamma".into(), self.gamma.clone());
        map.insert("A".into(), self.a.clone());
        map.insert("C".into(), self.c.clone());
        map
    }
}

pub fn build_generators() -> Generators {
    let id2 = SymbolicMatrix::identity(2);
    let sigma = Axis::ALL.map(|a| id2.kron(&pauli(a)));
    let rho = Axis::ALL.map(|a| pauli(a).kron(&id2));
    let half = GaussianRational::real(1, 2);
    let id4 = SymbolicMatrix::identity(4);
    let gamma = (&id4 + &rho[2]).scale_exact(&half);
    let a = gamma.clone();
    let b = [0, 1, 2].map(|k| &rho[0] * &sigma[k]);
    let c = (&id4 - &rho[2]).scale(&FormalPolynomial::symbol(Kin::Mass));
    Generators {
        sigma,
        rho,
        gamma,
        a,
        b,
        c,
    }
}

/// `G = A·i∂t + B_k·(1/i)∂_k + C`, optionally with `p → p − iMω r ρ₃`.
///
/// The oscillator term is `B_k ρ₃ · (−iMω r_k)`, with ρ₃ to the right of `B_k`.
pub fn build_wave_operator(gens: &Generators, with_oscillator: bool) -> SymbolicMatrix {
    let i = GaussianRational::i();
    let minus_i = GaussianRational::imag(-1, 1);
    let mut g = gens.a.scale(&FormalPolynomial::symbol(Kin::Dt).scale(&i));
    g = &g + &gens.c;
    for axis in Axis::ALL {
        let k = axis.index();
        let grad = FormalPolynomial::symbol(Kin::D(axis)).scale(&minus_i);
        g = &g + &gens.b[k].scale(&grad);
        if with_oscillator {
            let coupling = (&(&FormalPolynomial::symbol(Kin::Mass) * &FormalPolynomial::symbol(Kin::Omega))
                * &FormalPolynomial::symbol(Kin::R(axis)))
                .scale(&minus_i);
            g = &g + &(&gens.b[k] * &gens.rho[2]).scale(&coupling);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::levi_civita;
    use num_traits::Zero;

    fn delta_plus_eps(set: &[SymbolicMatrix; 3], i: usize, j: usize) -> SymbolicMatrix {
        let mut expect = if i == j {
            SymbolicMatrix::identity(4)
        } else {
            SymbolicMatrix::zeros(4)
        };
        for k in 0..3 {
            let e = levi_civita(i, j, k);
            if e != 0 {
                expect = &expect + &set[k].scale_exact(&GaussianRational::imag(e, 1));
            }
        }
        expect
    }

    #[test]
    fn gamma_is_idempotent_and_equals_a() {
        let g = build_generators();
        assert_eq!(&g.gamma * &g.gamma, g.gamma);
        assert_eq!(g.a, g.gamma);
        let one_minus_rho3 = &SymbolicMatrix::identity(4) - &g.rho[2];
        assert!((&g.gamma * &one_minus_rho3).is_zero());
    }

    #[test]
    fn pauli_sets_commute_with_each_other() {
        let g = build_generators();
        for i in 0..3 {
            for j in 0..3 {
                assert!(g.sigma[i].commutator(&g.rho[j]).is_zero());
            }
        }
    }

    #[test]
    fn pauli_products_close() {
        let g = build_generators();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(&g.sigma[i] * &g.sigma[j], delta_plus_eps(&g.sigma, i, j));
                assert_eq!(&g.rho[i] * &g.rho[j], delta_plus_eps(&g.rho, i, j));
            }
        }
    }

    #[test]
    fn c_is_two_m_on_lower_block() {
        let g = build_generators();
        let two_m = FormalPolynomial::symbol(Kin::Mass).scale(&GaussianRational::from_integer(2));
        for r in 0..4 {
            for c in 0..4 {
                let e = g.c.get(r, c);
                if r == c && r >= 2 {
                    assert_eq!(*e, two_m);
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn free_operator_has_b3_gradient_in_entry_3_1() {
        // 1-based entry (3,1). B₃ = ρ₁σ₃ couples lower index 2 (u=1, s=0) to
        // upper index 0 with +1, so G[2][0] = (1/i)∂₃.
        let g = build_wave_operator(&build_generators(), false);
        let expect = FormalPolynomial::symbol(Kin::D(Axis::Z)).scale(&GaussianRational::imag(-1, 1));
        assert_eq!(*g.get(2, 0), expect);
        // and the (3,1) placement carries the σ₃ sign flip
        assert_eq!(*g.get(3, 1), expect.scale(&GaussianRational::from_integer(-1)));
    }

    #[test]
    fn oscillator_terms_are_m_omega_r_linear() {
        let g = build_wave_operator(&build_generators(), true);
        for r in 0..4 {
            for c in 0..4 {
                for (m, _) in g.get(r, c).terms() {
                    if m.exponent(Kin::Omega) == 0 {
                        continue;
                    }
                    assert_eq!(m.exponent(Kin::Omega), 1);
                    assert_eq!(m.exponent(Kin::Mass), 1);
                    let r_deg: u8 = Axis::ALL.iter().map(|&a| m.exponent(Kin::R(a))).sum();
                    assert_eq!(r_deg, 1);
                    assert_eq!(m.derivative_degree(), 0);
                }
            }
        }
    }

    #[test]
    fn oscillator_vanishes_at_zero_omega() {
        let gens = build_generators();
        let osc = build_wave_operator(&gens, true);
        let free = build_wave_operator(&gens, false);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(osc.get(r, c).drop_symbol(Kin::Omega), *free.get(r, c));
            }
        }
    }
}
