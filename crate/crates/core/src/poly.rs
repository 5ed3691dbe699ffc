//! Commutative polynomials over ℚ(i) in the kinematic symbols
//! `∂t, ∂₁, ∂₂, ∂₃, r₁, r₂, r₃, M, ω, λ`.
//!
//! Derivative symbols commute with everything here. That is sound only for
//! expressions that are first degree in the derivatives, which is all the
//! spinor layer ever builds; ordering-sensitive products live in the Fock
//! representation instead.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

/// Cartesian axis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }
}

/// Levi-Civita symbol on axis indices.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kin {
    Dt,
    D(Axis),
    R(Axis),
    Mass,
    Omega,
    Lambda,
}

impl Kin {
    pub const COUNT: usize = 10;

    pub fn slot(self) -> usize {
        match self {
            Kin::Dt => 0,
            Kin::D(a) => 1 + a.index(),
            Kin::R(a) => 4 + a.index(),
            Kin::Mass => 7,
            Kin::Omega => 8,
            Kin::Lambda => 9,
        }
    }

    pub fn from_slot(slot: usize) -> Kin {
        match slot {
            0 => Kin::Dt,
            1..=3 => Kin::D(Axis::from_index(slot - 1)),
            4..=6 => Kin::R(Axis::from_index(slot - 4)),
            7 => Kin::Mass,
            8 => Kin::Omega,
            9 => Kin::Lambda,
            _ => panic!("no kinematic symbol in slot {slot}"),
        }
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Kin::Dt | Kin::D(_))
    }

    fn name(self) -> &'static str {
        match self {
            Kin::Dt => "dt",
            Kin::D(Axis::X) => "d1",
            Kin::D(Axis::Y) => "d2",
            Kin::D(Axis::Z) => "d3",
            Kin::R(Axis::X) => "r1",
            Kin::R(Axis::Y) => "r2",
            Kin::R(Axis::Z) => "r3",
            Kin::Mass => "M",
            Kin::Omega => "w",
            Kin::Lambda => "lambda",
        }
    }
}

/// Exponent vector over the ten kinematic symbols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial([u8; Kin::COUNT]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn of(sym: Kin) -> Self {
        let mut m = Self::default();
        m.0[sym.slot()] = 1;
        m
    }

    pub fn exponent(&self, sym: Kin) -> u8 {
        self.0[sym.slot()]
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }

    pub fn derivative_degree(&self) -> u32 {
        (0..4).map(|s| u32::from(self.0[s])).sum()
    }

    fn with_exponent(&self, sym: Kin, e: u8) -> Monomial {
        let mut out = *self;
        out.0[sym.slot()] = e;
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", Kin::from_slot(slot).name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalPolynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl FormalPolynomial {
    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn symbol(sym: Kin) -> Self {
        Self::term(GaussianRational::one(), Monomial::of(sym))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::default();
        p.add_term(m, &c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::default();
        for (m, v) in &self.terms {
            out.add_term(*m, &(v * c));
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Sets `sym = 0`.
    pub fn drop_symbol(&self, sym: Kin) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(sym) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Part of the polynomial that is exactly linear in `sym`, with `sym`
    /// divided out.
    pub fn linear_coefficient(&self, sym: Kin) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(sym) == 1)
                .map(|(m, c)| (m.with_exponent(sym, 0), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `sym`.
    pub fn differentiate(&self, sym: Kin) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let e = m.exponent(sym);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(sym, e - 1),
                &(c * &GaussianRational::from_integer(i64::from(e))),
            );
        }
        out
    }

    pub fn max_derivative_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::derivative_degree).max().unwrap_or(0)
    }
}

impl Zero for FormalPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for FormalPolynomial {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl<'a> Add<&'a FormalPolynomial> for &'a FormalPolynomial {
    type Output = FormalPolynomial;
    fn add(self, rhs: &FormalPolynomial) -> FormalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Add for FormalPolynomial {
    type Output = FormalPolynomial;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Sub<&'a FormalPolynomial> for &'a FormalPolynomial {
    type Output = FormalPolynomial;
    fn sub(self, rhs: &FormalPolynomial) -> FormalPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c.clone());
        }
        out
    }
}

impl Sub for FormalPolynomial {
    type Output = FormalPolynomial;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Neg for FormalPolynomial {
    type Output = FormalPolynomial;
    fn neg(self) -> Self {
        self.scale(&GaussianRational::from_integer(-1))
    }
}

impl<'a> Mul<&'a FormalPolynomial> for &'a FormalPolynomial {
    type Output = FormalPolynomial;
    fn mul(self, rhs: &FormalPolynomial) -> FormalPolynomial {
        let mut out = FormalPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for FormalPolynomial {
    type Output = FormalPolynomial;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let r = FormalPolynomial::symbol(Kin::R(Axis::X));
        let diff = &r - &r;
        assert!(diff.is_zero());
        assert_eq!(diff.len(), 0);
    }

    #[test]
    fn product_and_derivative() {
        let m = FormalPolynomial::symbol(Kin::Mass);
        let r = FormalPolynomial::symbol(Kin::R(Axis::Y));
        let p = &(&m * &r) * &r;
        let d = p.differentiate(Kin::R(Axis::Y));
        assert_eq!(d, (&m * &r).scale(&GaussianRational::from_integer(2)));
        assert_eq!(p.to_string(), "1*r2^2*M");
    }

    #[test]
    fn linear_coefficient_extracts_omega_part() {
        let w = FormalPolynomial::symbol(Kin::Omega);
        let m = FormalPolynomial::symbol(Kin::Mass);
        let p = &(&w * &m) + &m;
        assert_eq!(p.linear_coefficient(Kin::Omega), m);
        assert_eq!(p.drop_symbol(Kin::Omega), m);
    }
}
