//! Closed-form levels of the spin-S Galilean oscillator.
//!
//! In units of ω the levels are
//!
//! ```text
//! E/ω = 2n + ((ℓ+S)(ℓ+S+1) - j(j+1)) / 2S,   j = |ℓ-S|, …, ℓ+S
//! ```
//!
//! which is `2n + ℓ - (1/S)⟨S·L⟩`. A spin-orbit strength `λ/S` in place of
//! `1/S` gives [`lambda_energy`]; spin 0 is the bare shifted ladder `2n + ℓ`.
//! Everything here is exact rational arithmetic.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("j = {two_j}/2 is not reachable from l = {l} and S = {two_s}/2")]
    InvalidJ { l: u32, two_j: u32, two_s: u32 },
    #[error("the j = l - 1/2 branch needs l >= 1")]
    MinusBranchAtZeroL,
    #[error("energy cutoff must be nonnegative, got {0}")]
    NegativeCutoff(Rational64),
    #[error("csv export failed: {0}")]
    Csv(String),
}

/// Exact rational serialized as `{num, den}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: i64,
    pub den: i64,
}

impl From<Rational64> for ExactRational {
    fn from(r: Rational64) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<ExactRational> for Rational64 {
    fn from(r: ExactRational) -> Self {
        Rational64::new(r.num, r.den)
    }
}

pub fn to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Whether `j` can couple `ℓ` and `S`.
pub fn j_allowed(l: u32, two_j: u32, two_s: u32) -> bool {
    let two_l = 2 * l;
    two_j >= two_l.abs_diff(two_s) && two_j <= two_l + two_s && (two_j + two_s) % 2 == 0
}

fn check_j(l: u32, two_j: u32, two_s: u32) -> Result<(), SpectrumError> {
    if j_allowed(l, two_j, two_s) {
        Ok(())
    } else {
        Err(SpectrumError::InvalidJ { l, two_j, two_s })
    }
}

/// `⟨S·L⟩ = ½[j(j+1) - ℓ(ℓ+1) - S(S+1)]`.
pub fn spin_orbit_value(l: u32, two_j: u32, two_s: u32) -> Result<Rational64, SpectrumError> {
    check_j(l, two_j, two_s)?;
    let (tj, ts, l) = (i64::from(two_j), i64::from(two_s), i64::from(l));
    Ok(Rational64::new(tj * (tj + 2) - 4 * l * (l + 1) - ts * (ts + 2), 8))
}

/// `E/ω` of level `(n, ℓ, j)` at spin `S = two_s/2`.
pub fn closed_form_energy(n: u32, l: u32, two_j: u32, two_s: u32) -> Result<Rational64, SpectrumError> {
    check_j(l, two_j, two_s)?;
    let ladder = Rational64::from_integer(i64::from(2 * n));
    if two_s == 0 {
        return Ok(ladder + i64::from(l));
    }
    // (ℓ+S)(ℓ+S+1) = L(L+2)/4 and j(j+1) = J(J+2)/4 with L = 2ℓ+2S, J = 2j
    let big_l = i64::from(2 * l + two_s);
    let tj = i64::from(two_j);
    let bracket = Rational64::new(big_l * (big_l + 2) - tj * (tj + 2), 4 * i64::from(two_s));
    Ok(ladder + bracket)
}

/// `E/ω = 2n + ℓ - (λ/S)⟨S·L⟩`.
pub fn lambda_energy(n: u32, l: u32, two_j: u32, two_s: u32, lambda: Rational64) -> Result<Rational64, SpectrumError> {
    check_j(l, two_j, two_s)?;
    let base = Rational64::from_integer(i64::from(2 * n + l));
    if two_s == 0 {
        return Ok(base);
    }
    let so = spin_orbit_value(l, two_j, two_s)?;
    Ok(base - lambda * so * Rational64::new(2, i64::from(two_s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinHalfBranch {
    /// `j = ℓ + ½`
    Plus,
    /// `j = ℓ - ½`
    Minus,
}

/// The two spin-½ branches: `2n` for `j = ℓ+½` and `2n + 2ℓ + 1` for `j = ℓ-½`.
pub fn spin_half_special(n: u32, l: u32, branch: SpinHalfBranch) -> Result<Rational64, SpectrumError> {
    match branch {
        SpinHalfBranch::Plus => Ok(Rational64::from_integer(i64::from(2 * n))),
        SpinHalfBranch::Minus if l == 0 => Err(SpectrumError::MinusBranchAtZeroL),
        SpinHalfBranch::Minus => Ok(Rational64::from_integer(i64::from(2 * n + 2 * l + 1))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumLevel {
    pub n: u32,
    pub l: u32,
    pub two_j: u32,
    pub two_s: u32,
    pub energy_over_omega: Rational64,
    pub multiplicity: u32,
}

impl SpectrumLevel {
    pub fn new(n: u32, l: u32, two_j: u32, two_s: u32) -> Result<Self, SpectrumError> {
        Ok(Self {
            n,
            l,
            two_j,
            two_s,
            energy_over_omega: closed_form_energy(n, l, two_j, two_s)?,
            multiplicity: two_j + 1,
        })
    }
}

impl Serialize for SpectrumLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SpectrumLevel", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("two_j", &self.two_j)?;
        st.serialize_field("two_s", &self.two_s)?;
        st.serialize_field("energy", &ExactRational::from(self.energy_over_omega))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.end()
    }
}

/// One CSV record of a level table.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct LevelCsvRow {
    pub n: u32,
    pub l: u32,
    pub two_j: u32,
    pub two_s: u32,
    pub energy_num: i64,
    pub energy_den: i64,
    pub multiplicity: u32,
}

impl From<&SpectrumLevel> for LevelCsvRow {
    fn from(l: &SpectrumLevel) -> Self {
        Self {
            n: l.n,
            l: l.l,
            two_j: l.two_j,
            two_s: l.two_s,
            energy_num: *l.energy_over_omega.numer(),
            energy_den: *l.energy_over_omega.denom(),
            multiplicity: l.multiplicity,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelTable {
    pub two_s: u32,
    pub e_max: Rational64,
    pub l_max: u32,
    /// Largest `n` admitted by the energy cutoff.
    pub n_max: u32,
    pub rows: Vec<SpectrumLevel>,
    /// Energy → summed multiplicity over `rows`.
    pub aggregate: BTreeMap<Rational64, u64>,
}

impl LevelTable {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), SpectrumError> {
        let mut wtr = csv::Writer::from_writer(w);
        for row in &self.rows {
            wtr.serialize(LevelCsvRow::from(row))
                .map_err(|e| SpectrumError::Csv(e.to_string()))?;
        }
        wtr.flush().map_err(|e| SpectrumError::Csv(e.to_string()))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.aggregate.values().sum()
    }

    pub fn rows_at(&self, energy: Rational64) -> impl Iterator<Item = &SpectrumLevel> {
        self.rows.iter().filter(move |r| r.energy_over_omega == energy)
    }
}

/// Every `(n, ℓ ≤ l_max, j)` with `E/ω ≤ e_max`, sorted by `(E, ℓ, j, n)`.
pub fn enumerate_levels(two_s: u32, e_max: Rational64, l_max: u32) -> Result<LevelTable, SpectrumError> {
    if e_max < Rational64::zero() {
        return Err(SpectrumError::NegativeCutoff(e_max));
    }
    // E ≥ 2n because the spin-orbit bracket is nonnegative
    let n_max = (e_max / 2).floor().to_integer() as u32;
    let mut rows = Vec::new();
    for l in 0..=l_max {
        let two_l = 2 * l;
        let mut two_j = two_l.abs_diff(two_s);
        while two_j <= two_l + two_s {
            for n in 0..=n_max {
                let level = SpectrumLevel::new(n, l, two_j, two_s)?;
                if level.energy_over_omega <= e_max {
                    rows.push(level);
                }
            }
            two_j += 2;
        }
    }
    rows.sort_by(|a, b| {
        a.energy_over_omega
            .cmp(&b.energy_over_omega)
            .then(a.l.cmp(&b.l))
            .then(a.two_j.cmp(&b.two_j))
            .then(a.n.cmp(&b.n))
    });
    let mut aggregate = BTreeMap::new();
    for r in &rows {
        *aggregate.entry(r.energy_over_omega).or_insert(0u64) += u64::from(r.multiplicity);
    }
    Ok(LevelTable {
        two_s,
        e_max,
        l_max,
        n_max,
        rows,
        aggregate,
    })
}

/// Zero-energy accounting within an `ℓ` cutoff.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroEnergyReport {
    pub two_s: u32,
    pub l_max: u32,
    /// Degeneracy of the `ℓ = 0` zero-energy level.
    pub l0_count: u64,
    /// Every zero-energy level up to `l_max`.
    pub family: Vec<SpectrumLevel>,
    pub total_within_cutoff: u64,
}

pub fn zero_energy_report(two_s: u32, l_max: u32) -> Result<ZeroEnergyReport, SpectrumError> {
    let table = enumerate_levels(two_s, Rational64::zero(), l_max)?;
    let family: Vec<SpectrumLevel> = table.rows.clone();
    let l0_count = family.iter().filter(|r| r.l == 0).map(|r| u64::from(r.multiplicity)).sum();
    Ok(ZeroEnergyReport {
        two_s,
        l_max,
        l0_count,
        total_within_cutoff: table.total_multiplicity(),
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_energy(1, 2, 5, 1), Ok(r(2)));
        assert_eq!(closed_form_energy(1, 2, 3, 1), Ok(r(7)));
        assert_eq!(closed_form_energy(0, 1, 0, 2), Ok(r(3)));
        assert_eq!(closed_form_energy(3, 4, 8, 0), Ok(r(10)));
    }

    #[test]
    fn invalid_j_rejected() {
        assert!(closed_form_energy(0, 1, 5, 1).is_err());
        assert!(closed_form_energy(0, 1, 2, 1).is_err());
        assert!(closed_form_energy(0, 2, 2, 0).is_err());
    }

    #[test]
    fn spin_half_branches() {
        assert_eq!(spin_half_special(3, 0, SpinHalfBranch::Plus), Ok(r(6)));
        assert_eq!(spin_half_special(0, 1, SpinHalfBranch::Minus), Ok(r(3)));
        assert_eq!(spin_half_special(0, 0, SpinHalfBranch::Minus), Err(SpectrumError::MinusBranchAtZeroL));
        for n in 0..=6 {
            for l in 0..=6 {
                assert_eq!(spin_half_special(n, l, SpinHalfBranch::Plus).unwrap(), closed_form_energy(n, l, 2 * l + 1, 1).unwrap());
                if l > 0 {
                    assert_eq!(spin_half_special(n, l, SpinHalfBranch::Minus).unwrap(), closed_form_energy(n, l, 2 * l - 1, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_energy(0, 1, 0, 2, r(0)), Ok(r(1)));
        assert_eq!(lambda_energy(0, 1, 2, 2, r(0)), Ok(r(1)));
        assert_eq!(lambda_energy(0, 1, 0, 2, Rational64::new(1, 2)), Ok(r(2)));
    }

    #[test]
    fn ground_state_of_spin_one() {
        let t = enumerate_levels(2, r(0), 0).unwrap();
        assert_eq!(t.rows.len(), 1);
        let row = &t.rows[0];
        assert_eq!((row.n, row.l, row.two_j, row.multiplicity), (0, 0, 2, 3));
    }

    #[test]
    fn zero_energy_family_for_spin_one() {
        let t = enumerate_levels(2, r(0), 5).unwrap();
        assert_eq!(t.rows.len(), 6);
        for (l, row) in t.rows.iter().enumerate() {
            assert_eq!((row.n, row.l, row.two_j), (0, l as u32, 2 * l as u32 + 2));
        }
    }

    #[test]
    fn spin_zero_table() {
        let t = enumerate_levels(0, r(2), 2).unwrap();
        let got: Vec<(u32, u32, Rational64)> = t.rows.iter().map(|x| (x.n, x.l, x.energy_over_omega)).collect();
        assert_eq!(got, vec![(0, 0, r(0)), (0, 1, r(1)), (1, 0, r(2)), (0, 2, r(2))]);
    }

    #[test]
    fn zero_energy_report_counts() {
        let rep = zero_energy_report(3, 4).unwrap();
        assert_eq!(rep.l0_count, 4);
        assert_eq!(rep.family.len(), 5);
        // Σ_{ℓ ≤ 4} (2(ℓ + 3/2) + 1)
        assert_eq!(rep.total_within_cutoff, (0..=4).map(|l| 2 * l + 4).sum::<u64>());
    }

    #[test]
    fn negative_cutoff_rejected() {
        assert!(matches!(enumerate_levels(1, r(-1), 2), Err(SpectrumError::NegativeCutoff(_))));
    }

    #[test]
    fn csv_columns() {
        let t = enumerate_levels(1, r(1), 1).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("n,l,two_j,two_s,energy_num,energy_den,multiplicity\n"));
    }

    #[test]
    fn positivity_exhaustive() {
        for two_s in 0..=24u32 {
            for l in 0..=12u32 {
                for two_j in 0..=(2 * l + two_s) {
                    if j_allowed(l, two_j, two_s) {
                        assert!(closed_form_energy(0, l, two_j, two_s).unwrap() >= r(0));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn stretched_state_costs_only_the_radial_ladder(n in 0u32..50, l in 0u32..30, two_s in 1u32..30) {
            prop_assert_eq!(closed_form_energy(n, l, 2 * l + two_s, two_s).unwrap(), r(2 * i64::from(n)));
        }

        #[test]
        fn unit_lambda_is_the_closed_form(n in 0u32..20, l in 0u32..15, two_s in 0u32..15, k in 0u32..30) {
            let two_j = (2 * l).abs_diff(two_s) + 2 * k;
            prop_assume!(j_allowed(l, two_j, two_s));
            prop_assert_eq!(lambda_energy(n, l, two_j, two_s, r(1)).unwrap(), closed_form_energy(n, l, two_j, two_s).unwrap());
        }
    }
}
