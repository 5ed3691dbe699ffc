//! Finite-difference eigenvalues of the reduced radial equation.
//!
//! With `u(r) = r R(r)` each `(ℓ, j)` channel obeys
//!
//! ```text
//! -u''/2M + [ℓ(ℓ+1)/2Mr² + ½Mω²r² - 3ω/2 - (ωλ/S)⟨S·L⟩] u = E u
//! ```
//!
//! with `u(0) = u(r_max) = 0`. The 3-point Laplacian gives a real symmetric
//! tridiagonal matrix whose lowest eigenvalues come from Sturm-sequence
//! bisection.

use std::io::Write;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectrum::{j_allowed, lambda_energy, spin_orbit_value, to_f64, SpectrumError};

pub const MIN_POINTS: usize = 200;

#[derive(Debug, Error, PartialEq)]
pub enum RadialError {
    #[error("grid with {0} points is too coarse (minimum {MIN_POINTS})")]
    GridTooCoarse(usize),
    #[error("r_max must be positive and finite, got {0}")]
    InvalidExtent(f64),
    #[error("requested {requested} eigenvalues but at most {limit} are allowed on this grid")]
    TooManyEigenvalues { requested: usize, limit: usize },
    #[error("mass and omega must be positive, got M = {mass}, omega = {omega}")]
    NonPositiveScale { mass: f64, omega: f64 },
    #[error("lambda = {0} is not finite")]
    InvalidLambda(f64),
    #[error("convergence scan needs at least 3 grids with decreasing spacing")]
    ScanGrids,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("csv export failed: {0}")]
    Csv(String),
}

/// Interior nodes `r_i = i h`, `i = 1..=points`, with `h = r_max/(points+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub points: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, points: usize) -> Result<Self, RadialError> {
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(RadialError::InvalidExtent(r_max));
        }
        if points < MIN_POINTS {
            return Err(RadialError::GridTooCoarse(points));
        }
        Ok(Self { r_max, points })
    }

    /// `r_max = 12/√(Mω)` with 2000 points.
    pub fn reference(mass: f64, omega: f64) -> Self {
        Self {
            r_max: 12.0 / (mass * omega).sqrt(),
            points: 2000,
        }
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.points + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialChannel {
    pub l: u32,
    pub two_j: u32,
    pub two_s: u32,
    pub lambda: f64,
    pub mass: f64,
    pub omega: f64,
}

impl RadialChannel {
    pub fn new(l: u32, two_j: u32, two_s: u32, lambda: f64, mass: f64, omega: f64) -> Result<Self, RadialError> {
        if !j_allowed(l, two_j, two_s) {
            return Err(SpectrumError::InvalidJ { l, two_j, two_s }.into());
        }
        if !(mass > 0.0 && omega > 0.0 && mass.is_finite() && omega.is_finite()) {
            return Err(RadialError::NonPositiveScale { mass, omega });
        }
        if !lambda.is_finite() {
            return Err(RadialError::InvalidLambda(lambda));
        }
        Ok(Self {
            l,
            two_j,
            two_s,
            lambda,
            mass,
            omega,
        })
    }

    /// Every allowed `j` for `ℓ ≤ l_max` at `λ`, with `M = ω = 1`.
    pub fn all_up_to(l_max: u32, two_s: u32, lambda: f64) -> Vec<RadialChannel> {
        let mut out = Vec::new();
        for l in 0..=l_max {
            let two_l = 2 * l;
            let mut two_j = two_l.abs_diff(two_s);
            while two_j <= two_l + two_s {
                out.push(RadialChannel {
                    l,
                    two_j,
                    two_s,
                    lambda,
                    mass: 1.0,
                    omega: 1.0,
                });
                two_j += 2;
            }
        }
        out
    }

    /// Constant part of the potential: `-3ω/2 - (ωλ/S)⟨S·L⟩`.
    fn shift(&self) -> f64 {
        let mut c = -1.5 * self.omega;
        if self.two_s > 0 {
            let so = to_f64(spin_orbit_value(self.l, self.two_j, self.two_s).expect("validated channel"));
            c -= self.omega * self.lambda * so * 2.0 / f64::from(self.two_s);
        }
        c
    }

    pub fn potential(&self, r: f64) -> f64 {
        let l = f64::from(self.l);
        l * (l + 1.0) / (2.0 * self.mass * r * r) + 0.5 * self.mass * self.omega * self.omega * r * r + self.shift()
    }

    /// Closed-form energy of radial level `n`, `ω(2n + ℓ - (λ/S)⟨S·L⟩)`.
    pub fn closed_form(&self, n: u32) -> f64 {
        let mut e = f64::from(2 * n + self.l);
        if self.two_s > 0 {
            let so = to_f64(spin_orbit_value(self.l, self.two_j, self.two_s).expect("validated channel"));
            e -= self.lambda * so * 2.0 / f64::from(self.two_s);
        }
        self.omega * e
    }
}

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i]` between `i` and `i+1`.
#[derive(Clone, Debug)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn discretize(channel: &RadialChannel, grid: &RadialGrid) -> Self {
        let h = grid.spacing();
        let kinetic = 1.0 / (2.0 * channel.mass * h * h);
        let diag = (1..=grid.points).map(|i| 2.0 * kinetic + channel.potential(grid.node(i))).collect();
        let off = vec![-kinetic; grid.points - 1];
        Self { diag, off }
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the
    /// `LDLᵀ` pivots of `T - x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - if i == 0 { 0.0 } else { coupling / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin bounds on the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        let tol = 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// The `k_lowest` smallest eigenvalues of the channel on the grid, ascending.
pub fn solve_channel(channel: &RadialChannel, grid: &RadialGrid, k_lowest: usize) -> Result<Vec<f64>, RadialError> {
    if grid.points < MIN_POINTS {
        return Err(RadialError::GridTooCoarse(grid.points));
    }
    let limit = grid.points / 10;
    if k_lowest > limit {
        return Err(RadialError::TooManyEigenvalues {
            requested: k_lowest,
            limit,
        });
    }
    let t = Tridiagonal::discretize(channel, grid);
    Ok((0..k_lowest).map(|k| t.eigenvalue(k)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub points: usize,
    pub h: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceScan {
    pub table: Vec<ConvergencePoint>,
    /// Least-squares slope of `log deviation` against `log h`.
    pub order: f64,
}

/// Deviation of the lowest eigenvalue from the closed form on each grid.
pub fn convergence_scan(channel: &RadialChannel, grids: &[RadialGrid]) -> Result<ConvergenceScan, RadialError> {
    if grids.len() < 3 || grids.windows(2).any(|w| w[1].spacing() >= w[0].spacing()) {
        return Err(RadialError::ScanGrids);
    }
    let exact = channel.closed_form(0);
    let mut table = Vec::with_capacity(grids.len());
    for g in grids {
        let e = solve_channel(channel, g, 1)?[0];
        table.push(ConvergencePoint {
            points: g.points,
            h: g.spacing(),
            deviation: (e - exact).abs(),
        });
    }
    let xs: Vec<f64> = table.iter().map(|p| p.h.ln()).collect();
    let ys: Vec<f64> = table.iter().map(|p| p.deviation.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(ConvergenceScan { table, order: sxy / sxx })
}

/// One radial level in the level-table CSV layout plus the numerical value
/// and its deviation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialCsvRow {
    pub n: u32,
    pub l: u32,
    pub two_j: u32,
    pub two_s: u32,
    pub energy_num: i64,
    pub energy_den: i64,
    pub multiplicity: u32,
    pub radial: f64,
    pub deviation: f64,
}

/// Solves each channel for `k_lowest` levels and writes one row per level.
/// The exact energy column uses `λ` rounded to a nearby rational.
pub fn write_channels_csv<W: Write>(
    channels: &[RadialChannel],
    grid: &RadialGrid,
    k_lowest: usize,
    w: W,
) -> Result<(), RadialError> {
    let mut wtr = csv::Writer::from_writer(w);
    for ch in channels {
        let lambda = Rational64::approximate_float(ch.lambda).ok_or(RadialError::InvalidLambda(ch.lambda))?;
        let values = solve_channel(ch, grid, k_lowest)?;
        for (n, e) in values.into_iter().enumerate() {
            let n = n as u32;
            let exact = lambda_energy(n, ch.l, ch.two_j, ch.two_s, lambda)?;
            wtr.serialize(RadialCsvRow {
                n,
                l: ch.l,
                two_j: ch.two_j,
                two_s: ch.two_s,
                energy_num: *exact.numer(),
                energy_den: *exact.denom(),
                multiplicity: ch.two_j + 1,
                radial: e / ch.omega,
                deviation: (e - ch.closed_form(n)).abs() / ch.omega,
            })
            .map_err(|e| RadialError::Csv(e.to_string()))?;
        }
    }
    wtr.flush().map_err(|e| RadialError::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> RadialGrid {
        RadialGrid::reference(1.0, 1.0)
    }

    #[test]
    fn sturm_count_on_known_matrix() {
        // the 1D Dirichlet Laplacian: eigenvalues 2 - 2cos(kπ/(n+1))
        let n = 50;
        let t = Tridiagonal {
            diag: vec![2.0; n],
            off: vec![-1.0; n - 1],
        };
        for k in [0, 7, 49] {
            let want = 2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((t.eigenvalue(k) - want).abs() < 1e-12, "k={k}");
        }
        assert_eq!(t.count_below(-0.1), 0);
        assert_eq!(t.count_below(4.1), n);
    }

    #[test]
    fn scalar_channel_ladder() {
        let ch = RadialChannel::new(0, 0, 0, 1.0, 1.0, 1.0).unwrap();
        let e = solve_channel(&ch, &reference(), 3).unwrap();
        for (k, want) in [0.0, 2.0, 4.0].iter().enumerate() {
            assert!((e[k] - want).abs() < 1e-4, "{e:?}");
        }
    }

    #[test]
    fn spin_one_j_zero() {
        let ch = RadialChannel::new(1, 0, 2, 1.0, 1.0, 1.0).unwrap();
        let e = solve_channel(&ch, &reference(), 1).unwrap();
        assert!((e[0] - 3.0).abs() < 1e-4);
    }

    #[test]
    fn spin_half_branches() {
        // j = ℓ - ½ gives 2n + 2ℓ + 1, j = ℓ + ½ gives 2n
        let minus = RadialChannel::new(1, 1, 1, 1.0, 1.0, 1.0).unwrap();
        let plus = RadialChannel::new(1, 3, 1, 1.0, 1.0, 1.0).unwrap();
        let em = solve_channel(&minus, &reference(), 3).unwrap();
        let ep = solve_channel(&plus, &reference(), 3).unwrap();
        for k in 0..3 {
            assert!((em[k] - (3.0 + 2.0 * k as f64)).abs() < 1e-4, "{em:?}");
            assert!((ep[k] - 2.0 * k as f64).abs() < 1e-4, "{ep:?}");
        }
    }

    #[test]
    fn second_order_convergence() {
        let ch = RadialChannel::new(0, 0, 0, 1.0, 1.0, 1.0).unwrap();
        let grids: Vec<RadialGrid> = [500, 1000, 2000].iter().map(|&p| RadialGrid::new(12.0, p).unwrap()).collect();
        let scan = convergence_scan(&ch, &grids).unwrap();
        assert!((1.7..=2.3).contains(&scan.order), "{scan:?}");
    }

    #[test]
    fn larger_box_helps_high_l() {
        // Richardson h → 0 limit removes the stencil error, which at a fixed
        // point count is smaller on the shorter box and partly cancels the
        // boundary error
        let ch = RadialChannel::new(4, 8, 0, 1.0, 1.0, 1.0).unwrap();
        let limit = |r_max: f64| {
            let coarse = solve_channel(&ch, &RadialGrid::new(r_max, 2000).unwrap(), 3).unwrap()[2];
            let fine = solve_channel(&ch, &RadialGrid::new(r_max, 4001).unwrap(), 3).unwrap()[2];
            (4.0 * fine - coarse) / 3.0
        };
        let exact = ch.closed_form(2);
        assert!((limit(12.0) - exact).abs() < (limit(6.0) - exact).abs());
        assert!(limit(6.0) > exact);
    }

    #[test]
    fn lambda_affine() {
        let at = |lambda: f64| {
            let ch = RadialChannel::new(2, 2, 2, lambda, 1.0, 1.0).unwrap();
            solve_channel(&ch, &reference(), 3).unwrap()
        };
        let (a, b, c) = (at(0.0), at(0.5), at(1.0));
        for k in 0..3 {
            assert!((b[k] - 0.5 * (a[k] + c[k])).abs() < 1e-4);
        }
    }

    #[test]
    fn rejections() {
        assert_eq!(RadialGrid::new(12.0, 199), Err(RadialError::GridTooCoarse(199)));
        assert!(RadialChannel::new(1, 2, 1, 1.0, 1.0, 1.0).is_err());
        let ch = RadialChannel::new(0, 0, 0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(
            solve_channel(&ch, &RadialGrid::new(12.0, 300).unwrap(), 31),
            Err(RadialError::TooManyEigenvalues { requested: 31, limit: 30 })
        );
    }

    #[test]
    fn csv_has_deviation_column() {
        let ch = RadialChannel::new(0, 1, 1, 1.0, 1.0, 1.0).unwrap();
        let mut buf = Vec::new();
        write_channels_csv(&[ch], &reference(), 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,l,two_j,two_s,energy_num,energy_den,multiplicity,radial,deviation\n"));
        assert_eq!(text.lines().count(), 3);
    }
}
