use std::collections::BTreeMap;

use galosc_core::fock::{build_basis, oscillator_identity_check, MAX_CUTOFF};
use galosc_core::multispinor::{
    assemble_and_reduce, assemble_bispinor, assemble_nonminimal, EngineError, Reduction, ReductionReport, Theory,
    MIN_CUTOFF,
};
use galosc_core::radial::{solve_channel, RadialChannel, RadialGrid};
use galosc_core::spectrum::{
    closed_form_energy, enumerate_levels, lambda_energy, spin_half_special, to_f64, zero_energy_report, ExactRational,
    SpinHalfBranch,
};
use galosc_core::spinor::{compare_with_reference, coupling_analysis, omitted_component_terms, Symmetry};
use galosc_core::symbasis::MAX_TWO_S;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use crate::args::{CrosscheckArgs, Format, PhysicsArgs, SpectrumArgs, VerifyArgs};
use crate::report::{
    checks_csv, checks_table, config, decimal, finish_csv, half_integer, Check, CliError, Envelope, Meta, Rendered,
};

const IDENTITY_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-9;
const RADIAL_TOL: f64 = 1e-4;
/// Radial levels compared per channel; the grid error grows with n.
const RADIAL_LEVELS: usize = 3;
const MAX_SPECTRUM_TWO_S: u32 = 64;

fn validate_scales(p: &PhysicsArgs) -> Result<(), CliError> {
    for (name, v) in [("mass", p.mass), ("omega", p.omega)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::Config(format!("{name} must be positive and finite, got {v}")));
        }
    }
    Ok(())
}

fn validate_engine(p: &PhysicsArgs) -> Result<(), CliError> {
    validate_scales(p)?;
    if p.two_s as usize > MAX_TWO_S {
        return Err(CliError::Config(format!("--two-s {} exceeds the engine limit {MAX_TWO_S}", p.two_s)));
    }
    if p.n_max < MIN_CUTOFF || p.n_max > MAX_CUTOFF {
        return Err(CliError::Config(format!("--n-max must lie in {MIN_CUTOFF}..={MAX_CUTOFF}, got {}", p.n_max)));
    }
    Ok(())
}

fn engine_error(e: EngineError) -> CliError {
    match e {
        EngineError::ReductionFailure(_) | EngineError::UnsupportedTerm(_) | EngineError::DimensionMismatch { .. } => {
            CliError::Failure(e.to_string())
        }
        _ => config(e),
    }
}

fn lambda_f64(p: &PhysicsArgs) -> f64 {
    p.lambda.0.to_f64().unwrap_or(f64::NAN)
}

/// The minimal engine at λ = 1, the non-minimal one otherwise, and the
/// spin-0 Lagrangian route at 2S = 0.
fn reduce(p: &PhysicsArgs) -> Result<Reduction, CliError> {
    let two_s = p.two_s as usize;
    let r = if two_s == 0 {
        assemble_bispinor(Symmetry::Antisymmetric, p.n_max, p.mass, p.omega)
    } else if p.lambda.0.is_one() {
        assemble_and_reduce(two_s, p.n_max, p.mass, p.omega)
    } else {
        assemble_nonminimal(two_s, lambda_f64(p), p.n_max, p.mass, p.omega)
    };
    r.map_err(engine_error)
}

fn expected_field_components(theory: Theory, two_s: usize) -> usize {
    match theory {
        Theory::Minimal => 3 * two_s + 1,
        Theory::NonMinimal => 6 * two_s + 4,
        // C, A and B of the antisymmetric bispinor
        Theory::Bispinor => 5,
    }
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Rendered, CliError> {
    let p = &args.physics;
    if p.two_s > MAX_SPECTRUM_TWO_S {
        return Err(CliError::Config(format!("--two-s {} exceeds {MAX_SPECTRUM_TWO_S}", p.two_s)));
    }
    let e_max = args.e_max.0;
    let l_max = match args.l_max {
        Some(l) => l,
        None => e_max.floor().to_integer().max(0) as u32,
    };
    let table = enumerate_levels(p.two_s, e_max, l_max).map_err(config)?;
    let text = match args.output.format.unwrap_or(Format::Table) {
        Format::Json => Envelope {
            meta: Meta {
                e_max: Some(e_max.into()),
                l_max: Some(l_max),
                ..Meta::new(p)
            },
            rows: table.rows.clone(),
            checks: Vec::new(),
        }
        .to_json(),
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf).map_err(|e| CliError::Failure(e.to_string()))?;
            String::from_utf8(buf).map_err(|e| CliError::Failure(e.to_string()))?
        }
        Format::Table => {
            let mut out = format!(
                "2S = {}, E/ω ≤ {}, ℓ ≤ {}\n{:>4} {:>4} {:>6} {:>12} {:>6}\n",
                p.two_s,
                e_max,
                l_max,
                "n",
                "l",
                "j",
                "E/omega",
                "mult"
            );
            for r in &table.rows {
                out.push_str(&format!(
                    "{:>4} {:>4} {:>6} {:>12} {:>6}\n",
                    r.n,
                    r.l,
                    half_integer(r.two_j),
                    decimal(r.energy_over_omega),
                    r.multiplicity
                ));
            }
            out.push_str(&format!("total multiplicity {}\n", table.total_multiplicity()));
            out
        }
    };
    Ok(Rendered { text, passed: true })
}

fn symbolic_checks(checks: &mut Vec<Check>, two_s: u32) -> Result<(), CliError> {
    for (name, sym) in [("lagrangian_spin1", Symmetry::Symmetric), ("lagrangian_spin0", Symmetry::Antisymmetric)] {
        let cmp = compare_with_reference(sym, true);
        let residual_terms = cmp.residual.terms().count();
        checks.push(
            Check::within(name, residual_terms as f64, 0.0)
                .detail(json!({ "computed_terms": cmp.computed_terms, "residual_terms": residual_terms })),
        );
    }
    let omitted = omitted_component_terms(Symmetry::Symmetric).len() + omitted_component_terms(Symmetry::Antisymmetric).len();
    checks.push(Check::within("omitted_components", omitted as f64, 0.0));

    if (1..=8).contains(&two_s) {
        let report = coupling_analysis(two_s as usize).map_err(config)?;
        let n = two_s as usize;
        let total = (n + 1) * (n + 2) * (n + 3) / 6;
        let ok = report.total == total && report.retained == 3 * n + 1 && report.matches_sector_rule();
        checks.push(Check::exact("coupling_counts", ok).detail(json!({
            "total": report.total,
            "retained": report.retained,
            "decoupled": report.decoupled,
        })));
    }
    Ok(())
}

fn spectrum_checks(checks: &mut Vec<Check>, p: &PhysicsArgs, r: &Reduction, report: &ReductionReport) {
    let two_s = p.two_s as usize;
    checks.push(Check::within("effective_hamiltonian_identity", r.identity_defect(), IDENTITY_TOL));
    checks.push(Check::within("rotational_invariance", r.rotational_defect(), IDENTITY_TOL));
    let fields = expected_field_components(r.theory, two_s);
    checks.push(
        Check::exact("field_components", report.field_components == fields)
            .detail(json!({ "found": report.field_components, "expected": fields })),
    );
    checks.push(Check::within("engine_spectrum", report.max_deviation, SPECTRUM_TOL).detail(json!({
        "multiset_deviation": report.multiset_deviation,
        "labeled_sectors": report.sectors.len(),
        "interior_shells": report.interior_shells,
    })));
    let degeneracy_ok = report.sectors.iter().all(|s| s.degeneracy == s.two_j as usize + 1);
    checks.push(Check::exact("sector_degeneracy", degeneracy_ok));
    if p.lambda.0.is_one() {
        checks.push(
            Check::within("ground_energy", report.lowest_eigenvalue.abs(), SPECTRUM_TOL)
                .detail(json!({ "lowest_eigenvalue": report.lowest_eigenvalue })),
        );
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Rendered, CliError> {
    let p = &args.physics;
    validate_engine(p)?;
    let two_s = p.two_s;
    let mut checks = Vec::new();

    let basis = build_basis(p.n_max).map_err(config)?;
    let defect = oscillator_identity_check(&basis, p.mass, p.omega).map_err(config)?;
    checks.push(Check::within("oscillator_identity", defect, IDENTITY_TOL));
    symbolic_checks(&mut checks, two_s)?;

    let r = reduce(p)?;
    let report = r.report().map_err(engine_error)?;
    spectrum_checks(&mut checks, p, &r, &report);

    if two_s > 0 {
        let fit = r.spin_orbit().map_err(engine_error)?;
        let s = f64::from(two_s) / 2.0;
        let expected = lambda_f64(p) * p.omega / s;
        checks.push(
            Check::within("spin_orbit_coefficient", (fit.coefficient - expected).abs(), SPECTRUM_TOL).detail(json!({
                "coefficient": fit.coefficient,
                "expected": expected,
                "coefficient_times_s": fit.coefficient * s,
                "splitting_coefficient": fit.splitting_coefficient,
                "residual": fit.residual,
            })),
        );
    }

    let zero = zero_energy_report(two_s, args.l_max).map_err(config)?;
    let family: Vec<_> = zero.family.iter().map(|l| json!({ "l": l.l, "two_j": l.two_j })).collect();
    checks.push(Check::exact("zero_energy_degeneracy", zero.l0_count == u64::from(two_s) + 1).detail(json!({
        "l0_count": zero.l0_count,
        "l_max": args.l_max,
        "family": family,
        "total_within_cutoff": zero.total_within_cutoff,
    })));

    if two_s == 1 {
        let mut ok = true;
        for n in 0..=10 {
            for l in 0..=10 {
                ok &= spin_half_special(n, l, SpinHalfBranch::Plus).ok() == closed_form_energy(n, l, 2 * l + 1, 1).ok();
                if l > 0 {
                    ok &= spin_half_special(n, l, SpinHalfBranch::Minus).ok() == closed_form_energy(n, l, 2 * l - 1, 1).ok();
                }
            }
        }
        checks.push(Check::exact("spin_half_branches", ok));
    }

    let passed = checks.iter().all(Check::passed);
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => Envelope {
            meta: Meta {
                theory: Some(r.theory),
                ..Meta::new(p)
            },
            rows: report.sectors,
            checks,
        }
        .to_json(),
        Format::Csv => checks_csv(&checks)?,
        Format::Table => checks_table(&checks),
    };
    Ok(Rendered { text, passed })
}

/// One `(n, ℓ, j)` level seen by all three methods, in units of ω.
#[derive(Debug, Serialize)]
pub struct CrossRow {
    pub n: u32,
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_j: Option<u32>,
    pub two_s: u32,
    pub energy: ExactRational,
    pub multiplicity: u32,
    pub engine: f64,
    pub closed_form: f64,
    pub radial: Option<f64>,
    pub engine_deviation: f64,
    pub radial_deviation: Option<f64>,
    pub engine_radial_deviation: Option<f64>,
}

pub fn crosscheck(args: &CrosscheckArgs) -> Result<Rendered, CliError> {
    let p = &args.physics;
    validate_engine(p)?;
    let grid = RadialGrid::new(args.r_max.unwrap_or(12.0 / (p.mass * p.omega).sqrt()), args.points).map_err(config)?;
    let lambda = lambda_f64(p);
    let r = reduce(p)?;
    let report = r.report().map_err(engine_error)?;

    let mut depth: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for s in report.sectors.iter().filter(|s| s.n < RADIAL_LEVELS) {
        let d = depth.entry((s.l, s.two_j)).or_insert(0);
        *d = (*d).max(s.n + 1);
    }
    let mut radial = BTreeMap::new();
    for (&(l, two_j), &k) in &depth {
        let ch = RadialChannel::new(l, two_j, p.two_s, lambda, p.mass, p.omega).map_err(config)?;
        radial.insert((l, two_j), solve_channel(&ch, &grid, k).map_err(config)?);
    }

    let mut rows = Vec::with_capacity(report.sectors.len());
    for s in &report.sectors {
        let n = s.n as u32;
        let exact: Rational64 = lambda_energy(n, s.l, s.two_j, p.two_s, p.lambda.0).map_err(config)?;
        let closed = to_f64(exact);
        let engine = s.eigenvalue / p.omega;
        let rad = radial.get(&(s.l, s.two_j)).and_then(|v: &Vec<f64>| v.get(s.n)).map(|e| e / p.omega);
        // the engine eigenspace may hold several eigenvalues; report the worst
        let engine_deviation = s.deviation / p.omega;
        rows.push(CrossRow {
            n,
            l: s.l,
            two_j: (p.two_s > 0).then_some(s.two_j),
            two_s: p.two_s,
            energy: exact.into(),
            multiplicity: s.two_j + 1,
            engine,
            closed_form: closed,
            radial: rad,
            engine_deviation,
            radial_deviation: rad.map(|e| (e - closed).abs()),
            engine_radial_deviation: rad.map(|e| (engine - e).abs()),
        });
    }
    rows.sort_by_key(|r| (r.l, r.two_j, r.n));

    let max_engine = rows.iter().map(|r| r.engine_deviation).fold(0.0, f64::max).max(report.multiset_deviation / p.omega);
    let max_radial = rows.iter().filter_map(|r| r.radial_deviation).fold(0.0, f64::max);
    let checks = vec![
        Check::within("engine_vs_closed_form", max_engine, SPECTRUM_TOL),
        Check::within("radial_vs_closed_form", max_radial, RADIAL_TOL),
    ];
    let passed = checks.iter().all(Check::passed);

    let text = match args.output.format.unwrap_or(Format::Table) {
        Format::Json => Envelope {
            meta: Meta {
                theory: Some(r.theory),
                r_max: Some(grid.r_max),
                points: Some(grid.points),
                ..Meta::new(p)
            },
            rows,
            checks,
        }
        .to_json(),
        Format::Csv => crosscheck_csv(&rows, p.two_s > 0)?,
        Format::Table => {
            let mut out = String::new();
            let j_head = if p.two_s > 0 { format!("{:>6}", "j") } else { String::new() };
            out.push_str(&format!(
                "{:>3} {:>3}{} {:>10} {:>16} {:>16} {:>10} {:>10}\n",
                "n", "l", j_head, "closed", "engine", "radial", "d_engine", "d_radial"
            ));
            for r in &rows {
                let j = r.two_j.map(|t| format!("{:>6}", half_integer(t))).unwrap_or_default();
                out.push_str(&format!(
                    "{:>3} {:>3}{} {:>10} {:>16.10} {:>16} {:>10.2e} {:>10}\n",
                    r.n,
                    r.l,
                    j,
                    decimal(r.energy.into()),
                    r.engine,
                    r.radial.map(|e| format!("{e:.10}")).unwrap_or_else(|| "-".into()),
                    r.engine_deviation,
                    r.radial_deviation.map(|e| format!("{e:.2e}")).unwrap_or_else(|| "-".into())
                ));
            }
            out.push('\n');
            out.push_str(&checks_table(&checks));
            out
        }
    };
    Ok(Rendered { text, passed })
}

fn crosscheck_csv(rows: &[CrossRow], with_j: bool) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n", "l"];
    if with_j {
        header.push("two_j");
    }
    header.extend([
        "two_s",
        "energy_num",
        "energy_den",
        "multiplicity",
        "engine",
        "closed_form",
        "radial",
        "engine_deviation",
        "radial_deviation",
        "engine_radial_deviation",
    ]);
    let err = |e: csv::Error| CliError::Failure(e.to_string());
    let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
    w.write_record(&header).map_err(err)?;
    for r in rows {
        let mut rec = vec![r.n.to_string(), r.l.to_string()];
        if let Some(t) = r.two_j {
            rec.push(t.to_string());
        }
        rec.extend([
            r.two_s.to_string(),
            r.energy.num.to_string(),
            r.energy.den.to_string(),
            r.multiplicity.to_string(),
            format!("{:e}", r.engine),
            format!("{:e}", r.closed_form),
            opt(r.radial),
            format!("{:e}", r.engine_deviation),
            opt(r.radial_deviation),
            opt(r.engine_radial_deviation),
        ]);
        w.write_record(&rec).map_err(err)?;
    }
    finish_csv(w)
}
