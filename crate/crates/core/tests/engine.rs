use galosc_core::fock::{build_basis, oscillator_identity_check};
use galosc_core::multispinor::{
    assemble_and_reduce, assemble_bispinor, assemble_nonminimal, spin_orbit_coefficient, EngineError,
};
use galosc_core::spinor::Symmetry;

#[test]
fn pauli_identity_on_interior() {
    let basis = build_basis(6).unwrap();
    for (m, w) in [(1.0, 1.0), (2.0, 0.5)] {
        let defect = oscillator_identity_check(&basis, m, w).unwrap();
        assert!(defect <= 1e-10, "M={m} ω={w}: {defect}");
    }
}

#[test]
fn minimal_theory_for_low_spins() {
    for two_s in 1..=4 {
        let r = assemble_and_reduce(two_s, 6, 1.0, 1.0).unwrap();
        let report = r.report().unwrap();
        assert!(report.matches(1e-9), "2S={two_s}: {}", report.max_deviation);
        assert!(report.lowest_eigenvalue.abs() < 1e-9);
        assert_eq!(report.field_components, 3 * two_s + 1);
    }
}

#[test]
fn scales_enter_through_omega_only() {
    let r = assemble_and_reduce(2, 6, 2.0, 0.5).unwrap();
    let report = r.report().unwrap();
    assert!(report.matches(1e-9), "{}", report.max_deviation);
    assert!(r.identity_defect() < 1e-10);
}

#[test]
fn one_over_s_law() {
    for two_s in 1..=6 {
        let fit = spin_orbit_coefficient(two_s, 4, 1.0, 1.0, 1.0).unwrap();
        let s = two_s as f64 / 2.0;
        assert!((fit.coefficient * s - 1.0).abs() < 1e-9, "2S={two_s}: {fit:?}");
    }
}

#[test]
fn lambda_scaling_of_the_coefficient() {
    let fit = spin_orbit_coefficient(2, 4, 1.0, 1.0, 0.5).unwrap();
    assert!((fit.coefficient - 0.5).abs() < 1e-9, "{fit:?}");
}

#[test]
fn nonminimal_against_minimal() {
    for two_s in 1..=2 {
        for lambda in [0.0, 0.5, 1.0] {
            let r = assemble_nonminimal(two_s, lambda, 6, 1.0, 1.0).unwrap();
            assert_eq!(r.field_components, 6 * two_s + 4);
            assert!(r.report().unwrap().matches(1e-9));
        }
        let a = assemble_nonminimal(two_s, 1.0, 6, 1.0, 1.0).unwrap();
        let b = assemble_and_reduce(two_s, 6, 1.0, 1.0).unwrap();
        assert!((&a.hamiltonian - &b.hamiltonian).max_abs() <= 1e-10);
    }
}

#[test]
fn bispinor_matches_multispinor_spin_one() {
    let via_lagrangian = assemble_bispinor(Symmetry::Symmetric, 6, 1.0, 1.0).unwrap().report().unwrap();
    let via_engine = assemble_and_reduce(2, 6, 1.0, 1.0).unwrap().report().unwrap();
    assert_eq!(via_lagrangian.sectors.len(), via_engine.sectors.len());
    for (a, b) in via_lagrangian.sectors.iter().zip(&via_engine.sectors) {
        assert_eq!((a.shell, a.l, a.two_j, a.degeneracy), (b.shell, b.l, b.two_j, b.degeneracy));
        assert!((a.eigenvalue - b.eigenvalue).abs() < 1e-9);
    }
}

#[test]
fn invalid_configurations() {
    assert_eq!(assemble_and_reduce(0, 6, 1.0, 1.0).unwrap_err(), EngineError::SpinOutOfRange(0));
    assert_eq!(assemble_and_reduce(1, 3, 1.0, 1.0).unwrap_err(), EngineError::CutoffTooSmall(3));
    assert!(matches!(assemble_and_reduce(1, 6, -1.0, 1.0), Err(EngineError::Fock(_))));
    assert_eq!(
        assemble_nonminimal(1, f64::NAN, 6, 1.0, 1.0).unwrap_err().to_string(),
        "lambda = NaN is not finite"
    );
}
