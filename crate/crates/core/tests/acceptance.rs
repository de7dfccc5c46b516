use qutrit_anneal::analysis::Jobs;
use qutrit_anneal::selftest::{self, CriterionOutcome};

fn report(o: CriterionOutcome) {
    println!("{o}");
    assert!(o.passed, "criterion {} ({}) failed: {}", o.id, o.name, o.detail);
}

#[test]
fn criterion_1_scaling_law() {
    report(selftest::scaling_law(Jobs::default()));
}

#[test]
fn criterion_2_residual_split() {
    report(selftest::residual_split());
}

#[test]
fn criterion_3_hint_slopes() {
    report(selftest::hint_slopes(Jobs::default()));
}

#[test]
fn criterion_4_constant_reconstructions() {
    report(selftest::constants());
}

#[test]
fn criterion_5_degeneracy_structure() {
    report(selftest::degeneracy());
}

#[test]
fn criterion_6_equalization() {
    report(selftest::equalization());
}

#[test]
fn criterion_7_unstored_probe_crossover() {
    report(selftest::unstored_crossover(Jobs::default()));
}

#[test]
fn criterion_8_three_qutrit_capacity() {
    report(selftest::three_qutrit_capacity(Jobs::default()));
}

#[test]
fn criterion_9_numerical_hygiene() {
    report(selftest::numerical_hygiene(Jobs::default()));
}

#[test]
fn tolerances_are_pinned() {
    assert_eq!(selftest::EXPONENT_TOL, 0.1);
    assert_eq!(selftest::PREFACTOR_TARGET, 1.22);
    assert_eq!(selftest::PREFACTOR_REL_TOL, 0.25);
    assert_eq!(selftest::SPLIT_TOL, 1e-3);
    assert_eq!(selftest::SLOPE_REL_TOL, 0.30);
    assert_eq!((selftest::K1_TARGET, selftest::K1_TOL), (0.203, 1e-3));
    assert_eq!((selftest::K3_TARGET, selftest::K3_TOL), (0.53, 1e-2));
    assert_eq!(selftest::LEVEL_TOL, 1e-12);
    assert_eq!(selftest::PERMANENT_TOL, 0.05);
    assert_eq!((selftest::UNSTORED_LOW_GAMMA, selftest::UNSTORED_LOW_MAX), (0.5, 0.1));
    assert_eq!((selftest::UNSTORED_HIGH_GAMMA, selftest::UNSTORED_HIGH_MIN), (1.2, 0.5));
    assert_eq!(selftest::CAPTURE_MIN, 0.9);
    assert_eq!(selftest::NORM_TOL, 1e-9);
    assert_eq!(selftest::DT_HALVING_TOL, 1e-3);
    assert_eq!(selftest::IDENTITY_TOL, 1e-12);
    assert_eq!(selftest::SCALING_H, [0.5, 1.0, 2.0, 4.0]);
    assert_eq!(selftest::SCALING_T, [100.0, 200.0, 300.0, 400.0]);
}
