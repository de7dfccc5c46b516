use qutrit_anneal::analysis::{
    compare_schedules, scaling_scan, slope_at_zero, three_qutrit_demo, three_qutrit_memory, two_qutrit_memory, Jobs,
};
use qutrit_anneal::hamiltonian::{build_help, build_memory};
use qutrit_anneal::theory::{a1_gamma_slope, a3_gamma_slope};
use qutrit_anneal::{AnnealSpec, Pattern};

fn pat(v: &[i64]) -> Pattern {
    Pattern::from_values(v).unwrap()
}

#[test]
fn slopes_at_the_canonical_point() {
    let base = AnnealSpec::new(two_qutrit_memory());
    let s1 = slope_at_zero(&base.clone().with_probe(pat(&[0, 1]), 0.0), &pat(&[0, 1])).unwrap();
    assert!((s1.value / a1_gamma_slope(2.0, 300.0) - 1.0).abs() < 0.3, "{s1:?}");
    assert!(s1.richardson_error < 0.05 * s1.value.abs());
    let s3 = slope_at_zero(&base.with_probe(pat(&[-1, -1]), 0.0), &pat(&[-1, -1])).unwrap();
    assert!((s3.value / a3_gamma_slope(2.0, 300.0) - 1.0).abs() < 0.3, "{s3:?}");
}

#[test]
fn hinted_pattern_slopes_are_never_negative() {
    let base = AnnealSpec::new(two_qutrit_memory()).with_total_time(60.0);
    for v in [[0, 1], [1, 0], [-1, -1], [1, 1], [0, 0]] {
        let p = pat(&v);
        let s = slope_at_zero(&base.clone().with_probe(p.clone(), 0.0), &p).unwrap();
        assert!(s.value >= -1e-6, "{p}: {s:?}");
    }
}

#[test]
fn time_exponent_at_fixed_field() {
    let base = AnnealSpec::new(two_qutrit_memory());
    let p = pat(&[-1, -1]);
    let fit = scaling_scan(&base, &p, &[2.0], &[100.0, 200.0, 300.0, 400.0], Jobs::default()).unwrap();
    assert!((fit.exponent - 2.0 / 3.0).abs() <= 0.1, "{fit:?}");
    let shifted = scaling_scan(&base, &p, &[2.0], &[150.0, 200.0, 250.0, 300.0, 350.0], Jobs::default()).unwrap();
    assert!(
        (fit.exponent - shifted.exponent).abs() < 0.05,
        "{} vs {}",
        fit.exponent,
        shifted.exponent
    );
}

#[test]
fn switched_schedule_equalizes() {
    let cmp = compare_schedules(
        &two_qutrit_memory(),
        &pat(&[-1, -1]),
        2.0,
        300.0,
        &[0.0, 0.01],
        Jobs::default(),
    )
    .unwrap();
    assert!(cmp.switched_spread < cmp.plain_spread);
    assert_eq!(cmp.crossover_gamma, 0.0);
    assert!(cmp.plain.normalization_error() < 1e-9 && cmp.switched.normalization_error() < 1e-9);
}

#[test]
fn three_qutrit_demo_against_ground_state_oracle() {
    let memory = three_qutrit_memory();
    let mut h = build_memory(&memory).unwrap();
    h.add_scaled(1.0, &build_help(&memory).unwrap());
    let (vals, vecs) = h.eigh().unwrap();
    assert!(vals[1] - vals[0] > 0.5);
    for p in memory.patterns() {
        assert!((vecs[(p.index(), 0)].norm_sqr() - 0.2).abs() < 1e-12);
    }

    let demo = three_qutrit_demo(&[0.0, 0.05, 0.2], Jobs::default()).unwrap();
    let at0 = &demo.switched.full[0].1;
    let plain0 = &demo.plain.full[0].1;
    for p in memory.patterns() {
        assert!(at0[p.index()] > 0.10, "{p}: {}", at0[p.index()]);
    }
    let captured = |probs: &Vec<f64>| memory.patterns().iter().map(|p| probs[p.index()]).sum::<f64>();
    assert!(captured(at0) > 0.9);
    assert!(captured(plain0) > 0.9);
    let up = demo.switched.series(&pat(&[1, 1, 1]));
    assert!(up.windows(2).all(|w| w[1].1 >= w[0].1));
}
