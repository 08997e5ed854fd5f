mod common;

use fringelab_core::*;
use std::f64::consts::PI;

struct Analysis {
    config: TwoModeConfig,
    prop: Propagator<f64>,
    trace: AmplitudeTrace<f64>,
}

fn analyze(n: u32, two_m_psi: i32, two_m: i32) -> Analysis {
    let config = TwoModeConfig::from_doubled(n, two_m_psi, two_m).unwrap();
    let prop = Propagator::<f64>::new(config).unwrap();
    let grid = PhaseGrid::open_uniform(0.0, PI, fringe::DEFAULT_FRINGE_GRID).unwrap();
    let trace = AmplitudeTrace::compute(prop.spectral(), grid).unwrap();
    Analysis {
        config,
        prop,
        trace,
    }
}

fn zeros_of(a: &Analysis) -> Vec<f64> {
    find_probability_zeros(a.prop.spectral(), &a.trace, (1e-9, PI - 1e-9)).unwrap()
}

#[test]
fn golden_zero_positions() {
    let cases: [(u32, i32, i32, &[f64]); 4] = [
        (8, 0, 4, &[1.183, 1.958]),
        (16, 0, 8, &[0.931, 1.362, 1.780, 2.211]),
        (8, 4, 4, &[0.597, 1.397]),
        (16, 8, 8, &[0.321, 0.740, 1.175, 1.644]),
    ];
    for (n, two_m_psi, two_m, expected) in cases {
        let a = analyze(n, two_m_psi, two_m);
        let zeros = zeros_of(&a);
        assert_eq!(zeros.len(), expected.len(), "zero count N={n}");
        for (&z, &e) in zeros.iter().zip(expected) {
            assert!(
                (z - e).abs() < 1e-3,
                "N={n} {two_m_psi}/{two_m}: zero {z} vs reference {e}"
            );
        }
    }
}

#[test]
fn zeros_are_probability_zeros() {
    let a = analyze(16, 0, 8);
    let zeros = zeros_of(&a);
    let peak = a
        .trace
        .realized()
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v * v));
    for &z in &zeros {
        assert!(a.prop.probability(z) < 1e-12 * peak);
    }
}

#[test]
fn widths_to_j3_reference_values() {
    // The pi/width map on the published 3-decimal widths.
    let (w, j3) = fringe_widths_and_j3(&[0.0f64, 0.775]);
    assert_eq!(w, vec![0.775]);
    assert!((j3[0] - 4.05).abs() < 5e-3);

    let zeros = [0.0f64, 0.431, 0.849, 1.280];
    let (w, j3) = fringe_widths_and_j3(&zeros);
    assert_eq!(w.len(), 3);
    for (&got, expect) in j3.iter().zip([7.29, 7.52, 7.29]) {
        assert!((got - expect).abs() < 5e-3, "{got} vs {expect}");
    }

    let zeros = [0.0f64, 0.419, 0.854, 1.323];
    let (_, j3) = fringe_widths_and_j3(&zeros);
    for (&got, expect) in j3.iter().zip([7.50, 7.22, 6.70]) {
        assert!((got - expect).abs() < 5e-3, "{got} vs {expect}");
    }

    let (w, j3) = fringe_widths_and_j3(&[1.3f64]);
    assert!(w.is_empty() && j3.is_empty());
}

#[test]
fn equal_case_prediction_table() {
    let pred = equal_case_predictions::<f64>(6).unwrap();
    assert!((pred.interior_width - 2.0 * PI / 7.0).abs() < 1e-14);
    assert!((pred.edge_width - 3.0 * PI / 7.0).abs() < 1e-14);

    let pred = equal_case_predictions::<f64>(8).unwrap();
    assert!((pred.minima[0] - PI / 6.0).abs() < 1e-14);
    assert_eq!(pred.count, 8);
    assert_eq!(pred.minima.len(), 4);

    assert!(equal_case_predictions::<f64>(7).is_err());
    assert!(equal_case_predictions::<f64>(0).is_err());
}

#[test]
fn equal_case_exact_zero_counts_and_spacing() {
    for n in [6u32, 8, 16] {
        let config = TwoModeConfig::from_doubled(n, 0, 0).unwrap();
        let prop = Propagator::<f64>::new(config).unwrap();
        let grid = PhaseGrid::open_uniform(-PI, PI, 8192).unwrap();
        let trace = AmplitudeTrace::compute(prop.spectral(), grid).unwrap();
        let zeros =
            find_probability_zeros(prop.spectral(), &trace, (-PI + 1e-9, PI - 1e-9)).unwrap();
        assert_eq!(zeros.len(), n as usize, "zero count over (-pi, pi) N={n}");

        let pred = equal_case_predictions::<f64>(n).unwrap();
        let first_positive = zeros.iter().copied().find(|&z| z > 0.0).unwrap();
        let rel = (first_positive - pred.minima[0]).abs() / pred.minima[0];
        assert!(
            rel < 0.025,
            "first minimum N={n}: {first_positive} vs {}",
            pred.minima[0]
        );

        if n == 16 {
            let positive: Vec<f64> = zeros.iter().copied().filter(|&z| z > 0.0).collect();
            for w in positive.windows(2) {
                let rel = ((w[1] - w[0]) - pred.interior_width).abs() / pred.interior_width;
                assert!(rel < 0.02, "interior spacing {w:?}");
            }
        }
    }
}

#[test]
fn equal_case_amplitude_is_legendre_polynomial() {
    // Independent closed form: the balanced amplitude equals the Legendre
    // polynomial P_{N/2}(cos phi) up to the trace's sign convention.
    for n in [2u32, 8, 16] {
        let a = analyze(n, 0, 0);
        let sign =
            a.trace.realized_at(a.prop.spectral(), 0.3) / common::legendre_p(n / 2, 0.3f64.cos());
        assert!((sign.abs() - 1.0).abs() < 1e-9);
        for phi in [0.15, 0.8, 1.57, 2.4, 3.0] {
            let got = a.trace.realized_at(a.prop.spectral(), phi);
            let oracle = sign * common::legendre_p(n / 2, phi.cos());
            assert!((got - oracle).abs() < 1e-10, "N={n} phi={phi}");
        }
    }
}

#[test]
fn report_flags_j3_estimates_beyond_classical_maximum() {
    let a = analyze(8, 0, 4);
    let params = ClassicalParams::from_config(&a.config);
    let report = compare_report(
        &a.config,
        a.prop.spectral(),
        &a.trace,
        &params,
        (1e-9, PI - 1e-9),
    )
    .unwrap();
    assert_eq!(report.matches.len(), 1);
    assert!(report.matches[0].exceeds_max);
    assert!(report.matches[0].matched_phi.is_none());
    assert!((report.j3_exp[0] - 4.05).abs() < 5e-3);

    // Sixteen photons: outer fringes match near their centers, the middle
    // one exceeds the classical bound.
    let a = analyze(16, 0, 8);
    let params = ClassicalParams::from_config(&a.config);
    let report = compare_report(
        &a.config,
        a.prop.spectral(),
        &a.trace,
        &params,
        (1e-9, PI - 1e-9),
    )
    .unwrap();
    assert_eq!(report.matches.len(), 3);
    assert!(!report.matches[0].exceeds_max);
    assert!(report.matches[1].exceeds_max);
    assert!(!report.matches[2].exceeds_max);
    for m in [&report.matches[0], &report.matches[2]] {
        let phi = m.matched_phi.unwrap();
        // The solved phase reproduces the target J3 and sits inside the
        // fringe, close to its center.
        let j3 = match classical_j3(&params, phi).unwrap() {
            ClassicalJ3::Propagating(v) => v,
            _ => panic!(),
        };
        assert!((j3 - m.j3_exp).abs() < 1e-8);
        assert!(m.offset.unwrap().abs() < 0.05);
    }
}

#[test]
fn report_solves_reference_j3_values() {
    // Solving the classical curve for the published |J3| estimates lands on
    // the published phases.
    let params = ClassicalParams::<f64>::new(8, 2.0, 2.0);
    let support = classical_support(&params);
    let phi = solve_j3_match(&params, &support, 1.0, 3.93).unwrap();
    assert!((phi - 0.713).abs() < 1e-3, "{phi}");

    let params = ClassicalParams::<f64>::new(16, 4.0, 4.0);
    let support = classical_support(&params);
    let phi = solve_j3_match(&params, &support, 0.96, 7.22).unwrap();
    assert!((phi - 0.914).abs() < 1e-3, "{phi}");
    let phi = solve_j3_match(&params, &support, 1.41, 6.70).unwrap();
    assert!((phi - 1.389).abs() < 1e-3, "{phi}");
}

#[test]
fn report_exchange_and_parity_symmetry() {
    let a = analyze(16, 0, 8);
    let b = analyze(16, 8, 0);
    let (za, zb) = (zeros_of(&a), zeros_of(&b));
    assert_eq!(za.len(), zb.len());
    for (x, y) in za.iter().zip(&zb) {
        assert!((x - y).abs() < 1e-8);
    }

    let c = analyze(16, 0, -8);
    let zc = zeros_of(&c);
    assert_eq!(za.len(), zc.len());
    for (x, y) in za.iter().zip(&zc) {
        assert!((x - y).abs() < 1e-8);
    }
}

#[test]
fn j3_estimates_stay_below_vector_length_plus_slack() {
    for (n, two_m_psi, two_m) in [(8u32, 0, 4), (16, 0, 8), (8, 4, 4), (16, 8, 8), (8, 0, 0)] {
        let a = analyze(n, two_m_psi, two_m);
        let zeros = zeros_of(&a);
        let (_, j3) = fringe_widths_and_j3(&zeros);
        let bound = (f64::from(n) * (f64::from(n) + 2.0)).sqrt() / 2.0 + 0.5;
        for v in j3 {
            assert!(v <= bound, "N={n}: {v} > {bound}");
        }
    }
}

#[test]
fn coarse_grid_is_rejected() {
    // A NOON state oscillates with period pi/4; five cells over (0, pi)
    // alias neighbouring zeros into adjacent cells.
    let noon = SuperpositionInput::<f64>::noon(8).unwrap();
    let ops = build_operator_set::<f64>(8).unwrap();
    let basis = j1_eigenbasis(&ops).unwrap();
    let sum = SpectralSum::for_superposition(&basis, &noon, HalfInt::ZERO);
    let grid = PhaseGrid::open_uniform(0.0, PI, 5).unwrap();
    let trace = AmplitudeTrace::compute(&sum, grid).unwrap();
    assert!(matches!(
        find_probability_zeros(&sum, &trace, (1e-9, PI - 1e-9)),
        Err(Error::GridTooCoarse { .. })
    ));
}
