use proptest::prelude::*;

use harmonic_bohr::oracle::{brute_majorant_sum, check_subordination_majorant};
use harmonic_bohr::report::{parse_grid, GridReport, Meta, Row};
use harmonic_bohr::solver::bohr_radius_mab;
use harmonic_bohr::{AlphaParam, ExtremalPair, Pipeline, PhiSpec, TruncatedSeries};

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-10.0..10.0_f64, 1..64).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

proptest! {
    #[test]
    fn majorant_dominates(s in series(), r in 0.0..0.95_f64) {
        let m = s.majorant();
        let mr = m.eval(r).unwrap();
        prop_assert!(s.eval(r).unwrap().abs() <= mr * (1.0 + 1e-12) + 1e-300);
        prop_assert!(m.is_nonnegative());
    }

    #[test]
    fn majorant_is_idempotent(s in series()) {
        let m = s.majorant();
        prop_assert_eq!(m.majorant(), m);
    }

    #[test]
    fn brute_sum_matches_majorant_eval(s in series(), r in 0.0..0.95_f64) {
        let mr = s.majorant().eval(r).unwrap();
        let brute = brute_majorant_sum(&s, r, s.order() + 1);
        prop_assert!((brute - mr).abs() <= 1e-12 * mr.max(1.0));
    }

    #[test]
    fn integration_is_linear(s in series(), t in series(), a in -3.0..3.0_f64, b in -3.0..3.0_f64) {
        let lhs = s.scale(a).unwrap().add(&t.scale(b).unwrap()).unwrap().integrate_from_zero().unwrap();
        let rhs = s.integrate_from_zero().unwrap().scale(a).unwrap()
            .add(&t.integrate_from_zero().unwrap().scale(b).unwrap()).unwrap();
        prop_assert_eq!(lhs.order(), rhs.order());
        for n in 0..=lhs.order() {
            prop_assert!((lhs.coeff(n) - rhs.coeff(n)).abs() <= 1e-12 * (1.0 + rhs.coeff(n).abs()));
        }
    }

    #[test]
    fn subordinate_majorant_is_smaller(s in series(), c in 0.0..1.0_f64, r in 0.0..(1.0 / 3.0)) {
        prop_assert!(check_subordination_majorant(&s, c, r));
    }

    #[test]
    fn janowski_kprime_solves_the_ode(beta in 0.0..0.99_f64, t in -0.6..0.6_f64) {
        let phi = PhiSpec::janowski(beta).unwrap();
        let pair = ExtremalPair::build(&phi, 256).unwrap();
        prop_assert!(pair.ode_residual(&phi, t).unwrap() < 1e-8);
    }

    #[test]
    fn mab_radius_decreases_with_alpha(beta in 0.0..0.95_f64, a in 0.0..0.9_f64, da in 0.01..0.1_f64) {
        let lo = bohr_radius_mab(AlphaParam::new(a).unwrap(), beta, 1e-10).unwrap();
        let hi = bohr_radius_mab(AlphaParam::new(a + da).unwrap(), beta, 1e-10).unwrap();
        prop_assert!(hi.r_f < lo.r_f);
    }

    #[test]
    fn grid_has_expected_points(a in 0.0..0.5_f64, n in 0usize..20, step in 0.01..0.1_f64) {
        let b = a + n as f64 * step;
        let g = parse_grid(&format!("{a}:{b}:{step}")).unwrap();
        prop_assert_eq!(g.len(), n + 1);
        prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn report_json_round_trip(rows in prop::collection::vec((0.0..1.0_f64, 0.0..1.0_f64, 0.0..1e-8_f64, any::<bool>()), 0..12)) {
        let mut rows: Vec<Row> = rows.into_iter().map(|(alpha, r_f, residual, sharp)| Row {
            alpha,
            beta: Some(0.5),
            r_f,
            bohr_radius: r_f.min(1.0 / 3.0),
            residual,
            sharp,
            notes: "a, \"quoted\" note".into(),
        }).collect();
        rows.sort_by(|x, y| x.alpha.total_cmp(&y.alpha));
        let report = GridReport {
            meta: Meta {
                pipeline: Pipeline::Mab,
                phi: "janowski(beta=0.5)".into(),
                tolerance: 1e-10,
                tool_version: "test".into(),
                timestamp: None,
            },
            rows,
        };
        let back = GridReport::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(back.to_csv(), report.to_csv());
        prop_assert_eq!(back, report);
    }
}
