mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use sinegap::asymptotics::{
    basor_widom_log, conditional_stats, counting_stats, dyson_gap_log, thm1_log, thm2_log,
    ExpansionBreakdown,
};
use sinegap::fredholm::{fredholm_f_with, FredholmOptions};
use sinegap::{IntervalPartition, WeightConfiguration};

fn part(x: &[f64]) -> IntervalPartition {
    IntervalPartition::new(x.to_vec()).unwrap()
}

fn parts_add_up(b: &ExpansionBreakdown) -> bool {
    (b.total - b.sum_of_parts()).abs() <= 1e-13 * (1.0 + b.total.abs())
}

#[test]
fn positive_weights_residual_is_bounded() {
    let x = part(&[0.0, 0.7, 1.2]);
    let u = [-1.1, -2.4];
    let w = WeightConfiguration::from_positive_exponents(&u).unwrap();
    let lf = fredholm_f_with(&x, &w, 20.0, 64, &FredholmOptions::fast()).unwrap().log_f.re;
    let v = thm1_log(&x, &u, 20.0).unwrap();
    assert!(v.total.is_finite());
    assert!((20.0 * (lf - v.total)).abs() < 1.0);
}

#[test]
fn vanishing_weight_residual_is_bounded() {
    let x = part(&[0.0, 0.5, 1.1, 1.7]);
    let u = [Some(0.8), None, None, Some(-1.32)];
    let w = WeightConfiguration::from_gap_exponents(2, &u).unwrap();
    let lf = fredholm_f_with(&x, &w, 20.0, 64, &FredholmOptions::fast()).unwrap().log_f.re;
    let v = thm2_log(&x, 2, &u, 20.0).unwrap();
    assert!((20.0 * (lf - v.total)).abs() < 1.0);
}

#[test]
fn dyson_against_determinant() {
    let x = part(&[0.0, 1.0]);
    let w = WeightConfiguration::real(&[0.0]).unwrap();
    for r in [10.0, 20.0] {
        let lf = fredholm_f_with(&x, &w, r, 64, &FredholmOptions::fast()).unwrap().log_f.re;
        // the next correction is of order 1/r²
        assert!((lf - dyson_gap_log(r, 0.0, 1.0).unwrap().total).abs() < 0.5 / (r * r));
    }
}

#[test]
fn mean_exponents_from_weights_round_trip() {
    let w = WeightConfiguration::real(&[0.3, 0.0, 2.0]).unwrap();
    let (p, u) = w.gap_exponents().unwrap();
    assert_eq!(p, 2);
    let back = WeightConfiguration::from_gap_exponents(p, &u).unwrap();
    for (a, b) in back.values().iter().zip(w.values()) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn conditional_mean_sign_matches_expansion() {
    // right of the gap u_j enters with + μ̂_j, left of it with - μ̂_j
    let x = part(&[0.0, 1.0, 2.0]);
    let r = 7.0;
    let s = conditional_stats(&x, 2, r).unwrap();
    assert!((s.mean(0).unwrap() - r * 2f64.sqrt() / PI).abs() < 1e-14);
    let lin = thm2_log(&x, 2, &[Some(0.6), None, None], r).unwrap().r_linear_term;
    assert!((lin + 0.6 * s.mean(0).unwrap()).abs() < 1e-14);
    let y = part(&[0.0, 1.0, 2.0]);
    let lin = thm2_log(&y, 1, &[None, None, Some(0.6)], r).unwrap().r_linear_term;
    let s = conditional_stats(&y, 1, r).unwrap();
    assert!((lin - 0.6 * s.mean(2).unwrap()).abs() < 1e-14);
}

proptest! {
    #[test]
    fn m1_reductions(x0 in -3.0f64..3.0, len in 0.1f64..3.0, r in 1.0f64..100.0, u in -4.0f64..4.0) {
        let x = part(&[x0, x0 + len]);
        let a = thm1_log(&x, &[u], r).unwrap();
        let b = basor_widom_log(r, x0, x0 + len, u).unwrap();
        prop_assert!((a.total - b.total).abs() <= 1e-13 * (1.0 + b.total.abs()));
        let c = thm2_log(&x, 1, &[None, None], r).unwrap();
        let d = dyson_gap_log(r, x0, x0 + len).unwrap();
        prop_assert!((c.total - d.total).abs() <= 1e-13 * (1.0 + d.total.abs()));
    }

    #[test]
    fn breakdowns_add_up(
        gaps in prop::collection::vec(0.1f64..2.0, 2..5),
        r in 1.0f64..200.0,
        u in prop::collection::vec(-3.0f64..3.0, 5),
        shift in -5.0f64..5.0,
    ) {
        let mut pts = vec![0.0];
        for g in &gaps { pts.push(pts.last().unwrap() + g); }
        let x = part(&pts);
        let m = x.m();
        let t1 = thm1_log(&x, &u[..m], r).unwrap();
        prop_assert!(parts_add_up(&t1));
        prop_assert_eq!(t1.r_squared_term, 0.0);
        let t1s = thm1_log(&x.translated(shift).unwrap(), &u[..m], r).unwrap();
        prop_assert!((t1.total - t1s.total).abs() < 1e-12 * (1.0 + t1.total.abs()));

        let p = 1 + (gaps.len() / 2).min(m - 1);
        let ug: Vec<Option<f64>> = (0..=m).map(|j| (j + 1 != p && j != p).then_some(u[j % 5])).collect();
        let t2 = thm2_log(&x, p, &ug, r).unwrap();
        prop_assert!(parts_add_up(&t2));
        let t2s = thm2_log(&x.translated(shift).unwrap(), p, &ug, r).unwrap();
        prop_assert!((t2.total - t2s.total).abs() < 1e-12 * (1.0 + t2.total.abs()));
    }

    #[test]
    fn statistics_symmetric_and_positive(
        gaps in prop::collection::vec(0.2f64..2.0, 2..5),
        r in 2.0f64..100.0,
    ) {
        let mut pts = vec![0.0];
        for g in &gaps { pts.push(pts.last().unwrap() + g); }
        let x = part(&pts);
        let s = counting_stats(&x, r).unwrap();
        for a in 0..s.indices.len() {
            prop_assert!(s.sigma2[a] > 0.0);
            for b in 0..s.indices.len() {
                prop_assert_eq!(s.cross[a][b], s.cross[b][a]);
            }
        }
        let h = conditional_stats(&x, 1, r).unwrap();
        for a in 0..h.indices.len() {
            for b in 0..h.indices.len() {
                prop_assert_eq!(h.cross[a][b], h.cross[b][a]);
            }
        }
    }
}
