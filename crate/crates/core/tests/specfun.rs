mod common;

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use sinegap::specfun::{
    barnes_pair, log_barnes_g, log_gamma, zeta_int, ConstantTable, DYSON_CONSTANT, EULER_GAMMA,
    LN_2PI, ZETA_PRIME_MINUS_ONE,
};

use common::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn euler_gamma_against_harmonic_limit() {
    assert!((EULER_GAMMA - euler_gamma_oracle()).abs() < 1e-10);
}

#[test]
fn zeta_prime_against_glaisher_limit() {
    let z = 1.0 / 12.0 - log_glaisher_oracle();
    assert!((ZETA_PRIME_MINUS_ONE - z).abs() < 1e-10);
}

#[test]
fn constant_table() {
    let t = ConstantTable::new();
    assert!(t.euler_gamma > 0.577 && t.euler_gamma < 0.578);
    assert!(t.zeta_prime_minus_one > -0.166 && t.zeta_prime_minus_one < -0.165);
    assert_eq!(t.dyson_constant, LN_2 / 3.0 + 3.0 * t.zeta_prime_minus_one);
    assert_eq!(t.dyson_constant, DYSON_CONSTANT);
}

#[test]
fn barnes_integral_identity() {
    // ∫_0^z log Γ(1+x) dx = (z/2) log 2π - z(z+1)/2 + z log Γ(z+1) - log G(z+1)
    for z in [c(0.3, 0.0), c(0.0, 0.7), c(1.0, 0.5)] {
        let f = |t: f64| z * log_gamma(1.0 + t * z).unwrap();
        let lhs = adaptive_simpson(&f, 0.0, 1.0, 1e-13);
        let rhs = z / 2.0 * LN_2PI - z * (z + 1.0) / 2.0 + z * log_gamma(z + 1.0).unwrap()
            - log_barnes_g(z + 1.0).unwrap();
        assert!((lhs - rhs).norm() < 1e-9, "z = {z}: {lhs} vs {rhs}");
    }
}

/// 2 Re log G(1 + iT) by integrating its derivative
/// d/dz log G(1+z) = (log 2π - 1)/2 - z + z ψ(1+z) along the imaginary axis.
fn barnes_pair_by_quadrature(u: f64) -> f64 {
    let big_t = u / (2.0 * PI);
    let deriv = |t: f64| {
        let z = c(0.0, t);
        let d = 0.5 * (LN_2PI - 1.0) - z + z * digamma_oracle(1.0 + z);
        c(0.0, 1.0) * d
    };
    2.0 * adaptive_simpson(&deriv, 0.0, big_t, 1e-14).re
}

#[test]
fn barnes_pair_against_derivative_quadrature() {
    for u in [-1.1, 0.5, 2.4, -3.7] {
        let q = barnes_pair_by_quadrature(u);
        assert!((barnes_pair(u).unwrap() - q).abs() < 1e-10, "u = {u}");
    }
    let v = barnes_pair(-1.1).unwrap();
    assert!(v.is_finite() && v > 0.0);
    assert_eq!(barnes_pair(0.0).unwrap(), 0.0);
}

#[test]
fn digamma_oracle_sanity() {
    assert!((digamma_oracle(c(1.0, 0.0)).re + EULER_GAMMA).abs() < 1e-14);
}

#[test]
fn barnes_values() {
    assert!(log_barnes_g(c(1.0, 0.0)).unwrap().norm() < 1e-15);
    assert!(log_barnes_g(c(2.0, 0.0)).unwrap().norm() < 1e-15);
    assert!((log_barnes_g(c(4.0, 0.0)).unwrap() - LN_2).norm() < 1e-14);
    assert!(log_barnes_g(c(0.0, 0.0)).is_err());
    assert!(log_barnes_g(c(-2.0, 0.0)).is_err());
}

#[test]
fn gamma_values() {
    assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
    assert!((log_gamma(c(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-14);
    assert!(log_gamma(c(-3.0, 0.0)).is_err());
}

#[test]
fn recursion_on_strip_grid() {
    for a in 0..10 {
        for b in 0..10 {
            let z = c(0.5 + 2.5 * a as f64 / 9.0, -5.0 + 10.0 * b as f64 / 9.0);
            let d = log_barnes_g(z + 1.0).unwrap() - log_gamma(z).unwrap() - log_barnes_g(z).unwrap();
            assert!(d.norm() < 1e-12, "z = {z}: {d}");
        }
    }
}

#[test]
fn zeta_examples() {
    assert!((zeta_int(2).unwrap() - PI * PI / 6.0).abs() < 1e-15);
    assert!((zeta_int(4).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
    assert!(zeta_int(1).is_err());
}

proptest! {
    #[test]
    fn gamma_conjugate_symmetry(re in -4.5f64..6.0, im in 0.01f64..8.0) {
        let z = c(re, im);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
    }

    #[test]
    fn barnes_conjugate_symmetry(re in -3.5f64..6.0, im in 0.01f64..6.0) {
        let z = c(re, im);
        let a = log_barnes_g(z.conj()).unwrap();
        let b = log_barnes_g(z).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
    }

    #[test]
    fn gamma_reproduces_factorial_ratio(re in 0.2f64..5.0, im in -5.0f64..5.0) {
        let z = c(re, im);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        prop_assert!(d.norm() < 1e-12);
    }

    #[test]
    fn barnes_pair_even(u in -8.0f64..8.0) {
        prop_assert!((barnes_pair(u).unwrap() - barnes_pair(-u).unwrap()).abs() < 1e-13);
    }
}
