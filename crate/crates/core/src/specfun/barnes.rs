use std::f64::consts::PI;

use super::zeta::{zeta_table, ZETA_TABLE_LEN};
use super::{
    bernoulli_even, check_finite, is_nonpositive_integer, log_gamma, ComplexValue, EULER_GAMMA,
    LN_2PI, ZETA_PRIME_MINUS_ONE,
};
use crate::{Error, Result};

/// Radius of the disk around 1 where the Taylor series of log G(1 + w) is used.
const TAYLOR_RADIUS: f64 = 0.5;
/// Largest number of recursion steps used to reach the Taylor disk.
const MAX_TAYLOR_SHIFT: i64 = 6;
/// Real part from which the large-argument expansion is summed.
const ASYMPTOTIC_THRESHOLD: f64 = 10.0;
const ASYMPTOTIC_TERMS: usize = 13;

/// log G(z), G the Barnes double-gamma function with G(1) = 1 and
/// G(z + 1) = Γ(z) G(z).
///
/// Near `z = 1` the Taylor series
/// `log G(1+w) = w log(2π)/2 - (w + (1+γ) w²)/2 + Σ_{k≥2} (-1)^k ζ(k) w^{k+1}/(k+1)`
/// is used, reached by a few recursion steps when `|Im z| < 1/2`. Elsewhere the
/// argument is pushed to `Re z >= 10` by the recursion and the large-argument
/// expansion is summed.
pub fn log_barnes_g(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z, "log_barnes_g")?;
    if is_nonpositive_integer(z) {
        return Err(Error::BarnesZero { re: z.re, im: z.im });
    }

    let w = z - 1.0;
    let shift = -(w.re.round());
    let centered = w + shift;
    if centered.norm() <= TAYLOR_RADIUS && (shift as i64).abs() <= MAX_TAYLOR_SHIFT {
        let base = 1.0 + centered; // inside the disk
        let mut value = taylor_log_g_one_plus(centered);
        let steps = shift as i64;
        if steps > 0 {
            // z = base - steps: log G(base - k) = log G(base - k + 1) - log Γ(base - k)
            for k in 1..=steps {
                value -= log_gamma(base - k as f64)?;
            }
        } else {
            // z = base + |steps|
            for k in 0..(-steps) {
                value += log_gamma(base + k as f64)?;
            }
        }
        return Ok(value);
    }

    let mut acc = ComplexValue::new(0.0, 0.0);
    let mut v = z;
    while v.re < ASYMPTOTIC_THRESHOLD {
        acc += log_gamma(v)?;
        v += 1.0;
    }
    Ok(asymptotic_log_g(v) - acc)
}

/// Taylor series of log G(1 + w), valid for |w| < 1.
fn taylor_log_g_one_plus(w: ComplexValue) -> ComplexValue {
    let zeta = zeta_table();
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut pow = w * w * w; // w^{k+1} for k = 2
    for (k, &zk) in zeta.iter().enumerate().take(ZETA_TABLE_LEN).skip(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = pow * (sign * zk / (k as f64 + 1.0));
        series += term;
        if term.norm() < 1e-18 * series.norm().max(1e-300) {
            break;
        }
        pow *= w;
    }
    0.5 * LN_2PI * w - 0.5 * (w + (1.0 + EULER_GAMMA) * w * w) + series
}

/// Large-|z| expansion of log G(z), summed as log G(ζ + 1) with ζ = z - 1:
/// `ζ²/2 log ζ - 3ζ²/4 + ζ log(2π)/2 - log(ζ)/12 + ζ'(-1) + Σ_k B_{2k+2} / (4k(k+1) ζ^{2k})`.
fn asymptotic_log_g(z: ComplexValue) -> ComplexValue {
    let zeta = z - 1.0;
    let ln = zeta.ln();
    let inv2 = (zeta * zeta).inv();
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut pow = inv2;
    for k in 1..=ASYMPTOTIC_TERMS {
        let kk = k as f64;
        series += pow * (bernoulli_even(k + 1) / (4.0 * kk * (kk + 1.0)));
        pow *= inv2;
    }
    0.5 * zeta * zeta * ln - 0.75 * zeta * zeta + 0.5 * LN_2PI * zeta - ln / 12.0
        + ZETA_PRIME_MINUS_ONE
        + series
}

/// log[G(1 + u/(2πi)) G(1 - u/(2πi))] for real `u`.
///
/// The two arguments are complex conjugates, so the product is |G(1 + iu/2π)|²
/// and the value is `2 Re log G(1 + iu/(2π))`.
pub fn barnes_pair(u: f64) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("barnes_pair: non-finite exponent {u}")));
    }
    let z = ComplexValue::new(1.0, u / (2.0 * PI));
    Ok(2.0 * log_barnes_g(z)?.re)
}
