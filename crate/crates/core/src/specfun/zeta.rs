use std::sync::OnceLock;

use super::bernoulli_even;
use crate::{Error, Result};

/// Cutoff of the explicit sum in the Euler–Maclaurin evaluation.
const EM_CUTOFF: usize = 20;
const EM_TERMS: usize = 7;
/// Entries cached for the Barnes-G Taylor coefficients.
pub(crate) const ZETA_TABLE_LEN: usize = 72;

/// Riemann ζ(k) for integer `k >= 2`.
pub fn zeta_int(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain(format!("zeta_int needs k >= 2, got {k}")));
    }
    if (k as usize) < ZETA_TABLE_LEN {
        return Ok(zeta_table()[k as usize]);
    }
    Ok(zeta_euler_maclaurin(k))
}

/// Cached ζ(0..ZETA_TABLE_LEN); entries 0 and 1 are unused and set to NaN.
pub(crate) fn zeta_table() -> &'static [f64; ZETA_TABLE_LEN] {
    static TABLE: OnceLock<[f64; ZETA_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [f64::NAN; ZETA_TABLE_LEN];
        for (k, slot) in t.iter_mut().enumerate().skip(2) {
            *slot = zeta_euler_maclaurin(k as u32);
        }
        t
    })
}

fn zeta_euler_maclaurin(k: u32) -> f64 {
    let s = k as f64;
    let n = EM_CUTOFF as f64;
    // explicit part, smallest terms first
    let mut sum = 0.0;
    for j in (1..EM_CUTOFF).rev() {
        sum += (j as f64).powf(-s);
    }
    // tail: ∫_N^∞ x^{-s} dx + N^{-s}/2 + Σ_i B_{2i}/(2i)! s(s+1)...(s+2i-2) N^{-s-2i+1}
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s; // s (s+1) ... (s + 2i - 2)
    let mut fact = 2.0; // (2i)!
    let mut npow = n.powf(-s - 1.0);
    for i in 1..=EM_TERMS {
        tail += bernoulli_even(i) / fact * rising * npow;
        let a = 2.0 * i as f64;
        rising *= (s + a - 1.0) * (s + a);
        fact *= (a + 1.0) * (a + 2.0);
        npow /= n * n;
    }
    sum + tail
}
