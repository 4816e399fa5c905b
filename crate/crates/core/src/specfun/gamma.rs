use super::{bernoulli_even, check_finite, is_nonpositive_integer, ComplexValue, LN_2PI};
use crate::{Error, Result};

/// Real part above which the Stirling series is used directly.
const STIRLING_THRESHOLD: f64 = 10.0;
const STIRLING_TERMS: usize = 12;

/// log Γ(z) on the slit plane.
///
/// The argument is shifted upward with `Γ(z) = Γ(z + N) / (z (z+1) ... (z+N-1))`
/// until `Re z >= 10` and the Stirling series
///
/// ```text
/// log Γ(z) = (z - 1/2) log z - z + log(2π)/2 + Σ_k B_{2k} / (2k (2k-1) z^{2k-1})
/// ```
///
/// is summed there. The result is the analytic continuation of the real
/// `ln Γ` from the positive axis, so `exp(log_gamma(z)) == Γ(z)` while the
/// imaginary part is not folded into `(-π, π]`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z, "log_gamma")?;
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }

    let mut shift = ComplexValue::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_THRESHOLD {
        shift += principal_ln(w);
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// Principal logarithm that maps the negative real axis to `+iπ` even for
/// a signed-zero imaginary part.
fn principal_ln(w: ComplexValue) -> ComplexValue {
    if w.im == 0.0 && w.re < 0.0 {
        ComplexValue::new((-w.re).ln(), std::f64::consts::PI)
    } else {
        w.ln()
    }
}

fn stirling(z: ComplexValue) -> ComplexValue {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = ComplexValue::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let kk = k as f64;
        series += pow * (bernoulli_even(k) / (2.0 * kk * (2.0 * kk - 1.0)));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * LN_2PI + series
}
