//! Complex special functions and constants used by the large-gap expansions.
//!
//! Everything here is a pure function of its arguments. Logarithms follow
//! the analytic continuation from the positive real axis, so that
//! `log_barnes_g(z + 1) == log_gamma(z) + log_barnes_g(z)` holds without
//! `2πi` jumps on the slit plane.

mod barnes;
mod constants;
mod gamma;
mod zeta;

pub use barnes::{barnes_pair, log_barnes_g};
pub use constants::{ConstantTable, DYSON_CONSTANT, EULER_GAMMA, LN_2PI, ZETA_PRIME_MINUS_ONE};
pub use gamma::log_gamma;
pub use zeta::zeta_int;

/// Complex argument/value type of the special functions.
pub type ComplexValue = num_complex::Complex64;

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `B_{2k}` for `k >= 1`.
#[inline]
pub(crate) fn bernoulli_even(k: usize) -> f64 {
    BERNOULLI_EVEN[k - 1]
}

pub(crate) fn is_nonpositive_integer(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

pub(crate) fn check_finite(z: ComplexValue, what: &str) -> crate::Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::Domain(format!("{what}: non-finite argument {z}")))
    }
}
