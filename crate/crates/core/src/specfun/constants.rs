use std::f64::consts::{LN_2, PI};

/// Euler's constant γ_E.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ζ'(−1) = 1/12 − log A, A the Glaisher–Kinkelin constant.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;

/// Constant term of the one-interval gap asymptotics, (1/3)·log 2 + 3·ζ'(−1).
pub const DYSON_CONSTANT: f64 = LN_2 / 3.0 + 3.0 * ZETA_PRIME_MINUS_ONE;

/// log(2π).
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// The named constants, bundled for callers that want to report them.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ConstantTable {
    pub euler_gamma: f64,
    pub zeta_prime_minus_one: f64,
    pub dyson_constant: f64,
}

impl ConstantTable {
    pub const fn new() -> Self {
        ConstantTable {
            euler_gamma: EULER_GAMMA,
            zeta_prime_minus_one: ZETA_PRIME_MINUS_ONE,
            dyson_constant: DYSON_CONSTANT,
        }
    }

    /// Variance offset (1 + γ_E)/π² of the counting function.
    pub fn variance_offset(&self) -> f64 {
        (1.0 + self.euler_gamma) / (PI * PI)
    }
}

impl Default for ConstantTable {
    fn default() -> Self {
        Self::new()
    }
}
