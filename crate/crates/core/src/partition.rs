//! Interval partitions `x_0 < x_1 < ... < x_m` and the piecewise weights
//! `s_1, ..., s_m` attached to them.

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Ordered endpoints `x_0 < x_1 < ... < x_m`, `m >= 1`, with a declared
/// lower bound `delta` on the smallest gap `x_k - x_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalPartition {
    endpoints: Vec<f64>,
    delta: f64,
}

impl IntervalPartition {
    /// Builds a partition, using the smallest adjacent gap as `delta`.
    pub fn new(endpoints: Vec<f64>) -> Result<Self> {
        Self::validate(&endpoints)?;
        let delta = min_gap(&endpoints);
        Ok(IntervalPartition { endpoints, delta })
    }

    /// Builds a partition and checks that every gap is at least `delta`.
    pub fn with_min_gap(endpoints: Vec<f64>, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidPartition(format!(
                "declared minimum gap must be positive, got {delta}"
            )));
        }
        Self::validate(&endpoints)?;
        let actual = min_gap(&endpoints);
        if actual < delta {
            return Err(Error::InvalidPartition(format!(
                "smallest gap {actual} is below the declared delta {delta}"
            )));
        }
        Ok(IntervalPartition { endpoints, delta })
    }

    fn validate(endpoints: &[f64]) -> Result<()> {
        if endpoints.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two endpoints, got {}",
                endpoints.len()
            )));
        }
        if let Some(x) = endpoints.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidPartition(format!("non-finite endpoint {x}")));
        }
        for w in endpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidPartition(format!(
                    "endpoints must be strictly increasing, found {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Number of intervals `m`.
    pub fn m(&self) -> usize {
        self.endpoints.len() - 1
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    /// Endpoint `x_j`, `0 <= j <= m`.
    pub fn x(&self, j: usize) -> f64 {
        self.endpoints[j]
    }

    /// The interval `(x_{k-1}, x_k)` for `1 <= k <= m`.
    pub fn interval(&self, k: usize) -> (f64, f64) {
        (self.endpoints[k - 1], self.endpoints[k])
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Total length `x_m - x_0`.
    pub fn span(&self) -> f64 {
        self.endpoints[self.m()] - self.endpoints[0]
    }

    /// The partition `r x`.
    pub fn scaled(&self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::OutOfRange(format!("scale r must be positive, got {r}")));
        }
        IntervalPartition::new(self.endpoints.iter().map(|x| r * x).collect())
    }

    /// The partition `x + c`.
    pub fn translated(&self, c: f64) -> Result<Self> {
        IntervalPartition::new(self.endpoints.iter().map(|x| x + c).collect())
    }

    /// The mirror image `x_j -> -x_{m-j}`.
    pub fn reflected(&self) -> Self {
        IntervalPartition {
            endpoints: self.endpoints.iter().rev().map(|x| -x).collect(),
            delta: self.delta,
        }
    }

    /// The one-interval partition `(x_0, x_m)`.
    pub fn hull(&self) -> Self {
        IntervalPartition {
            endpoints: vec![self.endpoints[0], self.endpoints[self.m()]],
            delta: self.span(),
        }
    }

    /// The one-interval partition `(x_{k-1}, x_k)`.
    pub fn sub_interval(&self, k: usize) -> Self {
        let (a, b) = self.interval(k);
        IntervalPartition {
            endpoints: vec![a, b],
            delta: b - a,
        }
    }
}

fn min_gap(endpoints: &[f64]) -> f64 {
    endpoints
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Weights `s_1, ..., s_m` of the generating function, with the implicit
/// boundary values `s_0 = s_{m+1} = 1`.
///
/// Values are stored as complex numbers so that the same type serves the
/// probability-generating regime (`s_j >= 0`) and the Fourier inversion on
/// the unit torus. The jump exponents `u_j = log(s_j / s_{j+1})` are derived
/// on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightConfiguration {
    values: Vec<Complex64>,
}

impl WeightConfiguration {
    pub fn real(values: &[f64]) -> Result<Self> {
        Self::complex(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn complex(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidWeights(format!("non-finite weight {v}")));
        }
        Ok(WeightConfiguration { values })
    }

    /// All weights equal to `value`.
    pub fn uniform(m: usize, value: f64) -> Result<Self> {
        Self::real(&vec![value; m])
    }

    /// Weights from the exponents of the all-positive regime:
    /// `u_j = log(s_j / s_{j+1})`, `j = 1..m`, `s_{m+1} = 1`, so
    /// `s_j = exp(u_j + ... + u_m)`.
    pub fn from_positive_exponents(u: &[f64]) -> Result<Self> {
        if let Some(x) = u.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidWeights(format!("non-finite exponent {x}")));
        }
        let mut s = vec![0.0; u.len()];
        let mut acc = 0.0;
        for j in (0..u.len()).rev() {
            acc += u[j];
            s[j] = acc.exp();
        }
        Self::real(&s)
    }

    /// Weights with `s_p = 0` from exponents indexed on `{0..m} \ {p-1, p}`:
    /// `u_j = log(s_j / s_{j+1})` with `s_0 = s_{m+1} = 1`.
    ///
    /// `u` has length `m + 1`; entries `p-1` and `p` must be `None`, all others `Some`.
    pub fn from_gap_exponents(p: usize, u: &[Option<f64>]) -> Result<Self> {
        let m = u.len().checked_sub(1).filter(|&m| m >= 1).ok_or_else(|| {
            Error::Index("exponent list must have m + 1 >= 2 entries".into())
        })?;
        check_gap_indexing(m, p, u)?;
        let mut s = vec![0.0; m + 2];
        s[0] = 1.0;
        s[m + 1] = 1.0;
        // left of the gap: s_{j+1} = s_j e^{-u_j}
        for j in 0..p.saturating_sub(1) {
            s[j + 1] = s[j] * (-u[j].unwrap()).exp();
        }
        // right of the gap: s_j = s_{j+1} e^{u_j}
        for j in (p + 1..=m).rev() {
            s[j] = s[j + 1] * u[j].unwrap().exp();
        }
        s[p] = 0.0;
        Self::real(&s[1..=m])
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `s_k` for `1 <= k <= m`.
    pub fn s(&self, k: usize) -> Complex64 {
        self.values[k - 1]
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// Real parts, if every weight is real.
    pub fn as_real(&self) -> Option<Vec<f64>> {
        self.is_real()
            .then(|| self.values.iter().map(|v| v.re).collect())
    }

    /// Exponents `u_1..u_m` of the all-positive regime.
    pub fn positive_exponents(&self) -> Result<Vec<f64>> {
        let s = self
            .as_real()
            .filter(|s| s.iter().all(|&v| v > 0.0))
            .ok_or_else(|| {
                Error::InvalidWeights("exponents u_j need every s_j real and positive".into())
            })?;
        let m = s.len();
        Ok((0..m)
            .map(|j| {
                let next = if j + 1 < m { s[j + 1] } else { 1.0 };
                (s[j] / next).ln()
            })
            .collect())
    }

    /// The index `p` with `s_p = 0` and the exponents on `{0..m} \ {p-1, p}`,
    /// provided exactly one weight vanishes and the rest are positive.
    pub fn gap_exponents(&self) -> Result<(usize, Vec<Option<f64>>)> {
        let s = self.as_real().ok_or_else(|| {
            Error::InvalidWeights("gap exponents need real weights".into())
        })?;
        let zeros: Vec<usize> = (0..s.len()).filter(|&j| s[j] == 0.0).collect();
        if zeros.len() != 1 || s.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidWeights(
                "gap exponents need exactly one zero weight and the rest positive".into(),
            ));
        }
        let m = s.len();
        let p = zeros[0] + 1;
        let mut full = vec![1.0; m + 2];
        full[1..=m].copy_from_slice(&s);
        let u = (0..=m)
            .map(|j| (j + 1 != p && j != p).then(|| (full[j] / full[j + 1]).ln()))
            .collect();
        Ok((p, u))
    }

    /// `β_j = u_j / (2πi)`, returned as a complex number.
    pub fn beta(u: f64) -> Complex64 {
        Complex64::new(0.0, -u / (2.0 * std::f64::consts::PI))
    }
}

pub(crate) fn check_gap_indexing(m: usize, p: usize, u: &[Option<f64>]) -> Result<()> {
    if p < 1 || p > m {
        return Err(Error::Index(format!("gap index p = {p} outside 1..={m}")));
    }
    if u.len() != m + 1 {
        return Err(Error::Index(format!(
            "expected {} exponents (indices 0..={m}), got {}",
            m + 1,
            u.len()
        )));
    }
    for (j, v) in u.iter().enumerate() {
        let excluded = j + 1 == p || j == p;
        match (excluded, v) {
            (true, Some(_)) => {
                return Err(Error::Index(format!(
                    "exponent u_{j} must not be given when p = {p}"
                )))
            }
            (false, None) => {
                return Err(Error::Index(format!("exponent u_{j} is missing")));
            }
            (false, Some(x)) if !x.is_finite() => {
                return Err(Error::Index(format!("exponent u_{j} = {x} is not finite")));
            }
            _ => {}
        }
    }
    Ok(())
}
