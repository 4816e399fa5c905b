//! Large-gap expansions of `log F(r x, s)` as `r → ∞`, and the counting
//! statistics read off from them.
//!
//! Every expansion is returned as an [`ExpansionBreakdown`]. Terms of the form
//! `c · log(a r)` are split into `c · log r` (in `log_r_term`) and `c · log a`
//! (in `constant_term`). `total` is evaluated from the unsplit formula, so
//! comparing it with the sum of the parts checks the bookkeeping.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::partition::{check_gap_indexing, IntervalPartition};
use crate::specfun::{barnes_pair, EULER_GAMMA, ZETA_PRIME_MINUS_ONE};
use crate::{Error, Result};

const PI2: f64 = PI * PI;

/// An expansion split by its growth in `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionBreakdown {
    pub r_squared_term: f64,
    pub r_linear_term: f64,
    pub log_r_term: f64,
    pub constant_term: f64,
    pub total: f64,
}

impl ExpansionBreakdown {
    pub fn sum_of_parts(&self) -> f64 {
        self.r_squared_term + self.r_linear_term + self.log_r_term + self.constant_term
    }
}

/// Accumulates the split parts next to an independently summed total.
#[derive(Default)]
struct Terms {
    r2: f64,
    r1: f64,
    log_r: f64,
    constant: f64,
    total: f64,
}

impl Terms {
    /// `coef · log(factor · r)`.
    fn log_of_scaled(&mut self, coef: f64, factor: f64, r: f64) {
        self.log_r += coef * r.ln();
        self.constant += coef * factor.ln();
        self.total += coef * (factor * r).ln();
    }

    fn constant(&mut self, v: f64) {
        self.constant += v;
        self.total += v;
    }

    fn linear(&mut self, v: f64) {
        self.r1 += v;
        self.total += v;
    }

    fn quadratic(&mut self, v: f64) {
        self.r2 += v;
        self.total += v;
    }

    fn finish(self) -> ExpansionBreakdown {
        ExpansionBreakdown {
            r_squared_term: self.r2,
            r_linear_term: self.r1,
            log_r_term: self.log_r,
            constant_term: self.constant,
            total: self.total,
        }
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("scale r must be positive and finite, got {r}")))
    }
}

fn check_order(x0: f64, x1: f64) -> Result<()> {
    if x0.is_finite() && x1.is_finite() && x1 > x0 {
        Ok(())
    } else {
        Err(Error::InvalidPartition(format!("need x0 < x1, got ({x0}, {x1})")))
    }
}

fn check_exponents(u: &[f64]) -> Result<()> {
    match u.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Error::InvalidWeights(format!("non-finite exponent {v}"))),
        None => Ok(()),
    }
}

/// Gap probability of one interval:
/// `-r²L²/8 - log(rL)/4 + log(2)/3 + 3ζ'(-1)` with `L = x1 - x0`.
pub fn dyson_gap_log(r: f64, x0: f64, x1: f64) -> Result<ExpansionBreakdown> {
    check_r(r)?;
    check_order(x0, x1)?;
    let len = x1 - x0;
    let mut t = Terms::default();
    t.quadratic(-(r * len).powi(2) / 8.0);
    t.log_of_scaled(-0.25, len, r);
    t.constant(LN_2 / 3.0 + 3.0 * ZETA_PRIME_MINUS_ONE);
    Ok(t.finish())
}

/// One interval with weight `s = e^{u}`:
/// `r u L/π + u²/(2π²) log(2rL) + 2 log(G(1 + u/2πi) G(1 - u/2πi))`.
pub fn basor_widom_log(r: f64, x0: f64, x1: f64, u1: f64) -> Result<ExpansionBreakdown> {
    check_r(r)?;
    check_order(x0, x1)?;
    check_exponents(&[u1])?;
    let len = x1 - x0;
    let mut t = Terms::default();
    t.linear(r * u1 * len / PI);
    t.log_of_scaled(u1 * u1 / (2.0 * PI2), 2.0 * len, r);
    t.constant(2.0 * barnes_pair(u1)?);
    Ok(t.finish())
}

/// Expansion for all weights positive; `u_j = log(s_j / s_{j+1})`, `j = 1..m`.
pub fn thm1_log(partition: &IntervalPartition, u: &[f64], r: f64) -> Result<ExpansionBreakdown> {
    check_r(r)?;
    check_exponents(u)?;
    let m = partition.m();
    if u.len() != m {
        return Err(Error::InvalidWeights(format!(
            "{} exponents for {m} intervals",
            u.len()
        )));
    }
    let x = partition.endpoints();
    let d = |j: usize| x[j] - x[0];
    let mut t = Terms::default();
    for j in 1..=m {
        let uj = u[j - 1];
        t.linear(uj * d(j) * r / PI);
        t.log_of_scaled(uj * uj / (2.0 * PI2), 2.0 * d(j), r);
        t.constant(barnes_pair(uj)?);
    }
    for j in 1..=m {
        for k in j + 1..=m {
            let coef = u[j - 1] * u[k - 1] / (2.0 * PI2);
            t.log_of_scaled(coef, 2.0 * d(j) * d(k) / (x[k] - x[j]), r);
        }
    }
    t.constant(barnes_pair(u.iter().sum())?);
    Ok(t.finish())
}

/// Geometry of the `s_p = 0` expansion, shared with the conditional statistics.
struct GapGeometry<'a> {
    x: &'a [f64],
    p: usize,
}

impl GapGeometry<'_> {
    fn len(&self) -> f64 {
        self.x[self.p] - self.x[self.p - 1]
    }

    /// `sqrt(|x_p - x_j| |x_{p-1} - x_j|)`.
    fn root_product(&self, j: usize) -> f64 {
        ((self.x[self.p] - self.x[j]).abs() * (self.x[self.p - 1] - self.x[j]).abs()).sqrt()
    }

    /// The r-free factor inside the per-j logarithm.
    fn variance_factor(&self, j: usize) -> f64 {
        let xj = self.x[j];
        4.0 * self.root_product(j) * (2.0 * xj - self.x[self.p] - self.x[self.p - 1]).abs()
            / self.len()
    }

    /// `T_{k,j}`, symmetric in `j, k`.
    fn cross_ratio(&self, j: usize, k: usize) -> f64 {
        let (x, p) = (self.x, self.p);
        let a = (x[k] - x[p]).abs().sqrt() * (x[j] - x[p - 1]).abs().sqrt();
        let b = (x[k] - x[p - 1]).abs().sqrt() * (x[j] - x[p]).abs().sqrt();
        (a + b) / (a - b).abs()
    }

    /// +1 left of the gap, −1 right of it: the sign with which `u_j μ̂_j`
    /// enters `−(Σ_{j≤p−2} u_j μ̂_j − Σ_{j≥p+1} u_j μ̂_j)`.
    fn side(&self, j: usize) -> f64 {
        if j + 2 <= self.p {
            1.0
        } else {
            -1.0
        }
    }

    fn indices(&self) -> Vec<usize> {
        let m = self.x.len() - 1;
        (0..=m).filter(|&j| j + 1 != self.p && j != self.p).collect()
    }
}

/// Expansion with `s_p = 0`. `u` has `m + 1` entries indexed `0..=m`;
/// `u[p-1]` and `u[p]` must be `None`, all others `Some`.
pub fn thm2_log(
    partition: &IntervalPartition,
    p: usize,
    u: &[Option<f64>],
    r: f64,
) -> Result<ExpansionBreakdown> {
    check_r(r)?;
    check_gap_indexing(partition.m(), p, u)?;
    let g = GapGeometry {
        x: partition.endpoints(),
        p,
    };
    let idx = g.indices();
    let uu = |j: usize| u[j].unwrap();
    let len = g.len();

    let mut t = Terms::default();
    t.quadratic(-(r * len).powi(2) / 8.0);
    let lin: f64 = idx.iter().map(|&j| g.side(j) * uu(j) * g.root_product(j)).sum();
    t.linear(-lin * r / PI);
    for &j in &idx {
        t.log_of_scaled(uu(j).powi(2) / (4.0 * PI2), g.variance_factor(j), r);
    }
    t.log_of_scaled(-0.25, len, r);
    for (a, &j) in idx.iter().enumerate() {
        for &k in &idx[a + 1..] {
            t.constant(uu(j) * uu(k) / (2.0 * PI2) * g.cross_ratio(j, k).ln());
        }
    }
    t.constant(LN_2 / 3.0 + 3.0 * ZETA_PRIME_MINUS_ONE);
    for &j in &idx {
        t.constant(barnes_pair(uu(j))?);
    }
    Ok(t.finish())
}

/// Means, variances and covariances of a family of counting variables,
/// labelled by `indices`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticsTriple {
    pub indices: Vec<usize>,
    pub mu: Vec<f64>,
    pub sigma2: Vec<f64>,
    /// Symmetric matrix with `sigma2` on the diagonal.
    pub cross: Vec<Vec<f64>>,
}

impl StatisticsTriple {
    fn position(&self, label: usize) -> Result<usize> {
        self.indices
            .iter()
            .position(|&i| i == label)
            .ok_or_else(|| Error::Index(format!("no statistic labelled {label}")))
    }

    pub fn mean(&self, j: usize) -> Result<f64> {
        Ok(self.mu[self.position(j)?])
    }

    pub fn variance(&self, j: usize) -> Result<f64> {
        Ok(self.sigma2[self.position(j)?])
    }

    pub fn covariance(&self, j: usize, k: usize) -> Result<f64> {
        Ok(self.cross[self.position(j)?][self.position(k)?])
    }

    fn build(indices: Vec<usize>, mu: Vec<f64>, sigma2: Vec<f64>, off: impl Fn(usize, usize) -> f64) -> Self {
        let n = indices.len();
        let mut cross = vec![vec![0.0; n]; n];
        for a in 0..n {
            cross[a][a] = sigma2[a];
            for b in a + 1..n {
                let v = off(indices[a], indices[b]);
                cross[a][b] = v;
                cross[b][a] = v;
            }
        }
        StatisticsTriple {
            indices,
            mu,
            sigma2,
            cross,
        }
    }

    /// Adds `var` to every variance and `cov` to every off-diagonal entry.
    fn offset(mut self, var: f64, cov: f64) -> Self {
        for (a, row) in self.cross.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v += if a == b { var } else { cov };
            }
        }
        for v in &mut self.sigma2 {
            *v += var;
        }
        self
    }
}

/// `μ_j`, `σ_j²` and `Σ_{j,k}` for the counts of `(r x_0, r x_j)`, `j = 1..m`.
pub fn counting_stats(partition: &IntervalPartition, r: f64) -> Result<StatisticsTriple> {
    check_r(r)?;
    let x = partition.endpoints();
    let d = |j: usize| x[j] - x[0];
    let indices: Vec<usize> = (1..=partition.m()).collect();
    let mu = indices.iter().map(|&j| r * d(j) / PI).collect();
    let sigma2 = indices.iter().map(|&j| (2.0 * r * d(j)).ln() / PI2).collect();
    Ok(StatisticsTriple::build(indices, mu, sigma2, |j, k| {
        (2.0 * r * d(j) * d(k) / (x[k] - x[j]).abs()).ln() / (2.0 * PI2)
    }))
}

/// Hatted statistics of the counts in `(r x_j, r x_{p-1})` (left of the gap)
/// or `(r x_p, r x_j)` (right of it), conditioned on no point in `(r x_{p-1}, r x_p)`.
pub fn conditional_stats(partition: &IntervalPartition, p: usize, r: f64) -> Result<StatisticsTriple> {
    check_r(r)?;
    let m = partition.m();
    if p < 1 || p > m {
        return Err(Error::Index(format!("gap index p = {p} outside 1..={m}")));
    }
    let g = GapGeometry {
        x: partition.endpoints(),
        p,
    };
    let indices = g.indices();
    let mu = indices.iter().map(|&j| r / PI * g.root_product(j)).collect();
    let sigma2 = indices
        .iter()
        .map(|&j| (g.variance_factor(j) * r).ln() / (2.0 * PI2))
        .collect();
    Ok(StatisticsTriple::build(indices, mu, sigma2, |j, k| {
        g.cross_ratio(j, k).ln() / (2.0 * PI2)
    }))
}

/// Predicted variances and covariances of the counts of `(r x_0, r x_j)`:
/// `σ_j² + (1 + γ)/π²` and `Σ_{j,k} + (1 + γ)/(2π²)`.
pub fn var_cov_expansion(partition: &IntervalPartition, r: f64) -> Result<StatisticsTriple> {
    let v = (1.0 + EULER_GAMMA) / PI2;
    Ok(counting_stats(partition, r)?.offset(v, v / 2.0))
}

/// Predicted variances and covariances of the conditional counts:
/// `σ̂_j² + (1 + γ)/(2π²)` and `Σ̂_{j,k}` unchanged.
///
/// Each conditional variable carries a single Barnes pair in the `s_p = 0`
/// expansion, hence half the unconditional variance offset.
pub fn conditional_var_cov_expansion(
    partition: &IntervalPartition,
    p: usize,
    r: f64,
) -> Result<StatisticsTriple> {
    let v = (1.0 + EULER_GAMMA) / (2.0 * PI2);
    Ok(conditional_stats(partition, p, r)?.offset(v, 0.0))
}
