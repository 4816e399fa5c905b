//! Counting probabilities from the generating function
//! `F(x, s) = E[Π_k s_k^{N_k}]`, `N_k` the number of points in `(r x_{k-1}, r x_k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::StatisticsTriple;
use crate::fredholm::{fredholm_f_with, FredholmOptions, DEFAULT_ORDER};
use crate::partition::{IntervalPartition, WeightConfiguration};
use crate::{Error, Result};

/// Largest number of intervals for the tensor torus grid.
pub const MAX_PMF_DIMENSION: usize = 3;
/// Entries in `(-CLAMP_TOLERANCE, 0)` are rounding and set to zero.
pub const CLAMP_TOLERANCE: f64 = 1e-9;
/// Largest imaginary part tolerated in an inverted coefficient.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;

/// `P(N_1 = k_1, …, N_m = k_m)` for `k_j <= K_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPMF {
    pub max_counts: Vec<usize>,
    /// Row-major over `(k_1, …, k_m)`, last index fastest.
    pub table: Vec<f64>,
    /// `1 - Σ table`: probability of some `N_j > K_j`, plus aliasing.
    pub residual_mass: f64,
}

impl JointPMF {
    fn flat_index(&self, k: &[usize]) -> Option<usize> {
        if k.len() != self.max_counts.len() {
            return None;
        }
        let mut idx = 0;
        for (&kj, &kmax) in k.iter().zip(&self.max_counts) {
            if kj > kmax {
                return None;
            }
            idx = idx * (kmax + 1) + kj;
        }
        Some(idx)
    }

    /// `P(k)`, or `None` outside the table.
    pub fn get(&self, k: &[usize]) -> Option<f64> {
        self.flat_index(k).map(|i| self.table[i])
    }

    pub fn total_mass(&self) -> f64 {
        self.table.iter().sum()
    }

    /// Marginal distribution of `N_j` (1-based), truncated at `K_j`.
    pub fn marginal(&self, j: usize) -> Option<Vec<f64>> {
        let m = self.max_counts.len();
        if j == 0 || j > m {
            return None;
        }
        let mut out = vec![0.0; self.max_counts[j - 1] + 1];
        for (flat, &p) in self.table.iter().enumerate() {
            out[self.multi_index(flat)[j - 1]] += p;
        }
        Some(out)
    }

    fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut k = vec![0; self.max_counts.len()];
        for (slot, &kmax) in k.iter_mut().zip(&self.max_counts).rev() {
            *slot = flat % (kmax + 1);
            flat /= kmax + 1;
        }
        k
    }
}

/// Joint counting distribution by inverting `F` on the torus `s_j = e^{iθ_j}`
/// with `n_grid_per_dim` equispaced angles per dimension.
pub fn joint_pmf(
    partition: &IntervalPartition,
    r: f64,
    max_counts: &[usize],
    n_quad: usize,
    n_grid_per_dim: usize,
) -> Result<JointPMF> {
    let m = partition.m();
    if m > MAX_PMF_DIMENSION {
        return Err(Error::Dimension(format!(
            "joint PMF limited to {MAX_PMF_DIMENSION} intervals, got {m}"
        )));
    }
    if max_counts.len() != m {
        return Err(Error::Dimension(format!(
            "{} count bounds for {m} intervals",
            max_counts.len()
        )));
    }
    let kmax = *max_counts.iter().max().unwrap_or(&0);
    let needed = 2 * kmax + 2;
    if n_grid_per_dim < needed {
        return Err(Error::GridTooSmall {
            needed,
            got: n_grid_per_dim,
        });
    }

    let n = n_grid_per_dim;
    let points = n.pow(m as u32);
    let step = 2.0 * PI / n as f64;
    let grid_index = |mut flat: usize| {
        let mut g = vec![0usize; m];
        for slot in g.iter_mut().rev() {
            *slot = flat % n;
            flat /= n;
        }
        g
    };
    let opts = FredholmOptions::fast();
    let values: Vec<Complex64> = (0..points)
        .into_par_iter()
        .map(|flat| {
            let s: Vec<Complex64> = grid_index(flat)
                .iter()
                .map(|&g| Complex64::from_polar(1.0, step * g as f64))
                .collect();
            let w = WeightConfiguration::complex(s)?;
            Ok(fredholm_f_with(partition, &w, r, n_quad, &opts)?.value())
        })
        .collect::<Result<_>>()?;

    let cells: usize = max_counts.iter().map(|k| k + 1).product();
    let template = JointPMF {
        max_counts: max_counts.to_vec(),
        table: Vec::new(),
        residual_mass: 0.0,
    };
    let norm = 1.0 / points as f64;
    let coefficients: Vec<Complex64> = (0..cells)
        .into_par_iter()
        .map(|cell| {
            let k = template.multi_index(cell);
            let mut acc = Complex64::new(0.0, 0.0);
            for (flat, v) in values.iter().enumerate() {
                let phase: usize = grid_index(flat)
                    .iter()
                    .zip(&k)
                    .map(|(&g, &kj)| g * kj)
                    .sum::<usize>()
                    % n;
                acc += v * Complex64::from_polar(1.0, -step * phase as f64);
            }
            acc * norm
        })
        .collect();

    let mut table = Vec::with_capacity(cells);
    for (cell, c) in coefficients.iter().enumerate() {
        if c.im.abs() >= IMAGINARY_TOLERANCE {
            return Err(Error::Inversion(format!(
                "coefficient {:?} has imaginary part {:e}",
                template.multi_index(cell),
                c.im
            )));
        }
        let p = if c.re < 0.0 && c.re > -CLAMP_TOLERANCE { 0.0 } else { c.re };
        if p < 0.0 {
            return Err(Error::Inversion(format!(
                "coefficient {:?} = {:e} is negative",
                template.multi_index(cell),
                p
            )));
        }
        table.push(p);
    }
    let residual_mass = 1.0 - table.iter().sum::<f64>();
    Ok(JointPMF {
        table,
        residual_mass,
        ..template
    })
}

fn check_unit_weights(s: &[f64]) -> Result<()> {
    match s.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        Some(v) => Err(Error::OutOfRange(format!("weight {v} outside [0, 1]"))),
        None => Ok(()),
    }
}

/// Probability that the process thinned by keeping each point of
/// `(r x_{k-1}, r x_k)` with probability `1 - s_k` has no point in `(r x_0, r x_m)`.
pub fn thinned_gap_probability(
    partition: &IntervalPartition,
    s: &[f64],
    r: f64,
    n: usize,
) -> Result<f64> {
    check_unit_weights(s)?;
    let w = WeightConfiguration::real(s)?;
    Ok(fredholm_f_with(partition, &w, r, n, &FredholmOptions::fast())?.real_value())
}

/// Probability that the original process has no point in `(r x_0, r x_m)`
/// given that the thinned one has none: `F((x_0, x_m), 0) / F(x, s)`.
pub fn conditional_zero_probability(
    partition: &IntervalPartition,
    s: &[f64],
    r: f64,
    n: usize,
) -> Result<f64> {
    check_unit_weights(s)?;
    let opts = FredholmOptions::fast();
    let w = WeightConfiguration::real(s)?;
    let denominator = fredholm_f_with(partition, &w, r, n, &opts)?.log_f.re;
    let numerator =
        fredholm_f_with(&partition.hull(), &WeightConfiguration::real(&[0.0])?, r, n, &opts)?
            .log_f
            .re;
    Ok((numerator - denominator).exp())
}

/// Default finite-difference step in the exponents `u`.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Cumulants of `N_j = #(r x_0, r x_j)`, `j = 1..m`, by central differences of
/// `log F` in the exponents `u` at `u = 0`, Richardson-refined at `h/2`.
///
/// `order = 1` fills the means only (`sigma2` and `cross` are NaN);
/// `order = 2` adds variances and covariances. Uses `n = 64` points per interval.
pub fn numerical_cumulants(
    partition: &IntervalPartition,
    r: f64,
    order: usize,
    h: f64,
) -> Result<StatisticsTriple> {
    numerical_cumulants_with_order(partition, r, order, h, DEFAULT_ORDER)
}

pub fn numerical_cumulants_with_order(
    partition: &IntervalPartition,
    r: f64,
    order: usize,
    h: f64,
    n: usize,
) -> Result<StatisticsTriple> {
    if !(1e-4..=1e-1).contains(&h) {
        return Err(Error::OutOfRange(format!("step h = {h} outside [1e-4, 1e-1]")));
    }
    if !(1..=2).contains(&order) {
        return Err(Error::OutOfRange(format!("cumulant order {order} not in 1..=2")));
    }
    let m = partition.m();
    let log_f = |u: &[f64]| -> Result<f64> {
        let w = WeightConfiguration::from_positive_exponents(u)?;
        Ok(fredholm_f_with(partition, &w, r, n, &FredholmOptions::fast())?.log_f.re)
    };
    let unit = |j: usize, t: f64| {
        let mut u = vec![0.0; m];
        u[j] = t;
        u
    };
    let pair = |j: usize, a: f64, k: usize, b: f64| {
        let mut u = vec![0.0; m];
        u[j] += a;
        u[k] += b;
        u
    };

    // every evaluation point, for both steps, evaluated in parallel
    let mut points: Vec<Vec<f64>> = Vec::new();
    for step in [h, h / 2.0] {
        for j in 0..m {
            points.push(unit(j, step));
            points.push(unit(j, -step));
        }
        if order == 2 {
            for j in 0..m {
                for k in j + 1..m {
                    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        points.push(pair(j, a * step, k, b * step));
                    }
                }
            }
        }
    }
    let values: Vec<f64> = points.par_iter().map(|u| log_f(u)).collect::<Result<_>>()?;
    let lookup = |u: &[f64]| -> f64 {
        let i = points.iter().position(|p| p.as_slice() == u).unwrap();
        values[i]
    };
    // log F(0) = 0 exactly: all weights equal one
    let richardson = |coarse: f64, fine: f64| (4.0 * fine - coarse) / 3.0;

    let mean = |j: usize, t: f64| (lookup(&unit(j, t)) - lookup(&unit(j, -t))) / (2.0 * t);
    let mu: Vec<f64> = (0..m).map(|j| richardson(mean(j, h), mean(j, h / 2.0))).collect();
    let indices: Vec<usize> = (1..=m).collect();
    if order == 1 {
        return Ok(StatisticsTriple {
            indices,
            mu,
            sigma2: vec![f64::NAN; m],
            cross: vec![vec![f64::NAN; m]; m],
        });
    }

    let second = |j: usize, t: f64| (lookup(&unit(j, t)) + lookup(&unit(j, -t))) / (t * t);
    let mixed = |j: usize, k: usize, t: f64| {
        (lookup(&pair(j, t, k, t)) - lookup(&pair(j, t, k, -t)) - lookup(&pair(j, -t, k, t))
            + lookup(&pair(j, -t, k, -t)))
            / (4.0 * t * t)
    };
    let sigma2: Vec<f64> = (0..m)
        .map(|j| richardson(second(j, h), second(j, h / 2.0)))
        .collect();
    let mut cross = vec![vec![0.0; m]; m];
    for j in 0..m {
        cross[j][j] = sigma2[j];
        for k in j + 1..m {
            let c = richardson(mixed(j, k, h), mixed(j, k, h / 2.0));
            cross[j][k] = c;
            cross[k][j] = c;
        }
    }
    Ok(StatisticsTriple {
        indices,
        mu,
        sigma2,
        cross,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::fredholm_f;

    fn part(x: &[f64]) -> IntervalPartition {
        IntervalPartition::new(x.to_vec()).unwrap()
    }

    #[test]
    fn pmf_single_interval() {
        let x = part(&[0.0, 0.5]);
        let pmf = joint_pmf(&x, 1.0, &[6], 32, 14).unwrap();
        assert!((pmf.total_mass() + pmf.residual_mass - 1.0).abs() < 1e-12);
        assert!(pmf.residual_mass.abs() < 1e-8);
        let gap = fredholm_f(&x, &WeightConfiguration::real(&[0.0]).unwrap(), 1.0, 32)
            .unwrap()
            .real_value();
        assert!((pmf.get(&[0]).unwrap() - gap).abs() < 1e-8);
        let mean: f64 = (0..=6).map(|k| k as f64 * pmf.get(&[k]).unwrap()).sum();
        assert!((mean - 0.5 / PI).abs() < 1e-6);
    }

    #[test]
    fn pmf_two_intervals_marginals() {
        let x = part(&[0.0, 0.6, 1.0]);
        let joint = joint_pmf(&x, 2.0, &[5, 4], 24, 12).unwrap();
        let merged = joint_pmf(&part(&[0.0, 0.6]), 2.0, &[5], 24, 12).unwrap();
        let marg = joint.marginal(1).unwrap();
        for k in 0..=5 {
            assert!((marg[k] - merged.get(&[k]).unwrap()).abs() < 1e-8);
        }
        assert_eq!(joint.get(&[6, 0]), None);
    }

    #[test]
    fn pmf_input_errors() {
        let x = part(&[0.0, 0.5]);
        assert!(matches!(
            joint_pmf(&x, 1.0, &[6], 32, 13),
            Err(Error::GridTooSmall { needed: 14, got: 13 })
        ));
        assert!(matches!(joint_pmf(&x, 1.0, &[6, 2], 32, 14), Err(Error::Dimension(_))));
        let big = part(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            joint_pmf(&big, 1.0, &[1, 1, 1, 1], 16, 4),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn thinning_examples() {
        let x = part(&[0.0, 0.4, 1.0]);
        assert!((thinned_gap_probability(&x, &[1.0, 1.0], 3.0, 32).unwrap() - 1.0).abs() < 1e-15);
        let full = thinned_gap_probability(&x, &[0.0, 0.0], 3.0, 32).unwrap();
        let hull = thinned_gap_probability(&x.hull(), &[0.0], 3.0, 32).unwrap();
        assert!((full - hull).abs() < 1e-10);
        let one = part(&[0.0, 1.0]);
        let half = thinned_gap_probability(&one, &[0.5], 4.0, 32).unwrap();
        let none = thinned_gap_probability(&one, &[0.0], 4.0, 32).unwrap();
        assert!(half > none);
        assert!(thinned_gap_probability(&one, &[1.5], 4.0, 32).is_err());
    }

    #[test]
    fn conditional_examples() {
        let x = part(&[0.0, 0.5, 1.0]);
        assert!((conditional_zero_probability(&x, &[0.0, 0.0], 5.0, 32).unwrap() - 1.0).abs() < 1e-12);
        let c = conditional_zero_probability(&x, &[0.3, 0.7], 5.0, 32).unwrap();
        assert!(c > 0.0 && c <= 1.0);
    }

    #[test]
    fn mean_is_exact() {
        let s = numerical_cumulants(&part(&[0.0, 1.0]), 10.0, 1, DEFAULT_STEP).unwrap();
        assert!((s.mu[0] - 10.0 / PI).abs() < 1e-6);
        assert!(s.sigma2[0].is_nan());
        assert!(numerical_cumulants(&part(&[0.0, 1.0]), 10.0, 1, 0.5).is_err());
        assert!(numerical_cumulants(&part(&[0.0, 1.0]), 10.0, 3, 1e-3).is_err());
    }
}
