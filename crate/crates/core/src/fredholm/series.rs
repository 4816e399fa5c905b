//! Truncated Fredholm series, an independent check of the Nyström determinant
//! on small instances:
//!
//! ```text
//! F = Σ_k (-1)^k / k! ∫…∫ det[K(t_i, t_j) (1 - s(t_j))]_{i,j<=k} dt_1…dt_k
//! ```

use super::sine_kernel;
use crate::partition::{IntervalPartition, WeightConfiguration};
use crate::quadrature::gauss_legendre;
use crate::{Error, Result};

/// Largest truncation order supported.
pub const SERIES_MAX_TERMS: usize = 3;
const TRACE_LIMIT: f64 = 0.5;
const MAX_NODES_PER_INTERVAL: usize = 48;

/// F(r x, s) from the first `k_max + 1` terms of the Fredholm series.
///
/// Requires real weights and `Σ_k |1 - s_k| r (x_k - x_{k-1}) / π < 0.5`.
pub fn series_oracle(
    partition: &IntervalPartition,
    weights: &WeightConfiguration,
    r: f64,
    k_max: usize,
) -> Result<f64> {
    if k_max > SERIES_MAX_TERMS {
        return Err(Error::OutOfRange(format!(
            "series truncation k_max = {k_max} exceeds {SERIES_MAX_TERMS}"
        )));
    }
    if weights.m() != partition.m() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} intervals",
            weights.m(),
            partition.m()
        )));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange(format!("scale r must be positive, got {r}")));
    }
    let s = weights
        .as_real()
        .ok_or_else(|| Error::InvalidWeights("series oracle needs real weights".into()))?;

    let trace_bound: f64 = (1..=partition.m())
        .map(|k| {
            let (a, b) = partition.interval(k);
            (1.0 - s[k - 1]).abs() * r * (b - a) / std::f64::consts::PI
        })
        .sum();
    if trace_bound >= TRACE_LIMIT {
        return Err(Error::Precondition(format!(
            "weighted trace {trace_bound:.3} is not below {TRACE_LIMIT}"
        )));
    }

    // flattened nodes with effective weights w (1 - s)
    let mut t = Vec::new();
    let mut c = Vec::new();
    for k in 1..=partition.m() {
        let (a, b) = partition.interval(k);
        let (a, b) = (r * a, r * b);
        let n = (16 + (b - a).ceil() as usize).min(MAX_NODES_PER_INTERVAL);
        let rule = gauss_legendre(n)?;
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            t.push(mid + half * x);
            c.push(half * w * (1.0 - s[k - 1]));
        }
    }
    let n = t.len();
    let kern: Vec<f64> = (0..n * n).map(|ij| sine_kernel(t[ij / n], t[ij % n])).collect();
    let k = |i: usize, j: usize| kern[i * n + j];

    let mut total = 1.0;
    if k_max >= 1 {
        let e1: f64 = (0..n).map(|i| c[i] * k(i, i)).sum();
        total -= e1;
    }
    if k_max >= 2 {
        let mut e2 = 0.0;
        for i in 0..n {
            for j in 0..n {
                e2 += c[i] * c[j] * (k(i, i) * k(j, j) - k(i, j) * k(j, i));
            }
        }
        total += e2 / 2.0;
    }
    if k_max >= 3 {
        let mut e3 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let cij = c[i] * c[j];
                for l in 0..n {
                    let det = k(i, i) * (k(j, j) * k(l, l) - k(j, l) * k(l, j))
                        - k(i, j) * (k(j, i) * k(l, l) - k(j, l) * k(l, i))
                        + k(i, l) * (k(j, i) * k(l, j) - k(j, j) * k(l, i));
                    e3 += cij * c[l] * det;
                }
            }
        }
        total -= e3 / 6.0;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_weights_give_one() {
        let p = IntervalPartition::new(vec![0.0, 0.2]).unwrap();
        let w = WeightConfiguration::real(&[1.0]).unwrap();
        assert_eq!(series_oracle(&p, &w, 1.0, 3).unwrap(), 1.0);
    }

    #[test]
    fn first_order_term_is_expected_count() {
        let p = IntervalPartition::new(vec![0.0, 0.1]).unwrap();
        let w = WeightConfiguration::real(&[0.0]).unwrap();
        let f1 = series_oracle(&p, &w, 1.0, 1).unwrap();
        assert!((f1 - (1.0 - 0.1 / PI)).abs() < 1e-15);
        // second term is positive and tiny (order |A|^4)
        let f2 = series_oracle(&p, &w, 1.0, 2).unwrap();
        assert!(f2 > f1 && f2 - f1 < 1e-5);
    }

    #[test]
    fn precondition_enforced() {
        let p = IntervalPartition::new(vec![0.0, 2.0]).unwrap();
        let w = WeightConfiguration::real(&[0.0]).unwrap();
        assert!(matches!(
            series_oracle(&p, &w, 1.0, 3),
            Err(Error::Precondition(_))
        ));
        assert!(series_oracle(&p, &w, 0.1, 4).is_err());
    }
}
