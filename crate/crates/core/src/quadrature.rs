//! Gauss–Legendre rules and their composite image on an interval partition.

use std::f64::consts::PI;

use crate::ddouble::Dd;
use crate::partition::IntervalPartition;
use crate::{Error, Result};

pub const MAX_ORDER: usize = 2048;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`, nodes increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_i f(x_i) over `[-1, 1]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// The rule mapped affinely onto `[a, b]`, applied to `f`.
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        half * self.integrate(|t| f(mid + half * t))
    }
}

/// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// The `n`-point Gauss–Legendre rule, `1 <= n <= 2048`.
///
/// Nodes are roots of P_n found by Newton's method from the asymptotic guess
/// `cos(π (i - 1/4) / (n + 1/2))`; weights are `2 / ((1 - x²) P_n'(x)²)`.
/// Only the positive half is computed and mirrored, so the rule is exactly
/// symmetric.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&n) {
        return Err(Error::QuadratureOrder {
            got: n,
            min: 1,
            max: MAX_ORDER,
        });
    }
    let half = n / 2;
    let nf = n as f64;
    let mut pos_nodes = Vec::with_capacity(half);
    let mut pos_weights = Vec::with_capacity(half);
    for i in 1..=half {
        let mut x = (PI * (i as f64 - 0.25) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(n, x);
            let dp = nf * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                break;
            }
        }
        let (p, pm1) = legendre_pair(n, x);
        let dp = nf * (x * p - pm1) / (x * x - 1.0);
        pos_nodes.push(x);
        pos_weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // pos_nodes are decreasing (largest root first)
    for i in 0..half {
        nodes.push(-pos_nodes[i]);
        weights.push(pos_weights[i]);
    }
    if n % 2 == 1 {
        let (_, pm1) = legendre_pair(n, 0.0);
        // P_n'(0) = n P_{n-1}(0)
        let dp = nf * pm1;
        nodes.push(0.0);
        weights.push(2.0 / (dp * dp));
    }
    for i in (0..half).rev() {
        nodes.push(pos_nodes[i]);
        weights.push(pos_weights[i]);
    }
    Ok(QuadratureRule { nodes, weights })
}

/// A Gauss–Legendre rule transported onto every interval `(r x_{k-1}, r x_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    nodes: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    interval_index: Vec<usize>,
}

impl CompositeRule {
    pub fn interval_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes of interval `k`, zero-based.
    pub fn interval_nodes(&self, k: usize) -> &[f64] {
        &self.nodes[k]
    }

    pub fn interval_weights(&self, k: usize) -> &[f64] {
        &self.weights[k]
    }

    /// Zero-based interval of every global node, in global order.
    pub fn interval_index(&self) -> &[usize] {
        &self.interval_index
    }

    pub fn len(&self) -> usize {
        self.interval_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interval_index.is_empty()
    }

    pub fn global_nodes(&self) -> Vec<f64> {
        self.nodes.iter().flatten().copied().collect()
    }

    pub fn global_weights(&self) -> Vec<f64> {
        self.weights.iter().flatten().copied().collect()
    }
}

fn check_scale(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("scale r must be positive and finite, got {r}")))
    }
}

/// Affine image of the `n`-point rule on each `(r x_{k-1}, r x_k)`.
pub fn composite_rule(
    partition: &IntervalPartition,
    r: f64,
    n_per_interval: usize,
) -> Result<CompositeRule> {
    check_scale(r)?;
    let base = gauss_legendre(n_per_interval)?;
    let m = partition.m();
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut interval_index = Vec::with_capacity(m * n_per_interval);
    for k in 1..=m {
        let (a, b) = partition.interval(k);
        let (a, b) = (r * a, r * b);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        nodes.push(base.nodes().iter().map(|t| mid + half * t).collect());
        weights.push(base.weights().iter().map(|w| half * w).collect());
        interval_index.extend(std::iter::repeat(k - 1).take(n_per_interval));
    }
    Ok(CompositeRule {
        nodes,
        weights,
        interval_index,
    })
}

/// Double-double refinement of the `n`-point rule: one Newton step from the
/// double-precision nodes, with the recurrence run in double-double.
pub(crate) fn gauss_legendre_dd(n: usize) -> Result<(Vec<Dd>, Vec<Dd>)> {
    let rule = gauss_legendre(n)?;
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x0 in rule.nodes() {
        if x0 == 0.0 {
            let (_, pm1) = legendre_pair_dd(n, Dd::ZERO);
            let dp = pm1.mul_f64(nf);
            nodes.push(Dd::ZERO);
            weights.push(Dd::from_f64(2.0) / (dp * dp));
            continue;
        }
        let mut x = Dd::from_f64(x0);
        for _ in 0..2 {
            let (p, pm1) = legendre_pair_dd(n, x);
            let dp = (x * p - pm1).mul_f64(nf) / (x * x - Dd::ONE);
            x -= p / dp;
        }
        let (p, pm1) = legendre_pair_dd(n, x);
        let dp = (x * p - pm1).mul_f64(nf) / (x * x - Dd::ONE);
        nodes.push(x);
        weights.push(Dd::from_f64(2.0) / ((Dd::ONE - x * x) * dp * dp));
    }
    Ok((nodes, weights))
}

fn legendre_pair_dd(n: usize, x: Dd) -> (Dd, Dd) {
    if n == 0 {
        return (Dd::ONE, Dd::ZERO);
    }
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((x * p1).mul_f64(2.0 * kf - 1.0) - p0.mul_f64(kf - 1.0)).div_f64(kf);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Composite rule in double-double: per global node, its position, weight
/// and zero-based interval.
pub(crate) struct CompositeRuleDd {
    pub nodes: Vec<Dd>,
    pub weights: Vec<Dd>,
    pub interval_index: Vec<usize>,
}

pub(crate) fn composite_rule_dd(
    partition: &IntervalPartition,
    r: f64,
    n_per_interval: usize,
) -> Result<CompositeRuleDd> {
    check_scale(r)?;
    let (base_nodes, base_weights) = gauss_legendre_dd(n_per_interval)?;
    let m = partition.m();
    let total = m * n_per_interval;
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut interval_index = Vec::with_capacity(total);
    for k in 1..=m {
        let (a, b) = partition.interval(k);
        let ra = Dd::mul_f64_exact(r, a);
        let rb = Dd::mul_f64_exact(r, b);
        let mid = (ra + rb).mul_f64(0.5);
        let half = (rb - ra).mul_f64(0.5);
        for (t, w) in base_nodes.iter().zip(&base_weights) {
            nodes.push(mid + half * *t);
            weights.push(half * *w);
            interval_index.push(k - 1);
        }
    }
    Ok(CompositeRuleDd {
        nodes,
        weights,
        interval_index,
    })
}
