//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sinegap::IntervalPartition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Neville–Richardson extrapolation to `h = 0` of values taken at `h_i`,
/// assuming an expansion in powers of `h`.
pub fn richardson(h: &[f64], v: &[f64]) -> f64 {
    let mut t = v.to_vec();
    let n = t.len();
    for level in 1..n {
        for i in (level..n).rev() {
            t[i] = (h[i - level] * t[i] - h[i] * t[i - 1]) / (h[i - level] - h[i]);
        }
    }
    t[n - 1]
}

fn kahan_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in terms {
        let y = x - c;
        let t = s + y;
        c = (t - s) - y;
        s = t;
    }
    s
}

/// γ from `H_n - ln n - 1/(2n)`, whose error is a series in `1/n²`.
pub fn euler_gamma_oracle() -> f64 {
    let ns = [8usize, 16, 32, 64, 128, 256];
    let h: Vec<f64> = ns.iter().map(|&n| 1.0 / (n * n) as f64).collect();
    let v: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let nf = n as f64;
            kahan_sum((1..=n).map(|k| 1.0 / k as f64)) - nf.ln() - 0.5 / nf
        })
        .collect();
    richardson(&h, &v)
}

/// log A (Glaisher–Kinkelin) from the hyperfactorial limit
/// `a_n = Σ k ln k - (n²/2 + n/2 + 1/12) ln n + n²/4 → ln A`, error a series in `1/n²`.
/// Summed through its increments `a_k - a_{k-1}`, which avoids the
/// cancellation between the `n² ln n` sized terms.
pub fn log_glaisher_oracle() -> f64 {
    let ns = [4usize, 8, 16, 32, 64, 128];
    let h: Vec<f64> = ns.iter().map(|&n| 1.0 / (n * n) as f64).collect();
    let a = |n: usize| {
        0.25 + kahan_sum((2..=n).map(|k| {
            let j = (k - 1) as f64;
            let p = j * j / 2.0 + j / 2.0 + 1.0 / 12.0;
            (2 * k - 1) as f64 / 4.0 - p * (1.0 / j).ln_1p()
        }))
    };
    let v: Vec<f64> = ns.iter().map(|&n| a(n)).collect();
    richardson(&h, &v)
}

/// Adaptive Simpson quadrature of a complex function on a real interval.
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn step<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// ψ(z) by upward recursion to Re z >= 12 and the asymptotic series.
pub fn digamma_oracle(mut z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < 12.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let inv2 = (z * z).inv();
    // ψ(z) ~ ln z - 1/(2z) - Σ B_{2k} / (2k z^{2k})
    let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, bk) in b.iter().enumerate() {
        series += pow * (bk / (2.0 * (k + 1) as f64));
        pow *= inv2;
    }
    acc + z.ln() - 0.5 * z.inv() - series
}

/// Random ordered endpoints: `m` gaps each in `[min_gap, max_gap]`, starting at `start`.
pub fn random_partition(
    rng: &mut impl Rng,
    m: usize,
    start: f64,
    min_gap: f64,
    max_gap: f64,
) -> IntervalPartition {
    let mut x = vec![start];
    for _ in 0..m {
        let last = *x.last().unwrap();
        x.push(last + rng.gen_range(min_gap..max_gap));
    }
    IntervalPartition::new(x).unwrap()
}
