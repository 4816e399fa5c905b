//! Log-determinant by LU factorisation with partial pivoting.

use std::f64::consts::PI;
use std::ops::{Div, Mul, Sub};

use num_complex::Complex64;

use crate::ddouble::Dd;
use crate::{Error, Result};

/// Scalars the elimination can run over.
pub(crate) trait Pivot:
    Copy + Send + Sync + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    /// Size used to choose the pivot.
    fn magnitude(self) -> f64;
    fn ln_abs(self) -> f64;
    fn arg(self) -> f64;
    fn is_exact_zero(self) -> bool;
}

impl Pivot for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn ln_abs(self) -> f64 {
        self.abs().ln()
    }
    fn arg(self) -> f64 {
        if self < 0.0 {
            PI
        } else {
            0.0
        }
    }
    fn is_exact_zero(self) -> bool {
        self == 0.0
    }
}

impl Pivot for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn ln_abs(self) -> f64 {
        self.norm().ln()
    }
    fn arg(self) -> f64 {
        Complex64::arg(self)
    }
    fn is_exact_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Pivot for Dd {
    fn magnitude(self) -> f64 {
        self.hi.abs()
    }
    fn ln_abs(self) -> f64 {
        Dd::ln_abs(self)
    }
    fn arg(self) -> f64 {
        if self.hi < 0.0 {
            PI
        } else {
            0.0
        }
    }
    fn is_exact_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

/// `log det` of the row-major `n x n` matrix, destroyed in the process.
///
/// `log|det|` is accumulated pivot by pivot and so is the argument (each row
/// swap adds π). The argument is folded into `(-π, π]` once at the end.
pub(crate) fn log_det<T: Pivot>(a: &mut [T], n: usize) -> Result<Complex64> {
    debug_assert_eq!(a.len(), n * n);
    let mut log_abs = 0.0;
    let mut arg = 0.0;
    for k in 0..n {
        let (p, _) = (k..n)
            .map(|i| (i, a[i * n + k].magnitude()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            arg += PI;
        }
        let pivot = a[k * n + k];
        if pivot.is_exact_zero() {
            return Err(Error::SingularPivot { step: k });
        }
        log_abs += pivot.ln_abs();
        arg += pivot.arg();

        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n + k + 1..k * n + n];
        for row in tail.chunks_exact_mut(n) {
            let l = row[k] / pivot;
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x = *x - l * y;
            }
        }
    }
    Ok(Complex64::new(log_abs, fold_angle(arg)))
}

/// Fold an angle into `(-π, π]`.
pub(crate) fn fold_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = a.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}
