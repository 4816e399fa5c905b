//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving about 32 significant digits.
//!
//! Only what the Nyström determinant needs is provided: the field
//! operations, square root and the sine function.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    #[cfg(test)]
    pub const PI: Dd = Dd {
        hi: 3.141_592_653_589_793,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.570_796_326_794_896_6,
        lo: 6.123_233_995_736_766e-17,
    };
    pub const FRAC_1_PI: Dd = Dd {
        hi: 0.318_309_886_183_790_7,
        lo: -1.967_867_667_518_248_6e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[cfg(test)]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64_exact(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(q1).mul_f64(b);
        let q2 = r.hi / b;
        let r = r - Dd::from_f64(q2).mul_f64(b);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = self.hi.sqrt();
        let sq = Dd::mul_f64_exact(s, s);
        let corr = (self - sq).hi / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, corr);
        Dd { hi, lo }
    }

    pub fn round(self) -> f64 {
        let r = self.hi.round();
        if r == self.hi {
            // hi is an integer; the fractional part sits in lo
            r + self.lo.round()
        } else if (r - self.hi).abs() == 0.5 {
            // tie in hi, lo decides
            if self.lo > 0.0 {
                self.hi.floor() + 1.0
            } else {
                self.hi.floor()
            }
        } else {
            r
        }
    }

    /// Natural log of |self| to double precision (enough for log-determinant sums).
    #[inline]
    pub fn ln_abs(self) -> f64 {
        let a = self.abs();
        a.hi.ln() + a.lo / a.hi
    }

    /// sin(x) to double-double accuracy for moderate |x| (a few hundred at most).
    pub fn sin(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let k = (self / Dd::FRAC_PI_2).round();
        let t = self - Dd::FRAC_PI_2.mul_f64(k);
        let quadrant = (k.rem_euclid(4.0)) as u8;
        match quadrant {
            0 => sin_taylor(t),
            1 => cos_taylor(t),
            2 => -sin_taylor(t),
            _ => -cos_taylor(t),
        }
    }

    /// sin(x)/x with the removable singularity filled in.
    pub fn sinc(self) -> Dd {
        if self.hi.abs() < 1e-4 {
            // 1 - x²/6 + x⁴/120 - x⁶/5040 + x⁸/362880; x^10/4e7 < 1e-47
            let x2 = self * self;
            let mut acc = Dd::ONE;
            for k in (1..=4).rev() {
                let d = (2 * k) as f64 * (2 * k + 1) as f64;
                acc = Dd::ONE - (x2 * acc).div_f64(d);
            }
            acc
        } else {
            self.sin() / self
        }
    }
}

/// Horner form of the Taylor series on |t| <= π/4.
fn sin_taylor(t: Dd) -> Dd {
    let t2 = t * t;
    let mut acc = Dd::ONE;
    for k in (1..=14).rev() {
        let d = (2 * k) as f64 * (2 * k + 1) as f64;
        acc = Dd::ONE - (t2 * acc).div_f64(d);
    }
    t * acc
}

fn cos_taylor(t: Dd) -> Dd {
    let t2 = t * t;
    let mut acc = Dd::ONE;
    for k in (1..=14).rev() {
        let d = (2 * k - 1) as f64 * (2 * k) as f64;
        acc = Dd::ONE - (t2 * acc).div_f64(d);
    }
    acc
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e} + {:e})", self.hi, self.lo)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
