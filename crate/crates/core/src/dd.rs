//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of significand. Only IEEE add/sub/mul/div are used (no
//! fused multiply-add, no platform `exp`/`ln`), so every result here is
//! bit-identical across targets. The one exception is the seed for `ln`,
//! which comes from `libm` and is itself a pure-Rust deterministic routine.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub(crate) const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub(crate) const LN_PI: Dd = Dd::new(1.1447298858494002, 1.0265951162707826e-17);

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
const SPLIT_THRESH: f64 = 6.696_928_794_914_17e299;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    if a.abs() > SPLIT_THRESH {
        let a = a * 3.725_290_298_461_914e-9; // 2^-28
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// `2^k` for `k` in the normal exponent range.
#[inline]
fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    fn renorm(s: f64, e: f64) -> Self {
        if !s.is_finite() {
            return Dd::new(s, 0.0);
        }
        let (hi, lo) = quick_two_sum(s, e);
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64s(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Dd::renorm(p, e)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        Dd::renorm(s, e + self.lo)
    }

    /// Multiplication by `2^k`, exact barring over/underflow.
    pub fn ldexp(self, k: i32) -> Self {
        let mut x = self;
        let mut k = k;
        while k > 1023 {
            x = Dd::new(x.hi * pow2(1023), x.lo * pow2(1023));
            k -= 1023;
        }
        while k < -1022 {
            x = Dd::new(x.hi * pow2(-1022), x.lo * pow2(-1022));
            k += 1022;
        }
        Dd::new(x.hi * pow2(k), x.lo * pow2(k))
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        // exp(x) = 2^k * (1 + expm1(r))^(2^10), r = (x - k ln2) / 2^10
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        let mut term = r;
        let mut sum = r;
        for i in 2..=16 {
            term = term * r / Dd::from(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            // expm1(2y) = expm1(y) * (expm1(y) + 2)
            sum = sum * sum.add_f64(2.0);
        }
        sum.add_f64(1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::new(f64::NEG_INFINITY, 0.0)
            } else {
                Dd::new(f64::NAN, 0.0)
            };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let mut x = Dd::from(libm::log(self.hi));
        for _ in 0..2 {
            x = x + self * (-x).exp() - Dd::ONE;
        }
        x
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x, 0.0)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        if !s.is_finite() {
            return Dd::new(s, 0.0);
        }
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Dd::new(p, 0.0);
        }
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::new(q1, 0.0);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::renorm(s, e).add_f64(q3)
    }
}

/// `sin(pi x)` for a double-double argument, exactly zero at integers.
pub(crate) fn sin_pi(x: Dd) -> Dd {
    // Reduce to r in [-1, 1] using the high word; both steps are exact.
    let k = 2.0 * (x.hi * 0.5).round();
    let mut r = Dd::new(x.hi - k, 0.0) + Dd::new(x.lo, 0.0);
    if r.hi > 0.5 {
        r = Dd::ONE - r;
    } else if r.hi < -0.5 {
        r = -Dd::ONE - r;
    }
    if r.hi == 0.0 {
        return Dd::ZERO;
    }
    let u = PI * r;
    let u2 = u.sqr();
    let mut term = u;
    let mut sum = u;
    let mut i = 1.0;
    loop {
        term = -(term * u2) / Dd::from((i + 1.0) * (i + 2.0));
        sum = sum + term;
        i += 2.0;
        if term.hi.abs() < 1e-34 * sum.hi.abs() || i > 60.0 {
            break;
        }
    }
    sum
}
