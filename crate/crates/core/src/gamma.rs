//! Gamma function support.
//!
//! Everything is computed from a double-double Stirling series with upward
//! argument shifting, so the results are deterministic to the last bit and
//! accurate well below f64 rounding on the positive axis.

use crate::dd::{sin_pi, Dd, LN_PI};
use crate::error::{Error, Result};

/// Smallest argument handed to the Stirling series.
const STIRLING_MIN: f64 = 25.0;

const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);

/// `B_{2k} / (2k (2k - 1))` for k = 1..=15.
const STIRLING: [Dd; 15] = [
    Dd::new(0.08333333333333333, 4.625929269271485e-18),
    Dd::new(-0.002777777777777778, 1.0601087908747154e-19),
    Dd::new(0.0007936507936507937, 6.883823317368282e-22),
    Dd::new(-0.0005952380952380953, 5.36938218754726e-20),
    Dd::new(0.0008417508417508417, 3.6870174889237694e-20),
    Dd::new(-0.0019175269175269176, 1.0675702776872475e-19),
    Dd::new(0.00641025641025641, 2.2240044563805217e-19),
    Dd::new(-0.029550653594771242, 4.861760957508855e-19),
    Dd::new(0.17964437236883057, -6.401600482710946e-19),
    Dd::new(-1.3924322169059011, 1.5837056989230303e-17),
    Dd::new(13.402864044168393, -6.154114101993966e-16),
    Dd::new(-156.84828462600203, 9.391823141715389e-15),
    Dd::new(2193.1033333333335, -1.3339255626002948e-13),
    Dd::new(-36108.77125372499, 5.897583353514365e-13),
    Dd::new(691472.268851313, 2.5585296305158e-11),
];

fn ln_gamma_stirling(y: Dd) -> Dd {
    debug_assert!(y.hi >= STIRLING_MIN);
    let inv = Dd::ONE / y;
    let inv2 = inv.sqr();
    let mut series = STIRLING[STIRLING.len() - 1];
    for c in STIRLING.iter().rev().skip(1) {
        series = series * inv2 + *c;
    }
    (y - Dd::from(0.5)) * y.ln() - y + HALF_LN_2PI + series * inv
}

/// `ln Γ(x)` for `x > 0`.
pub(crate) fn ln_gamma_dd(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    if x.hi >= STIRLING_MIN {
        return ln_gamma_stirling(x);
    }
    let m = (STIRLING_MIN - x.hi).ceil() as u32;
    let mut prod = x;
    for j in 1..m {
        prod = prod * x.add_f64(j as f64);
    }
    ln_gamma_stirling(x.add_f64(m as f64)) - prod.ln()
}

/// `ln |1/Γ(x)|` together with the sign of `1/Γ(x)`; the sign is 0 exactly at
/// the poles of Γ (non-positive integers), where the log is `-inf`.
pub(crate) fn ln_abs_recip_gamma_dd(x: Dd) -> (Dd, f64) {
    if x.hi > 0.0 {
        return (-ln_gamma_dd(x), 1.0);
    }
    // 1/Γ(x) = sin(πx) Γ(1-x) / π
    let s = sin_pi(x);
    if s.hi == 0.0 {
        return (Dd::new(f64::NEG_INFINITY, 0.0), 0.0);
    }
    let sign = s.hi.signum();
    (s.abs().ln() + ln_gamma_dd(Dd::ONE - x) - LN_PI, sign)
}

pub(crate) fn ln_abs_recip_gamma(x: f64) -> (f64, f64) {
    let (l, s) = ln_abs_recip_gamma_dd(Dd::from(x));
    (l.to_f64(), s)
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x). Relative error is a few ulp on (0, 171]; poles are reported as
/// errors because the reciprocal form is the meaningful quantity there.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if x > 0.0 {
        return Ok(ln_gamma_dd(Dd::from(x)).exp().to_f64());
    }
    let (l, s) = ln_abs_recip_gamma_dd(Dd::from(x));
    Ok(s * (-l).exp().to_f64())
}

/// 1/Γ(x), exactly zero at the poles of Γ.
pub fn recip_gamma_fn(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    if is_pole(x) {
        return 0.0;
    }
    let (l, s) = ln_abs_recip_gamma_dd(Dd::from(x));
    s * l.exp().to_f64()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "(0, inf)",
        });
    }
    Ok(ln_gamma_dd(Dd::from(x)).to_f64())
}
