//! Two-parameter Mittag-Leffler function on the real line.
//!
//! `E_{α,β}(z) = Σ zⁿ / Γ(αn + β)`.
//!
//! Two evaluation regimes are used. With `W = |z|^{1/α}` (the exponent scale
//! of the largest series term, which is roughly `e^W`):
//!
//! * `z >= 0`, or `z < 0` with `W <= 40`: the Taylor series, summed in
//!   double-double arithmetic so that the cancellation on the negative axis
//!   (terms up to ~`e^40`) costs nothing visible in f64.
//! * `z < 0` with `W > 40`: the algebraic asymptotic expansion
//!   `-Σ_{k≥1} (-1)ᵏ x⁻ᵏ / Γ(β - αk)`, `x = -z`, truncated optimally,
//!   plus the two conjugate exponentials `Z^{1-β} e^Z / α`, `Z = x^{1/α} e^{±iπ/α}`,
//!   which are not negligible when `1 < α <= 2` (they are the cosine/sine of
//!   the `α = 2` case).
//!
//! In terms of `z` the switch happens at `z_switch(α) = 40^α`, which is 40
//! for the exponential (`α = 1`).

use crate::dd::Dd;
use crate::dd::LN_PI;
use crate::error::{Error, Result};
use crate::gamma::{ln_abs_recip_gamma, ln_abs_recip_gamma_dd, ln_gamma_dd};

/// Absolute accuracy the evaluator is designed for.
pub const ML_TOL: f64 = 1e-10;

/// Threshold on `W = |z|^{1/α}` separating the series and asymptotic regimes.
pub const SWITCH_SCALE: f64 = 40.0;

/// Hard cap on series terms. The slowest case inside the series regime
/// (small α, `W` near the switch) needs a few thousand.
pub const MAX_SERIES_TERMS: usize = 20_000;

/// Hard cap on asymptotic terms.
pub const MAX_ASYMPTOTIC_TERMS: usize = 600;

/// Smallest β accepted. The reflection formula used for 1/Γ at negative
/// arguments stays accurate well past this.
pub const MIN_BETA: f64 = -50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl MlParams {
    /// One-parameter form, `β = 1`.
    pub fn new(alpha: f64, z: f64) -> Self {
        MlParams {
            alpha,
            beta: 1.0,
            z,
        }
    }

    pub fn with_beta(alpha: f64, beta: f64, z: f64) -> Self {
        MlParams { alpha, beta, z }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: self.alpha,
                range: "(0, inf)",
            });
        }
        if !(self.beta >= MIN_BETA && self.beta.is_finite()) {
            return Err(Error::OutOfRange {
                name: "beta",
                value: self.beta,
                range: "[-50, inf)",
            });
        }
        if !self.z.is_finite() {
            return Err(Error::OutOfRange {
                name: "z",
                value: self.z,
                range: "finite reals",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlMethod {
    Series,
    Asymptotic,
}

impl MlMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MlMethod::Series => "series",
            MlMethod::Asymptotic => "asymptotic",
        }
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlRegime {
    pub kind: MlMethod,
    pub terms_used: usize,
    pub est_error: f64,
}

impl MlRegime {
    /// False when the estimated error exceeds [`ML_TOL`]; the value is still
    /// returned but should be treated with suspicion.
    pub fn is_accurate(&self) -> bool {
        self.est_error <= ML_TOL
    }
}

/// `z` below which the asymptotic expansion is used.
pub fn z_switch(alpha: f64) -> f64 {
    -libm::pow(SWITCH_SCALE, alpha)
}

/// `E_{α,β}(z)` with the regime that produced it.
pub fn mittag_leffler(p: MlParams) -> Result<(f64, MlRegime)> {
    p.validate()?;
    Ok(MlEvaluator::new_unchecked(p.alpha, p.beta).eval_regime(p.z))
}

/// Value-only convenience wrapper around [`mittag_leffler`].
pub fn ml(alpha: f64, beta: f64, z: f64) -> Result<f64> {
    mittag_leffler(MlParams::with_beta(alpha, beta, z)).map(|(v, _)| v)
}

/// The defining series, summed in double-double arithmetic regardless of
/// regime. Exposed so the two regimes can be compared directly.
pub fn ml_series(alpha: f64, beta: f64, z: f64) -> (f64, MlRegime) {
    MlEvaluator::new_unchecked(alpha, beta).series(z)
}

/// `E_{α,β}` for fixed `(α, β)`, caching the series coefficients
/// `ln|1/Γ(αn + β)|` across calls. Sampling a function on a grid is the
/// typical use. Results are bit-identical to [`mittag_leffler`].
#[derive(Debug, Clone)]
pub struct MlEvaluator {
    alpha: f64,
    beta: f64,
    coeffs: std::cell::RefCell<Vec<(Dd, f64)>>,
}

impl MlEvaluator {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        MlParams::with_beta(alpha, beta, 0.0).validate()?;
        Ok(MlEvaluator::new_unchecked(alpha, beta))
    }

    fn new_unchecked(alpha: f64, beta: f64) -> Self {
        MlEvaluator {
            alpha,
            beta,
            coeffs: std::cell::RefCell::new(Vec::new()),
        }
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::OutOfRange {
                name: "z",
                value: z,
                range: "finite reals",
            });
        }
        Ok(self.eval_regime(z).0)
    }

    fn eval_regime(&self, z: f64) -> (f64, MlRegime) {
        let (alpha, beta) = (self.alpha, self.beta);
        if z >= 0.0 || alpha > 2.0 {
            return self.series(z);
        }
        let w = libm::pow(-z, 1.0 / alpha);
        if w <= SWITCH_SCALE {
            self.series(z)
        } else {
            ml_asymptotic(alpha, beta, -z)
        }
    }

    /// `(ln|1/Γ(αn + β)|, sign)`.
    fn coeff(&self, n: usize) -> (Dd, f64) {
        let mut c = self.coeffs.borrow_mut();
        while c.len() <= n {
            let k = c.len();
            let arg = Dd::mul_f64s(self.alpha, k as f64).add_f64(self.beta);
            c.push(ln_abs_recip_gamma_dd(arg));
        }
        c[n]
    }

    fn series(&self, z: f64) -> (f64, MlRegime) {
        let (alpha, beta) = (self.alpha, self.beta);
        if z == 0.0 {
            return (
                crate::gamma::recip_gamma_fn(beta),
                MlRegime {
                    kind: MlMethod::Series,
                    terms_used: 1,
                    est_error: 0.0,
                },
            );
        }
        let ln_abs_z = Dd::from(z.abs()).ln();
        let negative = z < 0.0;
        let w = libm::pow(z.abs(), 1.0 / alpha);

        let mut sum = Dd::ZERO;
        let mut peak = 0.0f64;
        let mut last = f64::INFINITY;
        let mut used = 0;
        for n in 0..MAX_SERIES_TERMS {
            let arg_hi = alpha * n as f64 + beta;
            let (ln_rg, sign) = self.coeff(n);
            let term = if sign == 0.0 {
                Dd::ZERO
            } else {
                let mag = (ln_abs_z.mul_f64(n as f64) + ln_rg).exp();
                let s = if negative && n % 2 == 1 { -sign } else { sign };
                if s < 0.0 {
                    -mag
                } else {
                    mag
                }
            };
            sum = sum + term;
            used = n + 1;
            last = term.hi.abs();
            peak = peak.max(last);
            // Past the peak the terms decrease monotonically.
            if arg_hi > w + 2.0 && arg_hi > 2.0 && last < 1e-16 * (1.0 + sum.hi.abs()) {
                break;
            }
        }
        let mut est_error = last + peak * 1e-30;
        if used == MAX_SERIES_TERMS {
            est_error = est_error.max(last * MAX_SERIES_TERMS as f64);
        }
        (
            sum.to_f64(),
            MlRegime {
                kind: MlMethod::Series,
                terms_used: used,
                est_error: if est_error.is_finite() {
                    est_error
                } else {
                    f64::MAX
                },
            },
        )
    }
}

/// Asymptotic expansion of `E_{α,β}(-x)` for large `x > 0`, `0 < α <= 2`.
pub fn ml_asymptotic(alpha: f64, beta: f64, x: f64) -> (f64, MlRegime) {
    let ln_x = libm::log(x);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut prev_env = f64::INFINITY;
    let mut est_error = 0.0;
    let mut used = 0;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let arg = Dd::from(beta) - Dd::mul_f64s(alpha, k as f64);
        // Truncation is decided on a smooth envelope of |x^{-k}/Γ(y)|: Γ(1-y)/π
        // below y = 1/2 (dropping the sin(πy) factor that makes single terms
        // nearly vanish), 1/Γ(y) above; the two agree at y = 1/2.
        let ln_env = if arg.hi >= 0.5 {
            ln_abs_recip_gamma_dd(arg).0.to_f64()
        } else {
            (ln_gamma_dd(Dd::ONE - arg) - LN_PI).to_f64()
        } - k as f64 * ln_x;
        let env = libm::exp(ln_env);
        if env > prev_env {
            // optimal truncation: the smallest term bounds the error
            break;
        }
        prev_env = env;
        est_error = env;
        used = k;
        let (ln_rg, sign) = ln_abs_recip_gamma(arg.to_f64());
        if sign != 0.0 {
            let mag = libm::exp(ln_rg - k as f64 * ln_x);
            // -(-1)^k x^{-k} / Γ(β - αk)
            let term = if k % 2 == 0 { -sign * mag } else { sign * mag };
            // Kahan summation
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if env < 1e-18 * sum.abs() {
            break;
        }
    }

    let w = libm::pow(x, 1.0 / alpha);
    let theta = std::f64::consts::PI / alpha;
    let exponential = if alpha == 1.0 {
        // both branches coincide; each carries half weight
        libm::pow(w, 1.0 - beta) * libm::exp(-w) * libm::cos((1.0 - beta) * std::f64::consts::PI)
    } else if alpha > 1.0 {
        let re = w * libm::cos(theta);
        let im = w * libm::sin(theta);
        2.0 / alpha
            * libm::pow(w, 1.0 - beta)
            * libm::exp(re)
            * libm::cos((1.0 - beta) * theta + im)
    } else {
        0.0
    };

    (
        sum + exponential,
        MlRegime {
            kind: MlMethod::Asymptotic,
            terms_used: used,
            est_error,
        },
    )
}

fn check_order(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, 1]",
        })
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "[0, inf)",
        })
    }
}

/// `e_{γ,λ}(t) = E_γ(λ t^γ)`, the solution of `D^γ v = λ v`, `v(0) = 1`.
pub fn ml_e(gamma: f64, lambda: f64, t: f64) -> Result<f64> {
    check_order(gamma)?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(1.0);
    }
    ml(gamma, 1.0, lambda * libm::pow(t, gamma))
}

/// `e'_{γ,λ}(t) = λ t^{γ-1} E_{γ,γ}(λ t^γ)` for `t > 0`.
pub fn ml_e_prime(gamma: f64, lambda: f64, t: f64) -> Result<f64> {
    check_order(gamma)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, inf)",
        });
    }
    let tg = libm::pow(t, gamma);
    Ok(lambda * tg / t * ml(gamma, gamma, lambda * tg)?)
}

/// `∫₀ᵗ e_{γ,λ}(s) ds = t E_{γ,2}(λ t^γ)`.
pub fn ml_e_integral(gamma: f64, lambda: f64, t: f64) -> Result<f64> {
    check_order(gamma)?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(t * ml(gamma, 2.0, lambda * libm::pow(t, gamma))?)
}

/// `e_{γ,λ}(k h)` for `k = 0..=n`; same values as [`ml_e`], faster.
pub fn ml_e_samples(gamma: f64, lambda: f64, h: f64, n: usize) -> Result<Vec<f64>> {
    check_order(gamma)?;
    let e = MlEvaluator::new(gamma, 1.0)?;
    (0..=n)
        .map(|k| {
            let t = k as f64 * h;
            if t == 0.0 {
                Ok(1.0)
            } else {
                e.eval(lambda * libm::pow(t, gamma))
            }
        })
        .collect()
}

/// `∫₀^{kh} e_{γ,λ}` for `k = 0..=n`; same values as [`ml_e_integral`].
pub fn ml_e_integral_samples(gamma: f64, lambda: f64, h: f64, n: usize) -> Result<Vec<f64>> {
    check_order(gamma)?;
    let e = MlEvaluator::new(gamma, 2.0)?;
    (0..=n)
        .map(|k| {
            let t = k as f64 * h;
            if t == 0.0 {
                Ok(0.0)
            } else {
                Ok(t * e.eval(lambda * libm::pow(t, gamma))?)
            }
        })
        .collect()
}
