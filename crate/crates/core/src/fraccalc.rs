//! Discrete fractional integrals and Caputo derivatives on uniform grids.
//!
//! All schemes are product rules: the data is frozen (piecewise constant or
//! piecewise linear) on each cell and the singular kernel is integrated
//! exactly against it. With `t_n - t_j = (n - j) h` the cell moments reduce to
//! differences of `k^p`, which are tabulated once per call.

use crate::error::{Error, Result};
use crate::gamma::{gamma_fn, recip_gamma_fn};
use crate::grid::GridFunction;

/// Order `α` of the kernel `g_α(t) = t^{α-1} / Γ(α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOrder {
    pub alpha: f64,
}

impl KernelOrder {
    pub fn new(alpha: f64) -> Self {
        KernelOrder { alpha }
    }
}

/// Caputo derivative together with the atom split off from the
/// Riemann–Liouville derivative: `J_{-γ}φ = regular + singular_coeff · g_{1-γ}
/// + delta_coeff · δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoDecomposition {
    pub gamma: f64,
    /// `D_c^γ φ` on the input grid. The value at node 0 is copied from node 1;
    /// the derivative is only defined almost everywhere.
    pub regular: GridFunction,
    /// Coefficient of `g_{1-γ}`, i.e. `φ(0+)`.
    pub singular_coeff: f64,
    /// Coefficient of `δ`; only the order −1 split has one, so this is 0 here.
    pub delta_coeff: f64,
}

/// `g_α(t)` for `α > 0`, `t > 0`.
pub fn kernel_eval(alpha: KernelOrder, t: f64) -> Result<f64> {
    let a = alpha.alpha;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: a,
            range: "(0, inf)",
        });
    }
    if !(t > 0.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            range: "(0, inf)",
        });
    }
    if a == 1.0 {
        return Ok(1.0);
    }
    Ok(libm::pow(t, a - 1.0) * recip_gamma_fn(a))
}

/// `w_k = k^p - (k-1)^p` for `k = 1..=n`; `w[0]` is unused and set to 0.
pub(crate) fn power_increments(p: f64, n: usize) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    let mut prev = 0.0;
    for (k, wk) in w.iter_mut().enumerate().skip(1) {
        let cur = if p == 1.0 {
            k as f64
        } else {
            libm::pow(k as f64, p)
        };
        *wk = cur - prev;
        prev = cur;
    }
    w
}

/// `Σ_i a[i] b[i]`, accumulated in four interleaved lanes that are combined
/// at the end. The order is fixed, so results are reproducible; the lanes
/// only break the add-latency chain.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut lanes = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .fold(0.0, |s, (x, y)| s + x * y);
    for (x, y) in ca.zip(cb) {
        for l in 0..4 {
            lanes[l] += x[l] * y[l];
        }
    }
    ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail
}

/// Kernel weights `w[1..=n]` stored back to front, so that the lagged sum
/// `Σ_{j<m} data[j] w[m - j]` is a contiguous dot product for every `m ≤ n`.
pub(crate) struct LagWeights {
    rev: Vec<f64>,
}

impl LagWeights {
    pub(crate) fn new(w: &[f64]) -> Self {
        LagWeights {
            rev: w[1..].iter().rev().copied().collect(),
        }
    }

    /// `Σ_{j<m} data[j] w[m - j]`.
    pub(crate) fn apply(&self, data: &[f64], m: usize) -> f64 {
        let n = self.rev.len();
        dot(&data[..m], &self.rev[n - m..])
    }
}

/// `out[m] = Σ_{j<m} data[j] · w[m - j]` for `m = 0..len`. Output nodes are
/// independent, so large problems are split across threads; each node is
/// summed the same way regardless, so results do not depend on the thread
/// count.
pub(crate) fn lag_convolve(data: &[f64], w: &[f64]) -> Vec<f64> {
    let len = data.len();
    let lw = LagWeights::new(&w[..len]);
    let mut out = vec![0.0; len];
    let node = |m: usize| lw.apply(data, m);
    #[cfg(not(target_arch = "wasm32"))]
    {
        let threads = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(16);
        if len >= 4096 && threads > 1 {
            // Interleave rows so every thread gets a similar share of the
            // triangular workload.
            let mut parts: Vec<Vec<(usize, f64)>> = Vec::new();
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads)
                    .map(|id| {
                        let node = &node;
                        scope.spawn(move || {
                            (id..len)
                                .step_by(threads)
                                .map(|m| (m, node(m)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                parts = handles.into_iter().map(|h| h.join().unwrap()).collect();
            });
            for (m, v) in parts.into_iter().flatten() {
                out[m] = v;
            }
            return out;
        }
    }
    for (m, o) in out.iter_mut().enumerate() {
        *o = node(m);
    }
    out
}

fn check_integral_order(gamma: f64) -> Result<()> {
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

fn check_derivative_order(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, 1)",
        })
    }
}

/// Abel integral `J_γ f` by the product-rectangle rule:
/// `(J_γ f)_n = h^γ / Γ(γ+1) · Σ_{j<n} f_j [(n-j)^γ - (n-j-1)^γ]`.
pub fn frac_integral(gamma: f64, f: &GridFunction) -> Result<GridFunction> {
    check_integral_order(gamma)?;
    if f.is_empty() {
        return Err(Error::GridTooShort { needed: 1, got: 0 });
    }
    let w = power_increments(gamma, f.last_index());
    let scale = libm::pow(f.h, gamma) / gamma_fn(gamma + 1.0)?;
    let mut out = lag_convolve(&f.values, &w);
    for v in &mut out {
        *v *= scale;
    }
    Ok(f.with_values(out))
}

/// L1 sums `Σ_{j<n} (φ_{j+1} - φ_j) [(n-j)^{1-γ} - (n-j-1)^{1-γ}]`, scaled.
fn l1_scheme(gamma: f64, phi: &GridFunction) -> Vec<f64> {
    let n = phi.last_index();
    let w = power_increments(1.0 - gamma, n);
    // diffs[j] = φ_{j+1} - φ_j, shifted by one so lag_convolve's
    // `data[j] w[n-j]` picks up `d_{j} w[n-j]` for j < n.
    let mut diffs = Vec::with_capacity(n + 1);
    diffs.extend(phi.values.windows(2).map(|p| p[1] - p[0]));
    diffs.push(0.0);
    // out[n] = Σ_{j<n} d_j w[n-j]
    let mut out = lag_convolve(&diffs, &w);
    let scale = libm::pow(phi.h, -gamma) * recip_gamma_fn(2.0 - gamma);
    for v in &mut out {
        *v *= scale;
    }
    out[0] = out[1];
    out
}

/// Caputo derivative by the L1 scheme, exact for piecewise-linear `φ`.
pub fn caputo_derivative(gamma: f64, phi: &GridFunction) -> Result<CaputoDecomposition> {
    check_derivative_order(gamma)?;
    if phi.len() < 2 {
        return Err(Error::GridTooShort {
            needed: 2,
            got: phi.len(),
        });
    }
    Ok(CaputoDecomposition {
        gamma,
        regular: phi.with_values(l1_scheme(gamma, phi)),
        singular_coeff: phi.first(),
        delta_coeff: 0.0,
    })
}

/// Caputo derivative in the form
/// `(1/Γ(1-γ)) [(φ(t) - φ(0)) t^{-γ} + γ ∫_0^t (φ(t) - φ(s)) (t-s)^{-γ-1} ds]`,
/// with `φ` piecewise linear and each cell integrated in closed form. The
/// last cell, where the integrand is only Hölder-integrable, is handled
/// analytically, and node 0 takes the one-sided limit 0.
pub fn caputo_holder_form(gamma: f64, phi: &GridFunction) -> Result<GridFunction> {
    check_derivative_order(gamma)?;
    let n_max = phi.last_index();
    if n_max < 1 {
        return Err(Error::GridTooShort {
            needed: 2,
            got: phi.len(),
        });
    }
    let v = &phi.values;
    // k^{-γ} and k^{1-γ} tables (k = 0 entries unused)
    let neg: Vec<f64> = (0..=n_max).map(|k| libm::pow(k as f64, -gamma)).collect();
    let w = power_increments(1.0 - gamma, n_max);
    let h_neg = libm::pow(phi.h, -gamma);
    let scale = recip_gamma_fn(1.0 - gamma);

    let mut out = vec![0.0; n_max + 1];
    for (n, o) in out.iter_mut().enumerate().skip(1) {
        let mut integral = 0.0;
        for j in 0..n {
            let m = n - j;
            let d = v[j + 1] - v[j];
            // φ(t_n) - φ(s) = A + B u with u = t_n - s
            let linear = gamma / (1.0 - gamma) * d * w[m];
            let constant = if m == 1 {
                0.0
            } else {
                let a = (v[n] - v[j]) - d * m as f64;
                a * (neg[m - 1] - neg[m])
            };
            integral += constant + linear;
        }
        *o = scale * h_neg * ((v[n] - v[0]) * neg[n] + integral);
    }
    Ok(phi.with_values(out))
}

fn boundary_tolerance(psi: &GridFunction) -> f64 {
    1e-12 * (1.0 + psi.max_abs())
}

/// Right Riemann–Liouville derivative `g̃_{-γ} * ψ` of grid data vanishing at
/// both ends: the L1 scheme run backward from `T`, i.e. the left scheme
/// applied to `ψ(T - ·)` and reflected back.
pub fn right_rl_apply(gamma: f64, psi: &GridFunction) -> Result<GridFunction> {
    check_derivative_order(gamma)?;
    if psi.len() < 2 {
        return Err(Error::GridTooShort {
            needed: 2,
            got: psi.len(),
        });
    }
    let tol = boundary_tolerance(psi);
    if psi.first().abs() > tol || psi.last().abs() > tol {
        return Err(Error::NonzeroBoundary {
            first: psi.first(),
            last: psi.last(),
        });
    }
    let mut rev = psi.values.clone();
    rev.reverse();
    let mut out = l1_scheme(gamma, &psi.with_values(rev));
    out.reverse();
    Ok(psi.with_values(out))
}

/// Trapezoid approximation of `∫ a b dt` over the common grid.
pub fn pairing(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    a.same_shape(b)?;
    let n = a.last_index();
    let mut s = 0.0;
    for k in 0..=n {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        s += w * a.values[k] * b.values[k];
    }
    Ok(s * a.h)
}

/// `‖J_α(J_β f) - J_{α+β} f‖_∞` on the grid of `f`.
pub fn compose_check(alpha: f64, beta: f64, f: &GridFunction) -> Result<f64> {
    for (name, x) in [
        ("alpha", alpha),
        ("beta", beta),
        ("alpha + beta", alpha + beta),
    ] {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::OutOfRange {
                name,
                value: x,
                range: "(0, 1]",
            });
        }
    }
    let lhs = frac_integral(alpha, &frac_integral(beta, f)?)?;
    let rhs = frac_integral(alpha + beta, f)?;
    lhs.max_diff(&rhs)
}

/// Both sides of the duality `⟨J_{-γ}φ, ψ⟩ = ⟨φ, g̃_{-γ} * ψ⟩` for interior
/// supported data, and their distance to a reference pairing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityReport {
    pub h: f64,
    /// `⟨D φ, ψ⟩` (for φ vanishing near 0 the Caputo and Riemann–Liouville
    /// derivatives coincide).
    pub left: f64,
    /// `⟨φ, D̃ ψ⟩`.
    pub right: f64,
    /// `max(|left - reference|, |right - reference|)`.
    pub discrepancy: f64,
    /// `‖φ‖_∞ ‖ψ‖_∞` on the grid.
    pub norm_product: f64,
}

/// Discrete pairings at step `h` on `[0, t_end]`, each compared with
/// `reference`, which the caller obtains from a much finer grid (see
/// [`duality_reference`]).
pub fn duality_check(
    gamma: f64,
    phi: impl Fn(f64) -> f64,
    psi: impl Fn(f64) -> f64,
    t_end: f64,
    h: f64,
    reference: f64,
) -> Result<DualityReport> {
    let n = GridFunction::steps_for(h, t_end)?;
    let p = GridFunction::sample(h, n, &phi)?;
    let q = GridFunction::sample(h, n, &psi)?;
    if p.first().abs() > boundary_tolerance(&p) {
        return Err(Error::NonzeroBoundary {
            first: p.first(),
            last: p.last(),
        });
    }
    let left = pairing(&caputo_derivative(gamma, &p)?.regular, &q)?;
    let right = pairing(&p, &right_rl_apply(gamma, &q)?)?;
    Ok(DualityReport {
        h,
        left,
        right,
        discrepancy: (left - reference).abs().max((right - reference).abs()),
        norm_product: p.max_abs() * q.max_abs(),
    })
}

/// The pairing `⟨D φ, ψ⟩` on a fine grid of step `h_ref`, used as the
/// reference value for [`duality_check`]. At that resolution the two sides
/// agree to rounding, so one side suffices.
pub fn duality_reference(
    gamma: f64,
    phi: impl Fn(f64) -> f64,
    psi: impl Fn(f64) -> f64,
    t_end: f64,
    h_ref: f64,
) -> Result<f64> {
    let n = GridFunction::steps_for(h_ref, t_end)?;
    let p = GridFunction::sample(h_ref, n, &phi)?;
    let q = GridFunction::sample(h_ref, n, &psi)?;
    pairing(&caputo_derivative(gamma, &p)?.regular, &q)
}
