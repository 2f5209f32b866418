//! Executable checks of the comparison principle, monotone growth, energy
//! dissipation, the fractional oscillator and the Laplace rule.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fode::{step_solve, FodeProblem, Rhs, VectorRhs};
use crate::fraccalc::{caputo_derivative, frac_integral};
use crate::grid::GridFunction;
use crate::mittag_leffler::MlEvaluator;

/// Number of `(t, v)` pairs sampled when spot-checking monotonicity.
const MONOTONE_SAMPLES: usize = 64;

/// Tolerance `10 h (1 + scale)` shared by the grid-level checks.
pub fn grid_tolerance(h: f64, scale: f64) -> f64 {
    10.0 * h * (1.0 + scale)
}

/// A candidate sub-solution `v₁` of `D_c^γ v ≤ f(t, v)` and the problem
/// whose solution `v₂` should dominate it.
#[derive(Debug, Clone)]
pub struct ComparisonCase {
    pub gamma: f64,
    /// Sampled on the grid later passed to [`check_comparison`].
    pub sub_solution: GridFunction,
    /// Scalar problem `D_c^γ v₂ = f(t, v₂)` with `v₂(0) ≥ v₁(0)`; its
    /// right-hand side is the `f` of the sub-solution inequality.
    pub sup_problem: FodeProblem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonOutcome {
    pub holds: bool,
    /// `max_n max(v₁ - v₂, 0)`.
    pub max_violation: f64,
    pub tolerance: f64,
    /// Last time compared; before `t_end` when `v₂` blew up.
    pub checked_until: f64,
    pub v2: GridFunction,
}

fn eval_scalar(rhs: &dyn Rhs, t: f64, v: f64) -> f64 {
    let mut out = [0.0];
    rhs.eval(t, &[v], &mut out);
    out[0]
}

/// Samples `v ≤ v'` pairs on `[lo, hi] × [0, t_end]` and checks
/// `f(t, v) ≤ f(t, v')`.
fn spot_check_monotone(rhs: &dyn Rhs, t_end: f64, lo: f64, hi: f64) -> Result<()> {
    let span = (hi - lo).max(1.0);
    for i in 0..MONOTONE_SAMPLES {
        let t = t_end * (i % 8) as f64 / 7.0;
        let v = lo + span * (i / 8) as f64 / 8.0;
        let w = v + span / 16.0;
        let (a, b) = (eval_scalar(rhs, t, v), eval_scalar(rhs, t, w));
        if a > b + 1e-12 * (a.abs() + b.abs()) {
            return Err(Error::NotMonotone { t, v });
        }
    }
    Ok(())
}

/// Checks `v₁ ≤ v₂` on the grid, where `v₂` solves the problem of `c` by
/// [`step_solve`] at step `h` up to `t_end`.
///
/// `v₁` must first pass the integrated sub-solution test
/// `v₁(t_n) ≤ v₁(0) + J_γ f(·, v₁)(t_n) + 10 h (1 + ‖v₁‖_∞)`.
pub fn check_comparison(c: &ComparisonCase, t_end: f64, h: f64) -> Result<ComparisonOutcome> {
    let p = &c.sup_problem;
    if p.dim() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            got: p.dim(),
        });
    }
    let n = GridFunction::steps_for(h, t_end)?;
    let v1 = &c.sub_solution;
    if v1.h != h || v1.last_index() < n {
        return Err(Error::Precondition(
            "sub_solution must be sampled on the comparison grid up to t_end",
        ));
    }
    let v1 = v1.truncated(n);
    if v1.first() > p.v0[0] {
        return Err(Error::Precondition(
            "initial data must satisfy v1(0) <= v2(0)",
        ));
    }
    let rhs = p.rhs.as_ref();

    // integrated sub-solution surrogate
    let f1 = v1.map(|t, v| eval_scalar(rhs, t, v));
    let bound = frac_integral(c.gamma, &f1)?;
    let tol_sub = grid_tolerance(h, v1.max_abs());
    for k in 0..v1.len() {
        let excess = v1.values[k] - (v1.first() + bound.values[k]);
        if excess > tol_sub {
            return Err(Error::NotSubSolution {
                t: v1.t(k),
                excess,
                tol: tol_sub,
            });
        }
    }

    let report = step_solve(p, h, t_end)?;
    let v2 = report.solution[0].clone();
    let lo = v1
        .values
        .iter()
        .chain(&v2.values)
        .fold(f64::INFINITY, |m, &x| m.min(x));
    let hi = v1
        .values
        .iter()
        .chain(&v2.values)
        .fold(f64::NEG_INFINITY, |m, &x| m.max(x));
    spot_check_monotone(rhs, t_end, lo, hi)?;

    let tol = grid_tolerance(h, v2.max_abs());
    let mut max_violation = 0.0f64;
    // v₂ may be shorter than v₁ after a blow-up
    for (a, b) in v1.values.iter().zip(&v2.values) {
        max_violation = max_violation.max(a - b);
    }
    Ok(ComparisonOutcome {
        holds: max_violation <= tol,
        max_violation,
        tolerance: tol,
        checked_until: v2.t_end().min(t_end),
        v2,
    })
}

/// Whether the trajectory of `D_c^γ v = f(t, v)`, `v(0) = v₀`, is
/// nondecreasing up to `10 h` per step. Requires `f` nondecreasing in `v`
/// and `f(t, 0) ≥ 0` (spot-checked). If the solution blows up the check
/// covers the surviving grid.
pub fn check_monotone_growth(
    gamma: f64,
    f: Arc<dyn Rhs>,
    v0: f64,
    t_end: f64,
    h: f64,
) -> Result<bool> {
    if !(v0 >= 0.0) {
        return Err(Error::Precondition("monotone growth needs v0 >= 0"));
    }
    let p = FodeProblem::new(gamma, f, vec![v0])?;
    let rhs = p.rhs.as_ref();
    for i in 0..=8 {
        let t = t_end * i as f64 / 8.0;
        if eval_scalar(rhs, t, 0.0) < 0.0 {
            return Err(Error::Precondition("monotone growth needs f(t, 0) >= 0"));
        }
    }
    let r = step_solve(&p, h, t_end)?;
    let v = &r.solution[0];
    spot_check_monotone(rhs, t_end, 0.0, v.max_abs().min(1e6))?;
    let tol = 10.0 * h;
    Ok(v.values.windows(2).all(|w| w[1] >= w[0] - tol))
}

/// A convex energy with its gradient.
pub trait Energy: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, v: &[f64]) -> f64;
    fn gradient(&self, v: &[f64], out: &mut [f64]);
}

/// `E(v) = |v|² / 2`.
#[derive(Debug, Clone, Copy)]
pub struct QuadraticEnergy {
    pub dim: usize,
}

impl Energy for QuadraticEnergy {
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, v: &[f64]) -> f64 {
        0.5 * v.iter().map(|x| x * x).sum::<f64>()
    }
    fn gradient(&self, v: &[f64], out: &mut [f64]) {
        out.copy_from_slice(v);
    }
}

/// A constant energy; every flow it generates is stationary.
#[derive(Debug, Clone, Copy)]
pub struct ConstantEnergy {
    pub dim: usize,
    pub level: f64,
}

impl Energy for ConstantEnergy {
    fn dim(&self) -> usize {
        self.dim
    }
    fn value(&self, _: &[f64]) -> f64 {
        self.level
    }
    fn gradient(&self, _: &[f64], out: &mut [f64]) {
        out.fill(0.0);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DissipationMode {
    /// `D_c^γ v = -∇E(v)`.
    GradientFlow,
    /// `D_c^γ v = J ∇E(v)` with `J` antisymmetric, given row-major.
    Hamiltonian { j: Vec<f64> },
}

impl DissipationMode {
    /// The canonical `J = [[0, 1], [-1, 0]]` acting on `(q, p)`.
    pub fn canonical() -> Self {
        DissipationMode::Hamiltonian {
            j: vec![0.0, 1.0, -1.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DissipationOutcome {
    pub holds: bool,
    pub energy: GridFunction,
    /// `10 h (1 + E(v₀))`.
    pub tolerance: f64,
    /// `max_n E(v_n) - E(v₀)`.
    pub max_excess: f64,
    pub blowup_suspected: bool,
}

/// Solves the gradient or Hamiltonian flow of `energy` with [`step_solve`]
/// and checks `E(v(t_n)) ≤ E(v₀) + tol` at every node.
pub fn check_dissipation(
    gamma: f64,
    energy: Arc<dyn Energy>,
    v0: &[f64],
    t_end: f64,
    h: f64,
    mode: &DissipationMode,
) -> Result<DissipationOutcome> {
    let dim = energy.dim();
    if v0.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: v0.len(),
        });
    }
    let rhs: Arc<dyn Rhs> = match mode {
        DissipationMode::GradientFlow => {
            let e = energy.clone();
            Arc::new(VectorRhs {
                dim,
                f: move |_: f64, v: &[f64], out: &mut [f64]| {
                    e.gradient(v, out);
                    for x in out.iter_mut() {
                        *x = -*x;
                    }
                },
            })
        }
        DissipationMode::Hamiltonian { j } => {
            if j.len() != dim * dim {
                return Err(Error::Dimension {
                    expected: dim * dim,
                    got: j.len(),
                });
            }
            for r in 0..dim {
                for c in 0..dim {
                    if j[r * dim + c] != -j[c * dim + r] {
                        return Err(Error::Precondition("J must be antisymmetric"));
                    }
                }
            }
            let e = energy.clone();
            let j = j.clone();
            Arc::new(VectorRhs {
                dim,
                f: move |_: f64, v: &[f64], out: &mut [f64]| {
                    let mut g = vec![0.0; v.len()];
                    e.gradient(v, &mut g);
                    for (r, o) in out.iter_mut().enumerate() {
                        *o = (0..g.len()).map(|c| j[r * g.len() + c] * g[c]).sum();
                    }
                },
            })
        }
    };
    let p = FodeProblem::new(gamma, rhs, v0.to_vec())?;
    let r = step_solve(&p, h, t_end)?;
    let len = r.solution[0].len();
    let mut state = vec![0.0; dim];
    let trace: Vec<f64> = (0..len)
        .map(|k| {
            for (i, s) in state.iter_mut().enumerate() {
                *s = r.solution[i].values[k];
            }
            energy.value(&state)
        })
        .collect();
    let e0 = energy.value(v0);
    let tolerance = grid_tolerance(h, e0);
    let max_excess = trace.iter().fold(f64::NEG_INFINITY, |m, &e| m.max(e - e0));
    Ok(DissipationOutcome {
        holds: max_excess <= tolerance,
        energy: r.solution[0].with_values(trace),
        tolerance,
        max_excess,
        blowup_suspected: r.blowup_suspected,
    })
}

/// Trajectory of the fractional oscillator `D_c^γ q = p`, `D_c^γ p = -q`
/// with energy `E = (p² + q²)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianState {
    pub p: GridFunction,
    pub q: GridFunction,
    pub energy: GridFunction,
    /// `β(t) = E_{2γ}(-t^{2γ})`.
    pub beta: GridFunction,
    /// `J_γ β(t) = t^γ E_{2γ,γ+1}(-t^{2γ})`.
    pub j_beta: GridFunction,
}

/// Closed-form oscillator solution on `0, h, ..., n h`:
/// `q = q₀ β + p₀ J_γβ`, `p = p₀ β - q₀ J_γβ`, and
/// `E(t) = E(0) (β² + (J_γβ)²)`.
pub fn oscillator_closed_form(
    gamma: f64,
    p0: f64,
    q0: f64,
    h: f64,
    n: usize,
) -> Result<HamiltonianState> {
    if !(gamma > 0.0 && gamma <= 0.5) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, 0.5]",
        });
    }
    let a = 2.0 * gamma;
    let e1 = MlEvaluator::new(a, 1.0)?;
    let e2 = MlEvaluator::new(a, gamma + 1.0)?;
    let mut beta = Vec::with_capacity(n + 1);
    let mut jb = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = k as f64 * h;
        if k == 0 {
            beta.push(1.0);
            jb.push(0.0);
            continue;
        }
        let z = -libm::pow(t, a);
        beta.push(e1.eval(z)?);
        jb.push(libm::pow(t, gamma) * e2.eval(z)?);
    }
    let e0 = 0.5 * (p0 * p0 + q0 * q0);
    let q: Vec<f64> = beta.iter().zip(&jb).map(|(b, j)| q0 * b + p0 * j).collect();
    let p: Vec<f64> = beta.iter().zip(&jb).map(|(b, j)| p0 * b - q0 * j).collect();
    let energy: Vec<f64> = beta
        .iter()
        .zip(&jb)
        .map(|(b, j)| e0 * (b * b + j * j))
        .collect();
    let mk = |v: Vec<f64>| GridFunction::new(0.0, h, v);
    Ok(HamiltonianState {
        p: mk(p)?,
        q: mk(q)?,
        energy: mk(energy)?,
        beta: mk(beta)?,
        j_beta: mk(jb)?,
    })
}

/// Least-squares slope of `ln E` against `ln t` over the grid nodes in
/// `[t_lo, t_hi]`, for `t_lo ≥ 10`.
pub fn fit_decay_exponent(energy: &GridFunction, t_lo: f64, t_hi: f64) -> Result<f64> {
    if !(t_lo >= 10.0) {
        return Err(Error::OutOfRange {
            name: "t_lo",
            value: t_lo,
            range: "[10, inf)",
        });
    }
    let mut pts = Vec::new();
    for (t, &e) in energy.times().zip(&energy.values) {
        if t < t_lo || t > t_hi {
            continue;
        }
        if !(e > 0.0) {
            return Err(Error::NonPositiveEnergy { t, value: e });
        }
        pts.push((t.ln(), e.ln()));
    }
    if pts.len() < 2 {
        return Err(Error::EmptyWindow { lo: t_lo, hi: t_hi });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Truncated Laplace transform: trapezoid over the grid plus the tail
/// `f_N e^{-sT} / s` of `f` continued by its last value.
fn laplace_quadrature(f: &GridFunction, s: f64) -> f64 {
    let n = f.last_index();
    let mut acc = 0.0;
    for k in 0..=n {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += w * (-s * f.t(k)).exp() * f.values[k];
    }
    acc * f.h + f.last() * (-s * f.t_end()).exp() / s
}

/// Both sides of `𝓛(D_c^γ φ)(s) = s^γ 𝓛(φ)(s) - φ(0+) s^{γ-1}`.
///
/// The right side is evaluated as `s^γ 𝓛(φ - φ(0+))`, which is the same
/// expression with the transform of the constant taken exactly; a constant
/// `φ` then gives exactly 0 on both sides. Needs `s · t_end ≥ 25`.
pub fn laplace_check(gamma: f64, phi: &GridFunction, s: f64) -> Result<(f64, f64)> {
    let st = s * phi.t_end();
    if !(s > 0.0) || st < 25.0 {
        return Err(Error::LaplaceTruncation(st));
    }
    let d = caputo_derivative(gamma, phi)?;
    let lhs = laplace_quadrature(&d.regular, s);
    let phi0 = phi.first();
    let shifted = phi.map(|_, v| v - phi0);
    let rhs = libm::pow(s, gamma) * laplace_quadrature(&shifted, s);
    Ok((lhs, rhs))
}

/// `|lhs - rhs| / (|rhs| + 1e-30)`.
pub fn relative_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / (rhs.abs() + 1e-30)
}
