//! The release gate: every acceptance criterion evaluated with its measured
//! value and bound.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    check_comparison, check_dissipation, fit_decay_exponent, laplace_check, oscillator_closed_form,
    relative_gap, ComparisonCase, DissipationMode, QuadraticEnergy,
};
use crate::error::Result;
use crate::fode::{
    detect_blowup, existence_horizon_for, picard_solve, step_solve, FodeProblem, LipschitzBox,
};
use crate::fraccalc::{
    caputo_derivative, compose_check, duality_check, duality_reference, frac_integral,
};
use crate::grid::GridFunction;
use crate::mittag_leffler::{ml, ml_e_samples};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    /// The worst observed value of the quantity being bounded.
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
    /// Free-form breakdown of the sub-measurements.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CriterionResult> {
        self.criteria.iter().filter(|c| !c.passed)
    }
}

type CriterionFn = fn() -> Result<CriterionResult>;
type Labeled = (&'static str, fn(f64) -> f64);

/// All criteria, in order.
pub const CRITERIA: &[(u32, &str, CriterionFn)] = &[
    (1, "mittag_leffler_goldens", mittag_leffler_goldens),
    (2, "semigroup", semigroup),
    (3, "fundamental_theorem", fundamental_theorem),
    (4, "caputo_of_constant", caputo_of_constant),
    (5, "linear_fode", linear_fode),
    (6, "existence_horizon", horizon),
    (7, "blowup_alternative", blowup),
    (8, "comparison_principle", comparison),
    (9, "oscillator_energy_decay", oscillator),
    (10, "laplace_rule", laplace),
    (11, "right_rl_duality", duality),
];

fn run_one(id: u32, name: &'static str, f: CriterionFn) -> CriterionResult {
    f().unwrap_or_else(|e| CriterionResult {
        id,
        name,
        measured: f64::NAN,
        bound: f64::NAN,
        passed: false,
        detail: format!("error: {e}"),
    })
}

/// Runs every criterion. Criteria are independent and run concurrently
/// where threads are available; the report is always in criterion order.
pub fn run_suite() -> SuiteReport {
    #[cfg(not(target_arch = "wasm32"))]
    let criteria = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, name, f)| s.spawn(move || run_one(id, name, f)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    #[cfg(target_arch = "wasm32")]
    let criteria = CRITERIA
        .iter()
        .map(|&(id, name, f)| run_one(id, name, f))
        .collect();
    SuiteReport { criteria }
}

fn result(
    id: u32,
    name: &'static str,
    measured: f64,
    bound: f64,
    passed: bool,
    detail: String,
) -> Result<CriterionResult> {
    Ok(CriterionResult {
        id,
        name,
        measured,
        bound,
        passed,
        detail,
    })
}

fn uniform(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

pub const ML_GOLDEN_TOL: f64 = 1e-10;

/// `E_{1,1}(-t) = e^{-t}` on `[0, 30]`, `E_{2,1}(-t²) = cos t` on `[0, 10]`,
/// `t E_{2,2}(-t²) = sin t` on `[0.1, 10]`, 100 points each.
pub fn mittag_leffler_goldens() -> Result<CriterionResult> {
    let mut worst = [0.0f64; 3];
    for t in uniform(100, 0.0, 30.0) {
        worst[0] = worst[0].max((ml(1.0, 1.0, -t)? - (-t).exp()).abs());
    }
    for t in uniform(100, 0.0, 10.0) {
        worst[1] = worst[1].max((ml(2.0, 1.0, -t * t)? - t.cos()).abs());
    }
    for t in uniform(100, 0.1, 10.0) {
        worst[2] = worst[2].max((t * ml(2.0, 2.0, -t * t)? - t.sin()).abs());
    }
    let m = worst.iter().fold(0.0f64, |a, &b| a.max(b));
    result(
        1,
        "mittag_leffler_goldens",
        m,
        ML_GOLDEN_TOL,
        m <= ML_GOLDEN_TOL,
        format!(
            "exp {:.2e}, cos {:.2e}, sin {:.2e}",
            worst[0], worst[1], worst[2]
        ),
    )
}

pub const SEMIGROUP_ERR: f64 = 0.01;
pub const SEMIGROUP_ORDER: f64 = 0.9;

/// `compose_check(0.3, 0.3, f)` for `f ∈ {1, t, t²}` at `h = 1/512, 1/1024`.
pub fn semigroup() -> Result<CriterionResult> {
    let fs: [Labeled; 3] = [("1", |_| 1.0), ("t", |t| t), ("t^2", |t| t * t)];
    let mut worst_err = 0.0f64;
    let mut worst_order = f64::INFINITY;
    let mut detail = Vec::new();
    for (label, f) in fs {
        let mut errs = [0.0; 2];
        for (i, n) in [512usize, 1024].into_iter().enumerate() {
            let g = GridFunction::sample(1.0 / n as f64, n, f)?;
            errs[i] = compose_check(0.3, 0.3, &g)?;
        }
        let order = (errs[0] / errs[1]).log2();
        worst_err = worst_err.max(errs[0]).max(errs[1]);
        worst_order = worst_order.min(order);
        detail.push(format!(
            "f={label}: {:.3e} -> {:.3e} (order {:.2})",
            errs[0], errs[1], order
        ));
    }
    let passed = worst_err <= SEMIGROUP_ERR && worst_order >= SEMIGROUP_ORDER;
    result(
        2,
        "semigroup",
        worst_err,
        SEMIGROUP_ERR,
        passed,
        format!(
            "{}; min order {:.2} (need >= {})",
            detail.join(", "),
            worst_order,
            SEMIGROUP_ORDER
        ),
    )
}

pub const FTC_REL: f64 = 0.02;

/// `‖J_γ D_c^γ φ + φ(0+) - φ‖_∞ / ‖φ‖_∞` at `h = 1/1024` on `[0, 1]`.
pub fn fundamental_theorem() -> Result<CriterionResult> {
    let h = 1.0 / 1024.0;
    let fs: [Labeled; 3] = [("t", |t| t), ("t^2", |t| t * t), ("sin", f64::sin)];
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (label, f) in fs {
        let phi = GridFunction::sample(h, 1024, f)?;
        for g in [0.3, 0.5, 0.7] {
            let d = caputo_derivative(g, &phi)?;
            let back = frac_integral(g, &d.regular)?.map(|_, v| v + d.singular_coeff);
            let rel = back.max_diff(&phi)? / phi.max_abs();
            worst = worst.max(rel);
            detail.push(format!("{label}/{g}: {rel:.2e}"));
        }
    }
    result(
        3,
        "fundamental_theorem",
        worst,
        FTC_REL,
        worst <= FTC_REL,
        detail.join(", "),
    )
}

/// Bitwise-zero regular part for 20 seeded random `(C, γ, h)`.
pub fn caputo_of_constant() -> Result<CriterionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut nonzero = 0usize;
    for _ in 0..20 {
        let c: f64 = rng.gen_range(-100.0..100.0);
        let g: f64 = rng.gen_range(0.01..0.99);
        let h: f64 = rng.gen_range(1e-3..0.1);
        let n = GridFunction::steps_for(h, 1.0)?;
        let phi = GridFunction::constant(h, n, c)?;
        let d = caputo_derivative(g, &phi)?;
        nonzero += d.regular.values.iter().filter(|v| v.to_bits() != 0).count();
    }
    result(
        4,
        "caputo_of_constant",
        nonzero as f64,
        0.0,
        nonzero == 0,
        "nonzero regular-part entries over 20 seeded triples".into(),
    )
}

pub const LINEAR_FODE_TOL: f64 = 5e-3;
pub const PICARD_MAX_ITERS: usize = 60;

/// `D^{0.5} v = -v`, `v₀ = 1` on `[0, 1]`, `h = 1/2048`, against
/// `E_{0.5}(-t^{0.5})`, by marching and by Picard iteration.
pub fn linear_fode() -> Result<CriterionResult> {
    let h = 1.0 / 2048.0;
    let p = FodeProblem::scalar(0.5, |_, v| -v, 1.0)?;
    let exact = GridFunction::new(0.0, h, ml_e_samples(0.5, -1.0, h, 2048)?)?;
    let s = step_solve(&p, h, 1.0)?;
    let es = s.solution[0].max_diff(&exact)?;
    let pic = picard_solve(&p, h, 1.0, 1e-10, 200)?;
    let ep = pic.solution[0].max_diff(&exact)?;
    let iters = pic.picard_iters.unwrap_or(usize::MAX);
    let m = es.max(ep);
    let passed = m <= LINEAR_FODE_TOL && pic.converged && iters <= PICARD_MAX_ITERS;
    result(
        5,
        "linear_fode",
        m,
        LINEAR_FODE_TOL,
        passed,
        format!("step {es:.3e}, picard {ep:.3e} after {iters} iterations (max {PICARD_MAX_ITERS})"),
    )
}

pub const HORIZON_TOL: f64 = 1e-9;

pub fn horizon() -> Result<CriterionResult> {
    let t1 = existence_horizon_for(
        0.5,
        LipschitzBox {
            a: 1.0,
            l: 0.0,
            m: 1.0,
            t: 10.0,
        },
    )?;
    let err = (t1 - FRAC_PI_4).abs();
    result(
        6,
        "existence_horizon",
        err,
        HORIZON_TOL,
        err <= HORIZON_TOL,
        format!("T1 = {t1:.17}"),
    )
}

pub const BLOWUP_WIDTH: f64 = 0.05;
pub const BLOWUP_CAP: f64 = 1e8;

/// `v' = v²`, `v₀ = 1` (blow-up at 1) with finest step 1/1024, and nesting
/// of the `γ = 0.5` brackets with finest steps 1/256, 1/512, 1/1024.
pub fn blowup() -> Result<CriterionResult> {
    let p1 = FodeProblem::scalar(1.0, |_, v| v * v, 1.0)?;
    let b1 = detect_blowup(&p1, 1.0 / 512.0, BLOWUP_CAP, 3.0)?;
    let p5 = FodeProblem::scalar(0.5, |_, v| v * v, 1.0)?;
    let mut nested = Vec::new();
    for fine in [256.0, 512.0, 1024.0] {
        nested.push(detect_blowup(&p5, 2.0 / fine, BLOWUP_CAP, 3.0)?);
    }
    let (ok1, width, d1) = match b1 {
        Some((lo, hi)) => (
            lo < 1.0 && 1.0 < hi && hi - lo <= BLOWUP_WIDTH,
            hi - lo,
            format!("gamma=1: [{lo:.5}, {hi:.5}]"),
        ),
        None => (false, f64::INFINITY, "gamma=1: no blow-up detected".into()),
    };
    let brackets: Option<Vec<(f64, f64)>> = nested.into_iter().collect();
    let (ok2, d2) = match brackets {
        Some(b) => {
            let nest = b.windows(2).all(|w| w[0].0 <= w[1].0 && w[1].1 <= w[0].1);
            let s: Vec<String> = b.iter().map(|(l, h)| format!("[{l:.4}, {h:.4}]")).collect();
            (nest, format!("gamma=0.5: {} nested={nest}", s.join(" ⊇ ")))
        }
        None => (false, "gamma=0.5: a run did not blow up".into()),
    };
    result(
        7,
        "blowup_alternative",
        width,
        BLOWUP_WIDTH,
        ok1 && ok2,
        format!("{d1}; {d2}"),
    )
}

/// The shipped comparison family: `f = λ v + c`, `λ ∈ {0, 0.5, 1, 1.5, 2}`,
/// `c ∈ {-1, -0.5, 0.5, 1}`, alternating between sub-solutions with a
/// lower initial value and with a lowered forcing.
pub fn comparison_family() -> Vec<(f64, f64, f64, bool)> {
    let mut cases = Vec::new();
    let gammas = [0.3, 0.5, 0.7];
    let mut i = 0;
    for lambda in [0.0, 0.5, 1.0, 1.5, 2.0] {
        for c in [-1.0, -0.5, 0.5, 1.0] {
            cases.push((gammas[i % 3], lambda, c, i % 2 == 0));
            i += 1;
        }
    }
    cases
}

/// Builds case `(γ, λ, c, lower_start)` on `[0, 1]` at step `h`.
pub fn comparison_case(
    gamma: f64,
    lambda: f64,
    c: f64,
    lower_start: bool,
    h: f64,
) -> Result<ComparisonCase> {
    let v20 = 1.0;
    let (v10, c1) = if lower_start {
        (0.5, c)
    } else {
        (v20, c - 0.25)
    };
    let sub = FodeProblem::scalar(gamma, move |_, v| lambda * v + c1, v10)?;
    let sub_solution = step_solve(&sub, h, 1.0)?.solution[0].clone();
    Ok(ComparisonCase {
        gamma,
        sub_solution,
        sup_problem: FodeProblem::scalar(gamma, move |_, v| lambda * v + c, v20)?,
    })
}

pub fn comparison() -> Result<CriterionResult> {
    let h = 1.0 / 512.0;
    let family = comparison_family();
    let mut violations = 0usize;
    let mut worst = f64::NEG_INFINITY;
    for &(g, lambda, c, lower) in &family {
        let case = comparison_case(g, lambda, c, lower, h)?;
        let out = check_comparison(&case, 1.0, h)?;
        if !out.holds {
            violations += 1;
        }
        worst = worst.max(out.max_violation - out.tolerance);
    }
    result(
        8,
        "comparison_principle",
        violations as f64,
        0.0,
        violations == 0 && family.len() >= 20,
        format!(
            "{} cases, worst violation minus tolerance {worst:.3e}",
            family.len()
        ),
    )
}

pub const SLOPE_TOL: f64 = 0.1;

/// Log-log decay slope on `[10, 200]` and `E(t) ≤ E(0)` for the closed form
/// (rounding allowance 4 ulp) and for the marched system.
pub fn oscillator() -> Result<CriterionResult> {
    let h = 0.25;
    let n = 800;
    let mut worst_slope = 0.0f64;
    let mut detail = Vec::new();
    let mut bounded = true;
    for (g, want) in [(0.25, -0.5), (0.4, -0.8), (0.5, f64::NAN)] {
        let s = oscillator_closed_form(g, 0.0, 1.0, h, n)?;
        let e0 = s.energy.first();
        let excess = s
            .energy
            .values
            .iter()
            .fold(f64::NEG_INFINITY, |m, &e| m.max(e - e0));
        bounded &= excess <= 4.0 * f64::EPSILON * e0;
        let marched = check_dissipation(
            g,
            Arc::new(QuadraticEnergy { dim: 2 }),
            &[1.0, 0.0],
            10.0,
            1.0 / 256.0,
            &DissipationMode::canonical(),
        )?;
        bounded &= marched.holds;
        if want.is_nan() {
            detail.push(format!(
                "gamma={g}: max E-E0 {excess:.1e}, marched {:.1e}",
                marched.max_excess
            ));
        } else {
            let slope = fit_decay_exponent(&s.energy, 10.0, 200.0)?;
            worst_slope = worst_slope.max((slope - want).abs());
            detail.push(format!(
                "gamma={g}: slope {slope:.4} (want {want}), max E-E0 {excess:.1e}, marched {:.1e}",
                marched.max_excess
            ));
        }
    }
    result(
        9,
        "oscillator_energy_decay",
        worst_slope,
        SLOPE_TOL,
        worst_slope <= SLOPE_TOL && bounded,
        detail.join("; "),
    )
}

pub const LAPLACE_REL: f64 = 1e-3;

/// `γ = 0.5`, `t_end = 1`, `h = 2^{-16}`, `s ∈ {25, 50}` for
/// `φ ∈ {1, t, e_{0.5,-1}}`.
pub fn laplace() -> Result<CriterionResult> {
    let n = 1usize << 16;
    let h = 1.0 / n as f64;
    let g = 0.5;
    let phis = [
        ("1", GridFunction::constant(h, n, 1.0)?),
        ("t", GridFunction::sample(h, n, |t| t)?),
        (
            "e",
            GridFunction::new(0.0, h, ml_e_samples(g, -1.0, h, n)?)?,
        ),
    ];
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (label, phi) in &phis {
        for s in [25.0, 50.0] {
            let (lhs, rhs) = laplace_check(g, phi, s)?;
            let gap = relative_gap(lhs, rhs);
            worst = worst.max(gap);
            detail.push(format!("{label}@{s}: {gap:.2e}"));
        }
    }
    result(
        10,
        "laplace_rule",
        worst,
        LAPLACE_REL,
        worst <= LAPLACE_REL,
        detail.join(", "),
    )
}

pub const DUALITY_WINDOW: f64 = 4.0;

/// `sin⁴` bump on `[0.5, 3.5]`.
pub fn duality_phi(t: f64) -> f64 {
    if t > 0.5 && t < 3.5 {
        (PI * (t - 0.5) / 3.0).sin().powi(4)
    } else {
        0.0
    }
}

/// Hat on `[1, 3]` peaking at 2.
pub fn duality_psi(t: f64) -> f64 {
    (1.0 - (t - 2.0).abs()).max(0.0)
}

/// Discrepancy at `h = 1/512, 1/1024` against the pairing at `h/16`; must
/// be within `5 h ‖φ‖ ‖ψ‖` and at least halve.
pub fn duality() -> Result<CriterionResult> {
    let g = 0.5;
    let mut reps = Vec::new();
    for n in [512.0, 1024.0] {
        let h = 1.0 / n;
        let reference = duality_reference(g, duality_phi, duality_psi, DUALITY_WINDOW, h / 16.0)?;
        reps.push(duality_check(
            g,
            duality_phi,
            duality_psi,
            DUALITY_WINDOW,
            h,
            reference,
        )?);
    }
    let mut ratio_to_bound = 0.0f64;
    let mut within = true;
    for r in &reps {
        let bound = 5.0 * r.h * r.norm_product;
        within &= r.discrepancy <= bound;
        ratio_to_bound = ratio_to_bound.max(r.discrepancy / bound);
    }
    let shrink = reps[0].discrepancy / reps[1].discrepancy;
    result(
        11,
        "right_rl_duality",
        ratio_to_bound,
        1.0,
        within && shrink >= 2.0,
        format!(
            "h=1/512: {:.3e}, h=1/1024: {:.3e}, reduction x{shrink:.2}; measured is discrepancy / (5 h |phi| |psi|)",
            reps[0].discrepancy, reps[1].discrepancy
        ),
    )
}
