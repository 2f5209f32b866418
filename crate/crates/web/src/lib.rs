//! Browser bindings for three small `fracode` experiments. The plain
//! functions carry the logic and are tested natively; the `#[wasm_bindgen]`
//! wrappers only convert errors.

use fracode::analysis::{fit_decay_exponent, oscillator_closed_form};
use fracode::fode::{step_solve, FodeProblem};
use fracode::mittag_leffler::{ml_e_samples, MlEvaluator};
use fracode::Result;
use wasm_bindgen::prelude::*;

/// Largest grid the page will request; keeps the O(N²) solver interactive.
pub const MAX_NODES: usize = 4096;

fn nodes(n: usize) -> usize {
    n.clamp(2, MAX_NODES)
}

/// `E_{α,β}(z)` at `n` evenly spaced `z` in `[z_min, z_max]`.
pub fn ml_curve_values(
    alpha: f64,
    beta: f64,
    z_min: f64,
    z_max: f64,
    n: usize,
) -> Result<Vec<f64>> {
    let e = MlEvaluator::new(alpha, beta)?;
    let n = nodes(n);
    (0..n)
        .map(|i| e.eval(z_min + (z_max - z_min) * i as f64 / (n - 1) as f64))
        .collect()
}

/// `D^γ v = -v`, `v(0) = 1` on `[0, t_end]` with `n` steps. Returns the
/// marched values followed by the closed form `E_γ(-t^γ)`, each `n + 1` long.
pub fn relaxation_values(gamma: f64, t_end: f64, n: usize) -> Result<Vec<f64>> {
    let n = nodes(n);
    let h = t_end / n as f64;
    let p = FodeProblem::scalar(gamma, |_, v| -v, 1.0)?;
    let mut out = step_solve(&p, h, t_end)?.solution[0].values.clone();
    out.resize(n + 1, f64::NAN);
    out.extend(ml_e_samples(gamma, -1.0, h, n)?);
    Ok(out)
}

/// Oscillator energy `E(t)` from `q(0) = 1, p(0) = 0` on `[0, t_end]` with
/// `n` steps, followed by one extra entry: the fitted log-log decay slope
/// on `[10, t_end]` (NaN if the window is too short).
pub fn oscillator_energy_values(gamma: f64, t_end: f64, n: usize) -> Result<Vec<f64>> {
    let n = nodes(n);
    let s = oscillator_closed_form(gamma, 0.0, 1.0, t_end / n as f64, n)?;
    let slope = if t_end >= 20.0 {
        fit_decay_exponent(&s.energy, 10.0, t_end).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let mut out = s.energy.values;
    out.push(slope);
    Ok(out)
}

fn js(e: fracode::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn ml_curve(
    alpha: f64,
    beta: f64,
    z_min: f64,
    z_max: f64,
    n: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    ml_curve_values(alpha, beta, z_min, z_max, n).map_err(js)
}

#[wasm_bindgen]
pub fn relaxation(gamma: f64, t_end: f64, n: usize) -> std::result::Result<Vec<f64>, JsError> {
    relaxation_values(gamma, t_end, n).map_err(js)
}

#[wasm_bindgen]
pub fn oscillator_energy(
    gamma: f64,
    t_end: f64,
    n: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    oscillator_energy_values(gamma, t_end, n).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_curve() {
        let v = ml_curve_values(1.0, 1.0, -2.0, 2.0, 5).unwrap();
        for (i, x) in v.iter().enumerate() {
            let z = -2.0 + i as f64;
            assert!((x - z.exp()).abs() < 1e-14 * z.exp().max(1.0));
        }
        assert!(ml_curve_values(0.0, 1.0, 0.0, 1.0, 5).is_err());
    }

    #[test]
    fn relaxation_halves_align() {
        let v = relaxation_values(0.5, 1.0, 512).unwrap();
        assert_eq!(v.len(), 2 * 513);
        let (num, exact) = v.split_at(513);
        let err = num
            .iter()
            .zip(exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-2, "{err}");
        assert!(relaxation_values(1.5, 1.0, 10).is_err());
    }

    #[test]
    fn energy_decays_with_slope() {
        let v = oscillator_energy_values(0.25, 200.0, 800).unwrap();
        let (e, slope) = v.split_at(801);
        assert!(e.iter().all(|&x| x <= e[0] * (1.0 + 1e-15)));
        assert!((slope[0] + 0.5).abs() < 0.1);
        assert!(oscillator_energy_values(0.25, 5.0, 100).unwrap()[101].is_nan());
    }

    #[test]
    fn grid_is_clamped() {
        assert_eq!(
            ml_curve_values(1.0, 1.0, 0.0, 1.0, 1_000_000)
                .unwrap()
                .len(),
            MAX_NODES
        );
        assert_eq!(ml_curve_values(1.0, 1.0, 0.0, 1.0, 0).unwrap().len(), 2);
    }
}
