//! Browser bindings for the qcdeph library. Three operations back the demo
//! page in `www/`: a state-family sweep, a random-state ensemble run, and a
//! single-state evaluation from the density-matrix JSON schema. Results are
//! returned as JSON strings for a framework-free page.
//!
//! The heavy discord optimization is kept off the per-frame path: for the
//! two-parameter family the classical correlation is time-invariant, so it
//! is maximized once at t = 0 and discord follows from the per-point mutual
//! information. The other families plot negativity and local quantum
//! uncertainty.

use qcdeph::channel::{dephase, DephasingPoint};
use qcdeph::correlations::{
    classical_correlation, correlation_record, esd_time_two_param, lqu, mutual_information,
    negativity,
};
use qcdeph::ensemble::{run_ensemble, EnsembleConfig};
use qcdeph::states::{
    dfs_mix_state, iso_mix_state, two_param_state, DensityMatrix, DensityMatrixJson, DfsMixFamily,
    IsoMixFamily, TwoParamFamily,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 4001;
const MAX_STATES: usize = 500;

#[derive(Serialize)]
struct SweepData {
    gamma_t: Vec<f64>,
    negativity: Vec<f64>,
    lqu: Vec<f64>,
    classical: Option<Vec<f64>>,
    discord: Option<Vec<f64>>,
    esd_time: Option<f64>,
    beta: Option<f64>,
}

#[derive(Serialize)]
struct EnsembleData {
    gamma_t: Vec<f64>,
    mean: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    bars: Vec<f64>,
    entangled_fraction: f64,
}

fn grid(stop: f64, step: f64) -> Result<Vec<f64>, String> {
    if step.is_nan() || step <= 0.0 || stop.is_nan() || stop < 0.0 {
        return Err("grid requires stop >= 0 and step > 0".into());
    }
    let n = (stop / step + 1e-9).floor() as usize;
    if n + 1 > MAX_POINTS {
        return Err(format!(
            "grid too fine: {} points (max {MAX_POINTS})",
            n + 1
        ));
    }
    Ok((0..=n).map(|i| i as f64 * step).collect())
}

pub fn family_sweep_json(
    family: &str,
    alpha: f64,
    gamma: f64,
    beta: f64,
    stop: f64,
    step: f64,
) -> Result<String, String> {
    let points = grid(stop, step)?;
    let err = |e: qcdeph::states::StateError| e.to_string();

    let (rho0, classical0, esd, derived_beta) = match family {
        "two-param" => {
            let f = TwoParamFamily::new(alpha, gamma).map_err(err)?;
            let rho0 = two_param_state(&f);
            let (c0, _) = classical_correlation(&rho0);
            (rho0, Some(c0), esd_time_two_param(&f), Some(f.beta()))
        }
        "dfs-mix" => {
            let f = DfsMixFamily::new(alpha).map_err(err)?;
            (dfs_mix_state(&f), None, None, None)
        }
        "iso-mix" => {
            let f = IsoMixFamily::new(alpha, beta).map_err(err)?;
            (iso_mix_state(&f), None, None, None)
        }
        other => return Err(format!("unknown family {other:?}")),
    };

    let mut data = SweepData {
        gamma_t: points.clone(),
        negativity: Vec::with_capacity(points.len()),
        lqu: Vec::with_capacity(points.len()),
        classical: classical0.map(|_| Vec::with_capacity(points.len())),
        discord: classical0.map(|_| Vec::with_capacity(points.len())),
        esd_time: esd,
        beta: derived_beta,
    };
    for &t in &points {
        let p = DephasingPoint::new(t).expect("grid is non-negative");
        let rho_t = dephase(&rho0, p);
        data.negativity.push(negativity(&rho_t));
        data.lqu.push(lqu(&rho_t));
        if let Some(c0) = classical0 {
            data.classical.as_mut().unwrap().push(c0);
            data.discord
                .as_mut()
                .unwrap()
                .push((mutual_information(&rho_t) - c0).max(0.0));
        }
    }
    serde_json::to_string(&data).map_err(|e| e.to_string())
}

pub fn ensemble_sweep_json(
    n_states: u32,
    seed: u32,
    stop: f64,
    step: f64,
) -> Result<String, String> {
    if n_states < 1 || n_states as usize > MAX_STATES {
        return Err(format!("n_states must be in 1..={MAX_STATES}"));
    }
    let cfg = EnsembleConfig {
        n_states: n_states as usize,
        master_seed: seed as u64,
        grid: grid(stop, step)?,
    };
    let summary = run_ensemble(&cfg).map_err(|e| e.to_string())?;
    let data = EnsembleData {
        gamma_t: summary.per_grid.iter().map(|g| g.gamma_t).collect(),
        mean: summary.per_grid.iter().map(|g| g.mean).collect(),
        lo: summary.per_grid.iter().map(|g| g.lo).collect(),
        hi: summary.per_grid.iter().map(|g| g.hi).collect(),
        bars: summary.asymptotic_negativity,
        entangled_fraction: summary.entangled_fraction,
    };
    serde_json::to_string(&data).map_err(|e| e.to_string())
}

pub fn evaluate_state_json(json_text: &str, gamma_t: f64) -> Result<String, String> {
    let json: DensityMatrixJson = serde_json::from_str(json_text).map_err(|e| e.to_string())?;
    let rho = DensityMatrix::try_from(&json).map_err(|e| e.to_string())?;
    let p = DephasingPoint::new(gamma_t).map_err(|e| e.to_string())?;
    let r = correlation_record(&rho, p);
    serde_json::to_string(&serde_json::json!({
        "gamma_t": r.gamma_t,
        "negativity": r.negativity,
        "classical": r.classical,
        "discord": r.discord,
        "lqu": r.lqu,
    }))
    .map_err(|e| e.to_string())
}

/// An example input for the single-state panel: the decoherence-free |ψ₃⟩.
pub fn example_state_json() -> String {
    let rho = qcdeph::states::psi_k_state(3).expect("index in range");
    serde_json::to_string_pretty(&DensityMatrixJson::from(&rho)).expect("serializable")
}

#[wasm_bindgen]
pub fn family_sweep(
    family: &str,
    alpha: f64,
    gamma: f64,
    beta: f64,
    stop: f64,
    step: f64,
) -> Result<String, JsValue> {
    family_sweep_json(family, alpha, gamma, beta, stop, step).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ensemble_sweep(n_states: u32, seed: u32, stop: f64, step: f64) -> Result<String, JsValue> {
    ensemble_sweep_json(n_states, seed, stop, step).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn evaluate_state(json_text: &str, gamma_t: f64) -> Result<String, JsValue> {
    evaluate_state_json(json_text, gamma_t).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn example_state() -> String {
    example_state_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn two_param_sweep_shape_and_values() {
        let text = family_sweep_json("two-param", 0.1, 0.5, 0.0, 2.0, 0.5).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["gamma_t"].as_array().unwrap().len(), 5);
        assert!((v["negativity"][0].as_f64().unwrap() - 0.2).abs() < 1e-10);
        assert!((v["beta"].as_f64().unwrap() - 0.1).abs() < 1e-12);
        assert!((v["esd_time"].as_f64().unwrap() - 5.5452).abs() < 1e-3);
        // discord from the shared time-invariant classical correlation
        assert!(v["discord"].as_array().is_some());
        assert!(v["classical"][0].as_f64().unwrap() > 0.0);
    }

    #[test]
    fn dfs_sweep_omits_discord_and_freezes() {
        let text = family_sweep_json("dfs-mix", 0.5, 0.0, 0.0, 10.0, 1.0).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(v["discord"].is_null());
        let n = v["negativity"].as_array().unwrap();
        let last = n.last().unwrap().as_f64().unwrap();
        assert!((last - 0.309017).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(family_sweep_json("no-such", 0.1, 0.1, 0.0, 1.0, 0.5).is_err());
        assert!(family_sweep_json("two-param", 0.7, 0.1, 0.0, 1.0, 0.5).is_err());
        assert!(family_sweep_json("two-param", 0.1, 0.1, 0.0, 1.0, 0.0).is_err());
        assert!(ensemble_sweep_json(0, 1, 1.0, 0.5).is_err());
    }

    #[test]
    fn ensemble_sweep_bands_and_bars() {
        let text = ensemble_sweep_json(8, 7, 1.0, 0.5).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["bars"].as_array().unwrap().len(), 8);
        let mean = v["mean"][0].as_f64().unwrap();
        assert!(v["lo"][0].as_f64().unwrap() <= mean && mean <= v["hi"][0].as_f64().unwrap());
        let frac = v["entangled_fraction"].as_f64().unwrap();
        assert!((0.0..=1.0).contains(&frac));
    }

    #[test]
    fn evaluate_example_state() {
        let example = example_state_json();
        let out = evaluate_state_json(&example, 7.0).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["negativity"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!(evaluate_state_json("{bad", 0.0).is_err());
        assert!(evaluate_state_json(&example, -1.0).is_err());
    }
}
