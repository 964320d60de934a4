//! Browser bindings. Each exported function takes plain numbers and strings
//! and returns a JSON document; errors come back as `{"error": "..."}`.

use casimir_core::{
    builtin_atoms, builtin_materials, evaluate, find_crossover_temperature, run_sweep, transition_jump, Crossover,
    DcMode, JumpMode, Quantity, Result, Scenario, SweepSpec, SweepVariable,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn scenario(atom: &str, material: &str, a_um: f64, t_env: f64, t_wall: f64, dc: &str) -> Result<Scenario> {
    let atom = builtin_atoms().get(atom)?.clone();
    let material = builtin_materials().get(material)?.clone();
    Scenario::new(atom, material, a_um * 1e-6, t_env, t_wall, dc.parse::<DcMode>()?)
}

fn curve(spec: &SweepSpec, quantity: Quantity, scale: f64) -> Result<Value> {
    let result = run_sweep(spec, quantity)?;
    let x: Vec<f64> = result.rows.iter().map(|r| r.value * scale).collect();
    let y: Vec<f64> = result.rows.iter().map(|r| r.breakdown.total).collect();
    let eq: Vec<f64> = result.rows.iter().map(|r| r.breakdown.eq_term).collect();
    let phase: Vec<&str> = result.rows.iter().map(|r| r.breakdown.state_wall.phase.label()).collect();
    Ok(json!({
        "quantity": quantity.as_str(),
        "unit": quantity.unit(),
        "x": x,
        "total": y,
        "eq": eq,
        "phase": phase,
        "transitions": result.transition_intervals,
    }))
}

fn render(value: Result<Value>) -> String {
    match value {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn parse_quantity(q: &str) -> Result<Quantity> {
    q.parse()
}

#[allow(clippy::too_many_arguments)]
pub fn separation_curve(
    atom: &str,
    material: &str,
    t_env: f64,
    t_wall: f64,
    dc: &str,
    quantity: &str,
    a_start_um: f64,
    a_stop_um: f64,
    points: usize,
) -> Result<Value> {
    let base = scenario(atom, material, a_start_um, t_env, t_wall, dc)?;
    let spec = SweepSpec {
        base,
        variable: SweepVariable::Separation,
        start: a_start_um * 1e-6,
        stop: a_stop_um * 1e-6,
        points,
    };
    curve(&spec, parse_quantity(quantity)?, 1e6)
}

#[allow(clippy::too_many_arguments)]
pub fn temperature_curve(
    atom: &str,
    material: &str,
    a_um: f64,
    t_env: f64,
    dc: &str,
    quantity: &str,
    t_start: f64,
    t_stop: f64,
    points: usize,
) -> Result<Value> {
    let base = scenario(atom, material, a_um, t_env, t_start, dc)?;
    let spec = SweepSpec { base, variable: SweepVariable::WallTemperature, start: t_start, stop: t_stop, points };
    curve(&spec, parse_quantity(quantity)?, 1.0)
}

/// Wall temperature at which `material` reproduces the magnitude that
/// `reference` reaches at `reference_t_wall`, plus the jump across t_c when
/// `material` has one.
#[allow(clippy::too_many_arguments)]
pub fn crossover(
    atom: &str,
    material: &str,
    reference: &str,
    a_um: f64,
    t_env: f64,
    reference_t_wall: f64,
    dc: &str,
    quantity: &str,
) -> Result<Value> {
    let q = parse_quantity(quantity)?;
    let reference_total = evaluate(&scenario(atom, reference, a_um, t_env, reference_t_wall, dc)?, q)?.total;
    let base = scenario(atom, material, a_um, t_env, t_env, dc)?;
    let found = find_crossover_temperature(&base, q, reference_total.abs(), t_env, reference_t_wall)?;
    let jump = if base.material.critical_temperature().is_some_and(|t_c| t_c > t_env) {
        let j = transition_jump(&base, 1e-3, JumpMode::NonequilibriumFixedEnv)?;
        json!({ "t_c": j.t_c, "below": j.below.total, "above": j.above.total, "ratio": j.jump_ratio })
    } else {
        Value::Null
    };
    let result = match found {
        Crossover::Temperature { t_wall } => json!({ "t_wall": t_wall }),
        Crossover::GapUnreachable { t_c, below_limit, above_limit } => {
            json!({ "gap": { "t_c": t_c, "below_limit": below_limit, "above_limit": above_limit } })
        }
    };
    Ok(json!({ "target": reference_total.abs(), "unit": q.unit(), "crossover": result, "jump": jump }))
}

#[wasm_bindgen(js_name = separationCurve)]
#[allow(clippy::too_many_arguments)]
pub fn separation_curve_js(
    atom: &str,
    material: &str,
    t_env: f64,
    t_wall: f64,
    dc: &str,
    quantity: &str,
    a_start_um: f64,
    a_stop_um: f64,
    points: usize,
) -> String {
    render(separation_curve(atom, material, t_env, t_wall, dc, quantity, a_start_um, a_stop_um, points))
}

#[wasm_bindgen(js_name = temperatureCurve)]
#[allow(clippy::too_many_arguments)]
pub fn temperature_curve_js(
    atom: &str,
    material: &str,
    a_um: f64,
    t_env: f64,
    dc: &str,
    quantity: &str,
    t_start: f64,
    t_stop: f64,
    points: usize,
) -> String {
    render(temperature_curve(atom, material, a_um, t_env, dc, quantity, t_start, t_stop, points))
}

#[wasm_bindgen(js_name = crossover)]
#[allow(clippy::too_many_arguments)]
pub fn crossover_js(
    atom: &str,
    material: &str,
    reference: &str,
    a_um: f64,
    t_env: f64,
    reference_t_wall: f64,
    dc: &str,
    quantity: &str,
) -> String {
    render(crossover(atom, material, reference, a_um, t_env, reference_t_wall, dc, quantity))
}

/// Names of the built-in atoms and materials, for populating the page.
#[wasm_bindgen(js_name = registry)]
pub fn registry_js() -> String {
    let atoms: Vec<String> = builtin_atoms().iter().map(|a| a.name.clone()).collect();
    let materials: Vec<String> = builtin_materials().iter().map(|m| m.name.clone()).collect();
    json!({ "atoms": atoms, "materials": materials }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_curve_starts_at_equilibrium_value() {
        let v = separation_curve("Rb", "VO2_on_sapphire", 300.0, 300.0, "disregarded", "force", 5.0, 10.0, 6).unwrap();
        let total = v["total"].as_array().unwrap();
        assert_eq!(total.len(), 6);
        assert!((total[0].as_f64().unwrap() / -1.92e-28 - 1.0).abs() < 5e-3);
        assert_eq!(v["x"][5].as_f64().unwrap(), 10.0);
    }

    #[test]
    fn temperature_curve_flags_transition() {
        let v =
            temperature_curve("Rb", "VO2_on_sapphire", 5.0, 300.0, "disregarded", "force", 330.0, 350.0, 21).unwrap();
        assert_eq!(v["transitions"], json!([10]));
        assert_eq!(v["phase"][10], "dielectric");
        assert_eq!(v["phase"][11], "metal");
    }

    #[test]
    fn crossover_reports_temperature_and_jump() {
        let v = crossover("Rb", "VO2_on_sapphire", "SiO2", 7.0, 310.0, 605.0, "disregarded", "force").unwrap();
        let t = v["crossover"]["t_wall"].as_f64().unwrap();
        assert!((t - 396.08).abs() < 0.01, "{t}");
        assert!(v["jump"]["ratio"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn errors_become_json() {
        let s = separation_curve_js("Xe", "SiO2", 300.0, 300.0, "included", "force", 5.0, 10.0, 3);
        assert!(s.contains("\"error\""));
        let s = temperature_curve_js("Rb", "SiO2", 5.0, 300.0, "maybe", "force", 300.0, 310.0, 3);
        assert!(s.contains("dc mode"));
    }

    #[test]
    fn registry_lists_builtins() {
        let v: Value = serde_json::from_str(&registry_js()).unwrap();
        assert_eq!(v["atoms"].as_array().unwrap().len(), 4);
    }
}
