//! Checks every quoted numeric result against the implemented formulas.
//!
//! Several quoted values cannot be reproduced from the closed-form
//! asymptotics; they are listed as MISMATCH with both numbers rather than
//! tuned away.

use casimir_core::forces::{neq_force_dielectric, ACCURACY_NOTE};
use casimir_core::quantities::{newtons_to_figure_units, thermal_frequency};
use casimir_core::{
    builtin_atoms, builtin_materials, compare_materials, evaluate, find_crossover_temperature, force_total,
    transition_jump_at, Atom, DcMode, JumpMode, MaterialKind, Quantity, Result, Scenario, WallMaterial,
};
use serde::Serialize;

use crate::output::{Cell, Table};

/// Relative deviation at or below which a claim counts as reproduced.
pub const MATCH_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub id: &'static str,
    pub claim: &'static str,
    pub unit: &'static str,
    pub quoted_value: f64,
    pub computed_value: f64,
    pub relative_deviation: f64,
    pub status: Status,
    pub note: String,
}

fn check(
    id: &'static str,
    claim: &'static str,
    unit: &'static str,
    quoted: f64,
    computed: f64,
    note: String,
) -> ClaimCheck {
    let relative_deviation = ((computed - quoted) / quoted).abs();
    let status = if relative_deviation <= MATCH_TOLERANCE { Status::Match } else { Status::Mismatch };
    ClaimCheck { id, claim, unit, quoted_value: quoted, computed_value: computed, relative_deviation, status, note }
}

struct Setup {
    rb: Atom,
    vo2: WallMaterial,
    sio2: WallMaterial,
}

impl Setup {
    fn new() -> Self {
        let atoms = builtin_atoms();
        let materials = builtin_materials();
        Setup {
            rb: atoms.get("Rb").expect("builtin").clone(),
            vo2: materials.get("VO2_on_sapphire").expect("builtin").clone(),
            sio2: materials.get("SiO2").expect("builtin").clone(),
        }
    }

    fn scenario(&self, material: &WallMaterial, a_um: f64, t_env: f64, t_wall: f64) -> Result<Scenario> {
        Scenario::new(self.rb.clone(), material.clone(), a_um * 1e-6, t_env, t_wall, DcMode::Disregarded)
    }
}

pub fn run_audit() -> Result<Vec<ClaimCheck>> {
    let s = Setup::new();
    let fig_unit = "1e-13 fN";
    let mut out = Vec::new();

    let eq_base = s.scenario(&s.vo2, 5.0, 300.0, 300.0)?;
    let eq300 = force_total(&eq_base)?.total;
    let eq_jump = transition_jump_at(&eq_base, 340.0, 342.0, JumpMode::FullEquilibrium)?;
    out.push(check(
        "eq_300K",
        "equilibrium force, Rb / VO2, 5 um, T_E = T_W = 300 K",
        fig_unit,
        -1.92,
        newtons_to_figure_units(eq300),
        String::new(),
    ));
    out.push(check(
        "eq_340K",
        "equilibrium force, T_E = T_W = 340 K (dielectric, dc disregarded)",
        fig_unit,
        -2.17,
        newtons_to_figure_units(eq_jump.below.total),
        String::new(),
    ));
    out.push(check(
        "eq_342K",
        "equilibrium force, T_E = T_W = 342 K (metal)",
        fig_unit,
        -2.68,
        newtons_to_figure_units(eq_jump.above.total),
        String::new(),
    ));

    let neq_jump = transition_jump_at(&eq_base, 340.0, 342.0, JumpMode::NonequilibriumFixedEnv)?;
    let bare340 = neq_force_dielectric(5e-6, 340.0, s.rb.alpha0, 9.909)?;
    out.push(check(
        "neq_300K",
        "total force, T_E = 300 K, T_W = 300 K",
        fig_unit,
        -1.92,
        newtons_to_figure_units(eq300),
        String::new(),
    ));
    out.push(check(
        "neq_340K",
        "total force, T_E = 300 K, T_W = 340 K",
        fig_unit,
        -5.05,
        newtons_to_figure_units(neq_jump.below.total),
        format!("bare nonequilibrium dielectric term at 340 K alone is {:.3}", newtons_to_figure_units(bare340)),
    ));
    out.push(check(
        "neq_342K",
        "total force, T_E = 300 K, T_W = 342 K",
        fig_unit,
        -8.29,
        newtons_to_figure_units(neq_jump.above.total),
        format!(
            "terms: eq {:.3}, neq(T_W) {:.3}, neq(T_E) {:.3}",
            newtons_to_figure_units(neq_jump.above.eq_term),
            newtons_to_figure_units(neq_jump.above.neq_wall_term),
            newtons_to_figure_units(neq_jump.above.neq_env_term)
        ),
    ));
    out.push(check(
        "neq_dielectric_term_340K",
        "nonequilibrium dielectric term alone, 5 um, 340 K",
        fig_unit,
        -5.05,
        newtons_to_figure_units(bare340),
        String::new(),
    ));

    let metal = match s.vo2.kind {
        MaterialKind::PhaseChange { metal, .. } => metal,
        _ => unreachable!("VO2 is a phase-change material"),
    };
    out.push(check(
        "sigma_m_355K",
        "Drude conductivity of metallic VO2 at 355 K",
        "s^-1",
        2.03e15,
        metal.conductivity(355.0)?,
        String::new(),
    ));
    out.push(check(
        "omega_T_300K",
        "thermal frequency at 300 K",
        "rad/s",
        3.9e13,
        thermal_frequency(300.0)?,
        String::new(),
    ));

    // SiO2 at 605 K as the reference magnitude
    let silica = s.scenario(&s.sio2, 7.0, 310.0, 605.0)?;
    let vo2_7 = s.scenario(&s.vo2, 7.0, 310.0, 310.0)?;
    let target = force_total(&silica)?.total.abs();
    let crossing = find_crossover_temperature(&vo2_7, Quantity::Force, target, 310.0, 605.0)?;
    out.push(check(
        "crossover_force",
        "VO2 wall temperature matching the SiO2 force at 605 K (7 um, T_E 310 K)",
        "K",
        415.0,
        crossing.temperature().unwrap_or(f64::NAN),
        format!("target |F| = {target:.4e} N"),
    ));

    let g_target = evaluate(&silica, Quantity::Gradient)?.total.abs();
    let g_crossing = find_crossover_temperature(&vo2_7, Quantity::Gradient, g_target, 310.0, 605.0)?;
    out.push(check(
        "crossover_gradient",
        "VO2 wall temperature matching the SiO2 gradient at 605 K (7 um, T_E 310 K)",
        "K",
        342.0,
        g_crossing.temperature().unwrap_or(f64::NAN),
        format!("target |F'| = {g_target:.4e} N/m"),
    ));

    for (id, claim, t_wall, quoted) in [
        ("gradient_ratio_350K", "VO2 / SiO2 gradient ratio at T_W = 350 K (7 um, T_E 310 K)", 350.0, 4.46),
        ("gradient_ratio_400K", "VO2 / SiO2 gradient ratio at T_W = 400 K (7 um, T_E 310 K)", 400.0, 6.02),
    ] {
        let c =
            compare_materials(7e-6, 310.0, t_wall, &s.rb, &s.vo2, &s.sio2, Quantity::Gradient, DcMode::Disregarded)?;
        out.push(check(
            id,
            claim,
            "1",
            quoted,
            c.ratio,
            format!("gradients {:.4e} / {:.4e} N/m", c.first.total, c.second.total),
        ));
    }
    Ok(out)
}

pub fn audit_table(checks: &[ClaimCheck]) -> Table {
    let mut t = Table::new(
        ["id", "claim", "unit", "quoted_value", "computed_value", "relative_deviation", "status", "note"]
            .iter()
            .map(|c| c.to_string())
            .collect(),
    );
    for c in checks {
        t.push(vec![
            c.id.into(),
            c.claim.into(),
            c.unit.into(),
            Cell::Num(c.quoted_value),
            Cell::Num(c.computed_value),
            Cell::Num(c.relative_deviation),
            c.status.as_str().into(),
            c.note.clone().into(),
        ]);
    }
    t
}

pub fn accuracy_note() -> &'static str {
    ACCURACY_NOTE
}
