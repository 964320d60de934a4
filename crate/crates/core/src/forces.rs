//! Large-separation asymptotics of the Casimir-Polder force between a
//! ground-state atom and a wall whose temperature may exceed that of the
//! environment.
//!
//! The total force is assembled as
//!
//! ```text
//! F(a, T_W, T_E) = F_eq(a, T_E) + [F_neq(a, T_W) - F_neq(a, T_E)]
//! ```
//!
//! and the gradient (derivative with respect to `a`) has the same shape.
//! The equilibrium term is the zero-frequency (classical) limit; the
//! nonequilibrium term is either the dielectric or the Drude-metal
//! asymptote, depending on the resolved wall phase.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atoms::Atom;
use crate::error::{ensure_positive, Error, Result};
use crate::materials::{MaterialState, Phase, WallMaterial};
use crate::quantities::{thermal_frequency, BOLTZMANN, HBAR, LIGHT_SPEED, MICROMETRE, ZETA_THREE_HALVES};

/// Relative size of the omitted nonzero-frequency contribution to the
/// conducting-wall equilibrium force at a = 5 μm, T = 300 K. Reported as
/// metadata, never added to force values.
pub const NONZERO_FREQUENCY_CORRECTION_AT_5UM_300K: f64 = 0.068;

pub const ACCURACY_NOTE: &str = "equilibrium term is the zero-frequency asymptote; \
the omitted nonzero-frequency contribution is about 6.8% of the conducting-wall \
value at a = 5 um, T = 300 K and shrinks with growing separation and temperature";

/// Lower/upper edge of the separation range where the asymptotics hold, m.
pub const ASYMPTOTIC_RANGE: (f64, f64) = (5.0 * MICROMETRE, 10.0 * MICROMETRE);

/// Ratio above which a "much less than" condition is reported as violated.
pub const VALIDITY_THRESHOLD: f64 = 0.1;

/// Whether the dc conductivity of a dielectric wall enters the equilibrium
/// term. Deliberately has no `Default`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DcMode {
    Disregarded,
    Included,
}

impl DcMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DcMode::Disregarded => "disregarded",
            DcMode::Included => "included",
        }
    }
}

impl fmt::Display for DcMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DcMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "disregarded" => Ok(DcMode::Disregarded),
            "included" => Ok(DcMode::Included),
            other => Err(Error::Validation(format!("dc mode must be `disregarded` or `included`, got `{other}`"))),
        }
    }
}

/// Which material state the environment-temperature terms see.
///
/// `WallState` (the default) uses the phase of the wall at `T_W` for every
/// term, with the temperature argument of each term setting σ_m(T).
/// `EnvironmentState` resolves the phase separately at `T_E` for the
/// equilibrium term and the subtracted nonequilibrium term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvTermRule {
    #[default]
    WallState,
    EnvironmentState,
}

impl EnvTermRule {
    pub fn as_str(self) -> &'static str {
        match self {
            EnvTermRule::WallState => "wall_state",
            EnvTermRule::EnvironmentState => "environment_state",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Force,
    Gradient,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Force => "force",
            Quantity::Gradient => "gradient",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Force => "N",
            Quantity::Gradient => "N/m",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "force" => Ok(Quantity::Force),
            "gradient" => Ok(Quantity::Gradient),
            other => Err(Error::Validation(format!("quantity must be `force` or `gradient`, got `{other}`"))),
        }
    }
}

/// The closed-form term used for one entry of a breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// Equilibrium, dielectric wall with finite ε(0).
    EqDielectric,
    /// Equilibrium, conducting wall (dc conductivity or metal).
    EqConducting,
    /// Nonequilibrium, dielectric wall.
    NeqDielectric,
    /// Nonequilibrium, Drude metal.
    NeqDrude,
}

impl Formula {
    pub fn id(self) -> &'static str {
        match self {
            Formula::EqDielectric => "eq_dielectric",
            Formula::EqConducting => "eq_conducting",
            Formula::NeqDielectric => "neq_dielectric",
            Formula::NeqDrude => "neq_drude",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TermFormulas {
    pub equilibrium: Formula,
    pub nonequilibrium_wall: Formula,
    pub nonequilibrium_env: Formula,
}

/// Inputs for one force evaluation. Fields are public; every evaluation
/// re-validates them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub atom: Atom,
    pub material: WallMaterial,
    /// Atom-wall separation, m.
    pub separation: f64,
    /// K
    pub t_env: f64,
    /// K
    pub t_wall: f64,
    pub dc_mode: DcMode,
    #[serde(default)]
    pub env_rule: EnvTermRule,
}

impl Scenario {
    pub fn new(
        atom: Atom,
        material: WallMaterial,
        separation: f64,
        t_env: f64,
        t_wall: f64,
        dc_mode: DcMode,
    ) -> Result<Self> {
        let s = Scenario { atom, material, separation, t_env, t_wall, dc_mode, env_rule: EnvTermRule::WallState };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("separation", self.separation)?;
        ensure_positive("environment temperature", self.t_env)?;
        ensure_positive("wall temperature", self.t_wall)?;
        if !(self.atom.alpha0 > 0.0) || !self.atom.alpha0.is_finite() {
            return Err(Error::Validation(format!("polarizability of `{}` must be positive", self.atom.name)));
        }
        self.material.validate()?;
        if self.t_wall < self.t_env {
            return Err(Error::Validation(format!(
                "wall temperature {} K is below environment temperature {} K",
                self.t_wall, self.t_env
            )));
        }
        Ok(())
    }

    pub fn with_t_wall(&self, t_wall: f64) -> Scenario {
        Scenario { t_wall, ..self.clone() }
    }

    pub fn with_t_env(&self, t_env: f64) -> Scenario {
        Scenario { t_env, ..self.clone() }
    }

    pub fn with_separation(&self, separation: f64) -> Scenario {
        Scenario { separation, ..self.clone() }
    }

    pub fn with_env_rule(&self, env_rule: EnvTermRule) -> Scenario {
        Scenario { env_rule, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WarningKind {
    /// ω_T is not small compared with the characteristic absorption frequency.
    ThermalVsCharFreq,
    /// ω_T is not small compared with the metallic conductivity.
    ThermalVsConductivity,
    /// Separation lies outside 5–10 μm. `ratio` is a / nearest edge.
    SeparationOutsideAsymptoticRange,
    /// dc conductivity is not small compared with ω_T.
    DcSigmaNotSmall,
}

impl WarningKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WarningKind::ThermalVsCharFreq => "thermal_vs_char_freq",
            WarningKind::ThermalVsConductivity => "thermal_vs_conductivity",
            WarningKind::SeparationOutsideAsymptoticRange => "separation_outside_asymptotic_range",
            WarningKind::DcSigmaNotSmall => "dc_sigma_not_small",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityWarning {
    pub kind: WarningKind,
    pub ratio: f64,
    pub threshold: f64,
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ratio {:.4e} (threshold {})", self.kind.as_str(), self.ratio, self.threshold)
    }
}

/// The three terms of a force (or gradient) evaluation and their sum.
///
/// `total == eq_term + (neq_wall_term - neq_env_term)` holds exactly, so an
/// equal-temperature scenario returns the equilibrium term unchanged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Breakdown {
    pub quantity: Quantity,
    pub total: f64,
    pub eq_term: f64,
    pub neq_wall_term: f64,
    pub neq_env_term: f64,
    pub state_wall: MaterialState,
    pub state_env: MaterialState,
    pub formulas: TermFormulas,
    pub warnings: Vec<ValidityWarning>,
}

impl Breakdown {
    pub fn recombined_total(&self) -> f64 {
        self.eq_term + (self.neq_wall_term - self.neq_env_term)
    }
}

fn check_eps_at_least_one(eps0: f64) -> Result<()> {
    if eps0 >= 1.0 && eps0.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("eps0 must be >= 1, got {eps0}")))
    }
}

fn check_eps_above_one(eps0: f64) -> Result<()> {
    if eps0 > 1.0 && eps0.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("nonequilibrium dielectric term needs eps0 > 1, got {eps0}")))
    }
}

fn check_common(a: f64, t: f64, alpha0: f64) -> Result<()> {
    ensure_positive("separation", a)?;
    ensure_positive("temperature", t)?;
    ensure_positive("polarizability", alpha0)
}

/// -3 k_B T α(0) / (4 a⁴) · (ε−1)/(ε+1)
pub fn eq_force_dielectric(a: f64, t: f64, alpha0: f64, eps0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    check_eps_at_least_one(eps0)?;
    Ok(-3.0 * BOLTZMANN * t / (4.0 * a.powi(4)) * alpha0 * ((eps0 - 1.0) / (eps0 + 1.0)))
}

/// -3 k_B T α(0) / (4 a⁴)
pub fn eq_force_conducting(a: f64, t: f64, alpha0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    Ok(-3.0 * BOLTZMANN * t / (4.0 * a.powi(4)) * alpha0)
}

/// -π α(0) (k_B T)² / (6 c ħ a³) · (ε+1)/√(ε−1)
pub fn neq_force_dielectric(a: f64, t: f64, alpha0: f64, eps0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    check_eps_above_one(eps0)?;
    let kt = BOLTZMANN * t;
    Ok(-PI * alpha0 * kt * kt / (6.0 * LIGHT_SPEED * HBAR * a.powi(3)) * ((eps0 + 1.0) / (eps0 - 1.0).sqrt()))
}

/// -α(0) ζ(3/2) √σ_m (k_B T)^{3/2} / (c √(2ħ) a³)
pub fn neq_force_drude(a: f64, t: f64, alpha0: f64, sigma_m: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    ensure_positive("conductivity", sigma_m)?;
    let kt = BOLTZMANN * t;
    Ok(-alpha0 * ZETA_THREE_HALVES * sigma_m.sqrt() * kt.powf(1.5) / (LIGHT_SPEED * (2.0 * HBAR).sqrt() * a.powi(3)))
}

/// dF/da of [`eq_force_dielectric`]: 3 k_B T α(0) / a⁵ · (ε−1)/(ε+1)
pub fn eq_gradient_dielectric(a: f64, t: f64, alpha0: f64, eps0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    check_eps_at_least_one(eps0)?;
    Ok(3.0 * BOLTZMANN * t / a.powi(5) * alpha0 * ((eps0 - 1.0) / (eps0 + 1.0)))
}

pub fn eq_gradient_conducting(a: f64, t: f64, alpha0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    Ok(3.0 * BOLTZMANN * t / a.powi(5) * alpha0)
}

/// π α(0) (k_B T)² / (2 c ħ a⁴) · (ε+1)/√(ε−1)
pub fn neq_gradient_dielectric(a: f64, t: f64, alpha0: f64, eps0: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    check_eps_above_one(eps0)?;
    let kt = BOLTZMANN * t;
    Ok(PI * alpha0 * kt * kt / (2.0 * LIGHT_SPEED * HBAR * a.powi(4)) * ((eps0 + 1.0) / (eps0 - 1.0).sqrt()))
}

/// 3 α(0) ζ(3/2) √σ_m (k_B T)^{3/2} / (c √(2ħ) a⁴)
pub fn neq_gradient_drude(a: f64, t: f64, alpha0: f64, sigma_m: f64) -> Result<f64> {
    check_common(a, t, alpha0)?;
    ensure_positive("conductivity", sigma_m)?;
    let kt = BOLTZMANN * t;
    Ok(3.0 * alpha0 * ZETA_THREE_HALVES * sigma_m.sqrt() * kt.powf(1.5)
        / (LIGHT_SPEED * (2.0 * HBAR).sqrt() * a.powi(4)))
}

fn equilibrium_formula(phase: &Phase, dc_mode: DcMode) -> Formula {
    match (phase, dc_mode) {
        (Phase::Dielectric(_), DcMode::Disregarded) => Formula::EqDielectric,
        _ => Formula::EqConducting,
    }
}

fn nonequilibrium_formula(phase: &Phase) -> Formula {
    match phase {
        Phase::Dielectric(_) => Formula::NeqDielectric,
        Phase::Metal(_) => Formula::NeqDrude,
    }
}

fn equilibrium_term(q: Quantity, phase: &Phase, dc_mode: DcMode, a: f64, t: f64, alpha0: f64) -> Result<f64> {
    match (equilibrium_formula(phase, dc_mode), phase, q) {
        (Formula::EqDielectric, Phase::Dielectric(d), Quantity::Force) => eq_force_dielectric(a, t, alpha0, d.eps0),
        (Formula::EqDielectric, Phase::Dielectric(d), Quantity::Gradient) => {
            eq_gradient_dielectric(a, t, alpha0, d.eps0)
        }
        (_, _, Quantity::Force) => eq_force_conducting(a, t, alpha0),
        (_, _, Quantity::Gradient) => eq_gradient_conducting(a, t, alpha0),
    }
}

fn nonequilibrium_term(q: Quantity, phase: &Phase, a: f64, t: f64, alpha0: f64) -> Result<f64> {
    match (phase, q) {
        (Phase::Dielectric(d), Quantity::Force) => neq_force_dielectric(a, t, alpha0, d.eps0),
        (Phase::Dielectric(d), Quantity::Gradient) => neq_gradient_dielectric(a, t, alpha0, d.eps0),
        (Phase::Metal(m), Quantity::Force) => neq_force_drude(a, t, alpha0, m.conductivity(t)?),
        (Phase::Metal(m), Quantity::Gradient) => neq_gradient_drude(a, t, alpha0, m.conductivity(t)?),
    }
}

fn assemble(s: &Scenario, q: Quantity, state_wall: MaterialState, state_env: MaterialState) -> Result<Breakdown> {
    let (a, alpha0) = (s.separation, s.atom.alpha0);
    let eq_term = equilibrium_term(q, &state_env.phase, s.dc_mode, a, s.t_env, alpha0)?;
    let neq_wall_term = nonequilibrium_term(q, &state_wall.phase, a, s.t_wall, alpha0)?;
    let neq_env_term = nonequilibrium_term(q, &state_env.phase, a, s.t_env, alpha0)?;
    let total = eq_term + (neq_wall_term - neq_env_term);
    let formulas = TermFormulas {
        equilibrium: equilibrium_formula(&state_env.phase, s.dc_mode),
        nonequilibrium_wall: nonequilibrium_formula(&state_wall.phase),
        nonequilibrium_env: nonequilibrium_formula(&state_env.phase),
    };
    Ok(Breakdown {
        quantity: q,
        total,
        eq_term,
        neq_wall_term,
        neq_env_term,
        state_wall,
        state_env,
        formulas,
        warnings: warnings_for(s, &state_wall, &state_env),
    })
}

fn resolve_states(s: &Scenario) -> Result<(MaterialState, MaterialState)> {
    let wall = s.material.resolve_state(s.t_wall)?;
    let env = match s.env_rule {
        EnvTermRule::WallState => wall,
        EnvTermRule::EnvironmentState => s.material.resolve_state(s.t_env)?,
    };
    Ok((wall, env))
}

/// Evaluates the force or its gradient for `s`.
pub fn evaluate(s: &Scenario, q: Quantity) -> Result<Breakdown> {
    s.validate()?;
    let (wall, env) = resolve_states(s)?;
    assemble(s, q, wall, env)
}

/// Like [`evaluate`], but with the wall phase forced instead of resolved
/// from `t_wall`. Used for one-sided limits at a phase transition.
pub fn evaluate_in_phase(s: &Scenario, q: Quantity, phase: Phase) -> Result<Breakdown> {
    s.validate()?;
    let wall = MaterialState { phase, resolved_at: s.t_wall };
    let env = match s.env_rule {
        EnvTermRule::WallState => wall,
        EnvTermRule::EnvironmentState => s.material.resolve_state(s.t_env)?,
    };
    assemble(s, q, wall, env)
}

pub fn force_total(s: &Scenario) -> Result<Breakdown> {
    evaluate(s, Quantity::Force)
}

pub fn gradient_total(s: &Scenario) -> Result<Breakdown> {
    evaluate(s, Quantity::Gradient)
}

/// Regime-validity warnings for `s`. Never fails; an unresolvable
/// scenario yields no warnings.
pub fn validity_check(s: &Scenario) -> Vec<ValidityWarning> {
    match resolve_states(s) {
        Ok((wall, env)) => warnings_for(s, &wall, &env),
        Err(_) => Vec::new(),
    }
}

fn warnings_for(s: &Scenario, wall: &MaterialState, env: &MaterialState) -> Vec<ValidityWarning> {
    let mut out = Vec::new();
    let t_max = s.t_env.max(s.t_wall);
    let t_min = s.t_env.min(s.t_wall);
    let (w_max, w_min) = match (thermal_frequency(t_max), thermal_frequency(t_min)) {
        (Ok(hi), Ok(lo)) => (hi, lo),
        _ => return out,
    };
    let push = |out: &mut Vec<ValidityWarning>, kind, ratio: f64, over: bool| {
        if over {
            out.push(ValidityWarning { kind, ratio, threshold: VALIDITY_THRESHOLD });
        }
    };

    let mut phases = vec![wall.phase];
    if env.phase != wall.phase {
        phases.push(env.phase);
    }
    for phase in phases {
        match phase {
            Phase::Dielectric(d) => {
                let ratio = w_max / d.char_freq;
                push(&mut out, WarningKind::ThermalVsCharFreq, ratio, ratio > VALIDITY_THRESHOLD);
                if let (DcMode::Included, Some(sigma0)) = (s.dc_mode, d.dc_sigma0) {
                    let ratio = sigma0 / w_min;
                    push(&mut out, WarningKind::DcSigmaNotSmall, ratio, ratio > VALIDITY_THRESHOLD);
                }
            }
            Phase::Metal(m) => {
                if let Ok(sigma) = m.conductivity(t_max) {
                    let ratio = w_max / sigma;
                    push(&mut out, WarningKind::ThermalVsConductivity, ratio, ratio > VALIDITY_THRESHOLD);
                }
            }
        }
    }

    let (lo, hi) = ASYMPTOTIC_RANGE;
    // relative slack so that 5.0 * 1e-6 style inputs count as inside
    let slack = 1e-12;
    if s.separation < lo * (1.0 - slack) {
        out.push(ValidityWarning {
            kind: WarningKind::SeparationOutsideAsymptoticRange,
            ratio: s.separation / lo,
            threshold: 1.0,
        });
    } else if s.separation > hi * (1.0 + slack) {
        out.push(ValidityWarning {
            kind: WarningKind::SeparationOutsideAsymptoticRange,
            ratio: s.separation / hi,
            threshold: 1.0,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::builtin_atoms;
    use crate::materials::{sio2, vo2_on_sapphire};
    use approx::assert_relative_eq;

    const UM: f64 = 1e-6;
    const RB: f64 = 4.73e-29;

    fn rb() -> Atom {
        builtin_atoms().get("Rb").unwrap().clone()
    }

    fn vo2(a_um: f64, t_env: f64, t_wall: f64, dc: DcMode) -> Scenario {
        Scenario::new(rb(), vo2_on_sapphire(), a_um * UM, t_env, t_wall, dc).unwrap()
    }

    fn sigma_vo2(t: f64) -> f64 {
        match vo2_on_sapphire().kind {
            crate::materials::MaterialKind::PhaseChange { metal, .. } => metal.conductivity(t).unwrap(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn equilibrium_dielectric_anchors() {
        let f300 = eq_force_dielectric(5.0 * UM, 300.0, RB, 9.909).unwrap();
        let f340 = eq_force_dielectric(5.0 * UM, 340.0, RB, 9.909).unwrap();
        assert_relative_eq!(f300 / 1e-28, -1.92, max_relative = 5e-3);
        assert_relative_eq!(f340 / 1e-28, -2.176, max_relative = 5e-4);
        assert_eq!(eq_force_dielectric(5.0 * UM, 300.0, RB, 1.0).unwrap(), 0.0);
        assert!(eq_force_dielectric(0.0, 300.0, RB, 9.909).is_err());
        assert!(eq_force_dielectric(5.0 * UM, -1.0, RB, 9.909).is_err());
    }

    #[test]
    fn equilibrium_conducting_anchors() {
        let f342 = eq_force_conducting(5.0 * UM, 342.0, RB).unwrap();
        assert_relative_eq!(f342 / 1e-28, -2.680, max_relative = 5e-4);
        let f300 = eq_force_conducting(5.0 * UM, 300.0, RB).unwrap();
        assert_relative_eq!(f300 / 1e-28, -2.351, max_relative = 5e-4);
        assert_relative_eq!(f300, f342 * 300.0 / 342.0, max_relative = 1e-14);
        let e = 9.909;
        let ratio = f300 / eq_force_dielectric(5.0 * UM, 300.0, RB, e).unwrap();
        assert_relative_eq!(ratio, (e + 1.0) / (e - 1.0), max_relative = 1e-14);
    }

    #[test]
    fn nonequilibrium_dielectric_anchors() {
        let f340 = neq_force_dielectric(5.0 * UM, 340.0, RB, 9.909).unwrap();
        assert_relative_eq!(f340 / 1e-28, -5.048, max_relative = 5e-4);
        let f300 = neq_force_dielectric(5.0 * UM, 300.0, RB, 9.909).unwrap();
        assert_relative_eq!(f300 / 1e-28, -3.930, max_relative = 5e-4);
        let f600 = neq_force_dielectric(5.0 * UM, 600.0, RB, 9.909).unwrap();
        assert_relative_eq!(f600, 4.0 * f300, max_relative = 1e-14);
        assert!(matches!(neq_force_dielectric(5.0 * UM, 300.0, RB, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn nonequilibrium_drude_anchors() {
        let f342 = neq_force_drude(5.0 * UM, 342.0, RB, sigma_vo2(342.0)).unwrap();
        assert_relative_eq!(f342, -3.388e-27, max_relative = 5e-4);
        // 7 um, 310 K; value from an independent 30-digit evaluation
        let f310 = neq_force_drude(7.0 * UM, 310.0, RB, sigma_vo2(310.0)).unwrap();
        assert_relative_eq!(f310, -1.119116e-27, max_relative = 1e-6);
        let f620 = neq_force_drude(7.0 * UM, 620.0, RB, sigma_vo2(620.0)).unwrap();
        assert_relative_eq!(f620 / f310, 2.0, max_relative = 1e-13);
        assert!(neq_force_drude(7.0 * UM, 310.0, RB, 0.0).is_err());
    }

    #[test]
    fn gradient_anchors() {
        assert_relative_eq!(
            eq_gradient_dielectric(5.0 * UM, 300.0, RB, 9.909).unwrap(),
            1.536e-22,
            max_relative = 5e-4
        );
        assert_relative_eq!(eq_gradient_conducting(7.0 * UM, 310.0, RB).unwrap(), 3.614e-23, max_relative = 5e-4);
        assert_relative_eq!(neq_gradient_dielectric(7.0 * UM, 310.0, RB, 3.8).unwrap(), 5.143e-23, max_relative = 5e-4);
        assert_relative_eq!(
            neq_gradient_drude(7.0 * UM, 350.0, RB, sigma_vo2(350.0)).unwrap(),
            5.415e-22,
            max_relative = 5e-4
        );
    }

    #[test]
    fn gradients_are_power_law_multiples() {
        let a = 6.3 * UM;
        let (t, e, s) = (333.0, 3.8, sigma_vo2(333.0));
        let tol = 1e-14;
        assert_relative_eq!(
            eq_gradient_dielectric(a, t, RB, e).unwrap(),
            -4.0 * eq_force_dielectric(a, t, RB, e).unwrap() / a,
            max_relative = tol
        );
        assert_relative_eq!(
            eq_gradient_conducting(a, t, RB).unwrap(),
            -4.0 * eq_force_conducting(a, t, RB).unwrap() / a,
            max_relative = tol
        );
        assert_relative_eq!(
            neq_gradient_dielectric(a, t, RB, e).unwrap(),
            -3.0 * neq_force_dielectric(a, t, RB, e).unwrap() / a,
            max_relative = tol
        );
        assert_relative_eq!(
            neq_gradient_drude(a, t, RB, s).unwrap(),
            -3.0 * neq_force_drude(a, t, RB, s).unwrap() / a,
            max_relative = tol
        );
    }

    #[test]
    fn equal_temperatures_cancel_exactly() {
        for (t, dc) in [(300.0, DcMode::Disregarded), (341.0, DcMode::Included), (380.0, DcMode::Disregarded)] {
            let b = force_total(&vo2(5.0, t, t, dc)).unwrap();
            assert_eq!(b.total, b.eq_term);
            let g = gradient_total(&vo2(5.0, t, t, dc)).unwrap();
            assert_eq!(g.total, g.eq_term);
        }
    }

    #[test]
    fn nonequilibrium_totals() {
        let b = force_total(&vo2(5.0, 300.0, 340.0, DcMode::Disregarded)).unwrap();
        assert_relative_eq!(b.total / 1e-28, -3.0377, max_relative = 1e-4);
        assert_eq!(b.formulas.equilibrium, Formula::EqDielectric);
        assert_eq!(b.formulas.nonequilibrium_wall, Formula::NeqDielectric);

        let b = force_total(&vo2(5.0, 300.0, 342.0, DcMode::Disregarded)).unwrap();
        assert_relative_eq!(b.eq_term / 1e-28, -2.3510, max_relative = 1e-4);
        assert_relative_eq!(b.neq_wall_term / 1e-28, -33.878, max_relative = 1e-4);
        assert_relative_eq!(b.neq_env_term / 1e-28, -29.718, max_relative = 1e-4);
        assert_relative_eq!(b.total / 1e-28, -6.5115, max_relative = 1e-4);
        assert_eq!(b.formulas.equilibrium, Formula::EqConducting);
        assert_eq!(b.formulas.nonequilibrium_env, Formula::NeqDrude);
        assert_eq!(b.total, b.recombined_total());
    }

    #[test]
    fn dc_mode_switches_only_equilibrium_term() {
        let dis = force_total(&vo2(5.0, 300.0, 330.0, DcMode::Disregarded)).unwrap();
        let inc = force_total(&vo2(5.0, 300.0, 330.0, DcMode::Included)).unwrap();
        assert_eq!(dis.neq_wall_term, inc.neq_wall_term);
        assert_eq!(dis.neq_env_term, inc.neq_env_term);
        assert!(inc.eq_term < dis.eq_term);
        // metal phase: dc mode is irrelevant
        let dis = force_total(&vo2(5.0, 300.0, 360.0, DcMode::Disregarded)).unwrap();
        let inc = force_total(&vo2(5.0, 300.0, 360.0, DcMode::Included)).unwrap();
        assert_eq!(dis.total, inc.total);
    }

    #[test]
    fn environment_state_rule() {
        let s = vo2(5.0, 300.0, 342.0, DcMode::Disregarded).with_env_rule(EnvTermRule::EnvironmentState);
        let b = force_total(&s).unwrap();
        assert_eq!(b.formulas.equilibrium, Formula::EqDielectric);
        assert_eq!(b.formulas.nonequilibrium_env, Formula::NeqDielectric);
        assert_eq!(b.formulas.nonequilibrium_wall, Formula::NeqDrude);
        assert_eq!(b.state_env.resolved_at, 300.0);
        let expected = eq_force_dielectric(5.0 * UM, 300.0, RB, 9.909).unwrap()
            + (neq_force_drude(5.0 * UM, 342.0, RB, sigma_vo2(342.0)).unwrap()
                - neq_force_dielectric(5.0 * UM, 300.0, RB, 9.909).unwrap());
        assert_eq!(b.total, expected);
    }

    #[test]
    fn sio2_gradient_total() {
        let s = Scenario::new(rb(), sio2(), 7.0 * UM, 310.0, 350.0, DcMode::Disregarded).unwrap();
        let g = gradient_total(&s).unwrap();
        assert_relative_eq!(g.total, 3.5209e-23, max_relative = 1e-4);
        assert_relative_eq!(g.eq_term, 2.108e-23, max_relative = 1e-3);
        assert_relative_eq!(g.neq_wall_term, 6.557e-23, max_relative = 1e-3);
    }

    #[test]
    fn rejects_cold_wall() {
        let err = Scenario::new(rb(), vo2_on_sapphire(), 5.0 * UM, 300.0, 250.0, DcMode::Included).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let mut s = vo2(5.0, 300.0, 300.0, DcMode::Included);
        s.t_wall = 299.0;
        assert!(force_total(&s).is_err());
        s.t_wall = 300.0;
        s.separation = -1.0;
        assert!(matches!(force_total(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn validity_warnings() {
        let quiet = validity_check(&vo2(5.0, 300.0, 355.0, DcMode::Disregarded));
        assert!(quiet.is_empty(), "{quiet:?}");
        let hot_dielectric = Scenario::new(rb(), sio2(), 5.0 * UM, 300.0, 600.0, DcMode::Disregarded).unwrap();
        assert!(validity_check(&hot_dielectric).is_empty());
        let near = validity_check(&vo2(2.0, 300.0, 300.0, DcMode::Disregarded));
        assert_eq!(near.len(), 1);
        assert_eq!(near[0].kind, WarningKind::SeparationOutsideAsymptoticRange);
        assert_relative_eq!(near[0].ratio, 0.4, max_relative = 1e-12);
        assert!(validity_check(&vo2(10.0, 300.0, 300.0, DcMode::Disregarded)).is_empty());
        assert_eq!(validity_check(&vo2(12.0, 300.0, 300.0, DcMode::Disregarded)).len(), 1);

        // a poor conductor at high temperature trips the metallic condition
        let mut hot = vo2(5.0, 300.0, 600.0, DcMode::Disregarded);
        if let crate::materials::MaterialKind::PhaseChange { ref mut metal, .. } = hot.material.kind {
            metal.plasma_freq = 1e15;
        }
        let w = validity_check(&hot);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].kind, WarningKind::ThermalVsConductivity);

        // large dc conductivity with dc included
        let mut leaky = vo2(5.0, 300.0, 320.0, DcMode::Included);
        if let crate::materials::MaterialKind::PhaseChange { ref mut dielectric, .. } = leaky.material.kind {
            dielectric.dc_sigma0 = Some(1e13);
        }
        let w = validity_check(&leaky);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].kind, WarningKind::DcSigmaNotSmall);
        assert!(validity_check(&leaky.clone_with_dc(DcMode::Disregarded)).is_empty());
    }

    impl Scenario {
        fn clone_with_dc(&self, dc_mode: DcMode) -> Scenario {
            Scenario { dc_mode, ..self.clone() }
        }
    }

    #[test]
    fn parse_modes() {
        assert_eq!("Included".parse::<DcMode>().unwrap(), DcMode::Included);
        assert_eq!("disregarded".parse::<DcMode>().unwrap(), DcMode::Disregarded);
        assert!("maybe".parse::<DcMode>().is_err());
        assert_eq!("gradient".parse::<Quantity>().unwrap(), Quantity::Gradient);
    }
}
