//! Parameter sweeps, phase-transition jumps and crossover temperatures.

use serde::Serialize;

use crate::atoms::Atom;
use crate::error::{Error, Result};
use crate::forces::{evaluate, evaluate_in_phase, Breakdown, DcMode, EnvTermRule, Quantity, Scenario, ACCURACY_NOTE};
use crate::materials::{MaterialKind, Phase, WallMaterial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Atom-wall separation in m.
    Separation,
    /// Wall temperature in K, environment held at `base.t_env`.
    WallTemperature,
    /// Wall and environment heated together (thermal equilibrium).
    CommonTemperature,
}

impl SweepVariable {
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Separation => "a_m",
            SweepVariable::WallTemperature => "t_wall_K",
            SweepVariable::CommonTemperature => "t_K",
        }
    }

    fn apply(self, base: &Scenario, value: f64) -> Scenario {
        match self {
            SweepVariable::Separation => base.with_separation(value),
            SweepVariable::WallTemperature => base.with_t_wall(value),
            SweepVariable::CommonTemperature => Scenario { t_env: value, t_wall: value, ..base.clone() },
        }
    }

    fn is_temperature(self) -> bool {
        !matches!(self, SweepVariable::Separation)
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "separation" | "a" => Ok(SweepVariable::Separation),
            "wall_temperature" | "t_wall" => Ok(SweepVariable::WallTemperature),
            "common_temperature" | "equilibrium_temperature" => Ok(SweepVariable::CommonTemperature),
            other => Err(Error::Validation(format!("unknown sweep variable `{other}`"))),
        }
    }
}

/// A linear grid over one variable of `base`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: Scenario,
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Validation(format!("a sweep needs at least 2 points, got {}", self.points)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || !(self.start < self.stop) {
            return Err(Error::Validation(format!("sweep needs start < stop, got {} .. {}", self.start, self.stop)));
        }
        if self.variable == SweepVariable::WallTemperature && self.start < self.base.t_env {
            return Err(Error::Validation(format!(
                "wall temperature sweep starts at {} K, below the environment at {} K",
                self.start, self.base.t_env
            )));
        }
        Ok(())
    }
}

/// `points` evenly spaced values; the first and last are exactly `start`
/// and `stop`.
pub fn linear_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    let last = points.saturating_sub(1);
    (0..points).map(|i| if i == last { stop } else { start + (stop - start) * (i as f64) / (last as f64) }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub breakdown: Breakdown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub quantity: Quantity,
    pub variable: SweepVariable,
    pub dc_mode: DcMode,
    pub env_rule: EnvTermRule,
    /// How a phase-change wall exactly at t_c is treated.
    pub state_rule: &'static str,
    pub accuracy_note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Index `i` means the interval between rows `i` and `i + 1` straddles t_c.
    pub transition_intervals: Vec<usize>,
    pub metadata: SweepMetadata,
}

pub const STATE_RULE: &str = "metallic_at_or_above_t_c";

pub fn run_sweep(spec: &SweepSpec, quantity: Quantity) -> Result<SweepResult> {
    spec.validate()?;
    let grid = linear_grid(spec.start, spec.stop, spec.points);
    let eval = |&value: &f64| -> Result<SweepRow> {
        let s = spec.variable.apply(&spec.base, value);
        Ok(SweepRow { value, breakdown: evaluate(&s, quantity)? })
    };

    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        grid.par_iter().map(eval).collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows = grid.iter().map(eval).collect::<Result<Vec<_>>>()?;

    let transition_intervals = match (spec.variable.is_temperature(), spec.base.material.critical_temperature()) {
        (true, Some(t_c)) => {
            grid.windows(2).enumerate().filter(|(_, w)| w[0] < t_c && t_c <= w[1]).map(|(i, _)| i).collect()
        }
        _ => Vec::new(),
    };

    Ok(SweepResult {
        rows,
        transition_intervals,
        metadata: SweepMetadata {
            quantity,
            variable: spec.variable,
            dc_mode: spec.base.dc_mode,
            env_rule: spec.base.env_rule,
            state_rule: STATE_RULE,
            accuracy_note: ACCURACY_NOTE,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JumpMode {
    /// Environment stays at `base.t_env`, only the wall crosses t_c.
    NonequilibriumFixedEnv,
    /// Environment follows the wall on both sides.
    FullEquilibrium,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub t_c: f64,
    pub t_below: f64,
    pub t_above: f64,
    /// Half-width of the probe pair relative to t_c.
    pub delta: f64,
    pub mode: JumpMode,
    pub below: Breakdown,
    pub above: Breakdown,
    /// |above.total| / |below.total|
    pub jump_ratio: f64,
    /// |above.total| - |below.total|
    pub jump: f64,
}

fn phase_change_tc(material: &WallMaterial) -> Result<f64> {
    material
        .critical_temperature()
        .ok_or_else(|| Error::InvalidInput(format!("material `{}` has no phase transition", material.name)))
}

/// Force just below and just above the critical temperature, at
/// `t_c(1 ∓ delta)`.
pub fn transition_jump(base: &Scenario, delta: f64, mode: JumpMode) -> Result<JumpReport> {
    let t_c = phase_change_tc(&base.material)?;
    if !(delta > 0.0 && delta <= 1e-2) {
        return Err(Error::InvalidInput(format!("delta must lie in (0, 0.01], got {delta}")));
    }
    transition_jump_at(base, t_c * (1.0 - delta), t_c * (1.0 + delta), mode)
}

/// Jump between two explicit probe temperatures, e.g. 340 K and 342 K.
pub fn transition_jump_at(base: &Scenario, t_below: f64, t_above: f64, mode: JumpMode) -> Result<JumpReport> {
    let t_c = phase_change_tc(&base.material)?;
    if !(t_below < t_c && t_c <= t_above) {
        return Err(Error::InvalidInput(format!("probes {t_below} K / {t_above} K must straddle t_c = {t_c} K")));
    }
    let at = |t: f64| match mode {
        JumpMode::NonequilibriumFixedEnv => base.with_t_wall(t),
        JumpMode::FullEquilibrium => Scenario { t_env: t, t_wall: t, ..base.clone() },
    };
    let below = evaluate(&at(t_below), Quantity::Force)?;
    let above = evaluate(&at(t_above), Quantity::Force)?;
    Ok(JumpReport {
        t_c,
        t_below,
        t_above,
        delta: (t_above - t_below) / (2.0 * t_c),
        mode,
        jump_ratio: above.total.abs() / below.total.abs(),
        jump: above.total.abs() - below.total.abs(),
        below,
        above,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Crossover {
    Temperature {
        t_wall: f64,
    },
    /// The target magnitude falls inside the discontinuity at t_c.
    GapUnreachable {
        t_c: f64,
        below_limit: f64,
        above_limit: f64,
    },
}

impl Crossover {
    pub fn temperature(&self) -> Option<f64> {
        match *self {
            Crossover::Temperature { t_wall } => Some(t_wall),
            Crossover::GapUnreachable { .. } => None,
        }
    }
}

/// Bisection stops once the bracket is narrower than this (K) and the
/// residual is below [`CROSSOVER_RESIDUAL`].
pub const CROSSOVER_TOLERANCE_K: f64 = 1e-3;
pub const CROSSOVER_RESIDUAL: f64 = 1e-10;

/// Wall temperature at which |force| (or |gradient|) of `base` reaches
/// `target`. `base.t_wall` is ignored.
///
/// |F|(T_W) is strictly monotone on each phase branch, so each branch is
/// searched by bisection. A target inside the jump at t_c yields
/// [`Crossover::GapUnreachable`].
pub fn find_crossover_temperature(
    base: &Scenario,
    quantity: Quantity,
    target: f64,
    t_lo: f64,
    t_hi: f64,
) -> Result<Crossover> {
    if !(target > 0.0) || !target.is_finite() {
        return Err(Error::InvalidInput(format!("target magnitude must be positive, got {target}")));
    }
    if !(t_lo >= base.t_env) {
        return Err(Error::InvalidInput(format!(
            "search must start at or above the environment temperature {} K, got {t_lo}",
            base.t_env
        )));
    }
    if !(t_hi > t_lo) || !t_hi.is_finite() {
        return Err(Error::InvalidInput(format!("empty search interval [{t_lo}, {t_hi}]")));
    }

    let magnitude = |t: f64| -> Result<f64> { Ok(evaluate(&base.with_t_wall(t), quantity)?.total.abs()) };

    let split = match base.material.kind {
        MaterialKind::PhaseChange { t_c, dielectric, .. } if t_lo < t_c && t_c <= t_hi => Some((t_c, dielectric)),
        _ => None,
    };

    let Some((t_c, dielectric)) = split else {
        let (f_lo, f_hi) = (magnitude(t_lo)?, magnitude(t_hi)?);
        return match bisect_branch(&magnitude, t_lo, t_hi, f_lo, f_hi, target)? {
            Some(t) => Ok(Crossover::Temperature { t_wall: t }),
            None => Err(Error::OutOfRange { target, at_lo: f_lo, at_hi: f_hi }),
        };
    };

    let lower = |t: f64| -> Result<f64> {
        Ok(evaluate_in_phase(&base.with_t_wall(t), quantity, Phase::Dielectric(dielectric))?.total.abs())
    };
    let f_lo = magnitude(t_lo)?;
    let below_limit = lower(t_c)?;
    let above_limit = magnitude(t_c)?;
    let f_hi = magnitude(t_hi)?;

    if let Some(t) = bisect_branch(&lower, t_lo, t_c, f_lo, below_limit, target)? {
        // the lower branch is open at t_c
        if t < t_c {
            return Ok(Crossover::Temperature { t_wall: t });
        }
    }
    if let Some(t) = bisect_branch(&magnitude, t_c, t_hi, above_limit, f_hi, target)? {
        return Ok(Crossover::Temperature { t_wall: t });
    }
    let (gap_lo, gap_hi) = (below_limit.min(above_limit), below_limit.max(above_limit));
    if target > gap_lo && target < gap_hi {
        return Ok(Crossover::GapUnreachable { t_c, below_limit, above_limit });
    }
    Err(Error::OutOfRange { target, at_lo: f_lo, at_hi: f_hi })
}

/// Bisection of `f(t) = target` on `[lo, hi]` for monotone `f`. Returns
/// `None` when the target is not bracketed by `f_lo`, `f_hi`.
fn bisect_branch<F>(f: &F, lo: f64, hi: f64, f_lo: f64, f_hi: f64, target: f64) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let close = |v: f64| ((v - target) / target).abs() <= 1e-12;
    if close(f_lo) {
        return Ok(Some(lo));
    }
    if close(f_hi) {
        return Ok(Some(hi));
    }
    let (r_lo, r_hi) = (f_lo - target, f_hi - target);
    if r_lo.signum() == r_hi.signum() {
        return Ok(None);
    }
    let (mut lo, mut hi, mut r_lo) = (lo, hi, r_lo);
    let mut best = (lo, r_lo.abs());
    if r_hi.abs() < best.1 {
        best = (hi, r_hi.abs());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r_mid = f(mid)? - target;
        if r_mid.abs() < best.1 {
            best = (mid, r_mid.abs());
        }
        if r_mid == 0.0 {
            break;
        }
        if r_mid.signum() == r_lo.signum() {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
        if hi - lo < CROSSOVER_TOLERANCE_K && best.1 <= CROSSOVER_RESIDUAL * target {
            break;
        }
    }
    Ok(Some(best.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaterialComparison {
    pub first: Breakdown,
    pub second: Breakdown,
    /// |first.total| / |second.total|
    pub ratio: f64,
}

/// Same atom and temperatures, two wall materials.
#[allow(clippy::too_many_arguments)]
pub fn compare_materials(
    a: f64,
    t_env: f64,
    t_wall: f64,
    atom: &Atom,
    first: &WallMaterial,
    second: &WallMaterial,
    quantity: Quantity,
    dc_mode: DcMode,
) -> Result<MaterialComparison> {
    let first = evaluate(&Scenario::new(atom.clone(), first.clone(), a, t_env, t_wall, dc_mode)?, quantity)?;
    let second = evaluate(&Scenario::new(atom.clone(), second.clone(), a, t_env, t_wall, dc_mode)?, quantity)?;
    Ok(MaterialComparison { ratio: first.total.abs() / second.total.abs(), first, second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::builtin_atoms;
    use crate::forces::force_total;
    use crate::materials::{sio2, vo2_on_sapphire};
    use approx::assert_relative_eq;

    const UM: f64 = 1e-6;

    fn rb_vo2(a_um: f64, t_env: f64, t_wall: f64, dc: DcMode) -> Scenario {
        let rb = builtin_atoms().get("Rb").unwrap().clone();
        Scenario::new(rb, vo2_on_sapphire(), a_um * UM, t_env, t_wall, dc).unwrap()
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = linear_grid(300.0, 340.0, 201);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 300.0);
        assert_eq!(g[200], 340.0);
        assert_eq!(g[100], 320.0);
        assert_eq!(linear_grid(5e-6, 1e-5, 2), vec![5e-6, 1e-5]);
    }

    #[test]
    fn separation_sweep_scaling() {
        let spec = SweepSpec {
            base: rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded),
            variable: SweepVariable::Separation,
            start: 5.0 * UM,
            stop: 10.0 * UM,
            points: 6,
        };
        let r = run_sweep(&spec, Quantity::Force).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert!(r.transition_intervals.is_empty());
        let first = r.rows[0].breakdown.total;
        let last = r.rows[5].breakdown.total;
        assert_relative_eq!(first / 1e-28, -1.920, max_relative = 1e-3);
        assert_relative_eq!(last, first / 16.0, max_relative = 1e-13);
        assert_relative_eq!(last, -1.200e-29, max_relative = 1e-3);
    }

    #[test]
    fn two_point_sweep_matches_direct_evaluation() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Included);
        let spec = SweepSpec {
            base: base.clone(),
            variable: SweepVariable::WallTemperature,
            start: 300.0,
            stop: 380.0,
            points: 2,
        };
        let r = run_sweep(&spec, Quantity::Force).unwrap();
        assert_eq!(r.rows[0].breakdown, force_total(&base.with_t_wall(300.0)).unwrap());
        assert_eq!(r.rows[1].breakdown, force_total(&base.with_t_wall(380.0)).unwrap());
    }

    #[test]
    fn wall_temperature_sweep_flags_single_transition() {
        let spec = SweepSpec {
            base: rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded),
            variable: SweepVariable::WallTemperature,
            start: 300.0,
            stop: 380.0,
            points: 201,
        };
        let r = run_sweep(&spec, Quantity::Force).unwrap();
        assert_eq!(r.transition_intervals.len(), 1);
        let i = r.transition_intervals[0];
        assert!(r.rows[i].value < 341.0 && r.rows[i + 1].value >= 341.0);
        assert!(!r.rows[i].breakdown.state_wall.phase.is_metal());
        assert!(r.rows[i + 1].breakdown.state_wall.phase.is_metal());
    }

    #[test]
    fn grid_point_exactly_at_tc_is_metallic() {
        let spec = SweepSpec {
            base: rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded),
            variable: SweepVariable::WallTemperature,
            start: 331.0,
            stop: 351.0,
            points: 21,
        };
        let r = run_sweep(&spec, Quantity::Force).unwrap();
        assert_eq!(r.rows[10].value, 341.0);
        assert!(r.rows[10].breakdown.state_wall.phase.is_metal());
        assert_eq!(r.transition_intervals, vec![9]);
    }

    #[test]
    fn sweep_validation() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let mut spec =
            SweepSpec { base, variable: SweepVariable::WallTemperature, start: 300.0, stop: 340.0, points: 1 };
        assert!(matches!(run_sweep(&spec, Quantity::Force), Err(Error::Validation(_))));
        spec.points = 5;
        spec.start = 290.0;
        assert!(run_sweep(&spec, Quantity::Force).is_err());
        spec.start = 350.0;
        assert!(run_sweep(&spec, Quantity::Force).is_err());
    }

    #[test]
    fn equilibrium_jump_matches_anchor_values() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let r = transition_jump(&base, 1.0 / 341.0, JumpMode::FullEquilibrium).unwrap();
        assert_relative_eq!(r.t_below, 340.0, max_relative = 1e-14);
        assert_relative_eq!(r.t_above, 342.0, max_relative = 1e-14);
        assert_relative_eq!(r.below.total / 1e-28, -2.176, max_relative = 5e-4);
        assert_relative_eq!(r.above.total / 1e-28, -2.680, max_relative = 5e-4);
        assert_relative_eq!(r.jump_ratio, 1.23169, max_relative = 1e-5);
        let preset = transition_jump_at(&base, 340.0, 342.0, JumpMode::FullEquilibrium).unwrap();
        assert_relative_eq!(preset.jump_ratio, r.jump_ratio, max_relative = 1e-12);
    }

    #[test]
    fn nonequilibrium_jump_is_larger() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let neq = transition_jump(&base, 0.001 / 341.0, JumpMode::NonequilibriumFixedEnv).unwrap();
        // independent 30-digit evaluation of the three terms on each side
        assert_relative_eq!(neq.jump_ratio, 2.09056, max_relative = 1e-5);
        let eq = transition_jump(&base, 0.001 / 341.0, JumpMode::FullEquilibrium).unwrap();
        assert!(neq.jump > eq.jump);
        assert!(neq.jump_ratio > eq.jump_ratio);
    }

    #[test]
    fn jump_rejects_bad_inputs() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        assert!(matches!(transition_jump(&base, 0.0, JumpMode::FullEquilibrium), Err(Error::InvalidInput(_))));
        assert!(transition_jump(&base, 0.05, JumpMode::FullEquilibrium).is_err());
        let rb = builtin_atoms().get("Rb").unwrap().clone();
        let s = Scenario::new(rb, sio2(), 5.0 * UM, 300.0, 300.0, DcMode::Disregarded).unwrap();
        assert!(matches!(transition_jump(&s, 1e-3, JumpMode::FullEquilibrium), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn jump_ratio_converges() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let ratio = |d| transition_jump(&base, d, JumpMode::NonequilibriumFixedEnv).unwrap().jump_ratio;
        // the ratio is linear in delta near zero (slope about 18), so four
        // significant digits need delta well below 1e-4
        let (a, b) = (ratio(1e-5), ratio(1e-6));
        assert_eq!(format!("{a:.3e}"), format!("{b:.3e}"));
        let (c, d) = (ratio(1e-3), ratio(1e-4));
        assert!(((c - d) / d).abs() < 1e-2, "{c} vs {d}");
        assert!((b - 2.09056).abs() < 1e-4);
    }

    #[test]
    fn crossover_degenerate_target_returns_env_temperature() {
        let base = rb_vo2(7.0, 310.0, 310.0, DcMode::Disregarded);
        let target = force_total(&base).unwrap().eq_term.abs();
        let c = find_crossover_temperature(&base, Quantity::Force, target, 310.0, 600.0).unwrap();
        assert_eq!(c.temperature(), Some(310.0));
    }

    #[test]
    fn crossover_vo2_matches_sio2_at_605k() {
        let rb = builtin_atoms().get("Rb").unwrap().clone();
        let silica = Scenario::new(rb, sio2(), 7.0 * UM, 310.0, 605.0, DcMode::Disregarded).unwrap();
        let target = force_total(&silica).unwrap().total.abs();
        assert_relative_eq!(target, 3.7397e-28, max_relative = 1e-4);
        let base = rb_vo2(7.0, 310.0, 310.0, DcMode::Disregarded);
        let t =
            find_crossover_temperature(&base, Quantity::Force, target, 310.0, 605.0).unwrap().temperature().unwrap();
        // 30-digit root of the metallic branch
        assert!((t - 396.0755).abs() < 1e-3, "{t}");
        let reached = force_total(&base.with_t_wall(t)).unwrap().total.abs();
        assert!(((reached - target) / target).abs() < 1e-6);
    }

    #[test]
    fn crossover_on_dielectric_branch_and_gradients() {
        let base = rb_vo2(7.0, 310.0, 310.0, DcMode::Included);
        let target = force_total(&base.with_t_wall(330.0)).unwrap().total.abs();
        let t = find_crossover_temperature(&base, Quantity::Force, target, 310.0, 600.0).unwrap();
        assert!((t.temperature().unwrap() - 330.0).abs() < 1e-6);

        let g_target = evaluate(&base.with_t_wall(450.0), Quantity::Gradient).unwrap().total.abs();
        let t = find_crossover_temperature(&base, Quantity::Gradient, g_target, 310.0, 600.0).unwrap();
        assert!((t.temperature().unwrap() - 450.0).abs() < 1e-6);
    }

    #[test]
    fn crossover_gap_reports_branch_limits() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let jump = transition_jump(&base, 1e-9, JumpMode::NonequilibriumFixedEnv).unwrap();
        let mid = 0.5 * (jump.below.total.abs() + jump.above.total.abs());
        match find_crossover_temperature(&base, Quantity::Force, mid, 300.0, 400.0).unwrap() {
            Crossover::GapUnreachable { t_c, below_limit, above_limit } => {
                assert_eq!(t_c, 341.0);
                assert_relative_eq!(below_limit, jump.below.total.abs(), max_relative = 1e-7);
                assert_relative_eq!(above_limit, jump.above.total.abs(), max_relative = 1e-7);
            }
            other => panic!("expected gap, got {other:?}"),
        }
    }

    #[test]
    fn crossover_out_of_range() {
        let base = rb_vo2(5.0, 300.0, 300.0, DcMode::Disregarded);
        let err = find_crossover_temperature(&base, Quantity::Force, 1e-20, 300.0, 400.0).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { .. }));
        let err = find_crossover_temperature(&base, Quantity::Force, 1e-40, 300.0, 400.0).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { .. }));
        assert!(find_crossover_temperature(&base, Quantity::Force, 1e-28, 250.0, 400.0).is_err());
        assert!(find_crossover_temperature(&base, Quantity::Force, -1.0, 300.0, 400.0).is_err());
    }

    #[test]
    fn material_comparison() {
        let rb = builtin_atoms().get("Rb").unwrap().clone();
        let (vo2, silica) = (vo2_on_sapphire(), sio2());
        let c = compare_materials(7.0 * UM, 310.0, 350.0, &rb, &vo2, &silica, Quantity::Gradient, DcMode::Disregarded)
            .unwrap();
        assert_relative_eq!(c.first.total, 9.802e-23, max_relative = 1e-3);
        assert_relative_eq!(c.ratio, 2.78404, max_relative = 1e-5);
        let same =
            compare_materials(7.0 * UM, 310.0, 350.0, &rb, &vo2, &vo2, Quantity::Force, DcMode::Included).unwrap();
        assert_eq!(same.ratio, 1.0);
        let (e1, e2): (f64, f64) = (9.909, 3.8);
        let eq = compare_materials(7.0 * UM, 310.0, 310.0, &rb, &vo2, &silica, Quantity::Force, DcMode::Disregarded)
            .unwrap();
        assert_relative_eq!(eq.ratio, (e1 - 1.0) * (e2 + 1.0) / ((e1 + 1.0) * (e2 - 1.0)), max_relative = 1e-14);
    }
}
