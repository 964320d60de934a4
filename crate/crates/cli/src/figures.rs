//! Plot-ready data for the seven figures, driven by `presets/figures.toml`.

use std::fs;
use std::path::{Path, PathBuf};

use casimir_core::forces::ACCURACY_NOTE;
use casimir_core::quantities::MICROMETRE;
use casimir_core::sweeps::STATE_RULE;
use casimir_core::{
    run_sweep, AtomRegistry, DcMode, MaterialRegistry, Quantity, Scenario, SweepResult, SweepSpec, SweepVariable,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{sweep_table, Cell, TOOL_VERSION};

pub const PRESETS_TOML: &str = include_str!("../presets/figures.toml");

/// Figures are written at full round-trip precision.
pub const FIGURE_PRECISION: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineScale {
    /// total · a³ / α(0)
    A3OverAlpha,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinePreset {
    pub name: String,
    pub atom: String,
    pub material: String,
    pub variable: String,
    /// μm for separation sweeps, K otherwise.
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub dc: DcMode,
    pub a_um: Option<f64>,
    pub t_env: Option<f64>,
    pub t_wall: Option<f64>,
    pub scale: Option<LineScale>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigurePreset {
    pub id: u32,
    pub title: String,
    pub quantity: Quantity,
    #[serde(rename = "line")]
    pub lines: Vec<LinePreset>,
}

#[derive(Debug, Deserialize)]
struct PresetFile {
    figure: Vec<FigurePreset>,
}

pub fn presets() -> Vec<FigurePreset> {
    let file: PresetFile = toml::from_str(PRESETS_TOML).expect("bundled figure presets are valid");
    file.figure
}

pub fn preset(id: u32) -> CliResult<FigurePreset> {
    presets()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| CliError::Config(format!("no figure {id}; expected 1..=7")))
}

impl LinePreset {
    pub fn sweep_variable(&self) -> CliResult<SweepVariable> {
        Ok(self.variable.parse()?)
    }

    /// Sweep spec in SI units. `atom_override` replaces the preset atom.
    pub fn sweep_spec(
        &self,
        atoms: &AtomRegistry,
        materials: &MaterialRegistry,
        atom_override: Option<&str>,
    ) -> CliResult<SweepSpec> {
        let variable = self.sweep_variable()?;
        let atom = atoms.get(atom_override.unwrap_or(&self.atom))?.clone();
        let material = materials.get(&self.material)?.clone();
        let (start, stop) = match variable {
            SweepVariable::Separation => (self.start * MICROMETRE, self.stop * MICROMETRE),
            _ => (self.start, self.stop),
        };
        let missing = |k: &str| CliError::Config(format!("line `{}` needs `{k}`", self.name));
        let a = match variable {
            SweepVariable::Separation => start,
            _ => self.a_um.ok_or_else(|| missing("a_um"))? * MICROMETRE,
        };
        let (t_env, t_wall) = match variable {
            SweepVariable::Separation => {
                (self.t_env.ok_or_else(|| missing("t_env"))?, self.t_wall.ok_or_else(|| missing("t_wall"))?)
            }
            SweepVariable::WallTemperature => {
                let t_env = self.t_env.ok_or_else(|| missing("t_env"))?;
                (t_env, t_env)
            }
            SweepVariable::CommonTemperature => (start, start),
        };
        let base = Scenario::new(atom, material, a, t_env, t_wall, self.dc)?;
        Ok(SweepSpec { base, variable, start, stop, points: self.points })
    }

    pub fn file_name(&self, figure: u32) -> String {
        format!("fig{figure}_{}.csv", self.name)
    }
}

pub fn run_line(
    fig: &FigurePreset,
    line: &LinePreset,
    atoms: &AtomRegistry,
    materials: &MaterialRegistry,
    atom_override: Option<&str>,
) -> CliResult<(SweepSpec, SweepResult)> {
    let spec = line.sweep_spec(atoms, materials, atom_override)?;
    let result = run_sweep(&spec, fig.quantity)?;
    Ok((spec, result))
}

#[derive(Debug, Clone)]
pub struct FigureOutput {
    pub manifest: PathBuf,
    pub files: Vec<PathBuf>,
}

/// Writes one CSV per line plus `fig{id}_manifest.json` into `out_dir`.
pub fn generate_figure(
    id: u32,
    out_dir: &Path,
    atoms: &AtomRegistry,
    materials: &MaterialRegistry,
    atom_override: Option<&str>,
) -> CliResult<FigureOutput> {
    let fig = preset(id)?;
    fs::create_dir_all(out_dir)?;
    let mut files = Vec::new();
    let mut manifest_lines = Vec::new();
    for line in &fig.lines {
        let (spec, result) = run_line(&fig, line, atoms, materials, atom_override)?;
        let mut table = sweep_table(&result);
        if line.scale == Some(LineScale::A3OverAlpha) {
            table.columns.push("total_times_a3_over_alpha_N".into());
            for (cells, row) in table.rows.iter_mut().zip(&result.rows) {
                let a = match spec.variable {
                    SweepVariable::Separation => row.value,
                    _ => spec.base.separation,
                };
                cells.push(Cell::Num(row.breakdown.total * a.powi(3) / spec.base.atom.alpha0));
            }
        }
        let path = out_dir.join(line.file_name(id));
        table.write_csv(fs::File::create(&path)?, FIGURE_PRECISION)?;
        manifest_lines.push(json!({
            "name": line.name,
            "file": line.file_name(id),
            "atom": spec.base.atom.name,
            "alpha0_m3": spec.base.atom.alpha0,
            "material": spec.base.material.name,
            "variable": spec.variable,
            "column": spec.variable.column(),
            "start": spec.start,
            "stop": spec.stop,
            "points": spec.points,
            "a_m": (spec.variable != SweepVariable::Separation).then_some(spec.base.separation),
            "t_env_K": (spec.variable != SweepVariable::CommonTemperature).then_some(spec.base.t_env),
            "t_wall_K": (spec.variable == SweepVariable::Separation).then_some(spec.base.t_wall),
            "dc_mode": spec.base.dc_mode,
            "scale": line.scale,
            "transition_rows": result.transition_intervals,
            "columns": table.columns,
        }));
        files.push(path);
    }
    let manifest = json!({
        "figure": id,
        "title": fig.title,
        "quantity": fig.quantity,
        "tool_version": TOOL_VERSION,
        "state_rule": STATE_RULE,
        "accuracy_note": ACCURACY_NOTE,
        "precision_digits": FIGURE_PRECISION,
        "lines": manifest_lines,
    });
    let manifest_path = out_dir.join(format!("fig{id}_manifest.json"));
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(FigureOutput { manifest: manifest_path, files })
}
