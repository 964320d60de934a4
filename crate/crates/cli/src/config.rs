//! Run configuration: flat `key = value` files with `[atom NAME]` and
//! `[material NAME]` sections, or the equivalent JSON document. Command-line
//! flags override file values.
//!
//! ```text
//! atom = Rb
//! material = VO2_on_sapphire
//! a_um = 5
//! t_env = 300
//! t_wall = 340
//! dc = disregarded
//!
//! [atom H]
//! alpha0_m3 = 6.67e-31
//!
//! [material glass]
//! kind = dielectric
//! eps0 = 4.0
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use casimir_core::{
    Atom, AtomRegistry, DcMode, DielectricSpec, EnvTermRule, MaterialKind, MaterialRegistry, MetalSpec, Quantity,
    SweepVariable, WallMaterial,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Used when a dielectric definition does not give `char_freq`, rad/s.
pub const DEFAULT_CHAR_FREQ: f64 = 1.5e15;
pub const DEFAULT_PRECISION: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(CliError::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_um: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_env: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_wall: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dc: Option<DcMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub env_rule: Option<EnvTermRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<Atom>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub materials: Vec<WallMaterial>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident; $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        RunConfig::parse(&text)
    }

    /// JSON when the document starts with `{`, key-value text otherwise.
    pub fn parse(text: &str) -> CliResult<RunConfig> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid JSON config: {e}")))
        } else {
            parse_key_value(text)
        }
    }

    /// Fields set in `top` win; definitions are concatenated.
    pub fn overlay(mut self, top: RunConfig) -> RunConfig {
        overlay_fields!(self, top; atom, material, a_um, t_env, t_wall, dc, env_rule, format, precision, out,
            variable, start, stop, points, quantity);
        self.atoms.extend(top.atoms);
        self.materials.extend(top.materials);
        self
    }

    /// Built-in registries extended with this config's definitions. A
    /// definition identical to an existing entry is accepted as a no-op.
    pub fn registries(&self) -> CliResult<(AtomRegistry, MaterialRegistry)> {
        let mut atoms = AtomRegistry::builtin();
        for atom in &self.atoms {
            let normalized = Atom::new(atom.name.clone(), atom.alpha0)?;
            match atoms.get(&normalized.name) {
                Ok(existing) if *existing == normalized => {}
                _ => atoms = atoms.register(normalized)?,
            }
        }
        let mut materials = MaterialRegistry::builtin();
        for material in &self.materials {
            match materials.get(&material.name) {
                Ok(existing) if existing == material => {}
                _ => materials = materials.register(material.clone())?,
            }
        }
        Ok((atoms, materials))
    }

    pub fn precision(&self) -> CliResult<usize> {
        match self.precision.unwrap_or(DEFAULT_PRECISION) {
            p @ 1..=17 => Ok(p),
            p => Err(CliError::Config(format!("precision must be between 1 and 17, got {p}"))),
        }
    }

    pub fn sweep_variable(&self) -> CliResult<SweepVariable> {
        let v = require(&self.variable, "variable")?;
        Ok(v.parse()?)
    }
}

pub fn require<'a, T>(value: &'a Option<T>, key: &str) -> CliResult<&'a T> {
    value.as_ref().ok_or_else(|| CliError::Config(format!("missing required setting `{key}`")))
}

enum Section {
    Top,
    Atom(String),
    Material(String),
}

fn parse_number<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.parse().map_err(|_| CliError::Config(format!("`{key}`: cannot parse `{value}` as a number")))
}

fn parse_key_value(text: &str) -> CliResult<RunConfig> {
    let mut config = RunConfig::default();
    let mut section = Section::Top;
    let mut fields: BTreeMap<String, String> = BTreeMap::new();

    let flush = |section: &Section, fields: &mut BTreeMap<String, String>, config: &mut RunConfig| -> CliResult<()> {
        match section {
            Section::Top => apply_top(config, fields)?,
            Section::Atom(name) => config.atoms.push(build_atom(name, fields)?),
            Section::Material(name) => config.materials.push(build_material(name, fields)?),
        }
        fields.clear();
        Ok(())
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| CliError::Config(format!("line {}: unterminated section header", lineno + 1)))?;
            flush(&section, &mut fields, &mut config)?;
            let mut parts = header.split_whitespace();
            section = match (parts.next(), parts.next(), parts.next()) {
                (Some("atom"), Some(name), None) => Section::Atom(name.to_string()),
                (Some("material"), Some(name), None) => Section::Material(name.to_string()),
                _ => {
                    return Err(CliError::Config(format!(
                        "line {}: expected `[atom NAME]` or `[material NAME]`, got `[{header}]`",
                        lineno + 1
                    )))
                }
            };
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().to_string();
        let value = value.trim().trim_matches('"').to_string();
        if fields.insert(key.clone(), value).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
    }
    flush(&section, &mut fields, &mut config)?;
    Ok(config)
}

fn apply_top(config: &mut RunConfig, fields: &BTreeMap<String, String>) -> CliResult<()> {
    for (key, value) in fields {
        let v = value.as_str();
        match key.as_str() {
            "atom" => config.atom = Some(v.to_string()),
            "material" => config.material = Some(v.to_string()),
            "a_um" => config.a_um = Some(parse_number(key, v)?),
            "t_env" => config.t_env = Some(parse_number(key, v)?),
            "t_wall" => config.t_wall = Some(parse_number(key, v)?),
            "dc" => config.dc = Some(v.parse()?),
            "env_rule" => {
                config.env_rule = Some(match v {
                    "wall_state" => EnvTermRule::WallState,
                    "environment_state" => EnvTermRule::EnvironmentState,
                    _ => return Err(CliError::Config(format!("unknown env_rule `{v}`"))),
                })
            }
            "format" => config.format = Some(v.parse()?),
            "precision" => config.precision = Some(parse_number(key, v)?),
            "out" => config.out = Some(PathBuf::from(v)),
            "variable" => config.variable = Some(v.to_string()),
            "start" => config.start = Some(parse_number(key, v)?),
            "stop" => config.stop = Some(parse_number(key, v)?),
            "points" => config.points = Some(parse_number(key, v)?),
            "quantity" => config.quantity = Some(v.parse()?),
            other => return Err(CliError::Config(format!("unknown key `{other}`"))),
        }
    }
    Ok(())
}

fn take(fields: &BTreeMap<String, String>, key: &str) -> CliResult<Option<f64>> {
    fields.get(key).map(|v| parse_number(key, v)).transpose()
}

fn take_required(fields: &BTreeMap<String, String>, section: &str, key: &str) -> CliResult<f64> {
    take(fields, key)?.ok_or_else(|| CliError::Config(format!("[{section}] is missing `{key}`")))
}

fn check_keys(fields: &BTreeMap<String, String>, section: &str, allowed: &[&str]) -> CliResult<()> {
    match fields.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::Config(format!("[{section}]: unknown key `{k}`"))),
        None => Ok(()),
    }
}

fn build_atom(name: &str, fields: &BTreeMap<String, String>) -> CliResult<Atom> {
    let section = format!("atom {name}");
    check_keys(fields, &section, &["alpha0_m3"])?;
    Ok(Atom::new(name, take_required(fields, &section, "alpha0_m3")?)?)
}

fn build_material(name: &str, fields: &BTreeMap<String, String>) -> CliResult<WallMaterial> {
    let section = format!("material {name}");
    let kind = fields.get("kind").ok_or_else(|| CliError::Config(format!("[{section}] is missing `kind`")))?;
    let dielectric = |fields: &BTreeMap<String, String>| -> CliResult<DielectricSpec> {
        Ok(DielectricSpec {
            eps0: take_required(fields, &section, "eps0")?,
            dc_sigma0: take(fields, "dc_sigma0")?,
            char_freq: take(fields, "char_freq")?.unwrap_or(DEFAULT_CHAR_FREQ),
        })
    };
    let metal = |fields: &BTreeMap<String, String>| -> CliResult<MetalSpec> {
        Ok(MetalSpec {
            plasma_freq: take_required(fields, &section, "plasma_freq")?,
            relaxation_slope: take_required(fields, &section, "relaxation_slope")?,
        })
    };
    let kind = match kind.as_str() {
        "dielectric" => {
            check_keys(fields, &section, &["kind", "eps0", "dc_sigma0", "char_freq"])?;
            MaterialKind::FixedDielectric(dielectric(fields)?)
        }
        "metal" => {
            check_keys(fields, &section, &["kind", "plasma_freq", "relaxation_slope"])?;
            MaterialKind::FixedMetal(metal(fields)?)
        }
        "phase_change" => {
            check_keys(
                fields,
                &section,
                &["kind", "t_c", "eps0", "dc_sigma0", "char_freq", "plasma_freq", "relaxation_slope"],
            )?;
            MaterialKind::PhaseChange {
                t_c: take_required(fields, &section, "t_c")?,
                dielectric: dielectric(fields)?,
                metal: metal(fields)?,
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "[{section}]: kind must be dielectric, metal or phase_change, got `{other}`"
            )))
        }
    };
    Ok(WallMaterial::new(name, kind)?)
}
