//! `casimir` command-line tool.
//!
//! Exit codes: 0 success, 2 configuration or validation error, 3 domain
//! error (a value outside where the model is defined), 4 I/O error.
//!
//! Defaults when neither the config file nor a flag sets a value:
//!
//! | key        | default      |
//! |------------|--------------|
//! | t_wall     | t_env        |
//! | env_rule   | wall_state   |
//! | format     | csv (text for `audit`) |
//! | precision  | 9            |
//! | quantity   | force        |
//!
//! `dc` has no default and must always be given.

pub mod audit;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use casimir_core::{
    run_sweep, AtomRegistry, DcMode, EnvTermRule, MaterialKind, MaterialRegistry, Quantity, Scenario, SweepSpec,
    SweepVariable,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{require, Format, RunConfig};
use crate::error::CliResult;
use crate::output::{record_table, sweep_table, Cell, Table};

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir-Polder forces on atoms near heated walls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Force on the atom for one scenario
    #[command(allow_negative_numbers = true)]
    Force(ScenarioArgs),
    /// Force gradient for one scenario
    #[command(allow_negative_numbers = true)]
    Gradient(ScenarioArgs),
    /// Force or gradient over a grid of separations or temperatures
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Regenerate the data behind one of the figures (1 to 7)
    Figure(FigureArgs),
    /// Compare every quoted numeric result with the implemented formulas
    Audit(AuditArgs),
    /// List registered atoms or materials
    List(ListArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvRuleArg {
    WallState,
    EnvironmentState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DcArg {
    Disregarded,
    Included,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Key-value or JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub atom: Option<String>,
    #[arg(long)]
    pub material: Option<String>,
    /// Atom-wall separation in micrometres
    #[arg(long)]
    pub a_um: Option<f64>,
    /// Environment temperature, K
    #[arg(long)]
    pub t_env: Option<f64>,
    /// Wall temperature, K
    #[arg(long)]
    pub t_wall: Option<f64>,
    #[arg(long, value_enum)]
    pub dc: Option<DcArg>,
    #[arg(long, value_enum)]
    pub env_rule: Option<EnvRuleArg>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Significant digits of printed numbers (1 to 17)
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// separation, wall_temperature or common_temperature
    #[arg(long)]
    pub variable: Option<String>,
    /// First grid value (micrometres for separation, K otherwise)
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_parser = parse_quantity)]
    pub quantity: Option<Quantity>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    pub id: u32,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Replace the atom of every line
    #[arg(long)]
    pub atom: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Registry {
    Atoms,
    Materials,
}

#[derive(Debug, Clone, Args)]
pub struct ListArgs {
    #[arg(value_enum)]
    pub what: Registry,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse().map_err(|e: casimir_core::Error| e.to_string())
}

impl ScenarioArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            atom: self.atom.clone(),
            material: self.material.clone(),
            a_um: self.a_um,
            t_env: self.t_env,
            t_wall: self.t_wall,
            dc: self.dc.map(|d| match d {
                DcArg::Disregarded => DcMode::Disregarded,
                DcArg::Included => DcMode::Included,
            }),
            env_rule: self.env_rule.map(|r| match r {
                EnvRuleArg::WallState => EnvTermRule::WallState,
                EnvRuleArg::EnvironmentState => EnvTermRule::EnvironmentState,
            }),
            format: self.format,
            precision: self.precision,
            out: self.out.clone(),
            ..Default::default()
        }
    }
}

fn load_config(path: &Option<PathBuf>, flags: RunConfig) -> CliResult<RunConfig> {
    let file = match path {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    Ok(file.overlay(flags))
}

struct Resolved {
    scenario: Scenario,
    format: Format,
    precision: usize,
    out: Option<PathBuf>,
}

/// Builds the scenario with the separation and temperatures given, falling
/// back to the config values for any that are `None`.
fn resolve(config: &RunConfig, a_um: Option<f64>, t_env: Option<f64>, t_wall: Option<f64>) -> CliResult<Resolved> {
    let (atoms, materials) = config.registries()?;
    let atom = atoms.get(require(&config.atom, "atom")?)?.clone();
    let material = materials.get(require(&config.material, "material")?)?.clone();
    let a_um = match a_um {
        Some(a) => a,
        None => *require(&config.a_um, "a_um")?,
    };
    let t_env = match t_env {
        Some(t) => t,
        None => *require(&config.t_env, "t_env")?,
    };
    let t_wall = t_wall.or(config.t_wall).unwrap_or(t_env);
    let dc = *require(&config.dc, "dc")?;
    let scenario = Scenario::new(atom, material, a_um * 1e-6, t_env, t_wall, dc)?
        .with_env_rule(config.env_rule.unwrap_or_default());
    Ok(Resolved {
        scenario,
        format: config.format.unwrap_or(Format::Csv),
        precision: config.precision()?,
        out: config.out.clone(),
    })
}

fn emit(table: &Table, format: Format, precision: usize, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            table.write(&mut buf, format, precision)?;
            fs::write(path, buf)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, format, precision)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn cmd_point(args: &ScenarioArgs, quantity: Quantity) -> CliResult<()> {
    let config = load_config(&args.config, args.to_config())?;
    let r = resolve(&config, None, None, None)?;
    let b = casimir_core::evaluate(&r.scenario, quantity)?;
    for w in &b.warnings {
        eprintln!("warning: {} (ratio {:.3}, threshold {})", w.kind.as_str(), w.ratio, w.threshold);
    }
    emit(&record_table(&r.scenario, &b), r.format, r.precision, &r.out)
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let flags = RunConfig {
        variable: args.variable.clone(),
        start: args.start,
        stop: args.stop,
        points: args.points,
        quantity: args.quantity,
        ..args.scenario.to_config()
    };
    let config = load_config(&args.scenario.config, flags)?;
    let variable = config.sweep_variable()?;
    let start = *require(&config.start, "start")?;
    let stop = *require(&config.stop, "stop")?;
    let points = *require(&config.points, "points")?;
    let r = match variable {
        SweepVariable::Separation => resolve(&config, Some(start), None, None)?,
        SweepVariable::WallTemperature => resolve(&config, None, None, Some(start))?,
        SweepVariable::CommonTemperature => resolve(&config, None, Some(start), Some(start))?,
    };
    let (start, stop) = match variable {
        SweepVariable::Separation => (start * 1e-6, stop * 1e-6),
        _ => (start, stop),
    };
    let spec = SweepSpec { base: r.scenario, variable, start, stop, points };
    let result = run_sweep(&spec, config.quantity.unwrap_or(Quantity::Force))?;
    let flagged = result.rows.iter().filter(|row| !row.breakdown.warnings.is_empty()).count();
    if flagged > 0 {
        eprintln!("warning: {flagged} of {} rows carry validity warnings", result.rows.len());
    }
    emit(&sweep_table(&result), r.format, r.precision, &r.out)
}

fn cmd_figure(args: &FigureArgs) -> CliResult<()> {
    let config = load_config(&args.config, RunConfig::default())?;
    let (atoms, materials) = config.registries()?;
    let out = figures::generate_figure(args.id, &args.out, &atoms, &materials, args.atom.as_deref())?;
    for f in out.files.iter().chain(std::iter::once(&out.manifest)) {
        println!("{}", f.display());
    }
    Ok(())
}

fn cmd_audit(args: &AuditArgs) -> CliResult<()> {
    let checks = audit::run_audit()?;
    let precision = RunConfig { precision: args.precision.or(Some(4)), ..Default::default() }.precision()?;
    match args.format {
        Format::Json => {
            let doc = json!({ "accuracy_note": audit::accuracy_note(), "claims": checks });
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            match &args.out {
                Some(p) => fs::write(p, text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        format => {
            emit(&audit::audit_table(&checks), format, precision, &args.out)?;
            if format == Format::Text && args.out.is_none() {
                println!("\nnote: {}", audit::accuracy_note());
            }
        }
    }
    Ok(())
}

fn atoms_table(atoms: &AtomRegistry) -> Table {
    let mut t = Table::new(vec!["name".into(), "alpha0_m3".into(), "builtin".into()]);
    for a in atoms.iter() {
        t.push(vec![a.name.clone().into(), Cell::Num(a.alpha0), Cell::Int(AtomRegistry::is_builtin(&a.name) as i64)]);
    }
    t
}

fn materials_table(materials: &MaterialRegistry) -> Table {
    let builtin = MaterialRegistry::builtin();
    let mut t = Table::new(
        ["name", "kind", "t_c_K", "eps0", "plasma_freq_rad_per_s", "builtin"].iter().map(|c| c.to_string()).collect(),
    );
    for m in materials.iter() {
        let (kind, eps0, plasma) = match &m.kind {
            MaterialKind::FixedDielectric(d) => ("dielectric", Cell::Num(d.eps0), Cell::Text(String::new())),
            MaterialKind::FixedMetal(x) => ("metal", Cell::Text(String::new()), Cell::Num(x.plasma_freq)),
            MaterialKind::PhaseChange { dielectric, metal, .. } => {
                ("phase_change", Cell::Num(dielectric.eps0), Cell::Num(metal.plasma_freq))
            }
        };
        let t_c = m.critical_temperature().map_or(Cell::Text(String::new()), Cell::Num);
        t.push(vec![
            m.name.clone().into(),
            kind.into(),
            t_c,
            eps0,
            plasma,
            Cell::Int(builtin.get(&m.name).is_ok() as i64),
        ]);
    }
    t
}

fn cmd_list(args: &ListArgs) -> CliResult<()> {
    let config = load_config(&args.config, RunConfig::default())?;
    let (atoms, materials) = config.registries()?;
    if args.format == Format::Json {
        // shaped as a config document so it can be fed back with --config
        let doc = match args.what {
            Registry::Atoms => json!({ "atoms": atoms.iter().collect::<Vec<_>>() }),
            Registry::Materials => json!({ "materials": materials.iter().collect::<Vec<_>>() }),
        };
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(());
    }
    let table = match args.what {
        Registry::Atoms => atoms_table(&atoms),
        Registry::Materials => materials_table(&materials),
    };
    emit(&table, args.format, config::DEFAULT_PRECISION, &None)
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Force(a) => cmd_point(a, Quantity::Force),
        Command::Gradient(a) => cmd_point(a, Quantity::Gradient),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Audit(a) => cmd_audit(a),
        Command::List(a) => cmd_list(a),
    }
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
