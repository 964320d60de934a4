//! Unit-labelled tables written as CSV or JSON.

use std::io::Write;

use casimir_core::quantities::newtons_to_figure_units;
use casimir_core::sweeps::{SweepResult, STATE_RULE};
use casimir_core::{Breakdown, Quantity, Scenario};
use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliResult;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

/// Scientific notation with `precision` significant digits. Precision 17
/// round-trips every f64.
pub fn fmt_num(x: f64, precision: usize) -> String {
    format!("{:.*e}", precision.saturating_sub(1), x)
}

impl Cell {
    fn render(&self, precision: usize) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x, precision),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self, precision: usize) -> Value {
        match self {
            Cell::Num(x) => {
                let rounded: f64 = fmt_num(*x, precision).parse().unwrap_or(*x);
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W, precision: usize) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(precision)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn json_rows(&self, precision: usize) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(|c| c.to_json(precision))).collect();
                Value::Object(obj)
            })
            .collect()
    }

    /// Fixed-width listing for humans.
    pub fn write_text<W: Write>(&self, mut out: W, precision: usize) -> CliResult<()> {
        let rendered: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|c| c.render(precision)).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, h)| rendered.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| -> String {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(out, "{}", line(&self.columns).trim_end())?;
        for r in &rendered {
            writeln!(out, "{}", line(r).trim_end())?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, mut out: W, format: Format, precision: usize) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(out, precision),
            Format::Text => self.write_text(out, precision),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json_rows(precision))?;
                writeln!(out)?;
                Ok(())
            }
        }
    }
}

fn prefix_unit(q: Quantity) -> (&'static str, &'static str) {
    match q {
        Quantity::Force => ("force", "N"),
        Quantity::Gradient => ("grad", "N_per_m"),
    }
}

pub const TERMS: [&str; 4] = ["total", "eq", "neq_wall", "neq_env"];

/// `total_force_N`, `eq_force_N`, ... plus the `_1e-13fN` display columns
/// for forces.
pub fn term_columns(q: Quantity) -> Vec<String> {
    let (p, u) = prefix_unit(q);
    let mut cols: Vec<String> = TERMS.iter().map(|t| format!("{t}_{p}_{u}")).collect();
    if q == Quantity::Force {
        cols.extend(TERMS.iter().map(|t| format!("{t}_{p}_1e-13fN")));
    }
    cols
}

pub fn term_cells(b: &Breakdown) -> Vec<Cell> {
    let values = [b.total, b.eq_term, b.neq_wall_term, b.neq_env_term];
    let mut cells: Vec<Cell> = values.iter().map(|&v| Cell::Num(v)).collect();
    if b.quantity == Quantity::Force {
        cells.extend(values.iter().map(|&v| Cell::Num(newtons_to_figure_units(v))));
    }
    cells
}

pub fn warnings_cell(b: &Breakdown) -> Cell {
    Cell::Text(b.warnings.iter().map(|w| w.kind.as_str()).collect::<Vec<_>>().join(";"))
}

/// One self-describing record for a single evaluation.
pub fn record_table(s: &Scenario, b: &Breakdown) -> Table {
    let mut columns: Vec<String> = [
        "tool_version",
        "quantity",
        "atom",
        "alpha0_m3",
        "material",
        "a_m",
        "t_env_K",
        "t_wall_K",
        "dc_mode",
        "env_rule",
    ]
    .iter()
    .map(|c| c.to_string())
    .collect();
    columns.extend(term_columns(b.quantity));
    columns.extend(
        ["state_wall", "state_env", "formula_eq", "formula_neq_wall", "formula_neq_env", "state_rule", "warnings"]
            .iter()
            .map(|c| c.to_string()),
    );
    let mut row: Vec<Cell> = vec![
        TOOL_VERSION.into(),
        b.quantity.as_str().into(),
        s.atom.name.as_str().into(),
        s.atom.alpha0.into(),
        s.material.name.as_str().into(),
        s.separation.into(),
        s.t_env.into(),
        s.t_wall.into(),
        s.dc_mode.as_str().into(),
        s.env_rule.as_str().into(),
    ];
    row.extend(term_cells(b));
    row.extend([
        b.state_wall.phase.label().into(),
        b.state_env.phase.label().into(),
        b.formulas.equilibrium.id().into(),
        b.formulas.nonequilibrium_wall.id().into(),
        b.formulas.nonequilibrium_env.id().into(),
        STATE_RULE.into(),
        warnings_cell(b),
    ]);
    let mut t = Table::new(columns);
    t.push(row);
    t
}

/// Rows of a sweep; `transition` is 1 on the row whose interval to the next
/// row straddles t_c.
pub fn sweep_table(result: &SweepResult) -> Table {
    let mut columns = vec![result.metadata.variable.column().to_string()];
    columns.extend(term_columns(result.metadata.quantity));
    columns.extend(["state_wall", "warnings_count", "transition"].iter().map(|c| c.to_string()));
    let mut t = Table::new(columns);
    for (i, row) in result.rows.iter().enumerate() {
        let mut cells = vec![Cell::Num(row.value)];
        cells.extend(term_cells(&row.breakdown));
        cells.push(row.breakdown.state_wall.phase.label().into());
        cells.push(Cell::Int(row.breakdown.warnings.len() as i64));
        cells.push(Cell::Int(result.transition_intervals.contains(&i) as i64));
        t.push(cells);
    }
    t
}
