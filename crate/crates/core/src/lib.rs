//! Casimir-Polder forces between a ground-state atom and a wall that may be
//! hotter than its environment, including phase-change walls that turn from
//! dielectric to Drude metal at a critical temperature.
//!
//! ```
//! use casimir_core::{builtin_atoms, builtin_materials, force_total, DcMode, Scenario};
//!
//! let rb = builtin_atoms().get("Rb").unwrap().clone();
//! let vo2 = builtin_materials().get("VO2_on_sapphire").unwrap().clone();
//! let s = Scenario::new(rb, vo2, 5e-6, 300.0, 340.0, DcMode::Disregarded).unwrap();
//! let f = force_total(&s).unwrap();
//! assert!(f.total < 0.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atoms;
pub mod error;
pub mod forces;
pub mod materials;
pub mod quantities;
pub mod sweeps;

pub use atoms::{builtin_atoms, Atom, AtomRegistry};
pub use error::{Error, Result};
pub use forces::{
    evaluate, force_total, gradient_total, validity_check, Breakdown, DcMode, EnvTermRule, Formula, Quantity, Scenario,
    ValidityWarning, WarningKind,
};
pub use materials::{
    builtin_materials, DielectricSpec, MaterialKind, MaterialRegistry, MaterialState, MetalSpec, Phase, WallMaterial,
};
pub use sweeps::{
    compare_materials, find_crossover_temperature, run_sweep, transition_jump, transition_jump_at, Crossover, JumpMode,
    JumpReport, SweepResult, SweepSpec, SweepVariable,
};
