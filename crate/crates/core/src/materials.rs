//! Wall materials: dielectrics, Drude metals and phase-change composites.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// Static dielectric response of a wall in its dielectric phase.
///
/// `dc_sigma0` and `char_freq` never enter force values. They only feed the
/// validity checks and, through [`DcMode`](crate::forces::DcMode), decide
/// which equilibrium formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DielectricSpec {
    pub eps0: f64,
    /// Order-of-magnitude dc conductivity, s⁻¹ (Gaussian).
    pub dc_sigma0: Option<f64>,
    /// Characteristic absorption frequency, rad/s.
    pub char_freq: f64,
}

impl DielectricSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 >= 1.0) || !self.eps0.is_finite() {
            return Err(Error::Validation(format!("eps0 must be >= 1, got {}", self.eps0)));
        }
        if let Some(s) = self.dc_sigma0 {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::Validation(format!("dc_sigma0 must be positive, got {s}")));
            }
        }
        if !(self.char_freq > 0.0) || !self.char_freq.is_finite() {
            return Err(Error::Validation(format!("char_freq must be positive, got {}", self.char_freq)));
        }
        Ok(())
    }

    /// ε(ω) = ε(0) + 4πiσ₀/ω at low frequency.
    pub fn low_freq_permittivity(&self, omega: f64) -> Result<Complex64> {
        ensure_positive("angular frequency", omega)?;
        let im = self.dc_sigma0.map_or(0.0, |s| 4.0 * PI * s / omega);
        Ok(Complex64::new(self.eps0, im))
    }
}

/// Drude metal with relaxation rate γ(T) = `relaxation_slope`·T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetalSpec {
    /// Plasma frequency ω_p, rad/s.
    pub plasma_freq: f64,
    /// rad/(s·K)
    pub relaxation_slope: f64,
}

impl MetalSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("plasma_freq", self.plasma_freq), ("relaxation_slope", self.relaxation_slope)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn relaxation_rate(&self, temperature: f64) -> Result<f64> {
        ensure_positive("temperature", temperature)?;
        Ok(self.relaxation_slope * temperature)
    }

    /// σ_m(T) = ω_p² / (4π γ(T)), in s⁻¹.
    pub fn conductivity(&self, temperature: f64) -> Result<f64> {
        let gamma = self.relaxation_rate(temperature)?;
        Ok(self.plasma_freq * self.plasma_freq / (4.0 * PI * gamma))
    }
}

/// Free-function form of [`MetalSpec::conductivity`].
pub fn drude_conductivity(metal: &MetalSpec, temperature: f64) -> Result<f64> {
    metal.conductivity(temperature)
}

pub fn low_freq_permittivity(diel: &DielectricSpec, omega: f64) -> Result<Complex64> {
    diel.low_freq_permittivity(omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaterialKind {
    FixedDielectric(DielectricSpec),
    FixedMetal(MetalSpec),
    PhaseChange { t_c: f64, dielectric: DielectricSpec, metal: MetalSpec },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallMaterial {
    pub name: String,
    #[serde(flatten)]
    pub kind: MaterialKind,
}

impl WallMaterial {
    pub fn new(name: impl Into<String>, kind: MaterialKind) -> Result<Self> {
        let m = WallMaterial { name: name.into().trim().to_string(), kind };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Validation("material name must not be empty".into()));
        }
        match &self.kind {
            MaterialKind::FixedDielectric(d) => d.validate(),
            MaterialKind::FixedMetal(m) => m.validate(),
            MaterialKind::PhaseChange { t_c, dielectric, metal } => {
                if !(*t_c > 0.0) || !t_c.is_finite() {
                    return Err(Error::Validation(format!("t_c must be positive, got {t_c}")));
                }
                dielectric.validate()?;
                metal.validate()
            }
        }
    }

    pub fn critical_temperature(&self) -> Option<f64> {
        match self.kind {
            MaterialKind::PhaseChange { t_c, .. } => Some(t_c),
            _ => None,
        }
    }

    /// Phase of the wall at `t_wall`. A phase-change wall is metallic for
    /// `t_wall >= t_c`.
    pub fn resolve_state(&self, t_wall: f64) -> Result<MaterialState> {
        ensure_positive("wall temperature", t_wall)?;
        let phase = match self.kind {
            MaterialKind::FixedDielectric(d) => Phase::Dielectric(d),
            MaterialKind::FixedMetal(m) => Phase::Metal(m),
            MaterialKind::PhaseChange { t_c, dielectric, metal } => {
                if t_wall >= t_c {
                    Phase::Metal(metal)
                } else {
                    Phase::Dielectric(dielectric)
                }
            }
        };
        Ok(MaterialState { phase, resolved_at: t_wall })
    }
}

pub fn resolve_state(material: &WallMaterial, t_wall: f64) -> Result<MaterialState> {
    material.resolve_state(t_wall)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum Phase {
    Dielectric(DielectricSpec),
    Metal(MetalSpec),
}

impl Phase {
    pub fn label(&self) -> &'static str {
        match self {
            Phase::Dielectric(_) => "dielectric",
            Phase::Metal(_) => "metal",
        }
    }

    pub fn is_metal(&self) -> bool {
        matches!(self, Phase::Metal(_))
    }
}

/// A resolved phase together with the temperature it was resolved at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaterialState {
    pub phase: Phase,
    pub resolved_at: f64,
}

pub const VO2_ON_SAPPHIRE: &str = "VO2_on_sapphire";
pub const SIO2: &str = "SiO2";

/// Characteristic absorption frequency used for both built-ins, rad/s.
const CHAR_FREQ: f64 = 1.5e15;

pub fn vo2_on_sapphire() -> WallMaterial {
    WallMaterial {
        name: VO2_ON_SAPPHIRE.into(),
        kind: MaterialKind::PhaseChange {
            t_c: 341.0,
            dielectric: DielectricSpec { eps0: 9.909, dc_sigma0: Some(1e11), char_freq: CHAR_FREQ },
            metal: MetalSpec { plasma_freq: 5.06e15, relaxation_slope: 1.0e15 / 355.0 },
        },
    }
}

pub fn sio2() -> WallMaterial {
    WallMaterial {
        name: SIO2.into(),
        // dc conductivity magnitude only matters for warnings
        kind: MaterialKind::FixedDielectric(DielectricSpec { eps0: 3.8, dc_sigma0: Some(1e11), char_freq: CHAR_FREQ }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRegistry {
    entries: BTreeMap<String, WallMaterial>,
}

impl MaterialRegistry {
    pub fn builtin() -> Self {
        let entries = [vo2_on_sapphire(), sio2()].into_iter().map(|m| (m.name.clone(), m)).collect();
        MaterialRegistry { entries }
    }

    pub fn get(&self, name: &str) -> Result<&WallMaterial> {
        let key = name.trim();
        self.entries.get(key).ok_or_else(|| Error::NotFound { kind: "material", name: key.to_string() })
    }

    pub fn register(&self, material: WallMaterial) -> Result<MaterialRegistry> {
        material.validate()?;
        if self.entries.contains_key(&material.name) {
            return Err(Error::Conflict { kind: "material", name: material.name });
        }
        let mut entries = self.entries.clone();
        entries.insert(material.name.clone(), material);
        Ok(MaterialRegistry { entries })
    }

    pub fn iter(&self) -> impl Iterator<Item = &WallMaterial> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for MaterialRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

pub fn builtin_materials() -> MaterialRegistry {
    MaterialRegistry::builtin()
}
