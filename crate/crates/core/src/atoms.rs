//! Atoms characterised by their static polarizability.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ground-state atom. `alpha0` is the static polarizability volume in m³.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub name: String,
    pub alpha0: f64,
}

impl Atom {
    pub fn new(name: impl Into<String>, alpha0: f64) -> Result<Self> {
        let name = normalize_name(&name.into());
        if name.is_empty() {
            return Err(Error::Validation("atom name must not be empty".into()));
        }
        if !(alpha0 > 0.0) || !alpha0.is_finite() {
            return Err(Error::Validation(format!("polarizability of `{name}` must be positive, got {alpha0}")));
        }
        Ok(Atom { name, alpha0 })
    }
}

/// Maps `He*` to the shell-friendly `He_star`. Other names pass through.
pub fn normalize_name(name: &str) -> String {
    name.trim().replace('*', "_star")
}

const BUILTIN: [(&str, f64); 4] = [("He_star", 4.678e-29), ("Na", 2.411e-29), ("Rb", 4.73e-29), ("Cs", 5.981e-29)];

/// Name → atom map. Built-in entries can't be replaced.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomRegistry {
    entries: BTreeMap<String, Atom>,
}

impl AtomRegistry {
    pub fn builtin() -> Self {
        let entries =
            BUILTIN.iter().map(|&(name, alpha0)| (name.to_string(), Atom { name: name.to_string(), alpha0 })).collect();
        AtomRegistry { entries }
    }

    pub fn get(&self, name: &str) -> Result<&Atom> {
        let key = normalize_name(name);
        self.entries.get(&key).ok_or(Error::NotFound { kind: "atom", name: key })
    }

    /// Returns a new registry that also contains `atom`.
    pub fn register(&self, atom: Atom) -> Result<AtomRegistry> {
        // re-validate: fields are public
        let atom = Atom::new(atom.name, atom.alpha0)?;
        if self.entries.contains_key(&atom.name) {
            return Err(Error::Conflict { kind: "atom", name: atom.name });
        }
        let mut entries = self.entries.clone();
        entries.insert(atom.name.clone(), atom);
        Ok(AtomRegistry { entries })
    }

    pub fn is_builtin(name: &str) -> bool {
        let key = normalize_name(name);
        BUILTIN.iter().any(|(n, _)| *n == key)
    }

    /// Atoms in name order.
    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for AtomRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

pub fn builtin_atoms() -> AtomRegistry {
    AtomRegistry::builtin()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let reg = builtin_atoms();
        assert_eq!(reg.len(), 4);
        assert_eq!(reg.get("Rb").unwrap().alpha0, 4.73e-29);
        assert_eq!(reg.get("Cs").unwrap().alpha0, 5.981e-29);
        assert_eq!(reg.get("Na").unwrap().alpha0, 2.411e-29);
        assert_eq!(reg.get("He*").unwrap().alpha0, 4.678e-29);
        assert_eq!(reg.get("He_star").unwrap().name, "He_star");
    }

    #[test]
    fn missing_atom() {
        let err = builtin_atoms().get("Xe").unwrap_err();
        assert!(matches!(err, Error::NotFound { .. }));
    }

    #[test]
    fn register_round_trip() {
        let base = builtin_atoms();
        let reg = base.register(Atom::new("H", 6.67e-31).unwrap()).unwrap();
        assert_eq!(reg.get("H").unwrap().alpha0, 6.67e-31);
        assert_eq!(reg.len(), 5);
        // original untouched
        assert!(base.get("H").is_err());
    }

    #[test]
    fn register_rejects_builtin_collision() {
        let err = builtin_atoms().register(Atom::new("Rb", 1e-29).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Conflict { .. }));
        let err = builtin_atoms().register(Atom::new("He*", 1e-29).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Conflict { .. }));
    }

    #[test]
    fn register_rejects_bad_polarizability() {
        assert!(matches!(Atom::new("X", -1.0), Err(Error::Validation(_))));
        assert!(matches!(Atom::new("X", 0.0), Err(Error::Validation(_))));
        let sneaky = Atom { name: "X".into(), alpha0: -1.0 };
        assert!(matches!(builtin_atoms().register(sneaky), Err(Error::Validation(_))));
    }
}
