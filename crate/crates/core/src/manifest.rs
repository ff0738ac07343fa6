//! Versioned default parameters shipped with the library.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../manifest.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDefaults {
    pub s: usize,
    pub t: usize,
    pub k: usize,
    pub radius: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusDefaults {
    pub max_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    pub census: CensusDefaults,
    pub families: BTreeMap<String, FamilyDefaults>,
}

impl Manifest {
    pub fn builtin() -> Manifest {
        Manifest::parse(BUILTIN).expect("bundled manifest is valid")
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        let m: Manifest = toml::from_str(text).map_err(|e| Error::input(format!("bad manifest: {e}")))?;
        if !m.families.contains_key("default") {
            return Err(Error::input("manifest needs a [families.default] table"));
        }
        Ok(m)
    }

    /// Defaults for a family key, falling back to `default`.
    pub fn defaults_for(&self, family: &str) -> FamilyDefaults {
        self.families.get(family).copied().unwrap_or(self.families["default"])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let m = Manifest::builtin();
        assert_eq!(m.census.max_vertices, 8);
        assert_eq!(m.defaults_for("y").s, 5);
        assert_eq!(m.defaults_for("unknown"), m.families["default"]);
    }
}
