//! Resource caps and search bounds, read from an optional TOML file.
//!
//! ```toml
//! [groebner]
//! max_basis = 4000
//! max_steps = 2000000
//!
//! [decomposition]
//! max_branches = 512
//! primitive_element_tries = 24
//! max_field_degree = 4096
//!
//! [fol]
//! finite_ring_cap = 64
//!
//! [witt]
//! cache_dir = "/tmp/fgring-witt"
//! ```

use std::path::{Path, PathBuf};

use fgring_core::fol::DEFAULT_ELEMENT_CAP;
use fgring_core::groebner::Limits;
use fgring_core::spectrum::DecompositionLimits;
use serde::Deserialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub groebner: GroebnerSection,
    pub decomposition: DecompositionSection,
    pub fol: FolSection,
    pub witt: WittSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroebnerSection {
    pub max_basis: usize,
    pub max_steps: usize,
}

impl Default for GroebnerSection {
    fn default() -> Self {
        let l = Limits::default();
        GroebnerSection { max_basis: l.max_basis, max_steps: l.max_steps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecompositionSection {
    pub max_branches: usize,
    pub primitive_element_tries: usize,
    pub max_field_degree: usize,
}

impl Default for DecompositionSection {
    fn default() -> Self {
        let l = DecompositionLimits::default();
        DecompositionSection {
            max_branches: l.max_branches,
            primitive_element_tries: l.primitive_element_tries,
            max_field_degree: l.max_field_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FolSection {
    pub finite_ring_cap: usize,
}

impl Default for FolSection {
    fn default() -> Self {
        FolSection { finite_ring_cap: DEFAULT_ELEMENT_CAP }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WittSection {
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Config::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn limits(&self) -> Limits {
        Limits { max_basis: self.groebner.max_basis, max_steps: self.groebner.max_steps }
    }

    pub fn decomposition_limits(&self) -> DecompositionLimits {
        DecompositionLimits {
            max_branches: self.decomposition.max_branches,
            primitive_element_tries: self.decomposition.primitive_element_tries,
            max_field_degree: self.decomposition.max_field_degree,
        }
    }
}
