//! On-disk cache of Witt polynomial tables as versioned JSON.

use std::path::{Path, PathBuf};

use fgring_core::witt::{WittOp, WittPolynomialTable};
use serde::{Deserialize, Serialize};

use crate::parse::parse_polynomial;

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTable {
    pub version: u32,
    pub d: u64,
    pub variables: Vec<String>,
    pub sum: Vec<String>,
    pub product: Vec<String>,
    pub negation: Vec<String>,
}

impl CachedTable {
    pub fn from_table(t: &WittPolynomialTable) -> Self {
        let names = t.names();
        let texts = |op| t.polynomials(op).iter().map(|p| p.to_text(&names)).collect();
        CachedTable {
            version: CACHE_VERSION,
            d: t.d(),
            variables: names.clone(),
            sum: texts(WittOp::Add),
            product: texts(WittOp::Mul),
            negation: texts(WittOp::Neg),
        }
    }

    /// Rebuilds the table; every identity is rechecked on the way.
    pub fn to_table(&self) -> Result<WittPolynomialTable, String> {
        if self.version != CACHE_VERSION {
            return Err(format!("cache version {} (expected {CACHE_VERSION})", self.version));
        }
        let parse = |texts: &[String]| -> Result<Vec<_>, String> {
            texts.iter().map(|s| parse_polynomial(s, &self.variables).map_err(|e| e.to_string())).collect()
        };
        WittPolynomialTable::from_parts(self.d, parse(&self.sum)?, parse(&self.product)?, parse(&self.negation)?)
            .map_err(|e| e.to_string())
    }
}

pub struct WittCache {
    dir: PathBuf,
}

impl WittCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        WittCache { dir: dir.into() }
    }

    pub fn path(&self, d: u64) -> PathBuf {
        self.dir.join(format!("witt-d{d}.json"))
    }

    fn read(path: &Path) -> Option<WittPolynomialTable> {
        let text = std::fs::read_to_string(path).ok()?;
        let cached: CachedTable = serde_json::from_str(&text).ok()?;
        cached.to_table().ok()
    }

    /// The table for `d`, from the cache when a valid entry exists. Stale or
    /// corrupt entries are rebuilt and overwritten. The flag reports a hit.
    pub fn get(&self, d: u64) -> Result<(WittPolynomialTable, bool), fgring_core::Error> {
        let path = self.path(d);
        if let Some(t) = Self::read(&path) {
            if t.d() == d {
                return Ok((t, true));
            }
        }
        let t = WittPolynomialTable::build(d)?;
        let text = serde_json::to_string_pretty(&CachedTable::from_table(&t)).expect("serializable");
        if std::fs::create_dir_all(&self.dir).is_ok() {
            let _ = std::fs::write(&path, text);
        }
        Ok((t, false))
    }
}
