use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{GroebnerBasis, MonomialOrder};
use crate::error::Result;
use crate::exactpoly::{parse_polynomial, Polynomial};

/// Directory of reduced bases, one JSON file per input hash.
#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    input_hash: String,
    order: MonomialOrder,
    arity: usize,
    generators: Vec<String>,
    basis: Vec<String>,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GbCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, hash: &str) -> Result<Option<GroebnerBasis>> {
        let Ok(text) = fs::read_to_string(self.path(hash)) else {
            return Ok(None);
        };
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
            return Ok(None);
        };
        if entry.input_hash != hash {
            return Ok(None);
        }
        let basis = entry
            .basis
            .iter()
            .map(|t| parse_polynomial(t, entry.arity))
            .collect::<Result<Vec<_>, _>>();
        Ok(basis.ok().map(|basis| GroebnerBasis {
            order: entry.order,
            arity: entry.arity,
            basis,
            input_hash: entry.input_hash,
        }))
    }

    pub fn store(&self, gens: &[Polynomial], gb: &GroebnerBasis) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            input_hash: gb.input_hash.clone(),
            order: gb.order.clone(),
            arity: gb.arity,
            generators: gens.iter().map(Polynomial::to_string).collect(),
            basis: gb.basis.iter().map(Polynomial::to_string).collect(),
        };
        // Write then rename so concurrent readers never see a partial file.
        let tmp = self
            .dir
            .join(format!("{}.{}.tmp", gb.input_hash, std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&entry)?)?;
        fs::rename(tmp, self.path(&gb.input_hash))?;
        Ok(())
    }
}
