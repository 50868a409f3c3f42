//! Named automata.
//!
//! `cerny:<n>` is generated. Every other name refers to a fixture file listed
//! in `manifest.json` of the fixture directory, together with the shortest
//! reset length and semigroup size it must have; fixtures are checked
//! against both every time they are loaded.

use std::path::{Path, PathBuf};

use resetword_core::exact::minimal_sync_length;
use resetword_core::semigroup::{semigroup_size, DEFAULT_CAP};
use resetword_core::{cerny, Dfa, SUBSET_CAP};
use serde::{Deserialize, Serialize};

use crate::format::{self, FormatError};

/// Catalog names besides `cerny:<n>`, with the search producing each.
pub const NAMED: &[(&str, &str)] = &[
    ("cpr", "resetword enumerate --n 4 --q 2 --emit-fixtures <dir>"),
    ("kari", "resetword enumerate --n 6 --q 2 --emit-fixtures <dir>"),
    ("roman", "resetword enumerate --n 5 --q 3 --emit-fixtures <dir>"),
    ("new3-1", "resetword enumerate --n 3 --q 2 --emit-fixtures <dir>"),
    ("new3-2", "resetword enumerate --n 3 --q 3 --emit-fixtures <dir>"),
    ("new3-3", "resetword enumerate --n 3 --q 3 --emit-fixtures <dir>"),
    ("new4-1", "resetword enumerate --n 4 --q 3 --emit-fixtures <dir>"),
    ("new4-2", "resetword enumerate --n 4 --q 3 --emit-fixtures <dir>"),
];

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}` (known: cerny:<n>, cpr, kari, roman, new3-1..3, new4-1..2)")]
    UnknownName(String),
    #[error("fixture `{name}` not yet generated; produce it with `{command}` and add it to the manifest")]
    FixtureMissing { name: String, command: String },
    #[error("`{0}` is not a valid Černý size")]
    BadCerny(String),
    #[error("fixture `{name}`: {what} is {got}, manifest says {expected}")]
    Mismatch {
        name: String,
        what: &'static str,
        expected: String,
        got: String,
    },
    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub fixtures: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    /// Path relative to the fixture directory.
    pub file: String,
    pub n: usize,
    pub q: usize,
    pub min_length: usize,
    pub semigroup_size: usize,
    /// The search that produced the table.
    pub source: String,
}

/// Fixture directory: `RESETWORD_FIXTURES` if set, else the one shipped
/// with the crate.
pub fn default_dir() -> PathBuf {
    std::env::var_os("RESETWORD_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

pub fn read_manifest(dir: &Path) -> Result<Option<Manifest>, CatalogError> {
    let path = dir.join("manifest.json");
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(CatalogError::Io { path, source }),
    };
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CatalogError::Manifest {
            path,
            message: e.to_string(),
        })
}

/// Resolves `name`, loading and validating a fixture if needed.
pub fn load(name: &str, dir: &Path) -> Result<Dfa, CatalogError> {
    if let Some(size) = name.strip_prefix("cerny:") {
        let n: usize = size
            .parse()
            .map_err(|_| CatalogError::BadCerny(size.to_string()))?;
        return cerny(n).map_err(|_| CatalogError::BadCerny(size.to_string()));
    }
    let command = NAMED
        .iter()
        .find(|(known, _)| *known == name)
        .map(|(_, cmd)| cmd.to_string())
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let missing = || CatalogError::FixtureMissing {
        name: name.to_string(),
        command: command.clone(),
    };
    let manifest = read_manifest(dir)?.ok_or_else(missing)?;
    let entry = manifest
        .fixtures
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(missing)?;
    let path = dir.join(&entry.file);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(missing()),
        Err(source) => return Err(CatalogError::Io { path, source }),
    };
    let dfa = format::parse(&text).map_err(|source| CatalogError::Format { path, source })?;
    validate(entry, &dfa)?;
    Ok(dfa)
}

/// Checks `dfa` against its manifest entry.
pub fn validate(entry: &Entry, dfa: &Dfa) -> Result<(), CatalogError> {
    let mismatch = |what, expected: String, got: String| CatalogError::Mismatch {
        name: entry.name.clone(),
        what,
        expected,
        got,
    };
    if (dfa.n(), dfa.q()) != (entry.n, entry.q) {
        return Err(mismatch(
            "size",
            format!("{} {}", entry.n, entry.q),
            format!("{} {}", dfa.n(), dfa.q()),
        ));
    }
    if dfa.n() <= SUBSET_CAP {
        let got = minimal_sync_length(dfa).map_err(|e| mismatch("shortest reset length", entry.min_length.to_string(), e.to_string()))?;
        if got != Some(entry.min_length) {
            return Err(mismatch(
                "shortest reset length",
                entry.min_length.to_string(),
                format!("{got:?}"),
            ));
        }
    }
    let cap = DEFAULT_CAP.max(entry.semigroup_size + 1);
    let got = semigroup_size(dfa, cap);
    if got != Some(entry.semigroup_size) {
        return Err(mismatch(
            "semigroup size",
            entry.semigroup_size.to_string(),
            format!("{got:?}"),
        ));
    }
    Ok(())
}
