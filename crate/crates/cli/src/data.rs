//! The generator data file for groups too large to list inline.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use invtool_core::FieldSpec;
use serde::Deserialize;

use crate::error::CliError;
use crate::scenario::MatrixLit;

pub const DATA_SCHEMA: &str = "invtool-group/1";
pub const DATA_ENV: &str = "INVTOOL_DATA";

#[derive(Clone, Debug, Deserialize)]
pub struct GroupData {
    pub schema: String,
    #[serde(default)]
    pub description: String,
    pub field: FieldSpec,
    pub groups: BTreeMap<String, DataGroup>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DataGroup {
    pub order: usize,
    pub generators: Vec<MatrixLit>,
    #[serde(default)]
    pub classes: Option<DataClasses>,
    #[serde(default)]
    pub invariant_degrees: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DataClasses {
    pub sizes: Vec<usize>,
    pub orders: Vec<u64>,
}

/// `$INVTOOL_DATA` if set, else the copy shipped with the sources.
pub fn data_path() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/g168_gf9.json"),
    }
}

/// `Ok(None)` when the file does not exist.
pub fn load(path: &Path) -> Result<Option<GroupData>, CliError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(CliError::Io { path: path.display().to_string(), source }),
    };
    let data: GroupData = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("{}: {e}", path.display()),
    })?;
    if data.schema != DATA_SCHEMA {
        return Err(CliError::Data(format!("expected schema \"{DATA_SCHEMA}\", found \"{}\"", data.schema)));
    }
    Ok(Some(data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_loads() {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/g168_gf9.json");
        let data = load(&path).unwrap().expect("shipped data file");
        assert_eq!(data.groups["G168"].order, 168);
        assert_eq!(data.groups["G336"].generators.len(), 3);
    }

    #[test]
    fn absent_file_is_not_an_error() {
        assert!(load(Path::new("/nonexistent/invtool.json")).unwrap().is_none());
    }
}
