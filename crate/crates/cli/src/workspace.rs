//! Named JSON objects persisted in one document on disk.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const WORKSPACE_VERSION: u32 = 1;
pub const DEFAULT_WORKSPACE: &str = "torica-workspace.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Cone,
    Ideal,
    Map,
    Variety,
    Divisor,
    Class,
    Other,
}

impl ObjectKind {
    /// Guesses the kind from the shape of a JSON value.
    pub fn infer(value: &Value) -> ObjectKind {
        let has = |k: &str| value.get(k).is_some();
        match value {
            Value::String(s) if s.starts_with('@') => ObjectKind::Variety,
            Value::Object(_) if has("dim") && has("generators") => ObjectKind::Cone,
            Value::Object(_) if has("vars") && has("gens") => ObjectKind::Ideal,
            Value::Object(_) if has("phi") => ObjectKind::Map,
            Value::Object(_) if has("coeffs") => ObjectKind::Divisor,
            Value::Object(_) if has("free") && has("torsion") => ObjectKind::Class,
            _ => ObjectKind::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub kind: ObjectKind,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Workspace {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u64>,
    #[serde(default)]
    pub objects: BTreeMap<String, Entry>,
}

impl Default for Workspace {
    fn default() -> Self {
        Workspace { version: WORKSPACE_VERSION, field: None, objects: BTreeMap::new() }
    }
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, CliError> {
        let ws: Workspace = serde_json::from_str(text)?;
        if ws.version != WORKSPACE_VERSION {
            return Err(CliError::Usage(format!("unsupported workspace version {}", ws.version)));
        }
        Ok(ws)
    }

    /// Canonical text: pretty JSON with sorted keys and a trailing newline,
    /// so that load followed by save reproduces the file byte for byte.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("workspace values serialize");
        s.push('\n');
        s
    }

    /// Missing files load as an empty workspace.
    pub fn load(path: &Path) -> Result<Workspace, CliError> {
        match fs::read_to_string(path) {
            Ok(text) => Workspace::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Workspace::default()),
            Err(e) => Err(CliError::io(path, e)),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_text()).map_err(|e| CliError::io(path, e))
    }

    pub fn get(&self, name: &str) -> Result<&Entry, CliError> {
        self.objects.get(name).ok_or_else(|| CliError::Usage(format!("no object named {name:?} in the workspace")))
    }

    pub fn put(&mut self, name: &str, value: Value) -> ObjectKind {
        let kind = ObjectKind::infer(&value);
        self.objects.insert(name.to_string(), Entry { kind, value });
        kind
    }
}

/// Resolves `--workspace`, then `TORICA_WORKSPACE` (via clap), then the default.
pub fn workspace_path(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(DEFAULT_WORKSPACE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn kinds() {
        assert_eq!(ObjectKind::infer(&json!("@S")), ObjectKind::Variety);
        assert_eq!(ObjectKind::infer(&json!({"dim": 2, "generators": []})), ObjectKind::Cone);
        assert_eq!(ObjectKind::infer(&json!({"vars": ["x"], "char": 5, "gens": []})), ObjectKind::Ideal);
        assert_eq!(ObjectKind::infer(&json!({"variety": "@S", "coeffs": [1, 0, 0, 0]})), ObjectKind::Divisor);
        assert_eq!(ObjectKind::infer(&json!(3)), ObjectKind::Other);
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let mut ws = Workspace { field: Some(5), ..Workspace::default() };
        ws.put("sigma", json!({"dim": 3, "generators": [[1, 0, 0], [0, 1, 0]]}));
        ws.put("s", json!("@S"));
        let text = ws.to_text();
        let again = Workspace::parse(&text).unwrap();
        assert_eq!(again, ws);
        assert_eq!(again.to_text(), text);
    }

    #[test]
    fn rejects_other_versions() {
        assert!(Workspace::parse(r#"{"version": 9, "objects": {}}"#).is_err());
    }
}
