use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AlgebraSpec, Parameters};

use super::diagnostic::Diagnostic;
use super::parser::parse;

pub const SVIR_SOURCE: &str = include_str!("../../presets/svir.lie");
pub const WITT_SOURCE: &str = include_str!("../../presets/witt.lie");

/// Built-in preset names. `virasoro-sector` is an alias of `witt`.
pub const BUILTIN_PRESETS: [&str; 3] = ["svir", "witt", "virasoro-sector"];

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown algebra preset `{0}`")]
    Unknown(String),
    #[error("{path}: {}", first_message(.diagnostics))]
    Parse { path: String, diagnostics: Vec<Diagnostic> },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn first_message(diagnostics: &[Diagnostic]) -> String {
    diagnostics.first().map(ToString::to_string).unwrap_or_default()
}

fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "svir" => Some(SVIR_SOURCE),
        "witt" | "virasoro-sector" => Some(WITT_SOURCE),
        _ => None,
    }
}

fn parse_builtin(src: &str) -> AlgebraSpec {
    parse(src).expect("bundled presets parse").spec
}

pub fn svir_spec() -> AlgebraSpec {
    parse_builtin(SVIR_SOURCE)
}

pub fn witt_spec() -> AlgebraSpec {
    parse_builtin(WITT_SOURCE)
}

/// Looks up presets by name: built-ins first, then `<name>.lie` in each
/// extra directory, in order.
#[derive(Clone, Debug, Default)]
pub struct PresetRegistry {
    dirs: Vec<PathBuf>,
}

impl PresetRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dirs<I: IntoIterator<Item = PathBuf>>(dirs: I) -> Self {
        PresetRegistry {
            dirs: dirs.into_iter().collect(),
        }
    }

    pub fn spec(&self, name: &str) -> Result<AlgebraSpec, PresetError> {
        if let Some(src) = builtin_source(name) {
            return Ok(parse_builtin(src));
        }
        for dir in &self.dirs {
            let path = dir.join(format!("{name}.lie"));
            if path.is_file() {
                return load_file(&path);
            }
        }
        Err(PresetError::Unknown(name.to_string()))
    }

    pub fn preset(&self, name: &str, params: &Parameters) -> Result<Algebra, PresetError> {
        Ok(Algebra::new(self.spec(name)?, params.clone())?)
    }
}

/// The named built-in spec bound to `params`.
pub fn preset(name: &str, params: &Parameters) -> Result<Algebra, PresetError> {
    PresetRegistry::new().preset(name, params)
}

pub fn load_file(path: &Path) -> Result<AlgebraSpec, PresetError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| PresetError::Io {
        path: display.clone(),
        source,
    })?;
    super::parser::parse_bytes(&bytes)
        .map(|p| p.spec)
        .map_err(|diagnostics| PresetError::Parse {
            path: display,
            diagnostics,
        })
}
