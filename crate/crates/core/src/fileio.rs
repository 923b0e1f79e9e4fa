//! The FI-module file format.
//!
//! ```text
//! {"maxLevel": N,
//!  "levels": [{"n": 0, "dim": d, "generators": [matrix, ...], "inclusion": matrix|null}, ...]}
//! ```
//!
//! A matrix is a flat row-major array of rationals rendered `"p/q"` (bare
//! integers are accepted on input). Generators are the adjacent
//! transpositions `s_1..s_{n-1}` of shape `dim x dim`; the inclusion has
//! shape `dim_n x dim_{n-1}` and is `null` exactly at level 0. Loading
//! validates every module invariant and reports the first violated identity.

use crate::fimod::{FiModule, Level, ModuleError};
use crate::jsonout::J;
use crate::linalg::SparseMat;
use crate::rational::{self, Rat};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {what}")]
    Format { path: String, what: String },
    #[error("invariant violated: {0}")]
    Module(#[from] ModuleError),
}

fn format_err(path: impl Into<String>, what: impl Into<String>) -> LoadError {
    LoadError::Format {
        path: path.into(),
        what: what.into(),
    }
}

fn matrix_json(m: &SparseMat) -> J {
    J::Arr(
        m.to_row_major()
            .iter()
            .map(|v| J::Str(rational::render(v)))
            .collect(),
    )
}

/// Serializes a module in the file format; output is canonical and
/// byte-deterministic.
pub fn save_module(module: &FiModule) -> String {
    let levels: Vec<J> = (0..=module.max_level())
        .map(|n| {
            let level = module.level(n);
            J::Obj(vec![
                ("n".into(), J::Int(n as i64)),
                ("dim".into(), J::Int(level.dim as i64)),
                (
                    "generators".into(),
                    J::Arr(level.gens.iter().map(matrix_json).collect()),
                ),
                (
                    "inclusion".into(),
                    level.inclusion.as_ref().map_or(J::Null, matrix_json),
                ),
            ])
        })
        .collect();
    J::Obj(vec![
        ("maxLevel".into(), J::Int(module.max_level() as i64)),
        ("levels".into(), J::Arr(levels)),
    ])
    .render_pretty()
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<SparseMat, LoadError> {
    let arr = v
        .as_array()
        .ok_or_else(|| format_err(path, "expected a flat row-major array"))?;
    if arr.len() != rows * cols {
        return Err(format_err(
            path,
            format!(
                "expected {}x{} = {} entries, found {}",
                rows,
                cols,
                rows * cols,
                arr.len()
            ),
        ));
    }
    let mut entries: Vec<Rat> = Vec::with_capacity(arr.len());
    for (i, e) in arr.iter().enumerate() {
        let s = e
            .as_str()
            .ok_or_else(|| format_err(format!("{path}[{i}]"), "matrix entries are strings"))?;
        let r =
            rational::parse(s).map_err(|e| format_err(format!("{path}[{i}]"), e.to_string()))?;
        entries.push(r);
    }
    Ok(SparseMat::from_row_major(rows, cols, &entries))
}

/// Parses and fully validates a module file.
pub fn load_module(text: &str) -> Result<FiModule, LoadError> {
    let root: Value = serde_json::from_str(text)?;
    let max_level = root
        .get("maxLevel")
        .and_then(Value::as_u64)
        .ok_or_else(|| format_err("maxLevel", "missing or not a nonnegative integer"))?;
    let levels_json = root
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err("levels", "missing or not an array"))?;
    if levels_json.len() as u64 != max_level + 1 {
        return Err(format_err(
            "levels",
            format!(
                "maxLevel = {} needs {} levels, found {}",
                max_level,
                max_level + 1,
                levels_json.len()
            ),
        ));
    }
    let mut dims: Vec<usize> = Vec::new();
    let mut levels: Vec<Level> = Vec::new();
    for (n, lv) in levels_json.iter().enumerate() {
        let path = format!("levels[{n}]");
        let declared_n = lv
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| format_err(format!("{path}.n"), "missing or not an integer"))?;
        if declared_n != n as u64 {
            return Err(format_err(
                format!("{path}.n"),
                format!("levels must be listed in order; expected {n}, found {declared_n}"),
            ));
        }
        let dim = lv
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| format_err(format!("{path}.dim"), "missing or not an integer"))?
            as usize;
        let gens_json = lv
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| format_err(format!("{path}.generators"), "missing or not an array"))?;
        let expected_gens = n.saturating_sub(1);
        if gens_json.len() != expected_gens {
            return Err(format_err(
                format!("{path}.generators"),
                format!(
                    "level {n} needs {expected_gens} generator matrices, found {}",
                    gens_json.len()
                ),
            ));
        }
        let mut gens = Vec::with_capacity(expected_gens);
        for (i, g) in gens_json.iter().enumerate() {
            gens.push(parse_matrix(
                g,
                dim,
                dim,
                &format!("{path}.generators[{i}]"),
            )?);
        }
        let inclusion_json = lv
            .get("inclusion")
            .ok_or_else(|| format_err(format!("{path}.inclusion"), "missing"))?;
        let inclusion = if n == 0 {
            if !inclusion_json.is_null() {
                return Err(format_err(
                    format!("{path}.inclusion"),
                    "level 0 must have a null inclusion",
                ));
            }
            None
        } else {
            if inclusion_json.is_null() {
                return Err(format_err(
                    format!("{path}.inclusion"),
                    "levels above 0 need an inclusion matrix",
                ));
            }
            Some(parse_matrix(
                inclusion_json,
                dim,
                dims[n - 1],
                &format!("{path}.inclusion"),
            )?)
        };
        dims.push(dim);
        levels.push(Level {
            dim,
            gens,
            inclusion,
        });
    }
    Ok(FiModule::new(levels)?)
}
