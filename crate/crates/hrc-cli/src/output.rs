//! Deterministic CSV and JSON emission with atomic writes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use hrc_core::fit::FitResult;

use crate::{CliError, Result};

/// Provenance recorded at the top of every CSV artifact.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub tool_version: &'static str,
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    pub fn comment_block(&self) -> String {
        format!(
            "# hrc {}\n# config sha256 {}\n# seed {}\n",
            self.tool_version, self.config_hash, self.seed
        )
    }
}

/// Fixed-precision scientific notation keeps output byte-stable across
/// platforms and formatting changes.
pub fn fmt_value(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.9e}")
    }
}

/// Write a CSV file atomically (temp file + rename) with the provenance
/// comment block, a header line, and fixed-format numeric rows.
pub fn write_csv(
    path: &Path,
    provenance: &Provenance,
    header: &[&str],
    rows: &[Vec<f64>],
) -> Result<()> {
    let mut text = provenance.comment_block();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let mut line = String::new();
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            let _ = write!(line, "{}", fmt_value(*v));
        }
        text.push_str(&line);
        text.push('\n');
    }
    write_atomic(path, text.as_bytes())
}

#[derive(Serialize)]
struct JsonParam {
    value: f64,
    sigma: f64,
}

#[derive(Serialize)]
struct JsonFit {
    params: BTreeMap<String, JsonParam>,
    residual_norm: f64,
    iterations: usize,
    converged: bool,
}

/// Serialize a fit result to the documented JSON shape.
pub fn write_fit_json(path: &Path, result: &FitResult) -> Result<()> {
    let params: BTreeMap<String, JsonParam> = result
        .params
        .iter()
        .map(|p| {
            (
                p.name.to_string(),
                JsonParam {
                    value: p.value,
                    sigma: p.sigma,
                },
            )
        })
        .collect();
    let doc = JsonFit {
        params,
        residual_norm: result.residual_norm,
        iterations: result.iterations,
        converged: result.converged,
    };
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Numerical(format!("json serialization: {e}")))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = parent {
        std::fs::create_dir_all(dir).map_err(|e| {
            CliError::Validation(format!("cannot create {}: {e}", dir.display()))
        })?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::Validation(format!("cannot rename to {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn provenance() -> Provenance {
        Provenance {
            tool_version: "0.0.0",
            config_hash: "abc123".into(),
            seed: 7,
        }
    }

    #[test]
    fn csv_layout_and_determinism() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let rows = vec![vec![1.0, 2.5], vec![3.0, f64::INFINITY]];
        write_csv(&path, &provenance(), &["a", "b"], &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# hrc 0.0.0\n# config sha256 abc123\n# seed 7\na,b\n"));
        assert!(text.contains("1.000000000e0,2.500000000e0"));
        assert!(text.contains("3.000000000e0,inf"));

        write_csv(&path, &provenance(), &["a", "b"], &rows).unwrap();
        let again = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn fit_json_shape() {
        use hrc_core::fit::FitParam;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fit.json");
        let result = FitResult {
            params: vec![FitParam {
                name: "gamma",
                value: 1.5,
                sigma: 0.1,
                at_bound: false,
            }],
            residual_norm: 0.25,
            iterations: 42,
            converged: true,
        };
        write_fit_json(&path, &result).unwrap();
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(doc["params"]["gamma"]["value"], 1.5);
        assert_eq!(doc["params"]["gamma"]["sigma"], 0.1);
        assert_eq!(doc["residual_norm"], 0.25);
        assert_eq!(doc["iterations"], 42);
        assert_eq!(doc["converged"], true);
    }
}
