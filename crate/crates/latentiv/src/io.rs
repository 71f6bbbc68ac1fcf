//! Whitespace-separated column files.
//!
//! A pair file holds one observation per line, `x` in the first column and
//! `y` in the second. Blank lines are skipped. The same layout is used for
//! simulated samples, whose latent variables go to single-column side files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use latentiv_core::benchmark::GroundTruth;
use latentiv_core::synthetic::SyntheticSample;
use latentiv_core::DataPair;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{}:{line}: {columns} columns, expected 2 (multivariate pair)", path.display())]
    MultivariatePair { path: PathBuf, line: usize, columns: usize },
    #[error("invalid data in {}", path.display())]
    Data { path: PathBuf, source: latentiv_core::Error },
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })
}

fn parse_field(path: &Path, line: usize, s: &str) -> Result<f64, LoadError> {
    s.parse::<f64>().map_err(|_| LoadError::Parse { path: path.to_path_buf(), line, message: format!("not a number: {s:?}") })
}

/// Parses the text of a two-column pair file; `path` is only used in errors.
pub fn parse_pair(text: &str, path: &Path) -> Result<DataPair, LoadError> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.len() {
            0 => continue,
            2 => {
                x.push(parse_field(path, line, fields[0])?);
                y.push(parse_field(path, line, fields[1])?);
            }
            n if n > 2 => return Err(LoadError::MultivariatePair { path: path.to_path_buf(), line, columns: n }),
            n => {
                return Err(LoadError::Parse { path: path.to_path_buf(), line, message: format!("{n} field, expected 2") });
            }
        }
    }
    DataPair::new(x, y).map_err(|source| LoadError::Data { path: path.to_path_buf(), source })
}

pub fn load_pair(path: &Path) -> Result<DataPair, LoadError> {
    parse_pair(&read(path)?, path)
}

/// One row of the corpus metadata: `id cause-start cause-end effect-start effect-end weight`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairMeta {
    pub id: u32,
    pub cause_columns: (u32, u32),
    pub effect_columns: (u32, u32),
    pub weight: f64,
}

impl PairMeta {
    /// `x -> y` when the cause block starts at the first column.
    pub fn ground_truth(&self) -> GroundTruth {
        if self.cause_columns.0 == 1 {
            GroundTruth::XCausesY
        } else {
            GroundTruth::YCausesX
        }
    }
}

pub fn parse_metadata(text: &str, path: &Path) -> Result<Vec<PairMeta>, LoadError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 6 {
            return Err(LoadError::Parse { path: path.to_path_buf(), line, message: format!("{} fields, expected 6", fields.len()) });
        }
        let int = |s: &str| {
            s.parse::<u32>().map_err(|_| LoadError::Parse { path: path.to_path_buf(), line, message: format!("not an integer: {s:?}") })
        };
        let weight = parse_field(path, line, fields[5])?;
        if !(weight.is_finite() && weight > 0.0) {
            return Err(LoadError::Parse { path: path.to_path_buf(), line, message: format!("weight must be positive, got {weight}") });
        }
        rows.push(PairMeta {
            id: int(fields[0])?,
            cause_columns: (int(fields[1])?, int(fields[2])?),
            effect_columns: (int(fields[3])?, int(fields[4])?),
            weight,
        });
    }
    Ok(rows)
}

pub fn load_metadata(path: &Path) -> Result<Vec<PairMeta>, LoadError> {
    parse_metadata(&read(path)?, path)
}

/// Formats `x y` rows with shortest round-trip float formatting.
pub fn format_pair(x: &[f64], y: &[f64]) -> String {
    let mut s = String::with_capacity(x.len() * 40);
    for (a, b) in x.iter().zip(y) {
        let _ = writeln!(s, "{a} {b}");
    }
    s
}

fn format_column(v: &[f64]) -> String {
    let mut s = String::with_capacity(v.len() * 20);
    for a in v {
        let _ = writeln!(s, "{a}");
    }
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub role: String,
    pub path: String,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub scenario: String,
    pub setting: String,
    pub n: usize,
    pub seed: u64,
    pub files: Vec<ManifestEntry>,
}

/// Writes `data.txt` plus `i_x.txt`, `i_y.txt` and, when present, `u.txt` into `dir`.
pub fn write_sample(dir: &Path, sample: &SyntheticSample, seed: u64) -> std::io::Result<Manifest> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    let mut put = |role: &str, name: &str, body: String| -> std::io::Result<()> {
        let p = dir.join(name);
        fs::write(&p, body)?;
        files.push(ManifestEntry { role: role.to_string(), path: p.display().to_string(), rows: sample.len() });
        Ok(())
    };
    put("data", "data.txt", format_pair(&sample.x, &sample.y))?;
    put("i_x", "i_x.txt", format_column(&sample.i_x))?;
    put("i_y", "i_y.txt", format_column(&sample.i_y))?;
    if let Some(u) = &sample.u {
        put("u", "u.txt", format_column(u))?;
    }
    Ok(Manifest {
        scenario: sample.scenario.as_str().to_string(),
        setting: sample.setting.as_str().to_string(),
        n: sample.len(),
        seed,
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("pair.txt")
    }

    #[test]
    fn two_rows() {
        let d = parse_pair("1 2\n3 4\n", p()).unwrap();
        assert_eq!(d.x(), &[1.0, 3.0]);
        assert_eq!(d.y(), &[2.0, 4.0]);
    }

    #[test]
    fn blank_lines_tabs_and_exponents() {
        let d = parse_pair("\n 1.5e2\t-2 \r\n\n3 4\n\n", p()).unwrap();
        assert_eq!(d.x(), &[150.0, 3.0]);
        assert_eq!(d.y(), &[-2.0, 4.0]);
    }

    #[test]
    fn multivariate_row() {
        let e = parse_pair("1 2\n1 2 3 4\n", p()).unwrap_err();
        assert!(matches!(e, LoadError::MultivariatePair { line: 2, columns: 4, .. }));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_pair("1 2\n3 x\n", p()).unwrap_err();
        assert!(matches!(e, LoadError::Parse { line: 2, .. }));
        assert!(e.to_string().contains("pair.txt:2"));
        let e = parse_pair("1 2\n\n7\n", p()).unwrap_err();
        assert!(matches!(e, LoadError::Parse { line: 3, .. }));
        assert!(matches!(parse_pair("1 nan\n2 3\n", p()), Err(LoadError::Data { .. })));
    }

    #[test]
    fn metadata_rows() {
        let m = parse_metadata("1 1 1 2 2 1.0\n0002 2 2 1 1 0.5\n", p()).unwrap();
        assert_eq!(m[0].id, 1);
        assert_eq!(m[0].ground_truth(), GroundTruth::XCausesY);
        assert_eq!(m[0].weight, 1.0);
        assert_eq!(m[1].id, 2);
        assert_eq!(m[1].ground_truth(), GroundTruth::YCausesX);
        assert!(parse_metadata("1 1 1 2 2\n", p()).is_err());
        assert!(parse_metadata("1 1 1 2 2 -1\n", p()).is_err());
    }

    #[test]
    fn float_formatting_round_trips() {
        let x = [0.1, -1.0 / 3.0, 1e-300, 12345.678];
        let y = [2.0, f64::MIN_POSITIVE, 7.0, -0.0];
        let d = parse_pair(&format_pair(&x, &y), p()).unwrap();
        assert_eq!(d.x(), &x);
        assert_eq!(d.y().iter().map(|v| v.to_bits()).collect::<Vec<_>>(), y.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }
}
