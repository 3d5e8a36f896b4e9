//! Run configuration: flat key = value files, list/range syntax, and τ/α
//! grid construction. Command-line flags always override file values.

use std::path::Path;

use crate::CliError;

/// A loaded config file: a flat table of scalar keys. Nested tables are
/// rejected so configs stay greppable one-liners.
#[derive(Debug, Default)]
pub struct FileConfig(toml::Table);

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let table: toml::Table = text
            .parse()
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        for (key, value) in &table {
            if value.is_table() || value.is_array() {
                return Err(CliError::config(format!(
                    "{}: key {key:?} must be a scalar (flat key = value file)",
                    path.display()
                )));
            }
        }
        Ok(FileConfig(table))
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(v)) => Ok(Some(*v)),
            Some(toml::Value::Integer(v)) => Ok(Some(*v as f64)),
            Some(other) => Err(bad_type(key, "a number", other)),
        }
    }

    pub fn u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) => u32::try_from(*v)
                .map(Some)
                .map_err(|_| CliError::config(format!("config key {key:?}: {v} out of range"))),
            Some(other) => Err(bad_type(key, "an integer", other)),
        }
    }

    /// String-valued key; bare numbers are accepted and stringified so list
    /// keys can hold a single scalar (`ds = 0`) without quoting.
    pub fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(toml::Value::Integer(v)) => Ok(Some(v.to_string())),
            Some(toml::Value::Float(v)) => Ok(Some(v.to_string())),
            Some(other) => Err(bad_type(key, "a string or number", other)),
        }
    }
}

fn bad_type(key: &str, want: &str, got: &toml::Value) -> CliError {
    CliError::config(format!("config key {key:?} must be {want}, got {got}"))
}

/// `flag.or(file value)`, with a named error when both are absent.
pub fn require<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::config(format!("missing {name} (flag or config file)")))
}

/// Integer list syntax: `4`, `1,2,3`, or the inclusive range `0..8`.
pub fn parse_u32_list(text: &str) -> Result<Vec<u32>, CliError> {
    let mut values = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u32 = parse_num(lo, item)?;
            let hi: u32 = parse_num(hi, item)?;
            if lo > hi {
                return Err(CliError::config(format!("empty range {item:?}")));
            }
            values.extend(lo..=hi);
        } else {
            values.push(parse_num(item, item)?);
        }
    }
    Ok(values)
}

pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|item| parse_num(item.trim(), item))
        .collect()
}

fn parse_num<T: std::str::FromStr>(text: &str, context: &str) -> Result<T, CliError> {
    text.parse()
        .map_err(|_| CliError::config(format!("cannot parse {context:?} as a number")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(CliError::config(format!(
                "unknown spacing {other:?}; expected linear or log"
            ))),
        }
    }
}

/// Evaluation grid: `count` points from `start` to `stop` inclusive.
/// Requires count ≥ 2, 0 < start < stop.
pub fn build_grid(start: f64, stop: f64, count: u32, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite()) {
        return Err(CliError::config("grid endpoints must be finite"));
    }
    if count < 2 {
        return Err(CliError::config(format!("grid count must be ≥ 2, got {count}")));
    }
    if !(start > 0.0) {
        return Err(CliError::config(format!("grid start must be > 0, got {start}")));
    }
    if !(start < stop) {
        return Err(CliError::config(format!(
            "grid start must be below stop, got {start} ≥ {stop}"
        )));
    }
    let n = count as usize;
    let grid = match spacing {
        Spacing::Linear => (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect(),
        Spacing::Log => {
            let (a, b) = (start.ln(), stop.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    };
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_u32_list("0..8").unwrap(), (0..=8).collect::<Vec<_>>());
        assert_eq!(parse_u32_list("2").unwrap(), vec![2]);
        assert_eq!(parse_u32_list("1,3..5,9").unwrap(), vec![1, 3, 4, 5, 9]);
        assert!(parse_u32_list("5..2").is_err());
        assert!(parse_u32_list("a").is_err());
    }

    #[test]
    fn float_lists() {
        assert_eq!(
            parse_f64_list("0.3,0.367, 0.5").unwrap(),
            vec![0.3, 0.367, 0.5]
        );
        assert!(parse_f64_list("0.3;0.5").is_err());
    }

    #[test]
    fn grids_validate_and_hit_endpoints() {
        let g = build_grid(0.5, 2.0, 4, Spacing::Linear).unwrap();
        assert_eq!(g, vec![0.5, 1.0, 1.5, 2.0]);
        let g = build_grid(0.1, 10.0, 3, Spacing::Log).unwrap();
        assert!((g[1] - 1.0).abs() < 1e-12);
        assert!(build_grid(0.0, 1.0, 2, Spacing::Linear).is_err());
        assert!(build_grid(1.0, 1.0, 2, Spacing::Linear).is_err());
        assert!(build_grid(0.5, 1.0, 1, Spacing::Linear).is_err());
    }
}
