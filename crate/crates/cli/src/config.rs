//! Run parameters: flags over `key = value` config files over defaults.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use potentia::Error;

#[derive(Debug)]
pub enum CliError {
    /// Missing or malformed arguments; the usage text of the command is printed.
    Usage(String),
    /// Parameters rejected by the library or the config loader.
    Invalid(String),
    /// Quadrature or truncation certificate not met.
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Invalid(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Tolerance { .. } | Error::Truncation { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `key = value` lines; blank lines and `#` lines are skipped.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Invalid(format!("config line {}: expected `key = value`", i + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Invalid(format!("config line {}: empty key", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Resolved parameters of one run. Every value read (including defaults) is
/// recorded for the provenance header.
pub struct Params {
    values: BTreeMap<String, String>,
    echo: RefCell<BTreeMap<String, String>>,
}

impl Params {
    pub fn resolve(
        allowed: &[&str],
        flags: Vec<(&str, Option<String>)>,
        config: Option<&Path>,
    ) -> CliResult<Params> {
        let mut values = BTreeMap::new();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
            for (k, v) in parse_config(&text)? {
                if !allowed.contains(&k.as_str()) {
                    return Err(CliError::Invalid(format!(
                        "unknown config key `{k}` (allowed: {})",
                        allowed.join(", ")
                    )));
                }
                values.insert(k, v);
            }
        }
        for (k, v) in flags {
            debug_assert!(allowed.contains(&k), "flag {k} missing from the key list");
            if let Some(v) = v {
                values.insert(k.to_string(), v);
            }
        }
        Ok(Params { values, echo: RefCell::new(BTreeMap::new()) })
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if let Some(v) = &v {
            self.echo.borrow_mut().insert(key.to_string(), v.clone());
        }
        v
    }

    /// Number of comma-separated entries of a raw value, without recording it.
    pub fn values_len(&self, key: &str) -> Option<usize> {
        self.values.get(key).map(|v| v.split(',').count())
    }

    pub fn get_or(&self, key: &str, default: &str) -> String {
        let v = self.values.get(key).cloned().unwrap_or_else(|| default.to_string());
        self.echo.borrow_mut().insert(key.to_string(), v.clone());
        v
    }

    pub fn require(&self, key: &str) -> CliResult<String> {
        self.get(key).ok_or_else(|| CliError::Usage(format!("missing required parameter `{key}`")))
    }

    pub fn real(&self, key: &str) -> CliResult<Option<f64>> {
        self.get(key).map(|v| parse_real(key, &v)).transpose()
    }

    pub fn real_or(&self, key: &str, default: f64) -> CliResult<f64> {
        parse_real(key, &self.get_or(key, &fmt_real(default)))
    }

    pub fn flag(&self, key: &str) -> CliResult<bool> {
        match self.get(key).as_deref() {
            None => Ok(false),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(v) => Err(CliError::Invalid(format!("{key} = {v:?}: expected true or false"))),
        }
    }

    pub fn echo(&self) -> Vec<(String, String)> {
        self.echo.borrow().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

pub fn fmt_real(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

pub fn parse_real(key: &str, s: &str) -> CliResult<f64> {
    match s.trim() {
        "inf" | "+inf" | "∞" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|v| !v.is_nan())
            .ok_or_else(|| CliError::Invalid(format!("{key} = {s:?} is not a number"))),
    }
}

pub fn parse_list(key: &str, s: &str) -> CliResult<Vec<f64>> {
    s.split(',').map(|x| parse_real(key, x)).collect()
}

pub fn parse_usize(key: &str, s: &str) -> CliResult<usize> {
    s.trim().parse().map_err(|_| CliError::Invalid(format!("{key} = {s:?} is not a non-negative integer")))
}

/// `lo:hi:n`, n equispaced points (n = 1 gives lo).
pub fn parse_range(key: &str, s: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Invalid(format!("{key} = {s:?}: expected lo:hi:n")));
    }
    let lo = parse_real(key, parts[0])?;
    let hi = parse_real(key, parts[1])?;
    let n = parse_usize(key, parts[2])?;
    if n == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Invalid(format!("{key} = {s:?}: need finite ends and n >= 1")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + i as f64 * h }).collect())
}

/// Comma-separated `lo:hi:n` axes; a single axis is repeated to dimension d.
pub fn parse_grid(key: &str, s: &str, d: usize) -> CliResult<Vec<Vec<f64>>> {
    let axes: Vec<Vec<f64>> = s.split(',').map(|a| parse_range(key, a)).collect::<CliResult<_>>()?;
    match axes.len() {
        1 => Ok(vec![axes[0].clone(); d]),
        n if n == d => Ok(axes),
        n => Err(CliError::Invalid(format!("{key}: {n} axes given for dimension {d}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let m = parse_config("# run\nsetting = hermite\n\n  t=0.3  \n").unwrap();
        assert_eq!(m["setting"], "hermite");
        assert_eq!(m["t"], "0.3");
        assert!(parse_config("just words").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("g", "-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_range("g", "1:4:61").unwrap().len(), 61);
        assert_eq!(*parse_range("g", "1:4:61").unwrap().last().unwrap(), 4.0);
        assert!(parse_range("g", "1:4").is_err());
        assert!(parse_range("g", "1:4:0").is_err());
        assert_eq!(parse_grid("g", "0:1:2,0:2:3", 2).unwrap()[1], vec![0.0, 1.0, 2.0]);
        assert!(parse_grid("g", "0:1:2,0:2:3", 3).is_err());
    }

    #[test]
    fn reals() {
        assert_eq!(parse_real("p", "inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_real("p", "2.5").unwrap(), 2.5);
        assert!(parse_real("p", "two").is_err());
        assert!(parse_real("p", "NaN").is_err());
        assert_eq!(fmt_real(f64::INFINITY), "inf");
    }
}
