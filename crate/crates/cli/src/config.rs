//! `key = value` configuration files and parameter resolution.
//! Keys are the long flag names; flags on the command line win.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use woods_saxon::params::{EMPIRICAL_A, EMPIRICAL_MASS_NUMBER, EMPIRICAL_MU, HBAR_C, U_TO_MEV};
use woods_saxon::PhysicalParams;

use crate::error::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "V0",
    "R0",
    "a",
    "mu",
    "A",
    "hbar-c",
    "u-mev",
    "format",
    "out",
    "l",
    "n",
    "l-max",
    "preset",
    "rows",
    "with-oracle",
    "h",
    "r-max",
    "states",
    "max-l",
    "tol",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Blank lines and `#` comments are skipped; anything else must be `key = value`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split_once('#').map_or(raw, |(head, _)| head).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = key.trim().trim_start_matches("--");
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", i + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag if given, else the parsed config entry.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Usage(format!("config: invalid value `{v}` for `{key}`")))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.pick(flag, key)?
            .ok_or_else(|| CliError::Usage(format!("missing required --{key}")))
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamOverrides {
    pub v0: Option<f64>,
    pub r0: Option<f64>,
    pub a: Option<f64>,
    pub mu: Option<f64>,
    pub mass_number: Option<f64>,
    pub hbar_c: Option<f64>,
    pub u_mev: Option<f64>,
}

/// Mass-number defaults (`V0 = 40.5 + 0.13 A`, `R0 = 1.285 A^(1/3)`), then
/// config entries, then flags.
pub fn resolve_params(flags: &ParamOverrides, cfg: &ConfigFile) -> Result<PhysicalParams, CliError> {
    let mass_number = cfg.pick(flags.mass_number, "A")?.unwrap_or(EMPIRICAL_MASS_NUMBER);
    let base = PhysicalParams::from_mass_number(mass_number)?;
    let params = PhysicalParams::with_constants(
        cfg.pick(flags.v0, "V0")?.unwrap_or(base.v0),
        cfg.pick(flags.r0, "R0")?.unwrap_or(base.r0),
        cfg.pick(flags.a, "a")?.unwrap_or(EMPIRICAL_A),
        cfg.pick(flags.mu, "mu")?.unwrap_or(EMPIRICAL_MU),
        cfg.pick(flags.hbar_c, "hbar-c")?.unwrap_or(HBAR_C),
        cfg.pick(flags.u_mev, "u-mev")?.unwrap_or(U_TO_MEV),
    )?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let cfg = ConfigFile::parse("# depth\nV0 = 3.6\n\n  R0=4.9162  # fm\n").unwrap();
        assert_eq!(cfg.raw("V0"), Some("3.6"));
        assert_eq!(cfg.raw("R0"), Some("4.9162"));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(ConfigFile::parse("depth = 3").is_err());
        assert!(ConfigFile::parse("V0 3.6").is_err());
    }

    #[test]
    fn flags_override_file() {
        let cfg = ConfigFile::parse("V0 = 3.6\nl = 2").unwrap();
        assert_eq!(cfg.pick(Some(5.0), "V0").unwrap(), Some(5.0));
        assert_eq!(cfg.pick::<f64>(None, "V0").unwrap(), Some(3.6));
        assert_eq!(cfg.require::<u32>(None, "l").unwrap(), 2);
        assert!(cfg.require::<u32>(None, "n").is_err());
        assert!(cfg.pick::<u32>(None, "V0").is_err());
    }

    #[test]
    fn mass_number_defaults() {
        let p = resolve_params(&ParamOverrides::default(), &ConfigFile::default()).unwrap();
        assert!((p.v0 - 47.78).abs() < 1e-12);
        assert!((p.r0 - 4.9162).abs() < 1e-4);
        let flags = ParamOverrides {
            mass_number: Some(208.0),
            v0: Some(50.0),
            ..Default::default()
        };
        let p = resolve_params(&flags, &ConfigFile::default()).unwrap();
        assert_eq!(p.v0, 50.0);
        assert!((p.r0 - 1.285 * 208f64.cbrt()).abs() < 1e-12);
    }
}
