//! `key=value` overrides checked against a per-scenario table of keys.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Float,
    /// A float, or `auto` to let the scenario pick.
    FloatOrAuto,
    Count,
    FloatList,
}

pub struct Key {
    pub name: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Float(f64),
    Auto,
    Count(u64),
    List(Vec<f64>),
}

pub struct Params {
    values: BTreeMap<&'static str, Value>,
}

fn parse_float(key: &str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: expected a number, got `{s}`")))?;
    if v.is_nan() {
        return Err(CliError::Usage(format!("{key}: NaN is not allowed")));
    }
    Ok(v)
}

fn parse(key: &Key, s: &str) -> Result<Value, CliError> {
    match key.kind {
        Kind::Float => parse_float(key.name, s).map(Value::Float),
        Kind::FloatOrAuto if s.trim() == "auto" => Ok(Value::Auto),
        Kind::FloatOrAuto => parse_float(key.name, s).map(Value::Float),
        Kind::Count => s
            .trim()
            .parse()
            .map(Value::Count)
            .map_err(|_| CliError::Usage(format!("{}: expected a non-negative integer, got `{s}`", key.name))),
        Kind::FloatList => {
            let items = s
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_float(key.name, t))
                .collect::<Result<Vec<_>, _>>()?;
            if items.is_empty() {
                return Err(CliError::Usage(format!("{}: empty list", key.name)));
            }
            Ok(Value::List(items))
        }
    }
}

impl Params {
    pub fn defaults(keys: &[Key]) -> Self {
        let values = keys
            .iter()
            .map(|k| (k.name, parse(k, k.default).expect("built-in default parses")))
            .collect();
        Self { values }
    }

    pub fn set(&mut self, keys: &[Key], name: &str, raw: &str) -> Result<(), CliError> {
        let key = keys.iter().find(|k| k.name == name).ok_or_else(|| {
            let valid: Vec<_> = keys.iter().map(|k| k.name).collect();
            CliError::Usage(format!("unknown key `{name}`; valid keys: {}", valid.join(", ")))
        })?;
        self.values.insert(key.name, parse(key, raw)?);
        Ok(())
    }

    pub fn set_pair(&mut self, keys: &[Key], pair: &str) -> Result<(), CliError> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{pair}`")))?;
        self.set(keys, k.trim(), v)
    }

    /// Flat TOML: every entry is a number, a string or an array of numbers.
    pub fn load(&mut self, keys: &[Key], path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let table: toml::Table = text
            .parse()
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        for (k, v) in table {
            let raw = match v {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Array(items) => items
                    .iter()
                    .map(|x| match x {
                        toml::Value::Integer(i) => Ok(i.to_string()),
                        toml::Value::Float(f) => Ok(f.to_string()),
                        other => Err(CliError::Usage(format!("{k}: unsupported list item {other}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .join(","),
                other => {
                    return Err(CliError::Usage(format!(
                        "{k}: unsupported value {other}; the config file must be flat"
                    )))
                }
            };
            self.set(keys, &k, &raw)?;
        }
        Ok(())
    }

    fn get(&self, name: &str) -> &Value {
        self.values
            .get(name)
            .unwrap_or_else(|| panic!("scenario reads undeclared key {name}"))
    }

    pub fn float(&self, name: &str) -> f64 {
        match self.get(name) {
            Value::Float(v) => *v,
            other => panic!("{name} is {other:?}, not a float"),
        }
    }

    pub fn float_or_auto(&self, name: &str) -> Option<f64> {
        match self.get(name) {
            Value::Float(v) => Some(*v),
            Value::Auto => None,
            other => panic!("{name} is {other:?}, not a float"),
        }
    }

    pub fn count(&self, name: &str) -> u64 {
        match self.get(name) {
            Value::Count(v) => *v,
            other => panic!("{name} is {other:?}, not a count"),
        }
    }

    pub fn list(&self, name: &str) -> &[f64] {
        match self.get(name) {
            Value::List(v) => v,
            other => panic!("{name} is {other:?}, not a list"),
        }
    }
}
