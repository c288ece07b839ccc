//! Grid sweeps over one config key.

use std::path::PathBuf;

use crate::error::{Error, Result};

use super::config::{parse_config, ExperimentConfig};

/// Interpret a command-line value as TOML (number, bool, array, ...),
/// falling back to a plain string.
fn parse_value(raw: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

fn set_path(table: &mut toml::Table, key: &str, value: toml::Value) -> Result<()> {
    let mut parts: Vec<&str> = key.split('.').collect();
    let last = parts
        .pop()
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::config(key, "empty sweep key"))?;
    let mut node = table;
    for part in parts {
        node = node
            .get_mut(part)
            .and_then(|v| v.as_table_mut())
            .ok_or_else(|| Error::config(key, format!("`{part}` is not a config section")))?;
    }
    node.insert(last.to_string(), value);
    Ok(())
}

/// One config per value, with `key` (dotted, e.g. `optimizer.beta_nonsparse`)
/// overridden. Names and output files get a `-<leaf>=<value>` suffix. Every
/// variant is fully re-validated.
pub fn expand_sweep(
    base: &ExperimentConfig,
    key: &str,
    values: &[String],
) -> Result<Vec<ExperimentConfig>> {
    if values.is_empty() {
        return Err(Error::config("values", "nothing to sweep over"));
    }
    let leaf = key.rsplit('.').next().unwrap_or(key);
    let base_table: toml::Table =
        toml::from_str(&base.to_toml()).map_err(|e| Error::ConfigParse(e.to_string()))?;
    values
        .iter()
        .map(|raw| {
            let raw = raw.trim();
            let mut table = base_table.clone();
            set_path(&mut table, key, parse_value(raw))?;
            let mut config = parse_config(&toml::to_string(&table).expect("table serializes"))?;
            let suffix = format!("{leaf}={raw}");
            config.name = format!("{}-{suffix}", base.name);
            let stem = base
                .output
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "trace".into());
            let file = PathBuf::from(format!("{stem}-{suffix}.csv"));
            config.output = match base.output.parent() {
                Some(dir) => dir.join(file),
                None => file,
            };
            Ok(config)
        })
        .collect()
}
