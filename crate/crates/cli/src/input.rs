//! Loading classes and permutations of the naturals from JSON files.
//!
//! Files may hold the object itself or a full output envelope, in which case
//! its payload is used; a payload that nests the object under `class` or
//! `pi` (possibly inside `source`) is unwrapped too, so command outputs can
//! be fed back as inputs.

use std::path::Path;

use anyhow::{Context, Result};
use permclass::{FiniteBasisClass, PiSource};
use serde_json::Value;

fn read(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut value: Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))?;
    if value.get("schema_version").is_some() {
        if let Some(payload) = value.get_mut("payload") {
            value = payload.take();
        }
    }
    Ok(value)
}

fn unwrap_key(mut value: Value, key: &str) -> Value {
    if let Some(inner) = value.get_mut(key) {
        return inner.take();
    }
    if let Some(inner) = value.get_mut("source").and_then(|s| s.get_mut(key)) {
        return inner.take();
    }
    value
}

pub fn load_class(path: &Path) -> Result<FiniteBasisClass> {
    let value = unwrap_key(read(path)?, "class");
    serde_json::from_value(value).with_context(|| format!("{} does not describe a class", path.display()))
}

pub fn load_pi(path: &Path) -> Result<PiSource> {
    let value = unwrap_key(read(path)?, "pi");
    serde_json::from_value(value)
        .with_context(|| format!("{} does not describe a permutation of the naturals", path.display()))
}
