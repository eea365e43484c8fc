//! Corpus manifests: one `name: groupoid | h | k` instance per line, `#`
//! comments and blank lines ignored. Paths are relative to the manifest.

use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub groupoid: String,
    pub h: String,
    pub k: String,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Entry>> {
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, rest)) = line.split_once(':') else {
            bail!("line {}: expected `name: groupoid | h | k`", i + 1);
        };
        let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
        let [g, h, k] = parts[..] else {
            bail!("line {}: expected three `|`-separated fields", i + 1);
        };
        let name = name.trim().to_owned();
        if entries.iter().any(|e| e.name == name) {
            bail!("line {}: duplicate instance `{name}`", i + 1);
        }
        entries.push(Entry {
            name,
            groupoid: g.to_owned(),
            h: h.to_owned(),
            k: k.to_owned(),
        });
    }
    Ok(entries)
}

pub fn read_manifest(path: &Path) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_manifest(&text).with_context(|| path.display().to_string())
}
