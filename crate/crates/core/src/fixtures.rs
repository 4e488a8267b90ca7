//! Loading of the shipped data fixtures: the v2 actuality table, the knot
//! corpus, and the seed/meridian data for the order-2 obstruction example.
//! The fixture directory defaults to `fixtures/v1` and can be overridden by
//! the ROUTESPACE_FIXTURES environment variable.

use crate::error::{Error, Result};
use crate::evaluator::{braid_closure, ActualityTable, GaussCode, TableJson};
use crate::groups::GroupSpec;
use crate::obstructions::{trace_from_json, CrossingTrace, TraceJson};
use crate::routes::{route_from_json, DecoratedRoute, RouteJson};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const FIXTURES_ENV: &str = "ROUTESPACE_FIXTURES";
pub const DEFAULT_DIR: &str = "fixtures/v1";

/// Fixture directory: explicit override, then the environment variable,
/// then the default relative path.
pub fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Ok(p) = std::env::var(FIXTURES_ENV) {
        return PathBuf::from(p);
    }
    PathBuf::from(DEFAULT_DIR)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Data(format!("malformed JSON in {}: {e}", path.display())))
}

pub fn load_table(path: &Path) -> Result<ActualityTable> {
    let json: TableJson = parse(path)?;
    ActualityTable::from_json(&json)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidJson {
    pub strands: usize,
    pub word: Vec<i32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnotJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gauss: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub braid: Option<BraidJson>,
    /// Published second Vassiliev invariant, where asserted.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a2: Option<i64>,
    /// Published knot determinant, where asserted.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det: Option<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CorpusJson {
    schema: String,
    knots: Vec<KnotJson>,
}

#[derive(Debug, Clone)]
pub struct KnotEntry {
    pub name: String,
    pub code: GaussCode,
    pub a2: Option<i64>,
    pub det: Option<i64>,
}

pub fn load_knots(path: &Path) -> Result<Vec<KnotEntry>> {
    let corpus: CorpusJson = parse(path)?;
    corpus
        .knots
        .into_iter()
        .map(|k| {
            let code = match (&k.gauss, &k.braid) {
                (Some(g), None) => GaussCode::parse(g)?,
                (None, Some(b)) => braid_closure(b.strands, &b.word)?,
                _ => {
                    return Err(Error::Data(format!(
                        "knot {} must give exactly one of gauss or braid",
                        k.name
                    )))
                }
            };
            Ok(KnotEntry { name: k.name, code, a2: k.a2, det: k.det })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedJson {
    pub schema: String,
    pub group: GroupSpec,
    pub route: RouteJson,
}

pub fn load_seed(path: &Path) -> Result<(GroupSpec, DecoratedRoute)> {
    let json: SeedJson = parse(path)?;
    let route = route_from_json(&json.group, &json.route)?;
    Ok((json.group, route))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceFixtureJson {
    pub schema: String,
    pub group: GroupSpec,
    pub trace: TraceJson,
}

pub fn load_trace(path: &Path) -> Result<(GroupSpec, CrossingTrace)> {
    let json: TraceFixtureJson = parse(path)?;
    let trace = trace_from_json(&json.group, &json.trace)?;
    Ok((json.group, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/v1")
    }

    #[test]
    fn shipped_fixtures_load() {
        let table = load_table(&dir().join("v2.json")).unwrap();
        assert_eq!(table, ActualityTable::v2());
        let knots = load_knots(&dir().join("knots.json")).unwrap();
        assert!(knots.len() >= 30);
        let (group, seed) = load_seed(&dir().join("fig4-seed.json")).unwrap();
        assert_eq!(group.generator_names(), &["x", "y", "z"]);
        assert_eq!(seed.order(), 2);
        let (_, trace) = load_trace(&dir().join("fig4-meridian.json")).unwrap();
        assert_eq!(trace.events.len(), 1);
    }

    #[test]
    fn env_override_wins() {
        let explicit = fixture_dir(Some(Path::new("/tmp/custom")));
        assert_eq!(explicit, PathBuf::from("/tmp/custom"));
    }
}
