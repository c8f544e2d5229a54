//! On-disk cache of coset tables, one JSON file per content hash of
//! (group, Levi nodes, support nodes, strategy).

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use degwhit::reduction::{coset_table, EisensteinSpec, Strategy};
use degwhit::weyl::{CosetStrategy, CosetTable, CosetTableJson};
use degwhit::{Execution, Node};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "DEGWHIT_CACHE_DIR";
const KEY_VERSION: u32 = 1;

#[derive(Serialize)]
struct KeyMaterial<'a> {
    version: u32,
    group: String,
    levi: Option<Vec<Node>>,
    support: &'a [Node],
    strategy: &'static str,
}

/// Hex SHA-256 of the request.
pub fn cache_key(spec: &EisensteinSpec, support: &[Node], strategy: Strategy) -> String {
    let (levi, name) = match strategy {
        Strategy::LeviPruned => (spec.levi(), "levi_pruned"),
        Strategy::Exhaustive(_) => (None, "exhaustive"),
    };
    let material = KeyMaterial {
        version: KEY_VERSION,
        group: spec.rs.label(),
        levi,
        support,
        strategy: name,
    };
    let bytes = serde_json::to_vec(&material).expect("key serializes");
    Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// How a table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Disabled,
    Hit,
    Miss,
    /// An entry existed but could not be used and was rewritten.
    Replaced,
}

pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Table for the request, read from the cache when a valid entry exists.
    pub fn table(
        &self,
        spec: &EisensteinSpec,
        support: &[Node],
        strategy: Strategy,
        exec: Execution,
    ) -> anyhow::Result<(CosetTable, CacheOutcome)> {
        let key = cache_key(spec, support, strategy);
        let Some(path) = self.path_for(&key) else {
            return Ok((
                coset_table(spec, support, strategy, exec)?,
                CacheOutcome::Disabled,
            ));
        };
        let existed = path.exists();
        if existed {
            if let Some(t) = read_entry(spec, support, strategy, &path) {
                return Ok((t, CacheOutcome::Hit));
            }
        }
        let table = coset_table(spec, support, strategy, exec)?;
        write_atomic(&path, &table.to_json())?;
        Ok((
            table,
            if existed {
                CacheOutcome::Replaced
            } else {
                CacheOutcome::Miss
            },
        ))
    }
}

fn strategy_matches(found: &CosetStrategy, wanted: Strategy, spec: &EisensteinSpec) -> bool {
    match (found, wanted) {
        (CosetStrategy::Exhaustive, Strategy::Exhaustive(_)) => true,
        (CosetStrategy::LeviPruned { levi }, Strategy::LeviPruned) => {
            spec.levi().as_ref() == Some(levi)
        }
        _ => false,
    }
}

fn read_entry(
    spec: &EisensteinSpec,
    support: &[Node],
    strategy: Strategy,
    path: &Path,
) -> Option<CosetTable> {
    let text = std::fs::read_to_string(path).ok()?;
    let json: CosetTableJson = serde_json::from_str(&text).ok()?;
    let mut nodes = support.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    if json.support != nodes || !strategy_matches(&json.strategy, strategy, spec) {
        return None;
    }
    CosetTable::from_json(&spec.rs, &json).ok()
}

/// Write to a temporary file in the target directory, then rename over the entry.
fn write_atomic(path: &Path, json: &CosetTableJson) -> anyhow::Result<()> {
    let dir = path.parent().expect("cache entries live in a directory");
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating cache directory {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, json)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing cache entry {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use degwhit::RootSystem;

    fn spec(g: &str, node: Node) -> EisensteinSpec {
        EisensteinSpec::maximal_parabolic(RootSystem::from_label(g).unwrap(), node).unwrap()
    }

    #[test]
    fn key_separates_requests() {
        let a = cache_key(&spec("E6", 1), &[1, 4], Strategy::LeviPruned);
        assert_eq!(a.len(), 64);
        assert_eq!(a, cache_key(&spec("E6", 1), &[1, 4], Strategy::LeviPruned));
        assert_ne!(a, cache_key(&spec("E6", 6), &[1, 4], Strategy::LeviPruned));
        assert_ne!(a, cache_key(&spec("E6", 1), &[1, 5], Strategy::LeviPruned));
        assert_ne!(
            a,
            cache_key(&spec("E6", 1), &[1, 4], Strategy::exhaustive())
        );
    }

    #[test]
    fn hit_after_miss_and_corrupt_entry_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(Some(dir.path().to_path_buf()));
        let sp = spec("D5", 1);
        let (t1, o1) = cache
            .table(&sp, &[4, 5], Strategy::LeviPruned, Execution::Auto)
            .unwrap();
        let (t2, o2) = cache
            .table(&sp, &[4, 5], Strategy::LeviPruned, Execution::Auto)
            .unwrap();
        assert_eq!((o1, o2), (CacheOutcome::Miss, CacheOutcome::Hit));
        assert_eq!(t1, t2);
        let path = cache
            .path_for(&cache_key(&sp, &[4, 5], Strategy::LeviPruned))
            .unwrap();
        std::fs::write(&path, "{ not json").unwrap();
        let (t3, o3) = cache
            .table(&sp, &[4, 5], Strategy::LeviPruned, Execution::Auto)
            .unwrap();
        assert_eq!(o3, CacheOutcome::Replaced);
        assert_eq!(t1, t3);
    }
}
