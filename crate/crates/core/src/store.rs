//! Hook for persisting whole-diagram results outside the process.
//!
//! Evaluators consult an optional [`ResultStore`] before running the skein
//! engine on a diagram and record the result afterwards. Keys use the
//! canonical code, so relabelings of one diagram share an entry.

use std::sync::Arc;

use crate::diagram::Diagram;
use crate::poly::{BiLaurent, Vars};

/// Changes whenever an algorithm change could alter stored values.
pub const ENGINE_VERSION: &str = "skeinlab-engine-1";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub code: Vec<u8>,
    pub kind: &'static str,
    /// Blackboard framing, sorted; empty for framing-independent kinds.
    pub framing: Vec<i64>,
}

impl CacheKey {
    pub fn new(d: &Diagram, kind: &'static str, framed: bool) -> Self {
        let framing = if framed {
            let mut f = d.blackboard_framing().0;
            f.sort_unstable();
            f
        } else {
            Vec::new()
        };
        CacheKey { code: d.canonical_code(), kind, framing }
    }
}

pub trait ResultStore: Send + Sync {
    fn get(&self, key: &CacheKey, vars: Vars) -> Option<BiLaurent>;
    /// `d` is the diagram the value was computed from, for stores that keep
    /// enough to recompute it.
    fn put(&self, key: &CacheKey, d: &Diagram, value: &BiLaurent);
}

pub type SharedStore = Arc<dyn ResultStore>;

/// Serves `compute()` through `store` when one is configured.
pub(crate) fn cached<F>(
    store: &Option<SharedStore>,
    d: &Diagram,
    kind: &'static str,
    framed: bool,
    vars: Vars,
    compute: F,
) -> Result<BiLaurent, crate::error::EngineError>
where
    F: FnOnce() -> Result<BiLaurent, crate::error::EngineError>,
{
    let Some(store) = store else { return compute() };
    // Trivial diagrams are cheaper to evaluate than to look up.
    if d.crossing_count() == 0 {
        return compute();
    }
    let key = CacheKey::new(d, kind, framed);
    if let Some(v) = store.get(&key, vars) {
        return Ok(v);
    }
    let v = compute()?;
    store.put(&key, d, &v);
    Ok(v)
}
