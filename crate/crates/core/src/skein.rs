//! The skein (HOMFLY) polynomial `P(v, z)`, normalized by `P(∅) = 1` and
//! `P(○) = δ_P`, with `v⁻¹P₊ − vP₋ = zP₀`.

use std::collections::BTreeMap;

use crate::diagram::{Diagram, Smoothing, SublinkMask};
use crate::engine::{Engine, Memo, Theory, DEFAULT_BUDGET};
use crate::error::EngineError;
use crate::poly::{delta_p, BiLaurent, Vars, VZ};
use crate::store::{cached, SharedStore};

/// Default limit on the number of components for sublink enumeration.
pub const DEFAULT_SUBLINK_BOUND: usize = 6;

struct Homfly;

impl Theory for Homfly {
    fn vars(&self) -> Vars {
        VZ
    }

    fn delta(&self) -> BiLaurent {
        delta_p()
    }

    fn curl(&self, _sign: i32) -> BiLaurent {
        BiLaurent::one(VZ)
    }

    fn descending(&self, d: &Diagram) -> BiLaurent {
        delta_p().pow(d.component_count() as u32)
    }

    fn relation(&self, positive: bool) -> (BiLaurent, Vec<(Smoothing, BiLaurent)>) {
        // P₊ = v²P₋ + vzP₀ and P₋ = v⁻²P₊ − v⁻¹zP₀
        let smoothing = Smoothing::oriented(positive);
        if positive {
            (BiLaurent::from_terms(VZ, [(1, 2, 0)]), vec![(smoothing, BiLaurent::from_terms(VZ, [(1, 1, 1)]))])
        } else {
            (
                BiLaurent::from_terms(VZ, [(1, -2, 0)]),
                vec![(smoothing, BiLaurent::from_terms(VZ, [(-1, -1, 1)]))],
            )
        }
    }
}

/// HOMFLY evaluator with a memo cache that may be shared between threads.
#[derive(Clone)]
pub struct SkeinEvaluator {
    memo: Memo,
    budget: u64,
    store: Option<SharedStore>,
}

impl Default for SkeinEvaluator {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

impl SkeinEvaluator {
    /// `budget` bounds the number of distinct diagrams expanded per call.
    pub fn new(budget: u64) -> Self {
        SkeinEvaluator { memo: Memo::default(), budget, store: None }
    }

    /// Looks results up in `store` before computing them.
    pub fn with_store(mut self, store: SharedStore) -> Self {
        self.store = Some(store);
        self
    }

    pub fn homfly(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        cached(&self.store, d, "homfly", false, VZ, || self.homfly_counted(d).map(|(p, _)| p))
    }

    /// Also returns the number of diagrams expanded (cache misses).
    pub fn homfly_counted(&self, d: &Diagram) -> Result<(BiLaurent, u64), EngineError> {
        let mut e = Engine::new(&Homfly, self.memo.clone(), self.budget);
        let p = e.eval(d)?;
        Ok((p, e.nodes()))
    }

    /// `P` of every sublink, keyed by mask; the empty sublink maps to 1.
    pub fn all_sublinks(
        &self,
        d: &Diagram,
        bound: usize,
    ) -> Result<BTreeMap<SublinkMask, BiLaurent>, EngineError> {
        let mu = d.component_count();
        if mu > bound {
            return Err(EngineError::TooManyComponents { components: mu, bound });
        }
        SublinkMask::all(mu)
            .map(|m| Ok((m, self.homfly(&d.sublink(m)?)?)))
            .collect()
    }

    pub fn cache_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}

/// The skein polynomial of `d` with the default budget.
pub fn homfly(d: &Diagram) -> Result<BiLaurent, EngineError> {
    SkeinEvaluator::default().homfly(d)
}

/// `P` of every sublink of `d` (at most [`DEFAULT_SUBLINK_BOUND`]
/// components).
pub fn homfly_all_sublinks(d: &Diagram) -> Result<BTreeMap<SublinkMask, BiLaurent>, EngineError> {
    SkeinEvaluator::default().all_sublinks(d, DEFAULT_SUBLINK_BOUND)
}
