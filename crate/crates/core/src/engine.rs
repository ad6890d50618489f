//! Skein-tree evaluation shared by the HOMFLY, Kauffman and Dubrovnik
//! polynomials.
//!
//! Every crossing relation used here expresses the value of a diagram in
//! terms of the diagram with one crossing switched plus smoothings at that
//! crossing. Repeatedly switching the first crossing met from below, relative
//! to fixed base points, ends at a descending diagram, whose value is known
//! in closed form. Smoothings have fewer crossings and recurse.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::diagram::{Diagram, Smoothing};
use crate::error::EngineError;
use crate::poly::{BiLaurent, Vars};

/// Default node budget: distinct non-trivial diagrams evaluated per call.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// The crossing relation of one polynomial.
pub(crate) trait Theory: Send + Sync {
    fn vars(&self) -> Vars;
    /// Value of a crossingless circle.
    fn delta(&self) -> BiLaurent;
    /// Factor picked up when removing a curl of the given sign.
    fn curl(&self, sign: i32) -> BiLaurent;
    /// Value of a descending diagram, which is the unlink up to curls.
    fn descending(&self, d: &Diagram) -> BiLaurent;
    /// Writing the value at a bad crossing `ci` as
    /// `switch_coeff * value(switched) + Σ c_k * value(smoothing_k)`.
    fn relation(&self, positive: bool) -> (BiLaurent, Vec<(Smoothing, BiLaurent)>);
}

pub(crate) type Memo = Arc<Mutex<HashMap<Vec<u8>, BiLaurent>>>;

pub(crate) struct Engine<'t, T: Theory> {
    theory: &'t T,
    memo: Memo,
    nodes: u64,
    budget: u64,
}

/// `first_bad` for a fixed choice of base points: component order and a start
/// arc on each component.
struct BasePoints {
    /// rank[c]: position of component c in the stacking order (0 = top)
    rank: Vec<usize>,
    /// traversal position of every arc along its own component
    pos: Vec<u32>,
}

impl BasePoints {
    fn choose(d: &Diagram) -> BasePoints {
        let ranges = d.component_arcs();
        let cc = d.crossing_components();
        let mu = ranges.len();
        let mut pos = vec![0u32; d.arc_count()];
        for (k, r) in ranges.iter().enumerate() {
            let len = r.end - r.start;
            // start arc minimizing self-crossings met first from below
            let mut best = (u32::MAX, r.start);
            for s in r.clone() {
                let rel = |a: u32| (a + len - s) % len;
                let bad = d
                    .crossings()
                    .iter()
                    .zip(&cc)
                    .filter(|(_, (u, o))| *u == k && *o == k)
                    .filter(|(c, _)| rel(c.arcs[0]) < rel(c.arcs[c.over_in()]))
                    .count() as u32;
                if bad < best.0 {
                    best = (bad, s);
                }
            }
            for a in r.clone() {
                pos[a as usize] = (a + len - best.1) % len;
            }
        }
        // stacking order: greedily put on top the component that is over
        // most often against the remaining ones
        let mut rank = vec![usize::MAX; mu];
        let mut score = vec![vec![0i64; mu]; mu];
        for (u, o) in &cc {
            if u != o {
                score[*o][*u] += 1;
            }
        }
        for r in 0..mu {
            let pick = (0..mu)
                .filter(|&c| rank[c] == usize::MAX)
                .max_by_key(|&c| {
                    let s: i64 = (0..mu)
                        .filter(|&x| rank[x] == usize::MAX && x != c)
                        .map(|x| score[c][x] - score[x][c])
                        .sum();
                    (s, std::cmp::Reverse(c))
                })
                .unwrap();
            rank[pick] = r;
        }
        BasePoints { rank, pos }
    }

    fn first_bad(&self, d: &Diagram, cc: &[(usize, usize)]) -> Option<usize> {
        let mut best: Option<(usize, u32, usize)> = None;
        for (i, (c, (u, o))) in d.crossings().iter().zip(cc).enumerate() {
            let under_at = self.pos[c.arcs[0] as usize];
            let over_at = self.pos[c.arcs[c.over_in()] as usize];
            let (bad, key) = if u == o {
                (under_at < over_at, (self.rank[*u], under_at))
            } else if self.rank[*u] < self.rank[*o] {
                (true, (self.rank[*u], under_at))
            } else {
                (false, (0, 0))
            };
            if bad && best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                best = Some((key.0, key.1, i));
            }
        }
        best.map(|b| b.2)
    }
}

impl<'t, T: Theory> Engine<'t, T> {
    pub fn new(theory: &'t T, memo: Memo, budget: u64) -> Self {
        Engine { theory, memo, nodes: 0, budget }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn eval(&mut self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        let (factor, d) = self.simplify(d);
        let mut out = factor * self.theory.delta().pow(d.loops() as u32);
        let pieces = d.split_pieces();
        for p in &pieces {
            out = out * self.eval_piece(p)?;
        }
        Ok(out)
    }

    /// Removes curls and Reidemeister II bigons, returning the accumulated
    /// factor.
    fn simplify(&self, d: &Diagram) -> (BiLaurent, Diagram) {
        let mut factor = BiLaurent::one(self.theory.vars());
        let mut d = d.clone();
        loop {
            if let Some((ci, sign)) = d.find_curl() {
                factor = factor * self.theory.curl(sign);
                d = d.remove_crossings(&[ci]);
            } else if let Some((c1, c2)) = d.find_bigon() {
                d = d.remove_crossings(&[c1, c2]);
            } else {
                return (factor, d);
            }
        }
    }

    fn eval_piece(&mut self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        let key = d.canonical_code();
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(EngineError::Budget { nodes: self.nodes, budget: self.budget });
        }
        let base = BasePoints::choose(d);
        let mut cur = d.clone();
        let mut mult = BiLaurent::one(self.theory.vars());
        let mut total = BiLaurent::zero(self.theory.vars());
        while let Some(ci) = base.first_bad(&cur, &cur.crossing_components()) {
            let (sw, smooth) = self.theory.relation(cur.crossings()[ci].positive);
            for (how, coeff) in smooth {
                let v = self.eval(&cur.smooth_crossing(ci, how))?;
                total += &(&mult * &(coeff * v));
            }
            mult = mult * sw;
            cur = cur.switch_crossing(ci);
        }
        total += &(mult * self.theory.descending(&cur));
        self.memo.lock().unwrap().insert(key, total.clone());
        Ok(total)
    }
}
