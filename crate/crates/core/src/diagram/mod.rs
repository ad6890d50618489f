//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing is a quadruple of arc labels listed in rotational order,
//! starting at the incoming under-strand. The under-strand runs from slot 0
//! to slot 2. A crossing is positive exactly when the over-strand enters at
//! slot 1 and leaves at slot 3; this matches the numbering used by the
//! corpus tables, where `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]` is the positive
//! (right-handed) trefoil.
//!
//! Internally arcs are renumbered `0..2n` in traversal order, component by
//! component, so arc `i + 1` follows arc `i` except at component ends.
//! Crossingless unknotted components are counted separately as `loops`;
//! they come after all crossing components in component order.

mod canon;
pub mod dt;
mod parse;
mod stats;
mod surgery;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

pub use parse::PdCrossing;
pub use surgery::Smoothing;

/// One crossing in normalized form: `arcs[0]` is the incoming under-arc,
/// `arcs[2]` the outgoing under-arc.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// Slot where the over-strand enters.
    pub fn over_in(&self) -> usize {
        if self.positive {
            1
        } else {
            3
        }
    }

    pub fn over_out(&self) -> usize {
        if self.positive {
            3
        } else {
            1
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }
}

/// A crossing whose slot directions are only hints (or not yet fixed).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct RawCrossing {
    pub arcs: [u32; 4],
    /// under-strand runs slot 0 -> slot 2
    pub under_fwd: bool,
    /// over-strand runs slot 1 -> slot 3
    pub over_fwd: bool,
}

impl RawCrossing {
    pub fn incoming(&self, slot: usize) -> bool {
        match slot {
            0 => self.under_fwd,
            2 => !self.under_fwd,
            1 => self.over_fwd,
            _ => !self.over_fwd,
        }
    }
}

impl From<Crossing> for RawCrossing {
    fn from(c: Crossing) -> Self {
        RawCrossing { arcs: c.arcs, under_fwd: true, over_fwd: c.positive }
    }
}

/// Per-component framing (blackboard or requested).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Framing(pub Vec<i64>);

impl Framing {
    pub fn zero(components: usize) -> Self {
        Framing(vec![0; components])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Framing induced on the sublink `mask`.
    pub fn restrict(&self, mask: SublinkMask) -> Framing {
        Framing(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask.contains(*i))
                .map(|(_, f)| *f)
                .collect(),
        )
    }
}

/// A set of component indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SublinkMask(pub u64);

impl SublinkMask {
    pub const EMPTY: SublinkMask = SublinkMask(0);

    pub fn full(components: usize) -> Self {
        if components >= 64 {
            SublinkMask(u64::MAX)
        } else {
            SublinkMask((1u64 << components) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        SublinkMask(1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn without(&self, i: usize) -> Self {
        SublinkMask(self.0 & !(1 << i))
    }

    /// All masks over `components` components, in increasing order.
    pub fn all(components: usize) -> impl Iterator<Item = SublinkMask> {
        (0..=SublinkMask::full(components).0).map(SublinkMask)
    }
}

/// An oriented link diagram.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// number of arcs in each crossing component, in traversal order
    comp_len: Vec<u32>,
    loops: usize,
    name: Option<String>,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram { crossings: Vec::new(), comp_len: Vec::new(), loops: 0, name: None }
    }

    /// The crossingless unlink with `n` components.
    pub fn unlink(n: usize) -> Self {
        Diagram { loops: n, ..Self::empty() }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn component_count(&self) -> usize {
        self.comp_len.len() + self.loops
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.loops == 0
    }

    /// Arc ranges of the crossing components.
    pub fn component_arcs(&self) -> Vec<std::ops::Range<u32>> {
        let mut out = Vec::with_capacity(self.comp_len.len());
        let mut start = 0;
        for &len in &self.comp_len {
            out.push(start..start + len);
            start += len;
        }
        out
    }

    /// Component index of every arc.
    pub fn arc_components(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (i, &len) in self.comp_len.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, len as usize));
        }
        out
    }

    /// Arc following `arc` along its component.
    pub fn next_arc(&self, arc: u32) -> u32 {
        let mut start = 0;
        for &len in &self.comp_len {
            if arc < start + len {
                return if arc + 1 == start + len { start } else { arc + 1 };
            }
            start += len;
        }
        panic!("arc {arc} out of range")
    }

    /// For every arc, `(tail, head)` as `(crossing, slot)` pairs: the arc
    /// leaves the tail crossing and enters the head crossing.
    pub fn arc_ends(&self) -> Vec<[(u32, u8); 2]> {
        let mut ends = vec![[(u32::MAX, 0u8); 2]; self.arc_count()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let which = if c.is_incoming(s) { 1 } else { 0 };
                ends[c.arcs[s] as usize][which] = (ci as u32, s as u8);
            }
        }
        ends
    }

    /// Components (as indices) of the two strands at each crossing:
    /// `(under component, over component)`.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let comp = self.arc_components();
        self.crossings
            .iter()
            .map(|c| (comp[c.arcs[0] as usize], comp[c.arcs[1] as usize]))
            .collect()
    }

    /// Builds a normalized diagram from raw crossings. With `reorient` the
    /// slot directions are only hints and each component is oriented by the
    /// direction of its smallest arc; otherwise they must be consistent.
    pub(crate) fn from_raw(
        raw: &[RawCrossing],
        loops: usize,
        reorient: bool,
    ) -> Result<(Diagram, HashMap<u32, u32>), DiagramError> {
        let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::with_capacity(raw.len() * 2);
        for (ci, c) in raw.iter().enumerate() {
            for s in 0..4 {
                occ.entry(c.arcs[s]).or_default().push((ci, s));
            }
        }
        let mut labels: Vec<u32> = occ.keys().copied().collect();
        labels.sort_unstable();
        for l in &labels {
            let n = occ[l].len();
            if n != 2 {
                return Err(DiagramError::ArcMultiplicity { arc: *l, count: n });
            }
        }
        if !reorient {
            for l in &labels {
                let o = &occ[l];
                let a = raw[o[0].0].incoming(o[0].1);
                let b = raw[o[1].0].incoming(o[1].1);
                if a == b {
                    return Err(DiagramError::Orientation(*l));
                }
            }
        }
        // incoming[ci][s]
        let mut incoming = vec![[None::<bool>; 4]; raw.len()];
        let mut relabel: HashMap<u32, u32> = HashMap::with_capacity(labels.len());
        let mut comp_len = Vec::new();
        let mut next = 0u32;
        for &start in &labels {
            if relabel.contains_key(&start) {
                continue;
            }
            let o = &occ[&start];
            let mut enter = if raw[o[0].0].incoming(o[0].1) {
                o[0]
            } else if raw[o[1].0].incoming(o[1].1) {
                o[1]
            } else {
                o[0]
            };
            let mut label = start;
            let mut len = 0;
            loop {
                if relabel.contains_key(&label) {
                    break;
                }
                relabel.insert(label, next);
                next += 1;
                len += 1;
                let (ci, s) = enter;
                let exit = (s + 2) % 4;
                incoming[ci][s] = Some(true);
                incoming[ci][exit] = Some(false);
                let out_label = raw[ci].arcs[exit];
                let (a, b) = (occ[&out_label][0], occ[&out_label][1]);
                enter = if a == (ci, exit) { b } else { a };
                label = out_label;
            }
            comp_len.push(len);
        }
        let mut crossings = Vec::with_capacity(raw.len());
        for (ci, c) in raw.iter().enumerate() {
            let inc = incoming[ci].map(|x| x.expect("slot visited"));
            if !reorient {
                for (s, &i) in inc.iter().enumerate() {
                    if i != c.incoming(s) {
                        return Err(DiagramError::Orientation(c.arcs[s]));
                    }
                }
            }
            let mut arcs = c.arcs.map(|a| relabel[&a]);
            let mut over_in_slot1 = inc[1];
            if !inc[0] {
                arcs.rotate_left(2);
                over_in_slot1 = inc[3];
            }
            crossings.push(Crossing { arcs, positive: over_in_slot1 });
        }
        let d = Diagram { crossings, comp_len, loops, name: None };
        d.check_planar()?;
        Ok((d, relabel))
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let faces = self.faces();
        for piece in self.pieces_crossings() {
            let f = piece.iter().map(|c| faces.crossing_faces[*c as usize]).fold(
                std::collections::BTreeSet::new(),
                |mut acc, fs| {
                    acc.extend(fs);
                    acc
                },
            );
            if f.len() != piece.len() + 2 {
                return Err(DiagramError::NonPlanar { faces: f.len(), crossings: piece.len() });
            }
        }
        Ok(())
    }

    /// Oriented diagram from PD quadruples with optional explicit signs.
    pub fn from_pd(
        crossings: &[[u32; 4]],
        signs: Option<&[Option<i32>]>,
        loops: usize,
    ) -> Result<Diagram, DiagramError> {
        parse::from_pd(crossings, signs, loops)
    }

    /// Parses PD text: one `X[a,b,c,d]` per crossing, optionally followed by
    /// `+` or `-`; a line `O` adds a crossingless component; `#` starts a
    /// comment.
    pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
        parse::parse_pd_text(text)
    }

    /// PD text of this diagram, one crossing per line with its sign, arcs
    /// numbered from 1.
    pub fn to_pd_text(&self) -> String {
        let mut s = String::new();
        for c in &self.crossings {
            let a = c.arcs.map(|x| x + 1);
            s.push_str(&format!(
                "X[{},{},{},{}] {}\n",
                a[0],
                a[1],
                a[2],
                a[3],
                if c.positive { '+' } else { '-' }
            ));
        }
        for _ in 0..self.loops {
            s.push_str("O\n");
        }
        s
    }

    /// PD quadruples with 1-based labels.
    pub fn pd_quads(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.arcs.map(|x| x + 1)).collect()
    }

    pub fn signs(&self) -> Vec<i32> {
        self.crossings.iter().map(|c| c.sign()).collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_text())
    }
}

pub use stats::Faces;
