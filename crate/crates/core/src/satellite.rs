//! Annulus doubles of framed links and Whitehead doubles of knots.
//!
//! Each arc `e` of the source diagram is replaced by two parallel arcs: a
//! left copy running along `e` and a right copy running against it, so the
//! two boundary curves of every band are antiparallel. A crossing of the
//! source becomes a cluster of four crossings. For antiparallel boundary
//! curves of a band with framing `f` the linking number is `-f`.

use std::collections::HashMap;

use crate::diagram::{Diagram, Framing, RawCrossing};
use crate::error::DiagramError;

/// Where extra twists or a clasp go on one band: a forward strand `l` and
/// the backward strand `r` beside it, or a pair of crossingless circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Band {
    Arcs { l: u32, r: u32 },
    Free,
}

/// A doubled diagram together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct DoubledDiagram {
    pub diagram: Diagram,
    /// source component of every component of `diagram`
    pub provenance: Vec<usize>,
    /// framing realized by each source component's band
    pub framing: Framing,
    bands: Vec<Band>,
}

fn raw(d: &Diagram) -> Vec<RawCrossing> {
    d.crossings().iter().map(|c| RawCrossing::from(*c)).collect()
}

fn oriented(arcs: [u32; 4], positive: bool) -> RawCrossing {
    RawCrossing { arcs, under_fwd: true, over_fwd: positive }
}

fn entering(raw: &[RawCrossing], label: u32) -> (usize, usize) {
    for (ci, c) in raw.iter().enumerate() {
        for s in 0..4 {
            if c.arcs[s] == label && c.incoming(s) {
                return (ci, s);
            }
        }
    }
    panic!("arc {label} has no head")
}

impl DoubledDiagram {
    fn assemble(diagram: Diagram, bands: Vec<Band>) -> DoubledDiagram {
        let comp = diagram.arc_components();
        let first_loop = diagram.component_count() - diagram.loops();
        let mut provenance = vec![usize::MAX; diagram.component_count()];
        let mut framing = Vec::with_capacity(bands.len());
        let mut next_loop = first_loop;
        for (i, b) in bands.iter().enumerate() {
            match *b {
                Band::Arcs { l, r } => {
                    let (cl, cr) = (comp[l as usize], comp[r as usize]);
                    provenance[cl] = i;
                    provenance[cr] = i;
                    framing.push(-diagram.linking_number(cl, cr));
                }
                Band::Free => {
                    provenance[next_loop] = i;
                    provenance[next_loop + 1] = i;
                    next_loop += 2;
                    framing.push(0);
                }
            }
        }
        DoubledDiagram { diagram, provenance, framing: Framing(framing), bands }
    }

    /// Rebuilds from raw crossings, carrying the band labels along.
    fn rebuild(&self, raw: &[RawCrossing], loops: usize, bands: Vec<Band>) -> DoubledDiagram {
        let (d, map) = Diagram::from_raw(raw, loops, false).expect("band surgery keeps the diagram valid");
        let bands = bands
            .into_iter()
            .map(|b| match b {
                Band::Arcs { l, r } => Band::Arcs { l: map[&l], r: map[&r] },
                Band::Free => Band::Free,
            })
            .collect();
        DoubledDiagram::assemble(d, bands)
    }

    /// Fresh labels above every label in use, and the band with free circles
    /// turned into labelled arcs if needed.
    fn open_band(&self, i: usize) -> (Vec<RawCrossing>, usize, u32, bool) {
        let raw = raw(&self.diagram);
        let top = self.diagram.arc_count() as u32;
        match self.bands[i] {
            Band::Arcs { .. } => (raw, self.diagram.loops(), top, false),
            Band::Free => (raw, self.diagram.loops() - 2, top, true),
        }
    }

    /// Adds one full twist to band `i`: framing `+1` when `positive`.
    fn twist(&self, i: usize, positive: bool) -> DoubledDiagram {
        let (mut raw, loops, top, free) = self.open_band(i);
        let (l, r) = match self.bands[i] {
            Band::Arcs { l, r } => (l, r),
            Band::Free => (top + 2, top + 3),
        };
        let (p1, q1) = (top, top + 1);
        let (p2, q2) = if free {
            (l, r)
        } else {
            let (cl, sl) = entering(&raw, l);
            raw[cl].arcs[sl] = top + 2;
            let (cr, sr) = entering(&raw, r);
            raw[cr].arcs[sr] = top + 3;
            (top + 2, top + 3)
        };
        let (p0, q0) = (l, r);
        if positive {
            raw.push(oriented([q1, p1, q2, p0], false));
            raw.push(oriented([p1, q1, p2, q0], false));
        } else {
            raw.push(oriented([p0, q1, p1, q2], true));
            raw.push(oriented([q0, p1, q1, p2], true));
        }
        // below the twist, p0 runs beside q2
        let mut bands = self.bands.clone();
        bands[i] = Band::Arcs { l: p0, r: q2 };
        self.rebuild(&raw, loops, bands)
    }

    /// Joins the two curves of band `i` by a clasp, making one component.
    fn clasp(&self, i: usize, positive: bool) -> Diagram {
        let (mut raw, loops, top, free) = self.open_band(i);
        let (l, r) = match self.bands[i] {
            Band::Arcs { l, r } => (l, r),
            Band::Free => (top + 2, top + 3),
        };
        let (t1, u1) = (top, top + 1);
        let (c, b) = if free {
            (l, r)
        } else {
            let (cl, sl) = entering(&raw, l);
            raw[cl].arcs[sl] = top + 2;
            let (cr, sr) = entering(&raw, r);
            raw[cr].arcs[sr] = top + 3;
            (top + 2, top + 3)
        };
        if positive {
            raw.push(oriented([t1, l, c, u1], true));
            raw.push(oriented([u1, r, b, t1], true));
        } else {
            raw.push(oriented([l, c, u1, t1], false));
            raw.push(oriented([r, b, t1, u1], false));
        }
        Diagram::from_raw(&raw, loops, false).expect("clasp keeps the diagram valid").0
    }
}

/// Replaces every arc of `d` by an antiparallel pair, realizing the
/// blackboard framing of each component.
pub fn double_blackboard(d: &Diagram) -> DoubledDiagram {
    let m = d.arc_count() as u32;
    let left = |e: u32| 2 * e;
    let right = |e: u32| 2 * e + 1;
    let mut out = Vec::with_capacity(4 * d.crossing_count());
    for (ci, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, dd] = c.arcs;
        let base = 2 * m + 4 * ci as u32;
        let (v_l, v_r, h_t, h_b) = (base, base + 1, base + 2, base + 3);
        let (lt, lb) = if c.positive { (left(b), right(b)) } else { (right(b), left(b)) };
        let (rt, rb) = if c.positive { (left(dd), right(dd)) } else { (right(dd), left(dd)) };
        out.push(oriented([left(a), lb, v_l, h_b], false));
        out.push(oriented([v_l, lt, left(cc), h_t], true));
        out.push(oriented([right(cc), rt, v_r, h_t], false));
        out.push(oriented([v_r, rb, right(a), h_b], true));
    }
    let (diagram, map) =
        Diagram::from_raw(&out, 2 * d.loops(), false).expect("double of a valid diagram");
    let bands = d
        .component_arcs()
        .into_iter()
        .map(|r| Band::Arcs { l: map[&left(r.start)], r: map[&right(r.start)] })
        .chain(std::iter::repeat_n(Band::Free, d.loops()))
        .collect();
    DoubledDiagram::assemble(diagram, bands)
}

/// Inserts twists until every band realizes `f`.
pub fn set_framing(s: &DoubledDiagram, f: &Framing) -> Result<DoubledDiagram, DiagramError> {
    if f.len() != s.bands.len() {
        return Err(DiagramError::Invalid(format!(
            "framing has {} entries for {} components",
            f.len(),
            s.bands.len()
        )));
    }
    let mut cur = s.clone();
    for i in 0..f.len() {
        let delta = f.0[i] - cur.framing.0[i];
        for _ in 0..delta.unsigned_abs() {
            cur = cur.twist(i, delta > 0);
        }
    }
    Ok(cur)
}

/// The `n`-twisted Whitehead double of a knot diagram with a clasp of the
/// given sign.
pub fn whitehead_double(d: &Diagram, n: i64, positive_clasp: bool) -> Result<Diagram, DiagramError> {
    if d.component_count() != 1 {
        return Err(DiagramError::Invalid(format!(
            "Whitehead double needs a knot, got {} components",
            d.component_count()
        )));
    }
    let framed = set_framing(&double_blackboard(d), &Framing(vec![n]))?;
    Ok(framed.clasp(0, positive_clasp))
}

/// The doubled diagram of `d` with framing `f`.
pub fn double(d: &Diagram, f: &Framing) -> Result<DoubledDiagram, DiagramError> {
    set_framing(&double_blackboard(d), f)
}

/// Doubled components grouped by source component.
pub fn component_pairs(s: &DoubledDiagram) -> Vec<Vec<usize>> {
    let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
    for (c, &src) in s.provenance.iter().enumerate() {
        m.entry(src).or_default().push(c);
    }
    (0..s.bands.len()).map(|i| m.remove(&i).unwrap_or_default()).collect()
}
