//! Relabeling-invariant encoding of a diagram.

use super::Diagram;

fn push_varint(out: &mut Vec<u8>, mut v: u32) {
    loop {
        let b = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

struct View<'a> {
    d: &'a Diagram,
    comp: Vec<usize>,
    ranges: Vec<std::ops::Range<u32>>,
    ends: Vec<[(u32, u8); 2]>,
}

impl<'a> View<'a> {
    fn step(&self, arc: u32, forward: bool) -> u32 {
        let r = &self.ranges[self.comp[arc as usize]];
        if forward {
            if arc + 1 == r.end {
                r.start
            } else {
                arc + 1
            }
        } else if arc == r.start {
            r.end - 1
        } else {
            arc - 1
        }
    }

    /// Crossing entered by `arc` when travelling in direction `forward`.
    fn head(&self, arc: u32, forward: bool) -> (u32, u8) {
        self.ends[arc as usize][if forward { 1 } else { 0 }]
    }

    /// Encoding of the piece containing `start`, traversed from `start`.
    fn encode(&self, start: u32, forward: bool, piece: &[u32]) -> Vec<u8> {
        let n_arcs = self.d.arc_count();
        let mut label = vec![u32::MAX; n_arcs];
        let mut next = 0u32;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            if label[s as usize] != u32::MAX {
                continue;
            }
            let mut a = s;
            loop {
                label[a as usize] = next;
                next += 1;
                let (ci, slot) = self.head(a, forward);
                let c = &self.d.crossings[ci as usize];
                // the other strand's arc arriving at this crossing
                let other_in = if slot % 2 == 0 {
                    if forward { c.arcs[c.over_in()] } else { c.arcs[c.over_out()] }
                } else if forward {
                    c.arcs[0]
                } else {
                    c.arcs[2]
                };
                if label[other_in as usize] == u32::MAX {
                    queue.push_back(other_in);
                }
                a = self.step(a, forward);
                if a == s {
                    break;
                }
            }
        }
        let mut rows: Vec<[u32; 5]> = piece
            .iter()
            .map(|&ci| {
                let c = &self.d.crossings[ci as usize];
                let q = if forward {
                    c.arcs
                } else {
                    [c.arcs[2], c.arcs[3], c.arcs[0], c.arcs[1]]
                };
                let q = q.map(|a| label[a as usize]);
                [q[0], q[1], q[2], q[3], c.positive as u32]
            })
            .collect();
        rows.sort_unstable();
        let mut out = Vec::with_capacity(rows.len() * 5);
        push_varint(&mut out, rows.len() as u32);
        for r in rows {
            for x in r {
                push_varint(&mut out, x);
            }
        }
        out
    }
}

impl Diagram {
    /// Deterministic encoding, minimal over every traversal start and over
    /// reversing all orientations; invariant under arc relabeling and
    /// component reordering.
    pub fn canonical_code(&self) -> Vec<u8> {
        let view = View {
            d: self,
            comp: self.arc_components(),
            ranges: self.component_arcs(),
            ends: self.arc_ends(),
        };
        let mut codes: Vec<Vec<u8>> = Vec::new();
        for piece in self.pieces_crossings() {
            let mut arcs: Vec<u32> = piece
                .iter()
                .flat_map(|&c| self.crossings[c as usize].arcs)
                .collect();
            arcs.sort_unstable();
            arcs.dedup();
            let mut best: Option<Vec<u8>> = None;
            for &a in &arcs {
                for forward in [true, false] {
                    let code = view.encode(a, forward, &piece);
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            codes.push(best.unwrap());
        }
        codes.sort();
        let mut out = Vec::new();
        push_varint(&mut out, self.loops as u32);
        push_varint(&mut out, codes.len() as u32);
        for c in codes {
            out.extend(c);
        }
        out
    }
}
