//! Diagram statistics: signs, faces, Seifert circles, bridges.

use super::Diagram;

/// Face structure of the rotation system.
///
/// A dart `4c + s` leaves crossing `c` through slot `s`. Following the arc to
/// its other end and turning to the next slot traces a face; `dart_face`
/// gives the face traced by each dart, which is the face at the corner
/// between slots `s - 1` and `s` of that crossing.
#[derive(Clone, Debug)]
pub struct Faces {
    pub dart_face: Vec<u32>,
    pub face_sizes: Vec<u32>,
    pub crossing_faces: Vec<[u32; 4]>,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.face_sizes.len()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = x;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

impl Diagram {
    /// The other dart carrying the same arc, for every dart.
    pub(crate) fn dart_partner(&self) -> Vec<u32> {
        let mut first = vec![u32::MAX; self.arc_count()];
        let mut partner = vec![0u32; 4 * self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let d = (4 * ci + s) as u32;
                let a = c.arcs[s] as usize;
                if first[a] == u32::MAX {
                    first[a] = d;
                } else {
                    partner[d as usize] = first[a];
                    partner[first[a] as usize] = d;
                }
            }
        }
        partner
    }

    pub fn faces(&self) -> Faces {
        let partner = self.dart_partner();
        let n = partner.len();
        let mut dart_face = vec![u32::MAX; n];
        let mut face_sizes = Vec::new();
        for start in 0..n {
            if dart_face[start] != u32::MAX {
                continue;
            }
            let f = face_sizes.len() as u32;
            let mut d = start;
            let mut size = 0;
            while dart_face[d] == u32::MAX {
                dart_face[d] = f;
                size += 1;
                let p = partner[d] as usize;
                d = p - p % 4 + (p % 4 + 1) % 4;
            }
            face_sizes.push(size);
        }
        let crossing_faces = (0..self.crossings.len())
            .map(|c| [0, 1, 2, 3].map(|s| dart_face[4 * c + s]))
            .collect();
        Faces { dart_face, face_sizes, crossing_faces }
    }

    /// Crossing indices of each connected piece of the diagram.
    pub fn pieces_crossings(&self) -> Vec<Vec<u32>> {
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        let ends = self.arc_ends();
        for e in &ends {
            uf.union(e[0].0, e[1].0);
        }
        let mut groups: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for c in 0..n as u32 {
            groups.entry(uf.find(c)).or_default().push(c);
        }
        groups.into_values().collect()
    }

    /// Number of faces of the diagram on the sphere.
    pub fn face_count(&self) -> usize {
        let pieces = self.pieces_crossings().len() + self.loops;
        if pieces == 0 {
            return 1;
        }
        self.faces().count() + 2 * self.loops - (pieces - 1)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    pub fn self_writhe(&self) -> i64 {
        self.crossing_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| u == o)
            .map(|(_, c)| c.sign() as i64)
            .sum()
    }

    /// Sum of the signs of heterogeneous crossings (twice the total linking
    /// number).
    pub fn heterogeneous_sign_sum(&self) -> i64 {
        self.crossing_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| u != o)
            .map(|(_, c)| c.sign() as i64)
            .sum()
    }

    /// Total linking number; always an integer for closed diagrams.
    pub fn total_linking(&self) -> i64 {
        let h = self.heterogeneous_sign_sum();
        debug_assert!(h % 2 == 0);
        h / 2
    }

    /// Self-writhe of every component (the blackboard framing).
    pub fn component_self_writhe(&self) -> Vec<i64> {
        let mut out = vec![0; self.component_count()];
        for ((u, o), c) in self.crossing_components().iter().zip(&self.crossings) {
            if u == o {
                out[*u] += c.sign() as i64;
            }
        }
        out
    }

    /// Linking number between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let s: i64 = self
            .crossing_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| (*u == i && *o == j) || (*u == j && *o == i))
            .map(|(_, c)| c.sign() as i64)
            .sum();
        if i == j {
            0
        } else {
            s / 2
        }
    }

    /// The blackboard framing of the diagram.
    pub fn blackboard_framing(&self) -> super::Framing {
        super::Framing(self.component_self_writhe())
    }

    pub fn seifert_circle_count(&self) -> usize {
        let mut uf = UnionFind::new(self.arc_count());
        for c in &self.crossings {
            let [a, b, cc, d] = c.arcs;
            if c.positive {
                uf.union(a, d);
                uf.union(b, cc);
            } else {
                uf.union(a, b);
                uf.union(cc, d);
            }
        }
        let roots: std::collections::HashSet<u32> =
            (0..self.arc_count() as u32).map(|a| uf.find(a)).collect();
        roots.len() + self.loops
    }

    /// Over (`true`) / under (`false`) passage sequence of each crossing
    /// component, in traversal order.
    pub fn passages(&self) -> Vec<Vec<bool>> {
        let ends = self.arc_ends();
        self.component_arcs()
            .into_iter()
            .map(|r| r.map(|a| ends[a as usize][1].1 % 2 == 1).collect())
            .collect()
    }

    /// Longest run of consecutive over-passes, counted cyclically along each
    /// component.
    pub fn bridge_length(&self) -> usize {
        let mut best = 0;
        for p in self.passages() {
            if p.iter().all(|&o| o) {
                best = best.max(p.len());
                continue;
            }
            let n = p.len();
            let mut run = 0;
            for i in 0..2 * n {
                if p[i % n] {
                    run += 1;
                    best = best.max(run.min(n));
                } else {
                    run = 0;
                }
            }
        }
        best
    }

    pub fn is_alternating(&self) -> bool {
        self.passages().iter().all(|p| {
            let n = p.len();
            n % 2 == 0 && (0..n).all(|i| p[i] != p[(i + 1) % n])
        })
    }

    /// A crossing is nugatory when one face meets it at two opposite corners.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let faces = self.faces();
        faces
            .crossing_faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f[0] == f[2] || f[1] == f[3])
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.nugatory_crossings().is_empty()
    }
}
