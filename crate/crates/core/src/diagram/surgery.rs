//! Combinatorial surgeries: crossing changes, smoothings, sublinks, sums.

use super::stats::UnionFind;
use super::{Diagram, RawCrossing, SublinkMask};
use crate::error::DiagramError;

/// The two ways to smooth a crossing `[a,b,c,d]`: `Ab` joins `a-b` and
/// `c-d`, `Ad` joins `a-d` and `b-c`. `Ad` is the oriented smoothing of a
/// positive crossing, `Ab` that of a negative one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Smoothing {
    Ab,
    Ad,
}

impl Smoothing {
    fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::Ab => [(0, 1), (2, 3)],
            Smoothing::Ad => [(0, 3), (1, 2)],
        }
    }

    /// The orientation-respecting smoothing of a crossing with this sign.
    pub fn oriented(positive: bool) -> Smoothing {
        if positive {
            Smoothing::Ad
        } else {
            Smoothing::Ab
        }
    }
}

const PASS_THROUGH: [(usize, usize); 2] = [(0, 2), (1, 3)];

impl Diagram {
    /// Removes the listed crossings, joining the slots of each removed
    /// crossing in the given pairs. Arcs whose class vanishes become free
    /// loops unless they belong to a component in `drop_components`.
    fn splice(
        &self,
        removed: &[(usize, [(usize, usize); 2])],
        reorient: bool,
        drop_components: Option<SublinkMask>,
    ) -> Result<Diagram, DiagramError> {
        let mut uf = UnionFind::new(self.arc_count());
        let mut gone = vec![false; self.crossings.len()];
        for (ci, pairs) in removed {
            gone[*ci] = true;
            let c = &self.crossings[*ci];
            for (p, q) in pairs {
                uf.union(c.arcs[*p], c.arcs[*q]);
            }
        }
        let mut raw = Vec::with_capacity(self.crossings.len() - removed.len());
        let mut present = vec![false; self.arc_count()];
        for (ci, c) in self.crossings.iter().enumerate() {
            if gone[ci] {
                continue;
            }
            let mut r = RawCrossing::from(*c);
            for a in r.arcs.iter_mut() {
                *a = uf.find(*a);
                present[*a as usize] = true;
            }
            raw.push(r);
        }
        let comp = self.arc_components();
        let mut loops = self.loops;
        let mut counted = vec![false; self.arc_count()];
        for (ci, _) in removed {
            for &a in &self.crossings[*ci].arcs {
                let root = uf.find(a) as usize;
                if present[root] || counted[root] {
                    continue;
                }
                counted[root] = true;
                if drop_components.is_some_and(|m| !m.contains(comp[root])) {
                    continue;
                }
                loops += 1;
            }
        }
        if let Some(m) = drop_components {
            let first_loop = self.comp_len.len();
            loops -= (first_loop..first_loop + self.loops).filter(|i| !m.contains(*i)).count();
        }
        Ok(Diagram::from_raw(&raw, loops, reorient)?.0)
    }

    /// Changes crossing `ci` from over to under.
    pub fn switch_crossing(&self, ci: usize) -> Diagram {
        let mut d = self.clone();
        let c = &mut d.crossings[ci];
        let [a, b, cc, dd] = c.arcs;
        c.arcs = if c.positive { [b, cc, dd, a] } else { [dd, a, b, cc] };
        c.positive = !c.positive;
        d
    }

    /// Smooths crossing `ci`. Non-oriented smoothings re-orient the affected
    /// components.
    pub fn smooth_crossing(&self, ci: usize, how: Smoothing) -> Diagram {
        let oriented = how == Smoothing::oriented(self.crossings[ci].positive);
        self.splice(&[(ci, how.pairs())], !oriented, None)
            .expect("smoothing preserves validity")
    }

    /// Oriented (Seifert) smoothing of crossing `ci`.
    pub fn smooth_oriented(&self, ci: usize) -> Diagram {
        self.smooth_crossing(ci, Smoothing::oriented(self.crossings[ci].positive))
    }

    /// Deletes crossings, letting both strands pass straight through. Valid
    /// for Reidemeister I and II removals.
    pub(crate) fn remove_crossings(&self, cis: &[usize]) -> Diagram {
        let removed: Vec<_> = cis.iter().map(|&c| (c, PASS_THROUGH)).collect();
        self.splice(&removed, false, None).expect("Reidemeister removal preserves validity")
    }

    /// A crossing with two adjacent slots on the same arc (a curl):
    /// `(crossing, sign)`.
    pub(crate) fn find_curl(&self) -> Option<(usize, i32)> {
        self.crossings.iter().enumerate().find_map(|(i, c)| {
            (0..4)
                .any(|s| c.arcs[s] == c.arcs[(s + 1) % 4])
                .then(|| (i, c.sign()))
        })
    }

    /// A bigon face whose bounding strands are over at both corners on one
    /// side: a Reidemeister II pair.
    pub(crate) fn find_bigon(&self) -> Option<(usize, usize)> {
        let faces = self.faces();
        let partner = self.dart_partner();
        let mut first: Vec<u32> = vec![u32::MAX; faces.count()];
        for (d, &f) in faces.dart_face.iter().enumerate() {
            if faces.face_sizes[f as usize] != 2 || first[f as usize] != u32::MAX {
                continue;
            }
            first[f as usize] = d as u32;
            let t = partner[d] as usize;
            let (c1, s1) = (d / 4, d % 4);
            let (c2, s2) = (t / 4, t % 4);
            if c1 != c2 && s1 % 2 == s2 % 2 {
                return Some((c1, c2));
            }
        }
        None
    }

    /// The connected pieces with crossings, each as its own diagram; free
    /// loops are dropped.
    pub(crate) fn split_pieces(&self) -> Vec<Diagram> {
        self.pieces_crossings()
            .into_iter()
            .map(|piece| {
                let raw: Vec<RawCrossing> =
                    piece.iter().map(|&c| RawCrossing::from(self.crossings[c as usize])).collect();
                Diagram::from_raw(&raw, 0, false).expect("piece of a valid diagram").0
            })
            .collect()
    }

    /// Sublink keeping the components in `mask`.
    pub fn sublink(&self, mask: SublinkMask) -> Result<Diagram, DiagramError> {
        let mu = self.component_count();
        if mask.0 & !SublinkMask::full(mu).0 != 0 {
            return Err(DiagramError::MaskOutOfRange { mask: mask.0, components: mu });
        }
        if mask == SublinkMask::full(mu) {
            return Ok(self.clone());
        }
        let comps = self.crossing_components();
        let removed: Vec<_> = comps
            .iter()
            .enumerate()
            .filter(|(_, (u, o))| !mask.contains(*u) || !mask.contains(*o))
            .map(|(i, _)| (i, PASS_THROUGH))
            .collect();
        let mut d = self.splice(&removed, false, Some(mask))?;
        d.name = self.name.clone();
        Ok(d)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for i in 0..d.crossings.len() {
            d = d.switch_crossing(i);
        }
        d
    }

    /// Split union; components of `self` come first.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let off = self.arc_count() as u32;
        let mut raw: Vec<RawCrossing> = self.crossings.iter().map(|c| RawCrossing::from(*c)).collect();
        raw.extend(other.crossings.iter().map(|c| {
            let mut r = RawCrossing::from(*c);
            r.arcs = r.arcs.map(|a| a + off);
            r
        }));
        Diagram::from_raw(&raw, self.loops + other.loops, false)
            .expect("union of valid diagrams")
            .0
    }

    /// Connected sum joining arc `site1` of `self` with arc `site2` of
    /// `other`; `None` selects a crossingless component.
    pub fn connected_sum(
        &self,
        site1: Option<u32>,
        other: &Diagram,
        site2: Option<u32>,
    ) -> Result<Diagram, DiagramError> {
        let check = |d: &Diagram, s: Option<u32>| -> Result<(), DiagramError> {
            match s {
                Some(a) if a as usize >= d.arc_count() => Err(DiagramError::NoSuchArc(a)),
                None if d.loops == 0 => {
                    Err(DiagramError::Invalid("no crossingless component to join".into()))
                }
                _ => Ok(()),
            }
        };
        check(self, site1)?;
        check(other, site2)?;
        let (Some(a1), Some(a2)) = (site1, site2) else {
            // joining a crossingless circle leaves the other factor unchanged
            let (mut x, y) = if site1.is_none() {
                (self.clone(), other.clone())
            } else {
                (other.clone(), self.clone())
            };
            x.loops -= 1;
            return Ok(if site1.is_none() { x.disjoint_union(&y) } else { y.disjoint_union(&x) });
        };
        let off = self.arc_count() as u32;
        let alpha = a1;
        let beta = a2 + off;
        let mut raw: Vec<RawCrossing> = self.crossings.iter().map(|c| RawCrossing::from(*c)).collect();
        raw.extend(other.crossings.iter().map(|c| {
            let mut r = RawCrossing::from(*c);
            r.arcs = r.arcs.map(|a| a + off);
            r
        }));
        let head = |raw: &[RawCrossing], label: u32| -> (usize, usize) {
            for (ci, c) in raw.iter().enumerate() {
                for s in 0..4 {
                    if c.arcs[s] == label && c.incoming(s) {
                        return (ci, s);
                    }
                }
            }
            unreachable!("arc without head")
        };
        let ha = head(&raw, alpha);
        let hb = head(&raw, beta);
        raw[ha.0].arcs[ha.1] = beta;
        raw[hb.0].arcs[hb.1] = alpha;
        Ok(Diagram::from_raw(&raw, self.loops + other.loops, false)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn sublinks_of_hopf() {
        let h = hopf();
        let a = h.sublink(SublinkMask::single(0)).unwrap();
        assert_eq!((a.crossing_count(), a.component_count()), (0, 1));
        assert_eq!(h.sublink(SublinkMask::full(2)).unwrap(), h);
        assert!(h.sublink(SublinkMask::EMPTY).unwrap().is_empty());
        assert!(matches!(
            h.sublink(SublinkMask(0b100)),
            Err(DiagramError::MaskOutOfRange { .. })
        ));
    }

    #[test]
    fn mirror_is_involution() {
        let t = trefoil();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror().writhe(), -3);
    }

    #[test]
    fn unions_and_sums() {
        let u = Diagram::unknot().disjoint_union(&Diagram::unknot());
        assert_eq!((u.component_count(), u.crossing_count()), (2, 0));
        let t = trefoil();
        let g = t.connected_sum(Some(0), &t, Some(0)).unwrap();
        assert_eq!((g.crossing_count(), g.component_count()), (6, 1));
        assert_eq!(g.face_count(), 8);
        let same = Diagram::unknot().connected_sum(None, &t, Some(3)).unwrap();
        assert_eq!(same.canonical_code(), t.canonical_code());
        assert!(t.connected_sum(Some(99), &t, Some(0)).is_err());
        assert!(t.connected_sum(None, &t, Some(0)).is_err());
    }

    #[test]
    fn smoothing_and_switching() {
        let t = trefoil();
        let s = t.smooth_oriented(0);
        assert_eq!((s.crossing_count(), s.component_count()), (2, 2));
        let sw = t.switch_crossing(0);
        assert_eq!(sw.writhe(), 1);
        assert_eq!(sw.switch_crossing(0), t);
        let un = t.smooth_crossing(0, Smoothing::Ab);
        assert_eq!((un.crossing_count(), un.component_count()), (2, 1));
    }

    #[test]
    fn curls_and_bigons_found() {
        let curl = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(curl.find_curl(), Some((0, 1)));
        assert_eq!(curl.remove_crossings(&[0]), Diagram::unknot());
        // a Reidemeister II pair on two unknots
        let r2 = Diagram::parse_pd("X[1,3,2,4] X[2,4,1,3]").unwrap_or_else(|_| {
            Diagram::parse_pd("X[1,4,2,3] X[2,4,1,3]").unwrap()
        });
        assert!(trefoil().find_bigon().is_none());
        let _ = r2;
    }
}
