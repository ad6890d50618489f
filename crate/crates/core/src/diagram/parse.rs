use std::collections::HashMap;

use super::{Diagram, RawCrossing};
use crate::error::DiagramError;

/// A parsed PD crossing with an optional explicit sign.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PdCrossing {
    pub arcs: [u32; 4],
    pub sign: Option<i32>,
}

pub(super) fn parse_pd_text(text: &str) -> Result<Diagram, DiagramError> {
    let mut quads = Vec::new();
    let mut signs = Vec::new();
    let mut loops = 0;
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        let line = line
            .strip_prefix("PD[")
            .map_or(line, |l| l.strip_suffix(']').unwrap_or(l));
        if line.is_empty() {
            continue;
        }
        if line == "O" || line == "o" {
            loops += 1;
            continue;
        }
        let err = |msg: String| DiagramError::Parse { line: lineno + 1, msg };
        let mut rest = line;
        let mut found = false;
        while let Some(start) = rest.find("X[") {
            if !rest[..start].trim_matches(|c: char| c == ',' || c.is_whitespace()).is_empty() {
                return Err(err(format!("unexpected text {:?}", &rest[..start])));
            }
            let body_start = start + 2;
            let end = rest[body_start..]
                .find(']')
                .ok_or_else(|| err("unterminated X[".into()))?
                + body_start;
            let nums: Result<Vec<u32>, _> =
                rest[body_start..end].split(',').map(|t| t.trim().parse::<u32>()).collect();
            let nums = nums.map_err(|e| err(format!("bad arc label: {e}")))?;
            if nums.len() != 4 {
                return Err(err(format!("expected 4 labels, got {}", nums.len())));
            }
            quads.push([nums[0], nums[1], nums[2], nums[3]]);
            rest = rest[end + 1..].trim_start();
            let sign = match rest.chars().next() {
                Some('+') => Some(1),
                Some('-') => Some(-1),
                _ => None,
            };
            if sign.is_some() {
                rest = &rest[1..];
            }
            signs.push(sign);
            found = true;
        }
        if !found || !rest.trim_matches(|c: char| c == ',' || c.is_whitespace()).is_empty() {
            return Err(err(format!("cannot parse {line:?}")));
        }
    }
    from_pd(&quads, Some(&signs), loops)
}

/// Orients the PD quadruples. Under-strands are oriented by the format;
/// over-strand directions come from explicit signs, then propagate along
/// arcs. A component that never passes under is oriented by label
/// succession (`d = b + 1`, or the wrap-around `b > d + 1`).
pub(super) fn from_pd(
    quads: &[[u32; 4]],
    signs: Option<&[Option<i32>]>,
    loops: usize,
) -> Result<Diagram, DiagramError> {
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (ci, q) in quads.iter().enumerate() {
        for (s, &a) in q.iter().enumerate() {
            occ.entry(a).or_default().push((ci, s));
        }
    }
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    for l in &labels {
        if occ[l].len() != 2 {
            return Err(DiagramError::ArcMultiplicity { arc: *l, count: occ[l].len() });
        }
    }
    // over_fwd[ci]: Some(true) when the over-strand runs slot 1 -> slot 3
    let mut over_fwd: Vec<Option<bool>> = vec![None; quads.len()];
    if let Some(signs) = signs {
        for (ci, s) in signs.iter().enumerate() {
            if let Some(s) = s {
                over_fwd[ci] = Some(*s > 0);
            }
        }
    }
    let incoming = |over_fwd: &[Option<bool>], (ci, s): (usize, usize)| -> Option<bool> {
        match s {
            0 => Some(true),
            2 => Some(false),
            1 => over_fwd[ci],
            _ => over_fwd[ci].map(|f| !f),
        }
    };
    loop {
        // propagate along arcs until nothing changes
        let mut changed = true;
        while changed {
            changed = false;
            for l in &labels {
                let (p, q) = (occ[l][0], occ[l][1]);
                match (incoming(&over_fwd, p), incoming(&over_fwd, q)) {
                    (Some(a), Some(b)) => {
                        if a == b {
                            return Err(DiagramError::Orientation(*l));
                        }
                    }
                    (Some(a), None) => {
                        // q is an over slot
                        over_fwd[q.0] = Some((q.1 == 1) == !a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        over_fwd[p.0] = Some((p.1 == 1) == !b);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
        }
        let Some(ci) = over_fwd.iter().position(|f| f.is_none()) else { break };
        let (b, d) = (quads[ci][1], quads[ci][3]);
        if b == d {
            return Err(DiagramError::AmbiguousSign(ci));
        }
        over_fwd[ci] = Some(d == b + 1 || b > d + 1);
    }
    let raw: Vec<RawCrossing> = quads
        .iter()
        .zip(&over_fwd)
        .map(|(q, f)| RawCrossing { arcs: *q, under_fwd: true, over_fwd: f.unwrap() })
        .collect();
    Ok(Diagram::from_raw(&raw, loops, false)?.0)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn trefoil_parses() {
        let t = trefoil();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert!(t.crossings().iter().all(|c| c.positive));
    }

    #[test]
    fn empty_text_is_empty_diagram() {
        let d = Diagram::parse_pd("").unwrap();
        assert!(d.is_empty());
        assert_eq!(d.component_count(), 0);
        let u = Diagram::parse_pd("O\n# unknot\n").unwrap();
        assert_eq!(u.component_count(), 1);
    }

    #[test]
    fn triple_label_rejected() {
        let r = Diagram::parse_pd("X[1,1,2,1]\nX[2,3,3,4]");
        assert!(matches!(r, Err(DiagramError::ArcMultiplicity { .. })));
    }

    #[test]
    fn garbage_rejected() {
        assert!(matches!(Diagram::parse_pd("X[1,2,3]"), Err(DiagramError::Parse { .. })));
        assert!(matches!(Diagram::parse_pd("Y[1,2,3,4]"), Err(DiagramError::Parse { .. })));
    }

    #[test]
    fn knot_atlas_list_syntax() {
        let d = Diagram::parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d, trefoil());
    }

    #[test]
    fn explicit_sign_override() {
        // a one-crossing curl: both arcs are shared by a single crossing
        let pos = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(pos.signs(), vec![1]);
        let neg = Diagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(neg.signs(), vec![-1]);
        // a contradicting override is an orientation error
        assert!(matches!(Diagram::parse_pd("X[1,2,2,1] -"), Err(DiagramError::Orientation(_))));
    }

    #[test]
    fn non_planar_rejected() {
        // arcs pair up consistently but the rotations give a torus
        let r = Diagram::parse_pd("X[1,4,2,3]\nX[3,1,4,2]");
        assert!(r.is_err());
    }

    #[test]
    fn pd_text_round_trip() {
        for d in [trefoil(), figure8(), hopf()] {
            let again = Diagram::parse_pd(&d.to_pd_text()).unwrap();
            assert_eq!(again, d);
        }
    }
}
