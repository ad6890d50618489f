//! Realizing alternating Dowker–Thistlethwaite codes as planar diagrams.
//!
//! The code lists, for odd positions `1, 3, .., 2n-1` along the knot, the
//! even position of the same crossing. Odd positions are under-passes.
//! The handedness of each crossing is not recorded in the code; it is
//! recovered by trying assignments until the rotation system is planar.

use super::{Diagram, RawCrossing};
use crate::error::DiagramError;

const MAX_CROSSINGS: usize = 16;

/// Builds the alternating knot diagram with the given DT code. The result is
/// one of the two mirror images; the first crossing is made positive.
pub fn realize_alternating(code: &[u32]) -> Result<Diagram, DiagramError> {
    let n = code.len();
    if n == 0 {
        return Ok(Diagram::unknot());
    }
    if n > MAX_CROSSINGS {
        return Err(DiagramError::Invalid(format!("DT code longer than {MAX_CROSSINGS}")));
    }
    let total = 2 * n as u32;
    let mut seen = vec![false; total as usize + 1];
    for (i, &e) in code.iter().enumerate() {
        if e % 2 != 0 || e == 0 || e > total {
            return Err(DiagramError::Invalid(format!("bad DT entry {e}")));
        }
        let odd = 2 * i + 1;
        if seen[e as usize] || seen[odd] {
            return Err(DiagramError::Invalid(format!("repeated DT position {e}")));
        }
        seen[e as usize] = true;
        seen[odd] = true;
    }
    // arc k runs from position k to position k + 1; arc `total` closes up
    let inbound = |p: u32| if p == 1 { total } else { p - 1 };
    for bits in 0u32..(1 << (n - 1)) {
        let raw: Vec<RawCrossing> = code
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let p = 2 * i as u32 + 1;
                let right = i == 0 || bits & (1 << (i - 1)) != 0;
                let (oi, oo) = (inbound(e), e);
                let arcs = if right {
                    [inbound(p), oi, p, oo]
                } else {
                    [inbound(p), oo, p, oi]
                };
                RawCrossing { arcs, under_fwd: true, over_fwd: right }
            })
            .collect();
        match Diagram::from_raw(&raw, 0, false) {
            Ok((d, _)) => return Ok(d),
            Err(DiagramError::NonPlanar { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(DiagramError::Invalid("DT code has no planar realization".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_and_figure_eight() {
        let t = realize_alternating(&[4, 6, 2]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe().abs(), 3);
        assert!(t.is_alternating());
        let f = realize_alternating(&[4, 6, 8, 2]).unwrap();
        assert_eq!(f.writhe(), 0);
        assert_eq!(f.face_count(), 6);
    }

    #[test]
    fn bad_codes_rejected() {
        assert!(realize_alternating(&[3, 6, 2]).is_err());
        assert!(realize_alternating(&[4, 4, 2]).is_err());
    }
}
