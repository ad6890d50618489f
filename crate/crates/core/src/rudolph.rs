//! The bracket `[K,f]` (skein polynomial of the annulus double), Yamada's
//! sublink transform, and the Rudolph polynomial built from them.
//!
//! Framing convention: adding a positive full twist to one band multiplies
//! the framed Rudolph polynomial by `v⁻²`, so `{K,f} = v^{-2Σf}{K}`. The
//! unit is measured on a one-curl unknot by [`framing_unit_exponent`].

use std::collections::BTreeMap;

use crate::diagram::{Diagram, Framing, SublinkMask};
use crate::error::EngineError;
use crate::poly::{delta_p, BiLaurent, VZ};
use crate::satellite::{component_pairs, double, DoubledDiagram};
use crate::skein::{SkeinEvaluator, DEFAULT_SUBLINK_BOUND};

/// Exponent `e` with `{K, f + 1_C} = v^e {K, f}`.
pub const FRAMING_UNIT: i32 = -2;

/// Values of one invariant on every sublink of a `μ`-component link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublinkAssignment {
    components: usize,
    values: BTreeMap<SublinkMask, BiLaurent>,
}

impl SublinkAssignment {
    pub fn new(
        components: usize,
        values: BTreeMap<SublinkMask, BiLaurent>,
    ) -> Result<Self, EngineError> {
        if let Some(m) = SublinkMask::all(components).find(|m| !values.contains_key(m)) {
            return Err(EngineError::IncompleteAssignment(m.0));
        }
        Ok(SublinkAssignment { components, values })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn get(&self, m: SublinkMask) -> Option<&BiLaurent> {
        self.values.get(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SublinkMask, &BiLaurent)> {
        self.values.iter()
    }
}

/// `(R ⊕ λ) = Σ_{K'} λ^{|K|-|K'|} R(K')` over all sublinks, the empty one
/// included.
pub fn yamada_transform(r: &SublinkAssignment, lambda: &BiLaurent) -> BiLaurent {
    let mut out = BiLaurent::zero(lambda.vars());
    for (m, v) in &r.values {
        out += &(lambda.pow((r.components - m.count()) as u32) * v.clone());
    }
    out
}

fn v_pow(e: i64) -> BiLaurent {
    BiLaurent::from_terms(VZ, [(1, e as i32, 0)])
}

fn doubled_mask(pairs: &[Vec<usize>], m: SublinkMask) -> SublinkMask {
    let mut out = 0u64;
    for (src, comps) in pairs.iter().enumerate() {
        if m.contains(src) {
            for &c in comps {
                out |= 1 << c;
            }
        }
    }
    SublinkMask(out)
}

/// Computes brackets and Rudolph polynomials, sharing one skein cache.
#[derive(Clone)]
pub struct RudolphEvaluator {
    skein: SkeinEvaluator,
    bound: usize,
}

impl Default for RudolphEvaluator {
    fn default() -> Self {
        RudolphEvaluator { skein: SkeinEvaluator::default(), bound: DEFAULT_SUBLINK_BOUND }
    }
}

impl RudolphEvaluator {
    pub fn new(skein: SkeinEvaluator, bound: usize) -> Self {
        RudolphEvaluator { skein, bound }
    }

    pub fn skein(&self) -> &SkeinEvaluator {
        &self.skein
    }

    /// `[K,f]`, the skein polynomial of the double with framing `f`.
    pub fn bracket(&self, d: &Diagram, f: &Framing) -> Result<BiLaurent, EngineError> {
        self.skein.homfly(&double(d, f)?.diagram)
    }

    /// Brackets of all framed sublinks, each with the induced framing, read
    /// off one doubled diagram by erasing band pairs.
    pub fn sublink_brackets(
        &self,
        d: &Diagram,
        f: &Framing,
    ) -> Result<SublinkAssignment, EngineError> {
        let mu = d.component_count();
        if mu > self.bound {
            return Err(EngineError::TooManyComponents { components: mu, bound: self.bound });
        }
        let s: DoubledDiagram = double(d, f)?;
        let pairs = component_pairs(&s);
        let mut values = BTreeMap::new();
        for m in SublinkMask::all(mu) {
            let sub = s.diagram.sublink(doubled_mask(&pairs, m))?;
            values.insert(m, self.skein.homfly(&sub)?);
        }
        SublinkAssignment::new(mu, values)
    }

    /// `{K,f} = ([K,f] ⊕ −1)`.
    pub fn rudolph_framed(&self, d: &Diagram, f: &Framing) -> Result<BiLaurent, EngineError> {
        let r = self.sublink_brackets(d, f)?;
        Ok(yamada_transform(&r, &-BiLaurent::one(VZ)))
    }

    /// `{K}`: the framed polynomial at the blackboard framing with the
    /// framing unit removed.
    pub fn rudolph_invariant(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        let bb = d.blackboard_framing();
        let shift = -(FRAMING_UNIT as i64) * bb.total();
        Ok(v_pow(shift) * self.rudolph_framed(d, &bb)?)
    }

    /// Right side of the composite bracket identity
    /// `(δ_P² − 1)[L] = δ_P²[K∖A][J∖B] + [K][J] − [K∖A][J] − [K][J∖B]`,
    /// all at zero framing.
    pub fn composite_bracket_rhs(
        &self,
        k: &Diagram,
        a: usize,
        j: &Diagram,
        b: usize,
    ) -> Result<BiLaurent, EngineError> {
        let zero = |d: &Diagram| Framing::zero(d.component_count());
        let k_minus = k.sublink(SublinkMask::full(k.component_count()).without(a))?;
        let j_minus = j.sublink(SublinkMask::full(j.component_count()).without(b))?;
        let bk = self.bracket(k, &zero(k))?;
        let bj = self.bracket(j, &zero(j))?;
        let bka = self.bracket(&k_minus, &zero(&k_minus))?;
        let bjb = self.bracket(&j_minus, &zero(&j_minus))?;
        let d2 = delta_p().pow(2);
        Ok(d2 * &bka * &bjb + &bk * &bj - &bka * &bj - &bk * &bjb)
    }

    pub fn check_prop7(&self, k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<bool, EngineError> {
        let l = compose(k, a, j, b)?;
        let lhs = (delta_p().pow(2) - BiLaurent::one(VZ))
            * self.bracket(&l, &Framing::zero(l.component_count()))?;
        Ok(lhs == self.composite_bracket_rhs(k, a, j, b)?)
    }

    /// `{○}·{K#J} = {K}·{J}`.
    pub fn check_composition(&self, k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<bool, EngineError> {
        let l = compose(k, a, j, b)?;
        let lhs = self.rudolph_invariant(&Diagram::unknot())? * self.rudolph_invariant(&l)?;
        Ok(lhs == self.rudolph_invariant(k)? * self.rudolph_invariant(j)?)
    }
}

/// Connected sum of component `a` of `k` with component `b` of `j`.
pub fn compose(k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<Diagram, EngineError> {
    let site = |d: &Diagram, c: usize| -> Result<Option<u32>, EngineError> {
        let ranges = d.component_arcs();
        if c < ranges.len() {
            Ok(Some(ranges[c].start))
        } else if c < d.component_count() {
            Ok(None)
        } else {
            Err(crate::error::DiagramError::MaskOutOfRange {
                mask: 1 << c.min(63),
                components: d.component_count(),
            }
            .into())
        }
    };
    Ok(k.connected_sum(site(k, a)?, j, site(j, b)?)?)
}

/// Exponent `e` with `{○,1} = v^e {○,0}`, measured on a one-curl diagram.
pub fn framing_unit_exponent(ev: &RudolphEvaluator) -> Result<Option<i32>, EngineError> {
    let curl = Diagram::parse_pd("X[1,2,2,1]").expect("curl diagram");
    let framed = ev.rudolph_framed(&curl, &curl.blackboard_framing())?;
    let plain = ev.rudolph_framed(&Diagram::unknot(), &Framing::zero(1))?;
    Ok([-2, 2].into_iter().find(|&e| v_pow(e as i64) * plain.clone() == framed))
}

pub fn bracket(d: &Diagram, f: &Framing) -> Result<BiLaurent, EngineError> {
    RudolphEvaluator::default().bracket(d, f)
}

pub fn rudolph_framed(d: &Diagram, f: &Framing) -> Result<BiLaurent, EngineError> {
    RudolphEvaluator::default().rudolph_framed(d, f)
}

pub fn rudolph_invariant(d: &Diagram) -> Result<BiLaurent, EngineError> {
    RudolphEvaluator::default().rudolph_invariant(d)
}

pub fn composite_bracket_rhs(k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<BiLaurent, EngineError> {
    RudolphEvaluator::default().composite_bracket_rhs(k, a, j, b)
}

pub fn check_prop7(k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<bool, EngineError> {
    RudolphEvaluator::default().check_prop7(k, a, j, b)
}

pub fn check_composition(k: &Diagram, a: usize, j: &Diagram, b: usize) -> Result<bool, EngineError> {
    RudolphEvaluator::default().check_composition(k, a, j, b)
}

/// Two non-isotopic 3-component links with equal Rudolph polynomials: the
/// link `Hopf # 3_1` (trefoil tied into one Hopf component) with a further
/// Hopf link attached either to its knotted or to its unknotted component.
pub fn nonequal_links_same_rudolph_witness() -> (Diagram, Diagram) {
    let hopf = Diagram::parse_pd("X[4,1,3,2] X[2,3,1,4]").expect("Hopf link");
    let trefoil = Diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").expect("trefoil");
    let k = compose(&hopf, 0, &trefoil, 0).expect("Hopf # trefoil");
    let knotted = knotted_component(&k);
    let first = compose(&k, knotted, &hopf, 0).expect("composite").with_name("H#3_1 #knotted H");
    let second = compose(&k, 1 - knotted, &hopf, 0).expect("composite").with_name("H#3_1 #plain H");
    (first, second)
}

/// Component of a two-component link with the larger single-component
/// sublink (the knotted one).
fn knotted_component(k: &Diagram) -> usize {
    let sizes: Vec<usize> =
        (0..2).map(|c| k.sublink(SublinkMask::single(c)).map_or(0, |d| d.crossing_count())).collect();
    if sizes[0] >= sizes[1] {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn unknot_values() {
        let ev = RudolphEvaluator::default();
        let d2 = delta_p().pow(2);
        assert_eq!(ev.bracket(&Diagram::unknot(), &Framing::zero(1)).unwrap(), d2);
        assert!(ev.bracket(&Diagram::empty(), &Framing::zero(0)).unwrap().is_one());
        assert_eq!(ev.rudolph_invariant(&Diagram::unknot()).unwrap(), d2 - BiLaurent::one(VZ));
    }

    #[test]
    fn framing_unit_is_calibrated() {
        let ev = RudolphEvaluator::default();
        assert_eq!(framing_unit_exponent(&ev).unwrap(), Some(FRAMING_UNIT));
    }

    #[test]
    fn knot_rudolph_is_bracket_minus_one() {
        let ev = RudolphEvaluator::default();
        let t = trefoil();
        let f = Framing(vec![2]);
        let r = ev.rudolph_framed(&t, &f).unwrap();
        assert_eq!(r, ev.bracket(&t, &f).unwrap() - BiLaurent::one(VZ));
    }

    #[test]
    fn assignment_must_be_complete() {
        let mut m = BTreeMap::new();
        m.insert(SublinkMask::EMPTY, BiLaurent::one(VZ));
        assert!(SublinkAssignment::new(0, m.clone()).is_ok());
        assert!(matches!(SublinkAssignment::new(1, m), Err(EngineError::IncompleteAssignment(1))));
    }

    #[test]
    fn curls_do_not_change_the_invariant() {
        let ev = RudolphEvaluator::default();
        let t = trefoil();
        let curled = Diagram::parse_pd("X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[6,7,7,8]").unwrap();
        assert_eq!(ev.rudolph_invariant(&t).unwrap(), ev.rudolph_invariant(&curled).unwrap());
    }
}
