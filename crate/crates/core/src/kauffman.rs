//! Framed Kauffman polynomial `L(a, x)` of the blackboard-framed diagram,
//! its normalizations, and the Dubrovnik polynomial `D(a, x)`.

use num_bigint::BigInt;

use crate::diagram::{Diagram, Smoothing};
use crate::engine::{Engine, Memo, Theory, DEFAULT_BUDGET};
use crate::error::EngineError;
use crate::poly::{delta_d, delta_l, BiLaurent, Degree, Vars, AX};
use crate::store::{cached, SharedStore};

struct Kauffman;
struct Dubrovnik;

fn a_pow(e: i64) -> BiLaurent {
    BiLaurent::from_terms(AX, [(1, e as i32, 0)])
}

fn x() -> BiLaurent {
    BiLaurent::from_terms(AX, [(1, 0, 1)])
}

impl Theory for Kauffman {
    fn vars(&self) -> Vars {
        AX
    }

    fn delta(&self) -> BiLaurent {
        delta_l()
    }

    fn curl(&self, sign: i32) -> BiLaurent {
        a_pow(sign as i64)
    }

    fn descending(&self, d: &Diagram) -> BiLaurent {
        a_pow(d.writhe()) * delta_l().pow(d.component_count() as u32)
    }

    fn relation(&self, _positive: bool) -> (BiLaurent, Vec<(Smoothing, BiLaurent)>) {
        // L(X) + L(X') = x(L(X₀) + L(X∞))
        (-BiLaurent::one(AX), vec![(Smoothing::Ab, x()), (Smoothing::Ad, x())])
    }
}

impl Theory for Dubrovnik {
    fn vars(&self) -> Vars {
        AX
    }

    fn delta(&self) -> BiLaurent {
        delta_d()
    }

    fn curl(&self, sign: i32) -> BiLaurent {
        a_pow(sign as i64)
    }

    fn descending(&self, d: &Diagram) -> BiLaurent {
        a_pow(d.writhe()) * delta_d().pow(d.component_count() as u32)
    }

    fn relation(&self, _positive: bool) -> (BiLaurent, Vec<(Smoothing, BiLaurent)>) {
        // D(X₊) − D(X₋) = x(D(X₀) − D(X∞)). The smoothing `Ad` is the
        // oriented one when the crossing is read as positive, and `Ab` when
        // it is read as negative, so the relation has the same form for both.
        (BiLaurent::one(AX), vec![(Smoothing::Ad, x()), (Smoothing::Ab, -x())])
    }
}

/// Evaluator for `L` and `D` with shareable memo caches.
#[derive(Clone)]
pub struct KauffmanEvaluator {
    memo_l: Memo,
    memo_d: Memo,
    budget: u64,
    store: Option<SharedStore>,
}

impl Default for KauffmanEvaluator {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

impl KauffmanEvaluator {
    pub fn new(budget: u64) -> Self {
        KauffmanEvaluator { memo_l: Memo::default(), memo_d: Memo::default(), budget, store: None }
    }

    pub fn with_store(mut self, store: SharedStore) -> Self {
        self.store = Some(store);
        self
    }

    pub fn framed_kauffman(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        cached(&self.store, d, "kauffman", true, AX, || {
            Engine::new(&Kauffman, self.memo_l.clone(), self.budget).eval(d)
        })
    }

    pub fn dubrovnik(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        cached(&self.store, d, "dubrovnik", true, AX, || {
            Engine::new(&Dubrovnik, self.memo_d.clone(), self.budget).eval(d)
        })
    }

    /// `U = a^{-sw} L`: invariant of the link with framing removed
    /// component by component.
    pub fn normalize_u(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        Ok(a_pow(-d.self_writhe()) * self.framed_kauffman(d)?)
    }

    /// `F = a^{-w} L`.
    pub fn normalize_f(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        Ok(a_pow(-d.writhe()) * self.framed_kauffman(d)?)
    }

    pub fn interchange_check(&self, d: &Diagram) -> Result<bool, EngineError> {
        let l = self.framed_kauffman(d)?;
        let dd = self.dubrovnik(d)?;
        Ok(interchange(&l, d.writhe(), d.component_count()).as_ref() == Some(&dd))
    }

    /// The interchange identity read modulo 2, where all its signs vanish.
    pub fn interchange_check_mod2(&self, d: &Diagram) -> Result<bool, EngineError> {
        Ok(self.framed_kauffman(d)?.mod2() == self.dubrovnik(d)?.mod2())
    }

    /// Coefficient of the top power of `x` in `L`, a polynomial in `a`.
    pub fn x_leading(&self, d: &Diagram) -> Result<BiLaurent, EngineError> {
        x_leading_of(&self.framed_kauffman(d)?)
    }

    pub fn x_leading_mod2_nonzero(&self, d: &Diagram) -> Result<bool, EngineError> {
        Ok(!self.x_leading(d)?.mod2().is_zero())
    }
}

/// The Dubrovnik polynomial predicted from `L` through
/// `D(a, x) = (−1)^μ i^{−w} L(ia, −ix)`; `None` if the right side is not
/// real, which cannot happen for a genuine Kauffman polynomial.
pub fn interchange(l: &BiLaurent, writhe: i64, components: usize) -> Option<BiLaurent> {
    let mut out = BiLaurent::zero(AX);
    for (&(p, q), c) in l.terms() {
        let k = p as i64 + q as i64 - writhe;
        if k % 2 != 0 {
            return None;
        }
        let negate = (components % 2 == 1) ^ (q % 2 != 0) ^ (k.rem_euclid(4) == 2);
        let c: BigInt = if negate { -c.clone() } else { c.clone() };
        out += &BiLaurent::monomial(AX, c, p, q);
    }
    Some(out)
}

pub fn x_leading_of(l: &BiLaurent) -> Result<BiLaurent, EngineError> {
    match l.max_deg("x")? {
        Degree::Finite(top) => Ok(l.coefficient_of("x", top)?),
        Degree::NegInfinity => panic!("Kauffman polynomial of a diagram is never zero"),
    }
}

pub fn framed_kauffman(d: &Diagram) -> Result<BiLaurent, EngineError> {
    KauffmanEvaluator::default().framed_kauffman(d)
}

pub fn dubrovnik(d: &Diagram) -> Result<BiLaurent, EngineError> {
    KauffmanEvaluator::default().dubrovnik(d)
}

pub fn normalize_u(d: &Diagram) -> Result<BiLaurent, EngineError> {
    KauffmanEvaluator::default().normalize_u(d)
}

pub fn normalize_f(d: &Diagram) -> Result<BiLaurent, EngineError> {
    KauffmanEvaluator::default().normalize_f(d)
}

pub fn interchange_check(d: &Diagram) -> Result<bool, EngineError> {
    KauffmanEvaluator::default().interchange_check(d)
}

pub fn x_leading(d: &Diagram) -> Result<BiLaurent, EngineError> {
    KauffmanEvaluator::default().x_leading(d)
}

pub fn x_leading_mod2_nonzero(d: &Diagram) -> Result<bool, EngineError> {
    KauffmanEvaluator::default().x_leading_mod2_nonzero(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn unknot_values() {
        assert!(framed_kauffman(&Diagram::empty()).unwrap().is_one());
        assert_eq!(framed_kauffman(&Diagram::unknot()).unwrap(), delta_l());
        assert_eq!(dubrovnik(&Diagram::unknot()).unwrap(), delta_d());
        let curl = Diagram::parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(framed_kauffman(&curl).unwrap(), a_pow(1) * delta_l());
        assert_eq!(normalize_u(&curl).unwrap(), delta_l());
    }

    #[test]
    fn interchange_on_small_diagrams() {
        for d in [Diagram::empty(), Diagram::unknot(), trefoil(), figure8(), hopf(), Diagram::unlink(2)] {
            assert!(interchange_check(&d).unwrap(), "{d}");
        }
    }

    #[test]
    fn trefoil_leading_coefficient() {
        let t = trefoil();
        let l = framed_kauffman(&t).unwrap();
        assert_eq!(l.max_deg("x").unwrap(), Degree::Finite(2));
        assert!(x_leading_mod2_nonzero(&t).unwrap());
    }

    #[test]
    fn hopf_normalizations() {
        let h = hopf();
        let l = framed_kauffman(&h).unwrap();
        assert_eq!(normalize_u(&h).unwrap(), l);
        assert_eq!(normalize_f(&h).unwrap(), a_pow(-2) * l);
    }
}
