//! Exact rational functions of one variable, used to evaluate two-variable
//! polynomials at non-monomial images such as `z = s - 1/s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::poly::BiLaurent;

/// Laurent polynomial `s^shift * (c0 + c1 s + ...)`. Normalized: either empty
/// (zero) or with nonzero first and last coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniLaurent {
    shift: i32,
    coeffs: Vec<BigInt>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        UniLaurent { shift: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_coeffs(e, vec![BigInt::from(c)])
    }

    /// `Σ c_i s^(shift+i)`.
    pub fn from_coeffs(shift: i32, coeffs: Vec<BigInt>) -> Self {
        let mut p = UniLaurent { shift, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(coefficient, exponent)` pairs.
    pub fn from_terms(terms: &[(i64, i32)]) -> Self {
        let mut out = Self::zero();
        for &(c, e) in terms {
            out = &out + &Self::monomial(c, e);
        }
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.shift += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.shift = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i32 {
        self.shift
    }

    pub fn max_exp(&self) -> i32 {
        self.shift + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let i = e - self.shift;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn shifted(&self, by: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        UniLaurent { shift: self.shift + by, coeffs: self.coeffs.clone() }
    }

    fn div_exact_scalar(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.shift, self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl Add for &UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: &UniLaurent) -> UniLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(rhs.shift);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        UniLaurent::from_coeffs(lo, coeffs)
    }
}

impl Neg for &UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        UniLaurent { shift: self.shift, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: &UniLaurent) -> UniLaurent {
        self + &(-rhs)
    }
}

impl Mul for &UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: &UniLaurent) -> UniLaurent {
        if self.is_zero() || rhs.is_zero() {
            return UniLaurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniLaurent::from_coeffs(self.shift + rhs.shift, coeffs)
    }
}

/// Pseudo-remainder of `a` by `b`, both treated as ordinary polynomials
/// (shift ignored).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let d = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[d + i] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Primitive GCD of the polynomial parts, with positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        x = x.into_iter().map(|c| -c).collect();
    }
    x
}

/// Exact division of polynomial parts; panics if not exact.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let d = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[d + i] -= &c * bc;
        }
        q[d] = c;
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = BiLaurent::from_terms(
            crate::poly::Vars("s", "t"),
            std::iter::empty::<(i64, i32, i32)>(),
        );
        let mut p = p;
        for (i, c) in self.coeffs.iter().enumerate() {
            p += &BiLaurent::monomial(p.vars(), c.clone(), self.shift + i as i32, 0);
        }
        write!(f, "{p}")
    }
}

/// A reduced quotient of one-variable Laurent polynomials.
///
/// The denominator has minimal exponent 0 and a positive leading coefficient;
/// numerator and denominator have no common factor, integer contents
/// included.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniLaurentRational {
    num: UniLaurent,
    den: UniLaurent,
}

impl UniLaurentRational {
    pub fn new(num: UniLaurent, den: UniLaurent) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let mut r = UniLaurentRational { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: UniLaurent) -> Self {
        UniLaurentRational { num: p, den: UniLaurent::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniLaurent::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniLaurent::one())
    }

    fn reduce(&mut self) {
        // move the denominator's power of s into the numerator
        let sh = self.den.shift;
        self.den = self.den.shifted(-sh);
        self.num = self.num.shifted(-sh);
        if self.num.is_zero() {
            self.den = UniLaurent::one();
            return;
        }
        let g = poly_gcd(&self.num.coeffs, &self.den.coeffs);
        if g.len() > 1 {
            self.num = UniLaurent::from_coeffs(self.num.shift, poly_div_exact(&self.num.coeffs, &g));
            self.den = UniLaurent::from_coeffs(0, poly_div_exact(&self.den.coeffs, &g));
        }
        let c = self.num.content().gcd(&self.den.content());
        if !c.is_one() {
            self.num = self.num.div_exact_scalar(&c);
            self.den = self.den.div_exact_scalar(&c);
        }
        if self.den.leading().is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
        let sh = self.den.shift;
        if sh != 0 {
            self.den = self.den.shifted(-sh);
            self.num = self.num.shifted(-sh);
        }
    }

    pub fn numerator(&self) -> &UniLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &UniLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this value equals, if the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&UniLaurent> {
        (self.den == UniLaurent::one()).then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: i32) -> Result<Self, PolyError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(UniLaurentRational { num: base.num.pow(n), den: base.den.pow(n) }.reduced())
    }

    fn reduced(mut self) -> Self {
        self.reduce();
        self
    }
}

impl Add for &UniLaurentRational {
    type Output = UniLaurentRational;
    fn add(self, rhs: &UniLaurentRational) -> UniLaurentRational {
        if self.den == rhs.den {
            return UniLaurentRational { num: &self.num + &rhs.num, den: self.den.clone() }.reduced();
        }
        UniLaurentRational {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .reduced()
    }
}

impl Neg for &UniLaurentRational {
    type Output = UniLaurentRational;
    fn neg(self) -> UniLaurentRational {
        UniLaurentRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &UniLaurentRational {
    type Output = UniLaurentRational;
    fn sub(self, rhs: &UniLaurentRational) -> UniLaurentRational {
        self + &(-rhs)
    }
}

impl Mul for &UniLaurentRational {
    type Output = UniLaurentRational;
    fn mul(self, rhs: &UniLaurentRational) -> UniLaurentRational {
        UniLaurentRational { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.reduced()
    }
}

impl fmt::Display for UniLaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniLaurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Evaluates `p` at `(first, second)`. Powers of each image are computed once;
/// terms are accumulated over the common denominator `den1^k1 * den2^k2`, then
/// reduced.
pub(crate) fn evaluate(
    p: &BiLaurent,
    first: &UniLaurentRational,
    second: &UniLaurentRational,
) -> Result<UniLaurentRational, PolyError> {
    if p.is_zero() {
        return Ok(UniLaurentRational::zero());
    }
    let mut acc = UniLaurentRational::zero();
    let mut cache: std::collections::HashMap<(usize, i32), UniLaurentRational> = Default::default();
    let mut power = |which: usize, e: i32| -> Result<UniLaurentRational, PolyError> {
        if let Some(v) = cache.get(&(which, e)) {
            return Ok(v.clone());
        }
        let base = if which == 0 { first } else { second };
        let v = base.powi(e)?;
        cache.insert((which, e), v.clone());
        Ok(v)
    };
    // group by the first exponent to share the second-variable sum
    let mut by_e1: std::collections::BTreeMap<i32, Vec<(i32, BigInt)>> = Default::default();
    for ((e1, e2), c) in p.terms() {
        by_e1.entry(*e1).or_default().push((*e2, c.clone()));
    }
    for (e1, row) in by_e1 {
        let mut inner = UniLaurentRational::zero();
        for (e2, c) in row {
            let k = UniLaurentRational::from_poly(UniLaurent::from_coeffs(0, vec![c]));
            inner = &inner + &(&k * &power(1, e2)?);
        }
        acc = &acc + &(&inner * &power(0, e1)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{delta_p, VZ};

    fn lp(t: &[(i64, i32)]) -> UniLaurent {
        UniLaurent::from_terms(t)
    }

    fn rat(t: &[(i64, i32)]) -> UniLaurentRational {
        UniLaurentRational::from_poly(lp(t))
    }

    #[test]
    fn delta_at_jones_point() {
        let v = rat(&[(1, 2)]);
        let z = rat(&[(1, 1), (-1, -1)]);
        let got = delta_p().subst_rational(&v, &z).unwrap();
        assert_eq!(got.as_polynomial(), Some(&lp(&[(-1, -1), (-1, 1)])));
    }

    #[test]
    fn constant_and_reciprocal() {
        let v = rat(&[(1, 2)]);
        let z = rat(&[(1, 1), (-1, -1)]);
        let one = BiLaurent::one(VZ).subst_rational(&v, &z).unwrap();
        assert_eq!(one, UniLaurentRational::one());
        let zinv = BiLaurent::from_terms(VZ, [(1, 0, -1)]).subst_rational(&v, &z).unwrap();
        // 1/(s - 1/s) = s / (s^2 - 1)
        assert_eq!(zinv.numerator(), &lp(&[(1, 1)]));
        assert_eq!(zinv.denominator(), &lp(&[(-1, 0), (1, 2)]));
        assert!(zinv.as_polynomial().is_none());
    }

    #[test]
    fn zero_denominator_rejected() {
        let zinv = BiLaurent::from_terms(VZ, [(1, 0, -1)]);
        let r = zinv.subst_rational(&UniLaurentRational::one(), &UniLaurentRational::zero());
        assert!(matches!(r, Err(PolyError::ZeroDenominator)));
    }

    #[test]
    fn reduction_is_canonical() {
        let a = UniLaurentRational::new(lp(&[(2, 0), (-2, 2)]), lp(&[(-4, 1), (4, 2)])).unwrap();
        // (2 - 2s^2)/(4s^2 - 4s) = -(1+s)/(2s)
        assert_eq!(a.numerator(), &lp(&[(-1, -1), (-1, 0)]));
        assert_eq!(a.denominator(), &lp(&[(2, 0)]));
        let b = &a + &(-&a);
        assert!(b.is_zero());
        assert_eq!(b.denominator(), &UniLaurent::one());
    }
}
