//! Sparse Laurent polynomials in two named variables with big-integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Ordered pair of variable names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vars(pub &'static str, pub &'static str);

/// Variables of the skein polynomial and the Rudolph polynomial.
pub const VZ: Vars = Vars("v", "z");
/// Variables of the framed Kauffman and Dubrovnik polynomials.
pub const AX: Vars = Vars("a", "x");

impl Vars {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if self.0 == name {
            Some(0)
        } else if self.1 == name {
            Some(1)
        } else {
            None
        }
    }

    pub fn name(&self, i: usize) -> &'static str {
        if i == 0 {
            self.0
        } else {
            self.1
        }
    }

    /// Looks up a pair from a fixed set of known names.
    pub fn known(first: &str, second: &str) -> Option<Vars> {
        const NAMES: [&str; 7] = ["v", "z", "a", "x", "s", "t", "q"];
        let a = NAMES.iter().find(|n| **n == first)?;
        let b = NAMES.iter().find(|n| **n == second)?;
        Some(Vars(a, b))
    }
}

/// Degree of a polynomial in one variable; the zero polynomial has degree
/// `NegInfinity`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(i32),
}

impl Degree {
    pub fn finite(self) -> Option<i32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An exact Laurent polynomial in two variables.
///
/// Terms are kept in a `BTreeMap` keyed by exponent pairs, so iteration and
/// rendering are lexicographic in `(e1, e2)`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiLaurent {
    vars: Vars,
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl BiLaurent {
    pub fn zero(vars: Vars) -> Self {
        BiLaurent { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: Vars, c: i64) -> Self {
        Self::monomial(vars, BigInt::from(c), 0, 0)
    }

    pub fn monomial(vars: Vars, c: BigInt, e1: i32, e2: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        BiLaurent { vars, terms }
    }

    /// Builds a polynomial from `(coefficient, e1, e2)` triples; repeated
    /// exponents are summed.
    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i32, i32)>,
    {
        let mut p = Self::zero(vars);
        for (c, e1, e2) in terms {
            p.add_term((e1, e2), BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e1: i32, e2: i32) -> BigInt {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: (i32, i32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch {
                left: format!("({},{})", self.vars.0, self.vars.1),
                right: format!("({},{})", other.vars.0, other.vars.1),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term((e.0 + f.0, e.1 + f.1), c * d);
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `c * var1^e1 * var2^e2`.
    pub fn scale(&self, c: i64, e1: i32, e2: i32) -> Self {
        if c == 0 {
            return Self::zero(self.vars);
        }
        let c = BigInt::from(c);
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| ((e.0 + e1, e.1 + e2), k * &c))
            .collect();
        BiLaurent { vars: self.vars, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Reduces every coefficient modulo 2.
    pub fn mod2(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.is_odd())
            .map(|(e, _)| (*e, BigInt::one()))
            .collect();
        BiLaurent { vars: self.vars, terms }
    }

    fn var_index(&self, var: &str) -> Result<usize, PolyError> {
        self.vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))
    }

    pub fn max_deg(&self, var: &str) -> Result<Degree, PolyError> {
        let i = self.var_index(var)?;
        Ok(self
            .terms
            .keys()
            .map(|e| if i == 0 { e.0 } else { e.1 })
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite))
    }

    pub fn min_deg(&self, var: &str) -> Result<Degree, PolyError> {
        let i = self.var_index(var)?;
        Ok(self
            .terms
            .keys()
            .map(|e| if i == 0 { e.0 } else { e.1 })
            .min()
            .map_or(Degree::NegInfinity, Degree::Finite))
    }

    /// Coefficient of `var^exp`, as a polynomial in the other variable
    /// (stored with exponent 0 in `var`).
    pub fn coefficient_of(&self, var: &str, exp: i32) -> Result<Self, PolyError> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if (i == 0 && e.0 == exp) || (i == 1 && e.1 == exp) {
                let key = if i == 0 { (0, e.1) } else { (e.0, 0) };
                out.add_term(key, c.clone());
            }
        }
        Ok(out)
    }

    /// Substitutes `±u1^p * u2^q` monomials for both variables. The images
    /// must share variable names; the result lives in those variables.
    pub fn subst_monomial(&self, first: &BiLaurent, second: &BiLaurent) -> Result<Self, PolyError> {
        first.check_vars(second)?;
        let img = |p: &BiLaurent, which: usize| -> Result<(bool, (i32, i32)), PolyError> {
            if p.terms.len() != 1 {
                return Err(PolyError::NonMonomialImage(self.vars.name(which).to_string()));
            }
            let (e, c) = p.terms.iter().next().unwrap();
            if c.abs() != BigInt::one() {
                return Err(PolyError::NonMonomialImage(self.vars.name(which).to_string()));
            }
            Ok((c.is_negative(), *e))
        };
        let (neg1, m1) = img(first, 0)?;
        let (neg2, m2) = img(second, 1)?;
        let mut out = Self::zero(first.vars);
        for ((e1, e2), c) in &self.terms {
            let mut c = c.clone();
            if (neg1 && e1 % 2 != 0) ^ (neg2 && e2 % 2 != 0) {
                c = -c;
            }
            out.add_term((m1.0 * e1 + m2.0 * e2, m1.1 * e1 + m2.1 * e2), c);
        }
        Ok(out)
    }

    /// Evaluates at rational functions of one variable.
    pub fn subst_rational(
        &self,
        first: &crate::rational::UniLaurentRational,
        second: &crate::rational::UniLaurentRational,
    ) -> Result<crate::rational::UniLaurentRational, PolyError> {
        crate::rational::evaluate(self, first, second)
    }

    /// Renames the variables without touching exponents.
    pub fn with_vars(&self, vars: Vars) -> Self {
        BiLaurent { vars, terms: self.terms.clone() }
    }

    /// Parses the canonical rendering produced by `Display`.
    pub fn parse(text: &str, vars: Vars) -> Result<Self, PolyError> {
        parse_bilaurent(text, vars)
    }
}

// Operator impls panic on variable mismatch; use `try_add`/`try_mul` when the
// operands come from untrusted places.
impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        self.try_add(rhs).expect("variable mismatch in add")
    }
}

impl Add for BiLaurent {
    type Output = BiLaurent;
    fn add(mut self, rhs: BiLaurent) -> BiLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiLaurent> for BiLaurent {
    fn add_assign(&mut self, rhs: &BiLaurent) {
        self.check_vars(rhs).expect("variable mismatch in add");
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: BiLaurent) -> BiLaurent {
        &self - &rhs
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        self.try_mul(rhs).expect("variable mismatch in mul")
    }
}

impl Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: BiLaurent) -> BiLaurent {
        &self * &rhs
    }
}

impl Mul<&BiLaurent> for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        &self * rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, name: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((e1, e2), c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if !abs.is_one() || (*e1 == 0 && *e2 == 0) {
                write!(f, "{abs}")?;
                first = false;
            }
            write_monomial(f, self.vars.0, *e1, &mut first)?;
            write_monomial(f, self.vars.1, *e2, &mut first)?;
        }
        Ok(())
    }
}

fn parse_bilaurent(text: &str, vars: Vars) -> Result<BiLaurent, PolyError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| PolyError::Parse(format!("{msg} in {text:?}"));
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut out = BiLaurent::zero(vars);
    if s == "0" {
        return Ok(out);
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
        } else if pos != 0 {
            return Err(err("expected sign"));
        }
        // A term ends at the next '+'/'-' that is not an exponent sign.
        let start = pos;
        while pos < bytes.len() {
            let b = bytes[pos];
            if (b == b'+' || b == b'-') && pos > start && bytes[pos - 1] != b'^' {
                break;
            }
            pos += 1;
        }
        let term = &s[start..pos];
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coeff = BigInt::one();
        let mut e = [0i32; 2];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                let c: BigInt = factor.parse().map_err(|_| err("bad coefficient"))?;
                coeff *= c;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, x)) => (n, x.parse::<i32>().map_err(|_| err("bad exponent"))?),
                None => (factor, 1),
            };
            let i = vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            e[i] += exp;
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term((e[0], e[1]), coeff);
    }
    Ok(out)
}

/// `δ_P = (v⁻¹ − v)/z`, the skein polynomial of the unknot.
pub fn delta_p() -> BiLaurent {
    BiLaurent::from_terms(VZ, [(1, -1, -1), (-1, 1, -1)])
}

/// `δ_L = (a⁻¹ + a)/x − 1`, the framed Kauffman polynomial of the 0-framed
/// unknot.
pub fn delta_l() -> BiLaurent {
    BiLaurent::from_terms(AX, [(1, -1, -1), (1, 1, -1), (-1, 0, 0)])
}

/// `δ_F`, equal to `δ_L` since a crossingless circle has zero writhe.
pub fn delta_f() -> BiLaurent {
    delta_l()
}

/// `δ_D = (a − a⁻¹)/x + 1`, the Dubrovnik polynomial of the 0-framed unknot.
pub fn delta_d() -> BiLaurent {
    BiLaurent::from_terms(AX, [(-1, -1, -1), (1, 1, -1), (1, 0, 0)])
}

/// The three unknot constants `(δ_P, δ_L, δ_F)`.
pub fn constants() -> (BiLaurent, BiLaurent, BiLaurent) {
    (delta_p(), delta_l(), delta_f())
}
