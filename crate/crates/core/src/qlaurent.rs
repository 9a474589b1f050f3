//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients, and shift/twist classes with their Frobenius traces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// An integer Laurent polynomial, stored as exponent -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `coef * q^exp`.
    pub fn monomial(coef: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coef.into());
        p
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        LaurentPoly::monomial(1, exp)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 - q`.
    pub fn one_minus_q() -> Self {
        LaurentPoly::from_terms([(0, 1), (1, -1)])
    }

    pub fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

/// Ascending exponents, e.g. `q^-2 - 2q^-1 + 1 - q`. Unit coefficients are
/// suppressed and the zero polynomial renders as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one();
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !unit {
                        write!(f, "{abs}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// JSON: array of [exponent, coefficient] pairs sorted by exponent. A
// coefficient outside the i64 range is written as a decimal string.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefRepr {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, CoefRepr)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        let mut last = None;
        for (e, c) in pairs {
            if last.is_some_and(|l| l >= e) {
                return Err(de::Error::custom("exponents must be strictly increasing"));
            }
            last = Some(e);
            let c = match c {
                CoefRepr::Int(n) => BigInt::from(n),
                CoefRepr::Text(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?,
            };
            if c.is_zero() {
                return Err(de::Error::custom("zero coefficients are not stored"));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

pub fn poly_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

pub fn poly_eval_at_one(a: &LaurentPoly) -> BigInt {
    a.eval_at_one()
}

/// A formal combination of shift/twist tokens `[n](m)` in a Grothendieck group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrothendieckClass {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl GrothendieckClass {
    pub fn zero() -> Self {
        GrothendieckClass::default()
    }

    /// The single token `[shift](twist)` with multiplicity one.
    pub fn token(shift: i64, twist: i64) -> Self {
        let mut c = GrothendieckClass::zero();
        c.add_token(shift, twist, BigInt::one());
        c
    }

    pub fn add_token(&mut self, shift: i64, twist: i64, mult: BigInt) {
        if mult.is_zero() {
            return;
        }
        let entry = self.terms.entry((shift, twist)).or_default();
        *entry += mult;
        if entry.is_zero() {
            self.terms.remove(&(shift, twist));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Disjoint union.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(s, t), m) in &other.terms {
            out.add_token(s, t, m.clone());
        }
        out
    }

    /// Tensor product: shifts and twists add.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = GrothendieckClass::zero();
        for (&(s1, t1), m1) in &self.terms {
            for (&(s2, t2), m2) in &other.terms {
                out.add_token(s1 + s2, t1 + t2, m1 * m2);
            }
        }
        out
    }

    /// Frobenius trace: `[n](m)` contributes `(-1)^n q^{-m}`.
    pub fn trace(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(shift, twist), mult) in &self.terms {
            let signed = if shift.rem_euclid(2) == 0 {
                mult.clone()
            } else {
                -mult
            };
            out.add_term(-twist, signed);
        }
        out
    }
}

pub fn class_trace(c: &GrothendieckClass) -> LaurentPoly {
    c.trace()
}
