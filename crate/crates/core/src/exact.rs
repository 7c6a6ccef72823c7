//! Exact rationals and 2x2 integral / projective matrices.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Formats as `p` when integral, otherwise `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Row-major integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntegralMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        IntegralMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|x| x.is_zero())
    }

    /// gcd of the absolute values of the entries.
    pub fn content(&self) -> BigInt {
        self.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &IntegralMatrix) -> IntegralMatrix {
        IntegralMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn to_rationals(&self) -> [Rational; 4] {
        self.entries().map(|x| Rational::from_integer(x.clone()))
    }

    fn divided(&self, g: &BigInt) -> IntegralMatrix {
        IntegralMatrix { a: &self.a / g, b: &self.b / g, c: &self.c / g, d: &self.d / g }
    }

    fn negated(&self) -> IntegralMatrix {
        IntegralMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

impl fmt::Display for IntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Returns alpha*A where alpha is the unique positive rational making it integral of content 1.
pub fn primitive_rep(m: &[Rational; 4]) -> Result<IntegralMatrix> {
    if m.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroMatrix);
    }
    let l = m.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = m.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let raw = IntegralMatrix::new(ints[0].clone(), ints[1].clone(), ints[2].clone(), ints[3].clone());
    Ok(raw.divided(&raw.content()))
}

/// Element of PGL2+(Q), stored as its sign-normalized primitive integral representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveMatrix(IntegralMatrix);

impl ProjectiveMatrix {
    pub fn from_integral(m: IntegralMatrix) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        if !m.det().is_positive() {
            return Err(Error::NotPositiveDeterminant);
        }
        let mut p = m.divided(&m.content());
        let first = p.entries().into_iter().find(|x| !x.is_zero()).cloned().unwrap();
        if first.is_negative() {
            p = p.negated();
        }
        Ok(ProjectiveMatrix(p))
    }

    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::from_integral(IntegralMatrix::new(a, b, c, d))
    }

    pub fn from_rationals(m: &[Rational; 4]) -> Result<Self> {
        Self::from_integral(primitive_rep(m)?)
    }

    /// Infallible constructor for literals known to lie in PGL2+(Q).
    pub(crate) fn lit(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a, b, c, d).expect("literal in PGL2+(Q)")
    }

    pub fn rep(&self) -> &IntegralMatrix {
        &self.0
    }

    /// Rational projective determinant: det of the primitive representative.
    pub fn pdet(&self) -> BigInt {
        self.0.det()
    }

    pub fn inv(&self) -> ProjectiveMatrix {
        let m = &self.0;
        ProjectiveMatrix::from_integral(IntegralMatrix { a: m.d.clone(), b: -&m.b, c: -&m.c, d: m.a.clone() })
            .expect("adjugate of an invertible matrix")
    }

    pub fn is_identity(&self) -> bool {
        self.0.b.is_zero() && self.0.c.is_zero() && self.0.a == self.0.d
    }

    pub fn pow(&self, k: i64) -> ProjectiveMatrix {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = identity();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Conjugate `x * self * x^-1`.
    pub fn conj_by(&self, x: &ProjectiveMatrix) -> ProjectiveMatrix {
        &(x * self) * &x.inv()
    }
}

impl Mul for &ProjectiveMatrix {
    type Output = ProjectiveMatrix;
    fn mul(self, o: &ProjectiveMatrix) -> ProjectiveMatrix {
        ProjectiveMatrix::from_integral(self.0.mul(&o.0)).expect("PGL2+(Q) is closed")
    }
}

impl Mul for ProjectiveMatrix {
    type Output = ProjectiveMatrix;
    fn mul(self, o: ProjectiveMatrix) -> ProjectiveMatrix {
        &self * &o
    }
}

impl fmt::Display for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parses `[[a,b],[c,d]]` with rational entries.
impl FromStr for ProjectiveMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed matrix `{s}`"));
        let inner = t.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")).ok_or_else(bad)?;
        let (r0, r1) = inner.split_once("],[").ok_or_else(bad)?;
        let mut vals = Vec::with_capacity(4);
        for row in [r0, r1] {
            let (x, y) = row.split_once(',').ok_or_else(bad)?;
            vals.push(parse_rational(x)?);
            vals.push(parse_rational(y)?);
        }
        let arr: [Rational; 4] = vals.try_into().map_err(|_| bad())?;
        Self::from_rationals(&arr)
    }
}

impl Serialize for ProjectiveMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjectiveMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn identity() -> ProjectiveMatrix {
    ProjectiveMatrix::lit(1, 0, 0, 1)
}

/// S = [[0,-1],[1,0]].
pub fn s() -> ProjectiveMatrix {
    ProjectiveMatrix::lit(0, -1, 1, 0)
}

/// T = [[1,1],[0,1]].
pub fn t() -> ProjectiveMatrix {
    ProjectiveMatrix::lit(1, 1, 0, 1)
}

/// T^A = [[1,A],[0,1]].
pub fn t_pow(a: &Rational) -> ProjectiveMatrix {
    ProjectiveMatrix::from_rationals(&[Rational::one(), a.clone(), Rational::zero(), Rational::one()])
        .expect("unipotent")
}

/// (T^n)^t = [[1,0],[n,1]].
pub fn lower_t(n: i64) -> ProjectiveMatrix {
    ProjectiveMatrix::lit(1, 0, n, 1)
}

/// g_M = [[M,0],[0,1]].
pub fn g_m(m: &Rational) -> ProjectiveMatrix {
    g_mb(m, &Rational::zero())
}

/// g_h for an integer h.
pub fn g_int(h: u64) -> ProjectiveMatrix {
    ProjectiveMatrix::new(BigInt::from(h), 0, 0, 1).expect("h > 0")
}

/// g_{M,b} = [[M,b],[0,1]].
pub fn g_mb(m: &Rational, b: &Rational) -> ProjectiveMatrix {
    ProjectiveMatrix::from_rationals(&[m.clone(), b.clone(), Rational::zero(), Rational::one()])
        .expect("M > 0")
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
