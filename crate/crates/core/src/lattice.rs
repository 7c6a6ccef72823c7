//! Canonical names L_{M,b} for projective lattices, reduction of cosets
//! PSL2(Z)\PGL2+(Q), reverse names, the right action and hyperdistance.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, g_mb, mod_inverse, parse_rational, ProjectiveMatrix, Rational};

/// The projective lattice L_{M,b} with M > 0 and 0 <= b < 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeName {
    m: Rational,
    b: Rational,
}

impl LatticeName {
    pub fn new(m: Rational, b: Rational) -> Result<Self> {
        if !m.is_positive() || b.is_negative() || b >= Rational::one() {
            return Err(Error::Parse(format!(
                "lattice name needs M > 0 and 0 <= b < 1, got {},{}",
                fmt_rational(&m),
                fmt_rational(&b)
            )));
        }
        Ok(LatticeName { m, b })
    }

    /// L₁ = (1, 0).
    pub fn l1() -> Self {
        LatticeName { m: Rational::one(), b: Rational::zero() }
    }

    /// L_M = (M, 0).
    pub fn diag(m: &Rational) -> Self {
        LatticeName { m: m.clone(), b: Rational::zero() }
    }

    pub fn of_int(m: u64) -> Self {
        Self::diag(&Rational::from_integer(BigInt::from(m)))
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// g_{M,b}.
    pub fn matrix(&self) -> ProjectiveMatrix {
        g_mb(&self.m, &self.b)
    }

    /// Right action: reduce(g_{M,b} g).
    pub fn act(&self, g: &ProjectiveMatrix) -> LatticeName {
        reduce(&(&self.matrix() * g))
    }
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", fmt_rational(&self.m), fmt_rational(&self.b))
    }
}

/// Parses `M,b` or a bare `M`.
impl FromStr for LatticeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((m, b)) => LatticeName::new(parse_rational(m)?, parse_rational(b)?),
            None => LatticeName::new(parse_rational(s)?, Rational::zero()),
        }
    }
}

impl Serialize for LatticeName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LatticeName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Unique (M, b) with PSL2(Z) g = PSL2(Z) g_{M,b}.
pub fn reduce(g: &ProjectiveMatrix) -> LatticeName {
    let r = g.rep();
    let (top, d) = if r.c.is_zero() {
        ((r.a.clone(), r.b.clone()), r.d.clone())
    } else {
        // h = [[x, y], [-c/g0, a/g0]] with x a/g0 + y c/g0 = 1 kills the lower-left entry.
        let e = r.a.extended_gcd(&r.c);
        let g0 = e.gcd;
        let (x, y) = (e.x, e.y);
        let (s, t) = (-(&r.c / &g0), &r.a / &g0);
        ((g0, &x * &r.b + &y * &r.d), s * &r.b + t * &r.d)
    };
    let (a, b) = top;
    debug_assert!(a.is_positive() && d.is_positive());
    let m = Rational::new(a, d.clone());
    let b = Rational::new(b.mod_floor(&d), d);
    LatticeName { m, b }
}

/// δ(L, L') = pdet(g_{L'} g_L^{-1}).
pub fn hyperdistance(l: &LatticeName, l2: &LatticeName) -> BigInt {
    (&l2.matrix() * &l.matrix().inv()).pdet()
}

/// Reverse name L̄_{b,M}: the coset of [[1,0],[b,M]].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReverseName {
    pub b: Rational,
    pub m: Rational,
}

impl ReverseName {
    pub fn matrix(&self) -> ProjectiveMatrix {
        ProjectiveMatrix::from_rationals(&[Rational::one(), Rational::zero(), self.b.clone(), self.m.clone()])
            .expect("M > 0")
    }
}

impl fmt::Display for ReverseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{},{}", fmt_rational(&self.b), fmt_rational(&self.m))
    }
}

/// L_{M,0} ↦ L̄_{0,1/M}; L_{M,f/g} ↦ L̄_{f'/g, 1/(g²M)} with f f' ≡ 1 mod g.
pub fn reverse_name(l: &LatticeName) -> ReverseName {
    if l.b.is_zero() {
        return ReverseName { b: Rational::zero(), m: l.m.recip() };
    }
    let (f, g) = (l.b.numer(), l.b.denom());
    let fp = mod_inverse(f, g).expect("f/g in lowest terms");
    ReverseName { b: Rational::new(fp, g.clone()), m: (Rational::from_integer(g * g) * &l.m).recip() }
}

/// Inverse of [`reverse_name`].
pub fn name_of(r: &ReverseName) -> LatticeName {
    if r.b.is_zero() {
        return LatticeName { m: r.m.recip(), b: Rational::zero() };
    }
    let (fp, g) = (r.b.numer(), r.b.denom());
    let f = mod_inverse(fp, g).expect("f'/g in lowest terms");
    LatticeName { m: (Rational::from_integer(g * g) * &r.m).recip(), b: Rational::new(f, g.clone()) }
}
