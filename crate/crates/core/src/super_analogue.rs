//! The super analogue: scaled groups ˢΓ, Frame shapes and their eta quotients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_exact_divisor;
use crate::classify::e8_groups;
use crate::diagram::{a_gamma, n_gamma};
use crate::error::{Error, Result};
use crate::exact::ProjectiveMatrix;
use crate::groupsys::{generators, GroupDescriptor};

pub const DEFAULT_ORDER: usize = 50;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const ETA_TERMS: usize = 200;
const REDUCED_IM: f64 = 0.8;

fn e8_position(g: &GroupDescriptor) -> Result<usize> {
    e8_groups()
        .iter()
        .position(|x| x == g)
        .ok_or_else(|| Error::Unsupported(format!("{g} is not one of the nine groups")))
}

/// Scaling of the coset W_e(N): W_2e(2N) when 2 | e, else W_e(2N).
pub fn super_coset(e: u64, n: u64) -> Result<(u64, u64)> {
    if !is_exact_divisor(e, n) {
        return Err(Error::NotExactDivisor { e, n });
    }
    Ok(if e % 2 == 0 { (2 * e, 2 * n) } else { (e, 2 * n) })
}

/// ˢΓ: base G^(a)_(a,2N/a) with scaled Atkin-Lehner labels; the Fricke label m goes to 2m.
pub fn super_group(g: &GroupDescriptor) -> Result<GroupDescriptor> {
    e8_position(g)?;
    let (a, big_n) = (a_gamma(g)?, n_gamma(g)?);
    if g.h() != a || g.n() * a != big_n {
        return Err(Error::Unsupported(format!("{g} is not of the form G_(a,N/a)")));
    }
    let m = g.m();
    let mut labels = Vec::new();
    for &e in g.al_labels() {
        labels.push(if e == m && m > 1 { 2 * m } else { super_coset(e, m)?.0 });
    }
    if g.character().is_some() {
        GroupDescriptor::kernel(a, 2 * g.n(), labels)
    } else {
        GroupDescriptor::plain(a, 2 * g.n(), labels)
    }
}

/// A Frame shape ∏ A^α with A strictly increasing and α ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameShape {
    parts: Vec<(u64, i64)>,
}

impl FrameShape {
    pub fn new(mut parts: Vec<(u64, i64)>) -> Result<Self> {
        parts.retain(|&(_, e)| e != 0);
        parts.sort();
        if parts.iter().any(|&(a, _)| a == 0) || parts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse(format!("{parts:?}")));
        }
        Ok(FrameShape { parts })
    }

    pub fn parts(&self) -> &[(u64, i64)] {
        &self.parts
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|&(a, e)| a as i64 * e).sum()
    }
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let side = |neg: bool| {
            self.parts
                .iter()
                .filter(|&&(_, e)| (e < 0) == neg)
                .map(|&(a, e)| format!("{a}^{}", e.abs()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let (top, bottom) = (side(false), side(true));
        match (top.is_empty(), bottom.is_empty()) {
            (_, true) => write!(f, "{top}"),
            (true, false) => write!(f, "1 / {bottom}"),
            _ => write!(f, "{top} / {bottom}"),
        }
    }
}

impl FromStr for FrameShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut halves = s.split('/');
        let top = halves.next().ok_or_else(bad)?;
        let bottom = halves.next().unwrap_or("");
        if halves.next().is_some() {
            return Err(bad());
        }
        let mut parts = Vec::new();
        for (half, sign) in [(top, 1), (bottom, -1)] {
            for tok in half.split_whitespace() {
                if tok == "1" && sign == 1 {
                    continue;
                }
                let (a, e) = tok.split_once('^').ok_or_else(bad)?;
                let a: u64 = a.parse().map_err(|_| bad())?;
                let e: i64 = e.parse().map_err(|_| bad())?;
                parts.push((a, sign * e));
            }
        }
        FrameShape::new(parts)
    }
}

impl Serialize for FrameShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FrameShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Frame shapes in diagram order.
pub fn frame_shape_catalog() -> Vec<FrameShape> {
    let shapes = [
        "1^24",
        "2^24 / 1^24",
        "3^12 / 1^12",
        "4^8 / 1^8",
        "5^6 / 1^6",
        "2^6 6^6 / 1^6 3^6",
        "3^8",
        "4^12 / 2^12",
        "1^8 2^8",
    ];
    let out: Vec<FrameShape> = shapes.iter().map(|s| s.parse().expect("catalog shape")).collect();
    assert!(out.iter().all(|f| f.degree() == 24));
    out
}

pub fn frame_shape(g: &GroupDescriptor) -> Result<FrameShape> {
    Ok(frame_shape_catalog().swap_remove(e8_position(g)?))
}

/// (degree, largest A, number of negative exponents plus one).
pub fn frame_shape_invariants(fs: &FrameShape) -> (i64, u64, u64) {
    let max_part = fs.parts.iter().map(|&(a, _)| a).max().unwrap_or(0);
    let neg = fs.parts.iter().filter(|&&(_, e)| e < 0).count() as u64;
    (fs.degree(), max_part, neg + 1)
}

/// Σ coeffs[k] q^(valuation + k), known up to q^(valuation + coeffs.len()).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerPowerSeries {
    pub valuation: i64,
    #[serde(with = "decimal_vec")]
    pub coeffs: Vec<BigInt>,
}

/// Coefficients as decimal strings.
mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl IntegerPowerSeries {
    /// Exponent of the first unknown term.
    pub fn truncation(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn coeff(&self, exp: i64) -> Option<&BigInt> {
        usize::try_from(exp - self.valuation).ok().and_then(|k| self.coeffs.get(k))
    }

    pub fn mul(&self, o: &IntegerPowerSeries) -> IntegerPowerSeries {
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, x) in self.coeffs.iter().take(len).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().take(len - i).enumerate() {
                c[i + j] += x * y;
            }
        }
        IntegerPowerSeries { valuation: self.valuation + o.valuation, coeffs: c }
    }

    /// Quotient by a series whose leading coefficient is ±1.
    pub fn div(&self, o: &IntegerPowerSeries) -> Result<IntegerPowerSeries> {
        let lead = o.coeffs.first().filter(|c| c.abs().is_one()).ok_or_else(|| Error::Unsupported("divisor is not a unit series".into()))?;
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut c: Vec<BigInt> = Vec::with_capacity(len);
        for k in 0..len {
            let mut r = self.coeffs[k].clone();
            for j in 1..=k {
                r -= &o.coeffs[j] * &c[k - j];
            }
            c.push(r * lead);
        }
        Ok(IntegerPowerSeries { valuation: self.valuation - o.valuation, coeffs: c })
    }
}

impl fmt::Display for IntegerPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + k as i64;
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{mag}")?,
                _ => write!(f, "{mag} {mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation())
    }
}

/// ∏_k (1 - q^k)^(e_k) to `len` terms.
fn euler_product(exps: &[i64], len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    for (k, &e) in exps.iter().enumerate().skip(1) {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for i in (k..len).rev() {
                    let t = c[i - k].clone();
                    c[i] -= t;
                }
            } else {
                for i in k..len {
                    let t = c[i - k].clone();
                    c[i] += t;
                }
            }
        }
    }
    c
}

/// ∏ η(scale·A τ)^α as an integer series with `len` coefficients.
pub fn eta_product_series(fs: &FrameShape, scale: u64, len: usize) -> Result<IntegerPowerSeries> {
    let twice: i64 = fs.parts.iter().map(|&(a, e)| (scale * a) as i64 * e).sum();
    if twice % 24 != 0 {
        return Err(Error::FractionalExponent(twice));
    }
    let mut exps = vec![0i64; len];
    for &(a, e) in &fs.parts {
        let step = (scale * a) as usize;
        for k in (step..len).step_by(step) {
            exps[k] += e;
        }
    }
    Ok(IntegerPowerSeries { valuation: twice / 24, coeffs: euler_product(&exps, len) })
}

/// ∏ η(Aτ)^α / ∏ η(2Aτ)^α with `order` coefficients.
pub fn eta_quotient_series(fs: &FrameShape, order: usize) -> Result<IntegerPowerSeries> {
    let shift: i64 = -fs.degree();
    if shift % 24 != 0 {
        return Err(Error::FractionalExponent(shift));
    }
    let mut exps = vec![0i64; order];
    for &(a, e) in &fs.parts {
        let a = a as usize;
        for k in (a..order).step_by(a) {
            exps[k] += e;
        }
        for k in (2 * a..order).step_by(2 * a) {
            exps[k] -= e;
        }
    }
    Ok(IntegerPowerSeries { valuation: shift / 24, coeffs: euler_product(&exps, order) })
}

/// log η(τ), reducing until Im τ >= 0.8 and then summing the q-product.
fn log_eta(mut tau: Complex64) -> Complex64 {
    let i = Complex64::i();
    let pi = std::f64::consts::PI;
    let mut acc = Complex64::zero();
    while tau.im < REDUCED_IM {
        let n = tau.re.round();
        acc += i * pi * n / 12.0;
        tau -= n;
        if tau.im < REDUCED_IM {
            acc -= 0.5 * (-i * tau).ln();
            tau = -1.0 / tau;
        }
    }
    let q = (2.0 * pi * i * tau).exp();
    let mut s = i * pi * tau / 12.0;
    let mut qm = q;
    for _ in 0..ETA_TERMS {
        s += (Complex64::one() - qm).ln();
        qm *= q;
    }
    acc + s
}

/// Numerical value of the eta quotient of `fs` at τ.
pub fn eta_quotient_value(fs: &FrameShape, tau: Complex64) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::NotUpperHalfPlane);
    }
    let mut l = Complex64::zero();
    for &(a, e) in &fs.parts {
        let a = a as f64;
        l += e as f64 * (log_eta(a * tau) - log_eta(2.0 * a * tau));
    }
    Ok(l.exp())
}

fn mobius(g: &ProjectiveMatrix, tau: Complex64) -> Result<Complex64> {
    let r = g.rep();
    let f = |x: &BigInt| x.to_f64().ok_or_else(|| Error::Overflow(x.to_string()));
    Ok((f(&r.a)? * tau + f(&r.b)?) / (f(&r.c)? * tau + f(&r.d)?))
}

/// |f(γτ) - f(τ)| <= tol (1 + |f(τ)|).
pub fn invariant_under(fs: &FrameShape, gamma: &ProjectiveMatrix, tau: Complex64, tol: f64) -> Result<bool> {
    let base = eta_quotient_value(fs, tau)?;
    let moved = eta_quotient_value(fs, mobius(gamma, tau)?)?;
    Ok((moved - base).norm() <= tol * (1.0 + base.norm()))
}

/// Invariance of the eta quotient under every generator of Γ.
pub fn numeric_invariance_check(fs: &FrameShape, g: &GroupDescriptor, tau: Complex64, tol: f64) -> Result<bool> {
    if !(tau.im > 0.0) {
        return Err(Error::NotUpperHalfPlane);
    }
    for x in generators(g)? {
        if !invariant_under(fs, &x, tau, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One row of the super table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperEntry {
    pub group: GroupDescriptor,
    pub super_group: GroupDescriptor,
    pub frame_shape: FrameShape,
    pub degree: i64,
    pub max_part: u64,
    pub predicted_valency: u64,
}

pub fn super_table() -> Result<Vec<SuperEntry>> {
    e8_groups()
        .into_iter()
        .map(|g| {
            let fs = frame_shape(&g)?;
            let (degree, max_part, predicted_valency) = frame_shape_invariants(&fs);
            Ok(SuperEntry { super_group: super_group(&g)?, group: g, frame_shape: fs, degree, max_part, predicted_valency })
        })
        .collect()
}
