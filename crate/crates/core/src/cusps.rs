//! Cusps and widths via translation-subgroup orbits on lattice orbits.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{rational_serde, t, t_pow, Rational};
use crate::groupsys::{member, GroupDescriptor};
use crate::lattice::LatticeName;
use crate::tree::hypercircle;

/// One cusp: an orbit of lattices and its width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cusp {
    pub orbit: Vec<LatticeName>,
    #[serde(with = "rational_serde")]
    pub width: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspReport {
    pub group: GroupDescriptor,
    pub cusps: Vec<Cusp>,
    #[serde(with = "rational_serde")]
    pub width_at_infinity: Rational,
}

impl CuspReport {
    pub fn widths(&self) -> Vec<Rational> {
        self.cusps.iter().map(|c| c.width.clone()).collect()
    }

    pub fn total_width(&self) -> Rational {
        self.cusps.iter().map(|c| c.width.clone()).sum()
    }
}

/// Least A = k/h (1 <= k <= h n) with T^A in Γ; Fix_Γ(∞) = ⟨T^A⟩.
pub fn width_at_infinity(g: &GroupDescriptor) -> Result<Rational> {
    let h = g.h() as i64;
    for k in 1..=(g.h() * g.n()) as i64 {
        let a = Rational::new(BigInt::from(k), BigInt::from(h));
        if member(&t_pow(&a), g)? {
            return Ok(a);
        }
    }
    unreachable!("T^(hn) lies in every descriptor's base")
}

/// Orbits of ⟨x⟩ on `set`, each sorted, ordered by their least member.
fn cyclic_orbits(set: &[LatticeName], x: &crate::exact::ProjectiveMatrix) -> Vec<Vec<LatticeName>> {
    let mut left: BTreeSet<LatticeName> = set.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some(start) = left.pop_first() {
        let mut orbit = vec![start.clone()];
        let mut cur = start.act(x);
        while cur != start {
            left.remove(&cur);
            orbit.push(cur.clone());
            cur = cur.act(x);
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

/// Cusps of Γ₀(N): ⟨T⟩-orbits on HC_N(1), width = orbit size.
pub fn cusps_of_gamma0(n: u64) -> CuspReport {
    let set = hypercircle(&LatticeName::l1(), n).members;
    let cusps = cyclic_orbits(&set, &t())
        .into_iter()
        .map(|orbit| Cusp { width: Rational::from_integer(BigInt::from(orbit.len())), orbit })
        .collect();
    CuspReport { group: GroupDescriptor::gamma0(n), cusps, width_at_infinity: Rational::one() }
}

/// Number of ⟨T^A⟩-orbits on `orbit`, A the width at ∞ of `ambient`.
pub fn cusp_count(ambient: &GroupDescriptor, orbit: &[LatticeName]) -> Result<usize> {
    let a = width_at_infinity(ambient)?;
    Ok(cyclic_orbits(orbit, &t_pow(&a)).len())
}
