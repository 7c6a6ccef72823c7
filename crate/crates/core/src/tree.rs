//! p-adic trees, p-adic projection, hypercircles, threads and cells.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, is_prime, p_part, to_u64};
use crate::error::{Error, Result};
use crate::exact::{mod_inverse, Rational};
use crate::lattice::{hyperdistance, LatticeName};

/// All lattices at hyperdistance `radius` from `center`, in ascending (M, b) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCircle {
    pub center: LatticeName,
    pub radius: u64,
    pub members: Vec<LatticeName>,
}

/// The (L', L'')-thread.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thread {
    pub endpoints: (LatticeName, LatticeName),
    pub members: Vec<LatticeName>,
}

/// Primitive upper-triangular representative (a, b', d) of g_{M,b}.
fn hnf(l: &LatticeName) -> (BigInt, BigInt, BigInt) {
    let r = l.matrix();
    let r = r.rep();
    (r.a.clone(), r.b.clone(), r.d.clone())
}

fn name_from_hnf(a: &BigInt, b: &BigInt, d: &BigInt) -> LatticeName {
    LatticeName::new(Rational::new(a.clone(), d.clone()), Rational::new(b.mod_floor(d), d.clone()))
        .expect("0 <= b < d")
}

fn bigpow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// The three families of HC_{p^n}(1) as HNF triples (a_p, b_p, d_p).
fn prime_power_components(p: u64, n: u32) -> Vec<(BigInt, BigInt, BigInt)> {
    let mut out = vec![(bigpow(p, n), BigInt::zero(), BigInt::one())];
    for a in 1..n {
        let d = bigpow(p, a);
        let pb = BigInt::from(p);
        let mut k = BigInt::zero();
        while k < d {
            if !(&k % &pb).is_zero() {
                out.push((bigpow(p, n - a), k.clone(), d.clone()));
            }
            k += 1;
        }
    }
    if n > 0 {
        let d = bigpow(p, n);
        let mut k = BigInt::zero();
        while k < d {
            out.push((BigInt::one(), k.clone(), d.clone()));
            k += 1;
        }
    }
    out
}

/// HC_N(L₁): prime-power families combined across primes by the Chinese remainder theorem.
fn hypercircle_l1(n: u64) -> Vec<LatticeName> {
    let mut acc: Vec<(BigInt, BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero(), BigInt::one())];
    for (p, k) in factorize(n) {
        let comps = prime_power_components(p, k);
        let mut next = Vec::with_capacity(acc.len() * comps.len());
        for (a0, b0, d0) in &acc {
            for (ap, bp, dp) in &comps {
                // b ≡ b0·ap mod d0 and b ≡ bp·a0 mod dp keeps each projection equal to its component.
                let r0 = (b0 * ap).mod_floor(d0);
                let rp = (bp * a0).mod_floor(dp);
                let d = d0 * dp;
                let u = mod_inverse(d0, dp).expect("coprime moduli");
                let b = (&r0 + d0 * ((&rp - &r0) * u).mod_floor(dp)).mod_floor(&d);
                next.push((a0 * ap, b, d));
            }
        }
        acc = next;
    }
    let mut out: Vec<LatticeName> = acc.iter().map(|(a, b, d)| name_from_hnf(a, b, d)).collect();
    out.sort();
    out
}

/// HC_N(L): translate HC_N(L₁) by g_L.
pub fn hypercircle(center: &LatticeName, radius: u64) -> HyperCircle {
    let g = center.matrix();
    let mut members: Vec<LatticeName> = hypercircle_l1(radius).iter().map(|x| x.act(&g)).collect();
    members.sort();
    HyperCircle { center: center.clone(), radius, members }
}

/// [G₁ : G_(1,N)] = ∏ (p+1) p^(a-1).
pub fn index_g1(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, a)| (p + 1) * p.pow(a - 1)).product()
}

/// π_p(L): the unique L' with p ∤ δ(L, L') and δ(L₁, L') a power of p.
pub fn padic_projection(l: &LatticeName, p: u64) -> Result<LatticeName> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (a, b, d) = hnf(l);
    let pb = BigInt::from(p);
    let ppart = |x: &BigInt| {
        let mut x = x.clone();
        let mut r = BigInt::one();
        while (&x % &pb).is_zero() {
            x /= &pb;
            r *= &pb;
        }
        r
    };
    let (ap, dp) = (ppart(&a), ppart(&d));
    let u = mod_inverse(&(&a / &ap), &dp).expect("p-free part is a unit mod p^k");
    Ok(name_from_hnf(&ap, &(b * u), &dp))
}

/// Members L with δ(L', L) δ(L, L'') = δ(L', L''), found by searching HC_d(L') for d | δ.
pub fn thread(l1: &LatticeName, l2: &LatticeName) -> Result<Thread> {
    let total = to_u64(&hyperdistance(l1, l2))?;
    let mut members = BTreeSet::new();
    for d in divisors(total) {
        for x in hypercircle(l1, d).members {
            if BigInt::from(d) * hyperdistance(&x, l2) == BigInt::from(total) {
                members.insert(x);
            }
        }
    }
    Ok(Thread { endpoints: (l1.clone(), l2.clone()), members: members.into_iter().collect() })
}

/// True iff every p-adic projection of the set is a point or a single edge.
pub fn is_cell(set: &[LatticeName]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut primes = BTreeSet::new();
    for (i, x) in set.iter().enumerate() {
        for y in &set[i + 1..] {
            primes.extend(factorize(to_u64(&hyperdistance(x, y))?).into_iter().map(|(p, _)| p));
        }
    }
    for p in primes {
        let proj: BTreeSet<LatticeName> = set.iter().map(|x| padic_projection(x, p)).collect::<Result<_>>()?;
        let proj: Vec<_> = proj.into_iter().collect();
        match proj.len() {
            1 => {}
            2 if hyperdistance(&proj[0], &proj[1]) == BigInt::from(p) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Ball of hyperdistance <= p^depth about L₁ in the p-adic tree, with its edges (pairs at distance p).
pub fn padic_ball(p: u64, depth: u32) -> Result<(Vec<LatticeName>, Vec<(usize, usize)>)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let l1 = LatticeName::l1();
    let mut nodes: Vec<LatticeName> = (0..=depth).flat_map(|k| hypercircle(&l1, p.pow(k)).members).collect();
    nodes.sort();
    let pb = BigInt::from(p);
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if hyperdistance(&nodes[i], &nodes[j]) == pb {
                edges.push((i, j));
            }
        }
    }
    Ok((nodes, edges))
}

/// Largest power of p dividing δ(L₁, L).
pub fn p_depth(l: &LatticeName, p: u64) -> Result<u64> {
    Ok(p_part(to_u64(&hyperdistance(&LatticeName::l1(), l))?, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> LatticeName {
        s.parse().unwrap()
    }

    fn names(v: &[&str]) -> Vec<LatticeName> {
        let mut out: Vec<_> = v.iter().map(|s| name(s)).collect();
        out.sort();
        out
    }

    /// Independent oracle: primitive HNFs [[a,b],[0,d]] with ad = N.
    fn hnf_oracle(n: u64) -> Vec<LatticeName> {
        let mut out = Vec::new();
        for a in divisors(n) {
            let d = n / a;
            for b in 0..d {
                if crate::arith::gcd(crate::arith::gcd(a, b), d) == 1 {
                    out.push(name_from_hnf(&BigInt::from(a), &BigInt::from(b), &BigInt::from(d)));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hypercircle_matches_hnf_oracle() {
        for n in 1..=60 {
            assert_eq!(hypercircle_l1(n), hnf_oracle(n), "N={n}");
        }
    }

    #[test]
    fn hc9_and_hc3_of_3() {
        let mut expect = vec!["9,0", "1,1/3", "1,2/3"];
        let ninths: Vec<String> = (0..9).map(|k| format!("1/9,{k}/9")).collect();
        expect.extend(ninths.iter().map(|s| s.as_str()));
        let hc9 = hypercircle(&LatticeName::l1(), 9);
        assert_eq!(hc9.members, names(&expect));
        assert_eq!(hc9.members.len(), 12);
        let hc33 = hypercircle(&name("3"), 3);
        assert_eq!(hc33.members, names(&["1,0", "9,0", "1,1/3", "1,2/3"]));
        assert_eq!(hypercircle(&name("5/4,1/3"), 1).members, names(&["5/4,1/3"]));
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_g1(1), 1);
        assert_eq!(index_g1(6), 12);
        assert_eq!(index_g1(8), 12);
    }

    #[test]
    fn projection_examples() {
        let l6 = name("6");
        assert_eq!(padic_projection(&LatticeName::l1(), 2).unwrap(), LatticeName::l1());
        assert_eq!(padic_projection(&l6, 2).unwrap(), name("2"));
        assert_eq!(padic_projection(&l6, 3).unwrap(), name("3"));
        assert_eq!(padic_projection(&l6, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn crt_components_are_projections() {
        for n in [6u64, 12, 30, 36, 60] {
            for x in hypercircle_l1(n) {
                for (p, k) in factorize(n) {
                    let px = padic_projection(&x, p).unwrap();
                    assert_eq!(to_u64(&hyperdistance(&LatticeName::l1(), &px)).unwrap(), p.pow(k));
                    assert_ne!(to_u64(&hyperdistance(&x, &px)).unwrap() % p, 0);
                }
            }
        }
    }

    #[test]
    fn thread_examples() {
        let l1 = LatticeName::l1();
        assert_eq!(thread(&l1, &l1).unwrap().members, vec![l1.clone()]);
        assert_eq!(thread(&l1, &name("4")).unwrap().members, names(&["1", "2", "4"]));
        assert_eq!(thread(&l1, &name("6")).unwrap().members, names(&["1", "2", "3", "6"]));
    }

    #[test]
    fn cell_examples() {
        assert!(is_cell(&names(&["1"])).unwrap());
        assert!(is_cell(&names(&["1", "2", "3", "6"])).unwrap());
        assert!(!is_cell(&names(&["1", "4"])).unwrap());
        assert_eq!(is_cell(&[]), Err(Error::EmptySet));
    }
}
