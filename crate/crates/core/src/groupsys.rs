//! Group descriptors for the Γ₀(n|h)+e,f family, membership, Atkin–Lehner
//! cosets, normalizers, character kernels, finite quotients, Schreier
//! generators and congruence levels.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{al_product, divisors, exact_divisors, factorize, is_exact_divisor};
use crate::error::{Error, Result};
use crate::exact::{g_int, identity, lower_t, mod_inverse, rat, s, t, t_pow, ProjectiveMatrix};
use crate::lattice::LatticeName;
use crate::tree::index_g1;

/// Default bound on the order of a finite quotient.
pub const QUOTIENT_BOUND: usize = 10_000;

/// Character kernels with a known λ: (h, n) ↦ (λ(T^{1/h}), λ((T^n)^t)) in ℤ/h.
const CHARACTER_TABLE: [((u64, u64), (u64, u64)); 4] =
    [((3, 3), (2, 1)), ((2, 4), (1, 1)), ((3, 6), (2, 2)), ((2, 8), (1, 1))];

fn character_values(h: u64, n: u64) -> Option<(u64, u64)> {
    CHARACTER_TABLE.iter().find(|(k, _)| *k == (h, n)).map(|(_, v)| *v)
}

/// The base G_(h,n) = g_h⁻¹ G_(1,n/h) g_h with adjoined W_e cosets, optionally
/// cut down to the kernel G^{(h)} of a character λ : G_(h,n) → ℤ/h.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DescriptorRepr", into = "DescriptorRepr")]
pub struct GroupDescriptor {
    h: u64,
    n: u64,
    al_labels: BTreeSet<u64>,
    character: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    h: u64,
    n: u64,
    al_labels: Vec<u64>,
    character: Option<u64>,
    display_name: String,
}

impl From<GroupDescriptor> for DescriptorRepr {
    fn from(g: GroupDescriptor) -> Self {
        DescriptorRepr {
            h: g.h,
            n: g.n,
            al_labels: g.al_labels.iter().copied().collect(),
            character: g.character,
            display_name: g.display_name(),
        }
    }
}

impl TryFrom<DescriptorRepr> for GroupDescriptor {
    type Error = Error;
    fn try_from(r: DescriptorRepr) -> Result<Self> {
        let g = GroupDescriptor::build(r.h, r.n, r.al_labels, r.character)?;
        if g.display_name() != r.display_name {
            return Err(Error::Parse(format!("display name {} does not match {}", r.display_name, g)));
        }
        Ok(g)
    }
}

impl GroupDescriptor {
    fn build(h: u64, n: u64, labels: impl IntoIterator<Item = u64>, character: Option<u64>) -> Result<Self> {
        if h == 0 || n == 0 || n % h != 0 {
            return Err(Error::Unsupported(format!("need h | n, got h={h}, n={n}")));
        }
        let m = n / h;
        let mut al_labels: BTreeSet<u64> = labels.into_iter().collect();
        al_labels.insert(1);
        for &e in &al_labels {
            if !is_exact_divisor(e, m) {
                return Err(Error::NotExactDivisor { e, n: m });
            }
        }
        for &e in &al_labels {
            for &f in &al_labels {
                if !al_labels.contains(&al_product(e, f)) {
                    return Err(Error::Unsupported(format!("labels not closed: W{e}W{f}")));
                }
            }
        }
        if let Some(c) = character {
            if c != h || character_values(h, n).is_none() {
                return Err(Error::Unsupported(format!("character kernel G^({c}) of G_({h},{n})")));
            }
            if al_labels.iter().any(|&e| e != 1 && e != m) {
                return Err(Error::Unsupported("character kernel with a non-Fricke label".into()));
            }
        }
        Ok(GroupDescriptor { h, n, al_labels, character })
    }

    /// G_(h,n) with the given Atkin–Lehner labels (exact divisors of n/h; 1 is implied).
    pub fn plain(h: u64, n: u64, labels: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::build(h, n, labels, None)
    }

    /// The kernel G^{(h)} of λ on G_(h,n), with optional labels.
    pub fn kernel(h: u64, n: u64, labels: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::build(h, n, labels, Some(h))
    }

    /// Γ₀(N) = G_(1,N).
    pub fn gamma0(n: u64) -> Self {
        Self::plain(1, n, []).expect("valid")
    }

    /// Γ₀(N)+ with every Atkin–Lehner involution.
    pub fn gamma0_plus(n: u64) -> Self {
        Self::plain(1, n, exact_divisors(n)).expect("valid")
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Level of the conjugated Hecke group, n/h.
    pub fn m(&self) -> u64 {
        self.n / self.h
    }

    pub fn al_labels(&self) -> &BTreeSet<u64> {
        &self.al_labels
    }

    pub fn character(&self) -> Option<u64> {
        self.character
    }

    /// The underlying descriptor without its character.
    pub fn without_character(&self) -> Self {
        GroupDescriptor { character: None, ..self.clone() }
    }

    /// The same base with only the trivial label.
    pub fn base(&self) -> Self {
        GroupDescriptor { al_labels: BTreeSet::from([1]), ..self.clone() }
    }

    /// Conway–Norton style name: `N`, `N+`, `N+e,f`, `n|h` (kernel), `n||h` (plain, h > 1).
    pub fn display_name(&self) -> String {
        let mut s = match (self.character, self.h) {
            (Some(_), h) => format!("{}|{}", self.n, h),
            (None, 1) => self.n.to_string(),
            (None, h) => format!("{}||{}", self.n, h),
        };
        let extra: Vec<u64> = self.al_labels.iter().copied().filter(|&e| e != 1).collect();
        if !extra.is_empty() {
            s.push('+');
            if self.al_labels.len() != exact_divisors(self.m()).len() {
                s.push_str(&extra.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            }
        }
        s
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// Parses `N`, `N+`, `N+e,f`, `n|h[+…]`, `n||h[+…]`, optionally with a `^(h)` marker.
impl FromStr for GroupDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed group name `{s}`"));
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        let t = s.trim();
        let (head, tail) = match t.split_once('+') {
            Some((a, b)) => (a, Some(b)),
            None => (t, None),
        };
        let (head, marked) = match head.find("^(") {
            Some(i) => {
                let c = head[i + 2..].strip_suffix(')').ok_or_else(bad)?;
                (&head[..i], Some(num(c)?))
            }
            None => (head, None),
        };
        let (n, h, kernel) = if let Some((a, b)) = head.split_once("||") {
            (num(a)?, num(b)?, false)
        } else if let Some((a, b)) = head.split_once('|') {
            (num(a)?, num(b)?, true)
        } else {
            (num(head)?, 1, false)
        };
        let labels: Vec<u64> = match tail {
            None => vec![],
            Some("") => exact_divisors(n / h.max(1)),
            Some(list) => list.split(',').map(num).collect::<Result<_>>()?,
        };
        let character = if kernel { Some(h) } else { marked };
        if let (true, Some(c)) = (kernel, marked) {
            if c != h {
                return Err(bad());
            }
        }
        Self::build(h, n, labels, character)
    }
}

/// W_e representative [[e, b], [N, d e]] with d e ≡ 1 mod N/e.
pub fn al_coset_representative(n: u64, e: u64) -> Result<ProjectiveMatrix> {
    if !is_exact_divisor(e, n) {
        return Err(Error::NotExactDivisor { e, n });
    }
    if e == 1 {
        return Ok(identity());
    }
    if e == n {
        return ProjectiveMatrix::new(0, -1, BigInt::from(n), 0);
    }
    let f = n / e;
    let d = mod_inverse(&BigInt::from(e), &BigInt::from(f)).expect("coprime");
    let d = if d.is_zero() { BigInt::from(f) } else { d };
    let de = &d * e;
    let b = (&de - BigInt::one()) / f;
    let w = ProjectiveMatrix::new(e, b.clone(), n, de.clone())?;
    debug_assert_eq!(w.pdet(), BigInt::from(e));
    debug_assert_eq!(&de * e - &b * n, BigInt::from(e));
    Ok(w)
}

/// Atkin–Lehner normalizer of G_(1,N): G_(h,N/h)+ with h the largest divisor of 24 with h² | N.
pub fn normalizer_of_gamma0(n: u64) -> GroupDescriptor {
    let h = divisors(24).into_iter().filter(|h| n % (h * h) == 0).max().unwrap_or(1);
    GroupDescriptor::plain(h, n / h, exact_divisors(n / (h * h))).expect("valid")
}

/// Conjugates the Hecke-level matrix `x` back into the frame of G_(h,·): g_h⁻¹ x g_h.
fn from_hecke_frame(x: &ProjectiveMatrix, h: u64) -> ProjectiveMatrix {
    x.conj_by(&g_int(h).inv())
}

/// Representative of the W_e coset of the descriptor's base, in its own frame.
pub fn label_representative(gd: &GroupDescriptor, e: u64) -> Result<ProjectiveMatrix> {
    Ok(from_hecke_frame(&al_coset_representative(gd.m(), e)?, gd.h))
}

/// Label e of the W_e coset containing g, if g lies in the base with adjoined W_e's.
fn coset_label(g: &ProjectiveMatrix, gd: &GroupDescriptor) -> Option<u64> {
    let c = g.conj_by(&g_int(gd.h));
    let r = c.rep();
    let e = r.det().to_u64()?;
    if !gd.al_labels.contains(&e) {
        return None;
    }
    let eb = BigInt::from(e);
    let ok = (&r.a % &eb).is_zero() && (&r.d % &eb).is_zero() && (&r.c % BigInt::from(gd.m())).is_zero();
    ok.then_some(e)
}

/// Exact membership of g in the group described by `gd`.
pub fn member(g: &ProjectiveMatrix, gd: &GroupDescriptor) -> Result<bool> {
    let Some(e) = coset_label(g, gd) else { return Ok(false) };
    if gd.character.is_none() {
        return Ok(true);
    }
    let lambda = character_for(gd.h, gd.n)?;
    let x = if e == 1 { g.clone() } else { g * &label_representative(gd, e)?.inv() };
    Ok(lambda.eval(&x)? == 0)
}

/// Finite group Γ/Γ' given by coset representatives, with its multiplication
/// table and its permutation action on a finite lattice set.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    pub modulus_group: GroupDescriptor,
    pub elements: Vec<ProjectiveMatrix>,
    pub multiplication: Vec<Vec<usize>>,
    pub inverses: Vec<usize>,
    pub lattice_set: Vec<LatticeName>,
    pub action: Vec<Vec<usize>>,
    index_of: HashMap<LatticeName, usize>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

impl FiniteQuotient {
    /// Closure of `gens` modulo `small`; `lattice_set` must be invariant under `gens` and fixed by `small`.
    pub fn from_generators(
        gens: &[ProjectiveMatrix],
        small: &GroupDescriptor,
        lattice_set: &[LatticeName],
        bound: usize,
    ) -> Result<Self> {
        let mut lattice_set = lattice_set.to_vec();
        lattice_set.sort();
        lattice_set.dedup();
        let index_of: HashMap<LatticeName, usize> =
            lattice_set.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut q = FiniteQuotient {
            modulus_group: small.clone(),
            elements: vec![identity()],
            multiplication: vec![],
            inverses: vec![],
            action: vec![(0..lattice_set.len()).collect()],
            lattice_set,
            index_of,
            buckets: HashMap::new(),
        };
        q.buckets.insert(q.action[0].clone(), vec![0]);
        let gen_perms: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| q.permutation(g).ok_or_else(|| Error::Unsupported("lattice set not invariant".into())))
            .collect::<Result<_>>()?;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, gp) in gens.iter().zip(&gen_perms) {
                let x = &q.elements[i] * g;
                let perm: Vec<usize> = q.action[i].iter().map(|&k| gp[k]).collect();
                if q.find(&x, &perm)?.is_none() {
                    if q.elements.len() >= bound {
                        return Err(Error::QuotientBound(bound));
                    }
                    let k = q.elements.len();
                    q.elements.push(x);
                    q.buckets.entry(perm.clone()).or_default().push(k);
                    q.action.push(perm);
                    queue.push_back(k);
                }
            }
        }
        let n = q.elements.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let x = &q.elements[i] * &q.elements[j];
                let perm: Vec<usize> = q.action[i].iter().map(|&k| q.action[j][k]).collect();
                table[i][j] = q.find(&x, &perm)?.ok_or_else(|| Error::Unsupported("quotient not closed".into()))?;
            }
        }
        q.inverses = (0..n).map(|i| table[i].iter().position(|&k| k == 0).expect("group")).collect();
        q.multiplication = table;
        Ok(q)
    }

    fn permutation(&self, g: &ProjectiveMatrix) -> Option<Vec<usize>> {
        self.lattice_set.iter().map(|l| self.index_of.get(&l.act(g)).copied()).collect()
    }

    fn find(&self, g: &ProjectiveMatrix, perm: &[usize]) -> Result<Option<usize>> {
        if let Some(cands) = self.buckets.get(perm) {
            for &k in cands {
                if member(&(g * &self.elements[k].inv()), &self.modulus_group)? {
                    return Ok(Some(k));
                }
            }
        }
        Ok(None)
    }

    /// Index of the element g Γ', or None if g is outside the quotient.
    pub fn locate(&self, g: &ProjectiveMatrix) -> Result<Option<usize>> {
        match self.permutation(g) {
            Some(perm) => self.find(g, &perm),
            None => Ok(None),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Indices of elements whose representatives lie in `gd`.
    pub fn subset_of(&self, gd: &GroupDescriptor) -> Result<Vec<bool>> {
        self.elements.iter().map(|g| member(g, gd)).collect()
    }

    /// Order of element i.
    pub fn element_order(&self, i: usize) -> usize {
        let (mut k, mut x) = (1, i);
        while x != 0 {
            x = self.multiplication[x][i];
            k += 1;
        }
        k
    }

    /// Distinct permutations realized on the lattice set.
    pub fn action_image(&self) -> BTreeSet<Vec<usize>> {
        self.action.iter().cloned().collect()
    }
}

/// Sign of a permutation given as an image vector.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Orbit closure of `seeds` under `gens`.
pub fn orbit(seeds: &[LatticeName], gens: &[ProjectiveMatrix], bound: usize) -> Result<Vec<LatticeName>> {
    let mut seen: BTreeSet<LatticeName> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<LatticeName> = seen.iter().cloned().collect();
    while let Some(l) = queue.pop_front() {
        for g in gens {
            let x = l.act(g);
            if seen.insert(x.clone()) {
                if seen.len() > bound {
                    return Err(Error::QuotientBound(bound));
                }
                queue.push_back(x);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Γ_big/Γ_small with its action on `lattice_set`.
pub fn finite_quotient(
    big: &GroupDescriptor,
    small: &GroupDescriptor,
    lattice_set: &[LatticeName],
) -> Result<FiniteQuotient> {
    for g in generators(small)? {
        if lattice_set.iter().any(|l| &l.act(&g) != l) {
            return Err(Error::Unsupported(format!("{small} does not fix the lattice set")));
        }
    }
    FiniteQuotient::from_generators(&generators(big)?, small, lattice_set, QUOTIENT_BOUND)
}

/// Norm(G_(1,N)) / G_(1,N) acting on the orbit of {L₁, L_N}; cached per N.
pub fn normalizer_quotient(n: u64) -> Result<Arc<FiniteQuotient>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FiniteQuotient>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(q) = cache.lock().unwrap().get(&n) {
        return Ok(q.clone());
    }
    let big = normalizer_of_gamma0(n);
    let gens = generators(&big)?;
    let set = orbit(&[LatticeName::l1(), LatticeName::of_int(n)], &gens, QUOTIENT_BOUND)?;
    let q = Arc::new(FiniteQuotient::from_generators(&gens, &GroupDescriptor::gamma0(n), &set, QUOTIENT_BOUND)?);
    cache.lock().unwrap().insert(n, q.clone());
    Ok(q)
}

/// λ : G_(h,n)/G_(1,nh) → ℤ/h.
#[derive(Clone, Debug)]
pub struct Character {
    pub domain: FiniteQuotient,
    pub order: u64,
    pub generator_values: Vec<(ProjectiveMatrix, u64)>,
    values: Vec<u64>,
}

impl Character {
    fn build(h: u64, n: u64) -> Result<Self> {
        let (vx, vy) = character_values(h, n)
            .ok_or_else(|| Error::Unsupported(format!("no character on G_({h},{n})")))?;
        let x = t_pow(&rat(1, h as i64));
        let y = lower_t(n as i64);
        let gens = vec![x.clone(), y.clone()];
        let small = GroupDescriptor::gamma0(n * h);
        let set = orbit(&[LatticeName::l1(), LatticeName::of_int(n * h)], &gens, QUOTIENT_BOUND)?;
        let domain = FiniteQuotient::from_generators(&gens, &small, &set, QUOTIENT_BOUND)?;
        let expected = index_g1(n * h) / index_g1(n / h);
        if domain.order() as u64 != expected {
            return Err(Error::Unsupported(format!("G_({h},{n}) not generated by T^(1/h), (T^{n})^t")));
        }
        let gen_idx = [domain.locate(&x)?.unwrap(), domain.locate(&y)?.unwrap()];
        let gen_vals = [vx, vy];
        let mut values = vec![None; domain.order()];
        values[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let vi = values[i].unwrap();
            for (gi, gv) in gen_idx.iter().zip(gen_vals) {
                let j = domain.multiplication[i][*gi];
                let vj = (vi + gv) % h;
                match values[j] {
                    None => {
                        values[j] = Some(vj);
                        queue.push_back(j);
                    }
                    Some(v) if v != vj => {
                        return Err(Error::Unsupported(format!("λ on G_({h},{n}) is not well defined")));
                    }
                    _ => {}
                }
            }
        }
        let values: Vec<u64> = values.into_iter().map(Option::unwrap).collect();
        if values.iter().filter(|&&v| v == 0).count() as u64 * h != domain.order() as u64 {
            return Err(Error::Unsupported(format!("λ on G_({h},{n}) is not surjective")));
        }
        Ok(Character { domain, order: h, generator_values: vec![(x, vx), (y, vy)], values })
    }

    /// λ(g) for g ∈ G_(h,n).
    pub fn eval(&self, g: &ProjectiveMatrix) -> Result<u64> {
        let i = self.domain.locate(g)?.ok_or_else(|| Error::Unsupported(format!("{g} outside the domain of λ")))?;
        Ok(self.values[i])
    }

    pub fn value_at(&self, i: usize) -> u64 {
        self.values[i]
    }
}

fn character_for(h: u64, n: u64) -> Result<Arc<Character>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Character>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(h, n)) {
        return Ok(c.clone());
    }
    let c = Arc::new(Character::build(h, n)?);
    cache.lock().unwrap().insert((h, n), c.clone());
    Ok(c)
}

/// λ for N=9 on G₃ = G_(3,3) and N=8 on G_(2,4).
pub fn character_lambda(case: u64) -> Result<Arc<Character>> {
    match case {
        9 => character_for(3, 3),
        8 => character_for(2, 4),
        _ => Err(Error::CharacterCase),
    }
}

/// Coset representatives r_L (L_N r_L = L) for G_(1,N)\G₁, from BFS over S, T on HC_N(1).
fn coset_tree(n: u64) -> (Vec<LatticeName>, Vec<ProjectiveMatrix>, HashMap<LatticeName, usize>) {
    let st = [s(), t()];
    let mut names = vec![LatticeName::of_int(n)];
    let mut reps = vec![identity()];
    let mut index = HashMap::from([(names[0].clone(), 0)]);
    let mut i = 0;
    while i < names.len() {
        for g in &st {
            let x = names[i].act(g);
            if !index.contains_key(&x) {
                index.insert(x.clone(), names.len());
                reps.push(&reps[i] * g);
                names.push(x);
            }
        }
        i += 1;
    }
    (names, reps, index)
}

/// Generators of G_(1,N) from a spanning tree of the S, T action on HC_N(1).
pub fn schreier_generators(n: u64) -> Vec<ProjectiveMatrix> {
    let (names, reps, index) = coset_tree(n);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, l) in names.iter().enumerate() {
        for g in [s(), t()] {
            let j = index[&l.act(&g)];
            let x = &(&reps[i] * &g) * &reps[j].inv();
            if !x.is_identity() && seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    out
}

/// Generators of Γ ∩ G₁ and the index [G₁ : Γ ∩ G₁].
pub fn subgroup_schreier_generators(gd: &GroupDescriptor) -> Result<(Vec<ProjectiveMatrix>, u64)> {
    let (names, reps, index) = coset_tree(gd.n * gd.h);
    let mut class_of = vec![usize::MAX; names.len()];
    let mut class_rep: Vec<usize> = Vec::new();
    for i in 0..names.len() {
        for (c, &r) in class_rep.iter().enumerate() {
            if member(&(&reps[i] * &reps[r].inv()), gd)? {
                class_of[i] = c;
                break;
            }
        }
        if class_of[i] == usize::MAX {
            class_of[i] = class_rep.len();
            class_rep.push(i);
        }
    }
    let k = class_rep.len();
    let mut crep: Vec<Option<ProjectiveMatrix>> = vec![None; k];
    crep[class_of[0]] = Some(identity());
    let mut queue = VecDeque::from([class_of[0]]);
    let mut gens = Vec::new();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    while let Some(c) = queue.pop_front() {
        for g in [s(), t()] {
            let d = class_of[index[&names[class_rep[c]].act(&g)]];
            if crep[d].is_none() {
                crep[d] = Some(crep[c].as_ref().unwrap() * &g);
                queue.push_back(d);
            }
            edges.push((c, g, d));
        }
    }
    for (c, g, d) in edges {
        let x = &(crep[c].as_ref().unwrap() * &g) * &crep[d].as_ref().unwrap().inv();
        if !x.is_identity() && seen.insert(x.clone()) {
            gens.push(x);
        }
    }
    Ok((gens, k as u64))
}

/// A generating set for the described group.
pub fn generators(gd: &GroupDescriptor) -> Result<Vec<ProjectiveMatrix>> {
    let mut out = Vec::new();
    if gd.character.is_some() {
        out.extend(schreier_generators(gd.n * gd.h));
        let lambda = character_for(gd.h, gd.n)?;
        for (i, g) in lambda.domain.elements.iter().enumerate().skip(1) {
            if lambda.value_at(i) == 0 {
                out.push(g.clone());
            }
        }
        for &e in gd.al_labels.iter().filter(|&&e| e != 1) {
            out.push(label_representative(gd, e)?);
        }
    } else {
        for x in schreier_generators(gd.m()) {
            out.push(from_hecke_frame(&x, gd.h));
        }
        for &e in gd.al_labels.iter().filter(|&&e| e != 1) {
            out.push(label_representative(gd, e)?);
        }
    }
    Ok(out)
}

/// |PSL2(ℤ/M)|.
pub fn psl2_order(m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let sl = factorize(m).iter().fold(m * m * m, |acc, &(p, _)| acc / (p * p) * (p * p - 1));
    if m == 2 {
        sl
    } else {
        sl / 2
    }
}

type Mat = [u64; 4];

fn reduce_pm(x: &ProjectiveMatrix, m: u64) -> Mat {
    let mb = BigInt::from(m);
    let r = x.rep();
    let v = [&r.a, &r.b, &r.c, &r.d].map(|e| e.mod_floor(&mb).to_u64().unwrap());
    canon_pm(v, m)
}

fn canon_pm(v: Mat, m: u64) -> Mat {
    let neg = v.map(|e| (m - e) % m);
    v.min(neg)
}

fn mul_mod(x: &Mat, y: &Mat, m: u64) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % m,
        (x[0] * y[1] + x[1] * y[3]) % m,
        (x[2] * y[0] + x[3] * y[2]) % m,
        (x[2] * y[1] + x[3] * y[3]) % m,
    ]
}

/// Size of the subgroup of PSL2(ℤ/M) generated by the images of `gens`.
pub fn image_order_mod(gens: &[ProjectiveMatrix], m: u64) -> usize {
    if m == 1 {
        return 1;
    }
    let gm: Vec<Mat> = gens.iter().map(|g| reduce_pm(g, m)).collect();
    let id = canon_pm([1, 0, 0, 1], m);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gm {
            let y = canon_pm(mul_mod(&x, g, m), m);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// Least M dividing `bound` with Γ(M) ⊆ Γ.
pub fn congruence_level_bounded(gd: &GroupDescriptor, bound: u64) -> Result<u64> {
    let (gens, idx) = subgroup_schreier_generators(gd)?;
    for m in divisors(bound) {
        if image_order_mod(&gens, m) as u64 * idx == psl2_order(m) {
            return Ok(m);
        }
    }
    Err(Error::LevelBound(bound))
}

/// Least M with Γ(M) ⊆ Γ, searched over divisors of 4nh.
pub fn congruence_level(gd: &GroupDescriptor) -> Result<u64> {
    congruence_level_bounded(gd, 4 * gd.n * gd.h)
}

/// Whether the matrix lies in the principal congruence group Γ(N) (±identity mod N).
pub fn in_principal_congruence(g: &ProjectiveMatrix, n: u64) -> bool {
    if g.pdet() != BigInt::one() {
        return false;
    }
    let id = canon_pm([1 % n, 0, 0, 1 % n], n);
    reduce_pm(g, n) == id
}
