//! Finite search for the groups Γ satisfying the four classification conditions.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{al_product, divisors, exact_divisors, gcd};
use crate::error::{Error, Result};
use crate::exact::{rat, t_pow};
use crate::groupsys::{
    generators, member, normalizer_of_gamma0, normalizer_quotient, FiniteQuotient, GroupDescriptor,
};
use crate::tree::index_g1;

/// The nine vertex groups in diagram column order: G₁, 2+, 3+, 4+, 5+, 6+, 3|3, 4|2+, 2.
pub fn e8_groups() -> Vec<GroupDescriptor> {
    ["1", "2+", "3+", "4+", "5+", "6+", "3|3", "4|2+", "2"]
        .iter()
        .map(|s| s.parse().expect("valid name"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub max_index: u64,
    pub max_ratio: u64,
    pub require_width: bool,
    /// Restrict the sweep to these n (all admissible n when None).
    pub n_values: Option<Vec<u64>>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_index: 12, max_ratio: 3, require_width: true, n_values: None }
    }
}

/// Per-condition outcome for one subgroup of Norm(G_(1,N))/G_(1,N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Condition 1 holds by construction: Γ contains G_(1,N) and lies in its normalizer.
    pub arithmetic: bool,
    pub width_one: bool,
    /// False when the width condition is relaxed.
    pub width_required: bool,
    pub exponent_two: bool,
    /// I^{G₁}_Γ = [G₁ : Γ ∩ G₁].
    pub index_in_g1: u64,
    /// I^Γ_{G₁} = [Γ : Γ ∩ G₁].
    pub index_over_g1: u64,
    pub index_bound: bool,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.arithmetic && (self.width_one || !self.width_required) && self.exponent_two && self.index_bound
    }
}

/// A subgroup of the quotient for one (n, h) with its report and catalog name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub n: u64,
    pub h: u64,
    pub level: u64,
    pub order: usize,
    pub group: GroupDescriptor,
    pub report: ConditionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub options: ClassifyOptions,
    pub candidates: Vec<(u64, u64)>,
    pub hits: Vec<Hit>,
    pub groups: Vec<GroupDescriptor>,
}

/// All n with [G₁ : G_(1,n)] <= 12.
pub fn candidate_n() -> Vec<u64> {
    (1..=12).filter(|&n| index_g1(n) <= 12).collect()
}

/// Admissible (n, h): h | gcd(n, 24), 4h ∤ n, 9h ∤ n.
pub fn candidate_levels() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in candidate_n() {
        for h in divisors(gcd(n, 24)) {
            if n % (4 * h) != 0 && n % (9 * h) != 0 {
                out.push((n, h));
            }
        }
    }
    out
}

/// Subgroup of a finite quotient as a membership mask.
pub type Subgroup = Vec<bool>;

fn closure(q: &FiniteQuotient, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; q.order()];
    mask[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &g in gens {
            let j = q.multiplication[i][g];
            if !mask[j] {
                mask[j] = true;
                queue.push_back(j);
            }
        }
    }
    mask
}

/// Every subgroup of `q`, by cyclic extension from the trivial group.
pub fn all_subgroups(q: &FiniteQuotient) -> Vec<Subgroup> {
    let trivial = closure(q, &[]);
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut out = vec![trivial.clone()];
    let mut frontier = vec![(trivial, Vec::<usize>::new())];
    while let Some((h, gens)) = frontier.pop() {
        for g in 0..q.order() {
            if h[g] {
                continue;
            }
            let mut kg = gens.clone();
            kg.push(g);
            let k = closure(q, &kg);
            if seen.insert(k.clone()) {
                out.push(k.clone());
                frontier.push((k, kg));
            }
        }
    }
    out.sort_by_key(|s| (s.iter().filter(|&&b| b).count(), s.iter().map(|&b| !b).collect::<Vec<_>>()));
    out
}

fn mask_order(s: &Subgroup) -> usize {
    s.iter().filter(|&&b| b).count()
}

/// Conditions 1–4 for the preimage Γ of `subgroup` in Norm(G_(1,N)).
pub fn check_conditions(
    q: &FiniteQuotient,
    big_n: u64,
    subgroup: &Subgroup,
    opts: &ClassifyOptions,
) -> Result<ConditionReport> {
    let hn = normalizer_of_gamma0(big_n).h();
    let mut width_one = true;
    for k in 1..hn {
        if let Some(i) = q.locate(&t_pow(&rat(k as i64, hn as i64)))? {
            if subgroup[i] {
                width_one = false;
            }
        }
    }
    let exponent_two = (0..q.order()).all(|i| !subgroup[i] || q.multiplication[i][i] == 0);
    let in_g1 = (0..q.order()).filter(|&i| subgroup[i] && q.elements[i].pdet() == BigInt::one()).count() as u64;
    let order = mask_order(subgroup) as u64;
    let index_in_g1 = index_g1(big_n) / in_g1;
    let index_over_g1 = order / in_g1;
    let index_bound = index_in_g1 <= opts.max_index && index_in_g1 <= opts.max_ratio * index_over_g1;
    Ok(ConditionReport { arithmetic: true, width_one, width_required: opts.require_width, exponent_two, index_in_g1, index_over_g1, index_bound })
}

/// Closed label sets containing 1 inside the exact divisors of m.
fn label_sets(m: u64) -> Vec<Vec<u64>> {
    let ex: Vec<u64> = exact_divisors(m).into_iter().filter(|&e| e != 1).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << ex.len()) {
        let mut set: BTreeSet<u64> = BTreeSet::from([1]);
        set.extend(ex.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e));
        if set.iter().all(|&e| set.iter().all(|&f| set.contains(&al_product(e, f)))) {
            out.push(set.into_iter().collect());
        }
    }
    out
}

/// Descriptors D with G_(1,N) ⊆ D ⊆ Norm(G_(1,N)), with their masks on the quotient.
pub fn catalog(big_n: u64, q: &FiniteQuotient) -> Result<Vec<(GroupDescriptor, Subgroup)>> {
    let norm = normalizer_of_gamma0(big_n);
    let mut out = Vec::new();
    for n in divisors(big_n) {
        for h in divisors(gcd(n, 24)) {
            if n % h != 0 {
                continue;
            }
            let m = n / h;
            // G_(h,n) = G_h ∩ G_n contains G_(1,N) when n | N; the kernel G^(h) only when nh | N.
            let mut ds: Vec<GroupDescriptor> =
                label_sets(m).into_iter().filter_map(|l| GroupDescriptor::plain(h, n, l).ok()).collect();
            if big_n % (n * h) == 0 {
                for l in [vec![1], vec![1, m]] {
                    if let Ok(d) = GroupDescriptor::kernel(h, n, l) {
                        ds.push(d);
                    }
                }
            }
            ds.dedup();
            for d in ds {
                let mut inside = true;
                for g in generators(&d)? {
                    if !member(&g, &norm)? {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    let mask = q.subset_of(&d)?;
                    out.push((d, mask));
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn name_subgroup(big_n: u64, cat: &[(GroupDescriptor, Subgroup)], s: &Subgroup) -> Result<GroupDescriptor> {
    let matches: Vec<&GroupDescriptor> = cat.iter().filter(|(_, m)| m == s).map(|(d, _)| d).collect();
    match matches.as_slice() {
        [] => Err(Error::Unnamed(big_n)),
        [d] => Ok((*d).clone()),
        [a, b, ..] => Err(Error::CatalogTie(a.to_string(), b.to_string())),
    }
}

/// The quotient for level N, its catalog, and all subgroups with their reports.
pub fn sweep_level(big_n: u64, opts: &ClassifyOptions) -> Result<(Arc<FiniteQuotient>, Vec<(Subgroup, ConditionReport)>)> {
    let q = normalizer_quotient(big_n)?;
    let mut out = Vec::new();
    for s in all_subgroups(&q) {
        let r = check_conditions(&q, big_n, &s, opts)?;
        out.push((s, r));
    }
    Ok((q, out))
}

/// Full classification with explicit options.
pub fn classify_with(opts: &ClassifyOptions) -> Result<Classification> {
    let candidates: Vec<(u64, u64)> = candidate_levels()
        .into_iter()
        .filter(|(n, _)| opts.n_values.as_ref().map_or(true, |v| v.contains(n)))
        .collect();
    let mut hits = Vec::new();
    let mut catalogs: BTreeMap<u64, Vec<(GroupDescriptor, Subgroup)>> = BTreeMap::new();
    for &(n, h) in &candidates {
        let big_n = n * h;
        let (q, subs) = sweep_level(big_n, opts)?;
        if !catalogs.contains_key(&big_n) {
            catalogs.insert(big_n, catalog(big_n, &q)?);
        }
        let cat = &catalogs[&big_n];
        for (s, report) in subs {
            if report.passes() {
                let group = name_subgroup(big_n, cat, &s)?;
                hits.push(Hit { n, h, level: big_n, order: mask_order(&s), group, report });
            }
        }
    }
    let groups: BTreeSet<GroupDescriptor> = hits.iter().map(|h| h.group.clone()).collect();
    Ok(Classification { options: opts.clone(), candidates, hits, groups: groups.into_iter().collect() })
}

/// The set of groups satisfying conditions 1–4 with the default bounds.
pub fn classify() -> Result<BTreeSet<GroupDescriptor>> {
    Ok(classify_with(&ClassifyOptions::default())?.groups.into_iter().collect())
}
