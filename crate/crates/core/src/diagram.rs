//! Per-group invariants (N_Γ, a_Γ, Γ₀, lev₀, val, faithfulness) and the graph they determine.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::classify::{catalog, name_subgroup, Subgroup};
use crate::error::{Error, Result};
use crate::groupsys::{
    congruence_level, generators, member, normalizer_of_gamma0, normalizer_quotient, schreier_generators,
    FiniteQuotient, GroupDescriptor,
};
use crate::lattice::LatticeName;
use crate::tree::thread;

pub const N_GAMMA_BOUND: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub group: GroupDescriptor,
    #[serde(rename = "N_gamma")]
    pub n_gamma: u64,
    pub a_gamma: u64,
    pub gamma0: GroupDescriptor,
    pub level: u64,
    pub normalized_level: u64,
    pub valency: u64,
    pub faithful: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub vertices: Vec<VertexData>,
    /// Index pairs (i, j) with i < j, ascending.
    pub edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    /// Edges as unordered pairs of display names.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (self.vertices[i].group.to_string(), self.vertices[j].group.to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| if i == v { Some(j) } else if j == v { Some(i) } else { None })
            .collect()
    }
}

/// Least N <= bound with G_(1,N) ⊆ Γ ⊆ Norm(G_(1,N)).
pub fn n_gamma_bounded(g: &GroupDescriptor, bound: u64) -> Result<u64> {
    let gens = generators(g)?;
    'outer: for n in 1..=bound {
        for x in schreier_generators(n) {
            if !member(&x, g)? {
                continue 'outer;
            }
        }
        let norm = normalizer_of_gamma0(n);
        for x in &gens {
            if !member(x, &norm)? {
                continue 'outer;
            }
        }
        return Ok(n);
    }
    Err(Error::NBound(bound))
}

pub fn n_gamma(g: &GroupDescriptor) -> Result<u64> {
    n_gamma_bounded(g, N_GAMMA_BOUND)
}

fn count(s: &Subgroup) -> usize {
    s.iter().filter(|&&b| b).count()
}

fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
    a.iter().zip(b).map(|(&x, &y)| x && y).collect()
}

/// Mask of G_(a,N/a) in Norm(G_(1,N))/G_(1,N).
fn level_mask(q: &FiniteQuotient, big_n: u64, a: u64) -> Result<Subgroup> {
    q.subset_of(&GroupDescriptor::plain(a, big_n / a, [1])?)
}

fn a_gamma_in(q: &FiniteQuotient, big_n: u64, sg: &Subgroup) -> Result<u64> {
    for a in divisors(24).into_iter().rev() {
        if big_n % (a * a) != 0 {
            continue;
        }
        let sa = level_mask(q, big_n, a)?;
        let inter = count(&intersect(sg, &sa));
        if inter * a as usize == count(&sa) {
            return Ok(a);
        }
    }
    unreachable!("a = 1 always has index 1")
}

/// Largest a | 24 with a² | N_Γ and [G_(a,N/a) : Γ ∩ G_(a,N/a)] = a.
pub fn a_gamma(g: &GroupDescriptor) -> Result<u64> {
    let big_n = n_gamma(g)?;
    let q = normalizer_quotient(big_n)?;
    a_gamma_in(&q, big_n, &q.subset_of(g)?)
}

/// Γ₀ = Γ ∩ G_(a,N/a), named from the catalog.
pub fn gamma0_of(g: &GroupDescriptor) -> Result<GroupDescriptor> {
    Ok(vertex_data(g)?.gamma0)
}

/// Size of the orbit of the unordered pair {L₁, L₂} under Γ.
fn pair_orbit_size(g: &GroupDescriptor) -> Result<usize> {
    let gens = generators(g)?;
    let start = BTreeSet::from([LatticeName::l1(), LatticeName::of_int(2)]);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for x in &gens {
            let img: BTreeSet<LatticeName> = p.iter().map(|l| l.act(x)).collect();
            if seen.insert(img.clone()) {
                if seen.len() > 2 {
                    return Ok(seen.len());
                }
                queue.push_back(img);
            }
        }
    }
    Ok(seen.len())
}

pub fn vertex_data(g: &GroupDescriptor) -> Result<VertexData> {
    vertex_data_bounded(g, N_GAMMA_BOUND)
}

/// Vertex data with N_Γ searched up to `bound`.
pub fn vertex_data_bounded(g: &GroupDescriptor, bound: u64) -> Result<VertexData> {
    let big_n = n_gamma_bounded(g, bound)?;
    let q = normalizer_quotient(big_n)?;
    let sg = q.subset_of(g)?;
    let a = a_gamma_in(&q, big_n, &sg)?;
    let s0 = intersect(&sg, &level_mask(&q, big_n, a)?);
    let members: Vec<usize> = (0..q.order()).filter(|&i| sg[i]).collect();
    for &i in &members {
        if !s0[q.multiplication[i][i]] {
            return Err(Error::Unsupported(format!("{g}/Γ₀ is not of exponent 2")));
        }
        for j in (0..q.order()).filter(|&j| s0[j]) {
            if !s0[q.multiplication[q.multiplication[i][j]][q.inverses[i]]] {
                return Err(Error::Unsupported(format!("Γ₀ is not normal in {g}")));
            }
        }
    }
    let quotient = count(&sg) / count(&s0);
    let m = quotient.trailing_zeros() as u64;
    let gamma0 = name_subgroup(big_n, &catalog(big_n, &q)?, &s0)?;
    let level = congruence_level(g)?;
    Ok(VertexData {
        group: g.clone(),
        n_gamma: big_n,
        a_gamma: a,
        gamma0,
        level,
        normalized_level: level / a,
        valency: m + 1,
        faithful: pair_orbit_size(g)? <= 2,
    })
}

/// Largest subset of the (1,N)-thread stabilized by the group generated by `gens`.
pub fn stabilized_thread_subset(gens: &[crate::exact::ProjectiveMatrix], big_n: u64) -> Result<Vec<LatticeName>> {
    let th: BTreeSet<LatticeName> = thread(&LatticeName::l1(), &LatticeName::of_int(big_n))?.members.into_iter().collect();
    let mut out = Vec::new();
    for x in &th {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut queue = VecDeque::from([x.clone()]);
        let mut inside = true;
        while let Some(l) = queue.pop_front() {
            for g in gens {
                let y = l.act(g);
                if !th.contains(&y) {
                    inside = false;
                    break;
                }
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            if !inside {
                break;
            }
        }
        if inside {
            out.push(x.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphConstraints {
    /// 2 lev₀(v) equals the sum of lev₀ over neighbours.
    pub balance: bool,
    /// Faithful vertices have only non-faithful neighbours.
    pub faithful: bool,
}

impl Default for GraphConstraints {
    fn default() -> Self {
        GraphConstraints { balance: true, faithful: true }
    }
}

struct Search<'a> {
    data: &'a [VertexData],
    c: GraphConstraints,
    edges: Vec<(usize, usize)>,
    deg: Vec<u64>,
    sum: Vec<u64>,
    chosen: Vec<(usize, usize)>,
    found: Vec<Vec<(usize, usize)>>,
}

impl Search<'_> {
    fn vertex_done(&self, v: usize) -> bool {
        let d = &self.data[v];
        self.deg[v] == d.valency && (!self.c.balance || self.sum[v] == 2 * d.normalized_level)
    }

    fn run(&mut self, k: usize) {
        if k == self.edges.len() {
            if (0..self.data.len()).all(|v| self.vertex_done(v)) {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        let (i, j) = self.edges[k];
        // All edges at i are decided once the next edge starts from a later vertex.
        let closes_i = self.edges.get(k + 1).map_or(true, |&(ni, _)| ni != i);
        let (di, dj) = (&self.data[i], &self.data[j]);
        let fits = self.deg[i] < di.valency
            && self.deg[j] < dj.valency
            && !(self.c.faithful && di.faithful && dj.faithful)
            && (!self.c.balance
                || (self.sum[i] + dj.normalized_level <= 2 * di.normalized_level
                    && self.sum[j] + di.normalized_level <= 2 * dj.normalized_level));
        if fits {
            self.deg[i] += 1;
            self.deg[j] += 1;
            self.sum[i] += dj.normalized_level;
            self.sum[j] += di.normalized_level;
            self.chosen.push((i, j));
            if !closes_i || self.vertex_done(i) {
                self.run(k + 1);
            }
            self.chosen.pop();
            self.deg[i] -= 1;
            self.deg[j] -= 1;
            self.sum[i] -= dj.normalized_level;
            self.sum[j] -= di.normalized_level;
        }
        if !closes_i || self.vertex_done(i) {
            self.run(k + 1);
        }
    }
}

/// Every edge set meeting the valency constraint and the selected optional constraints.
pub fn solve_graph(data: &[VertexData], c: GraphConstraints) -> Vec<Vec<(usize, usize)>> {
    let n = data.len();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut s = Search { data, c, edges, deg: vec![0; n], sum: vec![0; n], chosen: vec![], found: vec![] };
    s.run(0);
    s.found
}

/// The unique graph satisfying all constraints.
pub fn build_graph_with(data: &[VertexData], c: GraphConstraints) -> Result<LabeledGraph> {
    let mut sols = solve_graph(data, c);
    if sols.len() != 1 {
        return Err(Error::GraphSolutions(sols.len()));
    }
    Ok(LabeledGraph { vertices: data.to_vec(), edges: sols.pop().unwrap() })
}

pub fn build_graph(data: &[VertexData]) -> Result<LabeledGraph> {
    build_graph_with(data, GraphConstraints::default())
}

/// Vertex data for the nine groups, in column order.
pub fn e8_vertex_data() -> Result<Vec<VertexData>> {
    e8_vertex_data_bounded(N_GAMMA_BOUND)
}

pub fn e8_vertex_data_bounded(bound: u64) -> Result<Vec<VertexData>> {
    crate::classify::e8_groups().iter().map(|g| vertex_data_bounded(g, bound)).collect()
}

/// Undirected DOT rendering; the group with N_Γ = 1 is drawn circled.
pub fn emit_dot(g: &LabeledGraph) -> String {
    let mut out = String::from("graph diagram {\n");
    if !g.vertices.is_empty() {
        out.push_str("  node [shape=plaintext];\n");
    }
    for (i, v) in g.vertices.iter().enumerate() {
        let shape = if v.n_gamma == 1 { ", shape=circle" } else { "" };
        writeln!(out, "  v{i} [label=\"{}\"{shape}];", v.group).unwrap();
    }
    for &(i, j) in &g.edges {
        writeln!(out, "  v{i} -- v{j};").unwrap();
    }
    out.push_str("}\n");
    out
}
