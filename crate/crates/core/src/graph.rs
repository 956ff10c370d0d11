//! Candidate collinearity graphs: orbital graphs built from unions of
//! suborbits, and the strong-regularity check for a quadrangle order.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::OrderCandidate;
use crate::permgroup::{CosetActionData, SuborbitId};

/// Vertex counts up to this bound also get a bitset adjacency matrix.
pub const BITSET_LIMIT: usize = 1 << 16;

/// Vertex counts up to this bound are checked pair by pair.
const PAIRWISE_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSource {
    pub case: String,
    pub suborbits: Vec<usize>,
}

/// An undirected loopless graph on `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct CollinearityGraph {
    vertex_count: usize,
    lists: Vec<Vec<u32>>,
    bits: Option<Bitset>,
    pub source: Option<GraphSource>,
}

#[derive(Clone, Debug)]
struct Bitset {
    words: usize,
    data: Vec<u64>,
}

impl Bitset {
    fn new(n: usize, lists: &[Vec<u32>]) -> Self {
        let words = n.div_ceil(64);
        let mut data = vec![0u64; words * n];
        for (u, row) in lists.iter().enumerate() {
            for &w in row {
                data[u * words + w as usize / 64] |= 1 << (w % 64);
            }
        }
        Bitset { words, data }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.data[u * self.words..(u + 1) * self.words]
    }

    fn get(&self, u: usize, w: usize) -> bool {
        self.data[u * self.words + w / 64] >> (w % 64) & 1 == 1
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("suborbit union is not closed under pairing: suborbit {suborbit} pairs with {paired}, which is absent")]
    NotSelfPaired { suborbit: usize, paired: usize },
    #[error("edge ({0}, {1}) is out of range or a loop")]
    BadEdge(usize, usize),
}

impl CollinearityGraph {
    /// Builds a graph from undirected edges on 0-based vertices.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut lists = vec![Vec::new(); vertex_count];
        for &(u, w) in edges {
            if u == w || u >= vertex_count || w >= vertex_count {
                return Err(GraphError::BadEdge(u, w));
            }
            lists[u].push(w as u32);
            lists[w].push(u as u32);
        }
        Ok(Self::from_lists(lists))
    }

    fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        for row in lists.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }
        let n = lists.len();
        let bits = (n <= BITSET_LIMIT).then(|| Bitset::new(n, &lists));
        CollinearityGraph {
            vertex_count: n,
            lists,
            bits,
            source: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn neighbours(&self, u: usize) -> &[u32] {
        &self.lists[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.lists[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.lists.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_adjacent(&self, u: usize, w: usize) -> bool {
        match &self.bits {
            Some(b) => b.get(u, w),
            None => self.lists[u].binary_search(&(w as u32)).is_ok(),
        }
    }

    pub fn common_neighbours(&self, u: usize, w: usize) -> usize {
        match &self.bits {
            Some(b) => b
                .row(u)
                .iter()
                .zip(b.row(w))
                .map(|(x, y)| (x & y).count_ones() as usize)
                .sum(),
            None => sorted_intersection_len(&self.lists[u], &self.lists[w]),
        }
    }

    /// The common neighbours of `u` and `w`, in increasing order.
    pub fn common_neighbour_list(&self, u: usize, w: usize) -> Vec<u32> {
        let (a, b) = (&self.lists[u], &self.lists[w]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Sorted 1-based edges `u < v`, one `"u v"` per line.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for (u, row) in self.lists.iter().enumerate() {
            for &w in row.iter().filter(|&&w| w as usize > u) {
                out.push_str(&format!("{} {}\n", u + 1, w + 1));
            }
        }
        out
    }

    pub fn same_edges(&self, other: &CollinearityGraph) -> bool {
        self.lists == other.lists
    }
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// The orbital graph in which `x ~ y` iff some group element taking `x`
/// to the base coset takes `y` into the union of `neighbourhood`.
///
/// Neighbourhoods of the other labels are carried along the breadth-first
/// tree of the action, so each costs one pass over its parent's.
pub fn build_orbital_graph(
    action: &CosetActionData,
    neighbourhood: &[SuborbitId],
) -> Result<CollinearityGraph, GraphError> {
    for &id in neighbourhood {
        let paired = action.orbital_pairing(id);
        if !neighbourhood.contains(&paired) {
            return Err(GraphError::NotSelfPaired {
                suborbit: id.0,
                paired: paired.0,
            });
        }
    }
    let n = action.degree();
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
    lists[0] = neighbourhood
        .iter()
        .flat_map(|&id| action.suborbit(id).iter().copied())
        .collect();
    let gens = action.generator_images();
    for (child, parent, k) in action.tree_edges() {
        let g = &gens[k];
        lists[child] = lists[parent].iter().map(|&y| g.image(y as usize) as u32).collect();
    }
    Ok(CollinearityGraph::from_lists(lists))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParameters {
    /// The collinearity parameters `((s+1)(st+1), s(t+1), s-1, t+1)`.
    pub fn for_quadrangle(s: u64, t: u64) -> Self {
        SrgParameters {
            v: (s + 1) * (s * t + 1),
            k: s * (t + 1),
            lambda: s - 1,
            mu: t + 1,
        }
    }

    /// `k(k - lambda - 1) = (v - k - 1) mu`.
    pub fn identity_holds(&self) -> bool {
        let (v, k, l, m) = (
            self.v as u128,
            self.k as u128,
            self.lambda as u128,
            self.mu as u128,
        );
        k + 1 <= v && l + 1 <= k && k * (k - l - 1) == (v - k - 1) * m
    }
}

/// The first count that disagrees with the expected parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SrgFailure {
    VertexCount { expected: u64, found: u64 },
    Degree { vertex: usize, expected: u64, found: u64 },
    Lambda { u: usize, w: usize, expected: u64, found: u64 },
    Mu { u: usize, w: usize, expected: u64, found: u64 },
    OrderTooLarge,
}

impl fmt::Display for SrgFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrgFailure::VertexCount { expected, found } => {
                write!(f, "{found} vertices, expected {expected}")
            }
            SrgFailure::Degree { vertex, expected, found } => {
                write!(f, "vertex {} has degree {found}, expected {expected}", vertex + 1)
            }
            SrgFailure::Lambda { u, w, expected, found } => write!(
                f,
                "adjacent vertices {} and {} have {found} common neighbours, expected {expected}",
                u + 1,
                w + 1
            ),
            SrgFailure::Mu { u, w, expected, found } => write!(
                f,
                "non-adjacent vertices {} and {} have {found} common neighbours, expected {expected}",
                u + 1,
                w + 1
            ),
            SrgFailure::OrderTooLarge => write!(f, "order does not fit in 64 bits"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SrgVerdict {
    Pass,
    Fail(SrgFailure),
}

impl SrgVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SrgVerdict::Pass)
    }
}

/// Checks that `g` is strongly regular with the collinearity parameters of
/// a quadrangle of order `cand`. With `mu = t+1 > 0` this is the same as
/// being connected of diameter 2 with the matching intersection array.
pub fn check_srg(g: &CollinearityGraph, cand: &OrderCandidate) -> SrgVerdict {
    use num_traits::ToPrimitive;
    let (Some(s), Some(t)) = (cand.s.to_u64(), cand.t.to_u64()) else {
        return SrgVerdict::Fail(SrgFailure::OrderTooLarge);
    };
    check_parameters(g, &SrgParameters::for_quadrangle(s, t))
}

pub fn check_parameters(g: &CollinearityGraph, p: &SrgParameters) -> SrgVerdict {
    let n = g.vertex_count();
    if n as u64 != p.v {
        return SrgVerdict::Fail(SrgFailure::VertexCount {
            expected: p.v,
            found: n as u64,
        });
    }
    if let Some(u) = (0..n).find(|&u| g.degree(u) as u64 != p.k) {
        return SrgVerdict::Fail(SrgFailure::Degree {
            vertex: u,
            expected: p.k,
            found: g.degree(u) as u64,
        });
    }
    // per vertex, the first failing pair (u, w) with w > u
    let per_vertex = |u: usize| -> Option<SrgFailure> {
        if n <= PAIRWISE_LIMIT && g.bits.is_some() {
            for w in u + 1..n {
                if let Some(f) = pair_failure(g, p, u, w, g.common_neighbours(u, w) as u64) {
                    return Some(f);
                }
            }
            None
        } else {
            let mut count = vec![0u32; n];
            for &x in g.neighbours(u) {
                for &y in g.neighbours(x as usize) {
                    count[y as usize] += 1;
                }
            }
            (u + 1..n).find_map(|w| pair_failure(g, p, u, w, count[w] as u64))
        }
    };
    let failures: Vec<Option<SrgFailure>> = (0..n).into_par_iter().map(per_vertex).collect();
    match failures.into_iter().flatten().next() {
        Some(f) => SrgVerdict::Fail(f),
        None => SrgVerdict::Pass,
    }
}

fn pair_failure(
    g: &CollinearityGraph,
    p: &SrgParameters,
    u: usize,
    w: usize,
    found: u64,
) -> Option<SrgFailure> {
    if g.is_adjacent(u, w) {
        (found != p.lambda).then_some(SrgFailure::Lambda {
            u,
            w,
            expected: p.lambda,
            found,
        })
    } else {
        (found != p.mu).then_some(SrgFailure::Mu {
            u,
            w,
            expected: p.mu,
            found,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> CollinearityGraph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
            .collect();
        CollinearityGraph::from_edges(n, &edges).unwrap()
    }

    /// Duads of {0..5}, adjacent when disjoint: the collinearity graph of
    /// the quadrangle of order (2,2).
    pub(crate) fn duad_graph() -> CollinearityGraph {
        let duads: Vec<(usize, usize)> = (0..6)
            .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in duads.iter().enumerate() {
            for (j, &(c, d)) in duads.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        CollinearityGraph::from_edges(15, &edges).unwrap()
    }

    #[test]
    fn duad_graph_is_srg_15_6_1_3() {
        let g = duad_graph();
        assert_eq!(check_srg(&g, &OrderCandidate::from_u64(2, 2)), SrgVerdict::Pass);
        assert!(SrgParameters::for_quadrangle(2, 2).identity_holds());
    }

    #[test]
    fn complete_graph_fails() {
        let g = complete(15);
        match check_srg(&g, &OrderCandidate::from_u64(2, 2)) {
            SrgVerdict::Fail(SrgFailure::Degree { found: 14, .. }) => {}
            other => panic!("{other:?}"),
        }
        let p = SrgParameters {
            v: 15,
            k: 14,
            lambda: 1,
            mu: 3,
        };
        assert!(matches!(
            check_parameters(&g, &p),
            SrgVerdict::Fail(SrgFailure::Lambda { found: 13, .. })
        ));
    }

    #[test]
    fn edge_list_is_sorted_and_one_based() {
        let g = CollinearityGraph::from_edges(3, &[(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge_list_text(), "1 2\n1 3\n");
        assert!(CollinearityGraph::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn srg_identity_examples() {
        let petersen = SrgParameters {
            v: 10,
            k: 3,
            lambda: 0,
            mu: 1,
        };
        assert!(petersen.identity_holds());
        let bogus = SrgParameters { mu: 2, ..petersen };
        assert!(!bogus.identity_holds());
    }
}
