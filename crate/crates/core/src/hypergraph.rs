//! Canonical k-uniform hypergraphs and their generators.
//!
//! Vertices are integer ids `0..n`. Every edge is stored as a strictly
//! increasing k-sequence, the edge list is lexicographically sorted and
//! deduplicated, so two hypergraphs are equal iff their representations are.

use serde::{Deserialize, Serialize};

use crate::comb::{binomial, binomial_u64, subsets};
use crate::error::{Error, Result};
use crate::ratio::{ceil_u64, rat_u, Rat};
use crate::Limits;

pub type Vertex = u32;
pub type Edge = Vec<Vertex>;

/// A set of vertex ids in strictly increasing order; used for the d-sets of
/// degree computations and for link centers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(mut members: Vec<Vertex>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("vertex set has repeated members"));
        }
        Ok(VertexSet { members })
    }

    pub fn empty() -> Self {
        VertexSet { members: Vec::new() }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

impl TryFrom<Vec<u32>> for VertexSet {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<u32> {
    fn from(s: VertexSet) -> Vec<u32> {
        s.members
    }
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: u32,
    k: u32,
    edges: Vec<Edge>,
}

/// A k-uniform hypergraph on vertices `0..n` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: u32,
    k: u32,
    edges: Vec<Edge>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;
    fn try_from(r: RawHypergraph) -> Result<Self> {
        Hypergraph::build(r.n, r.k, r.edges)
    }
}

impl Hypergraph {
    /// Canonicalizes and validates an edge list. Edges may arrive in any
    /// order and with unsorted members; duplicates collapse.
    pub fn build(n: u32, k: u32, raw_edges: impl IntoIterator<Item = Edge>) -> Result<Hypergraph> {
        if k == 0 {
            return Err(Error::invalid("uniformity k must be positive"));
        }
        let mut edges = Vec::new();
        for mut e in raw_edges {
            e.sort_unstable();
            if e.len() != k as usize || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NonUniformEdge { k, edge: e });
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.push(e);
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, k, edges })
    }

    /// Constructor for edge lists already in canonical form (sorted members,
    /// sorted lexicographically, distinct). Used by the generators.
    pub(crate) fn from_canonical(n: u32, k: u32, edges: Vec<Edge>) -> Hypergraph {
        debug_assert!(edges.iter().all(|e| {
            e.len() == k as usize
                && e.windows(2).all(|w| w[0] < w[1])
                && e.last().is_none_or(|&v| v < n)
        }));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Hypergraph { n, k, edges }
    }

    /// The complete k-graph: all `C(n, k)` edges.
    pub fn complete(n: u32, k: u32) -> Result<Hypergraph> {
        if k == 0 || k > n {
            return Err(Error::invalid(format!("complete({n},{k}) requires 0 < k <= n")));
        }
        Ok(Hypergraph::from_canonical(n, k, subsets(n, k).collect()))
    }

    /// The extremal family: all k-sets meeting the cover set
    /// `{0, ..., ceil(s)-2}`. For `s <= 1` the cover set is empty and the
    /// hypergraph has no edges. Its minimum d-degree is one below the
    /// threshold formula while its fractional matching number stays at
    /// `ceil(s) - 1 < s`.
    pub fn extremal(n: u32, k: u32, s: &Rat) -> Result<Hypergraph> {
        use num_traits::Zero;
        if k == 0 || k > n {
            return Err(Error::invalid(format!("extremal({n},{k},_) requires 0 < k <= n")));
        }
        if *s <= Rat::zero() || s * &rat_u(k as u64) > rat_u(n as u64) {
            return Err(Error::invalid(format!(
                "extremal size s must satisfy 0 < s <= n/k = {n}/{k}"
            )));
        }
        let cover = (ceil_u64(s)? - 1) as u32;
        let edges = subsets(n, k).filter(|e| e[0] < cover).collect();
        Ok(Hypergraph::from_canonical(n, k, edges))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    /// Membership test; `edge` must be sorted for a positive answer.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        for &v in s.members() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(())
    }

    /// The link of `S`: the (k-|S|)-graph on `V \ S` whose edges are the sets
    /// `T` with `T ∪ S` an edge. Vertices are relabeled to `0..n-|S|`; the
    /// returned vector maps each new id back to its original id.
    pub fn link(&self, s: &VertexSet) -> Result<(Hypergraph, Vec<Vertex>)> {
        if s.len() as u32 >= self.k {
            return Err(Error::invalid(format!(
                "link center has {} vertices, needs fewer than k = {}",
                s.len(),
                self.k
            )));
        }
        self.check_subset(s)?;
        let old_ids: Vec<Vertex> = (0..self.n).filter(|&v| !s.contains(v)).collect();
        let mut new_of_old = vec![u32::MAX; self.n as usize];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if s.members().iter().all(|v| e.binary_search(v).is_ok()) {
                let t: Edge = e
                    .iter()
                    .filter(|&&v| !s.contains(v))
                    .map(|&v| new_of_old[v as usize])
                    .collect();
                edges.push(t);
            }
        }
        // Removing a common subset from sorted k-sets preserves lexicographic
        // order, so the list is already canonical.
        let link = Hypergraph::from_canonical(
            self.n - s.len() as u32,
            self.k - s.len() as u32,
            edges,
        );
        Ok((link, old_ids))
    }

    /// `d_H(S)`: the number of edges containing `S`.
    pub fn d_degree(&self, s: &VertexSet) -> Result<u64> {
        self.check_subset(s)?;
        let count = self
            .edges
            .iter()
            .filter(|e| s.members().iter().all(|v| e.binary_search(v).is_ok()))
            .count();
        Ok(count as u64)
    }

    /// Minimum d-degree with its lexicographically least witnessing d-set.
    /// `d = 0` returns the edge count with the empty witness.
    pub fn min_d_degree(&self, d: u32) -> Result<(u64, VertexSet)> {
        if d >= self.k {
            return Err(Error::invalid(format!(
                "degree order d = {d} must satisfy 0 <= d <= k-1 = {}",
                self.k - 1
            )));
        }
        if d == 0 {
            return Ok((self.edge_count(), VertexSet::empty()));
        }
        if d > self.n {
            return Err(Error::invalid(format!(
                "no {d}-subsets of a {}-vertex set",
                self.n
            )));
        }
        let masks = self.vertex_masks();
        let mut best: Option<(u64, Vec<u32>)> = None;
        for set in subsets(self.n, d) {
            let count = match &masks {
                Some(em) => {
                    let sm = mask_of(&set);
                    em.iter().filter(|&&m| m & sm == sm).count() as u64
                }
                None => {
                    let vs = VertexSet { members: set.clone() };
                    self.d_degree(&vs)?
                }
            };
            if best.as_ref().is_none_or(|(b, _)| count < *b) {
                best = Some((count, set));
                if count == 0 {
                    break; // lexicographically first zero-degree set wins
                }
            }
        }
        let (degree, witness) = best.expect("d <= n guarantees at least one d-set");
        Ok((degree, VertexSet { members: witness }))
    }

    fn vertex_masks(&self) -> Option<Vec<u128>> {
        if self.n <= 128 {
            Some(self.edges.iter().map(|e| mask_of(e)).collect())
        } else {
            None
        }
    }

    /// Terse text format: `n k m` then one line of k vertex ids per edge.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n, self.k, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut tokens = text.split_whitespace();
        let mut next_u32 = |what: &str| -> Result<u32> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad {what}")))
        };
        let n = next_u32("vertex count")?;
        let k = next_u32("uniformity")?;
        let m = next_u32("edge count")?;
        let mut edges = Vec::with_capacity(m as usize);
        for i in 0..m {
            let mut e = Vec::with_capacity(k as usize);
            for j in 0..k {
                e.push(next_u32(&format!("vertex {j} of edge {i}"))?);
            }
            edges.push(e);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after edge list".into()));
        }
        Hypergraph::build(n, k, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Hypergraph> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn mask_of(vertices: &[Vertex]) -> u128 {
    vertices.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

/// The ordered universe of all possible k-edges on `0..n`, with per-edge
/// vertex bitmasks. Subsets of the universe are addressed as `u64` bitmasks
/// (bit `i` = the i-th edge in lexicographic order), which is what the
/// exhaustive enumeration and the brute-force oracles iterate over.
pub struct EdgeUniverse {
    n: u32,
    k: u32,
    edges: Vec<Edge>,
    vmasks: Vec<u128>,
}

impl EdgeUniverse {
    pub fn new(n: u32, k: u32, limits: &Limits) -> Result<EdgeUniverse> {
        if k == 0 {
            return Err(Error::invalid("uniformity k must be positive"));
        }
        let count = binomial(n as u64, k as u64);
        let budget = limits.edge_cap.min(63) as u64;
        match u64::try_from(&count) {
            Ok(c) if c <= budget => {}
            _ => {
                return Err(Error::TooLarge {
                    what: "edge universe",
                    needed: u128::try_from(count).unwrap_or(u128::MAX),
                    budget,
                });
            }
        }
        if n > 128 {
            return Err(Error::invalid("exhaustive enumeration supports at most 128 vertices"));
        }
        let edges: Vec<Edge> = subsets(n, k).collect();
        let vmasks = edges.iter().map(|e| mask_of(e)).collect();
        Ok(EdgeUniverse { n, k, edges, vmasks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of hypergraphs over this universe, `2^len`.
    pub fn mask_count(&self) -> u64 {
        1u64 << self.edges.len()
    }

    pub fn graph_from_mask(&self, mask: u64) -> Hypergraph {
        let edges = self.edge_indices(mask).map(|i| self.edges[i].clone()).collect();
        Hypergraph::from_canonical(self.n, self.k, edges)
    }

    pub fn edge_indices(&self, mask: u64) -> impl Iterator<Item = usize> + '_ {
        let mut rest = mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// For each universe edge, the mask of universe edges disjoint from it.
    pub fn disjoint_masks(&self) -> Vec<u64> {
        self.vmasks
            .iter()
            .map(|&vi| {
                let mut mask = 0u64;
                for (j, &vj) in self.vmasks.iter().enumerate() {
                    if vi & vj == 0 {
                        mask |= 1u64 << j;
                    }
                }
                mask
            })
            .collect()
    }

    /// Does the hypergraph selected by `mask` contain `size` pairwise
    /// disjoint edges? `disjoint` comes from [`EdgeUniverse::disjoint_masks`].
    pub fn mask_has_matching(&self, mask: u64, size: u32, disjoint: &[u64]) -> bool {
        fn rec(avail: u64, size: u32, disjoint: &[u64]) -> bool {
            if size == 0 {
                return true;
            }
            if size == 1 {
                return avail != 0;
            }
            let mut rest = avail;
            while rest != 0 {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                // later members are restricted to higher indices, so each
                // matching is visited once, in increasing index order
                let higher = if e >= 63 { 0 } else { !0u64 << (e + 1) };
                if rec(avail & disjoint[e as usize] & higher, size - 1, disjoint) {
                    return true;
                }
            }
            false
        }
        rec(mask, size, disjoint)
    }

    /// Minimum d-degree of the hypergraph selected by `mask`, given the
    /// per-d-set covers from [`EdgeUniverse::d_set_covers`].
    pub fn mask_min_d_degree(&self, mask: u64, covers: &[u64]) -> u64 {
        covers
            .iter()
            .map(|c| (mask & c).count_ones() as u64)
            .min()
            .unwrap_or(mask.count_ones() as u64)
    }

    /// For each d-set of `0..n` in lexicographic order, the mask of universe
    /// edges containing it. An empty vector stands for `d = 0` (the minimum
    /// 0-degree is the edge count itself).
    pub fn d_set_covers(&self, d: u32) -> Vec<u64> {
        if d == 0 {
            return Vec::new();
        }
        subsets(self.n, d)
            .map(|set| {
                let sm = mask_of(&set);
                let mut cover = 0u64;
                for (i, &em) in self.vmasks.iter().enumerate() {
                    if em & sm == sm {
                        cover |= 1u64 << i;
                    }
                }
                cover
            })
            .collect()
    }

    /// Hypergraphs for every mask in `range`, in mask order. Disjoint ranges
    /// partition the enumeration deterministically across workers.
    pub fn graphs_in(&self, range: std::ops::Range<u64>) -> impl Iterator<Item = Hypergraph> + '_ {
        range.map(move |m| self.graph_from_mask(m))
    }
}

/// Every k-graph on `n` vertices exactly once, in lexicographic bitmask order
/// over the sorted edge universe. Refuses universes above `limits.edge_cap`.
pub fn enumerate_all(n: u32, k: u32, limits: &Limits) -> Result<impl Iterator<Item = Hypergraph>> {
    let universe = EdgeUniverse::new(n, k, limits)?;
    let end = universe.mask_count();
    Ok((0..end).map(move |m| universe.graph_from_mask(m)))
}

/// Erdős–Rényi-style random k-graph: each of the `C(n, k)` edges is included
/// independently with probability `p`.
///
/// The generator is fixed: a ChaCha8 stream keyed by `seed`, one exact
/// Bernoulli draw (`gen_ratio`) per edge in lexicographic order, so equal
/// `(n, k, p, seed)` produce identical hypergraphs on every platform. The
/// reduced denominator of `p` must fit in `u32`.
pub fn random_graph(n: u32, k: u32, p: &Rat, seed: u64) -> Result<Hypergraph> {
    use num_traits::{One, Signed, Zero};
    use rand::Rng;
    use rand::SeedableRng;

    if k == 0 || k > n {
        return Err(Error::invalid(format!("random_graph({n},{k},..) requires 0 < k <= n")));
    }
    if p.is_negative() || *p > Rat::one() {
        return Err(Error::invalid("edge probability must lie in [0, 1]"));
    }
    let numer: u32 = u32::try_from(p.numer())
        .map_err(|_| Error::invalid("probability numerator does not fit in u32"))?;
    let denom: u32 = u32::try_from(p.denom())
        .map_err(|_| Error::invalid("probability denominator does not fit in u32"))?;
    let _ = p.is_zero(); // p == 0 and p == 1 fall out of gen_ratio naturally
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let edges = subsets(n, k).filter(|_| rng.gen_ratio(numer, denom)).collect();
    Ok(Hypergraph::from_canonical(n, k, edges))
}

/// Number of k-graphs on n vertices, `2^C(n,k)`, when it fits in `u64`.
pub fn family_size(n: u32, k: u32) -> Option<u64> {
    let exp = binomial_u64(n as u64, k as u64)?;
    if exp >= 64 {
        None
    } else {
        Some(1u64 << exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn h(n: u32, k: u32, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::build(n, k, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn build_canonicalizes_and_deduplicates() {
        let g = Hypergraph::build(3, 2, vec![vec![2, 1], vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1], vec![1, 2]]);
        let empty = Hypergraph::build(5, 3, vec![]).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert_eq!(empty.n(), 5);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::build(4, 3, vec![vec![0, 1]]),
            Err(Error::NonUniformEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::build(4, 3, vec![vec![0, 1, 1]]),
            Err(Error::NonUniformEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::build(4, 3, vec![vec![0, 1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn complete_counts() {
        assert_eq!(Hypergraph::complete(6, 3).unwrap().edge_count(), 20);
        assert_eq!(Hypergraph::complete(4, 4).unwrap().edge_count(), 1);
        assert_eq!(Hypergraph::complete(5, 2).unwrap().edge_count(), 10);
        assert!(Hypergraph::complete(3, 4).is_err());
    }

    #[test]
    fn extremal_family() {
        // all 3-sets meeting {0}: C(6,3) - C(5,3) = 10
        let g = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert!(g.edges().iter().all(|e| e[0] == 0));

        // s <= 1: empty cover set, no edges
        let g1 = Hypergraph::extremal(6, 3, &rat(1, 1)).unwrap();
        assert_eq!(g1.edge_count(), 0);

        // C(32,4) - C(25,4) = 23310
        let g2 = Hypergraph::extremal(32, 4, &rat(8, 1)).unwrap();
        assert_eq!(g2.edge_count(), 23310);

        assert!(Hypergraph::extremal(6, 3, &rat(5, 2)).is_err()); // s > n/k
        assert!(Hypergraph::extremal(6, 3, &rat(0, 1)).is_err());
    }

    #[test]
    fn link_of_complete_is_complete() {
        let g = Hypergraph::complete(6, 3).unwrap();
        let (link, old_ids) = g.link(&VertexSet::new(vec![0]).unwrap()).unwrap();
        assert_eq!(link, Hypergraph::complete(5, 2).unwrap());
        assert_eq!(old_ids, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn link_of_extremal() {
        let g = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let (link, old_ids) = g.link(&VertexSet::new(vec![1]).unwrap()).unwrap();
        // pairs containing relabeled vertex 0 (the old cover vertex 0)
        assert_eq!(link.edge_count(), 4);
        assert!(link.edges().iter().all(|e| e[0] == 0));
        assert_eq!(old_ids[0], 0);
    }

    #[test]
    fn link_of_sparse_graph_is_empty() {
        let g = h(5, 3, &[&[0, 1, 2]]);
        let (link, _) = g.link(&VertexSet::new(vec![3]).unwrap()).unwrap();
        assert_eq!(link.n(), 4);
        assert_eq!(link.k(), 2);
        assert_eq!(link.edge_count(), 0);
    }

    #[test]
    fn link_rejects_large_centers() {
        let g = Hypergraph::complete(5, 2).unwrap();
        assert!(g.link(&VertexSet::new(vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn min_degree_examples() {
        let g = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let (d1, witness) = g.min_d_degree(1).unwrap();
        assert_eq!(d1, 4); // C(5,2) - C(4,2)
        assert_eq!(witness.members(), &[1]);

        let c = Hypergraph::complete(6, 3).unwrap();
        let (d2, witness) = c.min_d_degree(2).unwrap();
        assert_eq!(d2, 4); // C(4,1)
        assert_eq!(witness.members(), &[0, 1]);

        let big = Hypergraph::extremal(32, 4, &rat(8, 1)).unwrap();
        assert_eq!(big.min_d_degree(2).unwrap().0, 182); // C(30,2) - C(23,2)

        assert!(g.min_d_degree(3).is_err());
        let (d0, w0) = g.min_d_degree(0).unwrap();
        assert_eq!(d0, g.edge_count());
        assert!(w0.is_empty());
    }

    #[test]
    fn degree_equals_link_size() {
        let g = Hypergraph::extremal(7, 3, &rat(2, 1)).unwrap();
        for d in 1..3 {
            for set in subsets(7, d) {
                let s = VertexSet::new(set).unwrap();
                let (link, _) = g.link(&s).unwrap();
                assert_eq!(g.d_degree(&s).unwrap(), link.edge_count());
            }
        }
    }

    #[test]
    fn enumerate_all_counts() {
        let limits = Limits::default();
        assert_eq!(enumerate_all(3, 2, &limits).unwrap().count(), 8);
        assert_eq!(enumerate_all(5, 3, &limits).unwrap().count(), 1024);
        assert!(matches!(
            enumerate_all(8, 4, &limits),
            Err(Error::TooLarge { .. })
        )); // C(8,4) = 70 > 24
    }

    #[test]
    fn enumeration_is_distinct_and_partitionable() {
        let limits = Limits::default();
        let universe = EdgeUniverse::new(4, 2, &limits).unwrap();
        let all: std::collections::HashSet<_> =
            universe.graphs_in(0..universe.mask_count()).collect();
        assert_eq!(all.len(), 64);
        // two disjoint ranges cover the same family
        let mut split: Vec<_> = universe.graphs_in(0..40).collect();
        split.extend(universe.graphs_in(40..64));
        assert_eq!(split.len(), 64);
        assert_eq!(split.iter().cloned().collect::<std::collections::HashSet<_>>(), all);
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        let seed = 42;
        let empty = random_graph(6, 3, &rat(0, 1), seed).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = random_graph(6, 3, &rat(1, 1), seed).unwrap();
        assert_eq!(full, Hypergraph::complete(6, 3).unwrap());
        let a = random_graph(6, 3, &rat(1, 2), seed).unwrap();
        let b = random_graph(6, 3, &rat(1, 2), seed).unwrap();
        assert_eq!(a, b);
        let c = random_graph(6, 3, &rat(1, 2), seed + 1).unwrap();
        assert_ne!(a, c); // overwhelmingly likely and fixed by the generator
    }

    #[test]
    fn text_round_trip() {
        let g = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("6 3 10\n"));
        assert_eq!(Hypergraph::from_text(&text).unwrap(), g);
        assert!(Hypergraph::from_text("3 2").is_err());
        assert!(Hypergraph::from_text("3 2 1\n0 1 9").is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let json = g.to_json();
        assert_eq!(Hypergraph::from_json(&json).unwrap(), g);
        // non-canonical input is canonicalized on read
        let twisted = r#"{"n":3,"k":2,"edges":[[2,1],[0,1]]}"#;
        let parsed = Hypergraph::from_json(twisted).unwrap();
        assert_eq!(parsed.edges(), &[vec![0, 1], vec![1, 2]]);
        assert!(Hypergraph::from_json(r#"{"n":3,"k":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn mask_helpers() {
        let limits = Limits::default();
        let u = EdgeUniverse::new(5, 2, &limits).unwrap();
        let disjoint = u.disjoint_masks();
        // {0,1} and {2,3} are disjoint; find their indices
        let i = u.edges().iter().position(|e| e == &vec![0, 1]).unwrap();
        let j = u.edges().iter().position(|e| e == &vec![2, 3]).unwrap();
        assert_ne!(disjoint[i] & (1 << j), 0);
        let mask = (1u64 << i) | (1 << j);
        assert!(u.mask_has_matching(mask, 2, &disjoint));
        assert!(!u.mask_has_matching(mask, 3, &disjoint));
        // triangle on {0,1,2} has no 2-matching
        let tri: u64 = u
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e[1] <= 2)
            .map(|(i, _)| 1u64 << i)
            .sum();
        assert_eq!(tri.count_ones(), 3);
        assert!(!u.mask_has_matching(tri, 2, &disjoint));
        // minimum 1-degree of the triangle mask is 0 (vertices 3, 4)
        let covers = u.d_set_covers(1);
        assert_eq!(u.mask_min_d_degree(tri, &covers), 0);
    }
}
