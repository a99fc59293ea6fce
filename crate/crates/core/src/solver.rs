//! Exact fractional matching / vertex cover solver and certificates.
//!
//! [`nu_frac`] solves the matching LP by exact primal simplex and returns the
//! optimal primal (a fractional matching) together with the optimal dual (a
//! fractional vertex cover) of the same size — strong duality holds exactly,
//! and is asserted on every solve. [`certify`] checks a candidate pair
//! without solving anything: by weak duality, equal feasible sizes prove
//! optimality. [`nu_integral`] finds a maximum (integral) matching by
//! exhaustive branch-and-bound.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::ratio::{in_unit_interval, parse_rat, pq, Rat};
use crate::simplex::solve_unit_lp;
use crate::Limits;

/// A fractional matching candidate: weights on a subset of the edges.
/// Edges absent from the map carry weight zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeWeighting {
    pub weights: BTreeMap<Edge, Rat>,
}

impl EdgeWeighting {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn size(&self) -> Rat {
        self.weights.values().sum()
    }

    /// Unit weight on each of the given edges.
    pub fn unit(edges: impl IntoIterator<Item = Edge>) -> Self {
        let weights = edges.into_iter().map(|e| (e, Rat::one())).collect();
        EdgeWeighting { weights }
    }
}

/// A weighting of the full vertex set `0..n`. Used both for fractional
/// vertex covers and for the signed rescaled weightings of the reduction
/// machinery, so entries are not forced nonnegative here; feasibility is
/// checked where it matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeighting {
    pub weights: Vec<Rat>,
}

impl VertexWeighting {
    pub fn zeros(n: u32) -> Self {
        VertexWeighting { weights: vec![Rat::zero(); n as usize] }
    }

    pub fn constant(n: u32, value: Rat) -> Self {
        VertexWeighting { weights: vec![value; n as usize] }
    }

    /// Indicator weighting of a set of vertices.
    pub fn indicator(n: u32, ones: &[u32]) -> Self {
        let mut w = Self::zeros(n);
        for &v in ones {
            w.weights[v as usize] = Rat::one();
        }
        w
    }

    pub fn n(&self) -> u32 {
        self.weights.len() as u32
    }

    pub fn get(&self, v: u32) -> &Rat {
        &self.weights[v as usize]
    }

    pub fn size(&self) -> Rat {
        self.weights.iter().sum()
    }

    pub fn edge_sum(&self, edge: &[u32]) -> Rat {
        edge.iter().map(|&v| &self.weights[v as usize]).sum()
    }
}

impl Serialize for VertexWeighting {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.weights.iter().map(pq))
    }
}

impl<'de> Deserialize<'de> for VertexWeighting {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        let weights = raw
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(VertexWeighting { weights })
    }
}

/// Result of one LP solve: value, an optimal fractional matching, and an
/// optimal fractional vertex cover of exactly the same size.
#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub value: Rat,
    pub primal: EdgeWeighting,
    pub dual: VertexWeighting,
    pub pivots: u64,
}

/// Exact `ν'(H) = μ(H)` with optimal primal and dual solutions.
pub fn nu_frac(h: &Hypergraph) -> LpOutcome {
    let cols: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| v as usize).collect())
        .collect();
    let sol = solve_unit_lp(h.n() as usize, &cols);

    let mut primal = EdgeWeighting::new();
    for (edge, x) in h.edges().iter().zip(&sol.primal) {
        if !x.is_zero() {
            primal.weights.insert(edge.clone(), x.clone());
        }
    }
    let dual = VertexWeighting { weights: sol.dual };
    let outcome = LpOutcome { value: sol.value, primal, dual, pivots: sol.pivots };

    // Strong duality is exact; a violation would be a solver defect. Debug
    // builds go further and certify feasibility of both sides on every solve.
    assert_eq!(outcome.primal.size(), outcome.value, "primal size != LP value");
    assert_eq!(outcome.dual.size(), outcome.value, "dual size != LP value");
    debug_assert!(
        certify(h, &outcome.primal, &outcome.dual)
            .expect("solution is keyed by the hypergraph")
            .optimal,
        "simplex output failed certification"
    );
    outcome
}

/// What `certify` reports about a candidate matching/cover pair.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub matching_feasible: bool,
    pub cover_feasible: bool,
    #[serde(with = "crate::ratio::pq_serde")]
    pub matching_size: Rat,
    #[serde(with = "crate::ratio::pq_serde")]
    pub cover_size: Rat,
    pub optimal: bool,
}

/// Checks a fractional matching `f` and a fractional vertex cover `w`
/// against `H` without solving an LP. When both are feasible, weak duality
/// gives `size(f) <= size(w)`; equality proves both optimal and pins
/// `ν'(H) = μ(H)` to the common value.
///
/// Matching feasibility: all weights in `[0, 1]`, every per-vertex load at
/// most 1. Cover feasibility: all weights nonnegative and every edge sum at
/// least 1 (dual feasibility; weights above 1 are wasteful but legal).
/// Keys outside `H` are an [`Error::InvalidCertificate`], not infeasibility.
pub fn certify(h: &Hypergraph, f: &EdgeWeighting, w: &VertexWeighting) -> Result<Verdict> {
    if w.n() != h.n() {
        return Err(Error::InvalidCertificate(format!(
            "cover is over {} vertices, hypergraph has {}",
            w.n(),
            h.n()
        )));
    }
    let mut matching_feasible = true;
    let mut load = vec![Rat::zero(); h.n() as usize];
    for (edge, x) in &f.weights {
        if !h.contains_edge(edge) {
            return Err(Error::InvalidCertificate(format!("edge {edge:?} is not in the hypergraph")));
        }
        if !in_unit_interval(x) {
            matching_feasible = false;
        }
        for &v in edge {
            load[v as usize] += x;
        }
    }
    if load.iter().any(|l| *l > Rat::one()) {
        matching_feasible = false;
    }

    let mut cover_feasible = w.weights.iter().all(|y| !y.is_negative());
    if cover_feasible {
        for edge in h.edges() {
            if w.edge_sum(edge) < Rat::one() {
                cover_feasible = false;
                break;
            }
        }
    }

    let matching_size = f.size();
    let cover_size = w.size();
    let optimal = matching_feasible && cover_feasible && matching_size == cover_size;
    Ok(Verdict { matching_feasible, cover_feasible, matching_size, cover_size, optimal })
}

/// Exact maximum matching by branch-and-bound over the lexicographically
/// ordered edge list: at each node the next matching edge is chosen among
/// the remaining compatible edges, pruning with the bound
/// `count + floor(free_vertices / k) <= best`. Node count is charged against
/// `limits.node_cap`.
pub fn nu_integral(h: &Hypergraph, limits: &Limits) -> Result<(u64, Vec<Edge>)> {
    if h.n() > 128 {
        return Err(Error::invalid("integral matching search supports at most 128 vertices"));
    }
    let masks: Vec<u128> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
        .collect();

    struct Search<'a> {
        masks: &'a [u128],
        n: u32,
        k: u32,
        nodes: u64,
        cap: u64,
        best: u64,
        best_stack: Vec<usize>,
        stack: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, used: u128, count: u64) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::TooLarge {
                    what: "matching branch-and-bound",
                    needed: self.nodes as u128,
                    budget: self.cap,
                });
            }
            if count > self.best {
                self.best = count;
                self.best_stack = self.stack.clone();
            }
            let free = self.n as u64 - used.count_ones() as u64;
            if count + free / self.k as u64 <= self.best {
                return Ok(());
            }
            for j in start..self.masks.len() {
                if self.masks[j] & used == 0 {
                    self.stack.push(j);
                    self.run(j + 1, used | self.masks[j], count + 1)?;
                    self.stack.pop();
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        masks: &masks,
        n: h.n(),
        k: h.k(),
        nodes: 0,
        cap: limits.node_cap,
        best: 0,
        best_stack: Vec::new(),
        stack: Vec::new(),
    };
    search.run(0, 0, 0)?;
    let witness = search.best_stack.iter().map(|&j| h.edges()[j].clone()).collect();
    Ok((search.best, witness))
}

/// Serialized matching/cover pair. Weights are `"p/q"` strings in lowest
/// terms; zero-weight entries are omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub matching: Vec<CertificateEdge>,
    pub cover: Vec<CertificateVertex>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateEdge {
    pub edge: Edge,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateVertex {
    pub vertex: u32,
    pub weight: String,
}

impl Certificate {
    pub fn from_weightings(f: &EdgeWeighting, w: &VertexWeighting) -> Certificate {
        let matching = f
            .weights
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(edge, x)| CertificateEdge { edge: edge.clone(), weight: pq(x) })
            .collect();
        let cover = w
            .weights
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(v, y)| CertificateVertex { vertex: v as u32, weight: pq(y) })
            .collect();
        Certificate { matching, cover }
    }

    pub fn from_outcome(outcome: &LpOutcome) -> Certificate {
        Self::from_weightings(&outcome.primal, &outcome.dual)
    }

    /// Reconstructs the weightings over `h`, validating ids and arities.
    pub fn to_weightings(&self, h: &Hypergraph) -> Result<(EdgeWeighting, VertexWeighting)> {
        let mut f = EdgeWeighting::new();
        for item in &self.matching {
            let mut edge = item.edge.clone();
            edge.sort_unstable();
            if !h.contains_edge(&edge) {
                return Err(Error::InvalidCertificate(format!(
                    "edge {:?} is not in the hypergraph",
                    item.edge
                )));
            }
            let weight = parse_rat(&item.weight)?;
            if f.weights.insert(edge, weight).is_some() {
                return Err(Error::InvalidCertificate(format!(
                    "duplicate matching entry for edge {:?}",
                    item.edge
                )));
            }
        }
        let mut w = VertexWeighting::zeros(h.n());
        let mut seen = vec![false; h.n() as usize];
        for item in &self.cover {
            if item.vertex >= h.n() {
                return Err(Error::InvalidCertificate(format!(
                    "cover vertex {} out of range",
                    item.vertex
                )));
            }
            if std::mem::replace(&mut seen[item.vertex as usize], true) {
                return Err(Error::InvalidCertificate(format!(
                    "duplicate cover entry for vertex {}",
                    item.vertex
                )));
            }
            w.weights[item.vertex as usize] = parse_rat(&item.weight)?;
        }
        Ok((f, w))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Certificate> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `ν'(H) <= n/k` for every k-graph; handy upper end of the sandwich.
pub fn trivial_upper_bound(h: &Hypergraph) -> Rat {
    Rat::new(h.n().into(), h.k().into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn triangle() -> Hypergraph {
        Hypergraph::build(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn nu_frac_examples() {
        assert_eq!(nu_frac(&Hypergraph::complete(6, 3).unwrap()).value, rat(2, 1));
        assert_eq!(
            nu_frac(&Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap()).value,
            rat(1, 1)
        );
        assert_eq!(nu_frac(&triangle()).value, rat(3, 2));
    }

    #[test]
    fn nu_frac_outcome_is_self_certifying() {
        for h in [
            Hypergraph::complete(6, 3).unwrap(),
            Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap(),
            triangle(),
            Hypergraph::build(5, 3, vec![]).unwrap(),
        ] {
            let out = nu_frac(&h);
            let verdict = certify(&h, &out.primal, &out.dual).unwrap();
            assert!(verdict.optimal, "LP output must certify optimal on {h:?}");
        }
    }

    #[test]
    fn certify_extremal_beyond_lp_scale() {
        // 7 disjoint edges, each meeting the cover set {0..6} in exactly one
        // vertex, against the indicator cover: proves nu' = 7 without an LP.
        let h = Hypergraph::extremal(32, 4, &rat(8, 1)).unwrap();
        let edges: Vec<Edge> = (0..7u32)
            .map(|i| {
                let base = 7 + 3 * i;
                vec![i, base, base + 1, base + 2]
            })
            .collect();
        let f = EdgeWeighting::unit(edges);
        let w = VertexWeighting::indicator(32, &[0, 1, 2, 3, 4, 5, 6]);
        let verdict = certify(&h, &f, &w).unwrap();
        assert!(verdict.matching_feasible);
        assert!(verdict.cover_feasible);
        assert!(verdict.optimal);
        assert_eq!(verdict.matching_size, rat(7, 1));
    }

    #[test]
    fn certify_loose_pair_is_not_optimal() {
        let h = triangle();
        let f = EdgeWeighting::new();
        let w = VertexWeighting::constant(3, Rat::one());
        let verdict = certify(&h, &f, &w).unwrap();
        assert!(verdict.matching_feasible);
        assert!(verdict.cover_feasible);
        assert!(!verdict.optimal);
        assert_eq!(verdict.cover_size, rat(3, 1));
    }

    #[test]
    fn certify_triangle_half_weights() {
        let h = triangle();
        let mut f = EdgeWeighting::new();
        for e in h.edges() {
            f.weights.insert(e.clone(), rat(1, 2));
        }
        let w = VertexWeighting::constant(3, rat(1, 2));
        let verdict = certify(&h, &f, &w).unwrap();
        assert!(verdict.optimal);
        assert_eq!(verdict.matching_size, rat(3, 2));
    }

    #[test]
    fn certify_rejects_foreign_keys() {
        let h = triangle();
        let f = EdgeWeighting::unit(vec![vec![0, 1]]);
        let w_long = VertexWeighting::zeros(4);
        assert!(matches!(
            certify(&h, &f, &w_long),
            Err(Error::InvalidCertificate(_))
        ));
        let g = Hypergraph::build(4, 2, vec![vec![0, 1]]).unwrap();
        let bad_f = EdgeWeighting::unit(vec![vec![2, 3]]);
        assert!(matches!(
            certify(&g, &bad_f, &VertexWeighting::zeros(4)),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn certify_detects_infeasibility() {
        let h = triangle();
        // overloaded vertex
        let f = EdgeWeighting::unit(vec![vec![0, 1], vec![0, 2]]);
        let w = VertexWeighting::indicator(3, &[0]);
        let verdict = certify(&h, &f, &w).unwrap();
        assert!(!verdict.matching_feasible);
        // {0} misses edge {1,2}
        assert!(!verdict.cover_feasible);
    }

    #[test]
    fn nu_integral_examples() {
        let limits = Limits::default();
        assert_eq!(nu_integral(&Hypergraph::complete(6, 3).unwrap(), &limits).unwrap().0, 2);
        let (v, witness) =
            nu_integral(&Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap(), &limits).unwrap();
        assert_eq!(v, 1);
        assert_eq!(witness.len(), 1);
        assert_eq!(nu_integral(&Hypergraph::build(5, 3, vec![]).unwrap(), &limits).unwrap().0, 0);
    }

    #[test]
    fn nu_integral_respects_node_cap() {
        let limits = Limits { edge_cap: 24, node_cap: 3 };
        let h = Hypergraph::complete(9, 3).unwrap();
        assert!(matches!(
            nu_integral(&h, &limits),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let h = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let out = nu_frac(&h);
        let cert = Certificate::from_outcome(&out);
        let json = cert.to_json();
        let parsed = Certificate::from_json(&json).unwrap();
        let (f, w) = parsed.to_weightings(&h).unwrap();
        let verdict = certify(&h, &f, &w).unwrap();
        assert!(verdict.optimal);
        assert_eq!(verdict.matching_size, out.value);
    }

    #[test]
    fn certificate_rejects_unknown_edge() {
        let h = Hypergraph::extremal(6, 3, &rat(2, 1)).unwrap();
        let cert = Certificate {
            matching: vec![CertificateEdge { edge: vec![3, 4, 5], weight: "1/1".into() }],
            cover: vec![],
        };
        assert!(matches!(
            cert.to_weightings(&h),
            Err(Error::InvalidCertificate(_))
        ));
    }
}
