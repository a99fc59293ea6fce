//! From a minimum fractional vertex cover to a lower bound on `ν'` via links.
//!
//! The pipeline: take an optimal cover `ω` of `H`, pass to the tight
//! expansion `H_ω` (all k-sets of weight sum at least 1, which preserves
//! `ν'`), drop the d vertices of smallest weight, and rescale the rest by
//! `(ω - w0) / (1 - k·w0)` where `w0` is the mean dropped weight. The
//! rescaled weighting covers the link of the dropped set, so the link's
//! cover number lower-bounds `ν'(H)`; if `w0 >= 1/k` the bound `n/k` is
//! already forced and the rescale is skipped. Minimizing over every d-set
//! gives [`link_floor`]: `ν'(H) >= min(link_floor(H, d), n/k)`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comb::{binomial, subsets};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexSet};
use crate::ratio::{pq, rat_u, Rat};
use crate::solver::{nu_frac, VertexWeighting};
use crate::Limits;

/// `H_ω`: the k-graph on `V(H)` whose edges are all k-sets with `ω`-weight
/// sum at least 1. Requires `ω` to be a fractional vertex cover of `H`, and
/// then `E(H) ⊆ E(H_ω)` and `ν'(H_ω) = ν'(H)` when `ω` is optimal.
pub fn tight_expansion(h: &Hypergraph, w: &VertexWeighting) -> Result<Hypergraph> {
    if w.n() != h.n() {
        return Err(Error::invalid(format!(
            "weighting is over {} vertices, hypergraph has {}",
            w.n(),
            h.n()
        )));
    }
    for edge in h.edges() {
        let sum = w.edge_sum(edge);
        if sum < Rat::one() {
            return Err(Error::NotACover { edge: edge.clone(), sum: pq(&sum) });
        }
    }
    let one = Rat::one();
    let edges = subsets(h.n(), h.k())
        .filter(|e| w.edge_sum(e) >= one)
        .collect();
    Ok(Hypergraph::from_canonical(h.n(), h.k(), edges))
}

/// Outcome of the bottom-d selection and rescale.
#[derive(Clone, Debug)]
pub enum RescaleOutcome {
    /// The mean bottom-d weight already reached `1/k`, which forces
    /// `ν' >= n·w0 >= n/k`; the carried bound is `n/k`.
    EarlyExit { w0: Rat, bound: Rat },
    /// The dropped set `S`, the mean dropped weight `w0`, and the rescaled
    /// weighting `w2 = (ω' - w0) / (1 - k·w0)`, where `ω'` replaces every
    /// weight on `S` by `w0`. `w2` vanishes on `S` and may be negative on
    /// vertices weighing less than `w0`; only sums over link edges matter.
    Rescaled { s: VertexSet, w0: Rat, w2: VertexWeighting },
}

/// Sorts vertices by weight descending (ties by ascending id), drops the
/// last `d`, and rescales. `k` is the ambient uniformity.
pub fn bottom_d_rescale(w: &VertexWeighting, d: u32, k: u32) -> Result<RescaleOutcome> {
    if k == 0 || d == 0 || d > k - 1 {
        return Err(Error::invalid(format!("need 1 <= d <= k-1, got d = {d}, k = {k}")));
    }
    let n = w.n();
    if n < k {
        return Err(Error::invalid(format!(
            "weighting is over {n} vertices, need at least k = {k}"
        )));
    }
    let mut order: Vec<u32> = (0..n).collect();
    // stable sort, descending by weight, ties already in ascending id order
    order.sort_by(|&a, &b| w.get(b).cmp(w.get(a)));
    let mut dropped: Vec<u32> = order[(n - d) as usize..].to_vec();
    dropped.sort_unstable();
    let s = VertexSet::new(dropped)?;

    let d_rat = rat_u(d as u64);
    let w0: Rat = s.members().iter().map(|&v| w.get(v)).sum::<Rat>() / &d_rat;

    let k_rat = rat_u(k as u64);
    if w0 >= Rat::one() / &k_rat {
        let bound = Rat::new(BigInt::from(n), BigInt::from(k));
        return Ok(RescaleOutcome::EarlyExit { w0, bound });
    }

    let denom = Rat::one() - &k_rat * &w0;
    let weights = (0..n)
        .map(|v| {
            let base = if s.contains(v) { w0.clone() } else { w.get(v).clone() };
            (base - &w0) / &denom
        })
        .collect();
    Ok(RescaleOutcome::Rescaled { s, w0, w2: VertexWeighting { weights } })
}

/// Result of checking a rescaled weighting against a link.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkCoverCheck {
    pub ok: bool,
    /// First link edge (in original vertex ids) whose weight sum is below 1.
    pub violation: Option<Edge>,
}

/// Verifies that `w2` (indexed by original vertex ids) sums to at least 1 on
/// every edge of `link(h_omega, s)`. Passes vacuously on an empty link.
pub fn link_cover_check(
    h_omega: &Hypergraph,
    s: &VertexSet,
    w2: &VertexWeighting,
) -> Result<LinkCoverCheck> {
    if w2.n() != h_omega.n() {
        return Err(Error::invalid("rescaled weighting has the wrong domain"));
    }
    let (link, old_ids) = h_omega.link(s)?;
    for edge in link.edges() {
        let sum: Rat = edge.iter().map(|&v| w2.get(old_ids[v as usize])).sum();
        if sum < Rat::one() {
            let original: Edge = edge.iter().map(|&v| old_ids[v as usize]).collect();
            return Ok(LinkCoverCheck { ok: false, violation: Some(original) });
        }
    }
    Ok(LinkCoverCheck { ok: true, violation: None })
}

/// `min_S ν'(link(H, S))` over all d-sets, with the lexicographically least
/// minimizer. By the rescale argument, `ν'(H) >= min(link_floor, n/k)`.
/// The per-set LPs run in parallel; `C(n, d) * (e(H) + 1)` is charged
/// against `limits.node_cap`.
pub fn link_floor(h: &Hypergraph, d: u32, limits: &Limits) -> Result<(Rat, VertexSet)> {
    if h.k() == 0 || d == 0 || d > h.k() - 1 {
        return Err(Error::invalid(format!(
            "need 1 <= d <= k-1 = {}, got d = {d}",
            h.k().saturating_sub(1)
        )));
    }
    if d > h.n() {
        return Err(Error::invalid(format!("no {d}-subsets of a {}-vertex set", h.n())));
    }
    let d_sets = binomial(h.n() as u64, d as u64);
    let work = d_sets * BigInt::from(h.edge_count() + 1);
    if work > BigInt::from(limits.node_cap) {
        return Err(Error::TooLarge {
            what: "link floor",
            needed: u128::try_from(work).unwrap_or(u128::MAX),
            budget: limits.node_cap,
        });
    }

    let sets: Vec<Vec<u32>> = subsets(h.n(), d).collect();
    let best = sets
        .into_par_iter()
        .enumerate()
        .map(|(idx, members)| {
            let s = VertexSet::new(members).expect("subsets are distinct");
            let (link, _) = h.link(&s).expect("valid d-set");
            (nu_frac(&link).value, idx, s)
        })
        .reduce_with(|a, b| {
            // min by value, ties by the earlier (lexicographically smaller) set
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => {
                    if a.1 <= b.1 {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .expect("at least one d-set");
    Ok((best.0, best.2))
}

/// Which branch a walkthrough took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    EarlyExit,
    Rescale,
}

/// Every intermediate value of one full run of the rescale pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct WalkthroughTrace {
    /// The optimal fractional vertex cover the pipeline starts from.
    pub cover: VertexWeighting,
    pub h_omega_edges: u64,
    #[serde(with = "crate::ratio::pq_serde")]
    pub nu_prime_h: Rat,
    #[serde(with = "crate::ratio::pq_serde")]
    pub nu_prime_h_omega: Rat,
    pub branch: Branch,
    pub s: Option<VertexSet>,
    #[serde(with = "crate::ratio::pq_serde")]
    pub w0: Rat,
    pub w2: Option<VertexWeighting>,
    pub link_check: Option<LinkCoverCheck>,
    /// Proven lower bound on `ν'(H)`: `n/k` on early exit, the link's cover
    /// number on the rescale branch.
    #[serde(with = "crate::ratio::pq_serde")]
    pub final_bound: Rat,
    /// True iff every internal assertion held exactly.
    pub ok: bool,
}

impl WalkthroughTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serialization cannot fail")
    }
}

/// Executes the whole pipeline on a concrete instance and checks each step:
/// the tight expansion preserves `ν'` exactly; on the rescale branch the
/// rescaled weighting covers the link, its total is sandwiched between the
/// link's cover number and the cover total; the final bound never exceeds
/// `ν'(H)`. The k-set sweep of the tight expansion is charged against
/// `limits.node_cap`.
pub fn proof_walkthrough(h: &Hypergraph, d: u32, limits: &Limits) -> Result<WalkthroughTrace> {
    if h.k() == 0 || d == 0 || d > h.k() - 1 {
        return Err(Error::invalid(format!(
            "need 1 <= d <= k-1 = {}, got d = {d}",
            h.k().saturating_sub(1)
        )));
    }
    let k_sets = binomial(h.n() as u64, h.k() as u64);
    if k_sets > BigInt::from(limits.node_cap) {
        return Err(Error::TooLarge {
            what: "tight expansion",
            needed: u128::try_from(k_sets).unwrap_or(u128::MAX),
            budget: limits.node_cap,
        });
    }

    let outcome = nu_frac(h);
    let cover = outcome.dual.clone();
    let nu_prime_h = outcome.value.clone();

    let h_omega = tight_expansion(h, &cover)?;
    let nu_prime_h_omega = nu_frac(&h_omega).value;
    let expansion_exact = nu_prime_h == nu_prime_h_omega;

    match bottom_d_rescale(&cover, d, h.k())? {
        RescaleOutcome::EarlyExit { w0, bound } => {
            // nu' <= n/k always, and the early branch forces nu' >= n/k,
            // so equality must hold exactly.
            let ok = expansion_exact && nu_prime_h == bound;
            Ok(WalkthroughTrace {
                cover,
                h_omega_edges: h_omega.edge_count(),
                nu_prime_h,
                nu_prime_h_omega,
                branch: Branch::EarlyExit,
                s: None,
                w0,
                w2: None,
                link_check: None,
                final_bound: bound,
                ok,
            })
        }
        RescaleOutcome::Rescaled { s, w0, w2 } => {
            let check = link_cover_check(&h_omega, &s, &w2)?;
            let (link, _) = h_omega.link(&s)?;
            let mu_link = nu_frac(&link).value;
            let w2_total = w2.size();
            let cover_total = cover.size();
            let chain_ok = w2_total >= mu_link && w2_total <= cover_total;
            let bound_ok = mu_link <= nu_prime_h;
            let ok = expansion_exact && check.ok && chain_ok && bound_ok;
            Ok(WalkthroughTrace {
                cover,
                h_omega_edges: h_omega.edge_count(),
                nu_prime_h,
                nu_prime_h_omega,
                branch: Branch::Rescale,
                s: Some(s),
                w0,
                w2: Some(w2),
                link_check: Some(check),
                final_bound: mu_link,
                ok,
            })
        }
    }
}
