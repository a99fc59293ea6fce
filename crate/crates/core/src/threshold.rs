//! Degree thresholds for fractional and integral matchings: the closed-form
//! values, the range predicates under which they are exact, and brute-force
//! oracles that recompute them from the definition on enumerable instances.
//!
//! The threshold `f_d^s(k, n)` is the least `m` such that every k-graph on
//! `n` vertices with minimum d-degree at least `m` has a fractional matching
//! of size `s`; `m_d^s` is the integral analogue. The closed form
//! `C(n-d, k-d) - C(n-d-(ceil(s)-1), k-d) + 1` is always a lower bound
//! (witnessed by the extremal family) and is exact in the regimes tracked by
//! [`regime`]. The oracle computes `1 + max { δ_d(H) : H lacks the matching }`
//! by sweeping every hypergraph over the edge universe.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comb::{binomial, binomial_i};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeUniverse, Hypergraph};
use crate::ratio::{ceil_int, ceil_u64, parse_rat, pq, rat, rat_u, Rat};
use crate::solver::{certify, nu_frac, Certificate, EdgeWeighting, VertexWeighting};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fractional,
    Integral,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fractional => "fractional",
            Mode::Integral => "integral",
        }
    }
}

/// One threshold question: does minimum d-degree `m` force a (fractional or
/// integral) matching of size `s` in k-graphs on `n` vertices?
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    #[serde(with = "crate::ratio::pq_serde")]
    pub s: Rat,
    pub mode: Mode,
}

/// Range predicates and proof margins for a parameter tuple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegimeRecord {
    /// Exactness hypotheses: `k >= 4`, `2k/5 < d <= k-1`, `n >= 2k^2`,
    /// `s0(k,d) < s <= n/k` with `s0 = 0` for `d >= k/2` and `1` below.
    pub theorem: bool,
    /// `n >= (2k-1)s + k`, the range in which the integral `d = 0` threshold
    /// formula is known exactly.
    pub frankl: bool,
    /// `n >= (5k/3 - 2/3)s` and `s >= s0` for a configurable absolute
    /// constant `s0` (default 1; the constant itself is not verified here).
    pub fk: bool,
    /// `(n-d) - [(2(k-d)-1)·ceil(s) + (k-d)]`: slack of the first range on
    /// the link scale; nonnegative whenever the `d >= k/2` branch applies.
    #[serde(with = "crate::ratio::pq_serde")]
    pub margin_f: Rat,
    /// `(n-d) - (5(k-d)/3 - 2/3)·ceil(s)`: slack of the second range on the
    /// link scale; nonnegative whenever the `2k/5 < d < k/2` branch applies.
    #[serde(with = "crate::ratio::pq_serde")]
    pub margin_g: Rat,
    /// Outside every exactness regime only the lower-bound direction holds.
    #[serde(skip)]
    pub lower_bound_only: bool,
}

fn serialize_bigint<S: serde::Serializer>(
    v: &BigInt,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(small) => ser.serialize_i64(small),
        Err(_) => ser.serialize_str(&v.to_string()),
    }
}

/// Formula value, oracle value where computed, regime flags, and the
/// supporting artifacts for one query.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub query: ThresholdQuery,
    /// Closed-form threshold: exact in regime, a lower bound everywhere.
    /// Serialized as a JSON integer when it fits, decimal string otherwise.
    #[serde(serialize_with = "serialize_bigint")]
    pub formula: BigInt,
    /// `1 + max { δ_d(H) : H has no matching of size s }` over the full
    /// enumeration, when within budget.
    pub oracle: Option<u64>,
    pub regime: RegimeRecord,
    /// A maximizer of the oracle's inner maximum.
    pub witness: Option<Hypergraph>,
    /// Verified optimal matching/cover pair for the extremal family,
    /// pinning its fractional matching number to `ceil(s) - 1 < s`.
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn check_common(n: u32, k: u32, d: u32, s: &Rat) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 0 < k <= n, got k = {k}, n = {n}")));
    }
    if d >= k {
        return Err(Error::invalid(format!("need 0 <= d <= k-1 = {}, got d = {d}", k - 1)));
    }
    if !s.is_positive() || s * rat_u(k as u64) > rat_u(n as u64) {
        return Err(Error::invalid(format!("need 0 < s <= n/k = {n}/{k}, got s = {}", pq(s))));
    }
    Ok(())
}

/// `C(n-d, k-d) - C(n-d-(ceil(s)-1), k-d) + 1`: the minimum d-degree that
/// forces a fractional matching of size `s` (exact in regime, a lower bound
/// always). Binomials with a smaller top argument vanish.
pub fn f_formula(n: u32, k: u32, d: u32, s: &Rat) -> Result<BigInt> {
    check_common(n, k, d, s)?;
    let cover = ceil_u64(s)? as i64 - 1;
    let top = (n - d) as i64;
    let bottom = (k - d) as i64;
    Ok(binomial_i(top, bottom) - binomial_i(top - cover, bottom) + 1)
}

/// `C(n, k) - C(n-s+1, k) + 1`: the minimum edge count forcing an integral
/// matching of size `s` (exact in the Frankl / Frankl–Kupavskii ranges).
pub fn m0_formula(n: u32, k: u32, s: u64) -> Result<BigInt> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 0 < k <= n, got k = {k}, n = {n}")));
    }
    if s < 1 || s * k as u64 > n as u64 {
        return Err(Error::invalid(format!("need 1 <= s <= n/k = {n}/{k}, got s = {s}")));
    }
    let keep = n as i64 - s as i64 + 1;
    Ok(binomial(n as u64, k as u64) - binomial_i(keep, k as i64) + 1)
}

/// Default for the unverified absolute constant in the second range.
pub fn default_fk_s0() -> Rat {
    Rat::one()
}

/// Evaluates every range predicate and both proof margins exactly.
/// Never fails; out-of-range tuples simply report `false` everywhere.
pub fn regime(n: u32, k: u32, d: u32, s: &Rat, fk_s0: &Rat) -> RegimeRecord {
    if k == 0 {
        return RegimeRecord {
            theorem: false,
            frankl: false,
            fk: false,
            margin_f: Rat::zero(),
            margin_g: Rat::zero(),
            lower_bound_only: true,
        };
    }
    let nq = rat_u(n as u64);
    let kq = rat_u(k as u64);
    let s_ceil = Rat::from_integer(ceil_int(s));

    let upper_branch = d < k && 2 * d as u64 >= k as u64;
    let above_two_fifths = 5 * d as u64 > 2 * k as u64;
    let s0 = if upper_branch { Rat::zero() } else { Rat::one() };
    let theorem = k >= 4
        && above_two_fifths
        && d < k
        && n as u64 >= 2 * (k as u64) * (k as u64)
        && *s > s0
        && s * &kq <= nq;

    let frankl = nq >= rat_u(2 * k as u64 - 1) * s + &kq;
    let fk = *s >= *fk_s0 && nq * rat(3, 1) >= rat_u(5 * k as u64 - 2) * s;

    let rest = rat_u((n - d.min(n)) as u64);
    let link_k = rat_u((k - d.min(k)) as u64);
    let margin_f =
        &rest - ((rat(2, 1) * &link_k - Rat::one()) * &s_ceil + &link_k);
    let margin_g = &rest - (rat(5, 3) * &link_k - rat(2, 3)) * &s_ceil;

    RegimeRecord {
        theorem,
        frankl,
        fk,
        margin_f,
        margin_g,
        lower_bound_only: !theorem,
    }
}

/// Recomputes the threshold by definition: sweeps every k-graph over the
/// `C(n, k)` edge universe, keeps those without a matching of size `s`
/// (integral mode: `ν < s`; fractional mode: `ν' < s`, decided by the exact
/// LP), and maximizes the minimum d-degree over them. Returns
/// `1 + max δ_d` with the earliest maximizer in enumeration order, or 0 if
/// no hypergraph lacks the matching.
///
/// Fractional mode prunes soundly before solving any LP: graphs whose
/// d-degree cannot beat an already-achieved maximum are skipped, and a graph
/// with an integral matching of size `ceil(s)` has `ν' >= ν >= s`. Both
/// filters only discard hypergraphs that provably cannot contribute, so the
/// result equals the full-enumeration maximum; borderline cases always reach
/// the LP. The sweep is range-partitioned across workers deterministically.
pub fn brute_force_threshold(q: &ThresholdQuery, limits: &Limits) -> Result<ThresholdReport> {
    check_common(q.n, q.k, q.d, &q.s)?;
    if q.mode == Mode::Integral && !q.s.is_integer() {
        return Err(Error::invalid(format!(
            "integral mode requires an integer size, got s = {}",
            pq(&q.s)
        )));
    }
    let universe = EdgeUniverse::new(q.n, q.k, limits)?;
    let covers = universe.d_set_covers(q.d);
    let disjoint = universe.disjoint_masks();
    let s_whole = ceil_u64(&q.s)? as u32; // nu >= s iff nu >= ceil(s)
    let total = universe.mask_count();

    // Highest delta achieved by a feasible graph so far, plus one: a shared,
    // monotone hint. Skipping strictly below it never hides a maximizer, so
    // the outcome is independent of thread timing.
    let achieved = AtomicU64::new(0);
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);

    let best: Option<(u64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut local: Option<(u64, u64)> = None; // (delta, mask)
            for mask in lo..hi {
                match q.mode {
                    Mode::Integral => {
                        if universe.mask_has_matching(mask, s_whole, &disjoint) {
                            continue;
                        }
                        let delta = if q.d == 0 {
                            mask.count_ones() as u64
                        } else {
                            universe.mask_min_d_degree(mask, &covers)
                        };
                        if local.is_none_or(|(b, _)| delta > b) {
                            local = Some((delta, mask));
                        }
                    }
                    Mode::Fractional => {
                        let delta = if q.d == 0 {
                            mask.count_ones() as u64
                        } else {
                            universe.mask_min_d_degree(mask, &covers)
                        };
                        if delta + 1 < achieved.load(Ordering::Relaxed) {
                            continue;
                        }
                        if let Some((b, _)) = local {
                            if delta <= b {
                                continue;
                            }
                        }
                        if universe.mask_has_matching(mask, s_whole, &disjoint) {
                            continue;
                        }
                        let h = universe.graph_from_mask(mask);
                        if nu_frac(&h).value < q.s {
                            local = Some((delta, mask));
                            achieved.fetch_max(delta + 1, Ordering::Relaxed);
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) => x,
                (x, None) => x,
                (Some(a), Some(b)) => {
                    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
                        Some(a)
                    } else {
                        Some(b)
                    }
                }
            },
        );

    let formula = f_formula(q.n, q.k, q.d, &q.s)?;
    let (oracle, witness) = match best {
        Some((delta, mask)) => (Some(delta + 1), Some(universe.graph_from_mask(mask))),
        None => (Some(0), None),
    };
    Ok(ThresholdReport {
        query: q.clone(),
        formula,
        oracle,
        regime: regime(q.n, q.k, q.d, &q.s, &default_fk_s0()),
        witness,
        certificate: None,
        error: None,
    })
}

/// Builds and verifies the extremal-family certificate for `(n, k, s)`:
/// a matching of `ceil(s) - 1` disjoint edges, each meeting the cover set in
/// exactly one vertex, against the indicator cover of `{0..ceil(s)-2}`.
/// Equal sizes certify `ν' = ceil(s) - 1 < s`. When the degree sweep fits
/// the budget, the minimum d-degree is also checked against `formula - 1`.
pub fn extremal_certificate(
    n: u32,
    k: u32,
    d: u32,
    s: &Rat,
    limits: &Limits,
) -> Result<Certificate> {
    check_common(n, k, d, s)?;
    let h = Hypergraph::extremal(n, k, s)?;
    let t = ceil_u64(s)? as u32 - 1;
    let edges: Vec<Vec<u32>> = (0..t)
        .map(|i| {
            let mut e = vec![i];
            let base = t + i * (k - 1);
            e.extend(base..base + (k - 1));
            e
        })
        .collect();
    let f = EdgeWeighting::unit(edges);
    let cover_set: Vec<u32> = (0..t).collect();
    let w = VertexWeighting::indicator(n, &cover_set);
    let verdict = certify(&h, &f, &w)?;
    if !verdict.optimal || verdict.matching_size != rat_u(t as u64) {
        return Err(Error::InvalidCertificate(
            "extremal construction failed its own certificate".into(),
        ));
    }
    let degree_work = binomial(n as u64, d as u64) * BigInt::from(h.edge_count() + 1);
    if degree_work <= BigInt::from(limits.node_cap) {
        let (delta, _) = h.min_d_degree(d)?;
        let formula = f_formula(n, k, d, s)?;
        if BigInt::from(delta) + 1 != formula {
            return Err(Error::InvalidCertificate(
                "extremal degree does not match the formula".into(),
            ));
        }
    }
    Ok(Certificate::from_weightings(&f, &w))
}

/// A scan manifest: one threshold query per cell, optionally formula-only.
#[derive(Clone, Debug, Deserialize)]
pub struct Grid {
    pub cells: Vec<GridCell>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GridCell {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    /// `"p/q"` or a bare integer.
    pub s: String,
    #[serde(default = "GridCell::default_mode")]
    pub mode: Mode,
    /// Skip the oracle even when it would fit the budget.
    #[serde(default)]
    pub formula_only: bool,
}

impl GridCell {
    fn default_mode() -> Mode {
        Mode::Fractional
    }
}

/// Evaluates every cell: formula, regime, extremal certificate, and oracle
/// where requested and affordable. Failures are recorded per cell and the
/// scan continues; the output order matches the manifest order.
pub fn scan(grid: &Grid, limits: &Limits) -> Vec<ThresholdReport> {
    grid.cells
        .par_iter()
        .map(|cell| scan_cell(cell, limits))
        .collect()
}

fn scan_cell(cell: &GridCell, limits: &Limits) -> ThresholdReport {
    let mut error: Option<String> = None;
    let s = match parse_rat(&cell.s) {
        Ok(s) => s,
        Err(e) => {
            error = Some(e.to_string());
            Rat::zero()
        }
    };
    let query = ThresholdQuery { n: cell.n, k: cell.k, d: cell.d, s, mode: cell.mode };
    let regime_record = regime(cell.n, cell.k, cell.d, &query.s, &default_fk_s0());
    let mut formula = BigInt::zero();
    let mut certificate = None;
    let mut oracle = None;
    let mut witness = None;

    if error.is_none() {
        match f_formula(cell.n, cell.k, cell.d, &query.s) {
            Ok(v) => formula = v,
            Err(e) => error = Some(e.to_string()),
        }
    }
    if error.is_none() {
        match extremal_certificate(cell.n, cell.k, cell.d, &query.s, limits) {
            Ok(c) => certificate = Some(c),
            Err(e) => error = Some(e.to_string()),
        }
    }
    if error.is_none() && !cell.formula_only {
        match brute_force_threshold(&query, limits) {
            Ok(report) => {
                oracle = report.oracle;
                witness = report.witness;
            }
            Err(e) => error = Some(e.to_string()),
        }
    }
    ThresholdReport {
        query,
        formula,
        oracle,
        regime: regime_record,
        witness,
        certificate,
        error,
    }
}

pub const CSV_HEADER: &str = "n,k,d,s,mode,formula,oracle,theorem,frankl,fk,margin_f,margin_g,error";

/// One CSV row per report; scalar columns only, witnesses and certificates
/// stay in the JSON stream.
pub fn csv_row(r: &ThresholdReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.query.n,
        r.query.k,
        r.query.d,
        pq(&r.query.s),
        r.query.mode.as_str(),
        r.formula,
        r.oracle.map_or(String::new(), |v| v.to_string()),
        r.regime.theorem,
        r.regime.frankl,
        r.regime.fk,
        pq(&r.regime.margin_f),
        pq(&r.regime.margin_g),
        r.error.as_deref().unwrap_or("").replace(',', ";"),
    )
}
