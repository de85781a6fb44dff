//! Per-graph checks of the structural bounds satisfied by triangle-distinct
//! graphs.
//!
//! Comparisons against irrational thresholds are restated as integer
//! inequalities, so pass/fail never depends on floating point. The only
//! floating-point bounds are the common-neighbour census and degree-class
//! bounds, which are rounded upward before comparison: a reported violation is
//! always a real one.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::search::is_triangle_distinct;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("graph is not triangle-distinct; the bound only constrains triangle-distinct graphs")]
    NotTriangleDistinct,
    #[error("census parameters out of range: need 1 <= k <= n = {n} and 0 <= t <= k-1, got k = {k}, t = {t}")]
    CensusParameters { n: usize, k: usize, t: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    MaxDegreeLb,
    MinDegreeUb,
    RegularWindow,
    EdgeLb,
    EdgeLbDegreeCaps,
    PlanarityEdgeExcess,
    CensusBound,
    DegreeClassBound,
}

impl BoundName {
    pub const ALL: [BoundName; 8] = [
        BoundName::MaxDegreeLb,
        BoundName::MinDegreeUb,
        BoundName::RegularWindow,
        BoundName::EdgeLb,
        BoundName::EdgeLbDegreeCaps,
        BoundName::PlanarityEdgeExcess,
        BoundName::CensusBound,
        BoundName::DegreeClassBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::MaxDegreeLb => "max_degree_lb",
            BoundName::MinDegreeUb => "min_degree_ub",
            BoundName::RegularWindow => "regular_window",
            BoundName::EdgeLb => "edge_lb",
            BoundName::EdgeLbDegreeCaps => "edge_lb_degree_caps",
            BoundName::PlanarityEdgeExcess => "planarity_edge_excess",
            BoundName::CensusBound => "census_bound",
            BoundName::DegreeClassBound => "degree_class_bound",
        }
    }

    pub fn parse(s: &str) -> Option<BoundName> {
        BoundName::ALL.into_iter().find(|b| b.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
    /// The sufficient condition failed; nothing follows either way.
    Indeterminate,
}

/// One evaluated bound. Multi-instance bounds (per-degree caps, census sweep,
/// degree classes) report their tightest instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub bound: BoundName,
    pub comparison: String,
    /// Threshold, for display only; `status` is decided exactly.
    pub threshold: f64,
    pub observed: i64,
    pub status: Status,
    /// Instances evaluated (1 for single comparisons).
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl BoundEntry {
    fn single(bound: BoundName, comparison: &str, threshold: f64, observed: i64, holds: bool) -> Self {
        BoundEntry {
            bound,
            comparison: comparison.to_string(),
            threshold,
            observed,
            status: if holds { Status::Holds } else { Status::Violated },
            instances: 1,
            detail: None,
        }
    }

    fn not_applicable(bound: BoundName, comparison: &str, why: &str) -> Self {
        BoundEntry {
            bound,
            comparison: comparison.to_string(),
            threshold: f64::NAN,
            observed: 0,
            status: Status::NotApplicable,
            instances: 0,
            detail: Some(why.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub order: usize,
    pub edges: usize,
    pub triangle_distinct: bool,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.status == Status::Violated)
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn entry(&self, bound: BoundName) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.bound == bound)
    }
}

fn require_td(g: &Graph) -> Result<(), BoundsError> {
    if is_triangle_distinct(g) {
        Ok(())
    } else {
        Err(BoundsError::NotTriangleDistinct)
    }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Smallest `f64` strictly above `x` after a relative safety margin.
fn round_up(x: f64) -> f64 {
    (x * (1.0 + 4.0 * f64::EPSILON)).next_up()
}

/// `Δ² > 2n` and `3(n−1−δ)³ ≥ 2n`.
pub fn check_degree_bounds(g: &Graph) -> Result<[BoundEntry; 2], BoundsError> {
    require_td(g)?;
    let n = g.order() as u64;
    let max = g.max_degree().unwrap_or(0) as u64;
    let min = g.min_degree().unwrap_or(0) as u64;
    let gap = n - 1 - min;
    let nf = n as f64;
    Ok([
        BoundEntry::single(
            BoundName::MaxDegreeLb,
            "Δ > √(2n), checked as Δ² > 2n",
            (2.0 * nf).sqrt(),
            max as i64,
            max * max > 2 * n,
        ),
        BoundEntry::single(
            BoundName::MinDegreeUb,
            "δ ≤ n−1−(2n/3)^(1/3), checked as 3(n−1−δ)³ ≥ 2n",
            nf - 1.0 - (2.0 * nf / 3.0).cbrt(),
            min as i64,
            3 * gap * gap * gap >= 2 * n,
        ),
    ])
}

const REGULAR_WINDOW: &str = "√(2n) < d ≤ n−√(2n/3), checked as d² > 2n and 3(n−d)² ≥ 2n";

/// Degree window for regular triangle-distinct graphs. Not applicable unless
/// `g` is both regular and triangle-distinct.
pub fn check_regular_window(g: &Graph) -> BoundEntry {
    let Some(d) = g.regular_degree() else {
        return BoundEntry::not_applicable(BoundName::RegularWindow, REGULAR_WINDOW, "graph is not regular");
    };
    if !is_triangle_distinct(g) {
        return BoundEntry::not_applicable(BoundName::RegularWindow, REGULAR_WINDOW, "graph is not triangle-distinct");
    }
    let n = g.order() as u64;
    let d = d as u64;
    let nf = n as f64;
    let mut e = BoundEntry::single(
        BoundName::RegularWindow,
        REGULAR_WINDOW,
        nf - (2.0 * nf / 3.0).sqrt(),
        d as i64,
        d * d > 2 * n && 3 * (n - d) * (n - d) >= 2 * n,
    );
    e.detail = Some(format!("lower threshold {:.6}", (2.0 * nf).sqrt()));
    e
}

/// `2e > (1/3)(√(2n)−2)³`, decided exactly, plus the caps
/// `#{v : deg(v) ≤ d} ≤ C(d,2)+1` for every `d`.
pub fn check_edge_lower_bound(g: &Graph) -> Result<[BoundEntry; 2], BoundsError> {
    require_td(g)?;
    let n = g.order() as u128;
    let e = g.size() as u128;
    // With s = √(2n): 6e > (s−2)³ = s(2n+12) − 12n − 8, both sides of
    // 6e + 12n + 8 > s(2n+12) positive, so square.
    let lhs = 6 * e + 12 * n + 8;
    let rhs_factor = 2 * n + 12;
    let holds = lhs * lhs > 2 * n * rhs_factor * rhs_factor;
    let s = (2.0 * n as f64).sqrt();
    let bound = BoundEntry::single(
        BoundName::EdgeLb,
        "2e > (1/3)(√(2n)−2)³, checked as (6e+12n+8)² > 2n(2n+12)²",
        (s - 2.0).powi(3) / 3.0,
        2 * g.size() as i64,
        holds,
    );

    let nv = g.order();
    let mut at_most = vec![0u64; nv.max(1)];
    for v in 0..nv {
        at_most[g.deg(v)] += 1;
    }
    for d in 1..at_most.len() {
        at_most[d] += at_most[d - 1];
    }
    // Tightest instance: largest count − cap.
    let (worst_d, worst_count, worst_cap) = (0..at_most.len())
        .map(|d| (d, at_most[d], choose2(d as u64) + 1))
        .max_by_key(|&(d, c, cap)| (c as i64 - cap as i64, std::cmp::Reverse(d)))
        .expect("at least one degree");
    let caps_hold = (0..at_most.len()).all(|d| at_most[d] <= choose2(d as u64) + 1);
    let caps = BoundEntry {
        bound: BoundName::EdgeLbDegreeCaps,
        comparison: "#{v : deg(v) ≤ d} ≤ C(d,2)+1 for every d".to_string(),
        threshold: worst_cap as f64,
        observed: worst_count as i64,
        status: if caps_hold { Status::Holds } else { Status::Violated },
        instances: at_most.len() as u64,
        detail: Some(format!("tightest at d = {worst_d}")),
    };
    Ok([bound, caps])
}

/// `e > 3n−6` certifies non-planarity; otherwise indeterminate.
pub fn check_planarity_edge_excess(g: &Graph) -> BoundEntry {
    let n = g.order() as i64;
    let e = g.size() as i64;
    BoundEntry {
        bound: BoundName::PlanarityEdgeExcess,
        comparison: "e > 3n−6 (sufficient for non-planarity)".to_string(),
        threshold: (3 * n - 6) as f64,
        observed: e,
        status: if e > 3 * n - 6 { Status::Holds } else { Status::Indeterminate },
        instances: 1,
        detail: None,
    }
}

/// Vertices of complement-degree `k−1`, i.e. degree `n−k` in `g`.
fn degree_class(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&v| g.deg(v) + k == n).collect()
}

/// Largest subset of `class` whose complement neighbourhoods share at least
/// `need` vertices. Branch and bound over include/exclude decisions, with the
/// running intersection as the bounding set.
fn max_common_subset(gc: &Graph, class: &[usize], need: usize) -> usize {
    fn go(gc: &Graph, class: &[usize], need: usize, idx: usize, inter: &VertexSet, size: usize, best: &mut usize) {
        if size + (class.len() - idx) <= *best {
            return;
        }
        if idx == class.len() {
            *best = size;
            return;
        }
        let v = class[idx];
        let narrowed = inter.intersection(&gc.neighbors(v).expect("class vertex in range"));
        if narrowed.len() >= need {
            go(gc, class, need, idx + 1, &narrowed, size + 1, best);
        }
        go(gc, class, need, idx + 1, inter, size, best);
    }
    let mut best = 0;
    go(gc, class, need, 0, &VertexSet::full(gc.order()), 0, &mut best);
    best
}

/// `r_t`: the largest number of vertices of degree `k−1` in the complement
/// whose complement neighbourhoods have at least `k−1−t` common vertices.
pub fn common_neighbor_census(g: &Graph, k: usize, t: usize) -> Result<usize, BoundsError> {
    let n = g.order();
    if k < 1 || k > n || t > k - 1 {
        return Err(BoundsError::CensusParameters { n, k, t });
    }
    require_td(g)?;
    Ok(max_common_subset(&g.complement(), &degree_class(g, k), k - 1 - t))
}

/// `Σ_{i=0}^{t} (4cn)^{1−1/2^i}` with `4cn = four_cn`, rounded upward.
pub fn census_bound(four_cn: f64, t: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..=t {
        let exp = 1.0 - 0.5f64.powi(i as i32);
        sum = round_up(sum + round_up(four_cn.powf(exp)));
    }
    sum
}

/// `k (4cn)^{1−1/2^{k−1}}`, rounded upward.
pub fn degree_class_cap(four_cn: f64, k: usize) -> f64 {
    let exp = 1.0 - 0.5f64.powi(k as i32 - 1);
    round_up(k as f64 * round_up(four_cn.powf(exp)))
}

/// Sweeps `r_t ≤ Σ (4cn)^{1−1/2^i}` over every valid `(k, t)` with
/// `c = e(Ḡ)/n`, so `4cn = 4e(Ḡ)`.
pub fn check_census(g: &Graph) -> Result<BoundEntry, BoundsError> {
    require_td(g)?;
    const CMP: &str = "r_t ≤ Σ_{i=0..t} (4cn)^(1−1/2^i), c = e(Ḡ)/n";
    let n = g.order();
    let gc = g.complement();
    let ebar = gc.size();
    if ebar == 0 {
        return Ok(BoundEntry::not_applicable(BoundName::CensusBound, CMP, "complement has no edges (c = 0)"));
    }
    let four_cn = round_up(4.0 * ebar as f64);
    let mut instances = 0u64;
    let mut holds = true;
    // (slack, k, t, r, bound)
    let mut tightest: Option<(f64, usize, usize, usize, f64)> = None;
    for k in 1..=n {
        let class = degree_class(g, k);
        for t in 0..k {
            instances += 1;
            let r = if class.is_empty() {
                0
            } else {
                max_common_subset(&gc, &class, k - 1 - t)
            };
            let bound = census_bound(four_cn, t);
            if (r as f64) > bound {
                holds = false;
            }
            let slack = bound - r as f64;
            if tightest.is_none_or(|(s, ..)| slack < s) {
                tightest = Some((slack, k, t, r, bound));
            }
        }
    }
    let (_, k, t, r, bound) = tightest.expect("n >= 1");
    Ok(BoundEntry {
        bound: BoundName::CensusBound,
        comparison: CMP.to_string(),
        threshold: bound,
        observed: r as i64,
        status: if holds { Status::Holds } else { Status::Violated },
        instances,
        detail: Some(format!("tightest at k = {k}, t = {t}; 4cn = {}", 4 * ebar)),
    })
}

/// For each `k`, the number of degree-`(n−k)` vertices is at most
/// `k(4cn)^{1−1/2^{k−1}}`. Applies when `e(G) ≥ C(n,2) − cn`.
pub fn check_degree_class_bound(g: &Graph, c: Ratio<u64>) -> Result<BoundEntry, BoundsError> {
    require_td(g)?;
    const CMP: &str = "#{v : deg(v) = n−k} ≤ k(4cn)^(1−1/2^(k−1))";
    let n = g.order() as u64;
    let ebar = choose2(n) - g.size() as u64;
    if *c.numer() == 0 {
        return Ok(BoundEntry::not_applicable(BoundName::DegreeClassBound, CMP, "requires c > 0"));
    }
    // e(Ḡ) ≤ c·n  ⇔  e(Ḡ)·den ≤ num·n
    if (ebar as u128) * (*c.denom() as u128) > (*c.numer() as u128) * (n as u128) {
        return Ok(BoundEntry::not_applicable(
            BoundName::DegreeClassBound,
            CMP,
            "e(G) < C(n,2) − cn",
        ));
    }
    let four_cn = round_up(4.0 * (*c.numer() as f64) * n as f64 / *c.denom() as f64);
    let mut holds = true;
    let mut tightest: Option<(f64, u64, usize, f64)> = None;
    for k in 1..=n {
        let count = (0..g.order()).filter(|&v| g.deg(v) as u64 + k == n).count();
        let cap = degree_class_cap(four_cn, k as usize);
        if count as f64 > cap {
            holds = false;
        }
        let slack = cap - count as f64;
        if tightest.is_none_or(|(s, ..)| slack < s) {
            tightest = Some((slack, k, count, cap));
        }
    }
    let (_, k, count, cap) = tightest.expect("n >= 1");
    Ok(BoundEntry {
        bound: BoundName::DegreeClassBound,
        comparison: CMP.to_string(),
        threshold: cap,
        observed: count as i64,
        status: if holds { Status::Holds } else { Status::Violated },
        instances: n,
        detail: Some(format!("tightest at k = {k}; c = {}/{}", c.numer(), c.denom())),
    })
}

/// The tightest admissible `c`: `e(Ḡ)/n`.
pub fn tight_c(g: &Graph) -> Ratio<u64> {
    let n = g.order() as u64;
    Ratio::new(choose2(n) - g.size() as u64, n.max(1))
}

/// Evaluates the selected bounds. For a graph that is not triangle-distinct
/// every entry other than the planarity edge count is not applicable.
pub fn bounds_report(g: &Graph, selection: &[BoundName]) -> BoundsReport {
    let td = is_triangle_distinct(g);
    let mut entries = Vec::new();
    let wants = |b: BoundName| selection.contains(&b);
    let skip = |b: BoundName| BoundEntry::not_applicable(b, "", "graph is not triangle-distinct");
    if wants(BoundName::MaxDegreeLb) || wants(BoundName::MinDegreeUb) {
        match check_degree_bounds(g) {
            Ok(pair) => entries.extend(pair.into_iter().filter(|e| wants(e.bound))),
            Err(_) => entries.extend(
                [BoundName::MaxDegreeLb, BoundName::MinDegreeUb]
                    .into_iter()
                    .filter(|&b| wants(b))
                    .map(skip),
            ),
        }
    }
    if wants(BoundName::RegularWindow) {
        entries.push(check_regular_window(g));
    }
    if wants(BoundName::EdgeLb) || wants(BoundName::EdgeLbDegreeCaps) {
        match check_edge_lower_bound(g) {
            Ok(pair) => entries.extend(pair.into_iter().filter(|e| wants(e.bound))),
            Err(_) => entries.extend(
                [BoundName::EdgeLb, BoundName::EdgeLbDegreeCaps]
                    .into_iter()
                    .filter(|&b| wants(b))
                    .map(skip),
            ),
        }
    }
    if wants(BoundName::PlanarityEdgeExcess) {
        entries.push(check_planarity_edge_excess(g));
    }
    if wants(BoundName::CensusBound) {
        entries.push(check_census(g).unwrap_or_else(|_| skip(BoundName::CensusBound)));
    }
    if wants(BoundName::DegreeClassBound) {
        entries.push(check_degree_class_bound(g, tight_c(g)).unwrap_or_else(|_| skip(BoundName::DegreeClassBound)));
    }
    BoundsReport {
        schema_version: SCHEMA_VERSION,
        order: g.order(),
        edges: g.size(),
        triangle_distinct: td,
        entries,
    }
}
