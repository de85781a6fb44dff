//! Exhaustive search for triangle-distinct graphs of small order.
//!
//! Every labeled graph on `n` vertices is identified with a counter value
//! whose low `C(n,2)` bits are its upper-triangle adjacency in graph6 column
//! order. The counter range is processed in blocks; each block is split into
//! disjoint sub-ranges scanned by a fixed-size worker pool, and the per-range
//! tallies are merged in range order, so the result does not depend on the
//! worker count. A checkpoint is written after every block.

mod canon;
mod checkpoint;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;

pub use canon::{automorphism_count, canonical_form, canonical_labeling, CanonicalForm, CANON_MAX_ORDER};
pub use checkpoint::Checkpoint;

pub const SCHEMA_VERSION: u32 = 1;
pub const MIN_SEARCH_ORDER: usize = 2;
pub const MAX_SEARCH_ORDER: usize = 9;
/// Orders at or above this need [`SearchOptions::allow_long`].
pub const LONG_RUN_ORDER: usize = 9;
pub const DEFAULT_BLOCK_SIZE: u64 = 1 << 24;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search order {0} outside the supported range {MIN_SEARCH_ORDER}..={MAX_SEARCH_ORDER}")]
    OrderOutOfRange(usize),
    #[error("order {0} enumerates 2^{pairs} labeled graphs; enable the long-running flag to proceed", pairs = pair_count(*.0))]
    LongRunNotEnabled(usize),
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("block size must be at least 1")]
    ZeroBlockSize,
    #[error("canonical form requested for order {0}, above the factorial-search limit {CANON_MAX_ORDER}")]
    CanonicalOrder(usize),
    #[error("checkpoint I/O: {0}")]
    CheckpointIo(#[from] std::io::Error),
    #[error("malformed checkpoint: {0}")]
    CheckpointFormat(String),
    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),
    #[error("search interrupted at {} of {} labeled graphs", .partial.visited, .partial.range_end - .partial.range_start)]
    Interrupted {
        partial: Box<SearchReport>,
        checkpoint: Option<PathBuf>,
    },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// True iff `g` has at least two vertices and pairwise distinct triangle-degrees.
pub fn is_triangle_distinct(g: &Graph) -> bool {
    if g.order() < 2 {
        return false;
    }
    let mut tri = g.triangle_degrees();
    tri.sort_unstable();
    tri.windows(2).all(|w| w[0] != w[1])
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Keep only `d`-regular graphs.
    pub regular_degree: Option<usize>,
    pub max_edges: Option<usize>,
    pub workers: usize,
    /// Stop computing triangle-degrees at the first repeated value.
    pub prune: bool,
    pub allow_long: bool,
    pub count_automorphisms: bool,
    pub block_size: u64,
    pub checkpoint: Option<PathBuf>,
    /// Interrupt after this many blocks have been scanned in this session.
    pub stop_after_blocks: Option<u64>,
    pub cancel: Option<Arc<AtomicBool>>,
    /// Print per-block progress on stderr.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            regular_degree: None,
            max_edges: None,
            workers: 1,
            prune: true,
            allow_long: false,
            count_automorphisms: false,
            block_size: DEFAULT_BLOCK_SIZE,
            checkpoint: None,
            stop_after_blocks: None,
            cancel: None,
            progress: false,
        }
    }
}

/// One isomorphism class of triangle-distinct graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TdClass {
    pub canonical: CanonicalForm,
    pub edges: usize,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    /// Strictly decreasing.
    pub triangle_sequence: Vec<usize>,
    /// Labeled graphs in the scanned range belonging to this class.
    pub labeled_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub order: usize,
    pub regular_degree: Option<usize>,
    pub max_edges: Option<usize>,
    pub pruned: bool,
    pub range_start: u64,
    pub range_end: u64,
    /// Counter values scanned so far.
    pub visited: u64,
    /// Labeled graphs that passed the degree/edge filters and were tested.
    pub labeled_count: u64,
    pub td_labeled: u64,
    pub td_classes: Vec<TdClass>,
    pub min_edges: Option<usize>,
    /// `td_labeled = Σ n!/|Aut|` over classes; only evaluated on complete runs
    /// with automorphism counting enabled.
    pub automorphism_check: Option<bool>,
    pub complete: bool,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.td_classes.iter().any(|c| &c.canonical == form)
    }
}

#[derive(Debug, Clone, Copy)]
struct Filter {
    regular_degree: Option<u32>,
    max_edges: Option<u32>,
    prune: bool,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub(crate) struct Tally {
    pub labeled: u64,
    pub td: u64,
    /// Triangle-order pair code -> labeled graphs seen.
    pub classes: BTreeMap<u64, u64>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.labeled += other.labeled;
        self.td += other.td;
        for (code, count) in other.classes {
            *self.classes.entry(code).or_insert(0) += count;
        }
    }
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Scans counter values `start..end` for graphs of order `n`.
fn scan(n: usize, start: u64, end: u64, filter: Filter) -> Tally {
    let mut offsets = [0u32; MAX_SEARCH_ORDER];
    for (j, off) in offsets.iter_mut().enumerate().take(n) {
        *off = pair_count(j);
    }
    let mut tally = Tally::default();
    let mut rows = [0u16; MAX_SEARCH_ORDER];
    let mut tri = [0u32; MAX_SEARCH_ORDER];
    for code in start..end {
        let m = code.count_ones();
        if filter.max_edges.is_some_and(|max| m > max) {
            continue;
        }
        if let Some(d) = filter.regular_degree {
            if 2 * m != n as u32 * d {
                continue;
            }
        }
        rows[..n].fill(0);
        for j in 1..n {
            let col = ((code >> offsets[j]) & ((1 << j) - 1)) as u16;
            rows[j] |= col;
            let mut rest = col;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rows[i as usize] |= 1 << j;
                rest &= rest - 1;
            }
        }
        if let Some(d) = filter.regular_degree {
            if rows[..n].iter().any(|r| r.count_ones() != d) {
                continue;
            }
        }
        tally.labeled += 1;

        let mut seen = 0u64;
        let mut distinct = true;
        for v in 0..n {
            let nv = rows[v];
            let mut twice = 0;
            let mut rest = nv;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                twice += (rows[u] & nv).count_ones();
                rest &= rest - 1;
            }
            let t = twice / 2;
            tri[v] = t;
            if seen >> t & 1 == 1 {
                distinct = false;
                if filter.prune {
                    break;
                }
            }
            seen |= 1 << t;
        }
        if !distinct {
            continue;
        }
        tally.td += 1;
        let key = canon::triangle_order_code(n, &rows[..n], &tri[..n]).expect("distinct triangle-degrees");
        *tally.classes.entry(key).or_insert(0) += 1;
    }
    tally
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn validate(n: usize, opts: &SearchOptions) -> Result<(), SearchError> {
    if !(MIN_SEARCH_ORDER..=MAX_SEARCH_ORDER).contains(&n) {
        return Err(SearchError::OrderOutOfRange(n));
    }
    if n >= LONG_RUN_ORDER && !opts.allow_long {
        return Err(SearchError::LongRunNotEnabled(n));
    }
    if opts.workers == 0 {
        return Err(SearchError::ZeroWorkers);
    }
    if opts.block_size == 0 {
        return Err(SearchError::ZeroBlockSize);
    }
    Ok(())
}

/// Enumerates every labeled graph on `n` vertices (subject to the filters in
/// `opts`) and reports the triangle-distinct ones up to isomorphism.
///
/// With a checkpoint path, an existing matching checkpoint is resumed and a
/// fresh one is written after every block. Cancellation or the block budget
/// yields [`SearchError::Interrupted`] carrying the partial report.
pub fn enumerate_td(n: usize, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    validate(n, opts)?;
    let total = 1u64 << pair_count(n);
    let filter = Filter {
        regular_degree: opts.regular_degree.map(|d| d as u32),
        max_edges: opts.max_edges.map(|m| m as u32),
        prune: opts.prune,
    };

    let mut state = Checkpoint {
        order: n,
        regular_degree: opts.regular_degree,
        max_edges: opts.max_edges,
        pruned: opts.prune,
        range_start: 0,
        range_end: total,
        cursor: 0,
        tally: Tally::default(),
    };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let saved = Checkpoint::load(path)?;
            saved.ensure_compatible(&state)?;
            state = saved;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;

    let mut blocks = 0u64;
    while state.cursor < state.range_end {
        let cancelled = opts.cancel.as_ref().is_some_and(|c| c.load(Ordering::SeqCst));
        let budget_spent = opts.stop_after_blocks.is_some_and(|b| blocks >= b);
        if cancelled || budget_spent {
            if let Some(path) = &opts.checkpoint {
                state.save(path)?;
            }
            return Err(SearchError::Interrupted {
                partial: Box::new(finish(&state, opts, false)?),
                checkpoint: opts.checkpoint.clone(),
            });
        }

        let start = state.cursor;
        let end = start.saturating_add(opts.block_size).min(state.range_end);
        let pieces = (opts.workers as u64 * 4).min(end - start).max(1);
        let ranges: Vec<(u64, u64)> = (0..pieces)
            .map(|i| {
                let len = end - start;
                (start + len * i / pieces, start + len * (i + 1) / pieces)
            })
            .collect();
        let tallies: Vec<Tally> = pool.install(|| ranges.par_iter().map(|&(a, b)| scan(n, a, b, filter)).collect());
        for t in tallies {
            state.tally.absorb(t);
        }
        state.cursor = end;
        blocks += 1;
        if let Some(path) = &opts.checkpoint {
            state.save(path)?;
        }
        if opts.progress {
            eprintln!(
                "order {n}: {}/{} scanned, {} triangle-distinct labeled graphs",
                state.cursor - state.range_start,
                state.range_end - state.range_start,
                state.tally.td
            );
        }
    }
    finish(&state, opts, true)
}

fn finish(state: &Checkpoint, opts: &SearchOptions, complete: bool) -> Result<SearchReport, SearchError> {
    let n = state.order;
    let mut td_classes = Vec::with_capacity(state.tally.classes.len());
    for (&code, &count) in &state.tally.classes {
        let g = Graph::from_pair_code(n, code);
        let mut degree_sequence = g.degrees();
        degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
        let mut triangle_sequence = g.triangle_degrees();
        triangle_sequence.sort_unstable_by(|a, b| b.cmp(a));
        td_classes.push(TdClass {
            canonical: canonical_form(&g)?,
            edges: g.size(),
            degree_sequence,
            triangle_sequence,
            labeled_count: count,
            automorphisms: opts.count_automorphisms.then(|| automorphism_count(&g)),
        });
    }
    td_classes.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    debug_assert!(td_classes.windows(2).all(|w| w[0].canonical != w[1].canonical));

    let full_range = state.range_start == 0 && state.range_end == 1u64 << pair_count(n);
    let automorphism_check = (opts.count_automorphisms && complete && full_range).then(|| {
        let nf = factorial(n);
        td_classes
            .iter()
            .all(|c| c.automorphisms.is_some_and(|a| c.labeled_count * a == nf))
            && td_classes.iter().map(|c| c.labeled_count).sum::<u64>() == state.tally.td
    });

    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        order: n,
        regular_degree: state.regular_degree,
        max_edges: state.max_edges,
        pruned: state.pruned,
        range_start: state.range_start,
        range_end: state.range_end,
        visited: state.cursor - state.range_start,
        labeled_count: state.tally.labeled,
        td_labeled: state.tally.td,
        min_edges: td_classes.iter().map(|c| c.edges).min(),
        td_classes,
        automorphism_check,
        complete,
    })
}

/// Outcome of searching the admissible degrees for regular triangle-distinct
/// graphs of one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularProbe {
    pub schema_version: u32,
    pub order: usize,
    /// `√(2n)`: admissible degrees are strictly above this.
    pub window_low: f64,
    /// `n − √(2n/3)`: admissible degrees are at most this.
    pub window_high: f64,
    /// Integers in the window.
    pub window_degrees: Vec<usize>,
    /// Window degrees skipped because `n·d` is odd.
    pub skipped_odd: Vec<usize>,
    /// Degrees actually enumerated.
    pub examined: Vec<usize>,
    pub reports: Vec<SearchReport>,
    pub td_hits: u64,
}

impl RegularProbe {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Degrees `d` with `d² > 2n` and `3(n−d)² ≥ 2n`, decided in integers.
pub fn regular_window(n: usize) -> Vec<usize> {
    (0..n).filter(|&d| d * d > 2 * n && 3 * (n - d) * (n - d) >= 2 * n).collect()
}

/// Enumerates `d`-regular labeled graphs of order `n` for every admissible `d`.
pub fn probe_regular(n: usize, opts: &SearchOptions) -> Result<RegularProbe, SearchError> {
    validate(n, opts)?;
    let window_degrees = regular_window(n);
    let (examined, skipped_odd): (Vec<usize>, Vec<usize>) = window_degrees.iter().partition(|&&d| n * d % 2 == 0);
    let mut reports = Vec::with_capacity(examined.len());
    for &d in &examined {
        let mut o = opts.clone();
        o.regular_degree = Some(d);
        o.checkpoint = opts.checkpoint.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(format!(".d{d}"));
            PathBuf::from(s)
        });
        reports.push(enumerate_td(n, &o)?);
    }
    let nf = n as f64;
    Ok(RegularProbe {
        schema_version: SCHEMA_VERSION,
        order: n,
        window_low: (2.0 * nf).sqrt(),
        window_high: nf - (2.0 * nf / 3.0).sqrt(),
        window_degrees,
        skipped_odd,
        examined,
        td_hits: reports.iter().map(|r| r.td_labeled).sum(),
        reports,
    })
}

/// Re-decodes every witness and checks it is triangle-distinct and matches
/// its reported statistics.
pub fn witnesses_consistent(report: &SearchReport) -> bool {
    report.td_classes.iter().all(|c| {
        let Ok(g) = graph6::decode_str(c.canonical.as_str()) else {
            return false;
        };
        let mut tri = g.triangle_degrees();
        tri.sort_unstable_by(|a, b| b.cmp(a));
        let mut deg = g.degrees();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        is_triangle_distinct(&g) && g.size() == c.edges && tri == c.triangle_sequence && deg == c.degree_sequence
    })
}
