//! Brute-force canonical labelling for small graphs.
//!
//! The canonical form is the lexicographically smallest graph6 encoding over
//! all vertex orders that list vertices by non-decreasing degree. Column `j` of
//! the graph6 bit string is fixed as soon as positions `0..=j` are assigned, so
//! the search compares column by column against the best order found so far
//! and abandons any prefix that is already larger.

use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::graph6;

use super::SearchError;

/// Largest order accepted by the factorial search.
pub const CANON_MAX_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode_str(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn small_rows(g: &Graph) -> [u16; CANON_MAX_ORDER] {
    let mut rows = [0u16; CANON_MAX_ORDER];
    for (i, j) in g.edges() {
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
    }
    rows
}

struct LexSearch {
    n: usize,
    rows: [u16; CANON_MAX_ORDER],
    /// Degree required at each position.
    slot_degree: [u32; CANON_MAX_ORDER],
    perm: [usize; CANON_MAX_ORDER],
    cols: [u16; CANON_MAX_ORDER],
    best_cols: [u16; CANON_MAX_ORDER],
    best_perm: [usize; CANON_MAX_ORDER],
    have_best: bool,
}

impl LexSearch {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let rows = small_rows(g);
        let mut degs: Vec<u32> = (0..n).map(|v| rows[v].count_ones()).collect();
        degs.sort_unstable();
        let mut slot_degree = [0; CANON_MAX_ORDER];
        slot_degree[..n].copy_from_slice(&degs);
        LexSearch {
            n,
            rows,
            slot_degree,
            perm: [0; CANON_MAX_ORDER],
            cols: [0; CANON_MAX_ORDER],
            best_cols: [0; CANON_MAX_ORDER],
            best_perm: [0; CANON_MAX_ORDER],
            have_best: false,
        }
    }

    fn column(&self, pos: usize, v: usize) -> u16 {
        // Row 0 is the most significant bit of the column.
        let mut col = 0u16;
        for i in 0..pos {
            col = col << 1 | (self.rows[self.perm[i]] >> v & 1);
        }
        col
    }

    fn run(&mut self, pos: usize, used: u16) {
        if pos == self.n {
            if !self.have_best || self.cols[..self.n] < self.best_cols[..self.n] {
                self.best_cols = self.cols;
                self.best_perm = self.perm;
                self.have_best = true;
            }
            return;
        }
        for v in 0..self.n {
            if used >> v & 1 == 1 || self.rows[v].count_ones() != self.slot_degree[pos] {
                continue;
            }
            let col = self.column(pos, v);
            if self.have_best && self.cols[..pos] == self.best_cols[..pos] && col > self.best_cols[pos] {
                continue;
            }
            self.perm[pos] = v;
            self.cols[pos] = col;
            self.run(pos + 1, used | 1 << v);
        }
    }
}

/// Vertex order realising the canonical form: position `i` holds `order[i]`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<Vertex>, SearchError> {
    if g.order() > CANON_MAX_ORDER {
        return Err(SearchError::CanonicalOrder(g.order()));
    }
    let mut s = LexSearch::new(g);
    s.run(0, 0);
    Ok(s.best_perm[..g.order()].to_vec())
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, SearchError> {
    let order = canonical_labeling(g)?;
    let canon = g.permute(&order).expect("labeling is a permutation");
    Ok(CanonicalForm(graph6::encode_string(&canon)))
}

/// Size of the automorphism group, by backtracking over degree- and
/// triangle-degree-preserving partial maps.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.order();
    let invariant: Vec<(usize, usize)> = (0..n).map(|v| (g.deg(v), g.tri(v))).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        g: &Graph,
        invariant: &[(usize, usize)],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> u64 {
        let n = g.order();
        if pos == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            if used[w] || invariant[w] != invariant[pos] {
                continue;
            }
            if (0..pos).any(|i| g.has_edge(i, pos) != g.has_edge(image[i], w)) {
                continue;
            }
            image[pos] = w;
            used[w] = true;
            total += go(g, invariant, pos + 1, image, used);
            used[w] = false;
        }
        total
    }

    go(g, &invariant, 0, &mut image, &mut used)
}

/// For a triangle-distinct graph, relabelling by descending triangle-degree is
/// already a complete isomorphism invariant. Returns that relabelling's pair
/// code, or `None` when two vertices share a triangle-degree.
pub(crate) fn triangle_order_code(n: usize, rows: &[u16], tri: &[u32]) -> Option<u64> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| tri[b].cmp(&tri[a]));
    if order.windows(2).any(|w| tri[w[0]] == tri[w[1]]) {
        return None;
    }
    let mut code = 0u64;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            code |= ((rows[order[i]] >> order[j] & 1) as u64) << bit;
            bit += 1;
        }
    }
    Some(code)
}

/// Builds a graph from `u16` rows (test helper and checkpoint support).
#[allow(dead_code)]
pub(crate) fn graph_from_rows(n: usize, rows: &[u16]) -> Graph {
    let mut b = GraphBuilder::new(n);
    for j in 1..n {
        for i in 0..j {
            if rows[i] >> j & 1 == 1 {
                b.set(i, j);
            }
        }
    }
    b.build()
}
