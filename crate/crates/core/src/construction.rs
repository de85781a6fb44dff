//! Recursive family of triangle-distinct graphs `G_n`, `n ≥ 7`.
//!
//! Starting from the 7-vertex base graph, odd orders are extended by a
//! pendant vertex attached to the first minimum-degree vertex in label order,
//! and even orders by a universal vertex that takes rank 1. Ranks are never
//! re-sorted: descent of the triangle-degrees must hold by construction and is
//! re-certified from scratch on every returned graph.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub const BASE_ORDER: usize = 7;

/// Edges of the base graph in 1-based label pairs `v_i v_j`.
const BASE_EDGES: [(usize, usize); 15] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 4),
    (3, 6),
    (3, 7),
    (4, 5),
    (5, 7),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no triangle-distinct graph exists below order 5, and none below 7 by search (requested order {0})")]
    BelowMinimumOrder(usize),
    #[error("{step} step is defined from {expected} orders, got order {order}")]
    WrongParity {
        step: &'static str,
        expected: &'static str,
        order: usize,
    },
    #[error("input graph of order {0} does not carry a passing certificate")]
    Uncertified(usize),
    #[error("certification failed at order {order}: {reason}")]
    CertificationFailed { order: usize, reason: String },
}

/// Extra properties asserted for odd orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddExtras {
    pub last_triangle_positive: bool,
    pub last_degree_positive: bool,
    /// `e(G) = Tri(v_1) + deg(v_1)`
    pub edge_identity: bool,
    pub non_regular: bool,
}

/// Pendant facts for even orders: `Tri(v_n) = 0` and `deg(v_n) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenExtras {
    pub last_is_pendant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub edges: usize,
    pub labels_are_permutation: bool,
    /// All triangle-degrees pairwise distinct, by direct pairwise comparison.
    pub triangle_distinct: bool,
    pub strict_triangle_descent: bool,
    pub weak_degree_descent: bool,
    /// Incrementally tracked `(Tri, deg)` per rank equal the recomputed values.
    pub incremental_agrees: bool,
    pub odd: Option<OddExtras>,
    pub even: Option<EvenExtras>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut need = |ok: bool, what| {
            if !ok {
                out.push(what);
            }
        };
        need(self.labels_are_permutation, "labels are not a permutation");
        need(self.triangle_distinct, "triangle-degrees not pairwise distinct");
        need(self.strict_triangle_descent, "triangle-degrees not strictly descending by rank");
        need(self.weak_degree_descent, "degrees not weakly descending by rank");
        need(self.incremental_agrees, "incremental bookkeeping disagrees with recomputation");
        if let Some(odd) = &self.odd {
            need(odd.last_triangle_positive, "Tri(v_n) is zero");
            need(odd.last_degree_positive, "deg(v_n) is zero");
            need(odd.edge_identity, "e(G) != Tri(v_1) + deg(v_1)");
            need(odd.non_regular, "graph is regular");
        }
        if let Some(even) = &self.even {
            need(even.last_is_pendant, "v_n is not a pendant vertex");
        }
        out
    }
}

/// A member of the family together with its rank labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedGraph {
    graph: Graph,
    /// `labels[r]` is the vertex carrying label `v_{r+1}`.
    labels: Vec<Vertex>,
    /// `(Tri, deg)` per rank, maintained by the extension steps.
    tracked: Vec<(usize, usize)>,
    certificate: Certificate,
}

impl ConstructedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Rank-to-vertex map; index 0 is `v_1`.
    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Degrees in label order `v_1, v_2, ...`.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.labels.iter().map(|&v| self.graph.deg(v)).collect()
    }

    /// Triangle-degrees in label order.
    pub fn triangle_sequence(&self) -> Vec<usize> {
        self.labels.iter().map(|&v| self.graph.tri(v)).collect()
    }

    fn uncertified(graph: Graph, labels: Vec<Vertex>, tracked: Vec<(usize, usize)>) -> Self {
        let certificate = certify(&graph, &labels, &tracked);
        ConstructedGraph {
            graph,
            labels,
            tracked,
            certificate,
        }
    }

    fn require_certified(&self) -> Result<(), ConstructionError> {
        if self.certificate.passed() {
            Ok(())
        } else {
            Err(ConstructionError::Uncertified(self.order()))
        }
    }
}

/// Recomputes every certified property of `graph` under `labels`.
pub fn certify(graph: &Graph, labels: &[Vertex], tracked: &[(usize, usize)]) -> Certificate {
    let n = graph.order();
    let mut seen = vec![false; n];
    let labels_are_permutation =
        labels.len() == n && labels.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
    let (tri, deg): (Vec<usize>, Vec<usize>) = if labels_are_permutation {
        labels.iter().map(|&v| (graph.tri(v), graph.deg(v))).unzip()
    } else {
        (Vec::new(), Vec::new())
    };
    let mut sorted = tri.clone();
    sorted.sort_unstable();
    let triangle_distinct = labels_are_permutation && n >= 2 && sorted.windows(2).all(|w| w[0] != w[1]);
    let strict_triangle_descent = labels_are_permutation && tri.windows(2).all(|w| w[0] > w[1]);
    let weak_degree_descent = labels_are_permutation && deg.windows(2).all(|w| w[0] >= w[1]);
    let incremental_agrees = labels_are_permutation
        && tracked.len() == n
        && tracked.iter().zip(tri.iter().zip(&deg)).all(|(&(t, d), (&ct, &cd))| t == ct && d == cd);

    let odd_order = n % 2 == 1;
    let ok = labels_are_permutation && n > 0;
    let odd = odd_order.then(|| OddExtras {
        last_triangle_positive: ok && tri[n - 1] > 0,
        last_degree_positive: ok && deg[n - 1] > 0,
        edge_identity: ok && graph.size() == tri[0] + deg[0],
        non_regular: graph.regular_degree().is_none(),
    });
    let even = (!odd_order).then(|| EvenExtras {
        last_is_pendant: ok && tri[n - 1] == 0 && deg[n - 1] == 1,
    });
    Certificate {
        order: n,
        edges: graph.size(),
        labels_are_permutation,
        triangle_distinct,
        strict_triangle_descent,
        weak_degree_descent,
        incremental_agrees,
        odd,
        even,
    }
}

/// The 7-vertex base graph, vertex `i` carrying label `v_{i+1}`.
pub fn base_g7() -> ConstructedGraph {
    let graph = Graph::from_edges(BASE_ORDER, BASE_EDGES.iter().map(|&(a, b)| (a - 1, b - 1)))
        .expect("base edge list is valid");
    let labels: Vec<Vertex> = (0..BASE_ORDER).collect();
    let tracked = labels.iter().map(|&v| (graph.tri(v), graph.deg(v))).collect();
    ConstructedGraph::uncertified(graph, labels, tracked)
}

fn pendant_step(gc: &ConstructedGraph) -> (Graph, Vec<Vertex>, Vec<(usize, usize)>) {
    let g = &gc.graph;
    let min = g.min_degree().expect("non-empty graph");
    let rank = gc
        .labels
        .iter()
        .position(|&v| g.deg(v) == min)
        .expect("some vertex attains the minimum degree");
    let target = gc.labels[rank];
    let new = g.order();
    let graph = g.with_new_vertex([target]);
    let mut labels = gc.labels.clone();
    labels.push(new);
    let mut tracked = gc.tracked.clone();
    tracked[rank].1 += 1;
    tracked.push((0, 1));
    (graph, labels, tracked)
}

fn universal_step(gc: &ConstructedGraph) -> (Graph, Vec<Vertex>, Vec<(usize, usize)>) {
    let g = &gc.graph;
    let n = g.order();
    let graph = g.with_new_vertex(0..n);
    let mut labels = Vec::with_capacity(n + 1);
    labels.push(n);
    labels.extend_from_slice(&gc.labels);
    let mut tracked = Vec::with_capacity(n + 1);
    tracked.push((g.size(), n));
    tracked.extend(gc.tracked.iter().map(|&(t, d)| (t + d, d + 1)));
    (graph, labels, tracked)
}

/// Appends `v_{n+1}` joined only to the first minimum-degree vertex `v_k`.
/// Defined for odd `n ≥ 7`; `k = n` is allowed.
pub fn extend_pendant(gc: &ConstructedGraph) -> Result<ConstructedGraph, ConstructionError> {
    let n = gc.order();
    if n % 2 == 0 || n < BASE_ORDER {
        return Err(ConstructionError::WrongParity {
            step: "pendant",
            expected: "odd",
            order: n,
        });
    }
    gc.require_certified()?;
    let (graph, labels, tracked) = pendant_step(gc);
    Ok(ConstructedGraph::uncertified(graph, labels, tracked))
}

/// Shifts every rank up by one and adds a universal vertex as `v_1`.
/// Defined for even `n ≥ 8`.
pub fn extend_universal(gc: &ConstructedGraph) -> Result<ConstructedGraph, ConstructionError> {
    let n = gc.order();
    if n % 2 == 1 || n < BASE_ORDER + 1 {
        return Err(ConstructionError::WrongParity {
            step: "universal",
            expected: "even",
            order: n,
        });
    }
    gc.require_certified()?;
    let (graph, labels, tracked) = universal_step(gc);
    Ok(ConstructedGraph::uncertified(graph, labels, tracked))
}

fn check_passed(gc: ConstructedGraph) -> Result<ConstructedGraph, ConstructionError> {
    let failures = gc.certificate.failures();
    if failures.is_empty() {
        Ok(gc)
    } else {
        Err(ConstructionError::CertificationFailed {
            order: gc.order(),
            reason: failures.join("; "),
        })
    }
}

/// Builds `G_n`. Intermediate steps only carry incremental bookkeeping; the
/// final graph is certified from scratch and cross-checked against it.
pub fn construct(n: usize) -> Result<ConstructedGraph, ConstructionError> {
    if n < BASE_ORDER {
        return Err(ConstructionError::BelowMinimumOrder(n));
    }
    let mut cur = base_g7();
    while cur.order() < n {
        let (graph, labels, tracked) = if cur.order() % 2 == 1 {
            pendant_step(&cur)
        } else {
            universal_step(&cur)
        };
        // Cheap placeholder; only the final graph is certified.
        cur = ConstructedGraph {
            certificate: cur.certificate.clone(),
            graph,
            labels,
            tracked,
        };
    }
    let ConstructedGraph { graph, labels, tracked, .. } = cur;
    check_passed(ConstructedGraph::uncertified(graph, labels, tracked))
}

/// `G_7, G_8, ..., G_max`, each certified.
pub fn construct_family(max: usize) -> Result<Vec<ConstructedGraph>, ConstructionError> {
    if max < BASE_ORDER {
        return Err(ConstructionError::BelowMinimumOrder(max));
    }
    let mut out = vec![check_passed(base_g7())?];
    while out.last().map_or(0, ConstructedGraph::order) < max {
        let cur = out.last().expect("non-empty");
        let next = if cur.order() % 2 == 1 {
            extend_pendant(cur)?
        } else {
            extend_universal(cur)?
        };
        out.push(check_passed(next)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_graph_sequences() {
        let g7 = base_g7();
        assert_eq!(g7.order(), 7);
        assert_eq!(g7.graph().size(), 15);
        assert_eq!(g7.degree_sequence(), vec![6, 5, 5, 4, 4, 3, 3]);
        assert_eq!(g7.triangle_sequence(), vec![9, 7, 6, 5, 4, 3, 2]);
        assert!(g7.certificate().passed(), "{:?}", g7.certificate().failures());
        let odd = g7.certificate().odd.as_ref().unwrap();
        assert!(odd.edge_identity && odd.non_regular);
    }

    #[test]
    fn pendant_from_base() {
        let g7 = base_g7();
        let g8 = extend_pendant(&g7).unwrap();
        assert_eq!(g8.order(), 8);
        assert_eq!(g8.triangle_sequence(), vec![9, 7, 6, 5, 4, 3, 2, 0]);
        let v8 = g8.labels()[7];
        assert_eq!(g8.graph().deg(v8), 1);
        assert_eq!(g8.graph().tri(v8), 0);
        // k = 6: v_6 is the first rank with minimum degree 3.
        let target = g8.graph().neighbors(v8).unwrap().iter().next().unwrap();
        assert_eq!(target, g7.labels()[5]);
        assert_eq!(g8.graph().deg(target), g7.graph().deg(target) + 1);
        assert_eq!(g8.graph().tri(target), g7.graph().tri(target));
        assert!(g8.certificate().passed());
        assert_eq!(g8.graph().size(), 16);
    }

    #[test]
    fn universal_from_g8() {
        let g8 = extend_pendant(&base_g7()).unwrap();
        let g9 = extend_universal(&g8).unwrap();
        let tri = g9.triangle_sequence();
        let deg = g9.degree_sequence();
        assert_eq!(tri[0], 16);
        assert_eq!(tri[1], 9 + 6);
        assert_eq!(deg[0], 8);
        assert_eq!(g9.graph().size(), 24);
        assert!(g9.certificate().passed());
    }

    #[test]
    fn parity_errors() {
        let g7 = base_g7();
        assert!(matches!(extend_universal(&g7), Err(ConstructionError::WrongParity { .. })));
        let g8 = extend_pendant(&g7).unwrap();
        assert!(matches!(extend_pendant(&g8), Err(ConstructionError::WrongParity { .. })));
    }

    #[test]
    fn below_minimum_order() {
        for n in 0..7 {
            assert_eq!(construct(n), Err(ConstructionError::BelowMinimumOrder(n)));
        }
    }

    #[test]
    fn construct_matches_stepwise_family() {
        let family = construct_family(30).unwrap();
        for gc in &family {
            let direct = construct(gc.order()).unwrap();
            assert_eq!(direct.graph(), gc.graph());
            assert_eq!(direct.labels(), gc.labels());
            assert_eq!(direct.certificate(), gc.certificate());
        }
    }

    #[test]
    fn tampered_labels_fail_certification() {
        let g7 = base_g7();
        let mut labels = g7.labels().to_vec();
        labels.swap(0, 1);
        let cert = certify(g7.graph(), &labels, &g7.tracked);
        assert!(!cert.strict_triangle_descent);
        assert!(!cert.incremental_agrees);
        assert!(!cert.passed());

        let bad = ConstructedGraph::uncertified(g7.graph().clone(), labels, g7.tracked.clone());
        assert_eq!(extend_pendant(&bad), Err(ConstructionError::Uncertified(7)));
    }
}
