//! Exact triangle-degree identities, each exposed as an evaluator of its
//! right-hand side so callers can compare against direct counting.
//!
//! All formula arithmetic is done in `i64`: several partial sums are negative
//! even though every identity evaluates to a non-negative count.

use serde::Serialize;

use crate::graph::{Graph, GraphBuilder, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    ComplementSum,
    Composition,
    LemmaCompDecomposition,
}

/// One evaluated identity instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: IdentityName,
    /// Graph vertex, or `[u, v]` of the factor graphs for the composition check.
    pub vertices: Vec<Vertex>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(identity: IdentityName, vertices: Vec<Vertex>, lhs: i64, rhs: i64) -> Self {
        IdentityCheck {
            identity,
            vertices,
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// `Σ_{v∈N(u)} d(v) − e(G) + ½(n−d(u)−1)(n−d(u)−2)`, which equals
/// `Tri_G(u) + Tri_Ḡ(u)`.
pub fn complement_identity_rhs(g: &Graph, u: Vertex) -> Result<i64, GraphError> {
    let nu = g.neighbors(u)?;
    let n = g.order() as i64;
    let d = g.deg(u) as i64;
    let nbr_degree_sum: i64 = nu.iter().map(|v| g.deg(v) as i64).sum();
    Ok(nbr_degree_sum - g.size() as i64 + (n - d - 1) * (n - d - 2) / 2)
}

/// Compares `Tri_G(u) + Tri_Ḡ(u)` with [`complement_identity_rhs`].
/// `gc` must be the complement of `g`.
pub fn check_complement_identity(g: &Graph, gc: &Graph, u: Vertex) -> Result<IdentityCheck, GraphError> {
    let rhs = complement_identity_rhs(g, u)?;
    let lhs = (g.tri(u) + gc.tri(u)) as i64;
    Ok(IdentityCheck::new(IdentityName::ComplementSum, vec![u], lhs, rhs))
}

/// Lexicographic composition `G(H)`: `(u1,v1) ~ (u2,v2)` iff `u1u2 ∈ E(G)`, or
/// `u1 = u2` and `v1v2 ∈ E(H)`. Vertex `(u, v)` gets index `u·n(H) + v`.
pub fn compose(g: &Graph, h: &Graph) -> Graph {
    let nh = h.order();
    let mut b = GraphBuilder::new(g.order() * nh);
    for u in 0..g.order() {
        for (v1, v2) in h.edges() {
            b.set(u * nh + v1, u * nh + v2);
        }
    }
    for (u1, u2) in g.edges() {
        for v1 in 0..nh {
            for v2 in 0..nh {
                b.set(u1 * nh + v1, u2 * nh + v2);
            }
        }
    }
    b.build()
}

/// Closed form for the triangle-degree of `(u, v)` in `G(H)`:
/// `Tri_H(v) + e(H)d_G(u) + n(H)d_G(u)d_H(v) + n(H)² Tri_G(u)`.
pub fn composition_triangle_degree(g: &Graph, h: &Graph, u: Vertex, v: Vertex) -> Result<i64, GraphError> {
    let dg = g.degree(u)? as i64;
    let dh = h.degree(v)? as i64;
    let nh = h.order() as i64;
    Ok(h.tri(v) as i64 + h.size() as i64 * dg + nh * dg * dh + nh * nh * g.tri(u) as i64)
}

/// Compares the closed form against direct counting on `gh = compose(g, h)`.
pub fn check_composition(g: &Graph, h: &Graph, gh: &Graph, u: Vertex, v: Vertex) -> Result<IdentityCheck, GraphError> {
    let rhs = composition_triangle_degree(g, h, u, v)?;
    let lhs = gh.triangle_degree(u * h.order() + v)? as i64;
    Ok(IdentityCheck::new(IdentityName::Composition, vec![u, v], lhs, rhs))
}

/// The pair `(Tri_Ḡ(u), e_Ḡ(N_G(u), V∖N_G[u]))`.
fn complement_terms(g: &Graph, gc: &Graph, u: Vertex) -> Result<(i64, i64), GraphError> {
    let nu = g.neighbors(u)?;
    let outside = g.closed_neighbors(u)?.complement();
    Ok((gc.tri(u) as i64, gc.cut_edges(&nu, &outside)? as i64))
}

/// `e(G) − (1 + d_Ḡ(u))d_G(u) − C(d_Ḡ(u), 2) + Tri_Ḡ(u) + e_Ḡ(N_G(u), V∖N_G[u])`,
/// evaluated entirely from the complement side; equals `Tri_G(u)`.
pub fn lemma_comp_triangle_degree(g: &Graph, u: Vertex) -> Result<i64, GraphError> {
    lemma_comp_with_complement(g, &g.complement(), u)
}

/// [`lemma_comp_triangle_degree`] with a precomputed complement.
pub fn lemma_comp_with_complement(g: &Graph, gc: &Graph, u: Vertex) -> Result<i64, GraphError> {
    let (tri_c, cut_c) = complement_terms(g, gc, u)?;
    let d = g.deg(u) as i64;
    let dc = gc.deg(u) as i64;
    Ok(g.size() as i64 - (1 + dc) * d - choose2(dc) + tri_c + cut_c)
}

pub fn check_lemma_comp(g: &Graph, gc: &Graph, u: Vertex) -> Result<IdentityCheck, GraphError> {
    let rhs = lemma_comp_with_complement(g, gc, u)?;
    Ok(IdentityCheck::new(
        IdentityName::LemmaCompDecomposition,
        vec![u],
        g.tri(u) as i64,
        rhs,
    ))
}

/// Collision signature `(d_G(u), Tri_Ḡ(u) + e_Ḡ(N_G(u), V∖N_G[u]))`.
/// Two vertices with equal signatures have equal triangle-degrees.
pub fn lemma_comp_signature(g: &Graph, u: Vertex) -> Result<(i64, i64), GraphError> {
    signature_with_complement(g, &g.complement(), u)
}

pub fn signature_with_complement(g: &Graph, gc: &Graph, u: Vertex) -> Result<(i64, i64), GraphError> {
    let (tri_c, cut_c) = complement_terms(g, gc, u)?;
    Ok((g.deg(u) as i64, tri_c + cut_c))
}

/// Runs the complement and decomposition identities at every vertex of `g`.
pub fn check_all_vertices(g: &Graph) -> Vec<IdentityCheck> {
    let gc = g.complement();
    let mut out = Vec::with_capacity(2 * g.order());
    for u in 0..g.order() {
        out.push(check_complement_identity(g, &gc, u).expect("vertex in range"));
        out.push(check_lemma_comp(g, &gc, u).expect("vertex in range"));
    }
    out
}

/// Runs the composition identity at every vertex of `G(H)`.
pub fn check_composition_all(g: &Graph, h: &Graph) -> Vec<IdentityCheck> {
    let gh = compose(g, h);
    let mut out = Vec::with_capacity(gh.order());
    for u in 0..g.order() {
        for v in 0..h.order() {
            out.push(check_composition(g, h, &gh, u, v).expect("vertex in range"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::base_g7;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complement_rhs_complete_graph() {
        for n in 3..8 {
            let k = Graph::complete(n);
            let expect = ((n - 1) * (n - 2) / 2) as i64;
            for u in 0..n {
                assert_eq!(complement_identity_rhs(&k, u), Ok(expect));
            }
        }
    }

    #[test]
    fn complement_rhs_pentagon() {
        let c5 = Graph::cycle(5);
        for u in 0..5 {
            assert_eq!(complement_identity_rhs(&c5, u), Ok(0));
            assert_eq!(c5.tri(u) + c5.complement().tri(u), 0);
        }
    }

    #[test]
    fn out_of_range_is_error() {
        let g = Graph::complete(3);
        assert!(complement_identity_rhs(&g, 3).is_err());
        assert!(lemma_comp_triangle_degree(&g, 5).is_err());
        assert!(lemma_comp_signature(&g, 3).is_err());
        assert!(composition_triangle_degree(&g, &g, 0, 3).is_err());
        assert!(composition_triangle_degree(&g, &g, 3, 0).is_err());
    }

    #[test]
    fn compose_small_cases() {
        let k2 = Graph::complete(2);
        assert_eq!(compose(&k2, &k2), Graph::complete(4));
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(composition_triangle_degree(&k2, &k2, u, v), Ok(3));
            }
        }
        let g = Graph::cycle(5);
        let k1 = Graph::empty(1);
        assert_eq!(compose(&g, &k1), g);
        for u in 0..5 {
            assert_eq!(composition_triangle_degree(&g, &k1, u, 0), Ok(g.tri(u) as i64));
        }
        // compose(K_1, g) also reproduces g under the index map u·n(H)+v = v.
        assert_eq!(compose(&k1, &g), g);
    }

    #[test]
    fn compose_path_edge_count() {
        // e(H)·n(G) + e(G)·n(H)² = 1·3 + 2·4
        let gh = compose(&Graph::path(3), &Graph::path(2));
        assert_eq!(gh.order(), 6);
        assert_eq!(gh.size(), 11);
    }

    #[test]
    fn composition_formula_matches_direct_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let g = Graph::random(rng.random_range(1..=5), 0.5, &mut rng);
            let h = Graph::random(rng.random_range(1..=4), 0.5, &mut rng);
            assert!(check_composition_all(&g, &h).iter().all(|c| c.holds));
        }
    }

    #[test]
    fn lemma_comp_on_empty_graph() {
        for n in 1..7 {
            let e = Graph::empty(n);
            for u in 0..n {
                assert_eq!(lemma_comp_triangle_degree(&e, u), Ok(0));
            }
        }
    }

    #[test]
    fn lemma_comp_on_g7() {
        let g7 = base_g7();
        let v1 = g7.labels()[0];
        assert_eq!(lemma_comp_triangle_degree(g7.graph(), v1), Ok(9));
    }

    #[test]
    fn complete_graph_signatures_collide() {
        let k = Graph::complete(6);
        for u in 0..6 {
            assert_eq!(lemma_comp_signature(&k, u), Ok((5, 0)));
        }
    }

    #[test]
    fn g7_signatures_distinct_within_degree_classes() {
        let g7 = base_g7();
        let g = g7.graph();
        let sigs: Vec<_> = (0..7).map(|u| lemma_comp_signature(g, u).unwrap()).collect();
        for a in 0..7 {
            for b in a + 1..7 {
                assert_ne!(sigs[a], sigs[b]);
            }
        }
    }

    #[test]
    fn equal_signatures_imply_equal_triangle_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..300 {
            let n = rng.random_range(2..=10);
            let g = Graph::random(n, rng.random_range(0.2..0.9), &mut rng);
            let gc = g.complement();
            let sigs: Vec<_> = (0..n).map(|u| signature_with_complement(&g, &gc, u).unwrap()).collect();
            for a in 0..n {
                for b in a + 1..n {
                    if sigs[a] == sigs[b] {
                        assert_eq!(g.tri(a), g.tri(b));
                    }
                }
            }
        }
    }
}
