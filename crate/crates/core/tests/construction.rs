mod common;

use trideg::construction::{base_g7, construct, construct_family, extend_pendant, extend_universal, ConstructionError};

fn tri_by_rank(gc: &trideg::ConstructedGraph) -> Vec<usize> {
    let tri = common::naive_triangle_degrees(gc.graph());
    gc.labels().iter().map(|&v| tri[v]).collect()
}

fn deg_by_rank(gc: &trideg::ConstructedGraph) -> Vec<usize> {
    let deg = common::naive_degrees(gc.graph());
    gc.labels().iter().map(|&v| deg[v]).collect()
}

#[test]
fn base_graph_edge_list() {
    let gc = base_g7();
    let l = gc.labels();
    let expected = [
        (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3), (2, 4),
        (2, 5), (2, 6), (3, 4), (3, 6), (3, 7), (4, 5), (5, 7),
    ];
    for (a, b) in expected {
        assert!(gc.graph().has_edge(l[a - 1], l[b - 1]), "v{a}v{b}");
    }
    assert_eq!(gc.graph().size(), expected.len());
    assert_eq!(tri_by_rank(&gc)[0] + deg_by_rank(&gc)[0], 15);
}

#[test]
fn pendant_step_from_base() {
    let g7 = base_g7();
    let g8 = extend_pendant(&g7).unwrap();
    assert_eq!(tri_by_rank(&g8), [9, 7, 6, 5, 4, 3, 2, 0]);
    let d7 = deg_by_rank(&g7);
    let d8 = deg_by_rank(&g8);
    assert_eq!(d8[7], 1);
    let changed: Vec<usize> = (0..7).filter(|&r| d8[r] != d7[r]).collect();
    assert_eq!(changed.len(), 1);
    assert_eq!(d8[changed[0]], d7[changed[0]] + 1);
    assert_eq!(d7[changed[0]], *d7.iter().min().unwrap());
    assert_eq!(g8.graph().size(), 16);
}

#[test]
fn universal_step_from_eight() {
    let g8 = extend_pendant(&base_g7()).unwrap();
    let g9 = extend_universal(&g8).unwrap();
    let t = tri_by_rank(&g9);
    let d = deg_by_rank(&g9);
    assert_eq!(t[0], 16);
    assert_eq!(t[1], 9 + 6);
    assert_eq!(d[0], 8);
    let (t8, d8) = (tri_by_rank(&g8), deg_by_rank(&g8));
    for r in 0..8 {
        assert_eq!(t[r + 1], t8[r] + d8[r]);
    }
    assert_eq!(g9.graph().size(), 24);
    assert_eq!(construct(9).unwrap().graph(), g9.graph());
}

#[test]
fn parity_is_enforced() {
    let g7 = base_g7();
    let g8 = extend_pendant(&g7).unwrap();
    assert!(matches!(extend_universal(&g7), Err(ConstructionError::WrongParity { .. })));
    assert!(matches!(extend_pendant(&g8), Err(ConstructionError::WrongParity { .. })));
}

#[test]
fn orders_below_seven_are_refused() {
    for n in 0..7 {
        let e = construct(n).unwrap_err();
        assert_eq!(e, ConstructionError::BelowMinimumOrder(n));
        assert!(e.to_string().contains("below order 5"));
    }
}

#[test]
fn edge_count_recurrence() {
    let fam = construct_family(120).unwrap();
    for w in fam.windows(3) {
        let n = w[0].order();
        if n % 2 == 1 {
            assert_eq!(w[1].graph().size(), w[0].graph().size() + 1);
            assert_eq!(w[2].graph().size(), w[1].graph().size() + n + 1, "n={n}");
        }
    }
    for gc in &fam {
        assert!(gc.certificate().passed(), "n={}", gc.order());
        assert_eq!(construct(gc.order()).unwrap().graph(), gc.graph());
    }
}
