mod common;

use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use trideg::bounds::{bounds_report, BoundName};
use trideg::construction::base_g7;
use trideg::graph6;
use trideg::search::{
    automorphism_count, canonical_form, enumerate_td, is_triangle_distinct, probe_regular, regular_window,
    witnesses_consistent, Checkpoint, SearchError, SearchOptions,
};
use trideg::Graph;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn order_seven_fixture() {
    let r = enumerate_td(
        7,
        &SearchOptions {
            count_automorphisms: true,
            ..opts()
        },
    )
    .unwrap();
    assert_eq!(r.visited, 1 << 21);
    assert_eq!(r.td_labeled, 5040);
    assert_eq!(r.td_classes.len(), 1);
    let c = &r.td_classes[0];
    assert_eq!(c.canonical.as_str(), "FBnnw");
    assert_eq!(c.edges, 15);
    assert_eq!(c.degree_sequence, [6, 5, 5, 4, 4, 3, 3]);
    assert_eq!(c.triangle_sequence, [9, 7, 6, 5, 4, 3, 2]);
    assert_eq!(c.automorphisms, Some(1));
    assert_eq!(r.automorphism_check, Some(true));
    assert_eq!(r.min_edges, Some(15));
    assert!(witnesses_consistent(&r));
}

#[test]
fn witnesses_pass_every_bound() {
    let r = enumerate_td(7, &opts()).unwrap();
    for c in &r.td_classes {
        let g = c.canonical.to_graph();
        assert!(is_triangle_distinct(&g));
        assert!(bounds_report(&g, &BoundName::ALL).all_hold());
    }
}

#[test]
fn pruning_does_not_change_results() {
    for n in 2..=5 {
        let pruned = enumerate_td(n, &opts()).unwrap();
        let full = enumerate_td(n, &SearchOptions { prune: false, ..opts() }).unwrap();
        assert_eq!(pruned.td_classes, full.td_classes);
        assert_eq!(pruned.td_labeled, full.td_labeled);
        assert_eq!(pruned.td_labeled, 0);
    }
    let pruned = enumerate_td(7, &opts()).unwrap();
    let full = enumerate_td(7, &SearchOptions { prune: false, ..opts() }).unwrap();
    assert_eq!(pruned.td_classes, full.td_classes);
    assert_eq!(pruned.td_labeled, full.td_labeled);
}

/// Brute force over all labeled graphs with the reference triangle counter.
#[test]
fn small_orders_match_brute_force() {
    for n in 2..=6 {
        let td = (0..1u64 << (n * (n - 1) / 2))
            .filter(|&code| common::all_distinct(&common::naive_triangle_degrees(&Graph::from_pair_code(n, code))))
            .count();
        assert_eq!(td, 0, "n={n}");
    }
}

#[test]
fn worker_counts_agree_at_seven() {
    let a = enumerate_td(7, &SearchOptions { workers: 1, ..opts() }).unwrap();
    let b = enumerate_td(7, &SearchOptions { workers: 3, ..opts() }).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn max_edges_filter() {
    let r = enumerate_td(7, &SearchOptions { max_edges: Some(14), ..opts() }).unwrap();
    assert_eq!(r.td_labeled, 0);
    assert_eq!(r.min_edges, None);
    let r = enumerate_td(7, &SearchOptions { max_edges: Some(15), ..opts() }).unwrap();
    assert_eq!(r.td_classes.len(), 1);
}

#[test]
fn order_limits() {
    assert!(matches!(enumerate_td(1, &opts()), Err(SearchError::OrderOutOfRange(_))));
    assert!(matches!(enumerate_td(10, &opts()), Err(SearchError::OrderOutOfRange(_))));
    assert!(matches!(enumerate_td(9, &opts()), Err(SearchError::LongRunNotEnabled(_))));
    assert!(matches!(enumerate_td(5, &SearchOptions { workers: 0, ..opts() }), Err(SearchError::ZeroWorkers)));
}

#[test]
fn checkpoint_resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n7.ckpt");
    let chunked = SearchOptions {
        block_size: 1 << 16,
        checkpoint: Some(path.clone()),
        stop_after_blocks: Some(5),
        ..opts()
    };
    let mut rounds = 0;
    let resumed = loop {
        rounds += 1;
        match enumerate_td(7, &chunked) {
            Ok(r) => break r,
            Err(SearchError::Interrupted { partial, checkpoint }) => {
                assert!(!partial.complete);
                assert_eq!(checkpoint.as_deref(), Some(path.as_path()));
                let ck = Checkpoint::load(&path).unwrap();
                assert!(ck.cursor < ck.range_end);
            }
            Err(e) => panic!("{e}"),
        }
        assert!(rounds < 100);
    };
    assert!(rounds > 1);
    let direct = enumerate_td(7, &opts()).unwrap();
    assert_eq!(resumed.td_classes, direct.td_classes);
    assert_eq!(resumed.td_labeled, direct.td_labeled);
    assert_eq!(resumed.labeled_count, direct.labeled_count);
}

#[test]
fn checkpoint_for_other_run_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck");
    let first = SearchOptions {
        block_size: 1 << 10,
        checkpoint: Some(path.clone()),
        stop_after_blocks: Some(1),
        ..opts()
    };
    assert!(matches!(enumerate_td(6, &first), Err(SearchError::Interrupted { .. })));
    let other = SearchOptions { checkpoint: Some(path), ..opts() };
    assert!(matches!(enumerate_td(7, &other), Err(SearchError::CheckpointMismatch(_))));
}

#[test]
fn cancel_flag_interrupts() {
    let cancel = Arc::new(AtomicBool::new(true));
    let r = enumerate_td(
        7,
        &SearchOptions {
            block_size: 1 << 12,
            cancel: Some(cancel),
            ..opts()
        },
    );
    assert!(matches!(r, Err(SearchError::Interrupted { checkpoint: None, .. })));
}

#[test]
fn regular_probe_window() {
    assert_eq!(regular_window(7), [4]);
    let p = probe_regular(7, &opts()).unwrap();
    assert_eq!(p.examined, [4]);
    assert_eq!(p.td_hits, 0);
    let p = probe_regular(8, &opts()).unwrap();
    assert_eq!(p.td_hits, 0);
}

#[test]
fn canonical_form_is_isomorphism_invariant() {
    let g = base_g7();
    let form = canonical_form(g.graph()).unwrap();
    let perm = [3, 6, 0, 5, 1, 4, 2];
    assert_eq!(canonical_form(&g.graph().permute(&perm).unwrap()).unwrap(), form);
    assert_eq!(automorphism_count(g.graph()), 1);
    assert_eq!(automorphism_count(&Graph::cycle(6)), 12);
    assert_eq!(graph6::decode_str(form.as_str()).unwrap().size(), 15);
}
