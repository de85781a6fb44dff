//! Exhaustive and seeded-random sweeps of the triangle-degree identities.
//!
//! Random graphs come from `ChaCha8Rng::seed_from_u64(seed)`: a sample picks
//! its order uniformly from `1..=64` and its edge probability uniformly from
//! `[0, 1)`. Composition pairs draw `n(G)` from `1..=5`, `n(H)` from `1..=4`.
//! The generator is portable, so a seed fixes the sweep on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::graph6;
use crate::identities::{check_all_vertices, check_composition_all, IdentityCheck, IdentityName};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;
pub const MAX_RANDOM_ORDER: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub samples: usize,
    pub compose_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityTotals {
    pub identity: IdentityName,
    pub checks: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// graph6 of `G` (and `H` for composition failures).
    pub graphs: Vec<String>,
    pub check: IdentityCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub n_max: usize,
    pub seed: u64,
    pub exhaustive_graphs: u64,
    pub random_graphs: u64,
    pub composition_pairs: u64,
    pub totals: Vec<IdentityTotals>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn failure_count(&self) -> u64 {
        self.totals.iter().map(|t| t.failures).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Acc {
    totals: Vec<IdentityTotals>,
    failures: Vec<Failure>,
}

impl Acc {
    fn record(&mut self, checks: Vec<IdentityCheck>, graphs: &[&Graph]) {
        for c in checks {
            let slot = self
                .totals
                .iter_mut()
                .find(|t| t.identity == c.identity)
                .expect("all identities pre-registered");
            slot.checks += 1;
            if !c.holds {
                slot.failures += 1;
                self.failures.push(Failure {
                    graphs: graphs.iter().map(|g| graph6::encode_string(g)).collect(),
                    check: c,
                });
            }
        }
    }
}

/// Seeded random graph as used by the sweep.
pub fn random_graph(rng: &mut ChaCha8Rng, max_order: usize) -> Graph {
    let n = rng.random_range(1..=max_order);
    let p: f64 = rng.random();
    Graph::random(n, p, rng)
}

/// Panics if `cfg.n_max` exceeds [`MAX_EXHAUSTIVE_ORDER`].
pub fn verify_identities(cfg: &VerifyConfig) -> VerifyReport {
    assert!(cfg.n_max <= MAX_EXHAUSTIVE_ORDER, "exhaustive order capped at {MAX_EXHAUSTIVE_ORDER}");
    let mut acc = Acc {
        totals: [
            IdentityName::ComplementSum,
            IdentityName::LemmaCompDecomposition,
            IdentityName::Composition,
        ]
        .into_iter()
        .map(|identity| IdentityTotals {
            identity,
            checks: 0,
            failures: 0,
        })
        .collect(),
        failures: Vec::new(),
    };

    let mut exhaustive = 0;
    for n in 1..=cfg.n_max {
        for code in 0..1u64 << (n * (n - 1) / 2) {
            let g = Graph::from_pair_code(n, code);
            acc.record(check_all_vertices(&g), &[&g]);
            exhaustive += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let g = random_graph(&mut rng, MAX_RANDOM_ORDER);
        acc.record(check_all_vertices(&g), &[&g]);
    }
    for _ in 0..cfg.compose_samples {
        let g = random_graph(&mut rng, 5);
        let h = random_graph(&mut rng, 4);
        acc.record(check_composition_all(&g, &h), &[&g, &h]);
    }

    VerifyReport {
        schema_version: SCHEMA_VERSION,
        n_max: cfg.n_max,
        seed: cfg.seed,
        exhaustive_graphs: exhaustive,
        random_graphs: cfg.samples as u64,
        composition_pairs: cfg.compose_samples as u64,
        totals: acc.totals,
        failures: acc.failures,
    }
}
