#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ulrich_core::search::derive_bounds;
use ulrich_core::{LieType, NodeSet, ParabolicContext, RootSystem, Weight};

pub fn rs(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(t.parse::<LieType>().unwrap()))
}

pub fn ctx(t: &str, nodes: &[usize]) -> ParabolicContext {
    ParabolicContext::minimal(rs(t), NodeSet::from_labels(nodes)).unwrap()
}

pub const SAMPLE_TYPES: &[&str] = &["E6", "F4", "G2", "A1", "A2", "A3", "A4", "A5"];

/// A random `(G, J, b)` from `types` with `b_j ∈ {1, 2}` and a random
/// weight in its search box.
pub fn random_instance(seed: u64, types: &[&str]) -> (ParabolicContext, Weight) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = types.choose(&mut rng).unwrap();
    let rs = rs(t);
    let n = rs.rank();
    let bits = rng.gen_range(1..(1u32 << n));
    let nodes = NodeSet::from_bits(bits);
    let b: Vec<i64> = nodes.iter().map(|_| rng.gen_range(1..=2)).collect();
    let ctx = ParabolicContext::new(rs, nodes, &b).unwrap();
    let lambda = random_weight_in_box(&mut rng, &ctx);
    (ctx, lambda)
}

pub fn random_weight_in_box(rng: &mut impl Rng, ctx: &ParabolicContext) -> Weight {
    let bounds = derive_bounds(ctx);
    // small coefficients are where the interesting cases live
    let coords = bounds
        .upper
        .iter()
        .map(|&u| {
            if u < 0 {
                0
            } else if rng.gen_bool(0.5) {
                rng.gen_range(0..=u.min(3))
            } else {
                rng.gen_range(0..=u)
            }
        })
        .collect();
    Weight::new(coords)
}
