#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use dunkl_core::{int, ratio, DunklContext, Rational};

/// Reference configurations: group label, rank, orbit multiplicities.
pub fn reference_configs() -> Vec<(&'static str, usize, Vec<Rational>)> {
    vec![
        ("Z2", 2, vec![ratio(1, 2), int(2)]),
        ("A", 3, vec![ratio(3, 4)]),
        ("B", 2, vec![int(1), ratio(1, 2)]),
        ("D", 3, vec![int(2)]),
    ]
}

pub fn reference_times() -> [Rational; 3] {
    [ratio(1, 4), ratio(1, 2), int(2)]
}

/// Shared contexts so the per-degree caches persist across test cases.
pub fn reference_contexts() -> &'static [(String, Arc<DunklContext>)] {
    static CELL: OnceLock<Vec<(String, Arc<DunklContext>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        reference_configs()
            .into_iter()
            .map(|(family, rank, k)| {
                let ctx = DunklContext::from_catalog(family, rank, k).unwrap();
                (ctx.root_system().label(), Arc::new(ctx))
            })
            .collect()
    })
}
pub mod strategies;
