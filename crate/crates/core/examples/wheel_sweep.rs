//! Runs the wheel construction on every t-matching of a wheel, restricted
//! to its support, and reports how often search had to take over.

use std::time::Instant;

use matchpoly::graph::{make_family, Family};
use matchpoly::idp::{verify_decomposition, wheel_split};
use matchpoly::polytope::{support_graph, EdgeWeighting, MatchingPolytope};
use matchpoly::Budget;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, t_max) = (
        args.first().copied().unwrap_or(5),
        args.get(1).copied().unwrap_or(3) as u32,
    );
    let g = make_family(&Family::Wheel(n)).expect("wheel");
    let p = MatchingPolytope::new(&g).expect("polytope");
    for t in 2..=t_max {
        let start = Instant::now();
        let (mut total, mut fallbacks, mut levels, mut joined) = (0u64, 0u64, 0u64, 0u64);
        let (mut structure, mut bound, mut reductions, mut splits) = (0u64, 0u64, 0u64, 0u64);
        for x in p.enumerate(t, &Budget::unlimited()).expect("enumerate") {
            let (h, map) = support_graph(&g, &x.weights);
            let local: Vec<u32> = map.iter().map(|&e| x.weights[e]).collect();
            let r = wheel_split(&h, &EdgeWeighting::new(local.clone(), t), t).expect("split");
            assert!(verify_decomposition(&h, &local, t, &r.parts));
            total += 1;
            fallbacks += r.diagnostics.wheel_fallbacks;
            levels += r.diagnostics.wheel_levels;
            joined += r.diagnostics.joined_full_slices;
            structure += r.diagnostics.joined_structure_violations;
            bound += r.diagnostics.interlocking_bound_violations;
            reductions += r.diagnostics.interlocking_reductions;
            splits += r.diagnostics.interior_splits;
        }
        println!(
            "W{n} t={t}: {total} t-matchings, {levels} levels, {fallbacks} fallbacks, {joined} joined full-index slices \
             ({structure} outside the expected shape), {reductions} reductions ({bound} over the bound), \
             {splits} interior splits, {:.1?}",
            start.elapsed()
        );
    }
}
