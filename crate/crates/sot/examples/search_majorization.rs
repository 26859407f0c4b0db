//! Randomized falsification probe: hunt for pairs of regular node systems
//! whose maxima vectors are coordinatewise ordered. For strictly concave,
//! strictly monotone kernels no such pair should exist; any verified
//! candidate would be a counterexample worth publishing, so the report is
//! fully replayable from its seed.
//!
//! Run with: cargo run --example search_majorization

use sot::intertwining::{search_majorization, SearchOptions, SearchStrategy};
use sot::{FieldFunction, Kernel, ProblemInstance};

fn main() -> sot::Result<()> {
    let instance = ProblemInstance::new(
        Kernel::log_shifted(0.05)?,
        vec![1.0; 4],
        FieldFunction::zero(),
    )?;

    for strategy in [SearchStrategy::RandomPairs, SearchStrategy::HillClimb] {
        let options = SearchOptions {
            budget: 10_000,
            rng_seed: 42,
            strategy,
            ..SearchOptions::default()
        };
        let report = search_majorization(&instance, &options)?;
        println!("strategy {strategy:?}:");
        println!("  verdict         {:?}", report.verdict);
        println!("  pairs evaluated {}", report.pairs_evaluated);
        println!("  best margin     {:?}", report.best_margin);
        if let Some((x, y)) = &report.best_pair {
            println!("  best pair x     {:?}", x.nodes());
            println!("  best pair y     {:?}", y.nodes());
        }
        println!("  improvements logged: {}", report.improvements.len());
    }
    Ok(())
}
