//! Solve the equioscillation problem: find nodes where all interval maxima
//! agree. For the zero field and the log kernel these are the extrema
//! configuration of the minimal monic polynomial, known in closed form.
//!
//! Run with: cargo run --example equioscillate

use sot::harness::{reference_level_nodes, reference_level_value};
use sot::solvers::{find_equioscillation, SolverOptions};
use sot::{FieldFunction, Kernel, ProblemInstance};

fn main() -> sot::Result<()> {
    for n in 1..=5 {
        let instance = ProblemInstance::new(Kernel::log(), vec![1.0; n], FieldFunction::zero())?;
        let result = find_equioscillation(&instance, &SolverOptions::default())?;

        let reference = reference_level_nodes(n);
        let node_error: f64 = result
            .nodes
            .nodes()
            .iter()
            .zip(&reference)
            .map(|(got, want)| (got - want).abs())
            .fold(0.0, f64::max);

        println!("n = {n}: status {:?}", result.status);
        println!("  nodes      {:?}", result.nodes.nodes());
        println!("  level      {}", result.value);
        println!("  reference  {} = (1-2n)·ln 2", reference_level_value(n));
        println!("  residual   {:?}", result.residual);
        println!("  node error {node_error:.2e} vs closed form");
    }
    Ok(())
}
