//! Evaluate pure and weighted sums of translates, and inspect the
//! singularity structure of an instance with a `-∞` field region.
//!
//! Run with: cargo run --example evaluate_sums

use sot::field::step_gate_field;
use sot::translates::{f_pure, f_weighted, is_regular, singularity_set};
use sot::{Kernel, NodeSystem, ProblemInstance};

fn main() -> sot::Result<()> {
    // J is -inf on [0, 2/3) and zero from 2/3 on; one log node.
    let instance = ProblemInstance::new(Kernel::log(), vec![1.0], step_gate_field())?;
    let x = NodeSystem::new(vec![1.0 / 3.0])?;

    for t in [0.0, 0.5, 2.0 / 3.0, 0.9, 1.0] {
        println!(
            "t = {t:<10.6} f = {:<24} F = {}",
            f_pure(&instance, &x, t)?.to_string(),
            f_weighted(&instance, &x, t)?
        );
    }

    println!("\nsingularity set of F(x, ·):");
    for component in singularity_set(&instance, &x) {
        let left = if component.lo_closed { '[' } else { '(' };
        let right = if component.hi_closed { ']' } else { ')' };
        if component.is_point() {
            println!("  point {{{}}}", component.lo);
        } else {
            println!("  {left}{}, {}{right}", component.lo, component.hi);
        }
    }
    println!("x = (1/3) regular? {}", is_regular(&instance, &x));

    let y = NodeSystem::new(vec![5.0 / 6.0])?;
    println!("y = (5/6) regular? {}", is_regular(&instance, &y));
    Ok(())
}
