//! Structural transformations: reflecting an instance through t ↦ 1-t
//! reverses the maxima vector, and absorbing a node into the field merges
//! the two adjacent interval maxima.
//!
//! Run with: cargo run --example reflect_absorb

use sot::intertwining::{absorb_node, apply_merge_map, reflect_instance};
use sot::translates::interval_maxima;
use sot::{FieldFunction, Kernel, NodeSystem, ProblemInstance};

fn main() -> sot::Result<()> {
    let instance = ProblemInstance::new(Kernel::log(), vec![1.0, 2.0], FieldFunction::zero())?;
    let y = NodeSystem::new(vec![0.2, 0.6])?;

    let original = interval_maxima(&instance, &y, 1e-12)?;
    println!("m(y)            = {:?}", original.m());

    let (reflected, reflected_nodes) = reflect_instance(&instance, &y);
    let mirrored = interval_maxima(&reflected, &reflected_nodes, 1e-12)?;
    println!("reflected nodes = {:?}", reflected_nodes.nodes());
    println!("m*(y*)          = {:?}  (reversed order of m(y))", mirrored.m());

    // Absorb the first node: the field gains the translate 1·K(t - 0.2).
    let (reduced, reduced_nodes, merge_map) = absorb_node(&instance, &y, 1)?;
    let reduced_maxima = interval_maxima(&reduced, &reduced_nodes, 1e-12)?;
    let expected = apply_merge_map(&merge_map, &original);
    println!("\nabsorbed node 1: remaining nodes {:?}", reduced_nodes.nodes());
    println!("merge map       = {merge_map:?}");
    println!("m* computed     = {:?}", reduced_maxima.m());
    println!("m* from merge   = {expected:?}");
    Ok(())
}
