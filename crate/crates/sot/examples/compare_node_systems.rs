//! Classify pairs of node systems by their maxima vectors: intertwining,
//! majorization, or equality. Includes the boundary example showing why
//! majorization can occur between non-regular systems.
//!
//! Run with: cargo run --example compare_node_systems

use sot::field::step_gate_field;
use sot::intertwining::compare_maxima;
use sot::translates::is_regular;
use sot::{FieldFunction, Kernel, NodeSystem, ProblemInstance};

fn main() -> sot::Result<()> {
    // Two regular single-node systems intertwine.
    let instance = ProblemInstance::new(Kernel::log(), vec![1.0], FieldFunction::zero())?;
    let x = NodeSystem::new(vec![0.3])?;
    let y = NodeSystem::new(vec![0.5])?;
    let cmp = compare_maxima(&instance, &x, &y, 1e-9)?;
    println!("zero field, x = (0.3), y = (0.5): {:?}", cmp.relation);
    println!("  witness up   (m_i(x) > m_i(y)): {:?}", cmp.witness_up);
    println!("  witness down (m_j(x) < m_j(y)): {:?}", cmp.witness_down);
    println!("  margins: {:?}", cmp.margins);

    // With a field that is -inf left of 2/3, the pair (1/3) vs (2/3) has
    // m_0 tied at -inf and m_1 strictly larger for x: majorization. Both
    // systems are non-regular, which is exactly why the intertwining
    // property restricts to regular systems.
    let gated = ProblemInstance::new(Kernel::log(), vec![1.0], step_gate_field())?;
    let x = NodeSystem::new(vec![1.0 / 3.0])?;
    let y = NodeSystem::new(vec![2.0 / 3.0])?;
    let cmp = compare_maxima(&gated, &x, &y, 1e-9)?;
    println!("\ngate field, x = (1/3), y = (2/3): {:?}", cmp.relation);
    println!("  margins: {:?}", cmp.margins);
    println!(
        "  regular? x: {}, y: {}",
        is_regular(&gated, &x),
        is_regular(&gated, &y)
    );
    Ok(())
}
