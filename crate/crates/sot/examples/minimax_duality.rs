//! The simplex minimax M(S) = inf m̄ and maximin m(S) = sup m̲ agree for
//! monotone kernels; this example computes both sides on an instance with a
//! nontrivial field and reports the gap.
//!
//! Run with: cargo run --example minimax_duality

use sot::ext_real::Finite;
use sot::solvers::{maximize_min, minimize_max, SolverOptions};
use sot::{FieldFunction, FieldPiece, Kernel, ProblemInstance};

fn main() -> sot::Result<()> {
    // A step field: 0 on (0, 1/2), -0.4 on (1/2, 1).
    let field = FieldFunction::from_parts(
        vec![0.0, 0.5, 1.0],
        vec![
            FieldPiece::Constant { value: 0.0 },
            FieldPiece::Constant { value: -0.4 },
        ],
        vec![Finite(0.0), Finite(0.0), Finite(-0.4)],
    )?;

    for (name, kernel) in [
        ("log", Kernel::log()),
        ("log_shifted(0.1)", Kernel::log_shifted(0.1)?),
        ("power(0.5)", Kernel::power(0.5)?),
    ] {
        let instance = ProblemInstance::new(kernel, vec![1.0, 1.0], field.clone())?;
        let options = SolverOptions::default();
        let minimax = minimize_max(&instance, &options)?;
        let maximin = maximize_min(&instance, &options)?;
        let gap = minimax.value.unwrap_finite() - maximin.value.unwrap_finite();
        println!("kernel {name}");
        println!("  M(S) ≈ {}   at nodes {:?}", minimax.value, minimax.nodes.nodes());
        println!("  m(S) ≈ {}   at nodes {:?}", maximin.value, maximin.nodes.nodes());
        println!("  gap  = {gap:.3e}");
    }
    Ok(())
}
