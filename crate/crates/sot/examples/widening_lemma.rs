//! Check the translate-widening inequalities on grids: moving a pair of
//! translate centers outward can only lower the sum outside the pair (parts
//! a-c) and raise it between them (part e).
//!
//! Run with: cargo run --example widening_lemma

use sot::lemma::{check_widening_part, widening_sides, WideningParams, WideningPart};
use sot::Kernel;

fn main() -> sot::Result<()> {
    let params = WideningParams::new(1.0, 1.0, 0.1, 0.2, 0.6, 0.7)?;
    println!("kappa = {}", params.kappa()?);

    let kernel = Kernel::log();
    for t in [0.05, 0.4, 0.85] {
        let sides = widening_sides(&kernel, &params, t)?;
        println!("t = {t:<5} lhs = {:<22} rhs = {}", sides.lhs.to_string(), sides.rhs);
    }

    println!();
    for part in [
        WideningPart::A,
        WideningPart::B,
        WideningPart::C,
        WideningPart::E,
    ] {
        let report = check_widening_part(&kernel, &params, part, 1000)?;
        println!(
            "part {part:?}: {} samples, {} violations, min margin {:?}, strict interior {}",
            report.checked,
            report.violations.len(),
            report.min_margin,
            report.strict_interior,
        );
    }

    // Part c drops the monotonicity hypothesis entirely.
    let non_monotone = Kernel::neg_parabola(0.5)?;
    let report = check_widening_part(&non_monotone, &params, WideningPart::C, 1000)?;
    println!(
        "part C, non-monotone negative control: {} violations",
        report.violations.len()
    );
    Ok(())
}
