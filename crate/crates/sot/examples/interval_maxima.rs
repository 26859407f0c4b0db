//! Compute the interval maxima vector of a weighted sum of translates.
//!
//! Run with: cargo run --example interval_maxima

use sot::translates::{interval_maxima, m_bar, m_under};
use sot::{FieldFunction, Kernel, NodeSystem, ProblemInstance};

fn main() -> sot::Result<()> {
    // F(y, t) = ln|t - 0.3| + ln|t - 0.7| on [0, 1].
    let instance = ProblemInstance::new(Kernel::log(), vec![1.0, 1.0], FieldFunction::zero())?;
    let y = NodeSystem::new(vec![0.3, 0.7])?;

    let maxima = interval_maxima(&instance, &y, 1e-12)?;
    println!("nodes: {:?}", y.nodes());
    for (j, (m, arg)) in maxima.m().iter().zip(maxima.argmax()).enumerate() {
        let (lo, hi) = y.interval(j);
        match arg {
            Some(t) => println!("m_{j} over [{lo:.3}, {hi:.3}] = {m}  (attained at t = {t:.6})"),
            None => println!("m_{j} over [{lo:.3}, {hi:.3}] = {m}  (interval is singular)"),
        }
    }
    println!("m_bar   = {}", m_bar(&instance, &y));
    println!("m_under = {}", m_under(&instance, &y));
    println!("regular: {}", maxima.is_regular());

    // Closed forms for this instance: ln 0.21 at the outer intervals
    // (endpoints t = 0 and t = 1), ln 0.04 at the middle (t = 1/2).
    println!("ln 0.21 = {}", 0.21f64.ln());
    println!("ln 0.04 = {}", 0.04f64.ln());
    Ok(())
}
