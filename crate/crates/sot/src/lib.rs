//! Analysis toolkit for weighted sums of kernel translates
//! `F(y, t) = J(t) + Σ ν_j K(t - y_j)` on `[0, 1]`.
//!
//! The library evaluates interval maxima vectors of such functions over
//! ordered node systems, solves equioscillation and simplex minimax/maximin
//! problems, checks translate-widening inequalities on grids, classifies
//! maxima vectors (majorization vs. intertwining), and runs reproducible
//! randomized searches for majorization counterexamples.
//!
//! Start with the runnable examples (`cargo run --example interval_maxima`),
//! or drive everything from config files through [`harness`] and the `sot`
//! binary.
//!
//! ```
//! use sot::solvers::{find_equioscillation, SolverOptions};
//! use sot::{FieldFunction, Kernel, ProblemInstance};
//!
//! let instance = ProblemInstance::new(Kernel::log(), vec![1.0; 3], FieldFunction::zero())?;
//! let level = find_equioscillation(&instance, &SolverOptions::default())?;
//! println!("nodes {:?}, value {}", level.nodes.nodes(), level.value);
//! # Ok::<(), sot::Error>(())
//! ```

pub mod error;
pub mod ext_real;
pub mod field;
pub mod harness;
pub mod instance;
pub mod intertwining;
pub mod kernel;
pub mod lemma;
pub mod nodes;
pub mod solvers;
pub mod translates;

pub use error::{Error, Result};
pub use ext_real::ExtReal;
pub use field::{FieldFunction, FieldPiece, Translate};
pub use instance::ProblemInstance;
pub use kernel::Kernel;
pub use nodes::NodeSystem;
pub use translates::MaximaVector;
