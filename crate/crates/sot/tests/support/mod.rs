//! Shared fixtures, random generators, and independent oracles for the
//! integration and acceptance suites.
#![allow(dead_code)] // each test binary uses a different subset
//!
//! The dense-grid oracle here deliberately uses only pointwise evaluation of
//! the weighted sum, never the production interval-maxima path, so the two
//! routes stay independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sot::ext_real::{ExtReal, Finite};
use sot::field::{FieldFunction, FieldPiece, Translate};
use sot::translates::{f_weighted, is_regular};
use sot::{Kernel, NodeSystem, ProblemInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The three strictly concave, strictly monotone fixture kernels.
pub fn fixture_kernels() -> Vec<(&'static str, Kernel)> {
    vec![
        ("log", Kernel::log()),
        ("log_shifted_0p1", Kernel::log_shifted(0.1).unwrap()),
        ("power_0p5", Kernel::power(0.5).unwrap()),
    ]
}

/// Fixture fields: zero, a step, a concave quadratic, and a field with one
/// interior `-∞` gap. All upper semicontinuous.
pub fn fixture_fields() -> Vec<(&'static str, FieldFunction)> {
    let step = FieldFunction::from_parts(
        vec![0.0, 0.5, 1.0],
        vec![
            FieldPiece::Constant { value: 0.0 },
            FieldPiece::Constant { value: -0.4 },
        ],
        vec![Finite(0.0), Finite(0.0), Finite(-0.4)],
    )
    .unwrap();
    let quadratic = FieldFunction::from_pieces(
        vec![0.0, 1.0],
        vec![FieldPiece::Quadratic {
            a: -0.5,
            b: 0.4,
            c: 0.12,
        }],
    )
    .unwrap();
    let gap = FieldFunction::from_parts(
        vec![0.0, 0.4, 0.55, 1.0],
        vec![
            FieldPiece::Constant { value: 0.0 },
            FieldPiece::NegInfinity,
            FieldPiece::Constant { value: 0.0 },
        ],
        vec![Finite(0.0), Finite(0.0), Finite(0.0), Finite(0.0)],
    )
    .unwrap();
    vec![
        ("zero", FieldFunction::zero()),
        ("step", step),
        ("quadratic", quadratic),
        ("gap", gap),
    ]
}

/// The 12-instance fixture set (3 kernels x 4 fields) at a given `n`, with
/// unit weights.
pub fn fixture_instances(n: usize) -> Vec<(String, ProblemInstance)> {
    let mut out = Vec::new();
    for (kname, kernel) in fixture_kernels() {
        for (fname, field) in fixture_fields() {
            let instance = ProblemInstance::new(kernel, vec![1.0; n], field.clone())
                .expect("fixture instances are valid");
            out.push((format!("{kname}/{fname}/n{n}"), instance));
        }
    }
    out
}

/// Sorted uniform draw of `n` nodes.
pub fn random_nodes(rng: &mut ChaCha8Rng, n: usize) -> NodeSystem {
    let mut coords: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    coords.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    NodeSystem::new(coords).expect("sorted draws in [0, 1]")
}

/// Rejection-samples a regular node system.
pub fn random_regular_nodes(
    instance: &ProblemInstance,
    rng: &mut ChaCha8Rng,
) -> NodeSystem {
    for _ in 0..1000 {
        let y = random_nodes(rng, instance.n());
        if is_regular(instance, &y) {
            return y;
        }
    }
    panic!("could not sample a regular node system in 1000 attempts");
}

fn random_kernel(rng: &mut ChaCha8Rng) -> Kernel {
    match rng.gen_range(0..4) {
        0 => Kernel::log(),
        1 => Kernel::log_shifted(rng.gen_range(0.02..0.3)).unwrap(),
        2 => Kernel::power(rng.gen_range(0.3..1.0)).unwrap(),
        _ => Kernel::neg_parabola(rng.gen_range(0.2..0.8)).unwrap(),
    }
}

fn random_piece(rng: &mut ChaCha8Rng) -> FieldPiece {
    match rng.gen_range(0..10) {
        0..=4 => FieldPiece::Constant {
            value: rng.gen_range(-1.0..1.0),
        },
        5 | 6 => FieldPiece::Affine {
            slope: rng.gen_range(-2.0..2.0),
            intercept: rng.gen_range(-1.0..1.0),
        },
        7 | 8 => FieldPiece::Quadratic {
            a: rng.gen_range(-2.0..0.0),
            b: rng.gen_range(-1.0..1.0),
            c: rng.gen_range(-1.0..1.0),
        },
        _ => FieldPiece::NegInfinity,
    }
}

fn random_field(rng: &mut ChaCha8Rng) -> FieldFunction {
    let interior = rng.gen_range(0..3usize);
    let mut breakpoints: Vec<f64> = vec![0.0, 1.0];
    while breakpoints.len() < interior + 2 {
        let candidate = rng.gen_range(0.05..0.95);
        if breakpoints.iter().all(|b| (b - candidate).abs() > 0.05) {
            breakpoints.push(candidate);
        }
    }
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));

    let mut pieces: Vec<FieldPiece> = (0..breakpoints.len() - 1)
        .map(|_| random_piece(rng))
        .collect();
    if pieces
        .iter()
        .all(|p| matches!(p, FieldPiece::NegInfinity))
    {
        pieces[0] = FieldPiece::Constant { value: 0.0 };
    }

    let mut point_values = vec![ExtReal::NEG_INFINITY; breakpoints.len()];
    // Occasional upper semicontinuous spike at an interior breakpoint.
    if breakpoints.len() > 2 && rng.gen::<f64>() < 0.2 {
        let k = rng.gen_range(1..breakpoints.len() - 1);
        point_values[k] = Finite(rng.gen_range(0.0..1.0));
    }

    let mut field = FieldFunction::from_parts(breakpoints, pieces, point_values).unwrap();
    if rng.gen::<f64>() < 0.3 {
        let kernel = if rng.gen::<bool>() {
            Kernel::log()
        } else {
            Kernel::power(0.5).unwrap()
        };
        field = field
            .with_translate(Translate {
                weight: rng.gen_range(0.5..1.5),
                center: rng.gen_range(0.0..1.0),
                kernel,
            })
            .unwrap();
    }
    field
}

/// Random valid instance with `n` drawn from `n_lo..=n_hi`.
pub fn random_instance(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize) -> ProblemInstance {
    loop {
        let n = rng.gen_range(n_lo..=n_hi);
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
        let kernel = random_kernel(rng);
        let field = random_field(rng);
        if let Ok(instance) = ProblemInstance::new(kernel, weights, field) {
            return instance;
        }
    }
}

/// Brute-force interval maxima on a dense grid: per interval, a uniform grid
/// at 1e-6 spacing (at least 4096 points, so narrow intervals stay resolved)
/// plus the interval endpoints, field breakpoints and translate centers.
pub fn dense_grid_maxima(instance: &ProblemInstance, y: &NodeSystem) -> Vec<ExtReal> {
    let mut out = Vec::with_capacity(y.n() + 1);
    for j in 0..=y.n() {
        let (lo, hi) = y.interval(j);
        let mut best = f_weighted(instance, y, lo).unwrap();
        let mut consider = |t: f64| {
            let v = f_weighted(instance, y, t).unwrap();
            if v > best {
                best = v;
            }
        };
        consider(hi);
        for &b in instance.field().breakpoints() {
            if b > lo && b < hi {
                consider(b);
            }
        }
        for tr in instance.field().translates() {
            if tr.center > lo && tr.center < hi {
                consider(tr.center);
            }
        }
        if hi > lo {
            let m = (((hi - lo) * 1e6).ceil() as usize).max(4096);
            for k in 1..m {
                consider(lo + (hi - lo) * k as f64 / m as f64);
            }
        }
        out.push(best);
    }
    out
}
