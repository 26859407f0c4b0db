//! Built-in reference checks with pinned expected values.
//!
//! Three groups: the one-node gate-field majorization example, equioscillation
//! against the classical minimal-polynomial closed form for small `n`, and a
//! κ = 1 widening comparison with frozen values.

use crate::field::{step_gate_field, FieldFunction};
use crate::instance::ProblemInstance;
use crate::intertwining::{compare_maxima, Relation};
use crate::kernel::Kernel;
use crate::lemma::{check_widening_part, widening_sides, WideningParams, WideningPart};
use crate::nodes::NodeSystem;
use crate::solvers::{find_equioscillation, SolverOptions};
use crate::translates::interval_maxima;

pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> GoldenCheck {
    GoldenCheck {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn approx(name: &str, got: f64, want: f64, tol: f64) -> GoldenCheck {
    check(
        name,
        (got - want).abs() <= tol,
        format!("got {got}, want {want} within {tol}"),
    )
}

/// Sorted equioscillation nodes of the zero-field log instance with unit
/// weights: `(1 + cos((2k-1)π/(2n))) / 2`.
pub fn reference_level_nodes(n: usize) -> Vec<f64> {
    let mut nodes: Vec<f64> = (1..=n)
        .map(|k| {
            let angle = (2 * k - 1) as f64 * std::f64::consts::PI / (2 * n) as f64;
            (1.0 + angle.cos()) / 2.0
        })
        .collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    nodes
}

/// The corresponding level value `(1 - 2n)·ln 2`.
pub fn reference_level_value(n: usize) -> f64 {
    (1.0 - 2.0 * n as f64) * 2.0f64.ln()
}

fn gate_checks(out: &mut Vec<GoldenCheck>) {
    let inst = ProblemInstance::new(Kernel::log(), vec![1.0], step_gate_field())
        .expect("gate instance is valid");
    let x = NodeSystem::new(vec![1.0 / 3.0]).unwrap();
    let y = NodeSystem::new(vec![2.0 / 3.0]).unwrap();
    let mx = interval_maxima(&inst, &x, 1e-12).unwrap();
    let my = interval_maxima(&inst, &y, 1e-12).unwrap();

    out.push(check(
        "gate_m0_both_neg_inf",
        !mx.m()[0].is_finite() && !my.m()[0].is_finite(),
        format!("m0(x) = {}, m0(y) = {}", mx.m()[0], my.m()[0]),
    ));
    out.push(approx(
        "gate_m1_x",
        mx.m()[1].finite_value().unwrap_or(f64::MIN),
        (2.0f64 / 3.0).ln(),
        1e-9,
    ));
    out.push(approx(
        "gate_m1_y",
        my.m()[1].finite_value().unwrap_or(f64::MIN),
        (1.0f64 / 3.0).ln(),
        1e-9,
    ));
    let cmp = compare_maxima(&inst, &x, &y, 1e-9).unwrap();
    out.push(check(
        "gate_x_majorizes_y",
        cmp.relation == Relation::XMajorizesY,
        format!("relation = {:?}", cmp.relation),
    ));
}

fn equioscillation_checks(out: &mut Vec<GoldenCheck>) {
    for n in 1..=3usize {
        let inst = ProblemInstance::new(Kernel::log(), vec![1.0; n], FieldFunction::zero())
            .expect("zero-field instance is valid");
        let result = find_equioscillation(&inst, &SolverOptions::default())
            .expect("solver options are valid");
        let reference = reference_level_nodes(n);
        let node_err = result
            .nodes
            .nodes()
            .iter()
            .zip(&reference)
            .map(|(got, want)| (got - want).abs())
            .fold(0.0, f64::max);
        out.push(check(
            &format!("level_nodes_n{n}"),
            node_err <= 1e-6,
            format!("max node error {node_err:.3e}"),
        ));
        out.push(approx(
            &format!("level_value_n{n}"),
            result.value.finite_value().unwrap_or(f64::MIN),
            reference_level_value(n),
            1e-6,
        ));
    }
}

fn widening_checks(out: &mut Vec<GoldenCheck>) {
    let params = WideningParams::new(1.0, 1.0, 0.1, 0.2, 0.6, 0.7).expect("valid params");
    let kappa = params.kappa().expect("strictly ordered");
    out.push(approx("widening_kappa_one", kappa, 1.0, 1e-12));

    let sides = widening_sides(&Kernel::log(), &params, 0.05).expect("t in range");
    out.push(approx(
        "widening_lhs_at_0p05",
        sides.lhs.finite_value().unwrap_or(f64::MIN),
        0.0325f64.ln(),
        1e-9,
    ));
    out.push(approx(
        "widening_rhs_at_0p05",
        sides.rhs.finite_value().unwrap_or(f64::MIN),
        0.0825f64.ln(),
        1e-9,
    ));

    let report = check_widening_part(&Kernel::log(), &params, WideningPart::C, 1000)
        .expect("hypotheses hold");
    out.push(check(
        "widening_part_c_no_violations",
        report.passed(),
        format!("{} violations in {} samples", report.violations.len(), report.checked),
    ));
}

/// Runs every golden check.
pub fn run_golden_suite() -> Vec<GoldenCheck> {
    let mut out = Vec::new();
    gate_checks(&mut out);
    equioscillation_checks(&mut out);
    widening_checks(&mut out);
    out
}
