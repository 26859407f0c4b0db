//! Equioscillation, simplex minimax and maximin solvers.
//!
//! The primary equioscillation algorithm is a leveling sweep: for each node
//! in turn, move it inside the gap between its neighbours by bisection until
//! the two adjacent interval maxima agree (their difference is monotone in
//! the node position for monotone kernels). A move is kept only if it does
//! not increase the residual `m̄ - m̲`, so accepted steps improve
//! monotonically. On stall the solver falls back to derivative-free
//! coordinate pattern search over the residual; the minimax and maximin
//! drivers use the same pattern search over `m̄` and `m̲` directly. None of
//! this relies on differentiability of the interval maxima.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::instance::ProblemInstance;
use crate::nodes::NodeSystem;
use crate::translates::{interval_max_single, interval_maxima, DEFAULT_ARGMAX_TOL};

/// Knobs shared by all solver entry points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub residual_tol: f64,
    pub max_sweeps: usize,
    pub multistart: usize,
    pub rng_seed: u64,
    pub direct_search_budget: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            residual_tol: 1e-8,
            max_sweeps: 500,
            multistart: 8,
            rng_seed: 0,
            direct_search_budget: 20_000,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol.is_finite() && self.residual_tol > 0.0) {
            return Err(Error::SolverOptions(format!(
                "residual_tol must be positive, got {}",
                self.residual_tol
            )));
        }
        if self.max_sweeps == 0 || self.multistart == 0 {
            return Err(Error::SolverOptions(
                "max_sweeps and multistart must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    Stalled,
    BudgetExhausted,
}

/// Outcome of one solver call.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    pub nodes: NodeSystem,
    /// Objective value at the returned nodes: `m̄` for equioscillation and
    /// minimax, `m̲` for maximin.
    pub value: ExtReal,
    /// `m̄ - m̲` at the returned nodes; `None` when the system is singular.
    pub residual: Option<f64>,
    pub status: SolveStatus,
    /// Number of maxima-vector (or single-interval pair) evaluations.
    pub evaluations: u64,
}

/// `m̄(y) - m̲(y) >= 0`; errors when `y` is singular.
pub fn equioscillation_residual(instance: &ProblemInstance, y: &NodeSystem) -> Result<f64> {
    let mv = interval_maxima(instance, y, DEFAULT_ARGMAX_TOL)?;
    if let Some(index) = mv.m().iter().position(|v| !v.is_finite()) {
        return Err(Error::SingularNodeSystem { index });
    }
    Ok(mv.m_bar().unwrap_finite() - mv.m_under().unwrap_finite())
}

/// Residual with a `+∞` sentinel for singular systems (internal only).
fn residual_sentinel(instance: &ProblemInstance, nodes: &[f64], evals: &mut u64) -> f64 {
    *evals += 1;
    let y = NodeSystem::new(nodes.to_vec()).expect("candidate nodes are sorted and in range");
    let mv = interval_maxima(instance, &y, DEFAULT_ARGMAX_TOL).expect("positive tolerance");
    match (mv.m_bar(), mv.m_under()) {
        (ExtReal::Finite(hi), ExtReal::Finite(lo)) => hi - lo,
        _ => f64::INFINITY,
    }
}

fn distance(a: ExtReal, b: ExtReal) -> f64 {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => (x - y).abs(),
        (ExtReal::NegInfinity, ExtReal::NegInfinity) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Deterministic multistart seeds: one equispaced system followed by sorted
/// uniform draws.
fn multistart_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut points = Vec::with_capacity(count);
    points.push(
        (1..=n)
            .map(|i| i as f64 / (n + 1) as f64)
            .collect::<Vec<_>>(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while points.len() < count {
        let mut draw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        draw.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        points.push(draw);
    }
    points
}

/// Sorts and clamps a coordinate vector onto the closed ordered simplex.
fn project_to_simplex(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    for x in &mut v {
        *x = x.clamp(0.0, 1.0);
    }
    v
}

/// Coordinate pattern search with shrinking steps, minimizing `objective`
/// over the ordered simplex. Seed evaluation is free; each trial step costs
/// one unit of budget.
fn pattern_search<F: FnMut(&[f64], &mut u64) -> f64>(
    mut objective: F,
    start: Vec<f64>,
    budget: u64,
    evals: &mut u64,
) -> (Vec<f64>, f64, bool) {
    const INITIAL_STEP: f64 = 0.05;
    const STEP_FLOOR: f64 = 1e-9;
    let mut x = project_to_simplex(start);
    let mut fx = objective(&x, evals);
    let mut remaining = budget;
    let mut step = INITIAL_STEP;
    while remaining > 0 && step >= STEP_FLOOR {
        let mut improved = false;
        'pass: for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                if remaining == 0 {
                    break 'pass;
                }
                let mut cand = x.clone();
                cand[i] = (cand[i] + dir * step).clamp(0.0, 1.0);
                let cand = project_to_simplex(cand);
                remaining -= 1;
                let fc = objective(&cand, evals);
                if fc < fx {
                    x = cand;
                    fx = fc;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx, remaining == 0)
}

/// Difference sign of the two interval maxima adjacent to node `i` when that
/// node sits at `t`.
fn level_gap(
    instance: &ProblemInstance,
    nodes: &[f64],
    i: usize,
    t: f64,
    evals: &mut u64,
) -> (std::cmp::Ordering, f64) {
    let mut candidate = nodes.to_vec();
    candidate[i - 1] = t;
    let y = NodeSystem::new(candidate).expect("bracketed move keeps nodes sorted");
    let m_prev = interval_max_single(instance, &y, i - 1, DEFAULT_ARGMAX_TOL).0;
    let m_cur = interval_max_single(instance, &y, i, DEFAULT_ARGMAX_TOL).0;
    *evals += 1;
    (m_prev.cmp(&m_cur), distance(m_prev, m_cur))
}

/// One leveling run from `start`. Returns the best nodes found, their
/// residual, and whether the run converged.
fn leveling(
    instance: &ProblemInstance,
    start: Vec<f64>,
    options: &SolverOptions,
    evals: &mut u64,
) -> (Vec<f64>, f64, SolveStatus) {
    use std::cmp::Ordering::*;
    let n = instance.n();
    let mut y = project_to_simplex(start);
    let mut residual = residual_sentinel(instance, &y, evals);
    if residual <= options.residual_tol {
        return (y, residual, SolveStatus::Converged);
    }

    for _sweep in 0..options.max_sweeps {
        let residual_at_sweep_start = residual;
        for i in 1..=n {
            let lo = if i == 1 { 0.0 } else { y[i - 2] };
            let hi = if i == n { 1.0 } else { y[i] };
            if hi - lo < 1e-12 {
                continue;
            }
            // The supremum is never attained at a singular bracket end, so
            // tiny guards do not affect results.
            let guard = (hi - lo) * 1e-9;
            let mut a = lo + guard;
            let mut b = hi - guard;
            let ord_a = level_gap(instance, &y, i, a, evals).0;
            let ord_b = level_gap(instance, &y, i, b, evals).0;
            let target = match (ord_a, ord_b) {
                // Already levelled at an end of the bracket.
                (Equal, _) => a,
                (_, Equal) => b,
                // No sign change: the root lies outside; take the closer end.
                (Greater, Greater) => a,
                (Less, Less) => b,
                (Greater, Less) => {
                    // Monotone response assumption violated; leave the node
                    // alone and let the acceptance test or the direct-search
                    // fallback sort it out.
                    y[i - 1]
                }
                (Less, Greater) => {
                    let xtol = (b - a).max(1.0) * 1e-13;
                    while b - a > xtol {
                        let mid = 0.5 * (a + b);
                        match level_gap(instance, &y, i, mid, evals).0 {
                            Less => a = mid,
                            Greater => b = mid,
                            // Exact tie: settle at the midpoint.
                            Equal => {
                                a = mid;
                                b = mid;
                            }
                        }
                    }
                    0.5 * (a + b)
                }
            };
            let mut candidate = y.clone();
            candidate[i - 1] = target;
            let candidate_residual = residual_sentinel(instance, &candidate, evals);
            // Accepted steps never increase the residual.
            if candidate_residual <= residual {
                y = candidate;
                residual = candidate_residual;
            }
        }
        if residual <= options.residual_tol {
            return (y, residual, SolveStatus::Converged);
        }
        if residual_at_sweep_start - residual < 1e-14 {
            return (y, residual, SolveStatus::Stalled);
        }
    }
    (y, residual, SolveStatus::Stalled)
}

fn result_at(
    instance: &ProblemInstance,
    nodes: Vec<f64>,
    status: SolveStatus,
    evaluations: u64,
) -> SolveResult {
    let y = NodeSystem::new(nodes).expect("solver nodes are sorted and in range");
    let mv = interval_maxima(instance, &y, DEFAULT_ARGMAX_TOL).expect("positive tolerance");
    let residual = match (mv.m_bar(), mv.m_under()) {
        (ExtReal::Finite(hi), ExtReal::Finite(lo)) => Some(hi - lo),
        _ => None,
    };
    SolveResult {
        nodes: y,
        value: mv.m_bar(),
        residual,
        status,
        evaluations,
    }
}

/// Leveling runs from every multistart point, without the direct-search
/// fallback. Used to probe agreement of independent runs.
pub fn equioscillation_runs(
    instance: &ProblemInstance,
    options: &SolverOptions,
) -> Result<Vec<SolveResult>> {
    options.validate()?;
    let starts = multistart_points(instance.n(), options.multistart, options.rng_seed);
    Ok(starts
        .into_iter()
        .map(|start| {
            let mut evals = 0;
            let (nodes, _res, status) = leveling(instance, start, options, &mut evals);
            result_at(instance, nodes, status, evals)
        })
        .collect())
}

/// Finds a node system with all interval maxima equal, to residual
/// tolerance. Leveling sweeps run from each multistart point until one
/// converges; if none does, coordinate pattern search minimizes the residual
/// from the same points.
pub fn find_equioscillation(
    instance: &ProblemInstance,
    options: &SolverOptions,
) -> Result<SolveResult> {
    options.validate()?;
    let starts = multistart_points(instance.n(), options.multistart, options.rng_seed);
    let mut evals = 0;
    let mut best: Option<(Vec<f64>, f64)> = None;

    for start in &starts {
        let (nodes, residual, status) = leveling(instance, start.clone(), options, &mut evals);
        if best.as_ref().is_none_or(|(_, r)| residual < *r) {
            best = Some((nodes.clone(), residual));
        }
        if status == SolveStatus::Converged {
            return Ok(result_at(instance, nodes, SolveStatus::Converged, evals));
        }
    }

    // Stalled everywhere: direct search on the residual.
    let budget_per = options.direct_search_budget / starts.len() as u64;
    let mut exhausted = false;
    for start in &starts {
        let (nodes, residual, used_all) = pattern_search(
            |candidate, evals| residual_sentinel(instance, candidate, evals),
            start.clone(),
            budget_per,
            &mut evals,
        );
        exhausted |= used_all;
        if best.as_ref().is_none_or(|(_, r)| residual < *r) {
            best = Some((nodes, residual));
        }
    }

    let (nodes, residual) = best.expect("at least one start");
    let status = if residual <= options.residual_tol {
        SolveStatus::Converged
    } else if exhausted {
        SolveStatus::BudgetExhausted
    } else {
        SolveStatus::Stalled
    };
    Ok(result_at(instance, nodes, status, evals))
}

/// Minimizes `m̄` over the closed simplex: the equioscillation route and an
/// independent pattern search, returning the better of the two.
pub fn minimize_max(instance: &ProblemInstance, options: &SolverOptions) -> Result<SolveResult> {
    options.validate()?;
    let eq = find_equioscillation(instance, options)?;
    let mut evals = eq.evaluations;

    let m_bar_of = |candidate: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let y = NodeSystem::new(candidate.to_vec()).expect("projected candidate");
        interval_maxima(instance, &y, DEFAULT_ARGMAX_TOL)
            .expect("positive tolerance")
            .m_bar()
            .unwrap_finite()
    };

    let starts = multistart_points(instance.n(), options.multistart, options.rng_seed);
    let budget_per = options.direct_search_budget / starts.len() as u64;
    let mut best_direct: Option<(Vec<f64>, f64)> = None;
    let mut exhausted = false;
    for start in starts {
        let (nodes, value, used_all) = pattern_search(m_bar_of, start, budget_per, &mut evals);
        exhausted |= used_all;
        if best_direct.as_ref().is_none_or(|(_, v)| value < *v) {
            best_direct = Some((nodes, value));
        }
    }

    let (direct_nodes, direct_value) = best_direct.expect("at least one start");
    let eq_value = eq.value.unwrap_finite();
    if eq_value <= direct_value {
        let status = eq.status;
        Ok(SolveResult {
            evaluations: evals,
            status,
            ..eq
        })
    } else {
        let result = result_at(instance, direct_nodes, SolveStatus::Stalled, evals);
        let status = match result.residual {
            Some(r) if r <= options.residual_tol => SolveStatus::Converged,
            _ if exhausted => SolveStatus::BudgetExhausted,
            _ => SolveStatus::Stalled,
        };
        Ok(SolveResult { status, ..result })
    }
}

/// Maximizes `m̲` over regular systems by multistart pattern search; the
/// equioscillation point, when available, joins the start set.
pub fn maximize_min(instance: &ProblemInstance, options: &SolverOptions) -> Result<SolveResult> {
    options.validate()?;
    let mut evals = 0;
    let mut starts = Vec::new();
    if options.direct_search_budget > 0 {
        let eq = find_equioscillation(instance, options)?;
        evals += eq.evaluations;
        starts.push(eq.nodes.nodes().to_vec());
    }
    starts.extend(multistart_points(
        instance.n(),
        options.multistart,
        options.rng_seed,
    ));

    // Non-regular candidates are rejected through a +inf sentinel; the
    // sentinel never leaves this closure.
    let neg_m_under = |candidate: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let y = NodeSystem::new(candidate.to_vec()).expect("projected candidate");
        match interval_maxima(instance, &y, DEFAULT_ARGMAX_TOL)
            .expect("positive tolerance")
            .m_under()
        {
            ExtReal::Finite(v) => -v,
            ExtReal::NegInfinity => f64::INFINITY,
        }
    };

    let budget_per = options.direct_search_budget / starts.len() as u64;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut exhausted = options.direct_search_budget == 0;
    for start in starts {
        let (nodes, value, used_all) = pattern_search(neg_m_under, start, budget_per, &mut evals);
        exhausted |= used_all;
        if best.as_ref().is_none_or(|(_, v)| value < *v) {
            best = Some((nodes, value));
        }
    }

    let (nodes, _) = best.expect("at least one start");
    let result = result_at(instance, nodes, SolveStatus::Stalled, evals);
    let status = match result.residual {
        Some(r) if r <= options.residual_tol => SolveStatus::Converged,
        _ if exhausted => SolveStatus::BudgetExhausted,
        _ => SolveStatus::Stalled,
    };
    let value = match result.residual {
        // Report m̲ for the maximin problem.
        Some(r) => ExtReal::finite(result.value.unwrap_finite() - r),
        None => ExtReal::NegInfinity,
    };
    Ok(SolveResult {
        value,
        status,
        ..result
    })
}
