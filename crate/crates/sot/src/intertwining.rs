//! Maxima-vector comparison, majorization search, and structural
//! transformations of instances.
//!
//! Two regular node systems *intertwine* when each has some interval maximum
//! strictly above the other's; `x` *majorizes* `y` when `m_j(x) >= m_j(y)`
//! for every `j` with at least one strict inequality. `-∞` coordinates
//! compare below all finite values, and a `(-∞, -∞)` pair counts as a tie.
//!
//! [`search_majorization`] probes for majorization between regular systems:
//! finding one with distinct node systems would contradict the intertwining
//! property, so the searcher is a falsification harness and its expected
//! verdict on monotone kernels is "nothing found".

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::field::{FieldFunction, FieldPiece, Translate};
use crate::instance::ProblemInstance;
use crate::nodes::NodeSystem;
use crate::translates::{interval_maxima, is_regular, MaximaVector, DEFAULT_ARGMAX_TOL};

/// Relation between two maxima vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    XMajorizesY,
    YMajorizesX,
    Intertwines,
}

/// Per-coordinate difference `m_j(x) - m_j(y)` with `-∞`-aware semantics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordDelta {
    /// Both coordinates finite; carries the difference.
    Finite(f64),
    /// `m_j(x)` finite, `m_j(y) = -∞`: a strict step up.
    PlusInfinite,
    /// `m_j(x) = -∞`, `m_j(y)` finite: a strict step down.
    MinusInfinite,
    /// Both `-∞`: a tie.
    NegInfTie,
}

/// Classification of a pair of node systems by their maxima vectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub relation: Relation,
    /// Index with `m_i(x) > m_i(y)`, when one exists.
    pub witness_up: Option<usize>,
    /// Index with `m_j(x) < m_j(y)`, when one exists.
    pub witness_down: Option<usize>,
    pub margins: Vec<CoordDelta>,
}

fn coord_delta(x: ExtReal, y: ExtReal) -> CoordDelta {
    match (x, y) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => CoordDelta::Finite(a - b),
        (ExtReal::Finite(_), ExtReal::NegInfinity) => CoordDelta::PlusInfinite,
        (ExtReal::NegInfinity, ExtReal::Finite(_)) => CoordDelta::MinusInfinite,
        (ExtReal::NegInfinity, ExtReal::NegInfinity) => CoordDelta::NegInfTie,
    }
}

fn classify(margins: &[CoordDelta], value_tol: f64) -> Comparison {
    let mut witness_up = None;
    let mut witness_down = None;
    for (j, delta) in margins.iter().enumerate() {
        let up = match delta {
            CoordDelta::Finite(d) => *d > value_tol,
            CoordDelta::PlusInfinite => true,
            _ => false,
        };
        let down = match delta {
            CoordDelta::Finite(d) => *d < -value_tol,
            CoordDelta::MinusInfinite => true,
            _ => false,
        };
        if up && witness_up.is_none() {
            witness_up = Some(j);
        }
        if down && witness_down.is_none() {
            witness_down = Some(j);
        }
    }
    let relation = match (witness_up, witness_down) {
        (Some(_), Some(_)) => Relation::Intertwines,
        (Some(_), None) => Relation::XMajorizesY,
        (None, Some(_)) => Relation::YMajorizesX,
        (None, None) => Relation::Equal,
    };
    Comparison {
        relation,
        witness_up,
        witness_down,
        margins: margins.to_vec(),
    }
}

/// Compares the maxima vectors of `x` and `y`; differences within
/// `value_tol` count as ties.
pub fn compare_maxima(
    instance: &ProblemInstance,
    x: &NodeSystem,
    y: &NodeSystem,
    value_tol: f64,
) -> Result<Comparison> {
    if !(value_tol.is_finite() && value_tol >= 0.0) {
        return Err(Error::Tolerance(value_tol));
    }
    let mx = interval_maxima(instance, x, DEFAULT_ARGMAX_TOL)?;
    let my = interval_maxima(instance, y, DEFAULT_ARGMAX_TOL)?;
    let margins: Vec<CoordDelta> = mx
        .m()
        .iter()
        .zip(my.m())
        .map(|(&a, &b)| coord_delta(a, b))
        .collect();
    Ok(classify(&margins, value_tol))
}

/// Search strategy for [`search_majorization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStrategy {
    RandomPairs,
    HillClimb,
}

/// Options for the majorization search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    pub budget: u64,
    pub rng_seed: u64,
    pub strategy: SearchStrategy,
    /// Margins must exceed this to count as a candidate.
    pub value_tol: f64,
    /// Require strictness in every coordinate (`(-∞, -∞)` ties disqualify).
    pub strict: bool,
    /// Diagnostic mode: admit non-regular node systems into the search.
    pub allow_nonregular: bool,
    /// Argmax tolerance used when computing maxima vectors.
    pub maxima_tol: f64,
    /// Deterministic workers the budget is partitioned across.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000,
            rng_seed: 0,
            strategy: SearchStrategy::RandomPairs,
            value_tol: 1e-9,
            strict: false,
            allow_nonregular: false,
            maxima_tol: DEFAULT_ARGMAX_TOL,
            workers: 1,
        }
    }
}

/// Search verdict: `CandidateFound` means a pair with positive verified
/// margin was found, which for regular pairs would be a majorization
/// counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    NoMajorizationFound,
    CandidateFound,
}

/// A pair for which the running best margin improved, in evaluation order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImprovementEvent {
    pub worker: usize,
    pub pair_index: u64,
    pub margin: f64,
    /// Oriented so that `m(x) <= m(y)` is the candidate direction.
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Outcome of a majorization search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub verdict: SearchVerdict,
    pub pairs_evaluated: u64,
    /// Best (largest) margin seen, with its oriented pair.
    pub best_margin: Option<f64>,
    pub best_pair: Option<(NodeSystem, NodeSystem)>,
    /// True when the best pair involves a non-regular system (possible only
    /// with `allow_nonregular`).
    pub out_of_hypothesis: bool,
    /// True when a candidate survived re-verification at 10x tighter maxima
    /// tolerance.
    pub reverified: bool,
    pub improvements: Vec<ImprovementEvent>,
}

/// Margin of the oriented claim `m(x) <= m(y)`: the smallest finite
/// coordinate gap `m_j(y) - m_j(x)`, or `None` when the claim is violated by
/// a `-∞` coordinate (or, in strict mode, by a `(-∞, -∞)` tie).
fn majorization_margin(mx: &MaximaVector, my: &MaximaVector, strict: bool) -> Option<f64> {
    let mut margin = f64::INFINITY;
    for (&a, &b) in mx.m().iter().zip(my.m()) {
        match (a, b) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => margin = margin.min(b - a),
            (ExtReal::Finite(_), ExtReal::NegInfinity) => return None,
            (ExtReal::NegInfinity, ExtReal::Finite(_)) => {}
            (ExtReal::NegInfinity, ExtReal::NegInfinity) => {
                if strict {
                    return None;
                }
            }
        }
    }
    (margin != f64::INFINITY).then_some(margin)
}

struct Sampler<'a> {
    instance: &'a ProblemInstance,
    rng: ChaCha8Rng,
    snap_points: Vec<f64>,
    allow_nonregular: bool,
}

impl<'a> Sampler<'a> {
    fn new(instance: &'a ProblemInstance, seed: u64, allow_nonregular: bool) -> Self {
        // Boundary-snapped coordinates probe the edge cases where
        // regularity changes (field breakpoints, domain endpoints).
        let snap_points = instance.field().breakpoints().to_vec();
        Sampler {
            instance,
            rng: ChaCha8Rng::seed_from_u64(seed),
            snap_points,
            allow_nonregular,
        }
    }

    fn draw_nodes(&mut self) -> Option<NodeSystem> {
        const MAX_ATTEMPTS: usize = 64;
        let n = self.instance.n();
        for _ in 0..MAX_ATTEMPTS {
            let mut coords: Vec<f64> = (0..n)
                .map(|_| {
                    if self.rng.gen::<f64>() < 0.25 {
                        self.snap_points[self.rng.gen_range(0..self.snap_points.len())]
                    } else {
                        self.rng.gen::<f64>()
                    }
                })
                .collect();
            coords.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
            let y = NodeSystem::new(coords).expect("sorted draws in [0, 1]");
            if self.allow_nonregular || is_regular(self.instance, &y) {
                return Some(y);
            }
        }
        None
    }
}

struct WorkerOutcome {
    pairs_evaluated: u64,
    best: Option<(f64, NodeSystem, NodeSystem)>,
    improvements: Vec<ImprovementEvent>,
}

fn run_worker(
    instance: &ProblemInstance,
    options: &SearchOptions,
    worker: usize,
    budget: u64,
) -> WorkerOutcome {
    let seed = options
        .rng_seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(worker as u64));
    let mut sampler = Sampler::new(instance, seed, options.allow_nonregular);
    let mut outcome = WorkerOutcome {
        pairs_evaluated: 0,
        best: None,
        improvements: Vec::new(),
    };

    let evaluate = |outcome: &mut WorkerOutcome, x: &NodeSystem, y: &NodeSystem| -> Option<f64> {
        let mx = interval_maxima(instance, x, options.maxima_tol).ok()?;
        let my = interval_maxima(instance, y, options.maxima_tol).ok()?;
        outcome.pairs_evaluated += 1;
        // Score both orientations; keep the stronger claim.
        let forward = majorization_margin(&mx, &my, options.strict);
        let backward = majorization_margin(&my, &mx, options.strict);
        let (margin, a, b) = match (forward, backward) {
            (Some(f), Some(g)) if g > f => (g, y, x),
            (Some(f), _) => (f, x, y),
            (None, Some(g)) => (g, y, x),
            (None, None) => return None,
        };
        if x.max_distance(y) <= 1e-9 {
            return None;
        }
        if outcome.best.as_ref().is_none_or(|(m, _, _)| margin > *m) {
            outcome.best = Some((margin, a.clone(), b.clone()));
            outcome.improvements.push(ImprovementEvent {
                worker,
                pair_index: outcome.pairs_evaluated - 1,
                margin,
                x: a.nodes().to_vec(),
                y: b.nodes().to_vec(),
            });
        }
        Some(margin)
    };

    match options.strategy {
        SearchStrategy::RandomPairs => {
            while outcome.pairs_evaluated < budget {
                let (Some(x), Some(y)) = (sampler.draw_nodes(), sampler.draw_nodes()) else {
                    break;
                };
                evaluate(&mut outcome, &x, &y);
            }
        }
        SearchStrategy::HillClimb => {
            // Restarted climbs: each round seeds from random pairs and then
            // ascends the margin by coordinate perturbation with shrinking
            // steps, until the budget is spent.
            const STEP_FLOOR: f64 = 1e-7;
            let seed_count = (budget / 10).clamp(1, 200);
            'restart: while outcome.pairs_evaluated < budget {
                let mut local: Option<(f64, NodeSystem, NodeSystem)> = None;
                let seed_end = (outcome.pairs_evaluated + seed_count).min(budget);
                while outcome.pairs_evaluated < seed_end {
                    let (Some(x), Some(y)) = (sampler.draw_nodes(), sampler.draw_nodes()) else {
                        break 'restart;
                    };
                    if let Some(margin) = evaluate(&mut outcome, &x, &y) {
                        if local.as_ref().is_none_or(|(m, _, _)| margin > *m) {
                            local = Some((margin, x, y));
                        }
                    }
                }
                let Some((mut local_margin, mut x, mut y)) = local else {
                    continue;
                };
                let mut step = 0.05;
                while outcome.pairs_evaluated < budget && step >= STEP_FLOOR {
                    let mut improved = false;
                    'pass: for side in 0..2 {
                        for i in 0..instance.n() {
                            for dir in [1.0, -1.0] {
                                if outcome.pairs_evaluated >= budget {
                                    break 'pass;
                                }
                                let (mut cx, mut cy) = (x.nodes().to_vec(), y.nodes().to_vec());
                                let target = if side == 0 { &mut cx } else { &mut cy };
                                target[i] = (target[i] + dir * step).clamp(0.0, 1.0);
                                target.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
                                let (Ok(nx), Ok(ny)) = (NodeSystem::new(cx), NodeSystem::new(cy))
                                else {
                                    continue;
                                };
                                if !options.allow_nonregular
                                    && !(is_regular(instance, &nx) && is_regular(instance, &ny))
                                {
                                    continue;
                                }
                                if let Some(margin) = evaluate(&mut outcome, &nx, &ny) {
                                    if margin > local_margin {
                                        local_margin = margin;
                                        x = nx;
                                        y = ny;
                                        improved = true;
                                    }
                                }
                            }
                        }
                    }
                    if !improved {
                        step *= 0.5;
                    }
                }
            }
        }
    }
    outcome
}

/// Searches for pairs of node systems whose maxima vectors are
/// coordinatewise ordered. Samples regular systems by default
/// (rejection-sampling until regular); a positive-margin candidate triggers
/// automatic re-verification at 10x tighter maxima tolerance.
pub fn search_majorization(
    instance: &ProblemInstance,
    options: &SearchOptions,
) -> Result<SearchReport> {
    if !(options.value_tol.is_finite() && options.value_tol >= 0.0) {
        return Err(Error::Tolerance(options.value_tol));
    }
    if options.workers == 0 {
        return Err(Error::SolverOptions("workers must be at least 1".into()));
    }

    let workers = options.workers.min((options.budget.max(1)) as usize).max(1);
    let base = options.budget / workers as u64;
    let extra = (options.budget % workers as u64) as usize;
    let budgets: Vec<u64> = (0..workers)
        .map(|w| base + u64::from(w < extra))
        .collect();

    let outcomes: Vec<WorkerOutcome> = if workers == 1 {
        vec![run_worker(instance, options, 0, budgets[0])]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = budgets
                .iter()
                .enumerate()
                .map(|(w, &b)| scope.spawn(move || run_worker(instance, options, w, b)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    // Deterministic merge: max margin, ties to the lowest worker index.
    let mut report = SearchReport {
        verdict: SearchVerdict::NoMajorizationFound,
        pairs_evaluated: 0,
        best_margin: None,
        best_pair: None,
        out_of_hypothesis: false,
        reverified: false,
        improvements: Vec::new(),
    };
    for outcome in outcomes {
        report.pairs_evaluated += outcome.pairs_evaluated;
        report.improvements.extend(outcome.improvements);
        if let Some((margin, x, y)) = outcome.best {
            if report.best_margin.is_none_or(|m| margin > m) {
                report.best_margin = Some(margin);
                report.best_pair = Some((x, y));
            }
        }
    }

    if let (Some(margin), Some((x, y))) = (report.best_margin, report.best_pair.as_ref()) {
        if margin > options.value_tol && x.max_distance(y) > 1e-9 {
            // Re-verify at 10x tighter maxima tolerance before declaring.
            let mx = interval_maxima(instance, x, options.maxima_tol / 10.0)?;
            let my = interval_maxima(instance, y, options.maxima_tol / 10.0)?;
            if let Some(verified) = majorization_margin(&mx, &my, options.strict) {
                if verified > options.value_tol {
                    report.verdict = SearchVerdict::CandidateFound;
                    report.reverified = true;
                    report.best_margin = Some(verified);
                    report.out_of_hypothesis =
                        !(is_regular(instance, x) && is_regular(instance, y));
                }
            }
        }
    }
    Ok(report)
}

/// Reflects an instance and node system through `t ↦ 1 - t`.
///
/// The reflected field is `J*(t) = J(1-t)`, weights reverse, and nodes map to
/// `y*_j = 1 - y_{n+1-j}`. Every built-in kernel family is even, so the
/// reflected kernel is the kernel itself, and
/// `F*(y*, s) = F(y, 1-s)` holds pointwise. Interval `I_j` of the reflected
/// system is the mirror image of `I_{n-j}`, so maxima satisfy
/// `m*_j(y*) = m_{n-j}(y)`.
pub fn reflect_instance(
    instance: &ProblemInstance,
    y: &NodeSystem,
) -> (ProblemInstance, NodeSystem) {
    let field = instance.field();

    let mut breakpoints: Vec<f64> = field.breakpoints().iter().map(|&b| 1.0 - b).collect();
    breakpoints.reverse();
    // Exactness at the ends: 1 - 0 and 1 - 1 are exact in floating point.
    breakpoints[0] = 0.0;
    *breakpoints.last_mut().expect("nonempty") = 1.0;

    let mut pieces: Vec<FieldPiece> = field.pieces().iter().map(reflect_piece).collect();
    pieces.reverse();

    let mut point_values = field.point_values().to_vec();
    point_values.reverse();

    let reflected_field = if field.non_usc_override() {
        FieldFunction::from_parts_non_usc(breakpoints, pieces, point_values)
    } else {
        FieldFunction::from_parts(breakpoints, pieces, point_values)
    }
    .expect("reflection preserves well-formedness");
    let reflected_field = field
        .translates()
        .iter()
        .fold(reflected_field, |f, tr| {
            f.with_translate(Translate {
                weight: tr.weight,
                center: 1.0 - tr.center,
                kernel: tr.kernel,
            })
            .expect("reflected translate stays valid")
        });

    let mut weights = instance.weights().to_vec();
    weights.reverse();

    let reflected_instance = ProblemInstance::new(*instance.kernel(), weights, reflected_field)
        .expect("reflection preserves validity");

    let mut nodes: Vec<f64> = y.nodes().iter().map(|&v| 1.0 - v).collect();
    nodes.reverse();
    let reflected_nodes = NodeSystem::new(nodes).expect("reflection preserves ordering");

    (reflected_instance, reflected_nodes)
}

fn reflect_piece(piece: &FieldPiece) -> FieldPiece {
    match *piece {
        FieldPiece::NegInfinity => FieldPiece::NegInfinity,
        FieldPiece::Constant { value } => FieldPiece::Constant { value },
        // p*(t) = p(1 - t).
        FieldPiece::Affine { slope, intercept } => FieldPiece::Affine {
            slope: -slope,
            intercept: slope + intercept,
        },
        FieldPiece::Quadratic { a, b, c } => FieldPiece::Quadratic {
            a,
            b: -(2.0 * a + b),
            c: a + b + c,
        },
    }
}

/// How each maximum of a reduced system relates to the original ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeSource {
    /// `m*_j = m_k` of the original system.
    Single(usize),
    /// `m*_j = max(m_k, m_{k+1})` of the original system.
    Pair(usize, usize),
}

pub type MergeMap = Vec<MergeSource>;

/// Applies a merge map to an original maxima vector, producing the expected
/// maxima of the reduced system.
pub fn apply_merge_map(map: &MergeMap, original: &MaximaVector) -> Vec<ExtReal> {
    map.iter()
        .map(|source| match *source {
            MergeSource::Single(k) => original.m()[k],
            MergeSource::Pair(k, l) => original.m()[k].max(original.m()[l]),
        })
        .collect()
}

/// Absorbs node `i` (1-based) into the field: the instance loses weight and
/// node `i`, and the field gains the translate `ν_i K(· - x_i)`. The sum of
/// translates is unchanged pointwise, so the reduced maxima are the original
/// ones with the two intervals adjacent to `x_i` merged; the returned merge
/// map records that correspondence.
pub fn absorb_node(
    instance: &ProblemInstance,
    x: &NodeSystem,
    i: usize,
) -> Result<(ProblemInstance, NodeSystem, MergeMap)> {
    let n = instance.n();
    assert_eq!(n, x.n(), "node system size must match the instance");
    if i == 0 || i > n {
        return Err(Error::NodeIndex { index: i, n });
    }
    if n == 1 {
        return Err(Error::ReductionTooSmall);
    }

    let absorbed = Translate {
        weight: instance.weights()[i - 1],
        center: x.nodes()[i - 1],
        kernel: *instance.kernel(),
    };
    let field = instance.field().clone().with_translate(absorbed)?;

    let mut weights = instance.weights().to_vec();
    weights.remove(i - 1);
    let mut nodes = x.nodes().to_vec();
    nodes.remove(i - 1);

    let reduced_instance = ProblemInstance::new(*instance.kernel(), weights, field)?;
    let reduced_nodes = NodeSystem::new(nodes)?;

    // Intervals I_{i-1} = [x_{i-1}, x_i] and I_i = [x_i, x_{i+1}] merge.
    let merge_map: MergeMap = (0..n)
        .map(|j| {
            if j < i - 1 {
                MergeSource::Single(j)
            } else if j == i - 1 {
                MergeSource::Pair(i - 1, i)
            } else {
                MergeSource::Single(j + 1)
            }
        })
        .collect();

    Ok((reduced_instance, reduced_nodes, merge_map))
}
