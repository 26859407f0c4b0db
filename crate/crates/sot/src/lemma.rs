//! Grid-checked translate-widening inequalities.
//!
//! For translate centers `0 <= α < a < b < β <= 1`, weights `p, q > 0` and
//! the ratio `κ = p(a-α) / (q(β-b))`, the two-translate comparison
//! `p·K(t-α) + q·K(t-β)  vs  p·K(t-a) + q·K(t-b)` obeys, per kernel class:
//!
//! - part `a`: monotone kernel, `κ >= 1` → `lhs <= rhs` on `[0, α]`;
//! - part `b`: monotone kernel, `κ <= 1` → `lhs <= rhs` on `[β, 1]`;
//! - part `c`: `κ = 1`, any kernel → `lhs <= rhs` on `[0, α] ∪ [β, 1]`;
//! - part `e`: monotone kernel → `lhs >= rhs` on `[a, b]`.
//!
//! For strictly concave kernels the inequalities of parts `a`–`c` are strict
//! at interior points, and part `e` is strict for strictly monotone kernels.
//! These predicates run on sample grids: the goal is executable
//! falsification, not proof.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::kernel::Kernel;

/// Tolerance for treating a computed `κ` as exactly 1.
pub const KAPPA_ONE_TOL: f64 = 1e-12;

/// Slack allowed before an inequality sample counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-10;

/// Parameters of the widening comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct WideningParams {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub beta: f64,
}

impl WideningParams {
    /// Requires `p, q > 0` and `0 <= α <= a <= b <= β <= 1` with `a < b`.
    /// Degenerate `α = a` or `b = β` is admitted so that the identity case
    /// can be expressed; [`WideningParams::kappa`] then rejects it.
    pub fn new(p: f64, q: f64, alpha: f64, a: f64, b: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::WideningParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        let ordered = [alpha, a, b, beta];
        if ordered.iter().any(|v| !v.is_finite()) {
            return Err(Error::WideningParams(format!(
                "centers must be finite, got {ordered:?}"
            )));
        }
        if !(0.0 <= alpha && alpha <= a && a < b && b <= beta && beta <= 1.0) {
            return Err(Error::WideningParams(format!(
                "need 0 <= alpha <= a < b <= beta <= 1, got alpha={alpha}, a={a}, b={b}, beta={beta}"
            )));
        }
        Ok(WideningParams {
            p,
            q,
            alpha,
            a,
            b,
            beta,
        })
    }

    /// `κ = p(a-α) / (q(β-b))`; requires the strict ordering `α < a`, `b < β`.
    pub fn kappa(&self) -> Result<f64> {
        if !(self.alpha < self.a && self.b < self.beta) {
            return Err(Error::WideningParams(format!(
                "kappa needs alpha < a and b < beta, got alpha={}, a={}, b={}, beta={}",
                self.alpha, self.a, self.b, self.beta
            )));
        }
        Ok(self.p * (self.a - self.alpha) / (self.q * (self.beta - self.b)))
    }

    fn is_strictly_ordered(&self) -> bool {
        self.alpha < self.a && self.b < self.beta
    }
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    p: f64,
    q: f64,
    alpha: f64,
    a: f64,
    b: f64,
    beta: f64,
}

impl TryFrom<ParamsRepr> for WideningParams {
    type Error = Error;

    fn try_from(r: ParamsRepr) -> Result<Self> {
        WideningParams::new(r.p, r.q, r.alpha, r.a, r.b, r.beta)
    }
}

impl From<WideningParams> for ParamsRepr {
    fn from(w: WideningParams) -> ParamsRepr {
        ParamsRepr {
            p: w.p,
            q: w.q,
            alpha: w.alpha,
            a: w.a,
            b: w.b,
            beta: w.beta,
        }
    }
}

/// Both sides of the comparison at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WideningSides {
    /// `p·K(t-α) + q·K(t-β)` — the widened pair.
    pub lhs: ExtReal,
    /// `p·K(t-a) + q·K(t-b)` — the inner pair.
    pub rhs: ExtReal,
}

/// Evaluates both sides at `t ∈ [0, 1]`. All four shifts stay in `[-1, 1]`
/// automatically because centers and `t` lie in `[0, 1]`.
pub fn widening_sides(kernel: &Kernel, params: &WideningParams, t: f64) -> Result<WideningSides> {
    if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
        return Err(Error::Domain {
            what: "evaluation point",
            value: t,
            expected: "[0, 1]",
        });
    }
    let term = |center: f64, weight: f64| kernel.eval_unchecked(t - center).scale(weight);
    Ok(WideningSides {
        lhs: term(params.alpha, params.p) + term(params.beta, params.q),
        rhs: term(params.a, params.p) + term(params.b, params.q),
    })
}

/// Which part of the widening inequality to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WideningPart {
    A,
    B,
    C,
    E,
}

impl WideningPart {
    /// The `t`-ranges on which the part applies.
    fn ranges(&self, params: &WideningParams) -> Vec<(f64, f64)> {
        match self {
            WideningPart::A => vec![(0.0, params.alpha)],
            WideningPart::B => vec![(params.beta, 1.0)],
            WideningPart::C => vec![(0.0, params.alpha), (params.beta, 1.0)],
            WideningPart::E => vec![(params.a, params.b)],
        }
    }
}

/// One sampled violation of the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ViolationSample {
    pub t: f64,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
}

/// Outcome of a grid check of one part.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationReport {
    pub part: WideningPart,
    pub checked: usize,
    pub violations: Vec<ViolationSample>,
    /// Smallest signed margin seen (`rhs - lhs` for parts a–c, `lhs - rhs`
    /// for part e); `None` when every sample had an infinite margin.
    pub min_margin: Option<f64>,
    /// Margin at the midpoint of each range, for strictness assertions.
    pub midpoint_margins: Vec<f64>,
    /// Whether strictness at interior samples was required and satisfied.
    pub strict_interior: bool,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.strict_interior
    }
}

/// Checks one part of the widening inequality on `grid` points per range.
///
/// Errors with `HypothesesNotMet` when the `(kernel, params)` combination
/// does not satisfy the part's hypotheses; callers are expected to
/// pre-filter.
pub fn check_widening_part(
    kernel: &Kernel,
    params: &WideningParams,
    part: WideningPart,
    grid: usize,
) -> Result<ViolationReport> {
    if grid < 2 {
        return Err(Error::Domain {
            what: "grid",
            value: grid as f64,
            expected: "at least 2",
        });
    }
    let flags = kernel.flags();
    match part {
        WideningPart::A => {
            if !params.is_strictly_ordered() {
                return Err(Error::HypothesesNotMet(
                    "part a needs strict ordering alpha < a, b < beta".into(),
                ));
            }
            if !flags.monotone {
                return Err(Error::HypothesesNotMet(
                    "part a needs a monotone kernel".into(),
                ));
            }
            if params.kappa()? < 1.0 - KAPPA_ONE_TOL {
                return Err(Error::HypothesesNotMet("part a needs kappa >= 1".into()));
            }
        }
        WideningPart::B => {
            if !params.is_strictly_ordered() {
                return Err(Error::HypothesesNotMet(
                    "part b needs strict ordering alpha < a, b < beta".into(),
                ));
            }
            if !flags.monotone {
                return Err(Error::HypothesesNotMet(
                    "part b needs a monotone kernel".into(),
                ));
            }
            if params.kappa()? > 1.0 + KAPPA_ONE_TOL {
                return Err(Error::HypothesesNotMet("part b needs kappa <= 1".into()));
            }
        }
        WideningPart::C => {
            if !params.is_strictly_ordered() {
                return Err(Error::HypothesesNotMet(
                    "part c needs strict ordering alpha < a, b < beta".into(),
                ));
            }
            let kappa = params.kappa()?;
            if (kappa - 1.0).abs() > KAPPA_ONE_TOL {
                return Err(Error::HypothesesNotMet(format!(
                    "part c needs kappa = 1, got {kappa}"
                )));
            }
        }
        WideningPart::E => {
            if !params.is_strictly_ordered() {
                return Err(Error::HypothesesNotMet(
                    "part e needs strict ordering alpha < a, b < beta".into(),
                ));
            }
            if !flags.monotone {
                return Err(Error::HypothesesNotMet(
                    "part e needs a monotone kernel".into(),
                ));
            }
        }
    }

    // Strict inequality applies at interior samples for strictly concave
    // kernels (parts a-c) and strictly monotone kernels (part e).
    let require_strict = match part {
        WideningPart::E => flags.strictly_monotone,
        _ => flags.strictly_concave,
    };

    let mut report = ViolationReport {
        part,
        checked: 0,
        violations: Vec::new(),
        min_margin: None,
        midpoint_margins: Vec::new(),
        strict_interior: true,
    };

    for (lo, hi) in part.ranges(params) {
        debug_assert!(lo <= hi);
        let steps = if lo == hi { 1 } else { grid };
        for i in 0..steps {
            let t = if steps == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            };
            let sides = widening_sides(kernel, params, t)?;
            // Signed margin in the direction the part asserts.
            let margin = match part {
                WideningPart::E => signed_margin(sides.rhs, sides.lhs),
                _ => signed_margin(sides.lhs, sides.rhs),
            };
            report.checked += 1;
            if let Some(m) = margin {
                report.min_margin = Some(report.min_margin.map_or(m, |cur: f64| cur.min(m)));
                if m < -VIOLATION_SLACK {
                    report.violations.push(ViolationSample {
                        t,
                        lhs: sides.lhs,
                        rhs: sides.rhs,
                    });
                }
                let interior = t > lo && t < hi;
                if require_strict && interior && m <= 0.0 {
                    report.strict_interior = false;
                }
            }
        }
        let mid = 0.5 * (lo + hi);
        let sides = widening_sides(kernel, params, mid)?;
        let margin = match part {
            WideningPart::E => signed_margin(sides.rhs, sides.lhs),
            _ => signed_margin(sides.lhs, sides.rhs),
        };
        if let Some(m) = margin {
            report.midpoint_margins.push(m);
        }
    }
    Ok(report)
}

/// `big - small` when both are finite; `None` when the bounded-above side is
/// `-∞` (the inequality is trivially satisfied); `f64::MIN` as a violation
/// marker when only the dominating side is `-∞`.
fn signed_margin(small: ExtReal, big: ExtReal) -> Option<f64> {
    match (small, big) {
        (ExtReal::Finite(s), ExtReal::Finite(b)) => Some(b - s),
        (ExtReal::NegInfinity, _) => None,
        (ExtReal::Finite(_), ExtReal::NegInfinity) => Some(f64::MIN),
    }
}
