//! Piecewise external field functions on `[0, 1]`.
//!
//! A field function is upper-bounded, takes values in `ℝ ∪ {-∞}`, and must be
//! finite at sufficiently many points: counting interior points with weight 1
//! and the endpoints 0 and 1 with weight 1/2, the weighted count of finite
//! points must exceed `n` for use with `n` nodes.
//!
//! The representation is a breakpoint grid with one piece per open interval.
//! Every admitted piece class (`-∞`, constant, affine, concave quadratic) is
//! concave, so the restriction of a sum of translates to a singularity-free
//! sub-segment stays concave and can be maximized exactly. Kernel translates
//! may be attached pointwise, which is how node absorption folds a node into
//! the field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real::{ExtReal, Finite, NegInfinity};
use crate::kernel::Kernel;

/// Value of a field on one open interval between breakpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldPiece {
    NegInfinity,
    Constant { value: f64 },
    Affine { slope: f64, intercept: f64 },
    /// `a·t² + b·t + c` with `a <= 0`.
    Quadratic { a: f64, b: f64, c: f64 },
}

impl FieldPiece {
    /// The defining formula, i.e. the continuous extension of the piece to
    /// the closure of its interval.
    pub fn value(&self, t: f64) -> ExtReal {
        match *self {
            FieldPiece::NegInfinity => NegInfinity,
            FieldPiece::Constant { value } => Finite(value),
            FieldPiece::Affine { slope, intercept } => Finite(slope * t + intercept),
            FieldPiece::Quadratic { a, b, c } => Finite((a * t + b) * t + c),
        }
    }

    /// Supremum of the piece over `[lo, hi]`.
    pub fn sup_on(&self, lo: f64, hi: f64) -> ExtReal {
        match *self {
            FieldPiece::NegInfinity => NegInfinity,
            FieldPiece::Constant { value } => Finite(value),
            FieldPiece::Affine { .. } => self.value(lo).max(self.value(hi)),
            FieldPiece::Quadratic { a, b, .. } => {
                let mut best = self.value(lo).max(self.value(hi));
                if a < 0.0 {
                    let vertex = -b / (2.0 * a);
                    if vertex > lo && vertex < hi {
                        best = best.max(self.value(vertex));
                    }
                }
                best
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            FieldPiece::NegInfinity => true,
            FieldPiece::Constant { value } => value.is_finite(),
            FieldPiece::Affine { slope, intercept } => slope.is_finite() && intercept.is_finite(),
            FieldPiece::Quadratic { a, b, c } => {
                a.is_finite() && b.is_finite() && c.is_finite() && a <= 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Field(format!(
                "piece {self:?} must have finite coefficients (quadratic leading coefficient <= 0)"
            )))
        }
    }
}

/// A weighted kernel translate added pointwise to the field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Translate {
    pub weight: f64,
    pub center: f64,
    pub kernel: Kernel,
}

/// Weighted cardinality of the set where the field is finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightedCount {
    /// Finite on a set of positive measure.
    Infinite,
    /// Finite only at isolated breakpoints; endpoints count 1/2.
    Finite(f64),
}

/// Result of [`FieldFunction::validate_n_field`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NFieldReport {
    pub valid: bool,
    pub weighted_count: WeightedCount,
}

/// Piecewise upper-semicontinuous field function on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldFunction {
    breakpoints: Vec<f64>,
    pieces: Vec<FieldPiece>,
    point_values: Vec<ExtReal>,
    translates: Vec<Translate>,
    non_usc_override: bool,
}

impl FieldFunction {
    /// The zero field `J ≡ 0`.
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(value: f64) -> Self {
        Self::from_parts(
            vec![0.0, 1.0],
            vec![FieldPiece::Constant { value }],
            vec![Finite(value), Finite(value)],
        )
        .expect("constant field is well-formed")
    }

    /// Builds a field from pieces alone; breakpoint values default to the
    /// upper semicontinuous closure of the adjacent piece limits.
    pub fn from_pieces(breakpoints: Vec<f64>, pieces: Vec<FieldPiece>) -> Result<Self> {
        let n = breakpoints.len();
        Self::from_parts(breakpoints, pieces, vec![NegInfinity; n])
    }

    /// Builds a field with explicit breakpoint values. Each declared value is
    /// raised to the maximum of itself and the one-sided piece limits, so the
    /// result is always upper semicontinuous.
    pub fn from_parts(
        breakpoints: Vec<f64>,
        pieces: Vec<FieldPiece>,
        point_values: Vec<ExtReal>,
    ) -> Result<Self> {
        Self::build(breakpoints, pieces, point_values, Vec::new(), false)
    }

    /// Exploration mode: keeps the declared breakpoint values verbatim, so
    /// the field may fail upper semicontinuity.
    pub fn from_parts_non_usc(
        breakpoints: Vec<f64>,
        pieces: Vec<FieldPiece>,
        point_values: Vec<ExtReal>,
    ) -> Result<Self> {
        Self::build(breakpoints, pieces, point_values, Vec::new(), true)
    }

    fn build(
        breakpoints: Vec<f64>,
        pieces: Vec<FieldPiece>,
        mut point_values: Vec<ExtReal>,
        translates: Vec<Translate>,
        non_usc_override: bool,
    ) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Field("need at least breakpoints 0 and 1".into()));
        }
        if breakpoints.first() != Some(&0.0) || breakpoints.last() != Some(&1.0) {
            return Err(Error::Field(format!(
                "breakpoints must start at 0 and end at 1, got {breakpoints:?}"
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite())
            || breakpoints.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Field(format!(
                "breakpoints must be finite and strictly increasing, got {breakpoints:?}"
            )));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::Field(format!(
                "{} breakpoints require {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        if point_values.len() != breakpoints.len() {
            return Err(Error::Field(format!(
                "{} breakpoints require {} point values, got {}",
                breakpoints.len(),
                breakpoints.len(),
                point_values.len()
            )));
        }
        for piece in &pieces {
            piece.validate()?;
        }

        if !non_usc_override {
            for (k, value) in point_values.iter_mut().enumerate() {
                let mut v = *value;
                if k > 0 {
                    v = v.max(pieces[k - 1].value(breakpoints[k]));
                }
                if k < pieces.len() {
                    v = v.max(pieces[k].value(breakpoints[k]));
                }
                *value = v;
            }
        }

        let field = FieldFunction {
            breakpoints,
            pieces,
            point_values,
            translates: Vec::new(),
            non_usc_override,
        };
        translates
            .into_iter()
            .try_fold(field, |f, t| f.with_translate(t))
    }

    /// Attaches a weighted kernel translate, added pointwise on evaluation.
    pub fn with_translate(mut self, translate: Translate) -> Result<Self> {
        if !(translate.weight.is_finite() && translate.weight > 0.0) {
            return Err(Error::NonPositiveWeight);
        }
        if !(translate.center.is_finite() && (0.0..=1.0).contains(&translate.center)) {
            return Err(Error::Domain {
                what: "translate center",
                value: translate.center,
                expected: "[0, 1]",
            });
        }
        self.translates.push(translate);
        Ok(self)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[FieldPiece] {
        &self.pieces
    }

    pub fn point_values(&self) -> &[ExtReal] {
        &self.point_values
    }

    pub fn translates(&self) -> &[Translate] {
        &self.translates
    }

    pub fn non_usc_override(&self) -> bool {
        self.non_usc_override
    }

    /// Index of the piece whose open interval contains `t`; `t` must not be a
    /// breakpoint.
    pub(crate) fn piece_index_at(&self, t: f64) -> usize {
        debug_assert!((0.0..=1.0).contains(&t));
        self.breakpoints.partition_point(|&b| b < t) - 1
    }

    /// Evaluates the field at `t`: the declared value at breakpoints, the
    /// piece formula in between, plus all attached translates.
    pub fn eval(&self, t: f64) -> Result<ExtReal> {
        if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
            return Err(Error::Domain {
                what: "field argument",
                value: t,
                expected: "[0, 1]",
            });
        }
        let base = match self
            .breakpoints
            .binary_search_by(|b| b.partial_cmp(&t).expect("breakpoints are not NaN"))
        {
            Ok(k) => self.point_values[k],
            Err(_) => self.pieces[self.piece_index_at(t)].value(t),
        };
        Ok(base + self.translate_sum(t))
    }

    /// Sum of the attached translates at `t` (the extended-continuous
    /// formula, also used for one-sided limits).
    pub(crate) fn translate_sum(&self, t: f64) -> ExtReal {
        self.translates
            .iter()
            .map(|tr| tr.kernel.eval_unchecked(t - tr.center).scale(tr.weight))
            .sum()
    }

    /// True if every declared breakpoint value dominates the one-sided piece
    /// limits. Construction guarantees this unless the override flag is set.
    pub fn is_usc(&self) -> bool {
        self.point_values.iter().enumerate().all(|(k, &v)| {
            let left = (k > 0).then(|| self.pieces[k - 1].value(self.breakpoints[k]));
            let right = (k < self.pieces.len()).then(|| self.pieces[k].value(self.breakpoints[k]));
            left.is_none_or(|l| v >= l) && right.is_none_or(|r| v >= r)
        })
    }

    /// A finite upper bound for the field plus its translates on `[0, 1]`.
    pub fn upper_bound(&self) -> ExtReal {
        let mut bound = NegInfinity;
        for (k, piece) in self.pieces.iter().enumerate() {
            bound = bound.max(piece.sup_on(self.breakpoints[k], self.breakpoints[k + 1]));
        }
        for &v in &self.point_values {
            bound = bound.max(v);
        }
        let translate_bound: f64 = self
            .translates
            .iter()
            .map(|tr| (tr.weight * tr.kernel.sup()).max(0.0))
            .sum();
        bound + ExtReal::finite(translate_bound)
    }

    /// Weighted count of the finiteness set, and whether it exceeds `n`.
    ///
    /// Any piece of positive length that is not `-∞` makes the count
    /// infinite; otherwise only breakpoints with finite effective value
    /// count, endpoints with weight 1/2 and interior points with weight 1.
    pub fn validate_n_field(&self, n: usize) -> NFieldReport {
        if self
            .pieces
            .iter()
            .any(|p| !matches!(p, FieldPiece::NegInfinity))
        {
            return NFieldReport {
                valid: true,
                weighted_count: WeightedCount::Infinite,
            };
        }
        let mut count = 0.0;
        for &b in &self.breakpoints {
            let effective = self.eval(b).expect("breakpoints lie in [0, 1]");
            if effective.is_finite() {
                count += if b == 0.0 || b == 1.0 { 0.5 } else { 1.0 };
            }
        }
        NFieldReport {
            valid: count > n as f64,
            weighted_count: WeightedCount::Finite(count),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    breakpoints: Vec<f64>,
    pieces: Vec<FieldPiece>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point_values: Option<Vec<ExtReal>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    translates: Vec<Translate>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    non_usc_override: bool,
}

impl TryFrom<FieldRepr> for FieldFunction {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        let n = repr.breakpoints.len();
        let point_values = repr.point_values.unwrap_or(vec![NegInfinity; n]);
        FieldFunction::build(
            repr.breakpoints,
            repr.pieces,
            point_values,
            repr.translates,
            repr.non_usc_override,
        )
    }
}

impl From<FieldFunction> for FieldRepr {
    fn from(f: FieldFunction) -> FieldRepr {
        FieldRepr {
            breakpoints: f.breakpoints,
            pieces: f.pieces,
            point_values: Some(f.point_values),
            translates: f.translates,
            non_usc_override: f.non_usc_override,
        }
    }
}

/// The field of the worked one-node majorization example: `-∞` left of 2/3,
/// zero from 2/3 on. Used widely in tests and the golden suite.
pub fn step_gate_field() -> FieldFunction {
    FieldFunction::from_parts(
        vec![0.0, 2.0 / 3.0, 1.0],
        vec![FieldPiece::NegInfinity, FieldPiece::Constant { value: 0.0 }],
        vec![NegInfinity, Finite(0.0), Finite(0.0)],
    )
    .expect("well-formed")
}
