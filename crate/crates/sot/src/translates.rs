//! Sums of translates and their interval maxima.
//!
//! For an instance with kernel `K`, weights `ν` and field `J`, the pure sum
//! is `f(y, t) = Σ ν_j K(t - y_j)` and the weighted sum is
//! `F(y, t) = J(t) + f(y, t)`. For each interval `I_j = [y_j, y_{j+1}]` the
//! maximum `m_j(y) = sup_{t ∈ I_j} F(y, t)` is computed exactly up to an
//! argmax location tolerance: every sub-segment cut at field breakpoints and
//! translate centers carries a concave restriction of `F`, which golden
//! section maximizes; breakpoint values and segment-endpoint limits enter as
//! explicit candidates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext_real::{ExtReal, NegInfinity};
use crate::field::FieldPiece;
use crate::instance::ProblemInstance;
use crate::nodes::NodeSystem;

/// Default argmax location tolerance for interval maxima.
pub const DEFAULT_ARGMAX_TOL: f64 = 1e-12;

fn check_dims(instance: &ProblemInstance, y: &NodeSystem) {
    assert_eq!(
        instance.n(),
        y.n(),
        "node system has {} nodes but the instance expects {}",
        y.n(),
        instance.n()
    );
}

fn kernel_sum(instance: &ProblemInstance, y: &NodeSystem, t: f64) -> ExtReal {
    let kernel = instance.kernel();
    y.nodes()
        .iter()
        .zip(instance.weights())
        .map(|(&yj, &w)| kernel.eval_unchecked(t - yj).scale(w))
        .sum()
}

/// The pure sum of translates `f(y, t) = Σ ν_j K(t - y_j)`.
pub fn f_pure(instance: &ProblemInstance, y: &NodeSystem, t: f64) -> Result<ExtReal> {
    check_dims(instance, y);
    if !(t.is_finite() && (0.0..=1.0).contains(&t)) {
        return Err(Error::Domain {
            what: "evaluation point",
            value: t,
            expected: "[0, 1]",
        });
    }
    Ok(kernel_sum(instance, y, t))
}

/// The weighted sum of translates `F(y, t) = J(t) + Σ ν_j K(t - y_j)`.
pub fn f_weighted(instance: &ProblemInstance, y: &NodeSystem, t: f64) -> Result<ExtReal> {
    check_dims(instance, y);
    Ok(instance.field().eval(t)? + kernel_sum(instance, y, t))
}

fn f_total_unchecked(instance: &ProblemInstance, y: &NodeSystem, t: f64) -> ExtReal {
    let field = instance
        .field()
        .eval(t)
        .expect("evaluation point lies in [0, 1]");
    field + kernel_sum(instance, y, t)
}

/// One maximal connected component of the singularity set
/// `{t : F(y, t) = -∞}`; a point is encoded as `lo == hi` with both ends
/// closed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularComponent {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl SingularComponent {
    fn point(p: f64) -> Self {
        SingularComponent {
            lo: p,
            hi: p,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: f64) -> bool {
        (self.lo < t || (self.lo == t && self.lo_closed))
            && (t < self.hi || (t == self.hi && self.hi_closed))
    }

    /// True if the closed interval `[lo, hi]` lies entirely inside this
    /// component.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        if lo == hi {
            return self.contains(lo);
        }
        (self.lo < lo || (self.lo == lo && self.lo_closed))
            && (self.hi > hi || (self.hi == hi && self.hi_closed))
    }
}

/// Exact description of the singularity set of `F(y, ·)` as sorted, disjoint
/// maximal components: the field's `-∞` pieces and breakpoints, plus the node
/// points and singular translate centers when the respective kernel is
/// singular.
pub fn singularity_set(instance: &ProblemInstance, y: &NodeSystem) -> Vec<SingularComponent> {
    check_dims(instance, y);
    let field = instance.field();
    let mut prims: Vec<SingularComponent> = Vec::new();

    for (k, piece) in field.pieces().iter().enumerate() {
        if matches!(piece, FieldPiece::NegInfinity) {
            prims.push(SingularComponent {
                lo: field.breakpoints()[k],
                hi: field.breakpoints()[k + 1],
                lo_closed: false,
                hi_closed: false,
            });
        }
    }
    for (k, &v) in field.point_values().iter().enumerate() {
        if v == NegInfinity {
            prims.push(SingularComponent::point(field.breakpoints()[k]));
        }
    }
    if instance.kernel().is_singular() {
        for &node in y.nodes() {
            prims.push(SingularComponent::point(node));
        }
    }
    for tr in field.translates() {
        if tr.kernel.is_singular() {
            prims.push(SingularComponent::point(tr.center));
        }
    }

    prims.sort_by(|a, b| {
        a.lo.partial_cmp(&b.lo)
            .expect("no NaN")
            .then_with(|| b.lo_closed.cmp(&a.lo_closed))
    });

    let mut merged: Vec<SingularComponent> = Vec::new();
    for c in prims {
        if let Some(last) = merged.last_mut() {
            let touches = c.lo < last.hi || (c.lo == last.hi && (last.hi_closed || c.lo_closed));
            if touches {
                if c.lo == last.lo {
                    last.lo_closed |= c.lo_closed;
                }
                if c.hi > last.hi {
                    last.hi = c.hi;
                    last.hi_closed = c.hi_closed;
                } else if c.hi == last.hi {
                    last.hi_closed |= c.hi_closed;
                }
                continue;
            }
        }
        merged.push(c);
    }
    merged
}

/// True when no interval `I_j` lies entirely inside the singularity set,
/// i.e. all `m_j` are finite. Decided symbolically, without sampling.
pub fn is_regular(instance: &ProblemInstance, y: &NodeSystem) -> bool {
    let components = singularity_set(instance, y);
    (0..=y.n()).all(|j| {
        let (lo, hi) = y.interval(j);
        !components.iter().any(|c| c.covers(lo, hi))
    })
}

/// The interval maxima `(m_0, …, m_n)` with argmax witnesses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximaVector {
    m: Vec<ExtReal>,
    argmax: Vec<Option<f64>>,
    regular: bool,
}

impl MaximaVector {
    pub fn m(&self) -> &[ExtReal] {
        &self.m
    }

    pub fn argmax(&self) -> &[Option<f64>] {
        &self.argmax
    }

    /// True when every coordinate is finite.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn m_bar(&self) -> ExtReal {
        self.m.iter().copied().max().expect("at least one interval")
    }

    pub fn m_under(&self) -> ExtReal {
        self.m.iter().copied().min().expect("at least one interval")
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a concave function on `[lo, hi]` to
/// location tolerance `xtol`. Probes stay strictly interior, so a singular
/// endpoint (where the extension is `-∞`) is never evaluated by the search.
fn golden_max(f: &dyn Fn(f64) -> ExtReal, lo: f64, hi: f64, xtol: f64) -> (f64, ExtReal) {
    let mut a = lo;
    let mut b = hi;
    if b - a <= xtol {
        let mid = 0.5 * (a + b);
        return (mid, f(mid));
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > xtol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            // Bracket exhausted at float resolution.
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of `F(y, ·)` over the single interval `I_j`.
pub(crate) fn interval_max_single(
    instance: &ProblemInstance,
    y: &NodeSystem,
    j: usize,
    tol: f64,
) -> (ExtReal, Option<f64>) {
    let (lo, hi) = y.interval(j);
    if lo == hi {
        // Degenerate interval: F at the point (for singular kernels, -∞).
        let v = f_total_unchecked(instance, y, lo);
        return (v, v.is_finite().then_some(lo));
    }

    let field = instance.field();
    let mut pts = vec![lo, hi];
    for &b in field.breakpoints() {
        if b > lo && b < hi {
            pts.push(b);
        }
    }
    for tr in field.translates() {
        if tr.center > lo && tr.center < hi {
            pts.push(tr.center);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    pts.dedup();

    let mut best = NegInfinity;
    let mut best_arg = None;
    let mut consider = |value: ExtReal, arg: f64| {
        if value > best {
            best = value;
            best_arg = Some(arg);
        }
    };

    // Actual point values: this is how a supremum attained only at an upper
    // semicontinuous jump is found.
    for &p in &pts {
        consider(f_total_unchecked(instance, y, p), p);
    }

    // Concave sub-segments between consecutive partition points.
    for w in pts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let mid = 0.5 * (u + v);
        if mid <= u || mid >= v {
            // Segment is at float resolution; endpoints are already covered.
            continue;
        }
        let piece = &field.pieces()[field.piece_index_at(mid)];
        if matches!(piece, FieldPiece::NegInfinity) {
            continue;
        }
        let extension =
            |t: f64| piece.value(t) + field.translate_sum(t) + kernel_sum(instance, y, t);
        // One-sided limits at the segment ends; for singular ends the
        // formula itself is -∞, so they never win spuriously.
        consider(extension(u), u);
        consider(extension(v), v);
        let (x_star, v_star) = golden_max(&extension, u, v, tol);
        consider(v_star, x_star);
    }

    if best.is_finite() {
        (best, best_arg)
    } else {
        (NegInfinity, None)
    }
}

/// Computes the full maxima vector for `y` at argmax tolerance `tol`.
pub fn interval_maxima(
    instance: &ProblemInstance,
    y: &NodeSystem,
    tol: f64,
) -> Result<MaximaVector> {
    check_dims(instance, y);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let mut m = Vec::with_capacity(y.n() + 1);
    let mut argmax = Vec::with_capacity(y.n() + 1);
    for j in 0..=y.n() {
        let (value, arg) = interval_max_single(instance, y, j, tol);
        m.push(value);
        argmax.push(arg);
    }
    let regular = m.iter().all(|v| v.is_finite());
    let result = MaximaVector { m, argmax, regular };
    debug_assert!(
        result.m_bar().is_finite(),
        "F is never identically -inf on a valid instance"
    );
    Ok(result)
}

/// `max_j m_j(y)`; always finite for a valid instance.
pub fn m_bar(instance: &ProblemInstance, y: &NodeSystem) -> ExtReal {
    interval_maxima(instance, y, DEFAULT_ARGMAX_TOL)
        .expect("default tolerance is positive")
        .m_bar()
}

/// `min_j m_j(y)`; `-∞` exactly when `y` is singular.
pub fn m_under(instance: &ProblemInstance, y: &NodeSystem) -> ExtReal {
    interval_maxima(instance, y, DEFAULT_ARGMAX_TOL)
        .expect("default tolerance is positive")
        .m_under()
}
