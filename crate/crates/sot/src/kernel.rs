//! Kernel functions on `[-1, 1]`.
//!
//! A kernel is concave on `(-1, 0)` and on `(0, 1)` and extended-continuous
//! with values in `ℝ ∪ {-∞}`; it is *singular* when `K(0) = -∞` and
//! *monotone* when it is nonincreasing on `(-1, 0)` and nondecreasing on
//! `(0, 1)`. Families form a closed enumeration so that the structural flags
//! can be derived rather than trusted from user input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

/// Structural properties of a kernel family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelFlags {
    pub singular: bool,
    pub monotone: bool,
    pub strictly_monotone: bool,
    pub strictly_concave: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum KernelKind {
    /// `K(t) = ln|t|` — singular, monotone, strictly concave.
    Log,
    /// `K(t) = ln(|t| + ε)` — nonsingular, monotone, strictly concave.
    LogShifted { epsilon: f64 },
    /// `K(t) = |t|^α`, `α ∈ (0, 1]` — nonsingular, monotone, strictly
    /// concave only for `α < 1`.
    Power { alpha: f64 },
    /// `K(t) = -(|t| - c)²` — nonsingular, NOT monotone. Negative control
    /// for monotonicity-dependent properties.
    NegParabola { c: f64 },
}

/// An evaluable kernel with validated parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KernelKind", into = "KernelKind")]
pub struct Kernel {
    kind: KernelKind,
}

impl TryFrom<KernelKind> for Kernel {
    type Error = Error;

    fn try_from(kind: KernelKind) -> Result<Self> {
        match kind {
            KernelKind::Log => Ok(Kernel::log()),
            KernelKind::LogShifted { epsilon } => Kernel::log_shifted(epsilon),
            KernelKind::Power { alpha } => Kernel::power(alpha),
            KernelKind::NegParabola { c } => Kernel::neg_parabola(c),
        }
    }
}

impl From<Kernel> for KernelKind {
    fn from(kernel: Kernel) -> KernelKind {
        kernel.kind
    }
}

impl Kernel {
    pub fn log() -> Self {
        Kernel {
            kind: KernelKind::Log,
        }
    }

    pub fn log_shifted(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::KernelParam(format!(
                "log_shifted requires epsilon > 0, got {epsilon}"
            )));
        }
        Ok(Kernel {
            kind: KernelKind::LogShifted { epsilon },
        })
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::KernelParam(format!(
                "power requires alpha in (0, 1], got {alpha}"
            )));
        }
        Ok(Kernel {
            kind: KernelKind::Power { alpha },
        })
    }

    pub fn neg_parabola(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0 && c < 1.0) {
            return Err(Error::KernelParam(format!(
                "neg_parabola requires c in (0, 1), got {c}"
            )));
        }
        Ok(Kernel {
            kind: KernelKind::NegParabola { c },
        })
    }

    pub fn flags(&self) -> KernelFlags {
        match self.kind {
            KernelKind::Log => KernelFlags {
                singular: true,
                monotone: true,
                strictly_monotone: true,
                strictly_concave: true,
            },
            KernelKind::LogShifted { .. } => KernelFlags {
                singular: false,
                monotone: true,
                strictly_monotone: true,
                strictly_concave: true,
            },
            KernelKind::Power { alpha } => KernelFlags {
                singular: false,
                monotone: true,
                strictly_monotone: true,
                strictly_concave: alpha < 1.0,
            },
            KernelKind::NegParabola { .. } => KernelFlags {
                singular: false,
                monotone: false,
                strictly_monotone: false,
                strictly_concave: true,
            },
        }
    }

    pub fn is_singular(&self) -> bool {
        self.flags().singular
    }

    pub fn is_monotone(&self) -> bool {
        self.flags().monotone
    }

    /// A finite upper bound for the kernel on `[-1, 1]`.
    pub fn sup(&self) -> f64 {
        match self.kind {
            KernelKind::Log => 0.0,
            KernelKind::LogShifted { epsilon } => (1.0 + epsilon).ln(),
            KernelKind::Power { .. } => 1.0,
            KernelKind::NegParabola { .. } => 0.0,
        }
    }

    /// Evaluates `K(t)`; endpoint and origin values are the extended-
    /// continuous limits of the defining formula.
    pub fn eval(&self, t: f64) -> Result<ExtReal> {
        if !(t.is_finite() && t.abs() <= 1.0) {
            return Err(Error::Domain {
                what: "kernel argument",
                value: t,
                expected: "[-1, 1]",
            });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Same as [`Kernel::eval`] without the domain check; used in inner
    /// loops where `t` is a difference of values in `[0, 1]`.
    pub fn eval_unchecked(&self, t: f64) -> ExtReal {
        debug_assert!(t.abs() <= 1.0);
        match self.kind {
            // |t|.ln() is exactly -inf at t == 0.
            KernelKind::Log => ExtReal::from_value(t.abs().ln()),
            KernelKind::LogShifted { epsilon } => ExtReal::finite((t.abs() + epsilon).ln()),
            KernelKind::Power { alpha } => ExtReal::finite(t.abs().powf(alpha)),
            KernelKind::NegParabola { c } => {
                let d = t.abs() - c;
                ExtReal::finite(-(d * d))
            }
        }
    }

    /// Empirically checks the declared flags on a grid of `grid_size` points
    /// per side of the origin.
    pub fn check_properties(&self, grid_size: usize) -> Result<KernelPropertyReport> {
        if grid_size < 16 {
            return Err(Error::Domain {
                what: "grid_size",
                value: grid_size as f64,
                expected: "at least 16",
            });
        }
        let h = 1.0 / grid_size as f64;
        let left = sample_grid(self, -1.0, -h, grid_size);
        let right = sample_grid(self, h, 1.0, grid_size);

        let singular = self.eval_unchecked(0.0) == ExtReal::NEG_INFINITY;
        let monotone = is_nonincreasing(&left) && is_nondecreasing(&right);
        let strictly_concave =
            strict_concavity_on(&left) == Strictness::Strict && strict_concavity_on(&right) == Strictness::Strict;
        let concave = strict_concavity_on(&left) != Strictness::Violated
            && strict_concavity_on(&right) != Strictness::Violated;
        debug_assert!(concave, "every built-in family is concave per side");

        let declared = self.flags();
        let agrees_with_flags = singular == declared.singular
            && monotone == declared.monotone
            && strictly_concave == declared.strictly_concave;
        Ok(KernelPropertyReport {
            singular,
            monotone,
            strictly_concave,
            agrees_with_flags,
        })
    }
}

/// Outcome of the empirical property check; `agrees_with_flags == false`
/// signals a library defect, not a runtime error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelPropertyReport {
    pub singular: bool,
    pub monotone: bool,
    pub strictly_concave: bool,
    pub agrees_with_flags: bool,
}

fn sample_grid(kernel: &Kernel, lo: f64, hi: f64, count: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            let t = lo + step * i as f64;
            (t, kernel.eval_unchecked(t).unwrap_finite())
        })
        .collect()
}

fn is_nonincreasing(samples: &[(f64, f64)]) -> bool {
    samples.windows(2).all(|w| w[0].1 >= w[1].1)
}

fn is_nondecreasing(samples: &[(f64, f64)]) -> bool {
    samples.windows(2).all(|w| w[0].1 <= w[1].1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strictness {
    Strict,
    Weak,
    Violated,
}

const CONCAVITY_SLACK: f64 = 1e-10;
const STRICTNESS_MARGIN: f64 = 1e-12;

/// Chord test on consecutive grid triples: concavity requires
/// `K(t2)(t3-t1) >= K(t1)(t3-t2) + K(t3)(t2-t1)`.
fn strict_concavity_on(samples: &[(f64, f64)]) -> Strictness {
    let mut strict = true;
    for w in samples.windows(3) {
        let (t1, k1) = w[0];
        let (t2, k2) = w[1];
        let (t3, k3) = w[2];
        let deficit = k2 * (t3 - t1) - k1 * (t3 - t2) - k3 * (t2 - t1);
        if deficit < -CONCAVITY_SLACK {
            return Strictness::Violated;
        }
        if deficit <= STRICTNESS_MARGIN {
            strict = false;
        }
    }
    if strict {
        Strictness::Strict
    } else {
        Strictness::Weak
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_real::{Finite, NegInfinity};

    #[test]
    fn log_is_neg_infinite_at_origin() {
        assert_eq!(Kernel::log().eval(0.0).unwrap(), NegInfinity);
    }

    #[test]
    fn power_half_at_quarter() {
        let k = Kernel::power(0.5).unwrap();
        assert_eq!(k.eval(0.25).unwrap(), Finite(0.5));
    }

    #[test]
    fn log_shifted_at_origin() {
        let k = Kernel::log_shifted(0.1).unwrap();
        let v = k.eval(0.0).unwrap().unwrap_finite();
        assert!((v - 0.1f64.ln()).abs() < 1e-15);
        assert!((v + std::f64::consts::LN_10).abs() < 1e-12);
    }

    #[test]
    fn endpoint_values_are_limits() {
        assert_eq!(Kernel::log().eval(-1.0).unwrap(), Finite(0.0));
        assert_eq!(Kernel::log().eval(1.0).unwrap(), Finite(0.0));
    }

    #[test]
    fn out_of_domain_is_rejected() {
        assert!(Kernel::log().eval(1.5).is_err());
        assert!(Kernel::log().eval(f64::NAN).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(Kernel::log_shifted(0.0).is_err());
        assert!(Kernel::power(1.5).is_err());
        assert!(Kernel::power(0.0).is_err());
        assert!(Kernel::neg_parabola(1.0).is_err());
    }

    #[test]
    fn property_report_log() {
        let report = Kernel::log().check_properties(1024).unwrap();
        assert!(report.singular);
        assert!(report.monotone);
        assert!(report.strictly_concave);
        assert!(report.agrees_with_flags);
    }

    #[test]
    fn property_report_neg_parabola_is_not_monotone() {
        let k = Kernel::neg_parabola(0.5).unwrap();
        let report = k.check_properties(1024).unwrap();
        assert!(!report.monotone);
        assert!(report.strictly_concave);
        assert!(report.agrees_with_flags);
    }

    #[test]
    fn property_report_power_one_is_not_strictly_concave() {
        let k = Kernel::power(1.0).unwrap();
        let report = k.check_properties(1024).unwrap();
        assert!(!report.strictly_concave);
        assert!(report.monotone);
        assert!(report.agrees_with_flags);
    }

    #[test]
    fn all_families_agree_with_declared_flags() {
        let kernels = [
            Kernel::log(),
            Kernel::log_shifted(0.05).unwrap(),
            Kernel::power(0.5).unwrap(),
            Kernel::power(1.0).unwrap(),
            Kernel::neg_parabola(0.3).unwrap(),
        ];
        for k in kernels {
            assert!(k.check_properties(256).unwrap().agrees_with_flags, "{k:?}");
        }
    }

    mod proptests {
        use super::*;
        use proptest::prelude::*;

        fn builtin_kernel() -> impl Strategy<Value = Kernel> {
            prop_oneof![
                Just(Kernel::log()),
                (0.01..0.5f64).prop_map(|e| Kernel::log_shifted(e).unwrap()),
                (0.1..=1.0f64).prop_map(|a| Kernel::power(a).unwrap()),
                (0.1..0.9f64).prop_map(|c| Kernel::neg_parabola(c).unwrap()),
            ]
        }

        proptest! {
            // Chord concavity for arbitrary triples inside one side, not
            // just consecutive grid points.
            #[test]
            fn concave_on_each_side(
                kernel in builtin_kernel(),
                raw in prop::array::uniform3(0.001..1.0f64),
                negative_side in any::<bool>(),
            ) {
                let mut t = raw;
                t.sort_by(|a, b| a.partial_cmp(b).unwrap());
                prop_assume!(t[0] < t[1] && t[1] < t[2]);
                if negative_side {
                    t = [-t[2], -t[1], -t[0]];
                }
                let k: Vec<f64> = t
                    .iter()
                    .map(|&x| kernel.eval_unchecked(x).unwrap_finite())
                    .collect();
                let deficit =
                    k[1] * (t[2] - t[0]) - k[0] * (t[2] - t[1]) - k[2] * (t[1] - t[0]);
                prop_assert!(deficit >= -1e-10, "triple {t:?} on {kernel:?}");
            }

            #[test]
            fn monotone_families_are_monotone(
                kernel in prop_oneof![
                    Just(Kernel::log()),
                    (0.01..0.5f64).prop_map(|e| Kernel::log_shifted(e).unwrap()),
                    (0.1..=1.0f64).prop_map(|a| Kernel::power(a).unwrap()),
                ],
                a in 0.0001..1.0f64,
                b in 0.0001..1.0f64,
            ) {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                // Nondecreasing on (0, 1]; nonincreasing on [-1, 0), i.e.
                // K(-hi) >= K(-lo) since -hi < -lo.
                prop_assert!(kernel.eval_unchecked(lo) <= kernel.eval_unchecked(hi));
                prop_assert!(kernel.eval_unchecked(-hi) >= kernel.eval_unchecked(-lo));
            }
        }
    }

    #[test]
    fn serde_family_tags() {
        let k: Kernel = serde_json::from_str(r#"{"family":"log_shifted","epsilon":0.1}"#).unwrap();
        assert_eq!(k, Kernel::log_shifted(0.1).unwrap());
        let err = serde_json::from_str::<Kernel>(r#"{"family":"gaussian"}"#).unwrap_err();
        assert!(err.to_string().contains("unknown variant"));
        let err = serde_json::from_str::<Kernel>(r#"{"family":"power","alpha":2.0}"#).unwrap_err();
        assert!(err.to_string().contains("alpha"));
    }
}
