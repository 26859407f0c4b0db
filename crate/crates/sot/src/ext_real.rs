//! Extended reals: the value set `ℝ ∪ {-∞}`.
//!
//! Kernels, field functions and interval maxima all take values here. `+∞`
//! and NaN are unrepresentable; producing either is a contract violation and
//! panics rather than propagating silently.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number or negative infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInfinity,
    Finite(f64),
}

pub use ExtReal::{Finite, NegInfinity};

impl ExtReal {
    pub const NEG_INFINITY: ExtReal = NegInfinity;

    /// Wraps a finite value. Panics on NaN or ±∞.
    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "ExtReal::finite({value}) is not finite");
        Finite(value)
    }

    /// Lifts an evaluation result: `-∞` maps to `NegInfinity`, finite values
    /// pass through, NaN and `+∞` panic.
    pub fn from_value(value: f64) -> Self {
        if value == f64::NEG_INFINITY {
            NegInfinity
        } else {
            Self::finite(value)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite_value(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            NegInfinity => None,
        }
    }

    /// The finite value, panicking on `-∞`.
    pub fn unwrap_finite(self) -> f64 {
        match self {
            Finite(v) => v,
            NegInfinity => panic!("expected a finite value, got -inf"),
        }
    }

    /// Multiplies by a strictly positive weight; `-∞` is absorbing.
    pub fn scale(self, weight: f64) -> Self {
        debug_assert!(weight > 0.0 && weight.is_finite());
        match self {
            Finite(v) => Self::finite(v * weight),
            NegInfinity => NegInfinity,
        }
    }
}

// No NaN can be constructed, so equality is total.
impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, Finite(_)) => Ordering::Less,
            (Finite(_), NegInfinity) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("ExtReal holds no NaN"),
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (Finite(a), Finite(b)) => ExtReal::finite(a + b),
            _ => NegInfinity,
        }
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: f64) -> ExtReal {
        self + ExtReal::finite(rhs)
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(Finite(0.0), Add::add)
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> Self {
        Self::from_value(value)
    }
}

/// Text token for `-∞` in CSV and JSON output.
pub const NEG_INF_TOKEN: &str = "-inf";

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `{}` on f64 prints the shortest decimal that round-trips.
            Finite(v) => write!(f, "{v}"),
            NegInfinity => f.write_str(NEG_INF_TOKEN),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_f64(*v),
            NegInfinity => serializer.serialize_str(NEG_INF_TOKEN),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Token(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(v) if v.is_finite() => Ok(Finite(v)),
            Repr::Number(v) => Err(D::Error::custom(format!("{v} is not a finite number"))),
            Repr::Token(s) if s == NEG_INF_TOKEN => Ok(NegInfinity),
            Repr::Token(s) => Err(D::Error::custom(format!("expected \"-inf\", got {s:?}"))),
        }
    }
}
