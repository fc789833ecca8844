use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::refinement::Depth;

/// `0` or `2^-n`. Ordered as the rationals they denote.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Repr", from = "Repr")]
pub enum DyadicDistance {
    Zero,
    /// `2^-n`
    Pow(u32),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Repr {
    Zero,
    Dyadic { n: u32 },
}

impl From<DyadicDistance> for Repr {
    fn from(d: DyadicDistance) -> Self {
        match d {
            DyadicDistance::Zero => Repr::Zero,
            DyadicDistance::Pow(n) => Repr::Dyadic { n },
        }
    }
}

impl From<Repr> for DyadicDistance {
    fn from(r: Repr) -> Self {
        match r {
            Repr::Zero => DyadicDistance::Zero,
            Repr::Dyadic { n } => DyadicDistance::Pow(n),
        }
    }
}

impl DyadicDistance {
    pub const ONE: DyadicDistance = DyadicDistance::Pow(0);

    /// `2^-depth`, and zero for infinite depth.
    pub fn from_depth(d: Depth) -> Self {
        match d {
            Depth::Finite(n) => DyadicDistance::Pow(n),
            Depth::Infinite => DyadicDistance::Zero,
        }
    }

    /// Values at or below `2^-k` collapse to zero.
    pub fn truncate(self, k: u32) -> Self {
        match self {
            DyadicDistance::Pow(n) if n < k => self,
            _ => DyadicDistance::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == DyadicDistance::Zero
    }

    pub fn to_f64(self) -> f64 {
        match self {
            DyadicDistance::Zero => 0.0,
            DyadicDistance::Pow(n) => 0.5f64.powi(n as i32),
        }
    }
}

impl Ord for DyadicDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use DyadicDistance::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, Pow(_)) => Ordering::Less,
            (Pow(_), Zero) => Ordering::Greater,
            (Pow(a), Pow(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for DyadicDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicDistance::Zero => f.write_str("0"),
            DyadicDistance::Pow(n) => write!(f, "2^-{n}"),
        }
    }
}

/// A value known exactly, or only to lie between two bounds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalEstimate {
    pub lower: DyadicDistance,
    pub upper: DyadicDistance,
    pub exact: bool,
}

impl IntervalEstimate {
    pub fn exact(v: DyadicDistance) -> Self {
        IntervalEstimate {
            lower: v,
            upper: v,
            exact: true,
        }
    }

    pub fn between(lower: DyadicDistance, upper: DyadicDistance) -> Self {
        assert!(lower <= upper);
        IntervalEstimate {
            lower,
            upper,
            exact: lower == upper,
        }
    }
}

impl fmt::Display for IntervalEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}
