use serde::{Deserialize, Serialize};

/// A certified real bracket: the exactly-defined quantity it carries is
/// guaranteed to lie in `[lo, hi]`. `hi` may be `+∞` (divergent series).
///
/// Arithmetic pads results outward by one ulp per operation, which
/// absorbs double-precision rounding; inputs are assumed exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "enclosure bounds out of order: [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    /// Degenerate bracket around a value known exactly (in f64).
    pub fn exact(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    /// Bracket around a computed value padded outward by a relative slack.
    pub fn around(v: f64, rel_slack: f64) -> Self {
        let pad = v.abs() * rel_slack + f64::MIN_POSITIVE;
        Enclosure { lo: v - pad, hi: v + pad }
    }

    /// Divergent series carrier: certified lower bound, unbounded above.
    pub fn divergent(lo: f64) -> Self {
        Enclosure { lo, hi: f64::INFINITY }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: (self.lo + other.lo).next_down(),
            hi: (self.hi + other.hi).next_up(),
        }
    }

    /// Scale by a non-negative constant.
    pub fn scale(&self, c: f64) -> Enclosure {
        debug_assert!(c >= 0.0);
        Enclosure {
            lo: (self.lo * c).next_down(),
            hi: (self.hi * c).next_up(),
        }
    }

    /// Entrywise max of two brackets (encloses max of the two quantities).
    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// `true` iff the enclosed quantity is certainly ≤ `threshold`.
    pub fn certainly_le(&self, threshold: f64) -> bool {
        self.hi <= threshold
    }

    /// `true` iff the enclosed quantity is certainly > `threshold`.
    pub fn certainly_gt(&self, threshold: f64) -> bool {
        self.lo > threshold
    }
}
