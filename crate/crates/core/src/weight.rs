//! Level values: unsigned integers extended with a bottom and a top element.

use std::fmt;
use std::str::FromStr;

use crate::error::FloodError;

/// A level in the completely ordered lattice `{⊥} ∪ ℕ ∪ {⊤}`.
///
/// The derived ordering follows variant order, so `Bottom < Finite(_) < Top`
/// and finite values compare numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Bottom,
    Finite(u64),
    Top,
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0);

    /// Supremum (max).
    #[inline]
    pub fn join(self, other: Weight) -> Weight {
        self.max(other)
    }

    /// Infimum (min).
    #[inline]
    pub fn meet(self, other: Weight) -> Weight {
        self.min(other)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// The next level up. `⊥ + 1 = 0`, `⊤ + 1 = ⊤`, and the largest finite
    /// value saturates to `⊤`.
    pub fn succ(self) -> Weight {
        match self {
            Weight::Bottom => Weight::ZERO,
            Weight::Finite(v) => v.checked_add(1).map_or(Weight::Top, Weight::Finite),
            Weight::Top => Weight::Top,
        }
    }

    /// Meet over an iterator; the empty meet is `⊤`.
    pub fn meet_all<I: IntoIterator<Item = Weight>>(iter: I) -> Weight {
        iter.into_iter().fold(Weight::Top, Weight::meet)
    }

    /// Join over an iterator; the empty join is `⊥`.
    pub fn join_all<I: IntoIterator<Item = Weight>>(iter: I) -> Weight {
        iter.into_iter().fold(Weight::Bottom, Weight::join)
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight::Finite(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Bottom => f.write_str("-inf"),
            Weight::Finite(v) => write!(f, "{v}"),
            Weight::Top => f.write_str("inf"),
        }
    }
}

impl FromStr for Weight {
    type Err = FloodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(Weight::Top),
            "-inf" => Ok(Weight::Bottom),
            _ => s
                .parse::<u64>()
                .map(Weight::Finite)
                .map_err(|_| FloodError::BadWeight(s.to_string())),
        }
    }
}

/// Shorthand used heavily in tests and fixtures.
pub fn w(v: u64) -> Weight {
    Weight::Finite(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_sentinels_at_the_ends() {
        assert!(Weight::Bottom < w(0));
        assert!(w(0) < w(u64::MAX));
        assert!(w(u64::MAX) < Weight::Top);
    }

    #[test]
    fn lattice_ops() {
        assert_eq!(w(3).join(w(5)), w(5));
        assert_eq!(w(3).meet(Weight::Top), w(3));
        assert_eq!(Weight::meet_all([]), Weight::Top);
        assert_eq!(Weight::join_all([]), Weight::Bottom);
        assert_eq!(Weight::Bottom.succ(), w(0));
        assert_eq!(w(u64::MAX).succ(), Weight::Top);
    }

    #[test]
    fn text_round_trip() {
        for x in [Weight::Bottom, w(0), w(17), Weight::Top] {
            assert_eq!(x.to_string().parse::<Weight>().unwrap(), x);
        }
        assert!("-3".parse::<Weight>().is_err());
        assert!("x".parse::<Weight>().is_err());
    }
}
