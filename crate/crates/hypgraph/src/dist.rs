//! Exact lengths. Every metric quantity in this crate is an integer count of
//! sixteenths of a unit edge, so vertex distances are multiples of 16, points
//! of J(G) (vertices plus edge midpoints) sit on multiples of 8, and the
//! hyperbolicity constant lands on multiples of 4. Infinity is a dedicated
//! marker, never a sentinel that arithmetic can reach by accident.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// A length in sixteenths of a unit edge, or infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dist16(u32);

impl Dist16 {
    pub const ZERO: Dist16 = Dist16(0);
    pub const INFINITY: Dist16 = Dist16(u32::MAX);

    /// One unit edge.
    pub const EDGE: Dist16 = Dist16(16);

    pub fn from_sixteenths(s: u32) -> Dist16 {
        assert!(s < u32::MAX, "sixteenth count too large");
        Dist16(s)
    }

    pub fn from_edges(e: u32) -> Dist16 {
        Dist16::from_sixteenths(e.checked_mul(16).expect("edge count overflow"))
    }

    pub fn is_finite(self) -> bool {
        self != Dist16::INFINITY
    }

    /// Sixteenth count for finite values, `None` for infinity.
    pub fn sixteenths(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }

    pub fn checked_add(self, other: Dist16) -> Dist16 {
        if !self.is_finite() || !other.is_finite() {
            return Dist16::INFINITY;
        }
        let s = self.0.checked_add(other.0).expect("distance overflow");
        Dist16::from_sixteenths(s)
    }

    pub fn scaled(self, k: u32) -> Dist16 {
        match self.sixteenths() {
            Some(s) => Dist16::from_sixteenths(s.checked_mul(k).expect("distance overflow")),
            None => Dist16::INFINITY,
        }
    }

    /// Exact half of an even sixteenth count.
    pub fn half(self) -> Dist16 {
        match self.sixteenths() {
            Some(s) => {
                assert!(s % 2 == 0, "half of an odd sixteenth count is off-grid");
                Dist16(s / 2)
            }
            None => Dist16::INFINITY,
        }
    }

    pub fn is_multiple_of(self, sixteenths: u32) -> bool {
        match self.sixteenths() {
            Some(s) => s % sixteenths == 0,
            None => false,
        }
    }

    /// Reduced fraction in edge units; `None` for infinity.
    pub fn as_rational(self) -> Option<Rat> {
        self.sixteenths().map(|s| Rat::new(s as u64, 16))
    }
}

impl fmt::Display for Dist16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "inf"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Non-negative rational in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rat {
    pub num: u64,
    pub den: u64,
}

impl Rat {
    pub fn new(num: u64, den: u64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.max(1), den).max(1);
        if num == 0 {
            return Rat { num: 0, den: 1 };
        }
        Rat {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(n: u64) -> Rat {
        Rat { num: n, den: 1 }
    }

    /// Compare a/b with c/d exactly.
    pub fn cmp_exact(self, other: Rat) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }

    pub fn le(self, other: Rat) -> bool {
        self.cmp_exact(other) != std::cmp::Ordering::Greater
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rat", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

/// A rational that may be infinite, for QI constants over disconnected ranges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RatOrInf {
    Finite(Rat),
    Inf,
}

impl RatOrInf {
    pub fn finite(self) -> Option<Rat> {
        match self {
            RatOrInf::Finite(r) => Some(r),
            RatOrInf::Inf => None,
        }
    }

    pub fn le(self, other: RatOrInf) -> bool {
        match (self, other) {
            (RatOrInf::Finite(a), RatOrInf::Finite(b)) => a.le(b),
            (_, RatOrInf::Inf) => true,
            (RatOrInf::Inf, RatOrInf::Finite(_)) => false,
        }
    }
}

impl fmt::Display for RatOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatOrInf::Finite(r) => write!(f, "{r}"),
            RatOrInf::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for RatOrInf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RatOrInf::Finite(r) => r.serialize(s),
            RatOrInf::Inf => s.serialize_str("inf"),
        }
    }
}

impl Serialize for Dist16 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_rational()
            .map_or(RatOrInf::Inf, RatOrInf::Finite)
            .serialize(s)
    }
}
