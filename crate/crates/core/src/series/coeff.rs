//! Coefficient semirings: `ℕ₀` (`u64`), `ℤ` (`i64`) and cardinals `ℕ₀ ∪ {ω}`.

use std::fmt;

/// A commutative semiring of coefficients.
///
/// Arithmetic panics on overflow; coefficients at desk scale stay far
/// below the limits of 64-bit integers.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn parse(s: &str) -> Option<Self>;

    /// Additive inverse, for rings.
    fn negated(&self) -> Option<Self> {
        None
    }

    fn is_negative(&self) -> bool {
        false
    }
}

/// Coefficients of a strictly ordered, cancellative semiring embedded in `ℤ`.
pub trait OrderedCoefficient: Coefficient + Ord + Copy {
    fn to_i128(self) -> i128;
    fn from_i128(v: i128) -> Option<Self>;
}

impl Coefficient for u64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("coefficient overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("coefficient overflow")
    }
    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl OrderedCoefficient for u64 {
    fn to_i128(self) -> i128 {
        self as i128
    }
    fn from_i128(v: i128) -> Option<Self> {
        u64::try_from(v).ok()
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("coefficient overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("coefficient overflow")
    }
    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl OrderedCoefficient for i64 {
    fn to_i128(self) -> i128 {
        self as i128
    }
    fn from_i128(v: i128) -> Option<Self> {
        i64::try_from(v).ok()
    }
}

/// `ℕ₀ ∪ {ω}` with saturating cardinal arithmetic: `ω + x = ω`,
/// `ω · x = ω` for `x > 0`, `ω · 0 = 0`.
///
/// Neither cancellative nor strictly ordered, so it only implements
/// [`Coefficient`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cardinal {
    Finite(u64),
    Omega,
}

impl Coefficient for Cardinal {
    fn zero() -> Self {
        Cardinal::Finite(0)
    }
    fn one() -> Self {
        Cardinal::Finite(1)
    }
    fn is_zero(&self) -> bool {
        *self == Cardinal::Finite(0)
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a.add(b)),
            _ => Cardinal::Omega,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(Coefficient::mul(a, b)),
            (x, y) if x.is_zero() || y.is_zero() => Cardinal::Finite(0),
            _ => Cardinal::Omega,
        }
    }
    fn parse(s: &str) -> Option<Self> {
        if s == "w" {
            Some(Cardinal::Omega)
        } else {
            s.parse().ok().map(Cardinal::Finite)
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Omega => f.write_str("w"),
        }
    }
}
