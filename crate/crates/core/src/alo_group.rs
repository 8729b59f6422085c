//! Abelian linearly ordered groups over real scalars.
//!
//! Every computation in this crate goes through the [`AloGroup`] contract. The
//! four concrete groups are the additive reals, the positive reals under
//! multiplication, the fuzzy-additive reals (`a + b - 0.5`) and the open unit
//! interval under the fuzzy product `ab / (ab + (1-a)(1-b))`. All of them are
//! ordered by the usual order on the reals.
//!
//! The plain methods (`combine`, `inverse`, ...) assume their inputs already lie
//! in the domain. The `checked_*` variants validate first and are what callers
//! holding untrusted scalars should use.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance for identity and order comparisons on raw values.
pub const TOLERANCE: f64 = 1e-9;

/// Fuzzy-multiplicative inputs closer than this to 0 or 1 are rejected.
pub const FUZZY_EDGE: f64 = 1e-12;

pub trait AloGroup {
    fn kind(&self) -> GroupKind;

    fn identity(&self) -> f64;

    /// Domain predicate.
    fn contains(&self, a: f64) -> bool;

    fn combine(&self, a: f64, b: f64) -> f64;

    fn inverse(&self, a: f64) -> f64;

    /// `a` combined with itself `n` times, `n >= 1`.
    fn power_positive(&self, a: f64, n: u32) -> f64;

    /// The unique `x` with `power_positive(x, n) == a`, `n >= 1`.
    fn root(&self, a: f64, n: u32) -> f64;

    /// Order isomorphism from `(R, +, <=)` onto this group. Used to sample
    /// elements uniformly in a natural parameter space.
    #[allow(clippy::wrong_self_convention)]
    fn from_additive(&self, t: f64) -> f64;

    /// Inverse of [`AloGroup::from_additive`].
    fn to_additive(&self, a: f64) -> f64;

    fn divide(&self, a: f64, b: f64) -> f64 {
        self.combine(a, self.inverse(b))
    }

    /// Integer power; `n = 0` yields the identity and negative `n` raises the
    /// inverse.
    fn power(&self, a: f64, n: i64) -> f64 {
        match n {
            0 => self.identity(),
            n if n > 0 => self.power_positive(a, n as u32),
            n => self.power_positive(self.inverse(a), n.unsigned_abs() as u32),
        }
    }

    /// Group norm `max{a, a^-1}`.
    fn norm(&self, a: f64) -> f64 {
        a.max(self.inverse(a))
    }

    /// Group distance `||a / b||`.
    fn distance(&self, a: f64, b: f64) -> f64 {
        self.norm(self.divide(a, b))
    }

    fn is_identity(&self, a: f64) -> bool {
        (a - self.identity()).abs() <= TOLERANCE
    }

    /// Strict dominance `a > b` with margin: `a / b` exceeds the identity by
    /// more than [`TOLERANCE`].
    fn exceeds(&self, a: f64, b: f64) -> bool {
        self.divide(a, b) - self.identity() > TOLERANCE
    }

    fn check(&self, a: f64) -> Result<f64> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Domain {
                group: self.kind(),
                value: a,
            })
        }
    }

    fn checked_combine(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.combine(self.check(a)?, self.check(b)?))
    }

    fn checked_inverse(&self, a: f64) -> Result<f64> {
        Ok(self.inverse(self.check(a)?))
    }

    fn checked_divide(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.divide(self.check(a)?, self.check(b)?))
    }

    fn checked_power(&self, a: f64, n: i64) -> Result<f64> {
        Ok(self.power(self.check(a)?, n))
    }

    fn checked_root(&self, a: f64, n: i64) -> Result<f64> {
        let a = self.check(a)?;
        if n < 1 {
            return Err(Error::InvalidRoot(n));
        }
        let n = u32::try_from(n).map_err(|_| Error::InvalidRoot(n))?;
        Ok(self.root(a, n))
    }

    fn checked_norm(&self, a: f64) -> Result<f64> {
        Ok(self.norm(self.check(a)?))
    }

    fn checked_distance(&self, a: f64, b: f64) -> Result<f64> {
        Ok(self.distance(self.check(a)?, self.check(b)?))
    }
}

/// `(R, +, <=)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Additive;

/// `(R+, *, <=)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Multiplicative;

/// `(R, +f, <=)` with `a +f b = a + b - 0.5`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FuzzyAdditive;

/// `(]0,1[, *f, <=)` with `a *f b = ab / (ab + (1-a)(1-b))`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FuzzyMultiplicative;

impl AloGroup for Additive {
    fn kind(&self) -> GroupKind {
        GroupKind::Additive
    }
    fn identity(&self) -> f64 {
        0.0
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite()
    }
    fn combine(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    fn inverse(&self, a: f64) -> f64 {
        -a
    }
    fn divide(&self, a: f64, b: f64) -> f64 {
        a - b
    }
    fn power_positive(&self, a: f64, n: u32) -> f64 {
        f64::from(n) * a
    }
    fn root(&self, a: f64, n: u32) -> f64 {
        a / f64::from(n)
    }
    fn from_additive(&self, t: f64) -> f64 {
        t
    }
    fn to_additive(&self, a: f64) -> f64 {
        a
    }
}

impl AloGroup for Multiplicative {
    fn kind(&self) -> GroupKind {
        GroupKind::Multiplicative
    }
    fn identity(&self) -> f64 {
        1.0
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite() && a > 0.0
    }
    fn combine(&self, a: f64, b: f64) -> f64 {
        a * b
    }
    fn inverse(&self, a: f64) -> f64 {
        1.0 / a
    }
    fn divide(&self, a: f64, b: f64) -> f64 {
        a / b
    }
    fn power_positive(&self, a: f64, n: u32) -> f64 {
        match i32::try_from(n) {
            Ok(n) => a.powi(n),
            Err(_) => a.powf(f64::from(n)),
        }
    }
    fn root(&self, a: f64, n: u32) -> f64 {
        match n {
            1 => a,
            2 => a.sqrt(),
            3 => a.cbrt(),
            n => a.powf(1.0 / f64::from(n)),
        }
    }
    fn from_additive(&self, t: f64) -> f64 {
        t.exp()
    }
    fn to_additive(&self, a: f64) -> f64 {
        a.ln()
    }
}

impl AloGroup for FuzzyAdditive {
    fn kind(&self) -> GroupKind {
        GroupKind::FuzzyAdditive
    }
    fn identity(&self) -> f64 {
        0.5
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite()
    }
    fn combine(&self, a: f64, b: f64) -> f64 {
        a + b - 0.5
    }
    fn inverse(&self, a: f64) -> f64 {
        1.0 - a
    }
    fn divide(&self, a: f64, b: f64) -> f64 {
        a - b + 0.5
    }
    fn power_positive(&self, a: f64, n: u32) -> f64 {
        let n = f64::from(n);
        n * a - (n - 1.0) / 2.0
    }
    fn root(&self, a: f64, n: u32) -> f64 {
        let n = f64::from(n);
        (a + (n - 1.0) / 2.0) / n
    }
    fn from_additive(&self, t: f64) -> f64 {
        t + 0.5
    }
    fn to_additive(&self, a: f64) -> f64 {
        a - 0.5
    }
}

impl FuzzyMultiplicative {
    /// Order isomorphism `a / (1 - a)` onto the multiplicative group.
    fn odds(a: f64) -> f64 {
        a / (1.0 - a)
    }

    fn from_odds(x: f64) -> f64 {
        if x.is_infinite() {
            1.0
        } else {
            x / (1.0 + x)
        }
    }
}

impl AloGroup for FuzzyMultiplicative {
    fn kind(&self) -> GroupKind {
        GroupKind::FuzzyMultiplicative
    }
    fn identity(&self) -> f64 {
        0.5
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite() && a > FUZZY_EDGE && a < 1.0 - FUZZY_EDGE
    }
    fn combine(&self, a: f64, b: f64) -> f64 {
        let ab = a * b;
        ab / (ab + (1.0 - a) * (1.0 - b))
    }
    fn inverse(&self, a: f64) -> f64 {
        1.0 - a
    }
    fn power_positive(&self, a: f64, n: u32) -> f64 {
        Self::from_odds(Multiplicative.power_positive(Self::odds(a), n))
    }
    fn root(&self, a: f64, n: u32) -> f64 {
        Self::from_odds(Multiplicative.root(Self::odds(a), n))
    }
    fn from_additive(&self, t: f64) -> f64 {
        1.0 / (1.0 + (-t).exp())
    }
    fn to_additive(&self, a: f64) -> f64 {
        Self::odds(a).ln()
    }
}

/// Runtime selection of one of the four concrete groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Additive,
    Multiplicative,
    FuzzyAdditive,
    FuzzyMultiplicative,
}

impl GroupKind {
    pub const ALL: [GroupKind; 4] = [
        GroupKind::Additive,
        GroupKind::Multiplicative,
        GroupKind::FuzzyAdditive,
        GroupKind::FuzzyMultiplicative,
    ];

    pub fn id(self) -> &'static str {
        match self {
            GroupKind::Additive => "additive",
            GroupKind::Multiplicative => "multiplicative",
            GroupKind::FuzzyAdditive => "fuzzy-additive",
            GroupKind::FuzzyMultiplicative => "fuzzy-multiplicative",
        }
    }

    fn dispatch(self) -> &'static dyn AloGroup {
        match self {
            GroupKind::Additive => &Additive,
            GroupKind::Multiplicative => &Multiplicative,
            GroupKind::FuzzyAdditive => &FuzzyAdditive,
            GroupKind::FuzzyMultiplicative => &FuzzyMultiplicative,
        }
    }
}

impl AloGroup for GroupKind {
    fn kind(&self) -> GroupKind {
        *self
    }
    fn identity(&self) -> f64 {
        self.dispatch().identity()
    }
    fn contains(&self, a: f64) -> bool {
        self.dispatch().contains(a)
    }
    fn combine(&self, a: f64, b: f64) -> f64 {
        self.dispatch().combine(a, b)
    }
    fn inverse(&self, a: f64) -> f64 {
        self.dispatch().inverse(a)
    }
    fn divide(&self, a: f64, b: f64) -> f64 {
        self.dispatch().divide(a, b)
    }
    fn power_positive(&self, a: f64, n: u32) -> f64 {
        self.dispatch().power_positive(a, n)
    }
    fn root(&self, a: f64, n: u32) -> f64 {
        self.dispatch().root(a, n)
    }
    fn from_additive(&self, t: f64) -> f64 {
        self.dispatch().from_additive(t)
    }
    fn to_additive(&self, a: f64) -> f64 {
        self.dispatch().to_additive(a)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        GroupKind::ALL
            .into_iter()
            .find(|g| g.id() == normalized)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

impl Serialize for GroupKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for GroupKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
