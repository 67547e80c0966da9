//! Closed-form bound quantities: the punctured-ball polynomial `h(δ, g)`, the
//! path-length scale `L = ⌈(g − 1)/ε⌉`, the oriented-diameter bound
//! `(2g + ε)·n/h(δ, g) + 4·C(Lg + 1, 2)` and the girth-3 comparison against
//! `7n/(δ + 1)`.
//!
//! Everything is exact: ε and the bounds are rationals, never floats.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational used for ε and all real-valued bounds.
pub type Rational = Ratio<i128>;

/// A positive exact rational parsed from `p/q` or an integer. Decimal input
/// is rejected so that `⌈(g − 1)/ε⌉` is never subject to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Rational);

impl Epsilon {
    pub fn new(numer: i128, denom: i128) -> Result<Epsilon> {
        if denom == 0 {
            return Err(Error::InvalidArgument("epsilon denominator is zero".into()));
        }
        Epsilon::from_rational(Rational::new(numer, denom))
    }

    pub fn from_rational(r: Rational) -> Result<Epsilon> {
        if r <= Rational::zero() {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {}",
                fmt_rational(&r)
            )));
        }
        Ok(Epsilon(r))
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Epsilon> {
        let bad = || Error::InvalidArgument(format!("epsilon `{s}` is not an exact rational p/q"));
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: i128 = p.parse().map_err(|_| bad())?;
        let q: i128 = q.parse().map_err(|_| bad())?;
        Epsilon::new(p, q)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Epsilon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Formats as `p/q` (always with a denominator).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational p/q"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i128 = p.trim().parse().map_err(|_| bad())?;
    let q: i128 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub(crate) mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Radius of the balls `N(g, v, P)` counted by `h(δ, g)`: layers
/// `0..=⌊(g − 1)/2⌋` around the centre.
pub fn ball_radius(g: usize) -> usize {
    (g - 1) / 2
}

/// `h(δ, g) = 1 + δ + Σ_{i=1}^{⌊(g−1)/2⌋−1} δ(δ−3)^i`.
///
/// For `δ ≤ 3` the summands are non-positive or alternate, so the sum is
/// dropped and `h = 1 + δ`. Saturates at `i128::MAX` on overflow.
pub fn h(delta: usize, g: usize) -> i128 {
    let d = delta as i128;
    let mut total: i128 = 1 + d;
    if delta <= 3 || g < 3 {
        return total;
    }
    let terms = ((g - 1) / 2).saturating_sub(1);
    let mut pow: i128 = 1;
    for _ in 0..terms {
        pow = pow.saturating_mul(d - 3);
        total = total.saturating_add(d.saturating_mul(pow));
    }
    total
}

/// `L = ⌈(g − 1)/ε⌉`.
pub fn big_l(g: usize, epsilon: Epsilon) -> Result<usize> {
    if g < 3 {
        return Err(Error::InvalidArgument(format!("girth must be at least 3, got {g}")));
    }
    let q = Rational::from_integer(g as i128 - 1) / epsilon.value();
    q.ceil()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::InvalidArgument("L does not fit in usize".into()))
}

/// `4·C(s + 1, 2) = 2s(s + 1)`, the additive cost of extending an orientation
/// from a core to every vertex within distance `s`.
pub fn extension_allowance(s: usize) -> u128 {
    2 * s as u128 * (s as u128 + 1)
}

/// Inputs to the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParameters {
    pub n: usize,
    pub delta: usize,
    pub girth: usize,
    pub epsilon: Epsilon,
}

impl BoundParameters {
    pub fn new(n: usize, delta: usize, girth: usize, epsilon: Epsilon) -> Result<BoundParameters> {
        let p = BoundParameters {
            n,
            delta,
            girth,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidArgument(format!("n must be at least 3, got {}", self.n)));
        }
        if self.delta < 2 {
            return Err(Error::InvalidArgument(format!(
                "minimum degree must be at least 2, got {}",
                self.delta
            )));
        }
        if self.girth < 3 {
            return Err(Error::InvalidArgument(format!(
                "girth must be at least 3, got {}",
                self.girth
            )));
        }
        Ok(())
    }
}

/// The evaluated bound, optionally annotated with the achieved diameter and
/// the exact optimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta: usize,
    pub girth: usize,
    pub epsilon: Epsilon,
    pub h_value: i128,
    pub l_value: usize,
    #[serde(with = "rational_str")]
    pub core_bound: Rational,
    pub additive_constant: u128,
    #[serde(with = "rational_str")]
    pub total_bound: Rational,
    pub achieved_diameter: Option<usize>,
    pub oracle_optimum: Option<usize>,
}

impl BoundReport {
    /// `⌊total_bound⌋`.
    pub fn total_floor(&self) -> i128 {
        self.total_bound.floor().to_integer()
    }

    /// Checks `oracle ≤ achieved ≤ ⌊total⌋` for whichever values are present.
    pub fn sandwich_holds(&self) -> bool {
        let upper = match self.achieved_diameter {
            Some(a) => (a as i128) <= self.total_floor(),
            None => true,
        };
        let lower = match (self.oracle_optimum, self.achieved_diameter) {
            (Some(o), Some(a)) => o <= a,
            _ => true,
        };
        upper && lower
    }
}

/// Evaluates the bound for `p`.
pub fn theorem_bound(p: &BoundParameters) -> Result<BoundReport> {
    p.validate()?;
    let h_value = h(p.delta, p.girth);
    let l_value = big_l(p.girth, p.epsilon)?;
    let two_g = Rational::from_integer(2 * p.girth as i128);
    let core_bound = (two_g + p.epsilon.value()) * Rational::from_integer(p.n as i128)
        / Rational::from_integer(h_value);
    let lg = l_value
        .checked_mul(p.girth)
        .ok_or_else(|| Error::InvalidArgument("L·g overflows".into()))?;
    let additive_constant = extension_allowance(lg);
    let total_bound = core_bound + Rational::from_integer(additive_constant as i128);
    Ok(BoundReport {
        n: p.n,
        delta: p.delta,
        girth: p.girth,
        epsilon: p.epsilon,
        h_value,
        l_value,
        core_bound,
        additive_constant,
        total_bound,
        achieved_diameter: None,
        oracle_optimum: None,
    })
}

/// Girth-3 comparison of `(6 + ε)n/(δ + 1)` against `7n/(δ + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryComparison {
    #[serde(with = "rational_str")]
    pub ours: Rational,
    #[serde(with = "rational_str")]
    pub surmacs: Rational,
    pub improves: bool,
}

pub fn corollary_compare(p: &BoundParameters) -> Result<CorollaryComparison> {
    if p.girth != 3 {
        return Err(Error::InvalidArgument(format!(
            "comparison needs girth 3, got {}",
            p.girth
        )));
    }
    let eps = p.epsilon.value();
    if eps >= Rational::one() || !eps.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "comparison needs 0 < epsilon < 1, got {}",
            p.epsilon
        )));
    }
    let ratio = Rational::new(p.n as i128, p.delta as i128 + 1);
    let ours = (Rational::from_integer(6) + eps) * ratio;
    let surmacs = Rational::from_integer(7) * ratio;
    Ok(CorollaryComparison {
        improves: ours < surmacs,
        ours,
        surmacs,
    })
}

/// `7n/(δ + 1)` for any graph, reported alongside every run.
pub fn surmacs_bound(n: usize, delta: usize) -> Rational {
    Rational::new(7 * n as i128, delta as i128 + 1)
}
