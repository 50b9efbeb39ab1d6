use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polytope::PolyhedralBall;
use crate::error::{NormError, Result};

/// An exponent `p` in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(NormError::InvalidInput(format!("exponent p must lie in [1, inf], got {p}")));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Strictly between 1 and ∞.
    pub fn is_intermediate(self) -> bool {
        !self.is_one() && !self.is_infinite()
    }

    /// `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Self {
        if self.is_one() {
            Self::INFINITY
        } else if self.is_infinite() {
            Self::ONE
        } else {
            Self(self.0 / (self.0 - 1.0))
        }
    }

    /// `(a^p + b^p)^{1/p}` for nonnegative `a`, `b`; `max(a, b)` when `p = ∞`.
    pub fn combine(self, a: f64, b: f64) -> f64 {
        lp_norm(self, [a, b].iter().copied())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => p,
            Raw::Str(s) if s == "inf" => f64::INFINITY,
            Raw::Str(s) => return Err(serde::de::Error::custom(format!("p must be a number or \"inf\", got {s:?}"))),
        };
        Exponent::new(p).map_err(serde::de::Error::custom)
    }
}

/// `ℓp` norm of a sequence of absolute values (or signed values; only
/// magnitudes matter). Rescales by the largest entry to avoid overflow.
pub(crate) fn lp_norm(p: Exponent, values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().map(f64::abs).fold(0.0, f64::max);
    if p.is_infinite() || max == 0.0 {
        return max;
    }
    if p.is_one() {
        return values.map(f64::abs).sum();
    }
    let p = p.value();
    max * values.map(|v| (v.abs() / max).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Recursive description of a finite-dimensional normed space.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Polyhedral(Arc<PolyhedralBall>),
    Lp { p: Exponent, dim: usize },
    /// `left ⊕_p right`; left coordinates come first.
    DirectSum { p: Exponent, left: Box<SpaceSpec>, right: Box<SpaceSpec> },
}

impl SpaceSpec {
    pub fn polyhedral(ball: PolyhedralBall) -> Self {
        SpaceSpec::Polyhedral(Arc::new(ball))
    }

    pub fn lp(p: Exponent, dim: usize) -> Self {
        SpaceSpec::Lp { p, dim }
    }

    pub fn direct_sum(p: Exponent, left: SpaceSpec, right: SpaceSpec) -> Self {
        SpaceSpec::DirectSum { p, left: Box::new(left), right: Box::new(right) }
    }

    pub fn dim(&self) -> usize {
        match self {
            SpaceSpec::Polyhedral(b) => b.dim(),
            SpaceSpec::Lp { dim, .. } => *dim,
            SpaceSpec::DirectSum { left, right, .. } => left.dim() + right.dim(),
        }
    }

    /// Norm of raw coordinates; the caller guarantees matching dimension.
    pub(crate) fn norm_raw(&self, x: &[f64]) -> f64 {
        match self {
            SpaceSpec::Polyhedral(b) => b.gauge(x),
            SpaceSpec::Lp { p, .. } => lp_norm(*p, x.iter().copied()),
            SpaceSpec::DirectSum { p, left, right } => {
                let (l, r) = x.split_at(left.dim());
                p.combine(left.norm_raw(l), right.norm_raw(r))
            }
        }
    }

    /// Dual norm of raw coordinates.
    pub(crate) fn dual_norm_raw(&self, f: &[f64]) -> f64 {
        match self {
            SpaceSpec::Polyhedral(b) => b.support(f),
            SpaceSpec::Lp { p, .. } => lp_norm(p.conjugate(), f.iter().copied()),
            SpaceSpec::DirectSum { p, left, right } => {
                let (l, r) = f.split_at(left.dim());
                p.conjugate().combine(left.dual_norm_raw(l), right.dual_norm_raw(r))
            }
        }
    }

    /// Short human-readable label, e.g. `poly6 (+)_inf l2^1`.
    pub fn label(&self) -> String {
        match self {
            SpaceSpec::Polyhedral(b) => format!("poly{}", b.vertices().len()),
            SpaceSpec::Lp { p, dim } => format!("l{p}^{dim}"),
            SpaceSpec::DirectSum { p, left, right } => format!("({} (+)_{p} {})", left.label(), right.label()),
        }
    }
}
