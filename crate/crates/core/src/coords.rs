//! Primal vectors and dual functionals as plain coordinate tuples.
//!
//! A functional acts on a vector through the dot product, so both types are
//! thin newtypes around `Vec<f64>` that differ only in which norm applies.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{NormError, Result};

macro_rules! coord_type {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Vec<f64>);

        impl $name {
            /// Rejects empty tuples and non-finite entries.
            pub fn new(coords: Vec<f64>) -> Result<Self> {
                if coords.is_empty() {
                    return Err(NormError::InvalidInput(concat!(
                        stringify!($name),
                        " must have at least one coordinate"
                    ).into()));
                }
                if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
                    return Err(NormError::InvalidInput(format!(
                        "{} has non-finite coordinate {bad}",
                        stringify!($name)
                    )));
                }
                Ok(Self(coords))
            }

            pub fn zeros(dim: usize) -> Self {
                Self(vec![0.0; dim])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<f64> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0.0)
            }

            pub fn scale(&self, s: f64) -> Self {
                Self(self.0.iter().map(|c| c * s).collect())
            }

            /// Concatenation `(self, other)`, left block first.
            pub fn concat(&self, other: &Self) -> Self {
                let mut v = self.0.clone();
                v.extend_from_slice(&other.0);
                Self(v)
            }

            /// Splits into the first `at` coordinates and the rest.
            pub fn split(&self, at: usize) -> (Self, Self) {
                let (l, r) = self.0.split_at(at);
                (Self(l.to_vec()), Self(r.to_vec()))
            }

            pub fn euclidean_distance(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            }
        }

        impl From<Vec<f64>> for $name {
            /// Unchecked conversion; prefer [`Self::new`] for untrusted data.
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }

        impl From<&[f64]> for $name {
            fn from(v: &[f64]) -> Self {
                Self(v.to_vec())
            }
        }

        impl<const N: usize> From<[f64; N]> for $name {
            fn from(v: [f64; N]) -> Self {
                Self(v.to_vec())
            }
        }

        impl Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl Mul<f64> for &$name {
            type Output = $name;
            fn mul(self, s: f64) -> $name {
                self.scale(s)
            }
        }
    };
}

coord_type!(Vector);
coord_type!(Functional);

impl Functional {
    /// `f(x)`; dimensions are assumed to agree.
    pub fn apply(&self, x: &Vector) -> f64 {
        dot(&self.0, &x.0)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether two point sets agree up to reordering, with coordinates compared in
/// max-norm against `tol`. Duplicates must match with multiplicity.
pub fn same_point_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len() && contains_all(b, a, tol) && contains_all(a, b, tol)
}

/// Every point of `needles` has a partner in `haystack` within `tol`.
pub fn contains_all(haystack: &[Vec<f64>], needles: &[Vec<f64>], tol: f64) -> bool {
    needles.iter().all(|n| {
        haystack.iter().any(|h| {
            h.len() == n.len() && h.iter().zip(n).all(|(a, b)| (a - b).abs() <= tol)
        })
    })
}
