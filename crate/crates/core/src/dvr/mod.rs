//! Exact arithmetic over three discretely valued fields with prime
//! residue field:
//!
//! * `qp:p`  — `Q` with the `p`-adic valuation,
//! * `fqt:q` — `F_q(t)` with the valuation at `t = 0`,
//! * `eis:p:E(x)` — `Q[x]/(E)` for an Eisenstein polynomial `E` at `p`,
//!   valued so that the class of `x` is a uniformizer.
//!
//! Every quantity the local algorithms inspect is a valuation or a
//! residue, and both are exact on these representations, so there is no
//! precision model.

mod eisenstein;
mod field;
mod fp_poly;
mod parse;
mod residue;

use std::fmt;
use std::ops::Add;

use thiserror::Error;

pub use eisenstein::EisElem;
pub use field::{Field, FieldDescriptor, LocalElement};
pub use fp_poly::{FpPoly, RatFunc};
pub use residue::{count_distinct_roots, residue_roots, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DvrError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {0} is not Eisenstein at {1}")]
    NotEisenstein(String, u64),
    #[error("element {0} has a denominator divisible by {1}")]
    DenominatorNotCoprime(String, u64),
    #[error("elements live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot reduce {0}: negative valuation")]
    NegativeValuation(String),
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
}

/// Valuation of a field element: an integer, or `+inf` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    /// `v >= k`
    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl serde::Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
