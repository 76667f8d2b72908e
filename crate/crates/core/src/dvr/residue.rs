//! Arithmetic in the prime residue field `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::DvrError;

/// An element of `F_p`, stored as its canonical representative in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    p: u64,
}

impl Residue {
    pub fn new(value: i64, p: u64) -> Self {
        let m = i128::from(value).rem_euclid(i128::from(p));
        Self { value: m as u64, p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        Self { value: value % p, p }
    }

    pub fn from_bigint(value: &BigInt, p: u64) -> Self {
        let m = value.mod_floor(&BigInt::from(p));
        Self {
            value: m.to_u64().expect("reduced value fits in u64"),
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Self { value: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Self { value: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.p - 2))
    }

    /// The smallest `r` with `r^n = self`, if any.
    pub fn nth_root(self, n: u32) -> Option<Self> {
        (0..self.p)
            .map(|r| Self::from_u64(r, self.p))
            .find(|r| r.pow(u64::from(n)) == self)
    }

    pub fn sqrt(self) -> Option<Self> {
        self.nth_root(2)
    }

    fn check(self, other: Self) {
        assert_eq!(self.p, other.p, "residues over different primes");
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        let s = (u128::from(self.value) + u128::from(rhs.value)) % u128::from(self.p);
        Self { value: s as u64, p: self.p }
    }
}

impl Sub for Residue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Self;
    fn neg(self) -> Self {
        if self.value == 0 {
            self
        } else {
            Self { value: self.p - self.value, p: self.p }
        }
    }
}

impl Mul for Residue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        let m = (u128::from(self.value) * u128::from(rhs.value)) % u128::from(self.p);
        Self { value: m as u64, p: self.p }
    }
}

fn eval(coeffs: &[Residue], x: Residue) -> Residue {
    coeffs
        .iter()
        .rev()
        .fold(Residue::zero(x.p), |acc, &c| acc * x + c)
}

/// Divide by `(X - root)`, assuming `root` is a root. Coefficients are
/// in ascending degree.
fn deflate(coeffs: &[Residue], root: Residue) -> Vec<Residue> {
    let n = coeffs.len();
    let mut out = vec![Residue::zero(root.p); n - 1];
    let mut carry = Residue::zero(root.p);
    for i in (1..n).rev() {
        carry = coeffs[i] + carry * root;
        out[i - 1] = carry;
    }
    out
}

fn trim(coeffs: &[Residue]) -> &[Residue] {
    let len = coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// All roots in `F_p` of the polynomial with the given coefficients
/// (ascending degree), repeated according to multiplicity, in ascending
/// order of their canonical representatives.
pub fn residue_roots(coeffs: &[Residue]) -> Result<Vec<Residue>, DvrError> {
    let poly = trim(coeffs);
    if poly.is_empty() {
        return Err(DvrError::ZeroPolynomial);
    }
    let p = poly[0].p;
    let mut roots = Vec::new();
    for r in 0..p {
        let x = Residue::from_u64(r, p);
        let mut cur = poly.to_vec();
        while cur.len() > 1 && eval(&cur, x).is_zero() {
            roots.push(x);
            cur = deflate(&cur, x);
        }
        if roots.len() + 1 >= poly.len() {
            break;
        }
    }
    Ok(roots)
}

/// Number of distinct roots in `F_p`.
pub fn count_distinct_roots(coeffs: &[Residue]) -> Result<usize, DvrError> {
    let mut roots = residue_roots(coeffs)?;
    roots.dedup();
    Ok(roots.len())
}
