//! Polynomials and rational functions over a prime field, used by the
//! `F_q(t)` backend. Valuation is always taken at the place `t = 0`.

use std::fmt;

/// Dense polynomial over `F_q`, coefficients in ascending degree with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    coeffs: Vec<u64>,
    q: u64,
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(q)) as u64
}

fn invmod(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    let mut acc = 1u64;
    let mut base = a % q;
    let mut exp = q - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, q);
        }
        base = mulmod(base, base, q);
        exp >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, q: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        let mut p = Self { coeffs, q };
        p.normalize();
        p
    }

    pub fn zero(q: u64) -> Self {
        Self { coeffs: Vec::new(), q }
    }

    pub fn constant(c: u64, q: u64) -> Self {
        Self::new(vec![c], q)
    }

    pub fn monomial(c: u64, deg: usize, q: u64) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs, q)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.q
            })
            .collect();
        Self::new(coeffs, self.q)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { self.q - c })
            .collect();
        Self::new(coeffs, self.q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.q);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.q)) % self.q;
            }
        }
        Self::new(out, self.q)
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| mulmod(a, c, self.q)).collect();
        Self::new(coeffs, self.q)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = invmod(divisor.leading(), self.q);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.q), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulmod(rem[i], lead_inv, self.q);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + self.q - mulmod(c, d, self.q)) % self.q;
            }
        }
        (Self::new(quot, self.q), Self::new(rem, self.q))
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Drop the factor `t^k`; the caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec(), self.q)
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs, self.q)
    }

    /// Substitute `t -> t^e`.
    pub fn inflate(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * e + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c;
        }
        Self::new(coeffs, self.q)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Element of `F_q(t)` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    pub fn from_poly(num: FpPoly) -> Self {
        let q = num.q;
        Self { num, den: FpPoly::constant(1, q) }
    }

    /// Build `num / den` in canonical form; `den` must be nonzero.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let q = num.q;
        if num.is_zero() {
            return Self { num, den: FpPoly::constant(1, q) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        if lead != 1 {
            let inv = invmod(lead, q);
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &FpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.order_at_zero()? as i64;
        let vd = self.den.order_at_zero().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Multiply by `t^k` for any integer `k`.
    pub fn mul_t_pow(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            let k = k as usize;
            // cancel against t-factors of the denominator first
            let dt = self.den.order_at_zero().unwrap_or(0).min(k);
            Self {
                num: self.num.shift_up(k - dt),
                den: self.den.shift_down(dt),
            }
        } else {
            let k = (-k) as usize;
            let nt = self.num.order_at_zero().unwrap_or(0).min(k);
            Self {
                num: self.num.shift_down(nt),
                den: self.den.shift_up(k - nt),
            }
        }
    }

    /// Value at `t = 0`; requires nonnegative valuation.
    pub fn value_at_zero(&self) -> u64 {
        let q = self.num.q;
        mulmod(
            self.num.constant_term(),
            invmod(self.den.constant_term(), q),
            q,
        )
    }

    pub fn inflate(&self, e: usize) -> Self {
        Self::new(self.num.inflate(e), self.den.inflate(e))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
