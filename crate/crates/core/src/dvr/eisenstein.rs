//! Arithmetic in `Q[x]/(E(x))` for an Eisenstein polynomial `E` at `p`,
//! with `pi` the class of `x`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `p`-adic valuation of a nonzero integer.
pub(crate) fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Element `(sum c_i x^i) / den` with `deg < e`, `den > 0` and
/// `gcd(content, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisElem {
    num: Vec<BigInt>,
    den: BigInt,
}

/// Parameters of one Eisenstein extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinData {
    pub(crate) p: BigInt,
    /// Monic, ascending, length `e + 1`.
    pub(crate) poly: Vec<BigInt>,
    pub(crate) pi_inv: EisElem,
}

impl EisensteinData {
    pub(crate) fn new(p: BigInt, poly: Vec<BigInt>) -> Self {
        let e = poly.len() - 1;
        // pi^{-1} = -(x^{e-1} + c_{e-1} x^{e-2} + ... + c_1) / c_0
        let mut num: Vec<BigInt> = poly[1..=e].iter().map(|c| -c).collect();
        let mut den = poly[0].clone();
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let pi_inv = EisElem::from_parts(num, den);
        Self { p, poly, pi_inv }
    }

    pub(crate) fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub(crate) fn reduce_poly(&self, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let e = self.degree();
        while coeffs.len() > e {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = coeffs.len() - e;
            for (j, c) in self.poly[..e].iter().enumerate() {
                coeffs[base + j] -= &top * c;
            }
        }
        coeffs
    }

    pub(crate) fn mul(&self, a: &EisElem, b: &EisElem) -> EisElem {
        if a.is_zero() || b.is_zero() {
            return EisElem::zero();
        }
        let mut prod = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        EisElem::from_parts(self.reduce_poly(prod), &a.den * &b.den)
    }

    pub(crate) fn valuation(&self, a: &EisElem) -> Option<i64> {
        let e = self.degree() as i64;
        let vden = vp_int(&a.den, &self.p);
        a.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| e * (vp_int(c, &self.p) - vden) + i as i64)
            .min()
    }

    /// Inverse via the extended Euclidean algorithm in `Q[x]`.
    pub(crate) fn inv(&self, a: &EisElem) -> Option<EisElem> {
        if a.is_zero() {
            return None;
        }
        let to_q = |v: &[BigInt], d: &BigInt| -> Vec<BigRational> {
            v.iter()
                .map(|c| BigRational::new(c.clone(), d.clone()))
                .collect()
        };
        let mut r0 = to_q(&self.poly, &BigInt::one());
        let mut r1 = to_q(&a.num, &a.den);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while qpoly_degree(&r1) > 0 {
            let (quot, rem) = qpoly_div_rem(&r0, &r1);
            let next = qpoly_sub(&s0, &qpoly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, next);
        }
        let c = r1.first().cloned().filter(|c| !c.is_zero())?;
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Some(EisElem::from_rationals(&inv))
    }
}

fn qpoly_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn qpoly_degree(v: &[BigRational]) -> usize {
    v.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    qpoly_trim(&mut out);
    out
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(&mut out);
    out
}

fn qpoly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut b = b.to_vec();
    qpoly_trim(&mut b);
    let mut rem = a.to_vec();
    qpoly_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[i - db + j] -= &c * d;
        }
        quot[i - db] = c;
    }
    qpoly_trim(&mut rem);
    qpoly_trim(&mut quot);
    (quot, rem)
}

impl EisElem {
    pub fn zero() -> Self {
        Self { num: Vec::new(), den: BigInt::one() }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::from_parts(vec![n], BigInt::one())
    }

    pub fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den = &den / &g;
        }
        Self { num, den }
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(num, den)
    }

    /// Coefficients of `1, pi, pi^2, ...` as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.num.len().max(other.num.len());
        let zero = BigInt::zero();
        let num = (0..n)
            .map(|i| {
                let a = self.num.get(i).unwrap_or(&zero);
                let b = other.num.get(i).unwrap_or(&zero);
                if self.den == other.den {
                    a + b
                } else {
                    a * &other.den + b * &self.den
                }
            })
            .collect();
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::from_parts(num, den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for EisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(poly: &[i64], p: i64) -> EisensteinData {
        EisensteinData::new(BigInt::from(p), poly.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn elem(cs: &[i64]) -> EisElem {
        EisElem::from_parts(cs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    #[test]
    fn pi_squared_in_quartic() {
        let d = data(&[-2, 0, 0, 0, 1], 2);
        let pi = elem(&[0, 1]);
        let sq = d.mul(&pi, &pi);
        assert_eq!(sq, elem(&[0, 0, 1]));
        assert_eq!(d.valuation(&sq), Some(2));
    }

    #[test]
    fn pi_inverse_times_pi_is_one() {
        for poly in [[-2i64, 0, 0, 0, 1], [2, 4, 6, 4, 1]] {
            let d = data(&poly, 2);
            let pi = elem(&[0, 1]);
            assert_eq!(d.mul(&pi, &d.pi_inv), elem(&[1]));
        }
    }

    #[test]
    fn general_inverse() {
        let d = data(&[-2, 0, 0, 0, 1], 2);
        let a = elem(&[2, 1]);
        let inv = d.inv(&a).unwrap();
        assert_eq!(d.mul(&a, &inv), elem(&[1]));
        assert_eq!(d.valuation(&a), Some(1));
    }

    #[test]
    fn valuation_of_p_is_degree() {
        let d = data(&[-2, 0, 0, 0, 0, 1], 2);
        assert_eq!(d.valuation(&elem(&[2])), Some(5));
    }

    #[test]
    fn display_is_readable() {
        let a = EisElem::from_rationals(&[
            BigRational::from_integer(BigInt::from(2)),
            BigRational::from_integer(BigInt::from(-1)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        ]);
        assert_eq!(a.to_string(), "1/3*x^2-x+2");
    }
}
