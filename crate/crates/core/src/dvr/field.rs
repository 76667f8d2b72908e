use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::eisenstein::{vp_int, EisElem, EisensteinData};
use super::fp_poly::{FpPoly, RatFunc};
use super::parse::{parse_expr, Evaluator, IntPolyEval};
use super::residue::Residue;
use super::{is_prime, DvrError, Valuation};

/// Which discretely valued field an element lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// `Q` with the `p`-adic valuation.
    RationalAtP { p: u64 },
    /// `F_q(t)` valued at `t = 0`; `q` prime.
    FunctionField { q: u64 },
    /// `Q[x]/(E)` with `E` Eisenstein at `p`; `poly` is ascending and monic.
    Eisenstein { p: u64, poly: Vec<BigInt> },
}

impl FieldDescriptor {
    pub fn residue_char(&self) -> u64 {
        match self {
            FieldDescriptor::RationalAtP { p } | FieldDescriptor::Eisenstein { p, .. } => *p,
            FieldDescriptor::FunctionField { q } => *q,
        }
    }

    fn validate(&self) -> Result<(), DvrError> {
        let p = self.residue_char();
        if !is_prime(p) {
            return Err(DvrError::NotPrime(p));
        }
        if let FieldDescriptor::Eisenstein { poly, .. } = self {
            let pb = BigInt::from(p);
            let e = poly.len().saturating_sub(1);
            let ok = e >= 1
                && poly[e].is_one()
                && poly[..e].iter().all(|c| c.is_multiple_of(&pb))
                && !poly[0].is_multiple_of(&(&pb * &pb));
            if !ok {
                return Err(DvrError::NotEisenstein(format_int_poly(poly), p));
            }
        }
        Ok(())
    }
}

fn format_int_poly(poly: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in poly.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if i == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::RationalAtP { p } => write!(f, "qp:{p}"),
            FieldDescriptor::FunctionField { q } => write!(f, "fqt:{q}"),
            FieldDescriptor::Eisenstein { p, poly } => {
                write!(f, "eis:{p}:{}", format_int_poly(poly))
            }
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = DvrError;

    /// `qp:2`, `fqt:3`, `eis:2:x^4-2`
    fn from_str(s: &str) -> Result<Self, DvrError> {
        let s = s.trim();
        let mut parts = s.splitn(3, ':');
        let kind = parts.next().unwrap_or_default();
        let prime = |t: Option<&str>| -> Result<u64, DvrError> {
            t.and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| DvrError::Parse(format!("bad descriptor \"{s}\"")))
        };
        let desc = match kind {
            "qp" => FieldDescriptor::RationalAtP { p: prime(parts.next())? },
            "fqt" => FieldDescriptor::FunctionField { q: prime(parts.next())? },
            "eis" => {
                let p = prime(parts.next())?;
                let poly_src = parts
                    .next()
                    .ok_or_else(|| DvrError::Parse(format!("missing polynomial in \"{s}\"")))?;
                let mut poly = IntPolyEval.eval(&parse_expr(poly_src)?)?;
                while poly.last().is_some_and(|c| c.is_zero()) {
                    poly.pop();
                }
                FieldDescriptor::Eisenstein { p, poly }
            }
            _ => return Err(DvrError::Parse(format!("unknown field kind in \"{s}\""))),
        };
        if parts.next().is_some() {
            return Err(DvrError::Parse(format!("trailing input in \"{s}\"")));
        }
        desc.validate()?;
        Ok(desc)
    }
}

#[derive(Debug)]
struct FieldInner {
    desc: FieldDescriptor,
    eis: Option<EisensteinData>,
}

/// Shared handle to a validated field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.desc.fmt(f)
    }
}

impl Field {
    pub fn new(desc: FieldDescriptor) -> Result<Self, DvrError> {
        desc.validate()?;
        let eis = match &desc {
            FieldDescriptor::Eisenstein { p, poly } => {
                Some(EisensteinData::new(BigInt::from(*p), poly.clone()))
            }
            _ => None,
        };
        Ok(Field(Arc::new(FieldInner { desc, eis })))
    }

    pub fn parse(s: &str) -> Result<Self, DvrError> {
        Self::new(s.parse()?)
    }

    pub fn rational_at(p: u64) -> Result<Self, DvrError> {
        Self::new(FieldDescriptor::RationalAtP { p })
    }

    pub fn function_field(q: u64) -> Result<Self, DvrError> {
        Self::new(FieldDescriptor::FunctionField { q })
    }

    pub fn eisenstein(p: u64, poly: &[i64]) -> Result<Self, DvrError> {
        Self::new(FieldDescriptor::Eisenstein {
            p,
            poly: poly.iter().map(|&c| BigInt::from(c)).collect(),
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn residue_char(&self) -> u64 {
        self.0.desc.residue_char()
    }

    /// `v(p)` for the `p`-adic kinds, `1` for `F_q(t)`.
    pub fn absolute_ramification(&self) -> u64 {
        match &self.0.eis {
            Some(d) => d.degree() as u64,
            None => 1,
        }
    }

    fn eis(&self) -> &EisensteinData {
        self.0.eis.as_ref().expect("eisenstein field")
    }

    fn wrap(&self, value: Value) -> LocalElement {
        LocalElement { field: self.clone(), value }
    }

    pub fn zero(&self) -> LocalElement {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> LocalElement {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> LocalElement {
        self.from_int(&BigInt::from(n))
    }

    pub fn from_int(&self, n: &BigInt) -> LocalElement {
        let value = match &self.0.desc {
            FieldDescriptor::RationalAtP { .. } => Value::Rat(BigRational::from_integer(n.clone())),
            FieldDescriptor::FunctionField { q } => {
                let c = Residue::from_bigint(n, *q).value();
                Value::Fun(RatFunc::from_poly(FpPoly::constant(c, *q)))
            }
            FieldDescriptor::Eisenstein { .. } => Value::Eis(EisElem::from_integer(n.clone())),
        };
        self.wrap(value)
    }

    /// Embed a rational number. Fails in `F_q(t)` when `q` divides the
    /// denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<LocalElement, DvrError> {
        match &self.0.desc {
            FieldDescriptor::RationalAtP { .. } => Ok(self.wrap(Value::Rat(r.clone()))),
            FieldDescriptor::Eisenstein { .. } => Ok(self.wrap(Value::Eis(
                EisElem::from_rationals(std::slice::from_ref(r)),
            ))),
            FieldDescriptor::FunctionField { .. } => {
                let num = self.from_int(r.numer());
                let den = self.from_int(r.denom());
                num.try_div(&den)
            }
        }
    }

    pub fn from_ratfunc(&self, f: RatFunc) -> LocalElement {
        assert!(matches!(self.0.desc, FieldDescriptor::FunctionField { .. }));
        self.wrap(Value::Fun(f))
    }

    pub fn from_eis(&self, a: EisElem) -> LocalElement {
        assert!(self.0.eis.is_some());
        self.wrap(Value::Eis(a))
    }

    /// `p`, `t`, or the class of `x`.
    pub fn uniformizer(&self) -> LocalElement {
        match &self.0.desc {
            FieldDescriptor::RationalAtP { p } => self.from_int(&BigInt::from(*p)),
            FieldDescriptor::FunctionField { q } => {
                self.wrap(Value::Fun(RatFunc::from_poly(FpPoly::monomial(1, 1, *q))))
            }
            FieldDescriptor::Eisenstein { .. } => self.wrap(Value::Eis(EisElem::from_parts(
                vec![BigInt::zero(), BigInt::one()],
                BigInt::one(),
            ))),
        }
    }

    /// Canonical lift: the representative in `[0, p)` as a constant.
    pub fn lift(&self, r: Residue) -> LocalElement {
        assert_eq!(r.modulus(), self.residue_char(), "residue over the wrong prime");
        self.from_int(&BigInt::from(r.value()))
    }

    pub fn residue(&self, n: i64) -> Residue {
        Residue::new(n, self.residue_char())
    }

    /// Parse an element: `a/b` for `qp`, an expression in `t` for `fqt`,
    /// an expression in `x` for `eis` (coefficient denominators must be
    /// prime to `p`).
    pub fn parse_element(&self, s: &str) -> Result<LocalElement, DvrError> {
        let e = parse_expr(s)?;
        let elem = ElementEval { field: self }.eval(&e)?;
        if let (Value::Eis(a), FieldDescriptor::Eisenstein { p, .. }) = (&elem.value, &self.0.desc) {
            if a.denominator().is_multiple_of(&BigInt::from(*p)) {
                return Err(DvrError::DenominatorNotCoprime(s.trim().to_string(), *p));
            }
        }
        Ok(elem)
    }
}

struct ElementEval<'a> {
    field: &'a Field,
}

impl Evaluator for ElementEval<'_> {
    type Out = LocalElement;

    fn int(&self, n: &BigInt) -> Result<LocalElement, DvrError> {
        Ok(self.field.from_int(n))
    }

    fn var(&self, name: &str) -> Result<LocalElement, DvrError> {
        let expected = match self.field.descriptor() {
            FieldDescriptor::RationalAtP { .. } => None,
            FieldDescriptor::FunctionField { .. } => Some("t"),
            FieldDescriptor::Eisenstein { .. } => Some("x"),
        };
        if expected == Some(name) {
            Ok(self.field.uniformizer())
        } else {
            Err(DvrError::Parse(format!(
                "variable '{name}' not allowed over {}",
                self.field
            )))
        }
    }

    fn add(&self, a: LocalElement, b: LocalElement) -> LocalElement {
        a + b
    }

    fn sub(&self, a: LocalElement, b: LocalElement) -> LocalElement {
        a - b
    }

    fn mul(&self, a: LocalElement, b: LocalElement) -> LocalElement {
        a * b
    }

    fn div(&self, a: LocalElement, b: LocalElement) -> Result<LocalElement, DvrError> {
        a.try_div(&b)
    }

    fn neg(&self, a: LocalElement) -> LocalElement {
        -a
    }

    fn one(&self) -> LocalElement {
        self.field.one()
    }

    fn clone_out(&self, a: &LocalElement) -> LocalElement {
        a.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rat(BigRational),
    Fun(RatFunc),
    Eis(EisElem),
}

/// An exact element of one of the supported fields.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalElement {
    field: Field,
    value: Value,
}

impl fmt::Debug for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => write!(f, "{r}"),
            Value::Fun(r) => write!(f, "{r}"),
            Value::Eis(a) => write!(f, "{a}"),
        }
    }
}

fn vp_rational(r: &BigRational, p: u64) -> i64 {
    let pb = BigInt::from(p);
    vp_int(r.numer(), &pb) - vp_int(r.denom(), &pb)
}

impl LocalElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Fun(r) => r.is_zero(),
            Value::Eis(a) => a.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match &self.value {
            Value::Fun(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_eisenstein(&self) -> Option<&EisElem> {
        match &self.value {
            Value::Eis(a) => Some(a),
            _ => None,
        }
    }

    pub fn valuation(&self) -> Valuation {
        let v = match &self.value {
            Value::Rat(r) if r.is_zero() => None,
            Value::Rat(r) => Some(vp_rational(r, self.field.residue_char())),
            Value::Fun(r) => r.valuation(),
            Value::Eis(a) => self.field.eis().valuation(a),
        };
        v.map_or(Valuation::Infinity, Valuation::Finite)
    }

    /// Reduction modulo the maximal ideal.
    pub fn reduce(&self) -> Result<Residue, DvrError> {
        if let Valuation::Finite(v) = self.valuation() {
            if v < 0 {
                return Err(DvrError::NegativeValuation(self.to_string()));
            }
        }
        let p = self.field.residue_char();
        let frac = |num: &BigInt, den: &BigInt| {
            let d = Residue::from_bigint(den, p).inv().expect("unit denominator");
            Residue::from_bigint(num, p) * d
        };
        Ok(match &self.value {
            Value::Rat(r) => frac(r.numer(), r.denom()),
            Value::Fun(r) => Residue::from_u64(r.value_at_zero(), p),
            Value::Eis(a) => match a.numerators().first() {
                Some(c0) => frac(c0, a.denominator()),
                None => Residue::zero(p),
            },
        })
    }

    fn same_field(&self, other: &Self) -> Result<(), DvrError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(DvrError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    fn combine(&self, other: &Self, op: BinOp) -> Result<Self, DvrError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
            }),
            (Value::Fun(a), Value::Fun(b)) => Value::Fun(match op {
                BinOp::Add => a.add(b),
                BinOp::Sub => a.sub(b),
                BinOp::Mul => a.mul(b),
            }),
            (Value::Eis(a), Value::Eis(b)) => Value::Eis(match op {
                BinOp::Add => a.add(b),
                BinOp::Sub => a.add(&b.neg()),
                BinOp::Mul => self.field.eis().mul(a, b),
            }),
            _ => unreachable!("equal fields have equal payload kinds"),
        };
        Ok(self.field.wrap(value))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, DvrError> {
        self.combine(other, BinOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, DvrError> {
        self.combine(other, BinOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, DvrError> {
        self.combine(other, BinOp::Mul)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, DvrError> {
        self.same_field(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self, DvrError> {
        let value = match &self.value {
            Value::Rat(r) if r.is_zero() => return Err(DvrError::DivisionByZero),
            Value::Rat(r) => Value::Rat(r.recip()),
            Value::Fun(r) => Value::Fun(r.inv().ok_or(DvrError::DivisionByZero)?),
            Value::Eis(a) => Value::Eis(self.field.eis().inv(a).ok_or(DvrError::DivisionByZero)?),
        };
        Ok(self.field.wrap(value))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self, DvrError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Multiply by `pi^k` for any integer `k`.
    pub fn mul_pi_pow(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let value = match &self.value {
            Value::Rat(r) => {
                let pk = BigInt::from(self.field.residue_char()).pow(k.unsigned_abs() as u32);
                Value::Rat(if k > 0 { r * pk } else { r / pk })
            }
            Value::Fun(r) => Value::Fun(r.mul_t_pow(k)),
            Value::Eis(_) => {
                let step = if k > 0 {
                    self.field.uniformizer()
                } else {
                    self.field.wrap(Value::Eis(self.field.eis().pi_inv.clone()))
                };
                let factor = step.pow(k.abs()).expect("nonzero");
                return self * &factor;
            }
        };
        self.field.wrap(value)
    }

    /// Integer value when the element is a rational integer; used for
    /// compact displays in tests.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.value {
            Value::Rat(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }
}

#[derive(Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LocalElement> for &LocalElement {
            type Output = LocalElement;
            /// Panics when the operands live over different fields; use
            /// the `try_` variant to get an error instead.
            fn $method(self, rhs: &LocalElement) -> LocalElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<LocalElement> for LocalElement {
            type Output = LocalElement;
            fn $method(self, rhs: LocalElement) -> LocalElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LocalElement> for LocalElement {
            type Output = LocalElement;
            fn $method(self, rhs: &LocalElement) -> LocalElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<LocalElement> for &LocalElement {
            type Output = LocalElement;
            fn $method(self, rhs: LocalElement) -> LocalElement {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl Neg for &LocalElement {
    type Output = LocalElement;
    fn neg(self) -> LocalElement {
        let value = match &self.value {
            Value::Rat(r) => Value::Rat(-r),
            Value::Fun(r) => Value::Fun(r.neg()),
            Value::Eis(a) => Value::Eis(a.neg()),
        };
        self.field.wrap(value)
    }
}

impl Neg for LocalElement {
    type Output = LocalElement;
    fn neg(self) -> LocalElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> Field {
        Field::parse("eis:2:x^4-2").unwrap()
    }

    #[test]
    fn uniformizer_powers_in_quartic() {
        let f = quartic();
        let pi = f.uniformizer();
        let sq = &pi * &pi;
        assert_eq!(sq, f.parse_element("x^2").unwrap());
        assert_eq!(sq.valuation(), Valuation::Finite(2));
    }

    #[test]
    fn inverse_of_two_plus_pi() {
        let f = quartic();
        let a = f.parse_element("2+x").unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(1));
        assert_eq!(&a.inverse().unwrap() * &a, f.one());
    }

    #[test]
    fn valuations() {
        let q2 = Field::parse("qp:2").unwrap();
        assert_eq!(q2.from_i64(512).valuation(), Valuation::Finite(9));
        let f2 = Field::parse("fqt:2").unwrap();
        assert_eq!(f2.parse_element("t^3+t^5").unwrap().valuation(), Valuation::Finite(3));
        let big = Field::parse("eis:2:x^125-2").unwrap();
        assert_eq!(big.from_i64(2).valuation(), Valuation::Finite(125));
        assert_eq!(q2.zero().valuation(), Valuation::Infinity);
        for f in [q2, f2, big, quartic()] {
            assert_eq!(f.uniformizer().valuation(), Valuation::Finite(1));
        }
    }

    #[test]
    fn reductions() {
        let q2 = Field::parse("qp:2").unwrap();
        assert_eq!(q2.from_i64(7).reduce().unwrap().value(), 1);
        assert_eq!(quartic().parse_element("2+x").unwrap().reduce().unwrap().value(), 0);
        let f5 = Field::parse("fqt:5").unwrap();
        assert_eq!(f5.parse_element("3+t").unwrap().reduce().unwrap().value(), 3);
        let half = Field::parse("qp:3").unwrap().parse_element("1/2").unwrap();
        assert_eq!(half.reduce().unwrap().value(), 2);
        assert!(matches!(
            q2.parse_element("1/2").unwrap().reduce(),
            Err(DvrError::NegativeValuation(_))
        ));
    }

    #[test]
    fn lifts_reduce_back() {
        let q5 = Field::parse("qp:5").unwrap();
        for r in 0..5 {
            let res = q5.residue(r);
            let l = q5.lift(res);
            assert_eq!(l.reduce().unwrap(), res);
            assert!(l.valuation().at_least(0));
        }
        assert_eq!(q5.lift(q5.residue(3)), q5.from_i64(3));
        assert!(q5.lift(q5.residue(0)).is_zero());
    }

    #[test]
    fn uniformizers() {
        assert_eq!(Field::parse("qp:7").unwrap().uniformizer().to_string(), "7");
        assert_eq!(Field::parse("fqt:3").unwrap().uniformizer().to_string(), "t");
        assert_eq!(quartic().uniformizer().to_string(), "x");
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["qp:2", "fqt:3", "eis:2:x^4-2", "eis:2:x^4+4x^3+6x^2+4x+2", "eis:3:x^2+3"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn bad_descriptors() {
        assert_eq!("qp:4".parse::<FieldDescriptor>(), Err(DvrError::NotPrime(4)));
        assert!(matches!("eis:2:x^4-4".parse::<FieldDescriptor>(), Err(DvrError::NotEisenstein(..))));
        assert!(matches!("eis:2:x^4-3".parse::<FieldDescriptor>(), Err(DvrError::NotEisenstein(..))));
        assert!(matches!("eis:2:2x^2-2".parse::<FieldDescriptor>(), Err(DvrError::NotEisenstein(..))));
        assert!(matches!("zz:2".parse::<FieldDescriptor>(), Err(DvrError::Parse(_))));
        assert!(matches!("qp:x".parse::<FieldDescriptor>(), Err(DvrError::Parse(_))));
    }

    #[test]
    fn element_syntax() {
        let f3 = Field::parse("fqt:3").unwrap();
        let a = f3.parse_element("(1+t)/(t)").unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(-1));
        assert_eq!(a.to_string(), "(t+1)/(t)");
        assert_eq!(f3.parse_element(&a.to_string()).unwrap(), a);
        let e = quartic().parse_element("1/3*x^2").unwrap();
        assert_eq!(e.to_string(), "1/3*x^2");
        assert!(matches!(
            quartic().parse_element("x/2"),
            Err(DvrError::DenominatorNotCoprime(..))
        ));
        assert!(Field::parse("qp:2").unwrap().parse_element("t").is_err());
        assert!(f3.parse_element("1/(t-t)").is_err());
    }

    #[test]
    fn mismatched_fields() {
        let a = Field::parse("qp:2").unwrap().one();
        let b = Field::parse("qp:3").unwrap().one();
        assert!(matches!(a.try_add(&b), Err(DvrError::FieldMismatch(..))));
        assert_eq!(a.try_div(&a.field().zero()), Err(DvrError::DivisionByZero));
    }

    #[test]
    fn pi_shifts() {
        for f in [Field::parse("qp:3").unwrap(), Field::parse("fqt:2").unwrap(), quartic()] {
            let a = f.from_i64(5) + f.uniformizer();
            let b = a.mul_pi_pow(-7);
            assert_eq!(b.mul_pi_pow(7), a);
            assert_eq!(b, &a * &f.uniformizer().pow(-7).unwrap());
        }
    }
}
