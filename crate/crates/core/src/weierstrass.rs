//! Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
//! their standard invariants, and admissible changes of coordinates.

use std::fmt;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dvr::{DvrError, Field, LocalElement, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Dvr(#[from] DvrError),
    #[error("expected 5 comma-separated coefficients a1,a2,a3,a4,a6, got {0}")]
    WrongArity(usize),
    #[error("expected 2 comma-separated coefficients A,B, got {0}")]
    WrongShortArity(usize),
    #[error("coordinate change has u = 0")]
    ZeroScale,
    #[error("singular model (discriminant is 0)")]
    Singular,
}

/// Indices of the five coefficients, in storage order.
pub const INDICES: [u8; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: LocalElement,
    pub a2: LocalElement,
    pub a3: LocalElement,
    pub a4: LocalElement,
    pub a6: LocalElement,
}

/// `b2, b4, b6, b8, c4, c6, disc, disc_cubic` and `j` (absent when
/// `disc = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub b2: LocalElement,
    pub b4: LocalElement,
    pub b6: LocalElement,
    pub b8: LocalElement,
    pub c4: LocalElement,
    pub c6: LocalElement,
    pub discriminant: LocalElement,
    pub disc_cubic: LocalElement,
    pub j: Option<LocalElement>,
}

/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub u: LocalElement,
    pub r: LocalElement,
    pub s: LocalElement,
    pub t: LocalElement,
}

impl CoordinateChange {
    pub fn new(
        u: LocalElement,
        r: LocalElement,
        s: LocalElement,
        t: LocalElement,
    ) -> Result<Self, ModelError> {
        for other in [&r, &s, &t] {
            if u.field() != other.field() {
                return Err(DvrError::FieldMismatch(u.field().to_string(), other.field().to_string()).into());
            }
        }
        if u.is_zero() {
            return Err(ModelError::ZeroScale);
        }
        Ok(Self { u, r, s, t })
    }

    pub fn identity(field: &Field) -> Self {
        Self {
            u: field.one(),
            r: field.zero(),
            s: field.zero(),
            t: field.zero(),
        }
    }

    pub fn scaling(u: LocalElement) -> Result<Self, ModelError> {
        let z = u.field().zero();
        Self::new(u, z.clone(), z.clone(), z)
    }

    pub fn translation(r: LocalElement, s: LocalElement, t: LocalElement) -> Self {
        Self { u: r.field().one(), r, s, t }
    }

    pub fn is_identity(&self) -> bool {
        self.u == self.u.field().one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    /// The change equal to applying `self` first, then `next`.
    pub fn then(&self, next: &CoordinateChange) -> CoordinateChange {
        let u2 = &self.u * &self.u;
        CoordinateChange {
            u: &self.u * &next.u,
            r: &self.r + &u2 * &next.r,
            s: &self.s + &self.u * &next.s,
            t: &self.t + &u2 * &self.u * &next.t + &u2 * &self.s * &next.r,
        }
    }

    pub fn inverse(&self) -> CoordinateChange {
        let ui = self.u.inverse().expect("u is nonzero");
        let ui2 = &ui * &ui;
        CoordinateChange {
            r: -(&self.r * &ui2),
            s: -(&self.s * &ui),
            t: (&self.r * &self.s - &self.t) * &ui2 * &ui,
            u: ui,
        }
    }
}

impl fmt::Display for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[u={}, r={}, s={}, t={}]", self.u, self.r, self.s, self.t)
    }
}

/// Exact value of `min v(a_i)/i`, or infinity for the all-zero model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightedValuation {
    Finite(Ratio<i64>),
    Infinite,
}

impl WeightedValuation {
    pub fn new(num: i64, den: i64) -> Self {
        WeightedValuation::Finite(Ratio::new(num, den))
    }
}

impl fmt::Display for WeightedValuation {
    /// Always `num/den`, e.g. `1/4`, `0/1`; `inf` when infinite.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedValuation::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            WeightedValuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for WeightedValuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMin {
    pub value: WeightedValuation,
    /// Indices `i` attaining the minimum, ascending.
    pub argmin: Vec<u8>,
}

impl WeierstrassModel {
    pub fn new(coeffs: [LocalElement; 5]) -> Result<Self, ModelError> {
        let field = coeffs[0].field().clone();
        for c in &coeffs[1..] {
            if c.field() != &field {
                return Err(DvrError::FieldMismatch(field.to_string(), c.field().to_string()).into());
            }
        }
        let [a1, a2, a3, a4, a6] = coeffs;
        Ok(Self { a1, a2, a3, a4, a6 })
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a: LocalElement, b: LocalElement) -> Result<Self, ModelError> {
        let z = a.field().zero();
        Self::new([z.clone(), z.clone(), z, a, b])
    }

    pub fn from_i64s(field: &Field, coeffs: [i64; 5]) -> Self {
        Self::new(coeffs.map(|c| field.from_i64(c))).expect("one field")
    }

    /// Parse `a1,a2,a3,a4,a6`.
    pub fn parse(field: &Field, s: &str) -> Result<Self, ModelError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(ModelError::WrongArity(parts.len()));
        }
        let elems: Vec<LocalElement> = parts
            .iter()
            .map(|p| field.parse_element(p))
            .collect::<Result<_, _>>()?;
        let arr: [LocalElement; 5] = elems.try_into().expect("five elements");
        Self::new(arr)
    }

    /// Parse `A,B` for `y^2 = x^3 + A x + B`.
    pub fn parse_short(field: &Field, s: &str) -> Result<Self, ModelError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(ModelError::WrongShortArity(parts.len()));
        }
        Self::short(field.parse_element(parts[0])?, field.parse_element(parts[1])?)
    }

    pub fn field(&self) -> &Field {
        self.a1.field()
    }

    pub fn coeffs(&self) -> [&LocalElement; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn valuations(&self) -> [Valuation; 5] {
        self.coeffs().map(LocalElement::valuation)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|a| a.valuation().at_least(0))
    }

    pub fn b2(&self) -> LocalElement {
        &self.a1 * &self.a1 + self.int(4) * &self.a2
    }

    pub fn b4(&self) -> LocalElement {
        self.int(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> LocalElement {
        &self.a3 * &self.a3 + self.int(4) * &self.a6
    }

    pub fn b8(&self) -> LocalElement {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + self.int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }

    pub fn c4(&self) -> LocalElement {
        let b2 = self.b2();
        &b2 * &b2 - self.int(24) * self.b4()
    }

    pub fn c6(&self) -> LocalElement {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(&b2 * &b2 * &b2) + self.int(36) * &b2 * &b4 - self.int(216) * &b6
    }

    pub fn discriminant(&self) -> LocalElement {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - self.int(8) * &b4 * &b4 * &b4 - self.int(27) * &b6 * &b6
            + self.int(9) * &b2 * &b4 * &b6
    }

    /// Discriminant of `x^3 + a2 x^2 + a4 x + a6`.
    pub fn disc_cubic(&self) -> LocalElement {
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        -(self.int(4) * a2 * a2 * a2 * a6) + a2 * a2 * a4 * a4 - self.int(4) * a4 * a4 * a4
            - self.int(27) * a6 * a6
            + self.int(18) * a2 * a4 * a6
    }

    pub fn j_invariant(&self) -> Option<LocalElement> {
        let c4 = self.c4();
        (&c4 * &c4 * &c4).try_div(&self.discriminant()).ok()
    }

    pub fn invariants(&self) -> InvariantSet {
        let discriminant = self.discriminant();
        let c4 = self.c4();
        let j = (&c4 * &c4 * &c4).try_div(&discriminant).ok();
        InvariantSet {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            c6: self.c6(),
            c4,
            disc_cubic: self.disc_cubic(),
            discriminant,
            j,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn ensure_nonsingular(&self) -> Result<(), ModelError> {
        if self.is_singular() {
            Err(ModelError::Singular)
        } else {
            Ok(())
        }
    }

    fn int(&self, n: i64) -> LocalElement {
        self.field().from_i64(n)
    }

    /// The model in the new coordinates of `c`.
    pub fn transform(&self, c: &CoordinateChange) -> Result<Self, ModelError> {
        if c.u.is_zero() {
            return Err(ModelError::ZeroScale);
        }
        if c.u.field() != self.field() {
            return Err(DvrError::FieldMismatch(self.field().to_string(), c.u.field().to_string()).into());
        }
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (r, s, t) = (&c.r, &c.s, &c.t);
        let n1 = a1 + self.int(2) * s;
        let n2 = a2 - s * a1 + self.int(3) * r - s * s;
        let n3 = a3 + r * a1 + self.int(2) * t;
        let n4 = a4 - s * a3 + self.int(2) * r * a2 - (t + r * s) * a1 + self.int(3) * r * r
            - self.int(2) * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let one = self.field().one();
        if c.u == one {
            return Self::new([n1, n2, n3, n4, n6]);
        }
        let ui = c.u.inverse()?;
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui3 * &ui3;
        Self::new([n1 * &ui, n2 * &ui2, n3 * &ui3, n4 * &ui4, n6 * &ui6])
    }

    /// Divide `a_i` by `pi^(i k)`: the change with `u = pi^k`.
    pub fn rescale_by_pi(&self, k: i64) -> Self {
        Self {
            a1: self.a1.mul_pi_pow(-k),
            a2: self.a2.mul_pi_pow(-2 * k),
            a3: self.a3.mul_pi_pow(-3 * k),
            a4: self.a4.mul_pi_pow(-4 * k),
            a6: self.a6.mul_pi_pow(-6 * k),
        }
    }

    /// `min v(a_i)/i` over `i in {1,2,3,4,6}` with the attaining indices.
    pub fn min_weighted_valuation(&self) -> WeightedMin {
        let mut best: Option<Ratio<i64>> = None;
        let mut argmin = Vec::new();
        for (i, a) in INDICES.iter().zip(self.coeffs()) {
            let Valuation::Finite(v) = a.valuation() else { continue };
            let w = Ratio::new(v, i64::from(*i));
            match best {
                Some(b) if w > b => {}
                Some(b) if w == b => argmin.push(*i),
                _ => {
                    best = Some(w);
                    argmin = vec![*i];
                }
            }
        }
        WeightedMin {
            value: best.map_or(WeightedValuation::Infinite, WeightedValuation::Finite),
            argmin,
        }
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl Serialize for WeierstrassModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("WeierstrassModel", 5)?;
        st.serialize_field("a1", &self.a1.to_string())?;
        st.serialize_field("a2", &self.a2.to_string())?;
        st.serialize_field("a3", &self.a3.to_string())?;
        st.serialize_field("a4", &self.a4.to_string())?;
        st.serialize_field("a6", &self.a6.to_string())?;
        st.end()
    }
}

impl Serialize for CoordinateChange {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CoordinateChange", 4)?;
        st.serialize_field("u", &self.u.to_string())?;
        st.serialize_field("r", &self.r.to_string())?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}
