//! Kodaira types and minimal discriminants under tame base change.
//!
//! For a tame extension `F/K` of ramification degree `e`:
//!
//! * `In` becomes `I(en)`;
//! * `In*` becomes `I(en)*` for odd `e` and `I(en)` for even `e`;
//! * otherwise the type is the one whose `ð` is `e ð mod 12`;
//!
//! and `v_F(Δ_min) = e v_K(Δ_min) - 12 floor(e ð / 12)`.
//!
//! Wild extensions are refused by [`predict`]; they can still be computed
//! directly through [`extend_curve`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dvr::{DvrError, Field, FieldDescriptor};
use crate::tate::{run_tate, KodairaType, LocalData, TateError};
use crate::weierstrass::{ModelError, WeierstrassModel};

/// `ð` values that occur, in increasing order.
pub const ETH_LEDGER: [u32; 8] = [0, 2, 3, 4, 6, 8, 9, 10];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseChangeError {
    #[error(
        "wild extension: e = {e} is divisible by the residue characteristic {p}; \
         neither the type nor the minimal discriminant is determined by e"
    )]
    Wild { e: u64, p: u64 },
    #[error("ramification degree must be positive")]
    ZeroDegree,
    #[error("unsupported base change: {0}")]
    Unsupported(String),
    #[error("invalid extension: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Dvr(#[from] DvrError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `F_q(t) -> F_q(s)`, `t = s^e`.
    FunctionFieldSubstitution,
    /// `Q -> Q[x]/(E)` for an Eisenstein polynomial `E` (ascending
    /// coefficients) at the base prime.
    Eisenstein(Vec<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameExtensionSpec {
    pub e: u64,
    pub construction: Construction,
}

impl TameExtensionSpec {
    pub fn substitution(e: u64) -> Self {
        Self { e, construction: Construction::FunctionFieldSubstitution }
    }

    /// `x^e - p`.
    pub fn radical(e: u64, p: u64) -> Self {
        let mut poly = vec![BigInt::zero(); e as usize + 1];
        poly[0] = -BigInt::from(p);
        poly[e as usize] = BigInt::one();
        Self { e, construction: Construction::Eisenstein(poly) }
    }

    pub fn eisenstein(poly: Vec<BigInt>) -> Self {
        let e = poly.len().saturating_sub(1) as u64;
        Self { e, construction: Construction::Eisenstein(poly) }
    }

    /// The natural totally ramified degree-`e` extension of `base`.
    pub fn default_for(base: &Field, e: u64) -> Result<Self, BaseChangeError> {
        match base.descriptor() {
            FieldDescriptor::FunctionField { .. } => Ok(Self::substitution(e)),
            FieldDescriptor::RationalAtP { p } => Ok(Self::radical(e, *p)),
            FieldDescriptor::Eisenstein { .. } => Err(BaseChangeError::Unsupported(
                "base change from an Eisenstein extension".into(),
            )),
        }
    }

    /// The extension field over `base`.
    pub fn target(&self, base: &Field) -> Result<Field, BaseChangeError> {
        if self.e == 0 {
            return Err(BaseChangeError::ZeroDegree);
        }
        match (base.descriptor(), &self.construction) {
            (FieldDescriptor::FunctionField { .. }, Construction::FunctionFieldSubstitution) => {
                Ok(base.clone())
            }
            (FieldDescriptor::RationalAtP { p }, Construction::Eisenstein(poly)) => {
                if poly.len() as u64 != self.e + 1 {
                    return Err(BaseChangeError::InvalidSpec(format!(
                        "polynomial degree {} differs from e = {}",
                        poly.len().saturating_sub(1),
                        self.e
                    )));
                }
                Ok(Field::new(FieldDescriptor::Eisenstein { p: *p, poly: poly.clone() })?)
            }
            (desc, c) => Err(BaseChangeError::Unsupported(format!(
                "{} over {desc}",
                match c {
                    Construction::FunctionFieldSubstitution => "t -> s^e",
                    Construction::Eisenstein(_) => "Eisenstein extension",
                }
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    InScaling,
    InstarParity,
    EthArithmetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaseChangePrediction {
    pub type_f: KodairaType,
    pub v_disc_f: u32,
    pub rule_used: Rule,
}

impl BaseChangePrediction {
    /// Base change the predicted curve further by `e`.
    pub fn then(&self, e: u64, residue_char: u64) -> Result<Self, BaseChangeError> {
        predict_type(self.type_f, self.v_disc_f, e, residue_char)
    }
}

/// Inverse of the `ð` ledger.
pub fn type_of_eth(eth: u32) -> Option<KodairaType> {
    Some(match eth {
        0 => KodairaType::I0,
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::I0Star,
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        _ => return None,
    })
}

pub fn check_tame(e: u64, residue_char: u64) -> Result<(), BaseChangeError> {
    if e == 0 {
        return Err(BaseChangeError::ZeroDegree);
    }
    if e.gcd(&residue_char) != 1 {
        return Err(BaseChangeError::Wild { e, p: residue_char });
    }
    Ok(())
}

/// Predict from the type and `v(Δ_min)` over `K`.
pub fn predict_type(
    kodaira: KodairaType,
    v_disc: u32,
    e: u64,
    residue_char: u64,
) -> Result<BaseChangePrediction, BaseChangeError> {
    check_tame(e, residue_char)?;
    let scale = |n: u32| -> Result<u32, BaseChangeError> {
        u32::try_from(e * n as u64)
            .map_err(|_| BaseChangeError::InvalidSpec(format!("e = {e} overflows the index")))
    };
    let eth = kodaira.eth() as u64;
    let v_disc_f = e * v_disc as u64 - 12 * ((e * eth) / 12);
    let v_disc_f = u32::try_from(v_disc_f)
        .map_err(|_| BaseChangeError::InvalidSpec(format!("e = {e} overflows v(disc)")))?;
    let (type_f, rule_used) = match kodaira {
        KodairaType::In(n) => (KodairaType::In(scale(n)?), Rule::InScaling),
        KodairaType::InStar(n) if e % 2 == 1 => (KodairaType::InStar(scale(n)?), Rule::InstarParity),
        KodairaType::InStar(n) => (KodairaType::In(scale(n)?), Rule::InstarParity),
        _ => {
            let t = type_of_eth(((e * eth) % 12) as u32).expect("ledger is closed");
            (t, Rule::EthArithmetic)
        }
    };
    Ok(BaseChangePrediction { type_f, v_disc_f, rule_used })
}

pub fn predict(ld: &LocalData, e: u64) -> Result<BaseChangePrediction, BaseChangeError> {
    let p = ld.minimal_model.field().residue_char();
    predict_type(ld.kodaira, ld.v_disc_min, e, p)
}

/// The same curve over the extension described by `spec`.
pub fn extend_curve(
    m: &WeierstrassModel,
    spec: &TameExtensionSpec,
) -> Result<WeierstrassModel, BaseChangeError> {
    let target = spec.target(m.field())?;
    let mut out = Vec::with_capacity(5);
    for c in m.coeffs() {
        let elem = match &spec.construction {
            Construction::FunctionFieldSubstitution => {
                let f = c.as_ratfunc().expect("function field element");
                target.from_ratfunc(f.inflate(spec.e as usize))
            }
            Construction::Eisenstein(_) => {
                target.from_rational(c.as_rational().expect("rational element"))?
            }
        };
        out.push(elem);
    }
    let coeffs: [_; 5] = out.try_into().expect("five coefficients");
    Ok(WeierstrassModel::new(coeffs)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicted {
    Prediction(BaseChangePrediction),
    Refused,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub base: LocalData,
    pub predicted: Predicted,
    pub computed: LocalData,
    pub matches: bool,
}

impl Serialize for VerifyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct RefusedTag {
            refused: &'static str,
        }
        let mut st = serializer.serialize_struct("VerifyReport", 4)?;
        st.serialize_field("base", &self.base)?;
        match &self.predicted {
            Predicted::Prediction(p) => st.serialize_field("predicted", p)?,
            Predicted::Refused => st.serialize_field("predicted", &RefusedTag { refused: "wild" })?,
        }
        st.serialize_field("computed", &self.computed)?;
        st.serialize_field("match", &self.matches)?;
        st.end()
    }
}

/// Predict over the extension and compare with a direct computation there.
/// A wild `spec` is still computed; its prediction is reported as refused.
pub fn verify(
    m: &WeierstrassModel,
    spec: &TameExtensionSpec,
) -> Result<VerifyReport, BaseChangeError> {
    let extended = extend_curve(m, spec)?;
    let (base, computed) = std::thread::scope(|s| {
        let computed = s.spawn(|| run_tate(&extended));
        let base = run_tate(m);
        (base, computed.join().expect("tate thread"))
    });
    let (base, computed) = (base?, computed?);
    let predicted = match predict(&base, spec.e) {
        Ok(p) => Predicted::Prediction(p),
        Err(BaseChangeError::Wild { .. }) => Predicted::Refused,
        Err(e) => return Err(e),
    };
    let matches = match &predicted {
        Predicted::Prediction(p) => {
            p.type_f == computed.kodaira && p.v_disc_f == computed.v_disc_min
        }
        Predicted::Refused => false,
    };
    log::debug!("verify e={} over {}: match={matches}", spec.e, m.field());
    Ok(VerifyReport { base, predicted, computed, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(desc: &str, coeffs: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_i64s(&Field::parse(desc).unwrap(), coeffs)
    }

    #[test]
    fn tower_over_q2() {
        let ld = run_tate(&curve("qp:2", [0, 0, 0, -2, 0])).unwrap();
        for (e, v) in [(5, 33), (25, 153), (125, 753)] {
            let p = predict(&ld, e).unwrap();
            assert_eq!((p.type_f, p.v_disc_f, p.rule_used), (KodairaType::III, v, Rule::EthArithmetic));
        }
    }

    #[test]
    fn instar_parity() {
        for n in 1..6 {
            let p = predict_type(KodairaType::InStar(n), n + 6, 2, 3).unwrap();
            assert_eq!((p.type_f, p.v_disc_f), (KodairaType::In(2 * n), 2 * n));
            let p = predict_type(KodairaType::InStar(n), n + 6, 5, 3).unwrap();
            assert_eq!((p.type_f, p.v_disc_f), (KodairaType::InStar(5 * n), 5 * n + 6));
        }
        let p = predict_type(KodairaType::I0Star, 6, 2, 3).unwrap();
        assert_eq!((p.type_f, p.v_disc_f, p.rule_used), (KodairaType::I0, 0, Rule::EthArithmetic));
        let p = predict_type(KodairaType::I0Star, 6, 5, 3).unwrap();
        assert_eq!((p.type_f, p.v_disc_f), (KodairaType::I0Star, 6));
    }

    #[test]
    fn good_and_type_ii() {
        assert_eq!(predict_type(KodairaType::I0, 0, 7, 5).unwrap().type_f, KodairaType::I0);
        let p = predict_type(KodairaType::II, 2, 7, 5).unwrap();
        assert_eq!((p.type_f, p.v_disc_f), (KodairaType::II, 2));
        let p = predict_type(KodairaType::In(3), 3, 4, 5).unwrap();
        assert_eq!((p.type_f, p.v_disc_f, p.rule_used), (KodairaType::In(12), 12, Rule::InScaling));
    }

    #[test]
    fn wild_is_refused() {
        let ld = run_tate(&curve("qp:2", [0, 0, 0, -2, 0])).unwrap();
        assert_eq!(predict(&ld, 4).unwrap_err(), BaseChangeError::Wild { e: 4, p: 2 });
        assert!(matches!(predict_type(KodairaType::II, 2, 0, 5), Err(BaseChangeError::ZeroDegree)));
    }

    #[test]
    fn ledger_closure() {
        for &eth in &ETH_LEDGER {
            for e in 1..=1000u32 {
                assert!(ETH_LEDGER.contains(&(e * eth % 12)), "e={e} eth={eth}");
            }
            assert_eq!(type_of_eth(eth).unwrap().eth(), eth);
        }
    }

    #[test]
    fn extend_rational_constants() {
        let m = curve("qp:2", [0, 0, 0, -2, 0]);
        let ext = extend_curve(&m, &TameExtensionSpec::radical(5, 2)).unwrap();
        assert_eq!(ext.field().to_string(), "eis:2:x^5-2");
        assert_eq!(ext.to_string(), "[0,0,0,-2,0]");
    }

    #[test]
    fn extend_function_field() {
        let f = Field::parse("fqt:3").unwrap();
        let m = WeierstrassModel::parse(&f, "t,0,1,t^2+1,t/(1+t)").unwrap();
        let ext = extend_curve(&m, &TameExtensionSpec::substitution(2)).unwrap();
        let expect = WeierstrassModel::parse(&f, "t^2,0,1,t^4+1,t^2/(1+t^2)").unwrap();
        assert_eq!(ext, expect);
    }

    #[test]
    fn unsupported_pairings() {
        let m = curve("fqt:3", [0, 0, 0, 1, 1]);
        assert!(matches!(
            extend_curve(&m, &TameExtensionSpec::radical(2, 3)),
            Err(BaseChangeError::Unsupported(_))
        ));
        let m = curve("qp:3", [0, 0, 0, 1, 1]);
        assert!(matches!(
            extend_curve(&m, &TameExtensionSpec::substitution(2)),
            Err(BaseChangeError::Unsupported(_))
        ));
        let bad = TameExtensionSpec {
            e: 3,
            construction: Construction::Eisenstein(vec![BigInt::from(-3), BigInt::zero(), BigInt::one()]),
        };
        assert!(matches!(extend_curve(&m, &bad), Err(BaseChangeError::InvalidSpec(_))));
    }

    #[test]
    fn verify_example_e5() {
        let m = curve("qp:2", [0, 0, 0, -2, 0]);
        let r = verify(&m, &TameExtensionSpec::radical(5, 2)).unwrap();
        assert!(r.matches);
        assert_eq!((r.computed.kodaira, r.computed.v_disc_min), (KodairaType::III, 33));
    }

    #[test]
    fn verify_wild_reports_refusal() {
        let m = curve("qp:2", [0, 0, 0, -2, 0]);
        let r = verify(&m, &TameExtensionSpec::radical(4, 2)).unwrap();
        assert_eq!(r.predicted, Predicted::Refused);
        assert!(!r.matches);
        assert_eq!((r.computed.kodaira, r.computed.v_disc_min), (KodairaType::IIIStar, 12));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["predicted"]["refused"], "wild");
        assert_eq!(json["match"], false);
    }

    #[test]
    fn verify_function_field_i0star_becomes_good() {
        // x^3 + x + 1 is separable mod 5
        let f = Field::parse("fqt:5").unwrap();
        let m = WeierstrassModel::parse(&f, "0,0,0,t^2,t^3").unwrap();
        let r = verify(&m, &TameExtensionSpec::substitution(2)).unwrap();
        assert_eq!(r.base.kodaira, KodairaType::I0Star);
        assert_eq!(r.computed.kodaira, KodairaType::I0);
        assert!(r.matches);
    }
}
