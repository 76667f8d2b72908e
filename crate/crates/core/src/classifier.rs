//! Reading Kodaira types off `min v(a_i)/i`.
//!
//! An additive-reduction curve has a minimal model on which the type is
//! determined by the minimum of `v(a_i)/i` plus at most one extra
//! condition, and any model satisfying a row is minimal of that type:
//!
//! | type | II  | III | IV       | I0*        | In*                          | IV*      | III* | II* |
//! |------|-----|-----|----------|------------|------------------------------|----------|------|-----|
//! | min  | 1/6 | 1/4 | 1/3      | 1/2        | 1/2                          | 2/3      | 3/4  | 5/6 |
//! | also |     |     | v(b6)=2  | v(disc)=6  | v(disc)>6, v(a2^2-3a4)=2     | v(b6)=4  |      |     |
//!
//! where `disc` is the discriminant of `x^3 + a2 x^2 + a4 x + a6`. For In*
//! the index is recovered by [`match_instar`].

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dvr::{Residue, Valuation};
use crate::tate::{run_tate_with, KodairaType, TateError, TateOptions, Trace};
use crate::weierstrass::{CoordinateChange, WeierstrassModel, WeightedValuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("singular model (discriminant is 0)")]
    Singular,
    #[error("model is not integral")]
    NotIntegral,
    #[error("reduction type {0} is not additive")]
    NotAdditive(KodairaType),
    #[error(transparent)]
    Tate(#[from] TateError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    II,
    III,
    IV,
    I0Star,
    InStar,
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowKind::II => "II",
            RowKind::III => "III",
            RowKind::IV => "IV",
            RowKind::I0Star => "I0*",
            RowKind::InStar => "In*",
            RowKind::IVStar => "IV*",
            RowKind::IIIStar => "III*",
            RowKind::IIStar => "II*",
        };
        f.write_str(s)
    }
}

impl Serialize for RowKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtraCondition {
    None,
    VB6Eq2,
    VDiscEq6,
    /// `v(disc) > 6` and `v(a2^2 - 3 a4) = 2`.
    InstarPair,
    VB6Eq4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TableRow {
    pub kind: RowKind,
    pub threshold: Ratio<i64>,
    pub extra: ExtraCondition,
}

impl Serialize for TableRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("TableRow", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field(
            "threshold",
            &format!("{}/{}", self.threshold.numer(), self.threshold.denom()),
        )?;
        st.serialize_field("extra", &self.extra)?;
        st.end()
    }
}

const fn row(kind: RowKind, num: i64, den: i64, extra: ExtraCondition) -> TableRow {
    TableRow { kind, threshold: Ratio::new_raw(num, den), extra }
}

pub const TABLE: [TableRow; 8] = [
    row(RowKind::II, 1, 6, ExtraCondition::None),
    row(RowKind::III, 1, 4, ExtraCondition::None),
    row(RowKind::IV, 1, 3, ExtraCondition::VB6Eq2),
    row(RowKind::I0Star, 1, 2, ExtraCondition::VDiscEq6),
    row(RowKind::InStar, 1, 2, ExtraCondition::InstarPair),
    row(RowKind::IVStar, 2, 3, ExtraCondition::VB6Eq4),
    row(RowKind::IIIStar, 3, 4, ExtraCondition::None),
    row(RowKind::IIStar, 5, 6, ExtraCondition::None),
];

/// Valuations that the extra conditions look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraEvaluations {
    pub v_b6: Valuation,
    pub v_disc: Valuation,
    pub v_a2sq_minus_3a4: Valuation,
}

impl ExtraEvaluations {
    pub fn of(m: &WeierstrassModel) -> Self {
        let three = m.field().from_i64(3);
        Self {
            v_b6: m.b6().valuation(),
            v_disc: m.disc_cubic().valuation(),
            v_a2sq_minus_3a4: (&m.a2 * &m.a2 - three * &m.a4).valuation(),
        }
    }

    pub fn satisfies(&self, extra: ExtraCondition) -> bool {
        match extra {
            ExtraCondition::None => true,
            ExtraCondition::VB6Eq2 => self.v_b6 == Valuation::Finite(2),
            ExtraCondition::VDiscEq6 => self.v_disc == Valuation::Finite(6),
            ExtraCondition::InstarPair => {
                self.v_disc > Valuation::Finite(6) && self.v_a2sq_minus_3a4 == Valuation::Finite(2)
            }
            ExtraCondition::VB6Eq4 => self.v_b6 == Valuation::Finite(4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// Witnesses that a model is a minimal In* model with index `n`:
/// `v(a2) = 1`, `2 v(a_i) >= i + floor((i-1)/2) n`, and
/// `v(disc) = n+6, v(b6) >= n+3` for even `n`,
/// `v(disc) >= n+6, v(b6) = n+3` for odd `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstarCertificate {
    pub n: u32,
    pub parity: Parity,
    pub v_a: [Valuation; 5],
    pub v_disc: Valuation,
    pub v_b6: Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCertificate {
    pub min: WeightedValuation,
    pub argmin: Vec<u8>,
    pub conditions: ExtraEvaluations,
    pub instar: Option<InstarCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMatch {
    pub kodaira: KodairaType,
    pub row: TableRow,
    pub certificate: TableCertificate,
}

fn check_input(m: &WeierstrassModel) -> Result<(), ClassifyError> {
    if m.is_singular() {
        return Err(ClassifyError::Singular);
    }
    if !m.is_integral() {
        return Err(ClassifyError::NotIntegral);
    }
    Ok(())
}

/// All table rows whose minimum and extra condition hold on `m`.
pub fn matching_rows(m: &WeierstrassModel) -> Vec<TableRow> {
    let WeightedValuation::Finite(min) = m.min_weighted_valuation().value else {
        return Vec::new();
    };
    let extra = ExtraEvaluations::of(m);
    TABLE
        .iter()
        .filter(|r| r.threshold == min && extra.satisfies(r.extra))
        .copied()
        .collect()
}

/// Recognize the type of an integral model from the table. A match
/// certifies that `m` is minimal with the returned type; `None` means no
/// row applies (good, multiplicative, or not in table form).
pub fn match_table(m: &WeierstrassModel) -> Result<Option<TableMatch>, ClassifyError> {
    check_input(m)?;
    let Some(row) = matching_rows(m).into_iter().next() else {
        return Ok(None);
    };
    let wm = m.min_weighted_valuation();
    let instar = match row.kind {
        RowKind::InStar => match_instar(m)?,
        _ => None,
    };
    let kodaira = match row.kind {
        RowKind::II => KodairaType::II,
        RowKind::III => KodairaType::III,
        RowKind::IV => KodairaType::IV,
        RowKind::I0Star => KodairaType::I0Star,
        RowKind::IVStar => KodairaType::IVStar,
        RowKind::IIIStar => KodairaType::IIIStar,
        RowKind::IIStar => KodairaType::IIStar,
        RowKind::InStar => match &instar {
            Some(cert) => KodairaType::InStar(cert.n),
            // The row alone proves minimality; the index then comes from
            // the step-7 loop run on the model as given.
            None => {
                let strict = TateOptions { trace: false, allow_rescale: false };
                run_tate_with(m, strict)?.data.kodaira
            }
        },
    };
    Ok(Some(TableMatch {
        kodaira,
        row,
        certificate: TableCertificate {
            min: wm.value,
            argmin: wm.argmin,
            conditions: ExtraEvaluations::of(m),
            instar,
        },
    }))
}

/// Recover `n` from the In* certificate conditions, if they hold.
pub fn match_instar(m: &WeierstrassModel) -> Result<Option<InstarCertificate>, ClassifyError> {
    check_input(m)?;
    let v_a = m.valuations();
    if v_a[1] != Valuation::Finite(1) {
        return Ok(None);
    }
    let v_disc = m.disc_cubic().valuation();
    let v_b6 = m.b6().valuation();
    let bounds_hold = |n: i64| {
        [1i64, 2, 3, 4, 6].iter().zip(v_a).all(|(&i, v)| match v {
            Valuation::Infinity => true,
            Valuation::Finite(v) => 2 * v >= i + (i - 1) / 2 * n,
        })
    };
    let mut candidates = Vec::new();
    if let Valuation::Finite(d) = v_disc {
        let n = d - 6;
        if n >= 2 && n % 2 == 0 && v_b6.at_least(n + 3) {
            candidates.push((n, Parity::Even));
        }
    }
    if let Valuation::Finite(b) = v_b6 {
        let n = b - 3;
        if n >= 1 && n % 2 == 1 && v_disc.at_least(n + 6) {
            candidates.push((n, Parity::Odd));
        }
    }
    Ok(candidates
        .into_iter()
        .find(|&(n, _)| bounds_hold(n))
        .map(|(n, parity)| InstarCertificate { n: n as u32, parity, v_a, v_disc, v_b6 }))
}

/// A table-form model together with how it was reached.
#[derive(Clone, Debug)]
pub struct TableForm {
    pub model: WeierstrassModel,
    /// Maps the input model to `model`.
    pub change: CoordinateChange,
    pub kodaira: KodairaType,
    pub trace: Trace,
}

/// Shift `y -> y + s x` so that `pi | a1, a2`, given `pi | b2`.
fn clear_a1_a2(m: &WeierstrassModel) -> Result<CoordinateChange, ClassifyError> {
    let field = m.field();
    let internal = |detail: String| ClassifyError::Tate(TateError::Internal { step: 2, detail });
    let res = |a: &crate::dvr::LocalElement| a.reduce().map_err(|e| internal(e.to_string()));
    let p = field.residue_char();
    let s: Residue = if p == 2 {
        res(&m.a2)?
            .sqrt()
            .ok_or_else(|| internal("a2 has no square root".into()))?
    } else {
        -(res(&m.a1)? * Residue::new(2, p).inv().expect("odd p"))
    };
    Ok(CoordinateChange::translation(field.zero(), field.lift(s), field.zero()))
}

/// Put an additive-reduction curve into the form where
/// [`match_table`] reads off its type.
pub fn normalize_to_table_form(m: &WeierstrassModel) -> Result<TableForm, ClassifyError> {
    if m.is_singular() {
        return Err(ClassifyError::Singular);
    }
    let minimal = run_tate_with(m, TateOptions::default())?;
    if !minimal.data.kodaira.is_additive() {
        return Err(ClassifyError::NotAdditive(minimal.data.kodaira));
    }
    let shift = clear_a1_a2(&minimal.data.minimal_model)?;
    let shifted = minimal.data.minimal_model.transform(&shift).map_err(TateError::from)?;
    let rerun = run_tate_with(&shifted, TateOptions { trace: true, allow_rescale: false })?;
    let change = minimal.change.then(&shift).then(&rerun.change);
    Ok(TableForm {
        model: rerun.data.minimal_model,
        change,
        kodaira: rerun.data.kodaira,
        trace: rerun.trace.expect("traced run"),
    })
}

pub fn eth_of(k: KodairaType) -> u32 {
    k.eth()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::Field;

    fn curve(desc: &str, coeffs: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::from_i64s(&Field::parse(desc).unwrap(), coeffs)
    }

    #[test]
    fn example_matches_row_one_quarter() {
        let m = curve("qp:2", [0, 0, 0, -2, 0]);
        let hit = match_table(&m).unwrap().unwrap();
        assert_eq!(hit.kodaira, KodairaType::III);
        assert_eq!(hit.row.threshold, Ratio::new(1, 4));
        let tf = normalize_to_table_form(&m).unwrap();
        assert_eq!(match_table(&tf.model).unwrap().unwrap().kodaira, KodairaType::III);
    }

    #[test]
    fn i0star_row() {
        // y^2 = x^3 + 5^3 over Q_5: cubic x^3 + 1 has distinct roots mod 5,
        // v(disc) = v(-27 * 5^6) = 6, min = 3/6.
        let m = curve("qp:5", [0, 0, 0, 0, 125]);
        let hit = match_table(&m).unwrap().unwrap();
        assert_eq!(hit.kodaira, KodairaType::I0Star);
        assert_eq!(hit.certificate.conditions.v_disc, Valuation::Finite(6));
    }

    #[test]
    fn unit_coefficients_do_not_match() {
        let m = curve("qp:5", [1, 1, 1, 1, 1]);
        assert_eq!(m.min_weighted_valuation().value, WeightedValuation::new(0, 1));
        assert!(match_table(&m).unwrap().is_none());
    }

    #[test]
    fn instar_index_from_parity() {
        let f = Field::parse("qp:3").unwrap();
        // v(disc) = 8, v(b6) = 5
        let m = WeierstrassModel::from_i64s(&f, [0, 3, 0, 0, 243]);
        let cert = match_instar(&m).unwrap().unwrap();
        assert_eq!((cert.n, cert.parity), (2, Parity::Even));
        // v(b6) = 4, v(disc) = 7
        let m = WeierstrassModel::from_i64s(&f, [0, 3, 0, 0, 81]);
        let cert = match_instar(&m).unwrap().unwrap();
        assert_eq!((cert.n, cert.parity), (1, Parity::Odd));
        assert_eq!(crate::tate::run_tate(&m).unwrap().kodaira, KodairaType::InStar(1));
    }

    #[test]
    fn wild_quartic_instar_certificate() {
        let m = curve("eis:2:x^4+2", [0, 0, 0, -2, 0]);
        let tf = normalize_to_table_form(&m).unwrap();
        let cert = match_instar(&tf.model).unwrap().unwrap();
        assert_eq!(cert.n, 3);
        let hit = match_table(&tf.model).unwrap().unwrap();
        assert_eq!(hit.kodaira, KodairaType::InStar(3));
    }

    #[test]
    fn normalized_iiistar_over_quartic() {
        let m = curve("eis:2:x^4-2", [0, 0, 0, -2, 0]);
        let tf = normalize_to_table_form(&m).unwrap();
        let hit = match_table(&tf.model).unwrap().unwrap();
        assert_eq!(hit.kodaira, KodairaType::IIIStar);
        assert_eq!(hit.row.threshold, Ratio::new(3, 4));
        assert_eq!(m.transform(&tf.change).unwrap(), tf.model);
    }

    #[test]
    fn type_ii_valuation_pattern() {
        for (desc, coeffs) in [("qp:2", [0, 0, 0, 2, 2]), ("qp:3", [0, 0, 0, 3, 3]), ("qp:5", [0, 0, 0, 0, 5])] {
            let m = curve(desc, coeffs);
            let tf = normalize_to_table_form(&m).unwrap();
            assert_eq!(tf.kodaira, KodairaType::II, "{desc}");
            let v = tf.model.valuations();
            assert!(v[..4].iter().all(|v| v.at_least(1)), "{desc}: {v:?}");
            assert_eq!(v[4], Valuation::Finite(1));
            assert_eq!(tf.model.min_weighted_valuation().value, WeightedValuation::new(1, 6));
        }
    }

    #[test]
    fn good_and_multiplicative_are_rejected() {
        let good = curve("qp:2", [0, 0, 1, 0, 0]);
        assert_eq!(
            normalize_to_table_form(&good).unwrap_err(),
            ClassifyError::NotAdditive(KodairaType::I0)
        );
        let mult = curve("qp:5", [1, 0, 0, 0, 5]);
        assert!(matches!(
            normalize_to_table_form(&mult),
            Err(ClassifyError::NotAdditive(KodairaType::In(_)))
        ));
    }

    #[test]
    fn errors_on_bad_input() {
        let f = Field::parse("qp:3").unwrap();
        assert_eq!(match_table(&curve("qp:3", [0; 5])).unwrap_err(), ClassifyError::Singular);
        let m = WeierstrassModel::parse(&f, "0,0,0,1/3,1").unwrap();
        assert_eq!(match_table(&m).unwrap_err(), ClassifyError::NotIntegral);
        assert_eq!(match_instar(&curve("qp:3", [0; 5])).unwrap_err(), ClassifyError::Singular);
    }

    #[test]
    fn eth_ledger() {
        assert_eq!(eth_of(KodairaType::III), 3);
        assert_eq!(eth_of(KodairaType::InStar(5)), 6);
        assert_eq!(eth_of(KodairaType::I0), 0);
    }

    #[test]
    fn table_has_eight_rows() {
        assert_eq!(TABLE.len(), 8);
        let mut thresholds: Vec<_> = TABLE.iter().map(|r| r.threshold).collect();
        thresholds.dedup();
        assert_eq!(thresholds.len(), 7);
    }
}
