//! Tate's algorithm: minimal model, Kodaira type, minimal discriminant
//! valuation and Tamagawa number over any of the supported fields.
//!
//! Steps are numbered 1 to 11 in the usual way: 1 tests good reduction,
//! 2 moves the singular point to the origin and tests multiplicative
//! reduction, 3 to 10 halt at II, III, IV, I0*, In*, IV*, III*, II*, and
//! 11 divides the model by `pi` and restarts.
//!
//! After step 2, additive models are additionally shifted by
//! `y -> y + s x` so that `pi` divides `a1` and `a2` (with `s^2 = a2` in
//! residue characteristic 2 and `s = -a1/2` otherwise). The shift leaves
//! the outcome of every later step unchanged, and it makes the halting
//! model readable from `min v(a_i)/i` alone.

use std::fmt;
use std::str::FromStr;

use log::debug;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dvr::{count_distinct_roots, residue_roots, DvrError, Field, LocalElement, Residue, Valuation};
use crate::weierstrass::{CoordinateChange, ModelError, WeierstrassModel, WeightedValuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("singular model (discriminant is 0)")]
    Singular,
    #[error("model is not minimal (step 11 reached with rescaling disabled)")]
    NotMinimal,
    #[error("internal invariant violated at step {step}: {detail}")]
    Internal { step: u8, detail: String },
    #[error(transparent)]
    Dvr(#[from] DvrError),
}

impl From<ModelError> for TateError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Singular => TateError::Singular,
            ModelError::Dvr(d) => TateError::Dvr(d),
            other => TateError::Internal { step: 0, detail: other.to_string() },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// The mod-12 invariant controlling tame base change: 0 for I0 and
    /// In, 6 for In*, and 2, 3, 4, 6, 8, 9, 10 for II, III, IV, I0*, IV*,
    /// III*, II*.
    pub fn eth(self) -> u32 {
        match self {
            KodairaType::I0 | KodairaType::In(_) => 0,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::I0Star | KodairaType::InStar(_) => 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, KodairaType::I0 | KodairaType::In(_))
    }

    /// Tamagawa number is `n` for split In; this reports the `n` of In
    /// and In*.
    pub fn index(self) -> Option<u32> {
        match self {
            KodairaType::In(n) | KodairaType::InStar(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::In(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::InStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "I0" => KodairaType::I0,
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "I0*" => KodairaType::I0Star,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let bad = || format!("unknown Kodaira symbol \"{s}\"");
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let n: u32 = digits.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                if star {
                    KodairaType::InStar(n)
                } else {
                    KodairaType::In(n)
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Local invariants of an elliptic curve at the valuation of its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub kodaira: KodairaType,
    pub minimal_model: WeierstrassModel,
    pub v_disc_min: u32,
    pub tamagawa: u32,
    /// Split multiplicative reduction; only set for In.
    pub split: Option<bool>,
    /// `min v(a_i)/i` of `minimal_model`.
    pub min_weighted_val: WeightedValuation,
    pub eth: u32,
}

impl Serialize for LocalData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LocalData", 8)?;
        st.serialize_field("field", &self.minimal_model.field().to_string())?;
        st.serialize_field("kodaira", &self.kodaira)?;
        st.serialize_field("minimal_model", &self.minimal_model)?;
        st.serialize_field("v_disc_min", &self.v_disc_min)?;
        st.serialize_field("tamagawa", &self.tamagawa)?;
        st.serialize_field("split", &self.split)?;
        st.serialize_field("min_weighted_val", &self.min_weighted_val)?;
        st.serialize_field("eth", &self.eth)?;
        st.end()
    }
}

/// One decision of the algorithm, with the model it was evaluated on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub step: u8,
    pub model: WeierstrassModel,
    pub predicate: String,
    pub branch: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Halt {
    pub step: u8,
    /// `n` of In (step 2) or In* (step 7).
    pub n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
    pub halt: Halt,
}

/// Read the Kodaira type off the step at which a traced run halted.
pub fn kodaira_of_steps(trace: &Trace) -> KodairaType {
    let n = || trace.halt.n.expect("In and In* halts record n");
    match trace.halt.step {
        1 => KodairaType::I0,
        2 => KodairaType::In(n()),
        3 => KodairaType::II,
        4 => KodairaType::III,
        5 => KodairaType::IV,
        6 => KodairaType::I0Star,
        7 => KodairaType::InStar(n()),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        s => panic!("no Kodaira type halts at step {s}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateOptions {
    pub trace: bool,
    /// When false, reaching step 11 is an error instead of a restart.
    pub allow_rescale: bool,
}

impl Default for TateOptions {
    fn default() -> Self {
        Self { trace: false, allow_rescale: true }
    }
}

#[derive(Clone, Debug)]
pub struct TateRun {
    pub data: LocalData,
    /// Maps the input model to `data.minimal_model`.
    pub change: CoordinateChange,
    /// Number of step-11 divisions by `pi`.
    pub rescalings: u32,
    /// `k` of the initial scaling `a_i -> pi^(ik) a_i` that made the input
    /// integral.
    pub integralization: u32,
    pub trace: Option<Trace>,
}

/// Run Tate's algorithm with default options.
pub fn run_tate(model: &WeierstrassModel) -> Result<LocalData, TateError> {
    Ok(run_tate_with(model, TateOptions::default())?.data)
}

pub fn run_tate_traced(model: &WeierstrassModel) -> Result<TateRun, TateError> {
    run_tate_with(model, TateOptions { trace: true, allow_rescale: true })
}

pub fn run_tate_with(model: &WeierstrassModel, opts: TateOptions) -> Result<TateRun, TateError> {
    model.ensure_nonsingular()?;
    let field = model.field().clone();
    let mut run = Run {
        p: field.residue_char(),
        field: field.clone(),
        model: model.clone(),
        change: CoordinateChange::identity(&field),
        entries: opts.trace.then(Vec::new),
        step: 0,
    };
    let integralization = run.integralize();
    let mut rescalings = 0;
    loop {
        match run.pass()? {
            Pass::Done(outcome) => {
                let data = run.finish(outcome);
                let trace = run.entries.take().map(|entries| Trace {
                    entries,
                    halt: Halt { step: outcome.step, n: outcome.kodaira.index() },
                });
                debug!("tate over {field}: {} after {rescalings} rescalings", data.kodaira);
                return Ok(TateRun {
                    data,
                    change: run.change,
                    rescalings,
                    integralization,
                    trace,
                });
            }
            Pass::Rescale => {
                if !opts.allow_rescale {
                    return Err(TateError::NotMinimal);
                }
                run.rescale();
                rescalings += 1;
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Outcome {
    step: u8,
    kodaira: KodairaType,
    tamagawa: u32,
    split: Option<bool>,
}

enum Pass {
    Done(Outcome),
    Rescale,
}

struct Run {
    field: Field,
    p: u64,
    model: WeierstrassModel,
    change: CoordinateChange,
    entries: Option<Vec<TraceEntry>>,
    step: u8,
}

impl Run {
    fn note(&mut self, predicate: String, branch: &str) {
        debug!("step {}: {predicate} -> {branch}", self.step);
        if let Some(entries) = self.entries.as_mut() {
            entries.push(TraceEntry {
                step: self.step,
                model: self.model.clone(),
                predicate,
                branch: branch.to_string(),
            });
        }
    }

    fn internal(&self, detail: impl Into<String>) -> TateError {
        TateError::Internal { step: self.step, detail: detail.into() }
    }

    fn integralize(&mut self) -> u32 {
        let k = crate::weierstrass::INDICES
            .iter()
            .zip(self.model.valuations())
            .filter_map(|(&i, v)| match v {
                Valuation::Finite(v) if v < 0 => Some((-v + i64::from(i) - 1) / i64::from(i)),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        if k > 0 {
            let u = self.field.uniformizer().pow(-k).expect("nonzero");
            self.model = self.model.rescale_by_pi(-k);
            self.change = self.change.then(&CoordinateChange::scaling(u).expect("nonzero"));
        }
        k as u32
    }

    fn rescale(&mut self) {
        self.model = self.model.rescale_by_pi(1);
        let u = self.field.uniformizer();
        self.change = self.change.then(&CoordinateChange::scaling(u).expect("nonzero"));
    }

    fn translate(&mut self, r: LocalElement, s: LocalElement, t: LocalElement) -> Result<(), TateError> {
        if r.is_zero() && s.is_zero() && t.is_zero() {
            return Ok(());
        }
        let c = CoordinateChange::translation(r, s, t);
        self.model = self.model.transform(&c)?;
        self.change = self.change.then(&c);
        Ok(())
    }

    fn zero(&self) -> LocalElement {
        self.field.zero()
    }

    fn res(&self, a: &LocalElement) -> Result<Residue, TateError> {
        a.reduce().map_err(|e| self.internal(e.to_string()))
    }

    /// Residue of `a / pi^k`.
    fn res_div(&self, a: &LocalElement, k: i64) -> Result<Residue, TateError> {
        self.res(&a.mul_pi_pow(-k))
    }

    fn r(&self, n: i64) -> Residue {
        Residue::new(n, self.p)
    }

    /// `pi^k * lift(x)`
    fn lift_pi(&self, x: Residue, k: i64) -> LocalElement {
        self.field.lift(x).mul_pi_pow(k)
    }

    fn half(&self, x: Residue) -> Residue {
        x * self.r(2).inv().expect("odd residue characteristic")
    }

    fn sqrt(&self, x: Residue) -> Result<Residue, TateError> {
        x.sqrt().ok_or_else(|| self.internal(format!("{x} has no square root mod {}", self.p)))
    }

    fn require(&self, ok: bool, what: &str) -> Result<(), TateError> {
        if ok {
            Ok(())
        } else {
            Err(self.internal(format!("expected {what} on {}", self.model)))
        }
    }

    fn has_root(&self, coeffs: &[Residue]) -> bool {
        count_distinct_roots(coeffs).map(|n| n > 0).unwrap_or(false)
    }

    /// The repeated root of a polynomial known to have one.
    fn repeated_root(&self, coeffs: &[Residue]) -> Result<Residue, TateError> {
        let roots = residue_roots(coeffs)?;
        roots
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
            .ok_or_else(|| self.internal("expected a repeated residue root"))
    }

    fn done(&mut self, kodaira: KodairaType, tamagawa: u32, split: Option<bool>) -> Pass {
        self.note(format!("halt: {kodaira}"), "halt");
        Pass::Done(Outcome { step: self.step, kodaira, tamagawa, split })
    }

    /// Singular point of the reduction, as residues `(x, y)`.
    fn singular_point(&self) -> Result<(Residue, Residue), TateError> {
        let m = &self.model;
        let (a1, a2, a3, a4, a6) = (
            self.res(&m.a1)?,
            self.res(&m.a2)?,
            self.res(&m.a3)?,
            self.res(&m.a4)?,
            self.res(&m.a6)?,
        );
        Ok(match self.p {
            2 => {
                if a1.is_zero() {
                    let x = self.sqrt(a4)?;
                    let y = self.sqrt(((x + a2) * x + a4) * x + a6)?;
                    (x, y)
                } else {
                    let inv = a1.inv().expect("unit");
                    let x = inv * a3;
                    (x, inv * (x * x + a4))
                }
            }
            3 => {
                let (b2, b4, b6) = (self.res(&m.b2())?, self.res(&m.b4())?, self.res(&m.b6())?);
                let x = if b2.is_zero() {
                    (-b6)
                        .nth_root(3)
                        .ok_or_else(|| self.internal("no cube root"))?
                } else {
                    -(b4 * b2.inv().expect("unit"))
                };
                (x, a1 * x + a3)
            }
            _ => {
                let (b2, c4, c6) = (self.res(&m.b2())?, self.res(&m.c4())?, self.res(&m.c6())?);
                let twelve_inv = self.r(12).inv().expect("p >= 5");
                let x = if c4.is_zero() {
                    -(b2 * twelve_inv)
                } else {
                    -((c6 + b2 * c4) * (twelve_inv * c4.inv().expect("unit")))
                };
                (x, -self.half(a1 * x + a3))
            }
        })
    }

    fn pass(&mut self) -> Result<Pass, TateError> {
        let p = self.p;

        self.step = 1;
        let vd = self
            .model
            .discriminant()
            .valuation()
            .finite()
            .ok_or(TateError::Singular)?;
        if vd == 0 {
            self.note("v(disc) = 0".into(), "good reduction");
            return Ok(self.done(KodairaType::I0, 1, None));
        }
        self.note(format!("v(disc) = {vd} > 0"), "bad reduction");

        self.step = 2;
        let (x0, y0) = self.singular_point()?;
        self.translate(self.field.lift(x0), self.zero(), self.field.lift(y0))?;
        {
            let v = self.model.valuations();
            self.require(v[2].at_least(1) && v[3].at_least(1) && v[4].at_least(1), "pi | a3, a4, a6")?;
        }
        let b2 = self.model.b2();
        if !b2.valuation().at_least(1) {
            let n = vd as u32;
            let (a1, a2) = (self.res(&self.model.a1)?, self.res(&self.model.a2)?);
            let split = self.has_root(&[-a2, a1, self.r(1)]);
            let tamagawa = if split {
                n
            } else if n.is_multiple_of(2) {
                2
            } else {
                1
            };
            self.note("pi does not divide b2".into(), if split { "split" } else { "nonsplit" });
            return Ok(self.done(KodairaType::In(n), tamagawa, Some(split)));
        }
        self.note("pi | b2".into(), "additive");
        let s = if p == 2 {
            self.sqrt(self.res(&self.model.a2)?)?
        } else {
            -self.half(self.res(&self.model.a1)?)
        };
        self.translate(self.zero(), self.field.lift(s), self.zero())?;
        {
            let v = self.model.valuations();
            self.require(v[0].at_least(1) && v[1].at_least(1), "pi | a1, a2")?;
        }

        self.step = 3;
        if !self.model.a6.valuation().at_least(2) {
            self.note("v(a6) < 2".into(), "II");
            return Ok(self.done(KodairaType::II, 1, None));
        }
        self.note("v(a6) >= 2".into(), "continue");

        self.step = 4;
        if !self.model.b8().valuation().at_least(3) {
            self.note("v(b8) < 3".into(), "III");
            return Ok(self.done(KodairaType::III, 2, None));
        }
        self.note("v(b8) >= 3".into(), "continue");

        self.step = 5;
        if !self.model.b6().valuation().at_least(3) {
            let a3t = self.res_div(&self.model.a3, 1)?;
            let a6t = self.res_div(&self.model.a6, 2)?;
            let c = if self.has_root(&[-a6t, a3t, self.r(1)]) { 3 } else { 1 };
            self.note("v(b6) < 3".into(), "IV");
            return Ok(self.done(KodairaType::IV, c, None));
        }
        self.note("v(b6) >= 3".into(), "continue");

        self.step = 6;
        let t = if p == 2 {
            self.sqrt(self.res_div(&self.model.a6, 2)?)?
        } else {
            -self.half(self.res_div(&self.model.a3, 1)?)
        };
        self.translate(self.zero(), self.zero(), self.lift_pi(t, 1))?;
        {
            let v = self.model.valuations();
            self.require(
                v[0].at_least(1) && v[1].at_least(1) && v[2].at_least(2) && v[3].at_least(2) && v[4].at_least(3),
                "valuations >= 1, 1, 2, 2, 3",
            )?;
        }
        let b = self.res_div(&self.model.a2, 1)?;
        let c = self.res_div(&self.model.a4, 2)?;
        let d = self.res_div(&self.model.a6, 3)?;
        let cubic = [d, c, b, self.r(1)];
        let w = self.r(-4) * b * b * b * d + b * b * c * c - self.r(4) * c * c * c
            - self.r(27) * d * d
            + self.r(18) * b * c * d;
        if !w.is_zero() {
            let roots = count_distinct_roots(&cubic)? as u32;
            self.note("cubic has distinct roots".into(), "I0*");
            return Ok(self.done(KodairaType::I0Star, 1 + roots, None));
        }
        let triple = (b * b - self.r(3) * c).is_zero();
        self.note(
            "cubic has a repeated root".into(),
            if triple { "triple root" } else { "double root" },
        );

        if !triple {
            self.step = 7;
            let alpha = self.repeated_root(&cubic)?;
            self.translate(self.lift_pi(alpha, 1), self.zero(), self.zero())?;
            return self.instar_subloop(vd);
        }

        self.step = 8;
        let alpha = residue_roots(&cubic)?[0];
        self.translate(self.lift_pi(alpha, 1), self.zero(), self.zero())?;
        {
            let v = self.model.valuations();
            self.require(v[1].at_least(2) && v[3].at_least(3) && v[4].at_least(4), "pi^2 | a2, pi^3 | a4, pi^4 | a6")?;
        }
        let x3 = self.res_div(&self.model.a3, 2)?;
        let x6 = self.res_div(&self.model.a6, 4)?;
        let quad = [-x6, x3, self.r(1)];
        if !(x3 * x3 + self.r(4) * x6).is_zero() {
            let c = if self.has_root(&quad) { 3 } else { 1 };
            self.note("v(b6) < 5".into(), "IV*");
            return Ok(self.done(KodairaType::IVStar, c, None));
        }
        self.note("v(b6) >= 5".into(), "continue");

        self.step = 9;
        let beta = self.repeated_root(&quad)?;
        self.translate(self.zero(), self.zero(), self.lift_pi(beta, 2))?;
        {
            let v = self.model.valuations();
            self.require(v[2].at_least(3) && v[4].at_least(5), "pi^3 | a3, pi^5 | a6")?;
        }
        if !self.model.a4.valuation().at_least(4) {
            self.note("v(a4) < 4".into(), "III*");
            return Ok(self.done(KodairaType::IIIStar, 2, None));
        }
        self.note("v(a4) >= 4".into(), "continue");

        self.step = 10;
        if !self.model.a6.valuation().at_least(6) {
            self.note("v(a6) < 6".into(), "II*");
            return Ok(self.done(KodairaType::IIStar, 1, None));
        }
        self.note("v(a6) >= 6".into(), "continue");

        self.step = 11;
        self.note("pi^i | a_i for all i".into(), "rescale");
        Ok(Pass::Rescale)
    }

    /// Step 7: alternately clear the y- and x-quadratics until one has
    /// distinct roots. `a3`, `a4`, `a6` are kept divisible by
    /// `pi^(iy-1)`, `pi^ix`, `pi^(ix+iy-2)`.
    fn instar_subloop(&mut self, vd: i64) -> Result<Pass, TateError> {
        {
            let v = self.model.valuations();
            self.require(
                v[1] == Valuation::Finite(1) && v[3].at_least(3) && v[4].at_least(4),
                "v(a2) = 1, pi^3 | a4, pi^4 | a6",
            )?;
        }
        let one = self.r(1);
        let (mut ix, mut iy) = (3i64, 3i64);
        let mut rounds = 0;
        let tamagawa = loop {
            rounds += 1;
            if rounds > vd {
                return Err(self.internal("In* sub-loop exceeded v(disc) rounds"));
            }
            let a3t = self.res_div(&self.model.a3, iy - 1)?;
            let a6t = self.res_div(&self.model.a6, ix + iy - 2)?;
            let yq = [-a6t, a3t, one];
            if !(a3t * a3t + self.r(4) * a6t).is_zero() {
                self.note(format!("y-quadratic at ({ix},{iy}) has distinct roots"), "halt");
                break if self.has_root(&yq) { 4 } else { 2 };
            }
            let beta = self.repeated_root(&yq)?;
            self.translate(self.zero(), self.zero(), self.lift_pi(beta, iy - 1))?;
            iy += 1;

            let a2t = self.res_div(&self.model.a2, 1)?;
            let a4t = self.res_div(&self.model.a4, ix)?;
            let a6t = self.res_div(&self.model.a6, ix + iy - 2)?;
            let xq = [a6t, a4t, a2t];
            if !(a4t * a4t - self.r(4) * a2t * a6t).is_zero() {
                self.note(format!("x-quadratic at ({ix},{iy}) has distinct roots"), "halt");
                break if self.has_root(&xq) { 4 } else { 2 };
            }
            let gamma = self.repeated_root(&xq)?;
            self.translate(self.lift_pi(gamma, ix - 1), self.zero(), self.zero())?;
            ix += 1;
        };
        let n = (ix + iy - 5) as u32;
        Ok(self.done(KodairaType::InStar(n), tamagawa, None))
    }

    fn finish(&self, outcome: Outcome) -> LocalData {
        let v_disc_min = self
            .model
            .discriminant()
            .valuation()
            .finite()
            .expect("nonsingular") as u32;
        LocalData {
            kodaira: outcome.kodaira,
            minimal_model: self.model.clone(),
            v_disc_min,
            tamagawa: outcome.tamagawa,
            split: outcome.split,
            min_weighted_val: self.model.min_weighted_valuation().value,
            eth: outcome.kodaira.eth(),
        }
    }
}
