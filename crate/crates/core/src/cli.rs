//! Command-line front end.
//!
//! Every command prints one report (pretty JSON or `key: value` text) and
//! exits with a code from [`ExitCode`]. Failures print a single line
//! `error: <kind>: <message>` on stderr.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basechange::{
    extend_curve, predict, verify, BaseChangeError, Predicted, TameExtensionSpec,
};
use crate::classifier::{match_table, normalize_to_table_form, ClassifyError};
use crate::dvr::{DvrError, Field, FieldDescriptor};
use crate::tate::{run_tate, run_tate_traced, KodairaType, TateError};
use crate::weierstrass::{ModelError, WeierstrassModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Singular = 3,
    Wild = 4,
    Unsupported = 5,
    Mismatch = 6,
    Io = 7,
    SelftestFailed = 8,
}

impl ExitCode {
    pub fn kind(self) -> &'static str {
        match self {
            ExitCode::Ok => "ok",
            ExitCode::Internal => "internal",
            ExitCode::Parse => "parse",
            ExitCode::Singular => "singular",
            ExitCode::Wild => "wild",
            ExitCode::Unsupported => "unsupported",
            ExitCode::Mismatch => "mismatch",
            ExitCode::Io => "io",
            ExitCode::SelftestFailed => "selftest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line = self.message.replace('\n', " ");
        write!(f, "error: {}: {}", self.code.kind(), one_line)
    }
}

impl From<DvrError> for CliError {
    fn from(e: DvrError) -> Self {
        let code = match e {
            DvrError::Parse(_)
            | DvrError::NotPrime(_)
            | DvrError::NotEisenstein(..)
            | DvrError::DenominatorNotCoprime(..) => ExitCode::Parse,
            _ => ExitCode::Internal,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Dvr(d) => d.into(),
            ModelError::Singular => CliError::new(ExitCode::Singular, e.to_string()),
            ModelError::WrongArity(_) | ModelError::WrongShortArity(_) => {
                CliError::new(ExitCode::Parse, e.to_string())
            }
            _ => CliError::new(ExitCode::Internal, e.to_string()),
        }
    }
}

impl From<TateError> for CliError {
    fn from(e: TateError) -> Self {
        match e {
            TateError::Singular => CliError::new(ExitCode::Singular, e.to_string()),
            TateError::Dvr(d) => d.into(),
            _ => CliError::new(ExitCode::Internal, e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Singular => CliError::new(ExitCode::Singular, e.to_string()),
            ClassifyError::Tate(t) => t.into(),
            _ => CliError::new(ExitCode::Internal, e.to_string()),
        }
    }
}

impl From<BaseChangeError> for CliError {
    fn from(e: BaseChangeError) -> Self {
        match e {
            BaseChangeError::Wild { .. } => CliError::new(ExitCode::Wild, e.to_string()),
            BaseChangeError::ZeroDegree => CliError::new(ExitCode::Parse, e.to_string()),
            BaseChangeError::Unsupported(_) | BaseChangeError::InvalidSpec(_) => {
                CliError::new(ExitCode::Unsupported, e.to_string())
            }
            BaseChangeError::Tate(t) => t.into(),
            BaseChangeError::Model(m) => m.into(),
            BaseChangeError::Dvr(d) => d.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[default]
    Predict,
    Compute,
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "kodaira", version, about = "Local invariants of elliptic curves over discretely valued fields")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Write the report to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal model, Kodaira type, v(disc), Tamagawa number.
    Localdata {
        #[command(flatten)]
        curve: CurveArgs,
        /// Include the step-by-step trace.
        #[arg(long)]
        trace: bool,
    },
    /// Normalize an additive curve and read its type off the table.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Base change along a totally ramified extension of degree e.
    Basechange {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        ext: ExtensionArgs,
        #[arg(long, value_enum, default_value_t = Mode::Predict)]
        mode: Mode,
    },
    /// Same as `basechange --mode verify`.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        ext: ExtensionArgs,
    },
    /// Run the built-in example fixtures.
    Selftest,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Field descriptor: qp:P, fqt:Q or eis:P:POLY.
    #[arg(value_name = "BASE", allow_hyphen_values = true)]
    pub base_pos: Option<String>,
    /// a1,a2,a3,a4,a6
    #[arg(value_name = "CURVE", allow_hyphen_values = true)]
    pub curve_pos: Option<String>,
    #[arg(long, value_name = "BASE")]
    pub base: Option<String>,
    #[arg(long, value_name = "a1,a2,a3,a4,a6", allow_hyphen_values = true, conflicts_with = "short")]
    pub curve: Option<String>,
    /// y^2 = x^3 + A x + B
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub short: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExtensionArgs {
    /// Ramification degree.
    #[arg(long)]
    pub e: u64,
    /// Eisenstein polynomial in x for a qp base (default x^e - p).
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    pub poly: Option<String>,
}

impl CurveArgs {
    pub fn model(&self) -> Result<WeierstrassModel, CliError> {
        // with --base, a single positional is the curve
        let (base, curve_pos) = match (&self.base, &self.base_pos, &self.curve_pos) {
            (Some(b), Some(c), None) => (b, Some(c)),
            (Some(_), Some(_), Some(_)) => {
                return Err(CliError::new(ExitCode::Parse, "base given both positionally and with --base"))
            }
            (Some(b), None, c) => (b, c.as_ref()),
            (None, Some(b), c) => (b, c.as_ref()),
            (None, None, _) => return Err(CliError::new(ExitCode::Parse, "missing base field")),
        };
        let unparsable = |e: &dyn fmt::Display| CliError::new(ExitCode::Parse, e.to_string());
        let field = Field::parse(base).map_err(|e| unparsable(&e))?;
        let m = match (&self.curve, curve_pos, &self.short) {
            (Some(c), None, None) | (None, Some(c), None) => WeierstrassModel::parse(&field, c),
            (None, None, Some(s)) => WeierstrassModel::parse_short(&field, s),
            _ => return Err(CliError::new(ExitCode::Parse, "expected exactly one curve")),
        }
        .map_err(|e| unparsable(&e))?;
        m.ensure_nonsingular()?;
        Ok(m)
    }
}

impl ExtensionArgs {
    pub fn spec(&self, base: &Field) -> Result<TameExtensionSpec, CliError> {
        let Some(poly) = &self.poly else {
            return Ok(TameExtensionSpec::default_for(base, self.e)?);
        };
        let FieldDescriptor::RationalAtP { p } = base.descriptor() else {
            return Err(CliError::new(ExitCode::Unsupported, "--poly needs a qp base"));
        };
        let desc: FieldDescriptor = format!("eis:{p}:{poly}").parse()?;
        let FieldDescriptor::Eisenstein { poly, .. } = desc else {
            unreachable!("eis descriptor");
        };
        let coeffs: Vec<BigInt> = poly;
        let spec = TameExtensionSpec::eisenstein(coeffs);
        if spec.e != self.e {
            return Err(CliError::new(
                ExitCode::Unsupported,
                format!("--poly has degree {} but --e is {}", spec.e, self.e),
            ));
        }
        Ok(spec)
    }
}

/// A finished command: the report and the exit code to return after
/// printing it.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, failure: None }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn cmd_localdata(curve: &CurveArgs, trace: bool) -> Result<Outcome, CliError> {
    let m = curve.model()?;
    if trace {
        let run = run_tate_traced(&m)?;
        let mut report = to_value(&run.data);
        report["trace"] = to_value(&run.trace);
        report["change"] = to_value(&run.change);
        Ok(Outcome::ok(report))
    } else {
        Ok(Outcome::ok(to_value(&run_tate(&m)?)))
    }
}

pub fn cmd_classify(curve: &CurveArgs) -> Result<Outcome, CliError> {
    let m = curve.model()?;
    let ld = run_tate(&m)?;
    if !ld.kodaira.is_additive() {
        return Ok(Outcome::ok(json!({
            "field": m.field().to_string(),
            "input_model": m,
            "kodaira": ld.kodaira,
            "table_model": null,
            "change": null,
            "match": null,
        })));
    }
    let tf = normalize_to_table_form(&m)?;
    let hit = match_table(&tf.model)?;
    if hit.as_ref().map(|h| h.kodaira) != Some(ld.kodaira) {
        return Err(CliError::new(
            ExitCode::Internal,
            format!("table form of a {} curve does not match its row", ld.kodaira),
        ));
    }
    Ok(Outcome::ok(json!({
        "field": m.field().to_string(),
        "input_model": m,
        "kodaira": ld.kodaira,
        "table_model": tf.model,
        "change": tf.change,
        "match": hit,
    })))
}

pub fn cmd_basechange(curve: &CurveArgs, ext: &ExtensionArgs, mode: Mode) -> Result<Outcome, CliError> {
    let m = curve.model()?;
    let spec = ext.spec(m.field())?;
    match mode {
        Mode::Predict => {
            let base = run_tate(&m)?;
            let predicted = predict(&base, spec.e)?;
            Ok(Outcome::ok(json!({ "base": base, "e": spec.e, "predicted": predicted })))
        }
        Mode::Compute => {
            let extended = extend_curve(&m, &spec)?;
            let computed = run_tate(&extended)?;
            Ok(Outcome::ok(json!({
                "e": spec.e,
                "extension": extended.field().to_string(),
                "model": extended,
                "computed": computed,
            })))
        }
        Mode::Verify => {
            let report = verify(&m, &spec)?;
            let failure = match (&report.predicted, report.matches) {
                (_, true) => None,
                (Predicted::Refused, _) => Some(CliError::new(
                    ExitCode::Wild,
                    BaseChangeError::Wild { e: spec.e, p: m.field().residue_char() }.to_string(),
                )),
                (Predicted::Prediction(p), false) => Some(CliError::new(
                    ExitCode::Mismatch,
                    format!(
                        "predicted ({}, {}) but computed ({}, {})",
                        p.type_f, p.v_disc_f, report.computed.kodaira, report.computed.v_disc_min
                    ),
                )),
            };
            Ok(Outcome { report: to_value(&report), failure })
        }
    }
}

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn check_localdata(name: &'static str, base: &str, curve: &str, want: (KodairaType, u32)) -> Check {
    let got = Field::parse(base)
        .map_err(CliError::from)
        .and_then(|f| Ok(WeierstrassModel::parse(&f, curve)?))
        .and_then(|m| Ok(run_tate(&m)?));
    match got {
        Ok(ld) => Check {
            name,
            ok: (ld.kodaira, ld.v_disc_min) == want,
            detail: format!("{} v={}", ld.kodaira, ld.v_disc_min),
        },
        Err(e) => Check { name, ok: false, detail: e.to_string() },
    }
}

pub fn cmd_selftest() -> Result<Outcome, CliError> {
    let mut checks = vec![
        check_localdata("example over qp:2", "qp:2", "0,0,0,-2,0", (KodairaType::III, 9)),
        check_localdata("example over eis:2:x^5-2", "eis:2:x^5-2", "0,0,0,-2,0", (KodairaType::III, 33)),
        check_localdata("wild quartic x^4-2", "eis:2:x^4-2", "0,0,0,-2,0", (KodairaType::IIIStar, 12)),
        check_localdata("wild quartic x^4+2", "eis:2:x^4+2", "0,0,0,-2,0", (KodairaType::InStar(3), 12)),
        check_localdata(
            "wild quartic (x+1)^4+1",
            "eis:2:x^4+4x^3+6x^2+4x+2",
            "0,0,0,-2,0",
            (KodairaType::InStar(4), 24),
        ),
        check_localdata("good reduction over qp:5", "qp:5", "0,0,1,0,0", (KodairaType::I0, 0)),
    ];
    let m = WeierstrassModel::from_i64s(&Field::rational_at(2)?, [0, 0, 0, -2, 0]);
    let base = run_tate(&m)?;
    for (e, v) in [(5u64, 33u32), (25, 153), (125, 753)] {
        let (ok, detail) = match predict(&base, e) {
            Ok(p) => (p.type_f == KodairaType::III && p.v_disc_f == v, format!("{} v={}", p.type_f, p.v_disc_f)),
            Err(err) => (false, err.to_string()),
        };
        checks.push(Check { name: "tower prediction", ok, detail: format!("e={e}: {detail}") });
    }
    let refused = matches!(predict(&base, 4), Err(BaseChangeError::Wild { .. }));
    checks.push(Check { name: "wild e=4 refused", ok: refused, detail: String::new() });
    let classified = normalize_to_table_form(&m)
        .map_err(CliError::from)
        .and_then(|tf| Ok(match_table(&tf.model)?))
        .map(|hit| hit.map(|h| (h.kodaira, h.certificate.min.to_string())));
    checks.push(Check {
        name: "table row 1/4",
        ok: matches!(&classified, Ok(Some((KodairaType::III, min))) if min == "1/4"),
        detail: format!("{classified:?}"),
    });

    let all_ok = checks.iter().all(|c| c.ok);
    let report = json!({
        "checks": checks
            .iter()
            .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "ok": all_ok,
    });
    let failure = (!all_ok).then(|| {
        let failed: Vec<_> = checks.iter().filter(|c| !c.ok).map(|c| c.name).collect();
        CliError::new(ExitCode::SelftestFailed, format!("failed: {}", failed.join(", ")))
    });
    Ok(Outcome { report, failure })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Localdata { curve, trace } => cmd_localdata(curve, *trace),
        Command::Classify { curve } => cmd_classify(curve),
        Command::Basechange { curve, ext, mode } => cmd_basechange(curve, ext, *mode),
        Command::Verify { curve, ext } => cmd_basechange(curve, ext, Mode::Verify),
        Command::Selftest => cmd_selftest(),
    }
}

fn render_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                render_text(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Null => "-".to_string(),
                other => other.to_string(),
            };
            out.push_str(&format!("{prefix}: {s}\n"));
        }
    }
}

pub fn render(report: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("json");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            render_text("", report, &mut s);
            s
        }
    }
}

/// Parse `args`, run the command, write the report and any error line.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return ExitCode::Ok as i32;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            let err = CliError::new(ExitCode::Parse, first.to_string());
            let _ = writeln!(stderr, "{err}");
            return err.code as i32;
        }
    };
    log::debug!("{:?}", cli.command);
    let result = execute(&cli).and_then(|outcome| {
        let text = render(&outcome.report, cli.output);
        match &cli.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| CliError::new(ExitCode::Io, format!("{}: {e}", path.display())))?,
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::new(ExitCode::Io, e.to_string()))?,
        }
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::Ok as i32,
        Err(err) => {
            let _ = writeln!(stderr, "{err}");
            err.code as i32
        }
    }
}
