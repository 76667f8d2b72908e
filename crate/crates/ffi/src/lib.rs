//! C interface.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns a [`KdStatus`]; on failure a description is
//! available from [`kd_last_error_message`] until the next call on the
//! same thread. Strings returned through `char **` are owned by the caller
//! and released with [`kd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kodaira::basechange::{predict, verify, BaseChangeError, TameExtensionSpec};
use kodaira::classifier::{match_table, normalize_to_table_form, ClassifyError};
use kodaira::dvr::{DvrError, Field};
use kodaira::tate::{run_tate, LocalData, TateError};
use kodaira::weierstrass::{ModelError, WeierstrassModel};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Singular = 4,
    Wild = 5,
    Unsupported = 6,
    Internal = 7,
    Panic = 8,
}

pub struct KdField {
    field: Field,
}

pub struct KdCurve {
    model: WeierstrassModel,
}

pub struct KdLocalData {
    data: LocalData,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(KdStatus, String);

impl From<DvrError> for Failure {
    fn from(e: DvrError) -> Self {
        let status = match e {
            DvrError::Parse(_)
            | DvrError::NotPrime(_)
            | DvrError::NotEisenstein(..)
            | DvrError::DenominatorNotCoprime(..) => KdStatus::Parse,
            _ => KdStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Dvr(d) => d.into(),
            ModelError::Singular => Failure(KdStatus::Singular, e.to_string()),
            ModelError::WrongArity(_) | ModelError::WrongShortArity(_) => {
                Failure(KdStatus::Parse, e.to_string())
            }
            _ => Failure(KdStatus::Internal, e.to_string()),
        }
    }
}

impl From<TateError> for Failure {
    fn from(e: TateError) -> Self {
        match e {
            TateError::Singular => Failure(KdStatus::Singular, e.to_string()),
            TateError::Dvr(d) => d.into(),
            _ => Failure(KdStatus::Internal, e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Singular => Failure(KdStatus::Singular, e.to_string()),
            ClassifyError::NotAdditive(_) => Failure(KdStatus::Unsupported, e.to_string()),
            ClassifyError::Tate(t) => t.into(),
            _ => Failure(KdStatus::Internal, e.to_string()),
        }
    }
}

impl From<BaseChangeError> for Failure {
    fn from(e: BaseChangeError) -> Self {
        match e {
            BaseChangeError::Wild { .. } => Failure(KdStatus::Wild, e.to_string()),
            BaseChangeError::Tate(t) => t.into(),
            BaseChangeError::Model(m) => m.into(),
            BaseChangeError::Dvr(d) => d.into(),
            _ => Failure(KdStatus::Unsupported, e.to_string()),
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KdStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside kodaira");
            KdStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(KdStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(KdStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KdStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn kd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `qp:P`, `fqt:Q` or `eis:P:POLY`.
///
/// # Safety
/// `descriptor` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_field_parse(descriptor: *const c_char, out: *mut *mut KdField) -> KdStatus {
    guard(|| {
        let field = Field::parse(str_arg(descriptor)?)?;
        put(out, KdField { field })
    })
}

/// # Safety
/// `field` must be null or a handle from [`kd_field_parse`].
#[no_mangle]
pub unsafe extern "C" fn kd_field_free(field: *mut KdField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parse `a1,a2,a3,a4,a6` over `field`. Singular models are rejected.
///
/// # Safety
/// Pointers must be valid as in [`kd_field_parse`].
#[no_mangle]
pub unsafe extern "C" fn kd_curve_parse(
    field: *const KdField,
    coefficients: *const c_char,
    out: *mut *mut KdCurve,
) -> KdStatus {
    guard(|| {
        let field = &ref_arg(field)?.field;
        let model = WeierstrassModel::parse(field, str_arg(coefficients)?)
            .map_err(|e| Failure(KdStatus::Parse, e.to_string()))?;
        model.ensure_nonsingular()?;
        put(out, KdCurve { model })
    })
}

/// Parse `A,B` for `y^2 = x^3 + A x + B`.
///
/// # Safety
/// Pointers must be valid as in [`kd_field_parse`].
#[no_mangle]
pub unsafe extern "C" fn kd_curve_parse_short(
    field: *const KdField,
    coefficients: *const c_char,
    out: *mut *mut KdCurve,
) -> KdStatus {
    guard(|| {
        let field = &ref_arg(field)?.field;
        let model = WeierstrassModel::parse_short(field, str_arg(coefficients)?)
            .map_err(|e| Failure(KdStatus::Parse, e.to_string()))?;
        model.ensure_nonsingular()?;
        put(out, KdCurve { model })
    })
}

/// # Safety
/// `curve` must be null or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn kd_curve_free(curve: *mut KdCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// `[a1,a2,a3,a4,a6]`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_curve_to_string(curve: *const KdCurve, out: *mut *mut c_char) -> KdStatus {
    guard(|| put_string(out, ref_arg(curve)?.model.to_string()))
}

/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_run_tate(curve: *const KdCurve, out: *mut *mut KdLocalData) -> KdStatus {
    guard(|| {
        let data = run_tate(&ref_arg(curve)?.model)?;
        put(out, KdLocalData { data })
    })
}

/// # Safety
/// `data` must be null or a handle from [`kd_run_tate`].
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_free(data: *mut KdLocalData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Kodaira symbol such as `III` or `I3*`.
///
/// # Safety
/// `data` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_kodaira(data: *const KdLocalData, out: *mut *mut c_char) -> KdStatus {
    guard(|| put_string(out, ref_arg(data)?.data.kodaira.to_string()))
}

/// # Safety
/// `data` must be a live handle, or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_v_disc_min(data: *const KdLocalData) -> u32 {
    data.as_ref().map_or(0, |d| d.data.v_disc_min)
}

/// # Safety
/// `data` must be a live handle, or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_tamagawa(data: *const KdLocalData) -> u32 {
    data.as_ref().map_or(0, |d| d.data.tamagawa)
}

/// # Safety
/// `data` must be a live handle, or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_eth(data: *const KdLocalData) -> u32 {
    data.as_ref().map_or(0, |d| d.data.eth)
}

/// # Safety
/// `data` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_local_data_to_json(data: *const KdLocalData, out: *mut *mut c_char) -> KdStatus {
    guard(|| put_string(out, json(&ref_arg(data)?.data)))
}

/// Table row and certificate of an additive-reduction curve, as JSON.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_classify_json(curve: *const KdCurve, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let tf = normalize_to_table_form(&ref_arg(curve)?.model)?;
        let hit = match_table(&tf.model)?;
        put_string(out, json(&serde_json::json!({ "table_model": tf.model, "match": hit })))
    })
}

/// Predicted type and `v(disc)` after a tame extension of degree `e`.
/// Returns `KD_STATUS_WILD` when `e` is divisible by the residue
/// characteristic.
///
/// # Safety
/// `data` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_predict_json(data: *const KdLocalData, e: u64, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let p = predict(&ref_arg(data)?.data, e)?;
        put_string(out, json(&p))
    })
}

/// Prediction and direct computation over the default degree-`e`
/// extension (`x^e - p` over `qp`, `t = s^e` over `fqt`), as JSON.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kd_verify_json(curve: *const KdCurve, e: u64, out: *mut *mut c_char) -> KdStatus {
    guard(|| {
        let model = &ref_arg(curve)?.model;
        let spec = TameExtensionSpec::default_for(model.field(), e)?;
        put_string(out, json(&verify(model, &spec)?))
    })
}
