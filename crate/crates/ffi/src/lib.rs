//! C ABI over tworb-core.
//!
//! Every function returns a [`TworbStatus`]. On failure the message is kept
//! per thread and read with [`tworb_last_error_message`]. Strings handed out
//! through `out` pointers are owned by the caller and released with
//! [`tworb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tworb::field::{make_extension, prime_power, ExtensionModel, FieldDescriptor};
use tworb::orbit::{centralizer_dim_oracle, orbit_dimension, standard_representative, JordanType};
use tworb::parabolic::{induce_orbit, standard_parabolic, InduceConfig};
use tworb::verify::{run_suite, Suite, VerifyConfig, SCHEMA};
use tworb::zeta::{exponent_table, local_zeta_model};
use tworb::{with_model, Error};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TworbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BadField = 3,
    BadComposition = 4,
    GenericityFailure = 5,
    BudgetExceeded = 6,
    CheckFailed = 7,
    Internal = 8,
}

/// Opaque handle to a quadratic extension model.
pub struct TworbModel {
    model: ExtensionModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> TworbStatus {
    match e {
        Error::RadicandIsSquare(_) | Error::NotPrime(_) | Error::FieldTooLarge(_) => TworbStatus::BadField,
        Error::BadComposition(_) => TworbStatus::BadComposition,
        Error::GenericityFailure { .. } => TworbStatus::GenericityFailure,
        Error::BudgetExceeded { .. } => TworbStatus::BudgetExceeded,
        _ => TworbStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and panics as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (TworbStatus, String)>) -> TworbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TworbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TworbStatus::Internal
        }
    }
}

fn core_err(e: Error) -> (TworbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TworbStatus, String) {
    (TworbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TworbStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (TworbStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn read_type(parts: *const usize, len: usize) -> Result<JordanType, (TworbStatus, String)> {
    if len == 0 {
        return Ok(JordanType::zero(0));
    }
    if parts.is_null() {
        return Err(null("parts"));
    }
    Ok(JordanType::new(std::slice::from_raw_parts(parts, len).to_vec()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TworbStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (TworbStatus::Internal, "nul byte in output".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn model_ref<'a>(m: *const TworbModel) -> Result<&'a ExtensionModel, (TworbStatus, String)> {
    m.as_ref().map(|m| &m.model).ok_or_else(|| null("model"))
}

fn new_model(desc: FieldDescriptor, out: *mut *mut TworbModel) -> TworbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let model = make_extension(&desc).map_err(core_err)?;
        // SAFETY: `out` checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(TworbModel { model })) };
        Ok(())
    })
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next tworb call on the same thread.
#[no_mangle]
pub extern "C" fn tworb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from a tworb function and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn tworb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds Q(√tau)/Q.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_model_rational(tau: i64, out: *mut *mut TworbModel) -> TworbStatus {
    new_model(FieldDescriptor::Rational { tau }, out)
}

/// Builds F_{q²}/F_q.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_model_finite(q: u64, out: *mut *mut TworbModel) -> TworbStatus {
    match prime_power(q) {
        Some((p, e)) => new_model(FieldDescriptor::Finite { p, e }, out),
        None => guard(|| Err((TworbStatus::BadField, format!("{q} is not a prime power")))),
    }
}

/// # Safety
/// `model` must come from a model constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tworb_model_free(model: *mut TworbModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Invariants and exponent table of the orbit with the given Jordan parts,
/// as JSON.
///
/// # Safety
/// `parts` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_orbit_invariants_json(
    parts: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> TworbStatus {
    guard(|| {
        let t = read_type(parts, len)?;
        let doc = serde_json::json!({
            "schema": SCHEMA,
            "invariants": orbit_dimension(&t),
            "exponents": exponent_table(&t),
        });
        write_string(out, doc.to_string())
    })
}

/// F-dimension of the centralizer of the standard representative, computed
/// by solving the bracket system over the model.
///
/// # Safety
/// `model` must be a live handle, `parts` must point to `len` readable values
/// and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_centralizer_dim(
    model: *const TworbModel,
    parts: *const usize,
    len: usize,
    out: *mut usize,
) -> TworbStatus {
    guard(|| {
        let model = model_ref(model)?;
        let t = read_type(parts, len)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = with_model!(model, |k| centralizer_dim_oracle(k, &standard_representative(k, &t)));
        Ok(())
    })
}

/// Induces block types along the standard parabolic of `levi`
/// ("2,1"). `types` uses ';' between blocks ("1,1;1"); NULL means zero types.
///
/// # Safety
/// `model` must be a live handle, string arguments NUL-terminated or NULL
/// where allowed, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_induce_json(
    model: *const TworbModel,
    levi: *const c_char,
    types: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> TworbStatus {
    guard(|| {
        let model = model_ref(model)?;
        let levi = read_str(levi, "levi")?;
        let comp = levi
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| (TworbStatus::InvalidArgument, format!("bad composition {levi:?}")))?;
        let p = standard_parabolic(&comp).map_err(core_err)?;
        let types: Vec<JordanType> = if types.is_null() {
            comp.iter().map(|&s| JordanType::zero(s)).collect()
        } else {
            read_str(types, "types")?.split(';').map(str::parse).collect::<Result<_, _>>().map_err(core_err)?
        };
        let config = InduceConfig { seed, ..InduceConfig::default() };
        let induction = with_model!(model, |k| induce_orbit(k, &p, &types, &config)).map_err(core_err)?;
        let doc = serde_json::json!({"schema": SCHEMA, "levi": comp, "types": types, "induction": induction});
        write_string(out, doc.to_string())
    })
}

/// Runs a verification suite on the model's field. Writes the JSON report
/// and returns `CheckFailed` if any case failed.
///
/// # Safety
/// `model` must be a live handle, `suite` NUL-terminated, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_verify_json(
    model: *const TworbModel,
    suite: *const c_char,
    n_max: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> TworbStatus {
    let mut failed = false;
    let status = guard(|| {
        let model = model_ref(model)?;
        let suite: Suite = read_str(suite, "suite")?.parse().map_err(core_err)?;
        let mut config = VerifyConfig { field: model.descriptor(), n_max, seed, ..VerifyConfig::default() };
        if let FieldDescriptor::Finite { p, e } = config.field {
            config.q = p.pow(e);
        }
        let report = run_suite(suite, &config).map_err(core_err)?;
        failed = !report.passed;
        write_string(out, serde_json::to_string(&report).expect("plain struct"))
    });
    if status == TworbStatus::Ok && failed {
        set_error("verification failed");
        return TworbStatus::CheckFailed;
    }
    status
}

/// Exponent table and local zeta model for one Jordan type, as JSON with
/// `series_order` series coefficients.
///
/// # Safety
/// `parts` must point to `len` readable values; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tworb_zeta_json(
    parts: *const usize,
    len: usize,
    series_order: usize,
    out: *mut *mut c_char,
) -> TworbStatus {
    guard(|| {
        let t = read_type(parts, len)?;
        let doc = local_zeta_model(&t).to_json(series_order).map_err(core_err)?;
        write_string(out, doc.to_string())
    })
}
