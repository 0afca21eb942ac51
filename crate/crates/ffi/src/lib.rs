//! C ABI over the holoform engine.
//!
//! Objects cross the boundary as opaque handles (`HfForm`, `HfReport`,
//! `HfPreset`) released with their `*_free` function. Strings returned to
//! the caller are owned by the caller and released with `hf_string_free`.
//! Every entry point returns an `HfStatus`; on failure the message is kept
//! per thread and read back with `hf_last_error`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use holoform::cone::{self, expand_ansatz, growth_classify, solve_potential, ConePreset, PotentialSolution};
use holoform::holonomy::{canonical_structure, StructureKind};
use holoform::report::SuiteReport;
use holoform::verifier::{self, decompose, parse_form, run_suite, SuiteConfig};
use holoform::{ConstForm, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    WrongDegree = 5,
    NotClosed = 6,
    Unknown = 7,
    NoSolution = 8,
    Invalid = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStructure {
    G2 = 0,
    Spin7 = 1,
    Cy3 = 2,
}

impl From<HfStructure> for StructureKind {
    fn from(s: HfStructure) -> StructureKind {
        match s {
            HfStructure::G2 => StructureKind::G2,
            HfStructure::Spin7 => StructureKind::Spin7,
            HfStructure::Cy3 => StructureKind::Cy3,
        }
    }
}

/// A constant form on ℝⁿ.
pub struct HfForm(ConstForm);

/// The outcome of a verification suite.
pub struct HfReport(SuiteReport);

/// A cone or cylinder preset.
pub struct HfPreset(ConePreset);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(HfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::AxisOutOfRange { .. } | Error::Preset(_) => HfStatus::Parse,
            Error::DimensionMismatch { .. } | Error::BadDimension(_) => HfStatus::DimensionMismatch,
            Error::WrongDegree { .. } | Error::NotInSubspace(_) | Error::NonUniformDerivation => HfStatus::WrongDegree,
            Error::NotClosed(_) => HfStatus::NotClosed,
            Error::Unknown { .. } => HfStatus::Unknown,
            Error::Invalid(_) => HfStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: Option<String>) {
    let msg = msg.map(|m| CString::new(m.replace('\0', " ")).expect("interior nul removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            HfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(Some(format!("internal panic: {msg}")));
            HfStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(HfStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(HfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or NULL after a
/// successful one. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn hf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `e12 + 2/3 e47 - (1+i) e5` on ℝⁿ, axis labels starting at
/// `base` (0 or 1).
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_parse(src: *const c_char, n: usize, base: usize, out: *mut *mut HfForm) -> HfStatus {
    guard(|| {
        let f = parse_form(text(src)?, n, base)?;
        put(out, HfForm(f))
    })
}

/// A form of the canonical structure: "phi" and "psi" (G2, Spin7),
/// "Omega" (Spin7), "omega", "Omega30", "ReOmega" and "ImOmega" (CY3).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_structure_form(kind: HfStructure, name: *const c_char, out: *mut *mut HfForm) -> HfStatus {
    guard(|| {
        let name = text(name)?;
        let preset = canonical_structure(kind.into());
        let f = preset.forms.get(name).ok_or_else(|| {
            Failure::from(Error::Unknown {
                kind: "structure form",
                name: name.to_string(),
            })
        })?;
        put(out, HfForm(f.clone()))
    })
}

/// # Safety
/// `form` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hf_form_free(form: *mut HfForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Dimension of the ambient ℝⁿ, 0 for NULL.
///
/// # Safety
/// `form` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_form_dim(form: *const HfForm) -> usize {
    form.as_ref().map_or(0, |f| f.0.n())
}

/// # Safety
/// `a` and `b` must be NULL or live handles.
#[no_mangle]
pub unsafe extern "C" fn hf_form_equal(a: *const HfForm, b: *const HfForm) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_to_string(form: *const HfForm, base: usize, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, get(form)?.0.display(base)))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_add(a: *const HfForm, b: *const HfForm, out: *mut *mut HfForm) -> HfStatus {
    guard(|| {
        let (a, b) = (&get(a)?.0, &get(b)?.0);
        a.check_same_dim(b)?;
        put(out, HfForm(a + b))
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_wedge(a: *const HfForm, b: *const HfForm, out: *mut *mut HfForm) -> HfStatus {
    guard(|| {
        let w = get(a)?.0.try_wedge(&get(b)?.0)?;
        put(out, HfForm(w))
    })
}

/// Hodge star of the Euclidean metric and standard orientation.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_star(form: *const HfForm, out: *mut *mut HfForm) -> HfStatus {
    guard(|| put(out, HfForm(get(form)?.0.star())))
}

/// The bilinear pairing ⟨a, b⟩, written as an exact Gaussian rational.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_form_inner(a: *const HfForm, b: *const HfForm, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let s = get(a)?.0.try_inner(&get(b)?.0)?;
        put_string(out, s.to_string())
    })
}

/// Splits a 2-form into irreducible components; JSON on success.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_decompose_json(
    form: *const HfForm,
    kind: HfStructure,
    base: usize,
    out: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        let d = decompose(&get(form)?.0, kind.into(), base)?;
        let json = serde_json::to_string_pretty(&d).map_err(|e| Failure(HfStatus::Invalid, e.to_string()))?;
        put_string(out, json)
    })
}

/// Runs a named suite (`all` for every suite). A report with failing
/// checks is still `HF_STATUS_OK`; inspect it with `hf_report_counts`.
/// `samples` 0 selects the default.
///
/// # Safety
/// `suite` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_run_suite(suite: *const c_char, seed: u64, samples: usize, out: *mut *mut HfReport) -> HfStatus {
    guard(|| {
        let cfg = SuiteConfig {
            seed,
            samples: if samples == 0 { verifier::DEFAULT_SAMPLES } else { samples },
            timing: false,
        };
        put(out, HfReport(run_suite(text(suite)?, &cfg)?))
    })
}

/// # Safety
/// `report` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hf_report_free(report: *mut HfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Check tallies; any output pointer may be NULL.
///
/// # Safety
/// `report` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_report_counts(
    report: *const HfReport,
    pass: *mut usize,
    fail: *mut usize,
    mismatch: *mut usize,
) -> HfStatus {
    guard(|| {
        let s = get(report)?.0.summary;
        for (p, v) in [(pass, s.pass), (fail, s.fail), (mismatch, s.mismatch)] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_report_to_json(report: *const HfReport, out: *mut *mut c_char) -> HfStatus {
    guard(|| put_string(out, get(report)?.0.to_json()))
}

/// Loads a shipped preset by name or alias.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_preset_load(name: *const c_char, out: *mut *mut HfPreset) -> HfStatus {
    guard(|| put(out, HfPreset(cone::load_preset(text(name)?)?)))
}

/// Parses a preset from TOML source; `extends` may name a shipped preset.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_preset_from_toml(src: *const c_char, out: *mut *mut HfPreset) -> HfStatus {
    guard(|| put(out, HfPreset(cone::preset_from_toml(text(src)?)?)))
}

/// # Safety
/// `preset` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hf_preset_free(preset: *mut HfPreset) {
    if !preset.is_null() {
        drop(Box::from_raw(preset));
    }
}

/// Solves dβ = target over the preset's declared ansatz for that target,
/// or over r^a·g and r^a·dr∧g for every generator g with a in
/// [lo, hi]. Writes β.
///
/// # Safety
/// `preset` must be a live handle, `target` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hf_preset_solve(
    preset: *const HfPreset,
    target: *const c_char,
    lo: i32,
    hi: i32,
    out: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        let p = &get(preset)?.0;
        let src = text(target)?;
        let target = p.parse(src)?;
        let shapes = match p.potentials.iter().find(|s| s.target.trim() == src.trim()) {
            Some(spec) => spec.ansatz.clone(),
            None => p
                .base
                .generators()
                .iter()
                .flat_map(|g| {
                    let mut v = vec![format!("r^a {}", g.name), format!("r^a dr∧{}", g.name)];
                    if p.uses_t {
                        v.push(format!("t r^a {}", g.name));
                        v.push(format!("t r^a dr∧{}", g.name));
                    }
                    v
                })
                .collect(),
        };
        let k = target.degree(&p.base).unwrap_or(0);
        let basis: Vec<_> = expand_ansatz(p, &shapes, [lo, hi])?
            .into_iter()
            .filter(|m| k > 0 && m.degree(&p.base) == Some(k - 1))
            .collect();
        match solve_potential(p, &target, &basis)? {
            PotentialSolution::Solved { potential, .. } => put_string(out, p.show(&potential)),
            PotentialSolution::NoSolution => Err(Failure(HfStatus::NoSolution, "no potential in the ansatz span".into())),
        }
    })
}

/// Growth class of an element, e.g. "linear" or "r^-2".
///
/// # Safety
/// `preset` must be a live handle, `element` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hf_preset_classify(preset: *const HfPreset, element: *const c_char, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let p = &get(preset)?.0;
        let g = growth_classify(p, &p.parse(text(element)?)?)?;
        put_string(out, g.kind.to_string())
    })
}
