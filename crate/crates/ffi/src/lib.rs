//! C ABI over the `counterpoint` crate.
//!
//! Every fallible function returns a [`CpStatus`] and writes results through
//! out-pointers. On failure, [`cp_last_error_message`] describes the error
//! for the calling thread. Engines are opaque handles created by
//! `cp_engine_new_*` and released with [`cp_engine_free`].
//!
//! Enumerations passed *into* the library travel as `uint32_t` holding a
//! [`CpVariant`] or [`CpSemantics`] value, so that out-of-range values are
//! rejected instead of being undefined behavior.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use counterpoint::compare::{Comparison, Semantics};
use counterpoint::model::{verdict_totals, CounterpointModel, Variant, VerdictKind};
use counterpoint::reduction::{enumerate_reduced, ReducedProgression, ReducedStyle, Refined};
use counterpoint::scale::Scale;
use counterpoint::strict::{classify_strict, Category, StrictProgression};
use counterpoint::{Dichotomy, Error, Residue};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConsonant = 3,
    NotStrong = 4,
    PreliminaryRule = 5,
    NoPreimage = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpVariant {
    Classical = 0,
    Idempotent = 1,
    LocalGlobalNilpotent = 2,
    LocalGlobalIdempotent = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpSemantics {
    Original = 0,
    Refined = 1,
    Starred = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpVerdict {
    Allowed = 0,
    Forbidden = 1,
    NonPolarized = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpCategory {
    Inadmissible = 0,
    Bad = 1,
    Good = 2,
}

/// Sub-label of good reduced progressions; `None` otherwise.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpRefined {
    None = 0,
    GoodGood = 1,
    GoodBad = 2,
    Ambiguous = 3,
}

/// A model for one variant over one dichotomy, with the scale used to
/// enumerate progressions.
pub struct CpEngine {
    model: CounterpointModel,
    scale: Scale,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotConsonant(_) => CpStatus::NotConsonant,
            Error::NotStrong { .. } => CpStatus::NotStrong,
            Error::PreliminaryRule(_) => CpStatus::PreliminaryRule,
            Error::EmptyPreimage(_) => CpStatus::NoPreimage,
            _ => CpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CpStatus::NullPointer, format!("{what} is null"))
}

fn call(f: impl FnOnce() -> Result<(), Failure>) -> CpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CpStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CpStatus::Panic
        }
    }
}

/// Writes through `out` after a null check.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn variant(v: u32) -> Result<Variant, Failure> {
    Variant::ALL
        .get(v as usize)
        .copied()
        .ok_or_else(|| Failure(CpStatus::InvalidArgument, format!("unknown variant {v}")))
}

fn semantics(s: u32) -> Result<Semantics, Failure> {
    Semantics::ALL
        .get(s as usize)
        .copied()
        .ok_or_else(|| Failure(CpStatus::InvalidArgument, format!("unknown semantics {s}")))
}

fn verdict_code(v: VerdictKind) -> CpVerdict {
    match v {
        VerdictKind::Allowed => CpVerdict::Allowed,
        VerdictKind::Forbidden => CpVerdict::Forbidden,
        VerdictKind::NonPolarized => CpVerdict::NonPolarized,
    }
}

fn category_code(c: Category) -> CpCategory {
    match c {
        Category::Inadmissible => CpCategory::Inadmissible,
        Category::Bad => CpCategory::Bad,
        Category::Good => CpCategory::Good,
    }
}

fn reduced_style() -> &'static ReducedStyle {
    static STYLE: OnceLock<ReducedStyle> = OnceLock::new();
    STYLE.get_or_init(ReducedStyle::standard)
}

fn engine<'a>(e: *const CpEngine) -> Result<&'a CpEngine, Failure> {
    // SAFETY: callers pass a handle from cp_engine_new_* that has not been freed
    unsafe { e.as_ref() }.ok_or_else(|| null("engine"))
}

/// Engine over the standard dichotomy of `Z_12` and the diatonic scale.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_new_standard(variant_code: u32, out: *mut *mut CpEngine) -> CpStatus {
    call(|| {
        let v = variant(variant_code)?;
        let model = CounterpointModel::new(&Dichotomy::standard(), v)?;
        let handle = Box::into_raw(Box::new(CpEngine {
            model,
            scale: Scale::diatonic(),
        }));
        write(out, handle, "out").inspect_err(|_| drop(Box::from_raw(handle)))
    })
}

/// Engine over the dichotomy of `Z_n` with the given consonances (the rest
/// are dissonances). Verdict totals range over all pitch classes unless
/// `n = 12`, where the diatonic scale is used.
///
/// # Safety
/// `consonances` must point to `len` readable values; `out` must be valid
/// for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_new_custom(
    n: u32,
    consonances: *const i64,
    len: usize,
    variant_code: u32,
    out: *mut *mut CpEngine,
) -> CpStatus {
    call(|| {
        if consonances.is_null() {
            return Err(null("consonances"));
        }
        let k = std::slice::from_raw_parts(consonances, len);
        let v = variant(variant_code)?;
        let dich = Dichotomy::from_consonances(n, k)?;
        let model = CounterpointModel::new(&dich, v)?;
        let scale = if n == 12 {
            Scale::diatonic()
        } else {
            Scale::new(n, &(0..n as i64).collect::<Vec<_>>())?
        };
        let handle = Box::into_raw(Box::new(CpEngine { model, scale }));
        write(out, handle, "out").inspect_err(|_| drop(Box::from_raw(handle)))
    })
}

/// Releases an engine; null is ignored.
///
/// # Safety
/// `engine` must be null or a handle from `cp_engine_new_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_free(engine: *mut CpEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// # Safety
/// `engine` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_modulus(engine: *const CpEngine, out: *mut u32) -> CpStatus {
    call(|| {
        let e = self::engine(engine)?;
        write(out, e.model.dichotomy().modulus(), "out")
    })
}

/// Verdict on the reduced progression `(kτ, c' + k'τ)`.
///
/// # Safety
/// `engine` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_verdict(
    engine: *const CpEngine,
    k: i64,
    c_next: i64,
    k_next: i64,
    out: *mut CpVerdict,
) -> CpStatus {
    call(|| {
        let e = self::engine(engine)?;
        let n = e.model.dichotomy().modulus();
        let p = ReducedProgression::new(k, c_next, k_next, n, e.model.flavor())?;
        let v = e.model.verdict(&p)?;
        write(out, verdict_code(v.value), "out")
    })
}

/// Number of admitted successors of `kτ`.
///
/// # Safety
/// `engine` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_successor_count(engine: *const CpEngine, k: i64, out: *mut usize) -> CpStatus {
    call(|| {
        let e = self::engine(engine)?;
        let k = Residue::new(k, e.model.dichotomy().modulus())?;
        write(out, e.model.entry(k)?.successors.len(), "out")
    })
}

/// Allowed, forbidden and non-polarized counts over the engine's
/// progressions, written to `out[0..3]`.
///
/// # Safety
/// `engine` must be a live handle; `out` valid for three writes.
#[no_mangle]
pub unsafe extern "C" fn cp_engine_verdict_totals(engine: *const CpEngine, out: *mut usize) -> CpStatus {
    call(|| {
        let e = self::engine(engine)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let progs = enumerate_reduced(e.model.dichotomy(), &e.scale, e.model.flavor())?;
        let totals = verdict_totals(&e.model.verdicts(&progs)?);
        std::ptr::copy_nonoverlapping(totals.as_ptr(), out, 3);
        Ok(())
    })
}

/// Category of the strict progression `(c, d) -> (c', d')`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_classify_strict(c: i64, d: i64, c_next: i64, d_next: i64, out: *mut CpCategory) -> CpStatus {
    call(|| {
        let p = StrictProgression::new(c, d, c_next, d_next);
        let label = classify_strict(&p, &Scale::diatonic())?;
        write(out, category_code(label.category), "out")
    })
}

/// Category and refined label of the reduced progression `(k, c', k')`.
///
/// # Safety
/// `category` and `refined` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_classify_reduced(
    k: i64,
    c_next: i64,
    k_next: i64,
    category: *mut CpCategory,
    refined: *mut CpRefined,
) -> CpStatus {
    call(|| {
        let p = ReducedProgression::new(k, c_next, k_next, 12, counterpoint::Flavor::Nilpotent)?;
        let label = reduced_style().classify(&p)?;
        let r = match label.refined {
            Some(Refined::GoodGood) => CpRefined::GoodGood,
            Some(Refined::GoodBad) => CpRefined::GoodBad,
            Some(Refined::Ambiguous) => CpRefined::Ambiguous,
            None => CpRefined::None,
        };
        if refined.is_null() {
            return Err(null("refined"));
        }
        write(category, category_code(label.category), "category")?;
        write(refined, r, "refined")
    })
}

/// Matches and mismatches of a variant against the reduced strict style.
///
/// # Safety
/// `matches` and `mismatches` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cp_match_metrics(
    variant_code: u32,
    semantics_code: u32,
    matches: *mut usize,
    mismatches: *mut usize,
) -> CpStatus {
    call(|| {
        let v = variant(variant_code)?;
        let s = semantics(semantics_code)?;
        if matches.is_null() || mismatches.is_null() {
            return Err(null("out"));
        }
        let model = CounterpointModel::new(&Dichotomy::standard(), v)?;
        let m = Comparison::new(reduced_style(), &model)?.cross_table(s).metrics();
        write(matches, m.matches, "matches")?;
        write(mismatches, m.mismatches, "mismatches")
    })
}

/// Message for the last failed call on this thread, or the empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    static VERSION: OnceLock<CString> = OnceLock::new();
    VERSION
        .get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap())
        .as_ptr()
}
