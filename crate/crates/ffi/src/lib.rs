//! C ABI for the `superpattern` library.
//!
//! Conventions:
//! - Every fallible function returns an [`SpStatus`]; on failure a message is
//!   available from [`sp_last_error`] on the same thread.
//! - Words and simulation summaries are opaque handles freed with their
//!   `*_free` function.
//! - Strings returned through `char **` out-parameters are owned by the caller
//!   and released with [`sp_string_free`]. Rationals are formatted `p/q`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use superpattern::counts::{count_formulas, strict_count};
use superpattern::patterns::contains_pattern;
use superpattern::series::{format_rational, moments_from_gf};
use superpattern::superpatterns::missing_patterns;
use superpattern::waiting_time::{brute_force_pmf, generating_function, pmf, simulate_tau, SimSummary};
use superpattern::{classify, Budget, Error, Pattern, Word};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    NotFound = 6,
    SizeCap = 7,
    Panic = 8,
}

/// Classification flags written by [`sp_classify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpClassFlags {
    pub is_superpattern: bool,
    pub is_minimal: bool,
    pub is_strict: bool,
    pub is_minimum: bool,
}

/// A parsed word.
pub struct SpWord {
    inner: Word,
}

/// Result of [`sp_simulate`].
pub struct SpSimSummary {
    inner: SimSummary,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::Parse(_) | Error::LetterOutOfRange { .. } | Error::NonCanonicalPattern(_) => SpStatus::Parse,
        Error::BudgetExceeded { .. } => SpStatus::BudgetExceeded,
        Error::NotFound { .. } => SpStatus::NotFound,
        Error::SizeCap { .. } => SpStatus::SizeCap,
        _ => SpStatus::InvalidArgument,
    }
}

struct Fail(SpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SpStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(SpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn word_ref<'a>(word: *const SpWord) -> Result<&'a Word, Fail> {
    word.as_ref().map(|w| &w.inner).ok_or_else(|| null("word"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, value: String) -> Result<(), Fail> {
    let c = CString::new(value).map_err(|_| Fail(SpStatus::InvalidArgument, "string contains nul".into()))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word (`1213121` or `1,2,13`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_word_parse(text: *const c_char, out: *mut *mut SpWord) -> SpStatus {
    guard(|| {
        let word = Word::parse(read_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(SpWord { inner: word })))
    })
}

/// # Safety
/// `word` must be NULL or a handle from [`sp_word_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_word_free(word: *mut SpWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Number of letters, 0 for NULL.
///
/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_word_len(word: *const SpWord) -> usize {
    word.as_ref().map_or(0, |w| w.inner.len())
}

/// Copies up to `cap` letters into `buf`; returns the word length.
///
/// # Safety
/// `word` must be NULL or a live handle; `buf` must hold `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn sp_word_letters(word: *const SpWord, buf: *mut u8, cap: usize) -> usize {
    let Some(w) = word.as_ref() else { return 0 };
    let letters = w.inner.letters();
    if !buf.is_null() {
        ptr::copy_nonoverlapping(letters.as_ptr(), buf, letters.len().min(cap));
    }
    letters.len()
}

/// Classifies `word` against the length-`k` arrangements.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_classify(word: *const SpWord, k: usize, out: *mut SpClassFlags) -> SpStatus {
    guard(|| {
        let flags = classify(word_ref(word)?, k)?;
        put(
            out,
            SpClassFlags {
                is_superpattern: flags.is_superpattern,
                is_minimal: flags.is_minimal,
                is_strict: flags.is_strict,
                is_minimum: flags.is_minimum,
            },
        )
    })
}

/// Space-separated list of the length-`k` arrangements `word` misses.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_missing_patterns(word: *const SpWord, k: usize, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        let missing = missing_patterns(word_ref(word)?.letters(), k)?;
        let names: Vec<String> = missing.iter().map(ToString::to_string).collect();
        put_string(out, names.join(" "))
    })
}

/// Whether `word` contains `pattern` (dense-rank form, e.g. `1213`).
///
/// # Safety
/// `word` must be a live handle, `pattern` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_contains_pattern(word: *const SpWord, pattern: *const c_char, out: *mut bool) -> SpStatus {
    guard(|| {
        let p: Pattern = read_str(pattern, "pattern")?.parse()?;
        put(out, contains_pattern(word_ref(word)?.letters(), &p))
    })
}

/// Closed-form `P(tau = n)` for `d` in {2, 3}.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_pmf(d: usize, n: usize, out: *mut *mut c_char) -> SpStatus {
    guard(|| put_string(out, format_rational(&pmf(d, n)?)))
}

/// `P(tau = n)` by exhaustive counting. `budget` 0 selects the default cap.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_brute_force_pmf(
    d: usize,
    k: usize,
    n: usize,
    budget: u64,
    out: *mut *mut c_char,
) -> SpStatus {
    guard(|| {
        let budget = if budget == 0 {
            Budget::from_env(d)
        } else {
            Budget::new(budget)
        };
        put_string(out, format_rational(&brute_force_pmf(d, k, n, budget)?))
    })
}

/// Exact mean and variance of `tau` for `d` in {2, 3}.
///
/// # Safety
/// `mean` and `variance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_moments(d: usize, mean: *mut *mut c_char, variance: *mut *mut c_char) -> SpStatus {
    guard(|| {
        if mean.is_null() || variance.is_null() {
            return Err(null("output pointer"));
        }
        let (m, v) = moments_from_gf(&generating_function(d)?)?;
        put_string(mean, format_rational(&m))?;
        put_string(variance, format_rational(&v))
    })
}

/// Number of strict ternary superpatterns of length `n >= 7`, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_count_strict(n: usize, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        // validates n
        count_formulas(n)?;
        put_string(out, strict_count(n).to_string())
    })
}

/// One CSV row `n,gamma_total,s_mu,s_a,s_total,beta_a,beta_b,beta_total`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_count_report_csv_row(n: usize, out: *mut *mut c_char) -> SpStatus {
    guard(|| put_string(out, count_formulas(n)?.csv_record().join(",")))
}

/// Runs a seeded simulation of `tau`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_simulate(
    d: usize,
    k: usize,
    trials: u64,
    seed: u64,
    out: *mut *mut SpSimSummary,
) -> SpStatus {
    guard(|| {
        let summary = simulate_tau(d, k, trials, seed)?;
        put(out, Box::into_raw(Box::new(SpSimSummary { inner: summary })))
    })
}

/// # Safety
/// `summary` must be NULL or a handle from [`sp_simulate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_free(summary: *mut SpSimSummary) {
    if !summary.is_null() {
        drop(Box::from_raw(summary));
    }
}

/// Sample mean, NaN for NULL.
///
/// # Safety
/// `summary` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_mean(summary: *const SpSimSummary) -> f64 {
    summary.as_ref().map_or(f64::NAN, |s| s.inner.sample_mean)
}

/// Unbiased sample variance, NaN for NULL.
///
/// # Safety
/// `summary` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_variance(summary: *const SpSimSummary) -> f64 {
    summary.as_ref().map_or(f64::NAN, |s| s.inner.sample_variance)
}

/// Number of trials, 0 for NULL.
///
/// # Safety
/// `summary` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_trials(summary: *const SpSimSummary) -> u64 {
    summary.as_ref().map_or(0, |s| s.inner.trials)
}

/// How many trials stopped at exactly `n`.
///
/// # Safety
/// `summary` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_count(summary: *const SpSimSummary, n: usize) -> u64 {
    summary
        .as_ref()
        .and_then(|s| s.inner.histogram.get(&n).copied())
        .unwrap_or(0)
}

/// Smallest observed stopping time, 0 for NULL or no trials.
///
/// # Safety
/// `summary` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_sim_summary_min(summary: *const SpSimSummary) -> usize {
    summary.as_ref().and_then(|s| s.inner.min_observed()).unwrap_or(0)
}
