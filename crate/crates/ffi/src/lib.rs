//! C ABI over the `manner_forge` library.
//!
//! Conventions:
//! - Every fallible function returns an [`MfStatus`]; on failure a message is
//!   available from [`mf_last_error`] on the same thread until the next call.
//! - Results are written through out-pointers, which are left untouched on
//!   failure.
//! - Strings are NUL-terminated UTF-8. Strings returned by this library must
//!   be released with [`mf_string_free`]; handles with their `*_free`
//!   function. Passing NULL to a `*_free` function is a no-op.
//! - Symbol sequences are space-separated tokens; headings are `north`,
//!   `east`, `south` or `west`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use manner_forge::dsl::{
    apply_program, builtin_by_name, ground, parse_program, serialize_program, AdverbProgram, Mode,
};
use manner_forge::forge::{self, read_dataset, write_dataset, Dataset, ExampleRecord, ForgeConfig};
use manner_forge::gridworld::{
    execute_with, goal_satisfied, parse_symbols, symbols_to_string, ActionSymbol, Command, Heading, Verb, WorldState,
};
use manner_forge::harness::{evaluate, exact_match, parse_predictions};
use manner_forge::meta::{sample_registry, Lexicon, MetaGrammarConfig, Registry, TypeWeights};
use manner_forge::oracle::{solve, transform, OracleConfig, Plan};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Symbols, headings, commands or JSON could not be parsed.
    ParseError = 3,
    /// Program text was invalid or rewriting failed.
    DslError = 4,
    /// A generation config or adverb registry was rejected.
    ConfigError = 5,
    /// The command has no solution in the given world.
    OracleError = 6,
    /// Reading or writing files failed.
    IoError = 7,
    /// A dataset directory failed verification.
    DatasetError = 8,
    /// An index was outside the valid range.
    OutOfRange = 9,
    /// Predictions did not cover the requested splits.
    EvalError = 10,
    /// The library panicked; this is a bug.
    Panic = 11,
}

/// A parsed adverb program.
pub struct MfProgram(AdverbProgram);

/// The builtin adverbs plus an optional registry of extra adverbs.
pub struct MfLexicon(Lexicon);

/// An in-memory dataset.
pub struct MfDataset {
    dataset: Dataset,
    digest: String,
}

struct Failure(MfStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn failure<E: std::fmt::Display>(status: MfStatus) -> impl FnOnce(E) -> Failure {
    move |e| Failure(status, e.to_string())
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> MfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MfStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            MfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(ptr: *const c_char, name: &str) -> FfiResult<&'a str> {
    if ptr.is_null() {
        return Err(Failure(MfStatus::NullArgument, format!("`{name}` is NULL")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure(MfStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(ptr: *const T, name: &str) -> FfiResult<&'a T> {
    ptr.as_ref().ok_or_else(|| Failure(MfStatus::NullArgument, format!("`{name}` is NULL")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(MfStatus::NullArgument, format!("`{name}` is NULL")));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(MfStatus::NullArgument, "`out` is NULL".into()));
    }
    let c = CString::new(s).map_err(failure(MfStatus::ParseError))?;
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(Failure(MfStatus::NullArgument, "`out` is NULL".into()));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn symbols(text: &str) -> FfiResult<Vec<ActionSymbol>> {
    parse_symbols(text).map_err(failure(MfStatus::ParseError))
}

fn heading(text: &str) -> FfiResult<Heading> {
    text.parse().map_err(failure(MfStatus::ParseError))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, freed only once.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses program text.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_program_parse(text: *const c_char, out: *mut *mut MfProgram) -> MfStatus {
    guard(|| {
        let program = parse_program(str_arg(text, "text")?).map_err(failure(MfStatus::DslError))?;
        put_handle(out, MfProgram(program))
    })
}

/// Looks up a builtin adverb program by surface (`_` may replace spaces).
///
/// # Safety
/// `name` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_program_builtin(name: *const c_char, out: *mut *mut MfProgram) -> MfStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let program = builtin_by_name(name)
            .ok_or_else(|| Failure(MfStatus::OutOfRange, format!("no builtin adverb `{name}`")))?;
        put_handle(out, MfProgram(program))
    })
}

/// # Safety
/// `program` must be NULL or a live handle, freed only once.
#[no_mangle]
pub unsafe extern "C" fn mf_program_free(program: *mut MfProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Canonical program text.
///
/// # Safety
/// `program` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_program_serialize(program: *const MfProgram, out: *mut *mut c_char) -> MfStatus {
    guard(|| put_string(out, serialize_program(&ref_arg(program, "program")?.0)))
}

/// Applies the program's rewriting passes without grounding.
///
/// # Safety
/// `program` must be a live handle, `input` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_program_apply(
    program: *const MfProgram,
    input: *const c_char,
    max_depth: u32,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let program = &ref_arg(program, "program")?.0;
        let seq = symbols(str_arg(input, "input")?)?;
        let rewritten = apply_program(program, &seq, max_depth).map_err(failure(MfStatus::DslError))?;
        put_string(out, symbols_to_string(&rewritten))
    })
}

/// Rewrites `input` with the program, then grounds it from `start_heading`.
///
/// # Safety
/// `program` must be a live handle, strings valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_program_transform(
    program: *const MfProgram,
    input: *const c_char,
    start_heading: *const c_char,
    max_depth: u32,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let program = &ref_arg(program, "program")?.0;
        let seq = symbols(str_arg(input, "input")?)?;
        let start = heading(str_arg(start_heading, "start_heading")?)?;
        let mode = if seq.iter().any(|s| s.is_allo()) { Mode::Allocentric } else { Mode::Egocentric };
        let result = transform(&Plan { mode, symbols: seq }, &[], Some(program), start, max_depth)
            .map_err(failure(MfStatus::DslError))?;
        put_string(out, symbols_to_string(&result))
    })
}

/// Grounds allocentric symbols to egocentric primitives.
///
/// # Safety
/// Strings must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_ground(
    input: *const c_char,
    start_heading: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let seq = symbols(str_arg(input, "input")?)?;
        let start = heading(str_arg(start_heading, "start_heading")?)?;
        put_string(out, symbols_to_string(&ground(&seq, start)))
    })
}

/// Token-for-token equality of two symbol strings.
///
/// # Safety
/// Strings must be valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_exact_match(prediction: *const c_char, target: *const c_char, out: *mut bool) -> MfStatus {
    guard(|| {
        let p: Vec<&str> = str_arg(prediction, "prediction")?.split_whitespace().collect();
        let t: Vec<&str> = str_arg(target, "target")?.split_whitespace().collect();
        put(out, exact_match(&p, &t), "out")
    })
}

/// Builds a lexicon of the builtins plus the adverbs in `registry_text`
/// (NULL for builtins only).
///
/// # Safety
/// `registry_text` must be NULL or a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_new(registry_text: *const c_char, out: *mut *mut MfLexicon) -> MfStatus {
    guard(|| {
        let registry = if registry_text.is_null() {
            Registry::default()
        } else {
            Registry::from_text(str_arg(registry_text, "registry_text")?).map_err(failure(MfStatus::ConfigError))?
        };
        let lexicon = Lexicon::new(&registry).map_err(failure(MfStatus::ConfigError))?;
        put_handle(out, MfLexicon(lexicon))
    })
}

/// # Safety
/// `lexicon` must be NULL or a live handle, freed only once.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_free(lexicon: *mut MfLexicon) {
    if !lexicon.is_null() {
        drop(Box::from_raw(lexicon));
    }
}

/// Number of adverbs in the lexicon.
///
/// # Safety
/// `lexicon` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_lexicon_len(lexicon: *const MfLexicon, out: *mut usize) -> MfStatus {
    guard(|| put(out, ref_arg(lexicon, "lexicon")?.0.len(), "out"))
}

/// Samples `n` extra adverbs and returns the registry text. `weights` is
/// NULL or `spinning=..,cautiously=..,detour=..`.
///
/// # Safety
/// `weights` must be NULL or a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_registry_sample(
    seed: u64,
    n: usize,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let mut cfg = MetaGrammarConfig::default();
        if !weights.is_null() {
            cfg.type_weights =
                TypeWeights::parse(str_arg(weights, "weights")?).map_err(failure(MfStatus::ConfigError))?;
        }
        let registry = sample_registry(seed, n, &cfg).map_err(failure(MfStatus::ConfigError))?;
        put_string(out, registry.to_text())
    })
}

/// Ground-truth action sequence for `command` in the situation JSON.
///
/// # Safety
/// `lexicon` must be a live handle, strings valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_solve(
    lexicon: *const MfLexicon,
    world_json: *const c_char,
    command: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let lexicon = &ref_arg(lexicon, "lexicon")?.0;
        let world: WorldState =
            serde_json::from_str(str_arg(world_json, "world_json")?).map_err(failure(MfStatus::ParseError))?;
        let command = Command::parse(str_arg(command, "command")?).map_err(failure(MfStatus::ParseError))?;
        let target =
            solve(&command, &world, lexicon, &OracleConfig::default()).map_err(failure(MfStatus::OracleError))?;
        put_string(out, symbols_to_string(&target))
    })
}

/// Executes `actions` in the situation. `*executed` is false if execution
/// fails; `*goal` tells whether the `verb` goal holds afterwards.
///
/// # Safety
/// Strings must be valid C strings; `executed` and `goal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_execute(
    world_json: *const c_char,
    actions: *const c_char,
    verb: *const c_char,
    executed: *mut bool,
    goal: *mut bool,
) -> MfStatus {
    guard(|| {
        let world: WorldState =
            serde_json::from_str(str_arg(world_json, "world_json")?).map_err(failure(MfStatus::ParseError))?;
        let seq = symbols(str_arg(actions, "actions")?)?;
        let verb: Verb = str_arg(verb, "verb")?.parse().map_err(failure(MfStatus::ParseError))?;
        let result = execute_with(&world, &seq, &OracleConfig::default().physics);
        put(executed, result.is_ok(), "executed")?;
        put(goal, result.is_ok_and(|t| goal_satisfied(verb, &t)), "goal")
    })
}

/// Generates a dataset from TOML config text on `jobs` threads (0 = all
/// cores).
///
/// # Safety
/// `config_toml` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_generate(
    config_toml: *const c_char,
    jobs: usize,
    out: *mut *mut MfDataset,
) -> MfStatus {
    guard(|| {
        let cfg =
            ForgeConfig::from_toml(str_arg(config_toml, "config_toml")?).map_err(failure(MfStatus::ConfigError))?;
        let dataset = forge::forge(&cfg, jobs).map_err(failure(MfStatus::ConfigError))?;
        let digest = dataset.summary().digest();
        put_handle(out, MfDataset { dataset, digest })
    })
}

/// Reads and verifies a dataset directory.
///
/// # Safety
/// `dir` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_read(dir: *const c_char, out: *mut *mut MfDataset) -> MfStatus {
    guard(|| {
        let (dataset, manifest) =
            read_dataset(Path::new(str_arg(dir, "dir")?)).map_err(failure(MfStatus::DatasetError))?;
        put_handle(out, MfDataset { dataset, digest: manifest.digest() })
    })
}

/// Writes the dataset into `dir`, which is created if missing.
///
/// # Safety
/// `dataset` must be a live handle and `dir` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_write(dataset: *mut MfDataset, dir: *const c_char) -> MfStatus {
    guard(|| {
        let dataset = dataset.as_mut().ok_or_else(|| Failure(MfStatus::NullArgument, "`dataset` is NULL".into()))?;
        let manifest =
            write_dataset(&dataset.dataset, Path::new(str_arg(dir, "dir")?)).map_err(failure(MfStatus::IoError))?;
        dataset.digest = manifest.digest();
        Ok(())
    })
}

/// # Safety
/// `dataset` must be NULL or a live handle, freed only once.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_free(dataset: *mut MfDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Number of examples.
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_len(dataset: *const MfDataset, out: *mut usize) -> MfStatus {
    guard(|| put(out, ref_arg(dataset, "dataset")?.dataset.examples.len(), "out"))
}

/// Manifest digest identifying the dataset (after writing or reading; an
/// unwritten dataset reports the digest of its manifest without file
/// digests).
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_digest(dataset: *const MfDataset, out: *mut *mut c_char) -> MfStatus {
    guard(|| put_string(out, ref_arg(dataset, "dataset")?.digest.clone()))
}

/// Example `index` as its persisted JSON record.
///
/// # Safety
/// `dataset` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mf_dataset_example_json(
    dataset: *const MfDataset,
    index: usize,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let ds = &ref_arg(dataset, "dataset")?.dataset;
        let ex = ds
            .examples
            .get(index)
            .ok_or_else(|| Failure(MfStatus::OutOfRange, format!("index {index} of {}", ds.examples.len())))?;
        let record = ExampleRecord::from_example(ex, ds.splits.first());
        let value = serde_json::to_value(&record).map_err(failure(MfStatus::ParseError))?;
        put_string(out, value.to_string())
    })
}

/// Scores predictions (one `{"index", "prediction"}` JSON object per line)
/// on the comma-separated splits and returns the report JSON.
///
/// # Safety
/// `dataset` must be a live handle, strings valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_evaluate(
    dataset: *const MfDataset,
    splits: *const c_char,
    predictions: *const c_char,
    out: *mut *mut c_char,
) -> MfStatus {
    guard(|| {
        let ds = ref_arg(dataset, "dataset")?;
        let names: Vec<&str> = str_arg(splits, "splits")?.split(',').map(str::trim).collect();
        let preds = parse_predictions(str_arg(predictions, "predictions")?).map_err(failure(MfStatus::ParseError))?;
        let report = evaluate(&ds.dataset, &ds.digest, &names, &preds).map_err(failure(MfStatus::EvalError))?;
        let value = serde_json::to_value(&report).map_err(failure(MfStatus::ParseError))?;
        put_string(out, value.to_string())
    })
}
