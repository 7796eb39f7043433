//! C ABI for `bsdefect`.
//!
//! A `BsdContext` fixes the Cartan datum and the coefficient field. Results
//! are returned as JSON strings allocated by the library; release them with
//! `bsd_string_free`. Every function returns a `BsdStatus`; on failure
//! `bsd_last_error_message` describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bsdefect::cli::{self, Command, RunConfig};
use bsdefect::defect;
use bsdefect::exactalg::Field;
use bsdefect::rootsys::{CartanDatum, CartanType};
use bsdefect::weyl::WeylGroup;
use bsdefect::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BsdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NonGkmInput = 4,
    NotReduced = 5,
    NotApplicable = 6,
    Internal = 7,
    Io = 8,
    Panic = 9,
}

/// Opaque handle: Cartan datum, Weyl group and field.
pub struct BsdContext {
    kind: CartanType,
    rank: usize,
    affine: bool,
    field: Field,
    group: WeylGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> BsdStatus {
    match e {
        Error::NonGkmInput { .. } => BsdStatus::NonGkmInput,
        Error::NotReduced(_) => BsdStatus::NotReduced,
        Error::NotApplicable(_) => BsdStatus::NotApplicable,
        Error::InternalInvariant(_) => BsdStatus::Internal,
        Error::Io(_) => BsdStatus::Io,
        _ => BsdStatus::InvalidArgument,
    }
}

fn fail(status: BsdStatus, message: &str) -> BsdStatus {
    set_error(message);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), BsdStatus>) -> BsdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BsdStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(BsdStatus::Panic, "panic inside bsdefect"),
    }
}

fn lift<T>(r: bsdefect::Result<T>) -> Result<T, BsdStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn optional_str<'a>(p: *const c_char) -> Result<Option<&'a str>, BsdStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| fail(BsdStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn required_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, BsdStatus> {
    optional_str(p)?.ok_or_else(|| fail(BsdStatus::NullPointer, &format!("{name} is null")))
}

unsafe fn context<'a>(ctx: *const BsdContext) -> Result<&'a BsdContext, BsdStatus> {
    ctx.as_ref().ok_or_else(|| fail(BsdStatus::NullPointer, "context is null"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), BsdStatus> {
    if out.is_null() {
        return Err(fail(BsdStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(text).map_err(|_| fail(BsdStatus::Internal, "result contains a NUL byte"))?;
    *out = c.into_raw();
    Ok(())
}

impl BsdContext {
    fn config(&self, command: Command, word: Option<&str>, x: Option<&str>) -> RunConfig {
        RunConfig {
            command,
            kind: self.kind,
            rank: self.rank,
            affine: self.affine,
            field: self.field,
            word: word.map(str::to_string),
            x: x.map(str::to_string),
            n: None,
            cache_dir: None,
            threads: None,
            pretty: false,
            allow_nonreduced: false,
            verify_cache: false,
            dot: false,
        }
    }
}

/// Creates a context for Cartan type `type_label` (e.g. "A") of rank `rank`
/// over the field of characteristic `characteristic` (0 or an odd prime).
///
/// # Safety
/// `type_label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bsd_context_new(
    type_label: *const c_char,
    rank: u32,
    affine: bool,
    characteristic: u64,
    out: *mut *mut BsdContext,
) -> BsdStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(BsdStatus::NullPointer, "output pointer is null"));
        }
        let label = required_str(type_label, "type_label")?;
        let kind = lift(CartanType::parse(label))?;
        let datum = lift(CartanDatum::new(kind, rank as usize, affine))?;
        let field = lift(Field::new(characteristic))?;
        let ctx = BsdContext { kind, rank: rank as usize, affine, field, group: WeylGroup::new(datum) };
        *out = Box::into_raw(Box::new(ctx));
        Ok(())
    })
}

/// # Safety
/// `ctx` must come from `bsd_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bsd_context_free(ctx: *mut BsdContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Runs a CLI command (`"grk"`, `"defect"`, `"tree"`, ...) and writes its
/// JSON result. `word` and `x` may be null; `n < 0` means unset.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bsd_run(
    ctx: *const BsdContext,
    command: *const c_char,
    word: *const c_char,
    x: *const c_char,
    n: i64,
    out: *mut *mut c_char,
) -> BsdStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let name = required_str(command, "command")?;
        let command = parse_command(name).ok_or_else(|| fail(BsdStatus::InvalidArgument, &format!("unknown command {name}")))?;
        let mut config = ctx.config(command, optional_str(word)?, optional_str(x)?);
        config.n = u64::try_from(n).ok();
        let value = lift(cli::dispatch(&config))?;
        write_string(out, value.to_string())
    })
}

fn parse_command(name: &str) -> Option<Command> {
    let all = [
        Command::Roots,
        Command::Group,
        Command::Gkm,
        Command::Tree,
        Command::Grk,
        Command::Phi,
        Command::Defect,
        Command::Decompose,
        Command::Character,
        Command::Kl,
        Command::Census,
    ];
    all.into_iter().find(|c| c.name() == name)
}

/// Graded rank of `B(s)^x` as a Laurent polynomial JSON object.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bsd_graded_rank(
    ctx: *const BsdContext,
    word: *const c_char,
    x: *const c_char,
    out: *mut *mut c_char,
) -> BsdStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let config = ctx.config(Command::Grk, Some(required_str(word, "word")?), Some(required_str(x, "x")?));
        let value = lift(cli::dispatch(&config))?;
        write_string(out, value["grk"].to_string())
    })
}

/// Defect at `x` of `B(s)` as a Laurent polynomial JSON object.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bsd_defect(
    ctx: *const BsdContext,
    word: *const c_char,
    x: *const c_char,
    out: *mut *mut c_char,
) -> BsdStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let config = ctx.config(Command::Defect, Some(required_str(word, "word")?), Some(required_str(x, "x")?));
        let value = lift(cli::dispatch(&config))?;
        write_string(out, value["defect"].to_string())
    })
}

/// Decomposition of `B(s)` as a JSON array of `{"z", "r", "mult"}`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bsd_decompose(
    ctx: *const BsdContext,
    word: *const c_char,
    allow_nonreduced: bool,
    out: *mut *mut c_char,
) -> BsdStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let mut config = ctx.config(Command::Decompose, Some(required_str(word, "word")?), None);
        config.allow_nonreduced = allow_nonreduced;
        let value = lift(cli::dispatch(&config))?;
        write_string(out, value["decomposition"].to_string())
    })
}

/// Number of `n`-reachable elements of the (finite) Weyl group.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bsd_census(ctx: *const BsdContext, n: u64, out: *mut u64) -> BsdStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if out.is_null() {
            return Err(fail(BsdStatus::NullPointer, "output pointer is null"));
        }
        *out = lift(defect::census(&ctx.group, n))? as u64;
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bsd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn bsd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
