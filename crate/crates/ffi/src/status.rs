use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use allee_core::Error;

/// Return code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlleeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Domain = 3,
    StepFailure = 4,
    NoFixedPoint = 5,
    NoStableTarget = 6,
    ShapeMismatch = 7,
    OutOfRange = 8,
    Panic = 99,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

pub(crate) fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

impl From<&Error> for AlleeStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => AlleeStatus::Domain,
            Error::StepFailure { .. } => AlleeStatus::StepFailure,
            Error::NoFixedPoint(_) => AlleeStatus::NoFixedPoint,
            Error::NoStableTarget => AlleeStatus::NoStableTarget,
            Error::ShapeMismatch { .. } => AlleeStatus::ShapeMismatch,
            _ => AlleeStatus::InvalidParameter,
        }
    }
}

pub(crate) fn fail(status: AlleeStatus, msg: impl Into<String>) -> AlleeStatus {
    set_last_error(msg);
    status
}

pub(crate) fn from_core(e: Error) -> AlleeStatus {
    let s = AlleeStatus::from(&e);
    fail(s, e.to_string())
}

/// Run `f`, record any error message and keep panics from crossing the ABI.
pub(crate) fn guard<F>(f: F) -> AlleeStatus
where
    F: FnOnce() -> Result<(), AlleeStatus> + UnwindSafe,
{
    clear_last_error();
    match catch_unwind(f) {
        Ok(Ok(())) => AlleeStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AlleeStatus::Panic, "internal panic"),
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn allee_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn allee_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
