//! C ABI over `allee-core`. Objects are opaque handles created by
//! `allee_*_new`/producer calls and released with the matching `_free`.
//! Every fallible call returns an `AlleeStatus`; the message for the last
//! failure on the calling thread is available from
//! `allee_last_error_message`.

mod assoc;
mod dynamics;
mod status;

pub use assoc::*;
pub use dynamics::*;
pub use status::*;

macro_rules! out_ptr {
    ($p:expr) => {
        if $p.is_null() {
            return Err($crate::status::fail(
                $crate::status::AlleeStatus::NullPointer,
                concat!(stringify!($p), " is NULL"),
            ));
        }
    };
}
pub(crate) use out_ptr;
