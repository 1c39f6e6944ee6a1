//! Finite abelian-by-cyclic Moufang loops built from construction pairs.

pub mod abelian;
pub mod error;
pub mod extension;
pub mod interval;
pub mod io;
pub mod loops;
pub mod maps;
pub mod pair;
pub mod perm;
pub mod search;

pub use abelian::AbelianGroup;
pub use error::{ForgeError, Result};
