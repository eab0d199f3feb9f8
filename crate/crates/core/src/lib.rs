#![allow(clippy::needless_range_loop)]

pub mod cert;
pub mod claims;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod groebner;
pub mod joinmeet;
pub mod lattice;
pub mod poly;
pub mod structure;

pub use error::{Error, Result};
