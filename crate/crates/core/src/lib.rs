pub mod barkoszul;
pub mod cubes;
pub mod error;
pub mod exactla;
pub mod modules;
pub mod operads;
pub mod optree;
pub mod registry;
pub mod selftest;
pub mod symseq;

pub use error::{Error, Result};
