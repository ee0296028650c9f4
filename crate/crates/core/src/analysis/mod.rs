//! Cryptographic metrics of Boolean functions.

mod charsum;
mod faa;
mod immunity;
mod walsh;

pub use charsum::*;
pub use faa::*;
pub use immunity::*;
pub use walsh::*;
