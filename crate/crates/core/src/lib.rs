//! Milnor fibre invariants of `Φ = f + z·g` for plane curve germs `f`, `g`
//! without common factor, read off the decorated common embedded resolution
//! graph of `f·g`.

pub mod algebra;
pub mod cluster;
pub mod corpus;
mod error;
pub mod fiber;
pub mod graph;
pub mod oracles;
pub mod par;
pub mod pipeline;
pub mod puiseux;
pub mod tower;
pub mod zeta;

pub use error::Error;
