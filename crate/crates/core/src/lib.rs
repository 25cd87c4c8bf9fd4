pub mod engine;
pub mod formulas;
pub mod gf2;
pub mod group;
pub mod oracle;
pub mod quadform;
pub mod scalar;
pub mod tables;
pub mod verify;

pub use scalar::CountScalar;
pub use tables::{CensusTable, EProfile, SectionCensus, SectionClass};

/// Arbitrary-precision subgroup count.
pub type Count = num_bigint::BigUint;
