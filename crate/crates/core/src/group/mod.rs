//! Concrete finite 2-groups as dense multiplication tables.

mod leaves;
mod spec;
mod subset;
mod table;

use thiserror::Error;

pub use leaves::{cyclic, designated_involution, dihedral8, elementary, quaternion8};
pub use spec::{build, build_capped, GroupSpec, ParseError, DEFAULT_BUILD_CAP};
pub use subset::SubgroupSet;
pub use table::{
    classify, Classification, GroupTable, Quotient, EXHAUSTIVE_ASSOC_LIMIT, MAX_TABLE_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {0} is not a power of two")]
    NotTwoPower(usize),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("{0} has no designated central involution for a central product")]
    NoCentralInvolution(String),
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("power exponent must be at least 1")]
    ZeroPower,
}
