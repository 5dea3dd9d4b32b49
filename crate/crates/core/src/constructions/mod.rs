//! Named group families, construction expressions and the group catalog.

mod catalog;
pub mod families;
mod spec;
mod table;

use thiserror::Error;

use crate::perm::GroupError;
use crate::presentation::PresentationError;

pub use catalog::{
    load_catalog, parse_catalog, Catalog, CatalogEntry, CatalogError, SmallGroupId, BUNDLED_CATALOG,
};
pub use spec::{action_letters, semidirect_product, GroupSpec};
pub use table::from_cayley_table;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("declared order {declared} but realized {realized}")]
    OrderMismatch { declared: u64, realized: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Parses and builds a construction expression.
pub fn build(text: &str) -> Result<crate::perm::FiniteGroup, ConstructionError> {
    GroupSpec::parse(text)?.build()
}
