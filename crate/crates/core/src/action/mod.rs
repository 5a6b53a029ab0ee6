//! Finite group actions and their delooped slices.
//!
//! A left action of `G` on `E` gives a one-object 2-category whose 1-cells
//! are chains in `E` and whose 2-cells relabel each link by a group element.
//! Two elements of `E` are equivalent as length-one chains exactly when they
//! share an orbit; [`DeloopedEquivalence`] checks this by witness search.

mod deloop;
mod group;

use thiserror::Error;

use crate::equiv::EquivError;
use crate::kernel::KernelError;

pub use deloop::{delooped_equivalent, DeloopCell, DeloopSlice, DeloopedEquivalence, MAX_CHAIN_LENGTH};
pub use group::{ActionSpec, FiniteGroup, GroupAction, GroupSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("malformed input: {0}")]
    Schema(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("slice too large: {0}")]
    SliceTooLarge(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Equiv(#[from] EquivError),
}
