//! Graph families built on top of B(q): the modified graph H, chains of
//! copies of H, and the periodic layered families.

mod chain;
mod figures;
mod gadget;
mod h;
mod search;
mod square;

use thiserror::Error;

pub use chain::{chain_bridge, chain_identify, ChainGraph, ChainMode};
pub use figures::{
    build_figure1, build_figure1b, figure1_profile, figure1b_cap, Figure1b, FIGURE1B_CAP_Q,
    FIGURE1B_CAP_K,
};
pub use gadget::{
    frozen_gadget, gadgets_to_asset, parse_gadgets, Block, Family, LayeredGadget, LayeredInstance,
    Slot, FROZEN_GADGETS,
};
pub use h::{build_h, HGraph};
pub use search::{derive_gadget, SearchStats};
pub use square::{find_square_independent, find_square_independent_ordered};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("unsupported parameter: {0}")]
    InvalidParameter(String),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("gadget unavailable: {0}")]
    GadgetUnavailable(String),
}

pub(crate) fn violation(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::StructureViolation(msg.into())
}
