//! Seeded random instances and small named fixtures, shared by the tests,
//! the examples and the acceptance suite.

mod categories;
mod fixtures;
mod frames;
mod preord;

pub use categories::{random_equiv_spec, with_d, InstanceBounds, RandomTwoCategory};
pub use preord::{random_cell_square, random_numeric_object, CellSquare};
pub use frames::{
    random_bridge_instance, random_family, random_family_maybe_degenerate, random_field, random_matrix, random_phases, random_psd_pair, random_unitary,
    PairKind, PsdPair,
};
pub use fixtures::{chain_category, swap_action, terminal_two_category, two_cell_chain};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere a seed is accepted.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
