//! Periodic Ammann–Beenker approximants and their random-tiling ensemble.

mod approximant;
mod empirical;
mod snapshot;
mod state;

pub use approximant::{
    build_approximant, phys_f64, reconstruct_tiles, squared_length_key, Approximant, Period, Tile, Vertex4,
    DIRECTION_PAIRS, PELL_CONVERGENTS,
};
pub use empirical::{empirical_shelling, replica_shelling};
pub use snapshot::{load_snapshot, save_snapshot};
pub use state::TilingState;
