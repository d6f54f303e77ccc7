//! Constructors for the instance families used in experiments and tests.

pub mod haken_luby;
pub mod matousek;
pub mod random;
pub mod subsetsum;

pub use haken_luby::{
    haken_luby, haken_luby_metadata, haken_luby_path_decomposition, hl_index, hl_m,
};
pub use matousek::{matousek, matousek_metadata, Matousek, MatousekSpec, ScopePolicy};
pub use random::{
    random_instance, random_instances, random_metadata, sample_instance, Filter, RandomSpec,
};
pub use subsetsum::{subset_sum_exists, subsetsum_metadata, subsetsum_split, subsetsum_star};
