//! Binary Boolean valued constraint satisfaction problems and the fitness
//! landscapes they implement: structural recognition, brute-force oracles,
//! local search rules and instance generators.

pub mod analysis;
pub mod assignment;
pub mod error;
pub mod fitness;
pub mod format;
pub mod generators;
pub mod instance;
pub mod oracle;
pub mod rng;
pub mod search;

pub use assignment::{Assignment, PartialAssignment};
pub use error::{AnalysisError, CoreError, GeneratorError, OracleError, SearchError};
pub use fitness::FitnessValue;
pub use instance::{
    improving_flips, is_local_peak, out_in_maps, FlipMaps, Landscape, VcspInstance,
};
