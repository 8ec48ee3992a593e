//! k-centre selection over finite languages of necklaces under the overlap
//! distance: exact counting, ranking with forbidden subwords, two centre
//! samplers with closed-form guarantees, and exhaustive oracles.

pub mod counting;
pub mod error;
pub mod language;
pub mod oracle;
pub mod overlap;
pub mod rank;
pub mod samplers;
pub mod scalar;
pub mod words;

pub use error::{Error, Result};
pub use language::{Family, ForbiddenSet, LanguageSpec, ParikhVector};
pub use overlap::{overlap_distance, Distance};
pub use samplers::{CentreSet, Method};
pub use words::{canonical_rotation, cyclic_shift, Alphabet, Encoding, Necklace, Word};

/// Exact ranks and counts.
pub type Rank = num_bigint::BigUint;

/// Distances between necklaces of desk-scale length.
pub type OverlapDistance = Distance<u64>;

/// Closed-form bounds in double precision.
pub type Bounds = samplers::TheoreticalBounds<f64>;
