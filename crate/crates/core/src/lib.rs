//! Self-dual double and bordered α-circulant codes over `Z_{p^m}`.
//!
//! The crate covers the chain-ring arithmetic, α-circulant algebra, the
//! monomial equivalences used to reduce the search space, the lifting of
//! self-dual codes from `Z_{p^{m-1}}` to `Z_{p^m}`, and an exact minimum
//! Lee distance engine. The `circlift` binary drives searches on top of it.

pub mod circulant;
pub mod distance;
pub mod equivalence;
pub mod error;
pub mod lift;
pub mod linalg;
pub mod record;
pub mod ring;
pub mod search;

pub use circulant::{Border, CircVec, CodeKind, CodeSpec, DenseMatrix};
pub use distance::{min_hamming_distance, min_lee_distance, DistanceEngine, Metric};
pub use error::{Error, Result};
pub use ring::{ChainRing, RingElem};
pub use record::{verify_record, Family, SearchRecord};
pub use search::{run_search, SearchConfig, SearchOutcome};
