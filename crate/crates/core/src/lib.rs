//! Exact enumerative geometry of plane curves and surfaces: generalized
//! Severi degrees by the Caporaso-Harris recursion (plain and irreducible),
//! closed-form degrees of dual-surface loci, and an exact polynomial lab for
//! the versal deformation of m-tacnodes.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere. With the `parallel` feature
//! (enabled by default) the recursion distributes its terms over a rayon
//! pool while sharing one write-once memo table; disabling the feature, or
//! constructing the table with [`CountTable::sequential`], selects the
//! single-threaded path computing identical values.

pub mod classical;
pub mod error;
pub mod irreducible;
pub mod polyarith;
pub mod severi;
pub mod tacnode;
pub mod tally;

pub use error::{Error, Result};
pub use irreducible::{count_irr, decompositions, product_degree, ComponentProfile, Decomposition};
pub use severi::{count, count_batch, dimension, expand, CountTable, ExpandTerm, SeveriKey, TermOrigin};
pub use tally::{parse_tally, sheet_profile, BasedTally, SheetProfile, Tally};
