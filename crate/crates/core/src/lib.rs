//! Construction and verification of bipartite distance-regular Cayley graphs
//! of diameter 3 together with the equivalent algebraic objects: difference
//! sets in an index-2 subgroup and symmetric 2-designs.
//!
//! Everything works on explicit finite groups given by multiplication tables
//! (order at most 512). All graph-side certificates are exact: distance
//! regularity is checked by all-pairs BFS and the spectrum by an integer
//! matrix identity. Floating point is used only to compare quotient
//! eigenvalues of equitable partitions with the adjacency spectrum.
//!
//! Module map:
//!
//! - [`group`]: finite groups, constructors, subgroup queries, the group-spec grammar.
//! - [`cayley`]: Cayley graphs, BFS invariants, intersection arrays, spectra, equitable partitions.
//! - [`diffset`]: difference sets, developments and the exhaustive search.
//! - [`design`]: symmetric designs, incidence graphs, projective planes.
//! - [`harness`]: the graph/difference-set correspondence, case classification, isomorphisms.

pub mod cayley;
pub mod design;
pub mod diffset;
pub mod group;
pub mod harness;
mod params;

pub use cayley::{build_cayley, CayleyGraph, Graph, IntersectionArray};
pub use design::SymmetricDesign;
pub use diffset::DifferenceSet;
pub use group::{Elem, FiniteGroup, Subgroup};
pub use params::Params;
