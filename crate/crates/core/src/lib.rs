//! Pivots, local complementation and determinants of graphs over GF(2).
//!
//! - [`gf2`]: bit-packed symmetric matrices, determinants, principal pivot
//!   transforms and kernel witnesses.
//! - [`graph`]: graphs with optional loops, local complementation, pivots and
//!   overlap graphs of double-occurrence words.
//! - [`matchings`]: perfect-matching parities, including the multiset form
//!   that allows repeated vertices.
//! - [`sequences`]: operation sequences, supports, reduced-sequence synthesis,
//!   orbits and support counts.
//!
//! ```
//! use pivotal::{apply, apply_support, synthesize_reduced, DoubleOccurrenceWord, VertexSet};
//!
//! let g = DoubleOccurrenceWord::parse("3 5 2 6 5 4 1 3 6 1 2 4")?.overlap_graph();
//! let h = g.pivot(&"2".into(), &"3".into())?;
//!
//! let s: VertexSet = ["2", "3"].into_iter().collect();
//! assert_eq!(apply_support(&g, &s)?, h);
//!
//! let seq = synthesize_reduced(&g, &s, None)?;
//! assert_eq!(seq.to_string(), "[2 3]");
//! assert_eq!(apply(&g, &seq)?, h);
//! # Ok::<(), pivotal::Error>(())
//! ```
//!
//! Subset enumerations run on rayon when the `parallel` feature is enabled
//! (the default); see [`Exec`].

mod bits;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod graph;
pub mod matchings;
pub mod sequences;
pub mod vertex;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf2::Gf2Matrix;
pub use graph::{DoubleOccurrenceWord, Graph};
pub use matchings::{
    double_pivot_sim, enumerate_pairings, general_pm_parity, pm_multiset, pm_parity,
    pm_parity_by_enumeration, Pairing,
};
pub use sequences::{
    apply, apply_assembly_rules, apply_support, check_commutation, count_applicable_supports,
    count_applicable_supports_with, is_applicable, is_support_applicable, orbit, orbit_with,
    reduce_to_empty, synthesize_reduced, Op, OpSeq, SubsetSearch,
};
pub use vertex::{Vertex, VertexSet};
