//! Discriminantal triples `(A, Δ, m)`: translation to and from Horn pairs,
//! verification, the monomial map `φ_(Δ,m)`, and the scan over the terms
//! of a discriminant.

mod marked;
mod scan;
mod toric;
mod triple;

pub use marked::{marked_poly_from_pair, monomial_map_eval, pair_from_marked_poly, MarkedPoly};
pub use scan::{algorithm1_scan, algorithm1_scan_named, scan_term, ModelRecord, ModelRecordJson, ScanOutcome};
pub use toric::{left_kernel_basis, ToricMatrix};
pub use triple::{triple_check, DiscriminantalTriple, TripleJson, TripleVerdict};
