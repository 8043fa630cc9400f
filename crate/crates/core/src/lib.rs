//! Exact combinatorics of ideal and finite-volume right-angled hyperbolic
//! polyhedra.

pub mod andreev;
pub mod arith;
pub mod bounds;
pub mod canon;
pub mod cusplink;
pub mod enumerate;
pub mod fixtures;
pub mod lattice;
pub mod map;
pub mod nikulin;
pub mod poly;

pub use canon::{canonical_code, CanonicalCode};
pub use lattice::{to_face_lattice, FaceLattice};
pub use poly::{
    parse_poly3, validate, DegreeProfile, Edge, PolyError, Polyhedron3, ValidationReport,
};
