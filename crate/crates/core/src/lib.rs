//! Exact motivic zeta functions and monodromy invariants for toric
//! degenerations of K3 surfaces.
//!
//! The input is the combinatorial shadow of a degeneration: orbits of cells
//! of the intersection complex together with their dual lattice polytopes
//! and the number of ordinary double points resolved in the central fiber.
//! Everything is integer arithmetic; there is no floating point in the crate.
//!
//! Layout:
//! - [`lattice`]: lattice polytopes of dimension at most two, with Ehrhart-style counts.
//! - [`triangulation`]: unimodular triangulations and regular subdivisions,
//!   plus Newton polytopes of piecewise linear functions on fans.
//! - [`series`]: polynomials in `L` and zeta functions in the basis `u = T/(1-T)`.
//! - [`complex`]: the degeneration data model with its validation and JSON I/O;
//!   also the two built-in datasets.
//! - [`zeta`]: the zeta engine and its brute-force lattice-count oracle.
//! - [`monodromy`]: the invariants `(t, k)` of the monodromy logarithm and their
//!   Lefschetz counterparts.

pub mod complex;
pub mod error;
pub mod lattice;
pub mod monodromy;
pub mod series;
pub mod triangulation;
pub mod zeta;

pub use complex::{builtin, CellOrbit, DegenerationComplex, ValidationReport};
pub use error::{Error, Result};
pub use lattice::{content, LatticePoint, LatticePolytope};
pub use series::{LPolynomial, SvForm, UBasisSeries};
pub use triangulation::{
    simplex_profile, unimodular_triangulate, HeightTable, SimplexProfile, Triangulation,
};
pub use zeta::{zeta, ZetaResult};
