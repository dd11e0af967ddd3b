//! Six-vertex model in path representation: weights, vertex types, domains
//! and configurations.
//!
//! Vertices sit at integer points `(r, s)`, column `r` from the west and row
//! `s` from the south. An edge is thick when it carries a path; paths only
//! step north and east.

mod config;
mod domain;
mod error;
mod lattice;
mod params;
mod vertex;

pub use config::{classify_vertex, config_weight, weight_of_counts, Configuration, TypeCounts};
pub use domain::{convex_cells, BoundaryCondition, DomainKind, DomainSpec, Patch, TriangoloidLayout};
pub use error::ModelError;
pub use lattice::{DefectPattern, Edge, EdgeKey, Lattice, LatticeBuilder, Vertex};
pub use params::ModelParams;
pub use vertex::{Dir, VertexType, WeightClass};
