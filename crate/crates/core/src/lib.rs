//! Bipartite biregular graphs of prescribed girth from finite geometries and
//! Steiner systems, together with the counting bounds used to certify them
//! as cages.

pub mod bounds;
pub mod delete;
pub mod designs;
pub mod error;
pub mod export;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod polygons;
pub mod prune;
pub mod structure;
pub mod table;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldId};
pub use geometry::{Hyperplane, ProjectivePoint, ProjectiveSpace, QuadraticForm, Quadric};
pub use graph::BipartiteGraph;
pub use structure::IncidenceStructure;
