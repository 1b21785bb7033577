//! Modules over bound quiver algebras.

pub mod homology;
pub mod iso;
pub mod layered;
pub mod representation;

pub use homology::{minimal_resolution, projective_cover, projective_dimension, syzygy, Cover, Pdim, Resolver, ResolverOptions};
pub use layered::{parse_layered_graph, LayeredGraph};
pub use iso::{decompose, hom, is_indecomposable, is_isomorphic, Iso, SearchBudget};
pub use representation::{Layers, ModuleMap, Representation};
