//! Exact homomorphism counting and the bipartite swapping trick.
//!
//! The crate counts graph homomorphisms `G -> H` exactly (plain, weighted,
//! surjective), implements the swap that moves homomorphisms of `G ⊔ G` to
//! homomorphisms of `G × K₂`, certifies swapping targets through the derived
//! graph `H^bst`, recognises threshold graphs, and checks GT-type inequalities
//! by exact cross-powering. Coloring asymptotics and stable-set polytope
//! volumes are layered on top of the same counting engine.

pub mod canon;
pub mod coloring;
pub mod error;
pub mod format;
pub mod graph;
pub mod gt;
pub mod hom;
pub mod numeric;
pub mod polytope;
pub mod swap;
pub mod target;

pub use error::{Error, Result};
pub use graph::{
    bipartite_double, complete_bipartite, complete_graph, disjoint_double, Bipartiteness,
    DoubledVertex, SimpleGraph, TargetGraph,
};
