//! Online list colouring (the painting game) on small graphs.
//!
//! The crate provides:
//!
//! * [`graph`] / [`product`]: simple graphs, standard families and the
//!   lexicographic product `G[H]` with its layer structure;
//! * [`game`]: a rules-complete engine for the `g`-fold `f`-painting game;
//! * [`strategy`]: Painter strategies (the multiplicative weight strategy
//!   on `G[E_n]`, the two-step composed strategy on `G[H]`, first-fit and
//!   solver policies) and Lister adversaries;
//! * [`solver`]: exact paintability, choosability and chromatic number
//!   oracles for desk-scale graphs;
//! * [`listcolor`]: list colourings, including colouring from lists by
//!   replaying a painting strategy;
//! * [`exhaustive`]: full traversal of every Lister line against a
//!   deterministic Painter.
//!
//! Everything is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod exhaustive;
pub mod game;
pub mod graph;
pub mod listcolor;
pub mod product;
pub mod solver;
pub mod strategy;
pub mod vset;

pub use game::{GameConfig, GameState, Round, Side, Status, Transcript};
pub use graph::{Family, Graph, GraphError};
pub use product::{lexicographic_product, ProductLayout};
pub use vset::VertexSet;
