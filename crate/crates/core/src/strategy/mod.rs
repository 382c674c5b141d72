//! Painter strategies and Lister adversaries.

use alloc::vec::Vec;
use core::fmt;

use crate::game::GameState;
use crate::solver::SolverError;
use crate::vset::VertexSet;

mod composed;
mod greedy;
mod listers;
mod policy;
mod weight;

pub use composed::{ComposedPainter, InnerPainter};
pub use greedy::FirstFitPainter;
pub use listers::{ListLister, PolicyLister, PressureLister, RandomLister};
pub use policy::PolicyPainter;
pub use weight::{
    approximate, lemma_k, ExactWeight, LayerBoundTracker, Selection, WeightPainter, WeightState,
};

/// Lister: chooses the set of vertices receiving the next colour.
pub trait Lister {
    fn present(&mut self, state: &GameState) -> VertexSet;
}

/// Painter: answers a presented set with an independent subset.
pub trait Painter {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet;

    /// Summary of the strategy's private memory. Two instances with equal
    /// keys facing equal game states must behave identically. `None` means
    /// the strategy cannot provide such a summary.
    fn memory_key(&self) -> Option<Vec<u64>> {
        None
    }
}

impl<P: Painter + ?Sized> Painter for &mut P {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        (**self).respond(state, presented)
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        (**self).memory_key()
    }
}

impl<P: Painter + ?Sized> Painter for alloc::boxed::Box<P> {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        (**self).respond(state, presented)
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        (**self).memory_key()
    }
}

impl<L: Lister + ?Sized> Lister for alloc::boxed::Box<L> {
    fn present(&mut self, state: &GameState) -> VertexSet {
        (**self).present(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyError {
    /// The weight strategy needs `G[E_n]`.
    FiberNotEdgeless,
    /// The supplied inner policy loses the fiber game.
    InnerPolicyLoses,
    Solver(SolverError),
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::FiberNotEdgeless => {
                write!(f, "weight strategy requires an edgeless fiber (G[E_n])")
            }
            StrategyError::InnerPolicyLoses => {
                write!(
                    f,
                    "inner policy is not a winning Painter strategy for the fiber"
                )
            }
            StrategyError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for StrategyError {}

impl From<SolverError> for StrategyError {
    fn from(e: SolverError) -> Self {
        StrategyError::Solver(e)
    }
}
