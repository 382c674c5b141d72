use alloc::vec::Vec;

use super::Painter;
use crate::game::GameState;
use crate::vset::VertexSet;

/// Colours presented vertices in index order, skipping any vertex adjacent
/// to one already taken this round.
#[derive(Debug, Clone, Copy, Default)]
pub struct FirstFitPainter;

impl Painter for FirstFitPainter {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        let graph = state.graph();
        let mut colored = VertexSet::new();
        for v in presented {
            if !graph.neighbors(v).intersects(&colored) {
                colored.insert(v);
            }
        }
        colored
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        Some(Vec::new())
    }
}
