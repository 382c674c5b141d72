use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FirstFitPainter, Painter};
use crate::game::GameState;
use crate::solver::StrategyPolicy;
use crate::vset::VertexSet;

/// Painter following a solved [`StrategyPolicy`]. Off the policy's winning
/// lines it plays first-fit.
#[derive(Debug, Clone)]
pub struct PolicyPainter {
    policy: Arc<StrategyPolicy>,
    off_policy_rounds: u64,
}

impl PolicyPainter {
    pub fn new(policy: Arc<StrategyPolicy>) -> Self {
        PolicyPainter {
            policy,
            off_policy_rounds: 0,
        }
    }

    pub fn policy(&self) -> &Arc<StrategyPolicy> {
        &self.policy
    }

    /// Rounds answered by the first-fit fallback.
    pub fn off_policy_rounds(&self) -> u64 {
        self.off_policy_rounds
    }
}

impl Painter for PolicyPainter {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        match self.policy.painter_reply(state, presented) {
            Some(reply) => reply,
            None => {
                self.off_policy_rounds += 1;
                FirstFitPainter.respond(state, presented)
            }
        }
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        Some(Vec::new())
    }
}
