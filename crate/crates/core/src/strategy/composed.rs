//! Two-step Painter strategy for `G[H]`.
//!
//! The outer step runs the weight strategy on `G[E_n]` with the same vertex
//! indices, treating each product vertex as needing `b` outer colourings,
//! where `b` is a budget for which `H` is paintable. For every layer `x`
//! whose presented part the outer step would colour, that part is handed to
//! a separate copy of a winning Painter for `H` as one Lister move, and the
//! inner answer is what actually gets coloured. Layers with nothing handed
//! over do not advance their inner game.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{
    FirstFitPainter, LayerBoundTracker, Painter, PolicyPainter, StrategyError, WeightState,
};
use crate::game::{GameConfig, GameState};
use crate::product::ProductLayout;
use crate::solver::{paint_number, PaintOptions, SolverError, StrategyPolicy};
use crate::vset::VertexSet;

#[derive(Debug, Clone)]
pub struct ComposedPainter<P> {
    layout: ProductLayout,
    outer: WeightState,
    tracker: LayerBoundTracker,
    inner_config: Arc<GameConfig>,
    inner: Vec<(GameState, P)>,
    inner_faults: u64,
}

impl<P: Painter + Clone> ComposedPainter<P> {
    /// `inner` must win the `multiplicity`-fold `inner_budget`-painting game
    /// on the fiber; one copy is used per layer.
    pub fn new(
        layout: ProductLayout,
        inner_budget: u32,
        multiplicity: u32,
        inner: P,
    ) -> Result<Self, StrategyError> {
        let inner_config = Arc::new(
            GameConfig::uniform(layout.fiber().clone(), inner_budget, multiplicity)
                .map_err(|_| SolverError::InvalidInput("inner budgets must be positive"))?,
        );
        let outer = WeightState::new(layout.base(), layout.fiber_size());
        let start = GameState::new(inner_config.clone());
        let copies = (0..layout.layer_count())
            .map(|_| (start.clone(), inner.clone()))
            .collect();
        Ok(ComposedPainter {
            layout,
            outer,
            tracker: LayerBoundTracker::default(),
            inner_config,
            inner: copies,
            inner_faults: 0,
        })
    }

    pub fn layout(&self) -> &ProductLayout {
        &self.layout
    }

    pub fn outer(&self) -> &WeightState {
        &self.outer
    }

    pub fn tracker(&self) -> &LayerBoundTracker {
        &self.tracker
    }

    pub fn inner_config(&self) -> &Arc<GameConfig> {
        &self.inner_config
    }

    pub fn inner_state(&self, x: usize) -> &GameState {
        &self.inner[x].0
    }

    /// Inner answers that broke the fiber game's rules.
    pub fn inner_faults(&self) -> u64 {
        self.inner_faults
    }
}

impl<P: Painter + Clone> Painter for ComposedPainter<P> {
    fn respond(&mut self, _state: &GameState, presented: &VertexSet) -> VertexSet {
        let outer_colored = self.outer.step(presented);
        self.tracker.record(&mut self.outer);
        let mut colored = VertexSet::new();
        for (x, part) in self.layout.split(&outer_colored).into_iter().enumerate() {
            let (state, painter) = &mut self.inner[x];
            let forward: VertexSet = part.iter().filter(|&y| state.is_active(y)).collect();
            if forward.is_empty() || !state.is_running() {
                continue;
            }
            let reply = painter.respond(state, &forward);
            match state.apply_round(&forward, &reply) {
                Ok(next) => *state = next,
                Err(_) => self.inner_faults += 1,
            }
            colored.union_with(&self.layout.lift(x, &reply));
        }
        colored
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        let mut key = Vec::new();
        for v in 0..self.layout.product().vertex_count() {
            let (u, d) = self.outer.exponents(v);
            key.push(u64::from(u));
            key.push(u64::from(d));
        }
        for (state, painter) in &self.inner {
            key.extend(state.presented_counts().iter().map(|&s| u64::from(s)));
            key.extend(state.colored_counts().iter().map(|&t| u64::from(t)));
            let inner = painter.memory_key()?;
            key.push(inner.len() as u64);
            key.extend(inner);
        }
        Some(key)
    }
}

/// Inner Painter chosen automatically for a fiber.
#[derive(Debug, Clone)]
pub enum InnerPainter {
    /// Edgeless fibers: colour everything handed over.
    FirstFit,
    Policy(PolicyPainter),
}

impl Painter for InnerPainter {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        match self {
            InnerPainter::FirstFit => FirstFitPainter.respond(state, presented),
            InnerPainter::Policy(p) => p.respond(state, presented),
        }
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        Some(Vec::new())
    }
}

impl ComposedPainter<InnerPainter> {
    /// Computes the fiber's `multiplicity`-fold paint number and a winning
    /// policy for it. Returns the painter and that paint number.
    pub fn solved(
        layout: ProductLayout,
        multiplicity: u32,
        options: PaintOptions,
    ) -> Result<(Self, u32), StrategyError> {
        let fiber = layout.fiber();
        let (budget, inner) = if fiber.edge_count() == 0 {
            (multiplicity, InnerPainter::FirstFit)
        } else {
            let budget = paint_number(fiber, multiplicity, options)?;
            let cfg = Arc::new(
                GameConfig::uniform(fiber.clone(), budget, multiplicity)
                    .map_err(|_| StrategyError::InnerPolicyLoses)?,
            );
            let policy = StrategyPolicy::solve(cfg, options)?;
            if !policy.painter_wins() {
                return Err(StrategyError::InnerPolicyLoses);
            }
            (
                budget,
                InnerPainter::Policy(PolicyPainter::new(Arc::new(policy))),
            )
        };
        Ok((Self::new(layout, budget, multiplicity, inner)?, budget))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Status};
    use crate::graph::Graph;
    use crate::product::lexicographic_product;
    use crate::strategy::{lemma_k, PressureLister, RandomLister, WeightPainter};

    #[test]
    fn edgeless_fiber_matches_weight_strategy() {
        let layout = lexicographic_product(&Graph::path(3), &Graph::empty(2));
        for mult in 1..=2 {
            let (composed, b) =
                ComposedPainter::solved(layout.clone(), mult, PaintOptions::default()).unwrap();
            assert_eq!(b, mult);
            let weight = WeightPainter::new(&layout).unwrap();
            let k = lemma_k(1, mult, 2) as u32;
            let cfg = Arc::new(GameConfig::uniform(layout.product().clone(), k, mult).unwrap());
            for seed in 0..20 {
                let a = play(
                    cfg.clone(),
                    &mut RandomLister::new(seed),
                    &mut composed.clone(),
                );
                let b = play(
                    cfg.clone(),
                    &mut RandomLister::new(seed),
                    &mut weight.clone(),
                );
                assert_eq!(a, b);
                assert_eq!(a.status, Status::PainterWins);
            }
        }
    }

    #[test]
    fn single_layer_reduces_to_inner_policy() {
        let layout = lexicographic_product(&Graph::empty(1), &Graph::cycle(4).unwrap());
        let (mut composed, b) =
            ComposedPainter::solved(layout, 1, PaintOptions::default()).unwrap();
        assert_eq!(b, 2);
        let cfg = Arc::new(GameConfig::uniform(Graph::cycle(4).unwrap(), 2, 1).unwrap());
        let t = play(cfg, &mut PressureLister, &mut composed);
        assert_eq!(t.status, Status::PainterWins);
        assert_eq!(composed.inner_faults(), 0);
    }

    #[test]
    fn k2_of_k2_with_theorem_budget() {
        let layout = lexicographic_product(&Graph::complete(2), &Graph::complete(2));
        let (composed, b) =
            ComposedPainter::solved(layout.clone(), 1, PaintOptions::default()).unwrap();
        assert_eq!(b, 2);
        let k = lemma_k(1, b, 2) as u32;
        assert_eq!(k, 18);
        let cfg = Arc::new(GameConfig::uniform(layout.product().clone(), k, 1).unwrap());
        for seed in 0..50 {
            let mut p = composed.clone();
            let t = play(cfg.clone(), &mut RandomLister::new(seed), &mut p);
            assert_eq!(t.status, Status::PainterWins);
            assert_eq!(p.tracker().violations, 0);
        }
    }
}
