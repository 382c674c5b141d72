use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::Lister;
use crate::game::GameState;
use crate::solver::StrategyPolicy;
use crate::vset::VertexSet;

/// Presents a uniformly random non-empty subset of the active vertices.
#[derive(Debug, Clone)]
pub struct RandomLister {
    rng: ChaCha8Rng,
}

impl RandomLister {
    pub fn new(seed: u64) -> Self {
        RandomLister {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Lister for RandomLister {
    fn present(&mut self, state: &GameState) -> VertexSet {
        let active = state.active_vertices();
        if active.is_empty() {
            return active;
        }
        loop {
            let mut chosen = VertexSet::new();
            let mut bits = 0u32;
            let mut left = 0;
            for v in &active {
                if left == 0 {
                    bits = self.rng.next_u32();
                    left = 32;
                }
                if bits & 1 == 1 {
                    chosen.insert(v);
                }
                bits >>= 1;
                left -= 1;
            }
            if !chosen.is_empty() {
                return chosen;
            }
        }
    }
}

/// Presents every active vertex whose slack `(f - s) - (g - t)` is minimal.
#[derive(Debug, Clone, Copy, Default)]
pub struct PressureLister;

impl Lister for PressureLister {
    fn present(&mut self, state: &GameState) -> VertexSet {
        let active = state.active_vertices();
        let slack = |v: usize| i64::from(state.tokens_left(v)) - i64::from(state.demand_left(v));
        let Some(min) = active.iter().map(slack).min() else {
            return active;
        };
        active.iter().filter(|&v| slack(v) == min).collect()
    }
}

/// Plays the solver's winning presentations; presents every active vertex
/// when Lister has no win.
#[derive(Debug, Clone)]
pub struct PolicyLister {
    policy: StrategyPolicy,
}

impl PolicyLister {
    pub fn new(policy: StrategyPolicy) -> Self {
        PolicyLister { policy }
    }

    pub fn policy(&self) -> &StrategyPolicy {
        &self.policy
    }

    pub fn into_policy(self) -> StrategyPolicy {
        self.policy
    }
}

impl Lister for PolicyLister {
    fn present(&mut self, state: &GameState) -> VertexSet {
        self.policy.lister_move(state)
    }
}

/// Turns a list assignment into a Lister: colour `c` is presented as the
/// set of unfinished vertices whose list contains `c`, colours in
/// increasing order, empty classes skipped.
#[derive(Debug, Clone)]
pub struct ListLister {
    lists: Vec<Vec<u32>>,
    colours: Vec<u32>,
    next: usize,
    presented: Vec<u32>,
}

impl ListLister {
    pub fn new(lists: Vec<Vec<u32>>) -> Self {
        let mut colours: Vec<u32> = lists.iter().flatten().copied().collect();
        colours.sort_unstable();
        colours.dedup();
        ListLister {
            lists,
            colours,
            next: 0,
            presented: Vec::new(),
        }
    }

    /// Colour presented in each round so far.
    pub fn presented_colours(&self) -> &[u32] {
        &self.presented
    }
}

impl Lister for ListLister {
    fn present(&mut self, state: &GameState) -> VertexSet {
        while let Some(&c) = self.colours.get(self.next) {
            self.next += 1;
            let class: VertexSet = self
                .lists
                .iter()
                .enumerate()
                .filter(|&(v, l)| l.contains(&c) && state.demand_left(v) > 0)
                .map(|(v, _)| v)
                .collect();
            if !class.is_empty() {
                self.presented.push(c);
                return class;
            }
        }
        VertexSet::new()
    }
}
