//! Exact `f`-paintability by memoized minimax.
//!
//! A position is the vector of `(f(v) - s(v), g(v) - t(v))` pairs. Finished
//! vertices are normalised to `(0, 0)` so that positions differing only in
//! how a vertex finished share a memo entry.

use alloc::sync::Arc;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{independent_subsets, maximal_independent_subsets, SolverError};
use crate::game::{GameConfig, GameState, Side};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// Which Painter replies the search considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplyMode {
    /// Only maximal independent subsets of the presented set.
    Maximal,
    /// Every independent subset, the empty one included.
    Unrestricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaintOptions {
    pub replies: ReplyMode,
    /// Decide hopeless vertices and drop vertices that can never be blocked
    /// before searching.
    pub reductions: bool,
    /// Overrides the default vertex cap (10 for `g = 1`, 8 for `g = 2`,
    /// 6 otherwise).
    pub vertex_cap: Option<usize>,
    /// Maximum number of positions expanded per solver instance.
    pub node_budget: Option<usize>,
}

impl Default for PaintOptions {
    fn default() -> Self {
        PaintOptions {
            replies: ReplyMode::Maximal,
            reductions: true,
            vertex_cap: None,
            node_budget: Some(5_000_000),
        }
    }
}

impl PaintOptions {
    /// Plain minimax over all replies, no reductions.
    pub fn reference() -> Self {
        PaintOptions {
            replies: ReplyMode::Unrestricted,
            reductions: false,
            ..PaintOptions::default()
        }
    }

    fn cap_for(&self, max_g: u32) -> usize {
        self.vertex_cap.unwrap_or(match max_g {
            0 | 1 => 10,
            2 => 8,
            _ => 6,
        })
    }
}

enum Reduced {
    ListerWins,
    /// Vertices removed, in removal order.
    Open(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct PaintSolver {
    adj: Vec<u64>,
    options: PaintOptions,
    memo: HashMap<Vec<u8>, bool>,
    replies: HashMap<u64, Arc<[u64]>>,
    explored: usize,
}

impl PaintSolver {
    pub fn new(graph: &Graph, options: PaintOptions) -> Result<Self, SolverError> {
        let n = graph.vertex_count();
        if n > 64 {
            return Err(SolverError::TooLarge {
                what: "vertex count",
                size: n,
                cap: 64,
            });
        }
        Ok(PaintSolver {
            adj: graph.adjacency_masks(),
            options,
            memo: HashMap::new(),
            replies: HashMap::new(),
            explored: 0,
        })
    }

    pub fn options(&self) -> &PaintOptions {
        &self.options
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Positions expanded so far.
    pub fn explored(&self) -> usize {
        self.explored
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Whether Painter wins the `g`-fold `f`-painting game from scratch.
    pub fn is_paintable(&mut self, f: &[u32], g: &[u32]) -> Result<bool, SolverError> {
        let key = self.initial_key(f, g, None)?;
        self.solve(key)
    }

    /// Whether Painter wins from the given game position.
    pub fn painter_wins_from(&mut self, state: &GameState) -> Result<bool, SolverError> {
        let cfg = state.config();
        let key = self.initial_key(
            cfg.f(),
            cfg.g(),
            Some((state.presented_counts(), state.colored_counts())),
        )?;
        self.solve(key)
    }

    fn initial_key(
        &self,
        f: &[u32],
        g: &[u32],
        progress: Option<(&[u32], &[u32])>,
    ) -> Result<Vec<u8>, SolverError> {
        let n = self.adj.len();
        if f.len() != n || g.len() != n {
            return Err(SolverError::InvalidInput(
                "budget vectors must match the vertex count",
            ));
        }
        let max_g = g.iter().copied().max().unwrap_or(1);
        let cap = self.options.cap_for(max_g);
        if n > cap {
            return Err(SolverError::TooLarge {
                what: "vertex count",
                size: n,
                cap,
            });
        }
        let mut key = Vec::with_capacity(2 * n);
        for v in 0..n {
            let (s, t) = progress.map_or((0, 0), |(s, t)| (s[v], t[v]));
            if f[v] > 255 || g[v] > 255 {
                return Err(SolverError::TooLarge {
                    what: "per-vertex budget",
                    size: f[v].max(g[v]) as usize,
                    cap: 255,
                });
            }
            if s > f[v] || t > g[v] {
                return Err(SolverError::InvalidInput("counters exceed budgets"));
            }
            key.push((f[v] - s) as u8);
            key.push((g[v] - t) as u8);
        }
        Ok(key)
    }

    fn reduce(&self, key: &mut [u8]) -> Reduced {
        let n = self.adj.len();
        for v in 0..n {
            let (s, t) = (key[2 * v], key[2 * v + 1]);
            if t == 0 {
                key[2 * v] = 0;
            } else if s == 0 || (self.options.reductions && s < t) {
                return Reduced::ListerWins;
            }
        }
        let mut removed = Vec::new();
        if !self.options.reductions {
            return Reduced::Open(removed);
        }
        loop {
            let mut changed = false;
            for v in 0..n {
                let t = key[2 * v + 1];
                if t == 0 {
                    continue;
                }
                let slack = u32::from(key[2 * v] - t);
                let mut demand = 0u32;
                let mut nb = self.adj[v];
                while nb != 0 {
                    let u = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    demand += u32::from(key[2 * u + 1]);
                }
                if demand <= slack {
                    key[2 * v] = 0;
                    key[2 * v + 1] = 0;
                    removed.push(v);
                    changed = true;
                }
            }
            if !changed {
                return Reduced::Open(removed);
            }
        }
    }

    fn solve(&mut self, mut key: Vec<u8>) -> Result<bool, SolverError> {
        if let Reduced::ListerWins = self.reduce(&mut key) {
            return Ok(false);
        }
        let live = live_mask(&key);
        if live == 0 {
            return Ok(true);
        }
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        self.explored += 1;
        if let Some(budget) = self.options.node_budget {
            if self.explored > budget {
                return Err(SolverError::BudgetExceeded {
                    explored: self.explored,
                });
            }
        }
        let mut result = true;
        let mut sub = live;
        while sub != 0 {
            let presented = sub;
            sub = (sub - 1) & live;
            if !self.painter_survives(&key, presented)? {
                result = false;
                break;
            }
        }
        self.memo.insert(key, result);
        Ok(result)
    }

    fn reply_list(&mut self, presented: u64) -> Arc<[u64]> {
        if let Some(list) = self.replies.get(&presented) {
            return list.clone();
        }
        let list: Arc<[u64]> = self.compute_replies(presented).into();
        self.replies.insert(presented, list.clone());
        list
    }

    fn compute_replies(&self, presented: u64) -> Vec<u64> {
        match self.options.replies {
            ReplyMode::Maximal => maximal_independent_subsets(&self.adj, presented),
            ReplyMode::Unrestricted => independent_subsets(&self.adj, presented),
        }
    }

    fn painter_survives(&mut self, key: &[u8], presented: u64) -> Result<bool, SolverError> {
        let replies = self.reply_list(presented);
        for &colored in replies.iter() {
            if let Some(child) = child_key(key, presented, colored) {
                if self.solve(child)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Memo-only evaluation: `Some(true)` for a known Painter win.
    fn lookup(&self, mut key: Vec<u8>) -> Option<bool> {
        if let Reduced::ListerWins = self.reduce(&mut key) {
            return Some(false);
        }
        if live_mask(&key) == 0 {
            return Some(true);
        }
        self.memo.get(&key).copied()
    }

    /// First reply to `presented` (restricted to live vertices of the reduced
    /// position `key`) that is known to keep Painter winning.
    fn winning_reply(&self, key: &[u8], presented: u64) -> Option<u64> {
        if presented == 0 {
            return Some(0);
        }
        self.compute_replies(presented)
            .into_iter()
            .find(|&colored| {
                child_key(key, presented, colored)
                    .and_then(|child| self.lookup(child))
                    .unwrap_or(false)
            })
    }

    fn refutation_from_memo(&self, key: &[u8]) -> Option<u64> {
        let live = live_mask(key);
        let mut sub = live;
        while sub != 0 {
            if self.winning_reply(key, sub).is_none() {
                return Some(sub);
            }
            sub = (sub - 1) & live;
        }
        None
    }
}

fn live_mask(key: &[u8]) -> u64 {
    let mut mask = 0u64;
    for (v, pair) in key.chunks_exact(2).enumerate() {
        if pair[1] > 0 {
            mask |= 1 << v;
        }
    }
    mask
}

/// Position after presenting `presented` and colouring `colored`, or `None`
/// if some presented vertex just lost.
fn child_key(key: &[u8], presented: u64, colored: u64) -> Option<Vec<u8>> {
    let mut child = key.to_vec();
    let mut m = presented;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        child[2 * v] -= 1;
        if colored & (1 << v) != 0 {
            child[2 * v + 1] -= 1;
        } else if child[2 * v] == 0 {
            return None;
        }
    }
    Some(child)
}

/// Whether `graph` is `(f, g)`-paintable.
pub fn is_paintable(
    graph: &Graph,
    f: &[u32],
    g: &[u32],
    options: PaintOptions,
) -> Result<bool, SolverError> {
    PaintSolver::new(graph, options)?.is_paintable(f, g)
}

/// The `b`-fold paint number: least `k` such that `graph` is `k`-paintable
/// with every vertex coloured `b` times. Zero for the empty graph.
pub fn paint_number(graph: &Graph, b: u32, options: PaintOptions) -> Result<u32, SolverError> {
    if b == 0 {
        return Err(SolverError::InvalidInput("multiplicity must be positive"));
    }
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let lower = b * graph.clique_number() as u32;
    let upper = b * (graph.degeneracy() as u32 + 1);
    let mut solver = PaintSolver::new(graph, options)?;
    let g = alloc::vec![b; n];
    for k in lower..upper {
        let f = alloc::vec![k; n];
        if solver.is_paintable(&f, &g)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// One solved position of a [`StrategyPolicy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyEntry {
    /// `(f(v) - s(v), g(v) - t(v))` per vertex; finished or reduced vertices
    /// read `(0, 0)`.
    pub remaining: Vec<(u8, u8)>,
    pub winner: Side,
    /// Painter-won positions: a winning reply for every legal presentation.
    pub replies: Vec<(VertexSet, VertexSet)>,
    /// Lister-won positions: a presentation that wins.
    pub refutation: Option<VertexSet>,
}

/// Winning moves extracted from a solved game.
#[derive(Debug, Clone)]
pub struct StrategyPolicy {
    config: Arc<GameConfig>,
    solver: PaintSolver,
    winner: Side,
}

impl StrategyPolicy {
    pub fn solve(config: Arc<GameConfig>, options: PaintOptions) -> Result<Self, SolverError> {
        let mut solver = PaintSolver::new(config.graph(), options)?;
        let painter = solver.is_paintable(config.f(), config.g())?;
        Ok(StrategyPolicy {
            config,
            solver,
            winner: if painter { Side::Painter } else { Side::Lister },
        })
    }

    pub fn config(&self) -> &Arc<GameConfig> {
        &self.config
    }

    /// Winner of the initial position under perfect play.
    pub fn winner(&self) -> Side {
        self.winner
    }

    pub fn painter_wins(&self) -> bool {
        self.winner == Side::Painter
    }

    pub fn solver(&self) -> &PaintSolver {
        &self.solver
    }

    fn state_key(&self, state: &GameState) -> Option<Vec<u8>> {
        self.solver
            .initial_key(
                self.config.f(),
                self.config.g(),
                Some((state.presented_counts(), state.colored_counts())),
            )
            .ok()
    }

    /// A reply keeping Painter on a winning line, or `None` if the position is
    /// not known to be a Painter win.
    pub fn painter_reply(&self, state: &GameState, presented: &VertexSet) -> Option<VertexSet> {
        let mut key = self.state_key(state)?;
        let removed = match self.solver.reduce(&mut key) {
            Reduced::ListerWins => return None,
            Reduced::Open(removed) => removed,
        };
        let presented_mask = presented.to_mask();
        let core = presented_mask & live_mask(&key);
        let mut colored = self.solver.winning_reply(&key, core)?;
        for &v in removed.iter().rev() {
            let bit = 1u64 << v;
            if presented_mask & bit != 0 && self.solver.adj[v] & colored == 0 {
                colored |= bit;
            }
        }
        Some(VertexSet::from_mask(colored))
    }

    /// A winning presentation if Lister can win from `state`; otherwise every
    /// active vertex.
    pub fn lister_move(&mut self, state: &GameState) -> VertexSet {
        let fallback = state.active_vertices();
        let Some(mut key) = self.state_key(state) else {
            return fallback;
        };
        if let Reduced::ListerWins = self.solver.reduce(&mut key) {
            let doomed = key
                .chunks_exact(2)
                .position(|p| p[1] > 0 && p[0] > 0 && p[0] < p[1]);
            return doomed.map_or(fallback, VertexSet::singleton);
        }
        match self.solver.solve(key.clone()) {
            Ok(false) => {}
            _ => return fallback,
        }
        let live = live_mask(&key);
        let mut sub = live;
        while sub != 0 {
            match self.solver.painter_survives(&key, sub) {
                Ok(false) => return VertexSet::from_mask(sub),
                Ok(true) => {}
                Err(_) => return fallback,
            }
            sub = (sub - 1) & live;
        }
        fallback
    }

    /// Number of solved positions.
    pub fn len(&self) -> usize {
        self.solver.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solver.memo.is_empty()
    }

    /// Every solved position with its moves, sorted by position.
    pub fn entries(&self) -> Vec<PolicyEntry> {
        let mut keys: Vec<(&Vec<u8>, bool)> =
            self.solver.memo.iter().map(|(k, &v)| (k, v)).collect();
        keys.sort();
        keys.into_iter()
            .map(|(key, painter)| {
                let remaining = key.chunks_exact(2).map(|p| (p[0], p[1])).collect();
                if painter {
                    let live = live_mask(key);
                    let mut replies = Vec::new();
                    let mut sub = live;
                    while sub != 0 {
                        if let Some(x) = self.solver.winning_reply(key, sub) {
                            replies.push((VertexSet::from_mask(sub), VertexSet::from_mask(x)));
                        }
                        sub = (sub - 1) & live;
                    }
                    replies.reverse();
                    PolicyEntry {
                        remaining,
                        winner: Side::Painter,
                        replies,
                        refutation: None,
                    }
                } else {
                    PolicyEntry {
                        remaining,
                        winner: Side::Lister,
                        replies: Vec::new(),
                        refutation: self
                            .solver
                            .refutation_from_memo(key)
                            .map(VertexSet::from_mask),
                    }
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn uniform(graph: &Graph, k: u32, b: u32, options: PaintOptions) -> bool {
        let n = graph.vertex_count();
        is_paintable(graph, &alloc::vec![k; n], &alloc::vec![b; n], options).unwrap()
    }

    fn all_modes() -> [PaintOptions; 3] {
        [
            PaintOptions::default(),
            PaintOptions::reference(),
            PaintOptions {
                reductions: false,
                ..PaintOptions::default()
            },
        ]
    }

    #[test]
    fn k2_needs_two_colours() {
        for opts in all_modes() {
            assert!(!uniform(&Graph::complete(2), 1, 1, opts));
            assert!(uniform(&Graph::complete(2), 2, 1, opts));
        }
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=5 {
            let g = Graph::complete(n);
            for opts in all_modes() {
                assert!(uniform(&g, n as u32, 1, opts), "K_{n}");
                assert!(!uniform(&g, n as u32 - 1, 1, opts), "K_{n}");
            }
            assert_eq!(
                paint_number(&g, 1, PaintOptions::default()).unwrap(),
                n as u32
            );
        }
    }

    #[test]
    fn c4_is_two_paintable() {
        let c4 = Graph::cycle(4).unwrap();
        for opts in all_modes() {
            assert!(uniform(&c4, 2, 1, opts));
        }
        assert_eq!(paint_number(&c4, 1, PaintOptions::default()).unwrap(), 2);
    }

    #[test]
    fn small_paint_numbers() {
        let opts = PaintOptions::default();
        assert_eq!(paint_number(&Graph::empty(5), 1, opts).unwrap(), 1);
        assert_eq!(paint_number(&Graph::empty(0), 1, opts).unwrap(), 0);
        assert_eq!(paint_number(&Graph::cycle(5).unwrap(), 1, opts).unwrap(), 3);
        assert_eq!(
            paint_number(&Graph::complete_bipartite(2, 3), 1, opts).unwrap(),
            2
        );
        assert!(uniform(
            &Graph::complete_bipartite(2, 3),
            2,
            1,
            PaintOptions::reference()
        ));
        // Two vertices joined by paths of lengths 2, 2 and 4: 2-choosable but
        // not 2-paintable.
        let theta = Graph::from_edges(
            7,
            &[
                (0, 2),
                (2, 1),
                (0, 3),
                (3, 1),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 1),
            ],
        )
        .unwrap();
        assert_eq!(paint_number(&theta, 1, opts).unwrap(), 3);
        assert_eq!(paint_number(&Graph::complete(2), 3, opts).unwrap(), 6);
    }

    #[test]
    fn caps_are_enforced() {
        let g = Graph::empty(11);
        let err = is_paintable(&g, &[1; 11], &[1; 11], PaintOptions::default()).unwrap_err();
        assert!(matches!(err, SolverError::TooLarge { cap: 10, .. }));
        let g = Graph::empty(7);
        let err = is_paintable(&g, &[3; 7], &[3; 7], PaintOptions::default()).unwrap_err();
        assert!(matches!(err, SolverError::TooLarge { cap: 6, .. }));
        let tight = PaintOptions {
            node_budget: Some(3),
            reductions: false,
            ..PaintOptions::default()
        };
        let err = is_paintable(&Graph::complete(4), &[4; 4], &[1; 4], tight).unwrap_err();
        assert!(matches!(err, SolverError::BudgetExceeded { .. }));
    }

    #[test]
    fn policy_on_k2() {
        let cfg = Arc::new(GameConfig::uniform(Graph::complete(2), 1, 1).unwrap());
        let mut policy = StrategyPolicy::solve(cfg.clone(), PaintOptions::default()).unwrap();
        assert_eq!(policy.winner(), Side::Lister);
        let state = GameState::new(cfg);
        assert_eq!(policy.lister_move(&state).to_vec(), [0, 1]);

        let cfg = Arc::new(GameConfig::uniform(Graph::complete(2), 2, 1).unwrap());
        let policy = StrategyPolicy::solve(cfg.clone(), PaintOptions::reference()).unwrap();
        assert!(policy.painter_wins());
        let state = GameState::new(cfg);
        let reply = policy.painter_reply(&state, &VertexSet::full(2)).unwrap();
        assert_eq!(reply.len(), 1);
        assert!(!policy.entries().is_empty());
    }
}
