//! Every Lister line against one deterministic Painter.
//!
//! The Painter is cloned at each branch. Positions are merged when the game
//! counters and the Painter's [`memory_key`](crate::strategy::Painter::memory_key)
//! agree, which keeps the traversal polynomial in the number of reachable
//! (position, memory) pairs rather than exponential in game length.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::game::{GameConfig, GameState, Round, Status, Transcript};
use crate::strategy::Painter;
use crate::vset::VertexSet;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExhaustiveStats {
    /// Distinct (position, memory) pairs expanded.
    pub positions: usize,
    /// Rounds played over the whole traversal.
    pub rounds: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExhaustiveError {
    /// A Lister line that beats the Painter (or makes it forfeit).
    PainterLoses(Transcript),
    /// The invariant check failed after the last round of this line.
    InvariantViolated(Transcript),
    BudgetExceeded {
        explored: usize,
    },
    /// The Painter cannot summarise its memory, so positions cannot merge.
    NoMemoryKey,
    TooLarge {
        vertices: usize,
    },
}

impl fmt::Display for ExhaustiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExhaustiveError::PainterLoses(t) => {
                write!(f, "lister wins after {} rounds", t.rounds.len())
            }
            ExhaustiveError::InvariantViolated(t) => {
                write!(f, "invariant violated after {} rounds", t.rounds.len())
            }
            ExhaustiveError::BudgetExceeded { explored } => {
                write!(f, "exhaustive search stopped after {explored} positions")
            }
            ExhaustiveError::NoMemoryKey => write!(f, "painter has no memory key"),
            ExhaustiveError::TooLarge { vertices } => {
                write!(f, "{vertices} vertices is too many for exhaustive search")
            }
        }
    }
}

impl core::error::Error for ExhaustiveError {}

struct Walk<'c, C> {
    config: Arc<GameConfig>,
    seen: HashSet<Vec<u64>>,
    path: Vec<Round>,
    stats: ExhaustiveStats,
    budget: Option<usize>,
    check: &'c mut C,
}

/// Plays every legal Lister line against `painter`, calling `check` after
/// each round; `check` returning `false` is reported as a violation.
pub fn exhaustive_lister<P, C>(
    config: Arc<GameConfig>,
    painter: &P,
    max_positions: Option<usize>,
    mut check: C,
) -> Result<ExhaustiveStats, ExhaustiveError>
where
    P: Painter + Clone,
    C: FnMut(&P, &GameState) -> bool,
{
    let n = config.graph().vertex_count();
    if n > 64 {
        return Err(ExhaustiveError::TooLarge { vertices: n });
    }
    let mut walk = Walk {
        config: config.clone(),
        seen: HashSet::new(),
        path: Vec::new(),
        stats: ExhaustiveStats::default(),
        budget: max_positions,
        check: &mut check,
    };
    let start = GameState::new(config);
    walk.visit(&start, painter)?;
    Ok(walk.stats)
}

impl<C> Walk<'_, C> {
    fn transcript(&self, status: Status) -> Transcript {
        Transcript {
            config: self.config.clone(),
            rounds: self.path.clone(),
            status,
            forfeit: None,
        }
    }

    fn visit<P>(&mut self, state: &GameState, painter: &P) -> Result<(), ExhaustiveError>
    where
        P: Painter + Clone,
        C: FnMut(&P, &GameState) -> bool,
    {
        match state.status() {
            Status::PainterWins => return Ok(()),
            Status::ListerWins => {
                return Err(ExhaustiveError::PainterLoses(
                    self.transcript(Status::ListerWins),
                ))
            }
            Status::Running => {}
        }
        let mut key: Vec<u64> = state
            .presented_counts()
            .iter()
            .chain(state.colored_counts())
            .map(|&x| u64::from(x))
            .collect();
        key.extend(painter.memory_key().ok_or(ExhaustiveError::NoMemoryKey)?);
        if !self.seen.insert(key) {
            return Ok(());
        }
        self.stats.positions += 1;
        if let Some(b) = self.budget {
            if self.stats.positions > b {
                return Err(ExhaustiveError::BudgetExceeded {
                    explored: self.stats.positions,
                });
            }
        }
        self.stats.max_depth = self.stats.max_depth.max(self.path.len() + 1);

        let active = state.active_vertices().to_mask();
        let mut sub = active;
        while sub != 0 {
            let presented = VertexSet::from_mask(sub);
            sub = (sub - 1) & active;
            let mut p = painter.clone();
            let colored = p.respond(state, &presented);
            self.stats.rounds += 1;
            let next = match state.apply_round(&presented, &colored) {
                Ok(next) => next,
                Err(error) => {
                    let mut t = self.transcript(Status::ListerWins);
                    t.forfeit = Some(crate::game::Forfeit {
                        presented,
                        colored: Some(colored),
                        error,
                    });
                    return Err(ExhaustiveError::PainterLoses(t));
                }
            };
            self.path.push(Round { presented, colored });
            if !(self.check)(&p, &next) {
                return Err(ExhaustiveError::InvariantViolated(
                    self.transcript(next.status()),
                ));
            }
            self.visit(&next, &p)?;
            self.path.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::product::lexicographic_product;
    use crate::strategy::{lemma_k, FirstFitPainter, WeightPainter};

    #[test]
    fn first_fit_loses_k2_with_one_colour() {
        let cfg = Arc::new(GameConfig::uniform(Graph::complete(2), 1, 1).unwrap());
        let err = exhaustive_lister(cfg, &FirstFitPainter, None, |_, _| true).unwrap_err();
        let ExhaustiveError::PainterLoses(t) = err else {
            panic!()
        };
        assert_eq!(t.status, Status::ListerWins);
        assert!(t.replay().is_ok());
    }

    #[test]
    fn first_fit_wins_with_degree_plus_one() {
        let g = Graph::path(4);
        let cfg = Arc::new(GameConfig::uniform(g, 3, 1).unwrap());
        let stats = exhaustive_lister(cfg, &FirstFitPainter, None, |_, _| true).unwrap();
        assert!(stats.positions > 1);
    }

    #[test]
    fn weight_painter_on_k2_lemma_budget() {
        let layout = lexicographic_product(&Graph::complete(2), &Graph::empty(1));
        let k = lemma_k(1, 2, 1) as u32;
        assert_eq!(k, 12);
        let cfg = Arc::new(GameConfig::uniform(layout.product().clone(), k, 2).unwrap());
        let painter = WeightPainter::new(&layout).unwrap();
        let stats = exhaustive_lister(cfg, &painter, None, |p: &WeightPainter, _| {
            p.tracker().violations == 0
        })
        .unwrap();
        assert!(stats.positions > 10);
    }

    #[test]
    fn budget_is_respected() {
        let cfg = Arc::new(GameConfig::uniform(Graph::path(4), 3, 1).unwrap());
        let err = exhaustive_lister(cfg, &FirstFitPainter, Some(2), |_, _| true).unwrap_err();
        assert!(matches!(err, ExhaustiveError::BudgetExceeded { .. }));
    }
}
