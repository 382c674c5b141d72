//! Rules of the `g`-fold `f`-painting game.
//!
//! Each round Lister presents a non-empty set `V_i` of vertices that are
//! still active (coloured fewer than `g(v)` times and presented fewer than
//! `f(v)` times) and Painter answers with an independent `X_i ⊆ V_i`. Lister
//! wins at the end of a round in which some vertex has been presented
//! `f(v)` times but coloured fewer than `g(v)` times; Painter wins once every
//! vertex has been coloured `g(v)` times.
//!
//! A running game always has a legal Lister move: an unfinished vertex has
//! `t(v) < g(v)`, and if it also had `s(v) = f(v)` the previous round would
//! already have ended in a Lister win.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError};
use crate::strategy::{Lister, Painter};
use crate::vset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    LengthMismatch { expected: usize, f: usize, g: usize },
    ZeroBudget(usize),
    ZeroMultiplicity(usize),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::LengthMismatch { expected, f: fl, g } => write!(
                f,
                "budget vectors must have one entry per vertex ({expected}), got f: {fl}, g: {g}"
            ),
            ConfigError::ZeroBudget(v) => write!(f, "f({v}) must be at least 1"),
            ConfigError::ZeroMultiplicity(v) => write!(f, "g({v}) must be at least 1"),
        }
    }
}

impl core::error::Error for ConfigError {}

/// Graph plus per-vertex list size `f` and colour multiplicity `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    graph: Graph,
    f: Vec<u32>,
    g: Vec<u32>,
}

impl GameConfig {
    pub fn new(graph: Graph, f: Vec<u32>, g: Vec<u32>) -> Result<Self, ConfigError> {
        let n = graph.vertex_count();
        if f.len() != n || g.len() != n {
            return Err(ConfigError::LengthMismatch {
                expected: n,
                f: f.len(),
                g: g.len(),
            });
        }
        if let Some(v) = f.iter().position(|&x| x == 0) {
            return Err(ConfigError::ZeroBudget(v));
        }
        if let Some(v) = g.iter().position(|&x| x == 0) {
            return Err(ConfigError::ZeroMultiplicity(v));
        }
        Ok(GameConfig { graph, f, g })
    }

    /// Constant budgets `f ≡ k`, `g ≡ b`.
    pub fn uniform(graph: Graph, k: u32, b: u32) -> Result<Self, ConfigError> {
        let n = graph.vertex_count();
        Self::new(graph, alloc::vec![k; n], alloc::vec![b; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn f(&self) -> &[u32] {
        &self.f
    }

    pub fn g(&self) -> &[u32] {
        &self.g
    }

    /// `Σ_v f(v)`, an upper bound on the number of rounds.
    pub fn total_budget(&self) -> u64 {
        self.f.iter().map(|&x| u64::from(x)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Running,
    ListerWins,
    PainterWins,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lister,
    Painter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListerFault {
    Empty,
    OutOfRange(usize),
    /// Vertex already presented `f(v)` times.
    Exhausted(usize),
    /// Vertex already coloured `g(v)` times.
    FullyColored(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PainterFault {
    NotSubset(usize),
    NotIndependent(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveError {
    GameOver(Status),
    IllegalListerMove(ListerFault),
    IllegalPainterMove(PainterFault),
}

impl MoveError {
    /// The player responsible for the error, if any.
    pub fn offender(&self) -> Option<Side> {
        match self {
            MoveError::GameOver(_) => None,
            MoveError::IllegalListerMove(_) => Some(Side::Lister),
            MoveError::IllegalPainterMove(_) => Some(Side::Painter),
        }
    }
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::GameOver(s) => write!(f, "game already finished ({s:?})"),
            MoveError::IllegalListerMove(fault) => match fault {
                ListerFault::Empty => write!(f, "illegal Lister move: empty set"),
                ListerFault::OutOfRange(v) => {
                    write!(f, "illegal Lister move: vertex {v} out of range")
                }
                ListerFault::Exhausted(v) => {
                    write!(
                        f,
                        "illegal Lister move: vertex {v} has no permissible colours left"
                    )
                }
                ListerFault::FullyColored(v) => {
                    write!(
                        f,
                        "illegal Lister move: vertex {v} is already fully coloured"
                    )
                }
            },
            MoveError::IllegalPainterMove(fault) => match fault {
                PainterFault::NotSubset(v) => {
                    write!(f, "illegal Painter move: vertex {v} was not presented")
                }
                PainterFault::NotIndependent(u, v) => {
                    write!(f, "illegal Painter move: {u} and {v} are adjacent")
                }
            },
        }
    }
}

impl core::error::Error for MoveError {}

impl From<GraphError> for MoveError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::VertexOutOfRange { vertex, .. } => {
                MoveError::IllegalListerMove(ListerFault::OutOfRange(vertex))
            }
            _ => unreachable!("only range errors arise from move validation"),
        }
    }
}

/// Position of a game: counters `s` (times presented) and `t` (times
/// coloured) per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    config: Arc<GameConfig>,
    s: Vec<u32>,
    t: Vec<u32>,
    round: usize,
    status: Status,
}

impl GameState {
    pub fn new(config: Arc<GameConfig>) -> Self {
        let n = config.graph.vertex_count();
        let status = if n == 0 {
            Status::PainterWins
        } else {
            Status::Running
        };
        GameState {
            config,
            s: alloc::vec![0; n],
            t: alloc::vec![0; n],
            round: 0,
            status,
        }
    }

    pub fn config(&self) -> &Arc<GameConfig> {
        &self.config
    }

    pub fn graph(&self) -> &Graph {
        &self.config.graph
    }

    /// Rounds in which each vertex was presented.
    pub fn presented_counts(&self) -> &[u32] {
        &self.s
    }

    /// Rounds in which each vertex was coloured.
    pub fn colored_counts(&self) -> &[u32] {
        &self.t
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_running(&self) -> bool {
        self.status == Status::Running
    }

    /// Whether Lister may present `v` this round.
    pub fn is_active(&self, v: usize) -> bool {
        self.t[v] < self.config.g[v] && self.s[v] < self.config.f[v]
    }

    pub fn active_vertices(&self) -> VertexSet {
        (0..self.s.len()).filter(|&v| self.is_active(v)).collect()
    }

    /// Remaining permissible colours `f(v) - s(v)`.
    pub fn tokens_left(&self, v: usize) -> u32 {
        self.config.f[v] - self.s[v]
    }

    /// Remaining colour demand `g(v) - t(v)`.
    pub fn demand_left(&self, v: usize) -> u32 {
        self.config.g[v] - self.t[v]
    }

    pub fn check_lister_move(&self, presented: &VertexSet) -> Result<(), MoveError> {
        if self.status != Status::Running {
            return Err(MoveError::GameOver(self.status));
        }
        if presented.is_empty() {
            return Err(MoveError::IllegalListerMove(ListerFault::Empty));
        }
        self.graph().check_set(presented)?;
        for v in presented {
            if self.t[v] >= self.config.g[v] {
                return Err(MoveError::IllegalListerMove(ListerFault::FullyColored(v)));
            }
            if self.s[v] >= self.config.f[v] {
                return Err(MoveError::IllegalListerMove(ListerFault::Exhausted(v)));
            }
        }
        Ok(())
    }

    /// Validates Painter's answer; assumes the Lister move was legal.
    pub fn check_painter_move(
        &self,
        presented: &VertexSet,
        colored: &VertexSet,
    ) -> Result<(), MoveError> {
        if let Some(v) = colored.difference(presented).iter().next() {
            return Err(MoveError::IllegalPainterMove(PainterFault::NotSubset(v)));
        }
        if let Some((u, v)) = self.graph().find_edge_within(colored) {
            return Err(MoveError::IllegalPainterMove(PainterFault::NotIndependent(
                u, v,
            )));
        }
        Ok(())
    }

    /// Plays one round and returns the successor state.
    pub fn apply_round(
        &self,
        presented: &VertexSet,
        colored: &VertexSet,
    ) -> Result<GameState, MoveError> {
        self.check_lister_move(presented)?;
        self.check_painter_move(presented, colored)?;
        let mut next = self.clone();
        for v in presented {
            next.s[v] += 1;
        }
        for v in colored {
            next.t[v] += 1;
        }
        next.round += 1;
        next.status = next.evaluate();
        Ok(next)
    }

    fn evaluate(&self) -> Status {
        let cfg = &self.config;
        let n = self.s.len();
        if (0..n).any(|v| self.s[v] == cfg.f[v] && self.t[v] < cfg.g[v]) {
            Status::ListerWins
        } else if (0..n).all(|v| self.t[v] == cfg.g[v]) {
            Status::PainterWins
        } else {
            Status::Running
        }
    }

    /// A vertex witnessing a Lister win, if the game ended that way.
    pub fn losing_vertex(&self) -> Option<usize> {
        let cfg = &self.config;
        (0..self.s.len()).find(|&v| self.s[v] == cfg.f[v] && self.t[v] < cfg.g[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub presented: VertexSet,
    pub colored: VertexSet,
}

/// An illegal move that ended the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forfeit {
    pub presented: VertexSet,
    /// Painter's attempted answer; `None` when Lister forfeited.
    pub colored: Option<VertexSet>,
    pub error: MoveError,
}

impl Forfeit {
    pub fn offender(&self) -> Side {
        self.error
            .offender()
            .expect("forfeits are always attributable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub config: Arc<GameConfig>,
    pub rounds: Vec<Round>,
    pub status: Status,
    pub forfeit: Option<Forfeit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    /// Round `round` (0-based) violates the rules.
    IllegalRound {
        round: usize,
        error: MoveError,
    },
    /// A recorded forfeit move is actually legal, or blames the wrong side.
    BogusForfeit,
    /// Rounds recorded after the game had already ended.
    TrailingRounds {
        round: usize,
    },
    StatusMismatch {
        recorded: Status,
        replayed: Status,
    },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::IllegalRound { round, error } => write!(f, "round {round}: {error}"),
            ReplayError::BogusForfeit => write!(f, "recorded forfeit is not an illegal move"),
            ReplayError::TrailingRounds { round } => {
                write!(f, "round {round} recorded after the game ended")
            }
            ReplayError::StatusMismatch { recorded, replayed } => {
                write!(
                    f,
                    "recorded status {recorded:?} but replay gives {replayed:?}"
                )
            }
        }
    }
}

impl core::error::Error for ReplayError {}

impl Transcript {
    /// Re-validates every round and the final status.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        let mut state = GameState::new(self.config.clone());
        for (i, r) in self.rounds.iter().enumerate() {
            if !state.is_running() {
                return Err(ReplayError::TrailingRounds { round: i });
            }
            state = state
                .apply_round(&r.presented, &r.colored)
                .map_err(|error| ReplayError::IllegalRound { round: i, error })?;
        }
        let replayed = match &self.forfeit {
            None => state.status(),
            Some(forfeit) => {
                let err = match &forfeit.colored {
                    None => state.check_lister_move(&forfeit.presented).err(),
                    Some(colored) => state
                        .check_lister_move(&forfeit.presented)
                        .and_then(|_| state.check_painter_move(&forfeit.presented, colored))
                        .err(),
                };
                match err {
                    Some(e) if e == forfeit.error && e.offender().is_some() => {
                        winner_against(forfeit.offender())
                    }
                    _ => return Err(ReplayError::BogusForfeit),
                }
            }
        };
        if replayed != self.status {
            return Err(ReplayError::StatusMismatch {
                recorded: self.status,
                replayed,
            });
        }
        Ok(state)
    }
}

fn winner_against(offender: Side) -> Status {
    match offender {
        Side::Lister => Status::PainterWins,
        Side::Painter => Status::ListerWins,
    }
}

/// Runs a game to completion. Illegal moves forfeit the game for the player
/// who made them.
pub fn play(
    config: Arc<GameConfig>,
    lister: &mut dyn Lister,
    painter: &mut dyn Painter,
) -> Transcript {
    play_observed(config, lister, painter, |_, _| {})
}

/// Like [`play`], calling `observe(state, round)` after every completed round.
pub fn play_observed(
    config: Arc<GameConfig>,
    lister: &mut dyn Lister,
    painter: &mut dyn Painter,
    mut observe: impl FnMut(&GameState, &Round),
) -> Transcript {
    let mut state = GameState::new(config.clone());
    let mut rounds = Vec::new();
    let mut forfeit = None;
    while state.is_running() {
        let presented = lister.present(&state);
        if let Err(error) = state.check_lister_move(&presented) {
            forfeit = Some(Forfeit {
                presented,
                colored: None,
                error,
            });
            break;
        }
        let colored = painter.respond(&state, &presented);
        match state.apply_round(&presented, &colored) {
            Ok(next) => {
                let round = Round { presented, colored };
                observe(&next, &round);
                rounds.push(round);
                state = next;
            }
            Err(error) => {
                forfeit = Some(Forfeit {
                    presented,
                    colored: Some(colored),
                    error,
                });
                break;
            }
        }
    }
    let status = match &forfeit {
        Some(f) => winner_against(f.offender()),
        None => state.status(),
    };
    Transcript {
        config,
        rounds,
        status,
        forfeit,
    }
}
