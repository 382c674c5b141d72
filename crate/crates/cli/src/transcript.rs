//! JSON form of game transcripts and their replay.
//!
//! ```json
//! {"config": {"graph": {"vertex_count": 2, "edges": [[0, 1]]}, "f": [2, 2], "g": [1, 1]},
//!  "rounds": [{"presented": [0, 1], "colored": [0]}, ...],
//!  "status": "painter_wins", "rounds_played": 2}
//! ```
//!
//! A game ended by an illegal move carries a `forfeit` object with the
//! offending side, the move and the rule it broke.

use std::sync::Arc;

use lexpaint_core::game::{Forfeit, ReplayError};
use lexpaint_core::{GameConfig, GameState, Graph, Round, Side, Status, Transcript, VertexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusDoc {
    Running,
    PainterWins,
    ListerWins,
}

impl From<Status> for StatusDoc {
    fn from(s: Status) -> Self {
        match s {
            Status::Running => StatusDoc::Running,
            Status::PainterWins => StatusDoc::PainterWins,
            Status::ListerWins => StatusDoc::ListerWins,
        }
    }
}

impl From<StatusDoc> for Status {
    fn from(s: StatusDoc) -> Self {
        match s {
            StatusDoc::Running => Status::Running,
            StatusDoc::PainterWins => Status::PainterWins,
            StatusDoc::ListerWins => Status::ListerWins,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideDoc {
    Lister,
    Painter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph) -> Self {
        GraphDoc {
            vertex_count: graph.vertex_count(),
            edges: graph.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, TranscriptError> {
        let mut g = Graph::empty(self.vertex_count);
        for &[u, v] in &self.edges {
            g.add_edge(u, v)
                .map_err(|e| TranscriptError::Malformed(format!("edge {u}-{v}: {e}")))?;
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub graph: GraphDoc,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
}

impl ConfigDoc {
    pub fn from_config(config: &GameConfig) -> Self {
        ConfigDoc {
            graph: GraphDoc::from_graph(config.graph()),
            f: config.f().to_vec(),
            g: config.g().to_vec(),
        }
    }

    pub fn to_config(&self) -> Result<GameConfig, TranscriptError> {
        GameConfig::new(self.graph.to_graph()?, self.f.clone(), self.g.clone())
            .map_err(|e| TranscriptError::Malformed(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDoc {
    pub presented: Vec<usize>,
    pub colored: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForfeitDoc {
    pub offender: SideDoc,
    pub presented: Vec<usize>,
    /// Painter's answer; absent when Lister forfeited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colored: Option<Vec<usize>>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub config: ConfigDoc,
    pub rounds: Vec<RoundDoc>,
    pub status: StatusDoc,
    pub rounds_played: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forfeit: Option<ForfeitDoc>,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("malformed transcript: {0}")]
    Malformed(String),
    #[error("rounds_played is {recorded} but {actual} rounds are listed")]
    RoundCount { recorded: usize, actual: usize },
    #[error("round {round}: {message}")]
    Illegal { round: usize, message: String },
    #[error("recorded forfeit is not an illegal move by the {0:?}")]
    BogusForfeit(SideDoc),
    #[error("round {round} recorded after the game ended")]
    Trailing { round: usize },
    #[error("recorded status {recorded:?} but replay gives {replayed:?}")]
    StatusMismatch {
        recorded: StatusDoc,
        replayed: StatusDoc,
    },
}

fn set_to_vec(s: &VertexSet) -> Vec<usize> {
    s.to_vec()
}

fn vec_to_set(v: &[usize], n: usize, what: &str) -> Result<VertexSet, TranscriptError> {
    if let Some(&bad) = v.iter().find(|&&x| x >= n) {
        return Err(TranscriptError::Malformed(format!(
            "{what} lists vertex {bad} of a {n}-vertex graph"
        )));
    }
    Ok(v.iter().copied().collect())
}

impl TranscriptDoc {
    pub fn from_transcript(t: &Transcript) -> Self {
        TranscriptDoc {
            config: ConfigDoc::from_config(&t.config),
            rounds: t
                .rounds
                .iter()
                .map(|r| RoundDoc {
                    presented: set_to_vec(&r.presented),
                    colored: set_to_vec(&r.colored),
                })
                .collect(),
            status: t.status.into(),
            rounds_played: t.rounds.len(),
            forfeit: t.forfeit.as_ref().map(|f| ForfeitDoc {
                offender: match f.offender() {
                    Side::Lister => SideDoc::Lister,
                    Side::Painter => SideDoc::Painter,
                },
                presented: set_to_vec(&f.presented),
                colored: f.colored.as_ref().map(set_to_vec),
                error: f.error.to_string(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcripts serialise");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, TranscriptError> {
        serde_json::from_str(text).map_err(|e| TranscriptError::Malformed(e.to_string()))
    }

    /// Rebuilds the engine transcript, re-deriving the forfeit error from
    /// the rules.
    pub fn to_transcript(&self) -> Result<Transcript, TranscriptError> {
        if self.rounds_played != self.rounds.len() {
            return Err(TranscriptError::RoundCount {
                recorded: self.rounds_played,
                actual: self.rounds.len(),
            });
        }
        let config = Arc::new(self.config.to_config()?);
        let n = config.graph().vertex_count();
        let mut rounds = Vec::with_capacity(self.rounds.len());
        for (i, r) in self.rounds.iter().enumerate() {
            rounds.push(Round {
                presented: vec_to_set(&r.presented, n, &format!("round {i} presented set"))?,
                colored: vec_to_set(&r.colored, n, &format!("round {i} coloured set"))?,
            });
        }
        let forfeit = match &self.forfeit {
            None => None,
            Some(doc) => {
                let mut state = GameState::new(config.clone());
                for (i, r) in rounds.iter().enumerate() {
                    state = state.apply_round(&r.presented, &r.colored).map_err(|e| {
                        TranscriptError::Illegal {
                            round: i,
                            message: e.to_string(),
                        }
                    })?;
                }
                let presented = vec_to_set(&doc.presented, n, "forfeit presented set")?;
                let colored = doc
                    .colored
                    .as_deref()
                    .map(|c| vec_to_set(c, n, "forfeit coloured set"))
                    .transpose()?;
                let error = match (&colored, doc.offender) {
                    (None, SideDoc::Lister) => state.check_lister_move(&presented).err(),
                    (Some(c), SideDoc::Painter) => state
                        .check_lister_move(&presented)
                        .ok()
                        .and_then(|_| state.check_painter_move(&presented, c).err()),
                    _ => None,
                };
                let error = error.ok_or(TranscriptError::BogusForfeit(doc.offender))?;
                Some(Forfeit {
                    presented,
                    colored,
                    error,
                })
            }
        };
        Ok(Transcript {
            config,
            rounds,
            status: self.status.into(),
            forfeit,
        })
    }
}

/// Outcome of replaying a transcript file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayVerdict {
    pub status: StatusDoc,
    pub rounds: usize,
    /// Whether re-serialising the replayed game reproduces the input bytes.
    pub bit_exact: bool,
}

/// Re-validates every round of a JSON transcript and confirms its status.
pub fn replay_json(text: &str) -> Result<ReplayVerdict, TranscriptError> {
    let doc = TranscriptDoc::from_json(text)?;
    let transcript = doc.to_transcript()?;
    transcript.replay().map_err(|e| match e {
        ReplayError::IllegalRound { round, error } => TranscriptError::Illegal {
            round,
            message: error.to_string(),
        },
        ReplayError::BogusForfeit => TranscriptError::BogusForfeit(
            doc.forfeit.as_ref().map_or(SideDoc::Lister, |f| f.offender),
        ),
        ReplayError::TrailingRounds { round } => TranscriptError::Trailing { round },
        ReplayError::StatusMismatch { recorded, replayed } => TranscriptError::StatusMismatch {
            recorded: recorded.into(),
            replayed: replayed.into(),
        },
    })?;
    let again = TranscriptDoc::from_transcript(&transcript).to_json();
    Ok(ReplayVerdict {
        status: doc.status,
        rounds: doc.rounds.len(),
        bit_exact: again == text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lexpaint_core::game::play;
    use lexpaint_core::strategy::{FirstFitPainter, Lister, Painter, RandomLister};

    fn k2_game(k: u32) -> Transcript {
        let cfg = Arc::new(GameConfig::uniform(Graph::complete(2), k, 1).unwrap());
        play(cfg, &mut RandomLister::new(3), &mut FirstFitPainter)
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for k in 1..=3 {
            let t = k2_game(k);
            let json = TranscriptDoc::from_transcript(&t).to_json();
            let verdict = replay_json(&json).unwrap();
            assert!(verdict.bit_exact);
            assert_eq!(verdict.status, t.status.into());
            assert_eq!(
                TranscriptDoc::from_json(&json)
                    .unwrap()
                    .to_transcript()
                    .unwrap(),
                t
            );
        }
    }

    #[test]
    fn whitespace_changes_are_not_bit_exact() {
        let json = TranscriptDoc::from_transcript(&k2_game(2)).to_json();
        let compact = serde_json::to_string(&TranscriptDoc::from_json(&json).unwrap()).unwrap();
        let verdict = replay_json(&compact).unwrap();
        assert!(!verdict.bit_exact);
    }

    fn tampered(edit: impl FnOnce(&mut TranscriptDoc)) -> TranscriptError {
        let mut doc = TranscriptDoc::from_transcript(&k2_game(2));
        edit(&mut doc);
        replay_json(&doc.to_json()).unwrap_err()
    }

    #[test]
    fn tampering_is_rejected() {
        // Coloured vertex outside the presented set.
        let err = tampered(|d| {
            d.rounds[0].presented = vec![0];
            d.rounds[0].colored = vec![1];
        });
        assert!(
            matches!(err, TranscriptError::Illegal { round: 0, .. }),
            "{err}"
        );
        // Adjacent vertices coloured together.
        let err = tampered(|d| {
            d.rounds[0].presented = vec![0, 1];
            d.rounds[0].colored = vec![0, 1];
        });
        assert!(
            matches!(err, TranscriptError::Illegal { round: 0, .. }),
            "{err}"
        );
        let err = tampered(|d| d.status = StatusDoc::ListerWins);
        assert!(matches!(err, TranscriptError::StatusMismatch { .. }));
        let err = tampered(|d| d.rounds_played += 1);
        assert!(matches!(err, TranscriptError::RoundCount { .. }));
        let err = tampered(|d| d.rounds[0].presented.push(7));
        assert!(matches!(err, TranscriptError::Malformed(_)));
        let err = tampered(|d| {
            let last = d.rounds.last().unwrap().clone();
            d.rounds.push(last);
            d.rounds_played += 1;
        });
        assert!(matches!(
            err,
            TranscriptError::Trailing { .. } | TranscriptError::Illegal { .. }
        ));
        assert!(matches!(
            replay_json("{"),
            Err(TranscriptError::Malformed(_))
        ));
    }

    struct Cheater;

    impl Painter for Cheater {
        fn respond(&mut self, _: &GameState, presented: &VertexSet) -> VertexSet {
            presented.clone()
        }
    }

    struct Everything;

    impl Lister for Everything {
        fn present(&mut self, state: &GameState) -> VertexSet {
            state.active_vertices()
        }
    }

    #[test]
    fn forfeits_round_trip() {
        let cfg = Arc::new(GameConfig::uniform(Graph::complete(2), 2, 1).unwrap());
        let t = play(cfg, &mut Everything, &mut Cheater);
        assert_eq!(t.status, Status::ListerWins);
        let doc = TranscriptDoc::from_transcript(&t);
        assert_eq!(doc.forfeit.as_ref().unwrap().offender, SideDoc::Painter);
        let verdict = replay_json(&doc.to_json()).unwrap();
        assert!(verdict.bit_exact);

        let mut blamed = doc.clone();
        blamed.forfeit.as_mut().unwrap().colored = Some(vec![0]);
        assert!(matches!(
            replay_json(&blamed.to_json()),
            Err(TranscriptError::BogusForfeit(SideDoc::Painter))
        ));
    }
}
