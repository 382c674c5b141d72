//! List colourings, directly and through the painting game.
//!
//! A run of the painting game in which Lister presents, colour by colour,
//! the vertices whose list contains that colour is exactly the search for an
//! `L`-colouring: the rounds in which Painter colours `v` give the colours
//! assigned to `v`. A winning Painter strategy for budgets `|L(v)|` therefore
//! colours from every such list assignment.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::game::{play, GameConfig, Status, Transcript};
use crate::graph::Graph;
use crate::strategy::{ListLister, Painter};

/// Whether `coloring` picks `b` distinct colours from each list with
/// adjacent vertices disjoint.
pub fn is_list_coloring(
    graph: &Graph,
    lists: &[Vec<u32>],
    b: usize,
    coloring: &[Vec<u32>],
) -> bool {
    let n = graph.vertex_count();
    if lists.len() != n || coloring.len() != n {
        return false;
    }
    for v in 0..n {
        let c = &coloring[v];
        if c.len() != b || c.iter().any(|x| !lists[v].contains(x)) {
            return false;
        }
        if (1..c.len()).any(|i| c[..i].contains(&c[i])) {
            return false;
        }
    }
    graph
        .edges()
        .all(|(u, v)| coloring[u].iter().all(|c| !coloring[v].contains(c)))
}

/// A `b`-fold colouring from `lists` by plain backtracking, if any.
pub fn find_list_coloring(graph: &Graph, lists: &[Vec<u32>], b: usize) -> Option<Vec<Vec<u32>>> {
    let n = graph.vertex_count();
    if lists.len() != n {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(graph.degree(v)), v));
    let mut coloring: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut done = vec![false; n];

    fn go(
        graph: &Graph,
        lists: &[Vec<u32>],
        b: usize,
        order: &[usize],
        i: usize,
        coloring: &mut [Vec<u32>],
        done: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        let mut free: Vec<u32> = lists[v]
            .iter()
            .copied()
            .filter(|c| {
                graph
                    .neighbors(v)
                    .iter()
                    .all(|u| !done[u] || !coloring[u].contains(c))
            })
            .collect();
        free.sort_unstable();
        free.dedup();
        if free.len() < b {
            return false;
        }
        let mut idx: Vec<usize> = (0..b).collect();
        loop {
            coloring[v] = idx.iter().map(|&j| free[j]).collect();
            done[v] = true;
            if go(graph, lists, b, order, i + 1, coloring, done) {
                return true;
            }
            done[v] = false;
            let mut j = b;
            while j > 0 && idx[j - 1] == free.len() - b + j - 1 {
                j -= 1;
            }
            if j == 0 {
                coloring[v].clear();
                return false;
            }
            idx[j - 1] += 1;
            for k in j..b {
                idx[k] = idx[k - 1] + 1;
            }
        }
    }

    go(graph, lists, b, &order, 0, &mut coloring, &mut done).then_some(coloring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListColorError {
    ListSizeMismatch {
        vertex: usize,
        expected: u32,
        found: usize,
    },
    DuplicateColor {
        vertex: usize,
        color: u32,
    },
    /// The lists defeated the Painter; `vertex` ran out of colours.
    ListerWon {
        vertex: usize,
        transcript: Transcript,
    },
    PainterForfeit(Transcript),
}

impl fmt::Display for ListColorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListColorError::ListSizeMismatch {
                vertex,
                expected,
                found,
            } => write!(
                f,
                "list of vertex {vertex} has {found} colours, expected {expected}"
            ),
            ListColorError::DuplicateColor { vertex, color } => {
                write!(f, "list of vertex {vertex} repeats colour {color}")
            }
            ListColorError::ListerWon { vertex, .. } => {
                write!(f, "painter failed to colour vertex {vertex} from its list")
            }
            ListColorError::PainterForfeit(t) => match &t.forfeit {
                Some(ff) => write!(f, "painter made an illegal move: {}", ff.error),
                None => write!(f, "painter made an illegal move"),
            },
        }
    }
}

impl core::error::Error for ListColorError {}

/// Colours from `lists` by letting `painter` play against the list Lister.
///
/// Lists must have exactly `f(v)` distinct colours. On success, vertex `v`
/// receives the `g(v)` colours of the rounds in which it was coloured.
pub fn l_color_via_painting(
    config: Arc<GameConfig>,
    lists: &[Vec<u32>],
    painter: &mut dyn Painter,
) -> Result<Vec<Vec<u32>>, ListColorError> {
    let n = config.graph().vertex_count();
    for v in 0..n {
        let list = lists.get(v).map_or(&[][..], |l| &l[..]);
        if list.len() != config.f()[v] as usize {
            return Err(ListColorError::ListSizeMismatch {
                vertex: v,
                expected: config.f()[v],
                found: list.len(),
            });
        }
        if let Some(i) = (1..list.len()).find(|&i| list[..i].contains(&list[i])) {
            return Err(ListColorError::DuplicateColor {
                vertex: v,
                color: list[i],
            });
        }
    }
    if lists.len() != n {
        return Err(ListColorError::ListSizeMismatch {
            vertex: n,
            expected: 0,
            found: lists.len(),
        });
    }
    let mut lister = ListLister::new(lists.to_vec());
    let transcript = play(config, &mut lister, painter);
    match transcript.status {
        Status::PainterWins if transcript.forfeit.is_none() => {
            let mut coloring = vec![Vec::new(); n];
            for (round, &colour) in transcript.rounds.iter().zip(lister.presented_colours()) {
                for v in &round.colored {
                    coloring[v].push(colour);
                }
            }
            Ok(coloring)
        }
        Status::ListerWins if transcript.forfeit.is_none() => {
            let state = transcript.replay().ok();
            let vertex = state.and_then(|s| s.losing_vertex()).unwrap_or(0);
            Err(ListColorError::ListerWon { vertex, transcript })
        }
        _ => Err(ListColorError::PainterForfeit(transcript)),
    }
}
