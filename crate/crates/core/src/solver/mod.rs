//! Exact oracles for desk-scale graphs.

use core::fmt;

mod choose;
mod chromatic;
mod paint;

pub use choose::{choice_number, is_choosable, ChooseOptions, ChooseVerdict, ListAssignment};
pub use chromatic::{chromatic_number, find_coloring, CHROMATIC_VERTEX_CAP};
pub use paint::{
    is_paintable, paint_number, PaintOptions, PaintSolver, PolicyEntry, ReplyMode, StrategyPolicy,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// Input exceeds a configured size cap.
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    /// The search visited more positions than allowed.
    BudgetExceeded {
        explored: usize,
    },
    InvalidInput(&'static str),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::TooLarge { what, size, cap } => {
                write!(f, "{what} is {size}, above the cap of {cap}")
            }
            SolverError::BudgetExceeded { explored } => {
                write!(f, "search budget exhausted after {explored} positions")
            }
            SolverError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for SolverError {}

/// Maximal independent subsets of `set` in the graph given by `adj` masks
/// (Bron–Kerbosch on the complement), larger sets first.
pub(crate) fn maximal_independent_subsets(adj: &[u64], set: u64) -> alloc::vec::Vec<u64> {
    fn expand(
        adj: &[u64],
        chosen: u64,
        mut cand: u64,
        mut excl: u64,
        out: &mut alloc::vec::Vec<u64>,
    ) {
        if cand == 0 {
            if excl == 0 {
                out.push(chosen);
            }
            return;
        }
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let bit = 1u64 << v;
            let closed = adj[v] | bit;
            expand(adj, chosen | bit, cand & !closed, excl & !closed, out);
            cand &= !bit;
            excl |= bit;
        }
    }
    let mut out = alloc::vec::Vec::new();
    expand(adj, 0, set, 0, &mut out);
    out.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(b.cmp(a)));
    out
}

/// All independent subsets of `set`, including the empty set, larger first.
pub(crate) fn independent_subsets(adj: &[u64], set: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut sub = set;
    loop {
        let mut m = sub;
        let mut ok = true;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if adj[v] & sub != 0 {
                ok = false;
                break;
            }
            m &= m - 1;
        }
        if ok {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & set;
    }
    out.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(b.cmp(a)));
    out
}
