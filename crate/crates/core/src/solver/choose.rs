//! Exact `(a, b)`-choosability.
//!
//! Vertices of each component are split into a prefix and a maximum
//! independent set of terminals. List assignments on the prefix are explored
//! depth first, tracking the set of feasible partial colourings restricted to
//! the prefix vertices that still have unassigned neighbours. Colours that
//! occur in no tracked colouring are interchangeable, so a list is described
//! by the tracked colours it contains plus fresh ones, and states are
//! memoised up to colour renaming. Once the prefix is assigned, each
//! terminal kills the colourings whose colours on its neighbourhood leave it
//! fewer than `b` free colours, and the terminals' lists are found by a
//! covering search.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::SolverError;
use crate::graph::Graph;

/// Per-vertex colour lists.
pub type ListAssignment = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChooseVerdict {
    Choosable,
    /// Lists from which no proper `b`-fold colouring can be chosen.
    NotChoosable(ListAssignment),
}

impl ChooseVerdict {
    pub fn is_choosable(&self) -> bool {
        matches!(self, ChooseVerdict::Choosable)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChooseOptions {
    /// Answer directly when `a < b·ω` or `a ≥ b·(degeneracy + 1)`.
    pub bounds: bool,
    pub vertex_cap: usize,
    /// Largest `a` searched when `b = 1`.
    pub list_cap: usize,
    /// Work allowed, counted in search nodes plus colourings generated and
    /// terminal checks made.
    pub node_budget: Option<usize>,
}

impl Default for ChooseOptions {
    fn default() -> Self {
        ChooseOptions {
            bounds: true,
            vertex_cap: 8,
            list_cap: 5,
            node_budget: Some(100_000_000),
        }
    }
}

const COLOUR_CAP: usize = 64;

fn same_lists(n: usize, a: usize) -> ListAssignment {
    vec![(0..a as u32).collect(); n]
}

/// Whether every assignment of `a`-element lists admits disjoint `b`-subsets
/// on adjacent vertices.
pub fn is_choosable(
    graph: &Graph,
    a: usize,
    b: usize,
    options: ChooseOptions,
) -> Result<ChooseVerdict, SolverError> {
    if b == 0 {
        return Err(SolverError::InvalidInput("multiplicity must be positive"));
    }
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(ChooseVerdict::Choosable);
    }
    if a < b {
        return Ok(ChooseVerdict::NotChoosable(same_lists(n, a)));
    }
    if options.bounds {
        if a < b * graph.clique_number() {
            return Ok(ChooseVerdict::NotChoosable(same_lists(n, a)));
        }
        if a >= b * (graph.degeneracy() + 1) {
            return Ok(ChooseVerdict::Choosable);
        }
    }
    if n > options.vertex_cap {
        return Err(SolverError::TooLarge {
            what: "vertex count",
            size: n,
            cap: options.vertex_cap,
        });
    }
    if b == 1 && a > options.list_cap {
        return Err(SolverError::TooLarge {
            what: "list size",
            size: a,
            cap: options.list_cap,
        });
    }
    let mut nodes = 0usize;
    for comp in graph.components() {
        let sub = graph.induced(&comp);
        let mut search = Search::new(&sub, a, b, options.node_budget, &mut nodes);
        if let Some(local) = search.run()? {
            let mut lists = same_lists(n, a);
            for (i, &v) in comp.iter().enumerate() {
                lists[v] = local[i].clone();
            }
            return Ok(ChooseVerdict::NotChoosable(lists));
        }
    }
    Ok(ChooseVerdict::Choosable)
}

/// The `b`-fold choice number. Zero for the empty graph.
pub fn choice_number(
    graph: &Graph,
    b: usize,
    options: ChooseOptions,
) -> Result<usize, SolverError> {
    if b == 0 {
        return Err(SolverError::InvalidInput("multiplicity must be positive"));
    }
    if graph.vertex_count() == 0 {
        return Ok(0);
    }
    let lower = if b == 1 {
        super::chromatic_number(graph)?
    } else {
        b * graph.clique_number()
    };
    let upper = b * (graph.degeneracy() + 1);
    for a in lower..upper {
        if is_choosable(graph, a, b, options)?.is_choosable() {
            return Ok(a);
        }
    }
    Ok(upper)
}

/// Flat set of partial colourings: `width` colour masks per colouring,
/// colourings sorted and distinct.
type Colourings = Vec<u64>;

struct Search<'a> {
    a: usize,
    b: usize,
    /// Component-local vertex ids: prefix first, then terminals.
    prefix: Vec<usize>,
    terminals: Vec<usize>,
    frontier: Vec<Vec<usize>>,
    nbr_pos: Vec<Vec<usize>>,
    proj: Vec<Vec<Option<usize>>>,
    term_nbr_pos: Vec<Vec<usize>>,
    twin_of: Vec<usize>,
    failed: HashSet<(usize, Colourings)>,
    nodes: &'a mut usize,
    budget: Option<usize>,
}

/// Lists for the vertices still to be assigned, in local labels.
type Witness = Vec<u64>;

impl<'a> Search<'a> {
    fn new(graph: &Graph, a: usize, b: usize, budget: Option<usize>, nodes: &'a mut usize) -> Self {
        let n = graph.vertex_count();
        let adj = graph.adjacency_masks();
        let terminals = graph.maximum_independent_set().to_vec();
        let term_mask: u64 = terminals.iter().map(|&t| 1u64 << t).sum();

        // Prefix order: grow from the vertex with most terminal neighbours,
        // always taking the vertex with most already-placed neighbours.
        let mut rest: Vec<usize> = (0..n).filter(|&v| term_mask & (1u64 << v) == 0).collect();
        let mut prefix = Vec::with_capacity(rest.len());
        let mut placed = 0u64;
        while !rest.is_empty() {
            let (idx, _) = rest
                .iter()
                .enumerate()
                .max_by_key(|&(_, &v)| {
                    (
                        (adj[v] & placed).count_ones(),
                        (adj[v] & term_mask).count_ones(),
                        core::cmp::Reverse(v),
                    )
                })
                .unwrap();
            let v = rest.remove(idx);
            placed |= 1 << v;
            prefix.push(v);
        }

        let k = prefix.len();
        let mut frontier = vec![Vec::new()];
        let mut nbr_pos = Vec::with_capacity(k);
        let mut proj = Vec::with_capacity(k);
        for i in 0..k {
            let p = prefix[i];
            let later: u64 = prefix[i + 1..].iter().map(|&v| 1u64 << v).sum::<u64>() | term_mask;
            let cur = &frontier[i];
            nbr_pos.push(
                cur.iter()
                    .enumerate()
                    .filter(|&(_, &u)| adj[p] & (1u64 << u) != 0)
                    .map(|(j, _)| j)
                    .collect::<Vec<_>>(),
            );
            let mut next = Vec::new();
            let mut map = Vec::new();
            for (j, &u) in cur.iter().enumerate() {
                if adj[u] & later != 0 {
                    next.push(u);
                    map.push(Some(j));
                }
            }
            if adj[p] & later != 0 {
                next.push(p);
                map.push(None);
            }
            proj.push(map);
            frontier.push(next);
        }
        let last = &frontier[k];
        let term_nbr_pos = terminals
            .iter()
            .map(|&t| {
                last.iter()
                    .enumerate()
                    .filter(|&(_, &u)| adj[t] & (1u64 << u) != 0)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let twin_of = terminals
            .iter()
            .map(|&t| terminals.iter().position(|&s| adj[s] == adj[t]).unwrap())
            .collect();

        Search {
            a,
            b,
            prefix,
            terminals,
            frontier,
            nbr_pos,
            proj,
            term_nbr_pos,
            twin_of,
            failed: HashSet::new(),
            nodes,
            budget,
        }
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.charge(1)
    }

    /// Counts `work` units against the budget.
    fn charge(&mut self, work: usize) -> Result<(), SolverError> {
        *self.nodes += work;
        match self.budget {
            Some(b) if *self.nodes > b => Err(SolverError::BudgetExceeded {
                explored: *self.nodes,
            }),
            _ => Ok(()),
        }
    }

    /// Bad lists for the component in local vertex order, if any.
    fn run(&mut self) -> Result<Option<ListAssignment>, SolverError> {
        let start: Colourings = Vec::new();
        let Some(lists) = self.prefix_step(0, start)? else {
            return Ok(None);
        };
        let n = self.prefix.len() + self.terminals.len();
        let mut out = vec![Vec::new(); n];
        for (v, mask) in self.prefix.iter().chain(self.terminals.iter()).zip(lists) {
            out[*v] = bits(mask).map(|c| c as u32).collect();
        }
        Ok(Some(out))
    }

    fn filler(&self, from: usize) -> u64 {
        (0..self.a).map(|c| 1u64 << (from + c)).sum()
    }

    fn prefix_step(&mut self, i: usize, set: Colourings) -> Result<Option<Witness>, SolverError> {
        let k = self.prefix.len();
        if i == k {
            return self.terminal_phase(&set);
        }
        let width = self.frontier[i].len();
        let count = set.len().checked_div(width).unwrap_or(1);
        let key = (i, set);
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let set = key.1;
        self.tick()?;

        let active = colour_count(&set);
        let a = self.a;
        for j in (0..=a.min(active)).rev() {
            let fresh = a - j;
            if active + fresh > COLOUR_CAP {
                return Err(SolverError::TooLarge {
                    what: "colour count",
                    size: active + fresh,
                    cap: COLOUR_CAP,
                });
            }
            let fresh_mask: u64 = (0..fresh).map(|c| 1u64 << (active + c)).sum();
            for chosen in subsets_of_size((1u64 << active) - 1, j) {
                let list = chosen | fresh_mask;
                let next = self.extend(i, &set, count, list);
                self.charge(next.len())?;
                if next.is_empty() {
                    let mut w = vec![list];
                    let rest = k - i - 1 + self.terminals.len();
                    w.extend(core::iter::repeat_n(self.filler(0), rest));
                    return Ok(Some(w));
                }
                let (norm, map) = normalise(next);
                if let Some(child) = self.prefix_step(i + 1, norm)? {
                    let child_active = map.iter().filter(|m| m.is_some()).count();
                    let ext = active + fresh;
                    let mut inverse = [0usize; 64];
                    for (old, new) in map.iter().enumerate() {
                        if let Some(new) = new {
                            inverse[*new] = old;
                        }
                    }
                    let mut w = vec![list];
                    for mask in child {
                        let mut m = 0u64;
                        for c in bits(mask) {
                            let old = if c < child_active {
                                inverse[c]
                            } else {
                                ext + c - child_active
                            };
                            if old >= COLOUR_CAP {
                                return Err(SolverError::TooLarge {
                                    what: "colour count",
                                    size: old + 1,
                                    cap: COLOUR_CAP,
                                });
                            }
                            m |= 1 << old;
                        }
                        w.push(m);
                    }
                    return Ok(Some(w));
                }
            }
        }
        self.failed.insert((i, set));
        Ok(None)
    }

    /// Feasible colourings after giving `prefix[i]` the list `list`,
    /// restricted to the next frontier (unsorted, may repeat).
    fn extend(&self, i: usize, set: &Colourings, count: usize, list: u64) -> Vec<Vec<u64>> {
        let width = self.frontier[i].len();
        let mut out = Vec::new();
        for e in 0..count {
            let phi = &set[e * width..(e + 1) * width];
            let forbidden = self.nbr_pos[i].iter().fold(0u64, |m, &j| m | phi[j]);
            let free = list & !forbidden;
            for pick in subsets_of_size(free, self.b) {
                out.push(
                    self.proj[i]
                        .iter()
                        .map(|src| match src {
                            Some(j) => phi[*j],
                            None => pick,
                        })
                        .collect(),
                );
            }
        }
        out
    }

    fn terminal_phase(&mut self, set: &Colourings) -> Result<Option<Witness>, SolverError> {
        let width = self.frontier[self.prefix.len()].len();
        let count = set.len().checked_div(width).unwrap_or(1);
        let active = colour_count(set);
        let nt = self.terminals.len();
        // blocked[e][t]: colours used by colouring e on terminal t's neighbours.
        let blocked: Vec<Vec<u64>> = (0..count)
            .map(|e| {
                let phi = &set[e * width..(e + 1) * width];
                self.term_nbr_pos
                    .iter()
                    .map(|pos| pos.iter().fold(0u64, |m, &j| m | phi[j]))
                    .collect()
            })
            .collect();
        let pool = if active >= self.a {
            (1u64 << active) - 1
        } else {
            if self.a > COLOUR_CAP {
                return Err(SolverError::TooLarge {
                    what: "colour count",
                    size: self.a,
                    cap: COLOUR_CAP,
                });
            }
            (1u64 << self.a) - 1
        };
        let twin_of = self.twin_of.clone();
        let mut cover = Cover {
            blocked: &blocked,
            a: self.a,
            b: self.b,
            pool,
            twin_of: &twin_of,
            dead: HashSet::new(),
        };
        let uncovered: Vec<usize> = (0..count).collect();
        let mut chosen = vec![None; nt];
        if !cover.search(&uncovered, 0, &mut chosen, self)? {
            return Ok(None);
        }
        let filler = self.filler(0);
        let mut w: Witness = Vec::with_capacity(nt);
        for c in chosen {
            w.push(c.unwrap_or(filler));
        }
        Ok(Some(w))
    }
}

struct Cover<'b> {
    blocked: &'b [Vec<u64>],
    a: usize,
    b: usize,
    pool: u64,
    twin_of: &'b [usize],
    dead: HashSet<(Vec<usize>, u64)>,
}

impl Cover<'_> {
    fn kills(&self, e: usize, t: usize, list: u64) -> bool {
        ((list & !self.blocked[e][t]).count_ones() as usize) < self.b
    }

    fn search(
        &mut self,
        uncovered: &[usize],
        used: u64,
        chosen: &mut [Option<u64>],
        search: &mut Search<'_>,
    ) -> Result<bool, SolverError> {
        let Some(&first) = uncovered.first() else {
            return Ok(true);
        };
        let nt = chosen.len();
        if used.count_ones() as usize == nt {
            return Ok(false);
        }
        let key = (uncovered.to_vec(), used);
        if self.dead.contains(&key) {
            return Ok(false);
        }
        search.tick()?;
        for t in 0..nt {
            if used & (1 << t) != 0 {
                continue;
            }
            let twin = self.twin_of[t];
            if (0..t).any(|s| self.twin_of[s] == twin && used & (1 << s) == 0) {
                continue;
            }
            let inside = self.pool & self.blocked[first][t];
            let outside = self.pool & !inside;
            let need = self.a + 1 - self.b;
            let lists: Vec<u64> = if self.pool.count_ones() as usize == self.a {
                if self.kills(first, t, self.pool) {
                    vec![self.pool]
                } else {
                    Vec::new()
                }
            } else {
                let mut v = Vec::new();
                for k in need..=self.a.min(inside.count_ones() as usize) {
                    for s1 in subsets_of_size(inside, k) {
                        for s2 in subsets_of_size(outside, self.a - k) {
                            v.push(s1 | s2);
                        }
                    }
                }
                v
            };
            search.charge(lists.len() * uncovered.len())?;
            for list in lists {
                let rest: Vec<usize> = uncovered
                    .iter()
                    .copied()
                    .filter(|&e| !self.kills(e, t, list))
                    .collect();
                chosen[t] = Some(list);
                if self.search(&rest, used | (1 << t), chosen, search)? {
                    return Ok(true);
                }
                chosen[t] = None;
            }
        }
        self.dead.insert(key);
        Ok(false)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(c)
        }
    })
}

fn colour_count(set: &[u64]) -> usize {
    let all = set.iter().fold(0u64, |m, &x| m | x);
    64 - all.leading_zeros() as usize
}

/// All `k`-element subsets of the bits of `mask`.
fn subsets_of_size(mask: u64, k: usize) -> Vec<u64> {
    let items: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let m = items.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << items[i]));
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn relabel(mask: u64, map: &[Option<usize>; 64]) -> u64 {
    bits(mask).fold(0u64, |m, c| m | 1 << map[c].unwrap())
}

/// Renames colours by first appearance and sorts, a few rounds; returns the
/// flattened set and the composed old-to-new map.
fn normalise(mut set: Vec<Vec<u64>>) -> (Colourings, [Option<usize>; 64]) {
    set.sort_unstable();
    set.dedup();
    let mut total: [Option<usize>; 64] = [None; 64];
    for c in bits(set.iter().flatten().fold(0u64, |m, &x| m | x)) {
        total[c] = Some(c);
    }
    for _ in 0..4 {
        let mut map: [Option<usize>; 64] = [None; 64];
        let mut next = 0;
        for phi in &set {
            for &mask in phi {
                for c in bits(mask) {
                    if map[c].is_none() {
                        map[c] = Some(next);
                        next += 1;
                    }
                }
            }
        }
        if (0..next).all(|c| map[c] == Some(c)) {
            break;
        }
        for phi in set.iter_mut() {
            for mask in phi.iter_mut() {
                *mask = relabel(*mask, &map);
            }
        }
        set.sort_unstable();
        set.dedup();
        for t in total.iter_mut() {
            *t = t.and_then(|c| map[c]);
        }
    }
    (set.into_iter().flatten().collect(), total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::listcolor::find_list_coloring;

    fn no_bounds() -> ChooseOptions {
        ChooseOptions {
            bounds: false,
            ..ChooseOptions::default()
        }
    }

    fn assert_bad(graph: &Graph, lists: &ListAssignment, a: usize, b: usize) {
        assert!(lists.iter().all(|l| l.len() == a));
        assert!(find_list_coloring(graph, lists, b).is_none(), "{lists:?}");
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(0b1011, 2), [0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b111, 0), [0]);
        assert_eq!(subsets_of_size(0b1, 2), [0u64; 0]);
        assert_eq!(subsets_of_size(0b11111, 3).len(), 10);
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=5 {
            let g = Graph::complete(n);
            let modes: &[ChooseOptions] = if n <= 4 {
                &[ChooseOptions::default(), no_bounds()]
            } else {
                &[ChooseOptions::default()]
            };
            for &opts in modes {
                assert!(is_choosable(&g, n, 1, opts).unwrap().is_choosable());
                match is_choosable(&g, n - 1, 1, opts).unwrap() {
                    ChooseVerdict::NotChoosable(l) => assert_bad(&g, &l, n - 1, 1),
                    ChooseVerdict::Choosable => panic!("K_{n}"),
                }
            }
            assert_eq!(choice_number(&g, 1, ChooseOptions::default()).unwrap(), n);
        }
    }

    #[test]
    fn bipartite_examples() {
        let opts = ChooseOptions::default();
        let c4 = Graph::cycle(4).unwrap();
        assert!(is_choosable(&c4, 2, 1, opts).unwrap().is_choosable());
        assert_eq!(choice_number(&c4, 1, opts).unwrap(), 2);

        let k24 = Graph::complete_bipartite(2, 4);
        match is_choosable(&k24, 2, 1, opts).unwrap() {
            ChooseVerdict::NotChoosable(l) => assert_bad(&k24, &l, 2, 1),
            ChooseVerdict::Choosable => panic!("K_2,4 is not 2-choosable"),
        }
        assert_eq!(choice_number(&k24, 1, opts).unwrap(), 3);
        assert_eq!(
            choice_number(&Graph::complete_bipartite(3, 3), 1, opts).unwrap(),
            3
        );
        assert_eq!(
            choice_number(&Graph::complete_bipartite(2, 3), 1, opts).unwrap(),
            2
        );
        assert_eq!(choice_number(&Graph::empty(4), 1, opts).unwrap(), 1);
    }

    #[test]
    fn b_fold_edge() {
        for b in 1..=3 {
            let k2 = Graph::complete(2);
            assert_eq!(
                choice_number(&k2, b, ChooseOptions::default()).unwrap(),
                2 * b
            );
            match is_choosable(&k2, 2 * b - 1, b, no_bounds()).unwrap() {
                ChooseVerdict::NotChoosable(l) => assert_bad(&k2, &l, 2 * b - 1, b),
                ChooseVerdict::Choosable => panic!("b = {b}"),
            }
            assert!(is_choosable(&k2, 2 * b, b, no_bounds())
                .unwrap()
                .is_choosable());
        }
    }

    #[test]
    fn even_cycle_is_4_2_choosable() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(choice_number(&c4, 2, ChooseOptions::default()).unwrap(), 4);
    }

    #[test]
    fn disconnected_witness() {
        let mut g = Graph::complete_bipartite(2, 4);
        let mut h = Graph::empty(7);
        for (u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        g = h;
        match is_choosable(&g, 2, 1, ChooseOptions::default()).unwrap() {
            ChooseVerdict::NotChoosable(l) => assert_bad(&g, &l, 2, 1),
            ChooseVerdict::Choosable => panic!(),
        }
    }
}
