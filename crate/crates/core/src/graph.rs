//! Simple undirected graphs on dense 0-based vertices, plus the standard
//! families used throughout the crate.

use alloc::vec::Vec;
use core::fmt;

use crate::vset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange {
        vertex: usize,
        vertex_count: usize,
    },
    SelfLoop(usize),
    /// A family was requested with parameters outside its domain.
    InvalidFamily(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange {
                vertex,
                vertex_count,
            } => {
                write!(
                    f,
                    "vertex {vertex} out of range (graph has {vertex_count} vertices)"
                )
            }
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::InvalidFamily(msg) => write!(f, "invalid graph family: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Simple undirected graph with per-vertex neighbour bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: alloc::vec![VertexSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv` (idempotent).
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.adj.len(),
            })
        }
    }

    /// Checks every member of `s` is a vertex of this graph.
    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|n| n.contains(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree `Δ`; 0 for graphs without vertices.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, n)| n.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// True iff no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| !self.adj[v].intersects(s)))
    }

    /// An adjacent pair inside `s`, if one exists.
    pub fn find_edge_within(&self, s: &VertexSet) -> Option<(usize, usize)> {
        s.iter().find_map(|u| {
            self.adj
                .get(u)?
                .intersection(s)
                .iter()
                .next()
                .map(|v| (u.min(v), u.max(v)))
        })
    }

    /// Neighbour sets as 64-bit masks. Only meaningful for graphs with at
    /// most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.vertex_count() <= 64);
        self.adj.iter().map(VertexSet::to_mask).collect()
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for root in 0..n {
            if seen.contains(root) {
                continue;
            }
            let mut comp = VertexSet::singleton(root);
            let mut stack = alloc::vec![root];
            seen.insert(root);
            while let Some(u) = stack.pop() {
                for v in &self.adj[u] {
                    if seen.insert(v) {
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            out.push(comp.to_vec());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Degeneracy: the least `d` such that every subgraph has a vertex of
    /// degree at most `d`. Returned together with an elimination order in
    /// which every vertex has at most `d` neighbours *later* in the order.
    pub fn degeneracy_order(&self) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut alive = VertexSet::full(n);
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        while !alive.is_empty() {
            let v = alive
                .iter()
                .min_by_key(|&v| self.adj[v].intersection(&alive).len())
                .expect("non-empty");
            d = d.max(self.adj[v].intersection(&alive).len());
            alive.remove(v);
            order.push(v);
        }
        (d, order)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().0
    }

    /// Size of a largest clique (exact branch and bound).
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, size: usize, cand: VertexSet, best: &mut usize) {
            if cand.is_empty() {
                *best = (*best).max(size);
                return;
            }
            if size + cand.len() <= *best {
                return;
            }
            let mut rest = cand;
            while let Some(v) = rest.iter().next() {
                if size + rest.len() <= *best {
                    return;
                }
                rest.remove(v);
                grow(g, size + 1, rest.intersection(&g.adj[v]), best);
            }
            *best = (*best).max(size);
        }
        let mut best = 0;
        grow(self, 0, VertexSet::full(self.vertex_count()), &mut best);
        best
    }

    /// A maximum independent set (exact; exponential, for small graphs).
    pub fn maximum_independent_set(&self) -> VertexSet {
        fn grow(g: &Graph, chosen: &VertexSet, cand: VertexSet, best: &mut VertexSet) {
            if chosen.len() + cand.len() <= best.len() {
                return;
            }
            let Some(v) = cand.iter().next() else {
                *best = chosen.clone();
                return;
            };
            let mut with = chosen.clone();
            with.insert(v);
            let mut cand_with = cand.difference(&g.adj[v]);
            cand_with.remove(v);
            grow(g, &with, cand_with, best);
            let mut cand_without = cand;
            cand_without.remove(v);
            grow(g, chosen, cand_without, best);
        }
        let mut best = VertexSet::new();
        grow(
            self,
            &VertexSet::new(),
            VertexSet::full(self.vertex_count()),
            &mut best,
        );
        best
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(VertexSet::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Complete graph `K_r`.
    pub fn complete(r: usize) -> Self {
        Graph {
            adj: (0..r)
                .map(|v| {
                    let mut s = VertexSet::full(r);
                    s.remove(v);
                    s
                })
                .collect(),
        }
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidFamily("cycle needs at least 3 vertices"));
        }
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0)?;
        Ok(g)
    }

    /// Path `P_n` on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.adj[v - 1].insert(v);
            g.adj[v].insert(v - 1);
        }
        g
    }

    /// Complete multipartite `K_{n*r}`: `r` classes of `n` vertices each.
    /// Vertex `x*n + y` is the `y`-th vertex of class `x`.
    pub fn complete_multipartite(n: usize, r: usize) -> Self {
        let total = n * r;
        Graph {
            adj: (0..total)
                .map(|v| {
                    let class = v / n;
                    let mut s = VertexSet::full(total);
                    for w in class * n..(class + 1) * n {
                        s.remove(w);
                    }
                    s
                })
                .collect(),
        }
    }

    /// Complete bipartite `K_{m,n}`; the `m`-side is `0..m`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Graph::empty(m + n);
        for u in 0..m {
            for v in m..m + n {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        g
    }

    /// One representative of every isomorphism class on `n` vertices,
    /// ordered by edge count. `n` is capped at 6.
    pub fn all_up_to_isomorphism(n: usize) -> Result<Vec<Graph>, GraphError> {
        if n > 6 {
            return Err(GraphError::InvalidFamily(
                "isomorphism classes are only enumerated up to 6 vertices",
            ));
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let index = |u: usize, v: usize| {
            let key = if u < v { (u, v) } else { (v, u) };
            pairs.iter().position(|&p| p == key).unwrap()
        };
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            perms.push(pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect());
        });
        let mut out = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let canonical = perms.iter().all(|map| {
                let mut image = 0u32;
                for (i, &j) in map.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        image |= 1 << j;
                    }
                }
                image >= mask
            });
            if canonical {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect();
                out.push(Graph::from_edges(n, &edges)?);
            }
        }
        out.sort_by_key(Graph::edge_count);
        Ok(out)
    }
}

fn permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Empty(usize),
    Cycle(usize),
    Path(usize),
    /// `K_{n*r}`: `parts` classes of `part_size` vertices.
    Multipartite {
        part_size: usize,
        parts: usize,
    },
    Bipartite(usize, usize),
}

impl Family {
    pub fn build(self) -> Result<Graph, GraphError> {
        Ok(match self {
            Family::Complete(r) => Graph::complete(r),
            Family::Empty(n) => Graph::empty(n),
            Family::Cycle(n) => Graph::cycle(n)?,
            Family::Path(n) => Graph::path(n),
            Family::Multipartite { part_size, parts } => {
                Graph::complete_multipartite(part_size, parts)
            }
            Family::Bipartite(m, n) => Graph::complete_bipartite(m, n),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn families() {
        let k3 = Family::Complete(3).build().unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.max_degree(), 2);

        let e5 = Family::Empty(5).build().unwrap();
        assert_eq!((e5.vertex_count(), e5.edge_count()), (5, 0));

        assert!(Family::Cycle(2).build().is_err());
        assert_eq!(Graph::cycle(6).unwrap().degree_sequence(), [2; 6]);
        assert_eq!(Graph::path(3).edges().collect::<Vec<_>>(), [(0, 1), (1, 2)]);
        assert_eq!(Graph::path(0).vertex_count(), 0);

        let k23 = Graph::complete_multipartite(2, 3);
        assert_eq!(k23.vertex_count(), 6);
        assert_eq!(k23.edge_count(), 12);
        assert_eq!(Graph::complete_bipartite(2, 4).edge_count(), 8);
    }

    #[test]
    fn independence() {
        let k3 = Graph::complete(3);
        assert!(!k3.is_independent(&set(&[0, 1])).unwrap());
        assert!(k3.is_independent(&set(&[2])).unwrap());
        let e4 = Graph::empty(4);
        assert!(e4.is_independent(&set(&[0, 1, 2, 3])).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_independent(&set(&[0, 2])).unwrap());
        assert!(matches!(
            c4.is_independent(&set(&[0, 4])),
            Err(GraphError::VertexOutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn degrees_and_cliques() {
        assert_eq!(Graph::complete(4).max_degree(), 3);
        assert_eq!(Graph::empty(7).max_degree(), 0);
        assert_eq!(Graph::empty(0).max_degree(), 0);
        assert_eq!(Graph::complete(5).clique_number(), 5);
        assert_eq!(Graph::cycle(5).unwrap().clique_number(), 2);
        assert_eq!(Graph::empty(3).clique_number(), 1);
        assert_eq!(Graph::empty(0).clique_number(), 0);
        assert_eq!(Graph::cycle(5).unwrap().maximum_independent_set().len(), 2);
        assert_eq!(
            Graph::complete_bipartite(3, 4)
                .maximum_independent_set()
                .len(),
            4
        );
        assert_eq!(Graph::complete(5).degeneracy(), 4);
        assert_eq!(Graph::path(5).degeneracy(), 1);
        assert_eq!(Graph::cycle(5).unwrap().degeneracy(), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::empty(2);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(g.add_edge(0, 2).is_err());
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(
            g.components(),
            [alloc::vec![0, 1], alloc::vec![2], alloc::vec![3, 4]]
        );
        let h = g.induced(&[4, 3, 0]);
        assert!(h.has_edge(0, 1));
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn isomorphism_classes() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| Graph::all_up_to_isomorphism(n).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 4, 11, 34]);
        let connected = |n| {
            Graph::all_up_to_isomorphism(n)
                .unwrap()
                .into_iter()
                .filter(Graph::is_connected)
                .count()
        };
        assert_eq!((1..=5).map(connected).collect::<Vec<_>>(), [1, 1, 2, 6, 21]);
        assert!(Graph::all_up_to_isomorphism(7).is_err());
    }
}
