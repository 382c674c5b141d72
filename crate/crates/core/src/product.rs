//! Lexicographic product `G[H]` and its layer structure.

use alloc::vec::Vec;

use crate::graph::Graph;
use crate::vset::VertexSet;

/// `G[H]` together with the factorisation into layers.
///
/// Product vertex `(x, y)` with `x ∈ V(G)`, `y ∈ V(H)` has index `x·n + y`
/// where `n = |V(H)|`. Layer `V_x` is the block `x·n .. (x+1)·n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLayout {
    base: Graph,
    fiber: Graph,
    product: Graph,
}

/// Builds `g[h]`: `(x,y) ~ (x',y')` iff `x ~ x'` in `g`, or `x = x'` and
/// `y ~ y'` in `h`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> ProductLayout {
    let n = h.vertex_count();
    let mut product = Graph::empty(g.vertex_count() * n);
    for x in 0..g.vertex_count() {
        for (y, y2) in h.edges() {
            product
                .add_edge(x * n + y, x * n + y2)
                .expect("fiber edge in range");
        }
    }
    for (x, x2) in g.edges() {
        for y in 0..n {
            for y2 in 0..n {
                product
                    .add_edge(x * n + y, x2 * n + y2)
                    .expect("base edge in range");
            }
        }
    }
    ProductLayout {
        base: g.clone(),
        fiber: h.clone(),
        product,
    }
}

impl ProductLayout {
    /// Treats a plain graph as `G[E_1]`.
    pub fn trivial(g: &Graph) -> Self {
        lexicographic_product(g, &Graph::empty(1))
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn fiber(&self) -> &Graph {
        &self.fiber
    }

    pub fn product(&self) -> &Graph {
        &self.product
    }

    pub fn into_product(self) -> Graph {
        self.product
    }

    /// `n = |V(H)|`.
    pub fn fiber_size(&self) -> usize {
        self.fiber.vertex_count()
    }

    pub fn layer_count(&self) -> usize {
        self.base.vertex_count()
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.fiber_size() + y
    }

    /// Inverse of [`index`](Self::index).
    #[inline]
    pub fn coords(&self, v: usize) -> (usize, usize) {
        let n = self.fiber_size();
        (v / n, v % n)
    }

    #[inline]
    pub fn layer_of(&self, v: usize) -> usize {
        v / self.fiber_size()
    }

    /// The product vertices of layer `V_x`.
    pub fn layer(&self, x: usize) -> core::ops::Range<usize> {
        let n = self.fiber_size();
        x * n..(x + 1) * n
    }

    /// `C(x) = C ∩ V_x`, expressed as fiber indices.
    pub fn layer_part(&self, set: &VertexSet, x: usize) -> VertexSet {
        let n = self.fiber_size();
        set.iter().filter(|&v| v / n == x).map(|v| v % n).collect()
    }

    /// Splits `set` into per-layer fiber sets.
    pub fn split(&self, set: &VertexSet) -> Vec<VertexSet> {
        let n = self.fiber_size();
        let mut parts = alloc::vec![VertexSet::new(); self.layer_count()];
        for v in set {
            parts[v / n].insert(v % n);
        }
        parts
    }

    /// Lifts a fiber set in layer `x` back to product indices.
    pub fn lift(&self, x: usize, fiber_set: &VertexSet) -> VertexSet {
        fiber_set.iter().map(|y| self.index(x, y)).collect()
    }
}
