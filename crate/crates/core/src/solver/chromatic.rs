use alloc::vec;
use alloc::vec::Vec;

use super::SolverError;
use crate::graph::Graph;

pub const CHROMATIC_VERTEX_CAP: usize = 16;

/// A proper colouring with colours `0..k`, if one exists.
///
/// A vertex may only open colour `max_used + 1`, so colour classes are
/// never permuted.
pub fn find_coloring(graph: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let (_, mut order) = graph.degeneracy_order();
    order.reverse();
    let mut colors = vec![usize::MAX; n];

    fn extend(
        graph: &Graph,
        order: &[usize],
        i: usize,
        k: usize,
        used: usize,
        colors: &mut [usize],
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if graph.neighbors(v).iter().any(|u| colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if extend(graph, order, i + 1, k, used.max(c + 1), colors) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }

    extend(graph, &order, 0, k, 0, &mut colors).then_some(colors)
}

/// Least `k` admitting a proper `k`-colouring.
pub fn chromatic_number(graph: &Graph) -> Result<usize, SolverError> {
    let n = graph.vertex_count();
    if n > CHROMATIC_VERTEX_CAP {
        return Err(SolverError::TooLarge {
            what: "vertex count",
            size: n,
            cap: CHROMATIC_VERTEX_CAP,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let upper = graph.degeneracy() + 1;
    for k in graph.clique_number()..upper {
        if find_coloring(graph, k).is_some() {
            return Ok(k);
        }
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::lexicographic_product;

    #[test]
    fn known_values() {
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        let k3e2 = lexicographic_product(&Graph::complete(3), &Graph::empty(2));
        assert_eq!(chromatic_number(k3e2.product()).unwrap(), 3);
        let k2k2 = lexicographic_product(&Graph::complete(2), &Graph::complete(2));
        assert_eq!(chromatic_number(k2k2.product()).unwrap(), 4);
        // C_5[K_2] needs 5 colours although clique 4 and degeneracy 5.
        let c5k2 = lexicographic_product(&Graph::cycle(5).unwrap(), &Graph::complete(2));
        assert_eq!(chromatic_number(c5k2.product()).unwrap(), 5);
    }

    #[test]
    fn colourings_are_proper() {
        let g = Graph::cycle(7).unwrap();
        let c = find_coloring(&g, 3).unwrap();
        assert!(g.edges().all(|(u, v)| c[u] != c[v]));
        assert!(find_coloring(&g, 2).is_none());
    }

    #[test]
    fn cap() {
        assert!(chromatic_number(&Graph::empty(17)).is_err());
    }
}
