//! Exact colouring numbers of `G[H]` next to the product bound
//! `(4Δ(G)+2)(χ_P(H) + log₂ |V(H)|)`, rounded up.

use lexpaint_core::solver::{
    choice_number, chromatic_number, paint_number, ChooseOptions, PaintOptions,
};
use lexpaint_core::strategy::lemma_k;
use lexpaint_core::{lexicographic_product, Graph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsl::GraphSpec;

pub const DEFAULT_BASES: &[&str] = &["E1", "K2", "K3", "P3", "C4"];
pub const DEFAULT_FIBERS: &[&str] = &["E1", "E2", "E4", "K2", "K3", "C4"];

#[derive(Debug, Clone, Copy, Default)]
pub struct TableOptions {
    pub paint: PaintOptions,
    pub choose: ChooseOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub base: String,
    pub fiber: String,
    pub vertices: usize,
    pub delta: usize,
    pub n: usize,
    pub chi: Option<usize>,
    pub ch: Option<usize>,
    pub chi_p: Option<u32>,
    /// `χ_P(H)`, which the bound is built from.
    pub fiber_chi_p: Option<u32>,
    pub bound: Option<u64>,
    /// Largest computed exact value over the bound.
    pub ratio: Option<f64>,
    /// Which value the ratio uses: `chi_p`, `ch` or `chi`.
    pub ratio_basis: Option<String>,
    /// Both factors complete, so `G[H]` is complete on `(Δ+1)·χ_P(H)` vertices.
    pub complete_family: bool,
}

fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    n > 0 && g.edge_count() == n * (n - 1) / 2
}

pub fn bound_row(base: &GraphSpec, fiber: &GraphSpec, options: TableOptions) -> BoundRow {
    let layout = lexicographic_product(&base.graph, &fiber.graph);
    let product = layout.product();
    let n = fiber.graph.vertex_count();
    let delta = base.graph.max_degree();
    let chi = chromatic_number(product).ok();
    let chi_p = paint_number(product, 1, options.paint).ok();
    // χ ≤ ch ≤ χ_P pins ch without a list search when the ends meet.
    let ch = match (chi, chi_p) {
        (Some(c), Some(p)) if c as u32 == p => Some(c),
        _ => choice_number(product, 1, options.choose).ok(),
    };
    let fiber_chi_p = paint_number(&fiber.graph, 1, options.paint).ok();
    let bound = match fiber_chi_p {
        Some(p) if n > 0 => Some(lemma_k(delta, p, n)),
        _ => None,
    };
    let best = chi_p
        .map(|v| (v as u64, "chi_p"))
        .or(ch.map(|v| (v as u64, "ch")))
        .or(chi.map(|v| (v as u64, "chi")));
    let (ratio, ratio_basis) = match (best, bound) {
        (Some((v, basis)), Some(b)) if b > 0 => {
            (Some(v as f64 / b as f64), Some(basis.to_string()))
        }
        _ => (None, None),
    };
    BoundRow {
        base: base.text.clone(),
        fiber: fiber.text.clone(),
        vertices: product.vertex_count(),
        delta,
        n,
        chi,
        ch,
        chi_p,
        fiber_chi_p,
        bound,
        ratio,
        ratio_basis,
        complete_family: is_complete(&base.graph) && is_complete(&fiber.graph),
    }
}

/// One row per (base, fiber) pair, bases outermost.
pub fn bound_table(
    bases: &[GraphSpec],
    fibers: &[GraphSpec],
    options: TableOptions,
) -> Vec<BoundRow> {
    let cells: Vec<(&GraphSpec, &GraphSpec)> = bases
        .iter()
        .flat_map(|b| fibers.iter().map(move |f| (b, f)))
        .collect();
    cells
        .par_iter()
        .map(|(b, f)| bound_row(b, f, options))
        .collect()
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "—".to_string(), |x| x.to_string())
}

pub fn render_table(rows: &[BoundRow]) -> String {
    let mut out = format!(
        "{:<8} {:<8} {:>4} {:>4} {:>4} {:>5} {:>6} {:>7}  {}\n",
        "G", "H", "|V|", "χ", "ch", "χ_P", "bound", "ratio", "basis"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<8} {:<8} {:>4} {:>4} {:>4} {:>5} {:>6} {:>7}  {}\n",
            r.base,
            r.fiber,
            r.vertices,
            cell(r.chi),
            cell(r.ch),
            cell(r.chi_p),
            cell(r.bound),
            r.ratio
                .map_or_else(|| "—".to_string(), |x| format!("{x:.3}")),
            r.ratio_basis.as_deref().unwrap_or("—"),
        ));
    }
    out
}
