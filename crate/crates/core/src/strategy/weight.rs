//! Multiplicative-weight Painter strategy for `G[E_n]`.
//!
//! Every product vertex starts with weight 1. Each round the presented set
//! `C` is split into layers `C(x) = C ∩ V_x`; Painter builds a maximal
//! independent set `I` of the base graph by repeatedly taking the open base
//! vertex whose layer carries the most presented weight (ties to the smaller
//! index) and closing its neighbourhood. All of `C(x)` for `x ∈ I` is
//! coloured. Presented vertices that were coloured have their weight halved;
//! presented vertices that were not are scaled by `1 + 1/(4Δ+1)`.
//!
//! Against any Lister the total weight of every layer stays at most `2n`,
//! so a vertex presented `s` times and coloured `t < b` times satisfies
//! `(1 + 1/(4Δ+1))^(s-t) · 2^(-t) ≤ 2n`, which caps `s` below
//! [`lemma_k`]`(Δ, b, n)`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::{Painter, StrategyError};
use crate::game::GameState;
use crate::graph::Graph;
use crate::product::ProductLayout;
use crate::vset::VertexSet;

/// Exact non-negative rational.
pub type ExactWeight = Ratio<BigUint>;

/// `⌈(4Δ+2)(b + log₂ n)⌉`, computed exactly.
///
/// With `m = 4Δ+2` this is `m·b + ⌈log₂ n^m⌉`, and `⌈log₂ N⌉` is the bit
/// length of `N - 1` for `N ≥ 2`.
///
/// # Panics
///
/// If `b == 0` or `n == 0`.
pub fn lemma_k(delta: usize, b: u32, n: usize) -> u64 {
    assert!(b >= 1 && n >= 1, "lemma_k needs b >= 1 and n >= 1");
    let m = 4 * delta as u64 + 2;
    let power = BigUint::from(n).pow(m as u32);
    let ceil_log2 = if power.is_one() {
        0
    } else {
        (power - 1u32).bits()
    };
    m * u64::from(b) + ceil_log2
}

/// Nearest `f64` to an exact weight, for display.
pub fn approximate(w: &ExactWeight) -> f64 {
    let (num, den) = (w.numer(), w.denom());
    let shift = num.bits().max(den.bits()).saturating_sub(60) as usize;
    let top = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let bottom = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    top / bottom
}

#[derive(Debug, Clone)]
struct Powers {
    up_num: BigUint,
    up_den: BigUint,
    num: Vec<BigUint>,
    den: Vec<BigUint>,
}

impl Powers {
    fn new(delta: usize) -> Self {
        let up_den = BigUint::from(4 * delta as u64 + 1);
        let up_num = &up_den + 1u32;
        Powers {
            num: alloc::vec![BigUint::one()],
            den: alloc::vec![BigUint::one()],
            up_num,
            up_den,
        }
    }

    fn ensure(&mut self, e: usize) {
        while self.num.len() <= e {
            let next = self.num.last().unwrap() * &self.up_num;
            self.num.push(next);
            let next = self.den.last().unwrap() * &self.up_den;
            self.den.push(next);
        }
    }

    /// Numerator of `up^u · 2^-d` over the denominator `up_den^p · 2^q`.
    fn term(&mut self, u: u32, d: u32, p: u32, q: u32) -> BigUint {
        self.ensure(p as usize);
        (&self.num[u as usize] * &self.den[(p - u) as usize]) << (q - d)
    }

    fn denominator(&mut self, p: u32, q: u32) -> BigUint {
        self.ensure(p as usize);
        &self.den[p as usize] << q
    }
}

/// Outcome of the greedy layer selection in one round.
#[derive(Debug, Clone)]
pub struct Selection {
    /// The maximal independent set `I` of base vertices.
    pub chosen: VertexSet,
    presented_numerators: Vec<BigUint>,
    denominator: BigUint,
}

impl Selection {
    /// Weight `h(C(x))` of the presented part of layer `x`, before the
    /// update.
    pub fn presented_weight(&self, x: usize) -> ExactWeight {
        Ratio::new(
            self.presented_numerators[x].clone(),
            self.denominator.clone(),
        )
    }

    /// Checks that `I` is maximal and that every base vertex outside `I` has
    /// a neighbour in `I` whose presented layer weight is at least its own.
    pub fn dominates(&self, base: &Graph) -> bool {
        let w = &self.presented_numerators;
        (0..base.vertex_count()).all(|x| {
            self.chosen.contains(x)
                || base
                    .neighbors(x)
                    .iter()
                    .any(|y| self.chosen.contains(y) && w[y] >= w[x])
        }) && base.is_independent(&self.chosen).unwrap_or(false)
    }
}

/// Exact per-vertex weights of the strategy.
///
/// Weight of vertex `v` is `up^ups(v) · (1/2)^downs(v)` with
/// `up = 1 + 1/(4Δ+1)`, kept as the exponent pair.
#[derive(Debug, Clone)]
pub struct WeightState {
    base: Graph,
    fiber_size: usize,
    delta: usize,
    ups: Vec<u32>,
    downs: Vec<u32>,
    powers: Powers,
    last: Option<Selection>,
}

impl WeightState {
    /// State for `base[E_n]` with `n = fiber_size`, all weights 1.
    pub fn new(base: &Graph, fiber_size: usize) -> Self {
        let delta = base.max_degree();
        let total = base.vertex_count() * fiber_size;
        WeightState {
            base: base.clone(),
            fiber_size,
            delta,
            ups: alloc::vec![0; total],
            downs: alloc::vec![0; total],
            powers: Powers::new(delta),
            last: None,
        }
    }

    pub fn from_layout(layout: &ProductLayout) -> Result<Self, StrategyError> {
        if layout.fiber().edge_count() != 0 {
            return Err(StrategyError::FiberNotEdgeless);
        }
        Ok(Self::new(layout.base(), layout.fiber_size()))
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber_size
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn up_factor(&self) -> ExactWeight {
        Ratio::new(self.powers.up_num.clone(), self.powers.up_den.clone())
    }

    pub fn down_factor(&self) -> ExactWeight {
        Ratio::new(BigUint::one(), BigUint::from(2u32))
    }

    /// `(ups, downs)` exponents of vertex `v`.
    pub fn exponents(&self, v: usize) -> (u32, u32) {
        (self.ups[v], self.downs[v])
    }

    pub fn weight(&self, v: usize) -> ExactWeight {
        let up = num_traits::pow(self.up_factor(), self.ups[v] as usize);
        up / (BigUint::one() << self.downs[v] as usize)
    }

    pub fn last_selection(&self) -> Option<&Selection> {
        self.last.as_ref()
    }

    fn max_exponents(&self) -> (u32, u32) {
        (
            self.ups.iter().copied().max().unwrap_or(0),
            self.downs.iter().copied().max().unwrap_or(0),
        )
    }

    /// Layer totals `h(V_x)` as numerators over a shared denominator.
    fn layer_numerators(&mut self) -> (Vec<BigUint>, BigUint) {
        let (p, q) = self.max_exponents();
        let mut sums = alloc::vec![BigUint::zero(); self.base.vertex_count()];
        for v in 0..self.ups.len() {
            sums[v / self.fiber_size] += self.powers.term(self.ups[v], self.downs[v], p, q);
        }
        (sums, self.powers.denominator(p, q))
    }

    pub fn layer_weight(&mut self, x: usize) -> ExactWeight {
        let (sums, den) = self.layer_numerators();
        Ratio::new(sums[x].clone(), den)
    }

    /// Largest layer total `max_x h(V_x)`, or zero without layers.
    pub fn max_layer_weight(&mut self) -> ExactWeight {
        let (sums, den) = self.layer_numerators();
        let top = sums.into_iter().max().unwrap_or_default();
        Ratio::new(top, den)
    }

    /// Whether `h(V_x) ≤ 2n` for every layer.
    pub fn layer_bound_holds(&mut self) -> bool {
        let (sums, den) = self.layer_numerators();
        let cap = den * BigUint::from(2 * self.fiber_size as u64);
        sums.iter().all(|s| *s <= cap)
    }

    /// One round of the strategy: selects `I`, returns the coloured set
    /// `∪_{x∈I} C(x)` and updates the weights.
    pub fn step(&mut self, presented: &VertexSet) -> VertexSet {
        let n = self.fiber_size;
        let layers = self.base.vertex_count();
        let (p, q) = self.max_exponents();
        let mut weight = alloc::vec![BigUint::zero(); layers];
        for v in presented {
            weight[v / n] += self.powers.term(self.ups[v], self.downs[v], p, q);
        }

        let mut open = VertexSet::full(layers);
        let mut chosen = VertexSet::new();
        while let Some(first) = open.iter().next() {
            let x = open.iter().fold(
                first,
                |best, y| if weight[y] > weight[best] { y } else { best },
            );
            chosen.insert(x);
            open.remove(x);
            open.difference_with(self.base.neighbors(x));
        }

        let mut colored = VertexSet::new();
        for v in presented {
            if chosen.contains(v / n) {
                self.downs[v] += 1;
                colored.insert(v);
            } else {
                self.ups[v] += 1;
            }
        }
        self.last = Some(Selection {
            chosen,
            presented_numerators: weight,
            denominator: self.powers.denominator(p, q),
        });
        colored
    }
}

/// Running record of the `h(V_x) ≤ 2n` check.
#[derive(Debug, Clone)]
pub struct LayerBoundTracker {
    pub rounds_checked: u64,
    pub violations: u64,
    pub max_layer_weight: ExactWeight,
}

impl Default for LayerBoundTracker {
    fn default() -> Self {
        LayerBoundTracker {
            rounds_checked: 0,
            violations: 0,
            max_layer_weight: Ratio::from_integer(BigUint::zero()),
        }
    }
}

impl LayerBoundTracker {
    pub fn record(&mut self, ws: &mut WeightState) {
        self.rounds_checked += 1;
        let top = ws.max_layer_weight();
        let cap = Ratio::from_integer(BigUint::from(2 * ws.fiber_size() as u64));
        if top > cap {
            self.violations += 1;
        }
        if top > self.max_layer_weight {
            self.max_layer_weight = top;
        }
    }

    pub fn merge(&mut self, other: &LayerBoundTracker) {
        self.rounds_checked += other.rounds_checked;
        self.violations += other.violations;
        if other.max_layer_weight > self.max_layer_weight {
            self.max_layer_weight = other.max_layer_weight.clone();
        }
    }
}

/// The weight strategy as a [`Painter`], checking the layer bound after
/// every round.
#[derive(Debug, Clone)]
pub struct WeightPainter {
    state: WeightState,
    tracker: LayerBoundTracker,
}

impl WeightPainter {
    pub fn new(layout: &ProductLayout) -> Result<Self, StrategyError> {
        Ok(WeightPainter {
            state: WeightState::from_layout(layout)?,
            tracker: LayerBoundTracker::default(),
        })
    }

    pub fn state(&self) -> &WeightState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut WeightState {
        &mut self.state
    }

    pub fn tracker(&self) -> &LayerBoundTracker {
        &self.tracker
    }
}

impl Painter for WeightPainter {
    fn respond(&mut self, _state: &GameState, presented: &VertexSet) -> VertexSet {
        let colored = self.state.step(presented);
        self.tracker.record(&mut self.state);
        colored
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        Some(
            self.state
                .ups
                .iter()
                .chain(self.state.downs.iter())
                .map(|&e| u64::from(e))
                .collect(),
        )
    }
}
