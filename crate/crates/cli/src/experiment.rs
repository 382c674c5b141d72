//! Verification campaigns: one Painter against a set of Listers.
//!
//! Every experiment draws its trial seeds from a single ChaCha8 stream
//! seeded by the experiment seed, so a report is a function of its
//! parameters. Trials run in parallel and are collected in trial order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use lexpaint_core::exhaustive::{exhaustive_lister, ExhaustiveError};
use lexpaint_core::game::play;
use lexpaint_core::solver::{PaintOptions, SolverError, StrategyPolicy};
use lexpaint_core::strategy::{
    approximate, lemma_k, ComposedPainter, ExactWeight, FirstFitPainter, InnerPainter,
    LayerBoundTracker, Lister, Painter, PolicyLister, PolicyPainter, PressureLister, RandomLister,
    StrategyError, WeightPainter,
};
use lexpaint_core::{
    lexicographic_product, GameConfig, GameState, Graph, Status, Transcript, VertexSet,
};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::GraphSpec;
use crate::transcript::{StatusDoc, TranscriptDoc};

/// Σf and |V| limits under which the exhaustive Lister joins automatically.
pub const EXHAUSTIVE_TOTAL_BUDGET: u64 = 24;
pub const EXHAUSTIVE_VERTICES: usize = 8;
/// Positions explored before an explicitly requested traversal gives up.
pub const EXHAUSTIVE_POSITION_CAP: usize = 20_000_000;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Strategy(#[from] StrategyError),
    #[error("{0}")]
    Solver(#[from] SolverError),
    #[error("invalid game: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("exhaustive traversal stopped after {explored} positions")]
    ExhaustiveBudget { explored: usize },
    #[error("writing transcripts: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListerKind {
    /// Trial seeds from the experiment stream, or `base + trial` when fixed.
    Random {
        seed: Option<u64>,
    },
    Pressure,
    /// Minimax Lister from the solved game.
    Policy,
    /// Every Lister line.
    Exhaustive,
}

impl FromStr for ListerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "random" => Ok(ListerKind::Random { seed: None }),
            "pressure" => Ok(ListerKind::Pressure),
            "policy" => Ok(ListerKind::Policy),
            "exhaustive" => Ok(ListerKind::Exhaustive),
            other => {
                let seed = other
                    .strip_prefix("random:seed=")
                    .ok_or_else(|| {
                        format!(
                            "unknown lister `{other}` (random, random:seed=N, pressure, policy, exhaustive)"
                        )
                    })?
                    .parse()
                    .map_err(|_| format!("bad seed in `{other}`"))?;
                Ok(ListerKind::Random { seed: Some(seed) })
            }
        }
    }
}

impl fmt::Display for ListerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListerKind::Random { seed: None } => f.write_str("random"),
            ListerKind::Random { seed: Some(s) } => write!(f, "random:seed={s}"),
            ListerKind::Pressure => f.write_str("pressure"),
            ListerKind::Policy => f.write_str("policy"),
            ListerKind::Exhaustive => f.write_str("exhaustive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PainterKind {
    Weight,
    Composed,
    Policy,
    FirstFit,
}

impl FromStr for PainterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "weight" => Ok(PainterKind::Weight),
            "composed" | "composed:inner=policy" => Ok(PainterKind::Composed),
            "policy" => Ok(PainterKind::Policy),
            "greedy-first-fit" => Ok(PainterKind::FirstFit),
            other => Err(format!(
                "unknown painter `{other}` (weight, composed:inner=policy, policy, greedy-first-fit)"
            )),
        }
    }
}

impl fmt::Display for PainterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PainterKind::Weight => "weight",
            PainterKind::Composed => "composed:inner=policy",
            PainterKind::Policy => "policy",
            PainterKind::FirstFit => "greedy-first-fit",
        })
    }
}

/// Any of the CLI's Painters.
#[derive(Debug, Clone)]
pub enum AnyPainter {
    Weight(WeightPainter),
    Composed(ComposedPainter<InnerPainter>),
    Policy(PolicyPainter),
    FirstFit,
}

impl AnyPainter {
    /// The layer-weight record, for the weight-based Painters.
    pub fn tracker(&self) -> Option<&LayerBoundTracker> {
        match self {
            AnyPainter::Weight(p) => Some(p.tracker()),
            AnyPainter::Composed(p) => Some(p.tracker()),
            _ => None,
        }
    }
}

impl Painter for AnyPainter {
    fn respond(&mut self, state: &GameState, presented: &VertexSet) -> VertexSet {
        match self {
            AnyPainter::Weight(p) => p.respond(state, presented),
            AnyPainter::Composed(p) => p.respond(state, presented),
            AnyPainter::Policy(p) => p.respond(state, presented),
            AnyPainter::FirstFit => FirstFitPainter.respond(state, presented),
        }
    }

    fn memory_key(&self) -> Option<Vec<u64>> {
        match self {
            AnyPainter::Weight(p) => p.memory_key(),
            AnyPainter::Composed(p) => p.memory_key(),
            AnyPainter::Policy(p) => p.memory_key(),
            AnyPainter::FirstFit => FirstFitPainter.memory_key(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<String>,
    /// Fiber size `n` (1 without a product structure).
    pub n: usize,
    pub b: u32,
    pub k: u32,
    /// Maximum degree of the base graph.
    pub delta: usize,
    /// `χ_{P,b}(H)` used by the composed Painter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_budget: Option<u32>,
    pub vertices: usize,
    pub trials: usize,
    pub seed: u64,
    pub listers: Vec<String>,
    pub painter: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub lister: String,
    pub trial: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: StatusDoc,
    pub rounds: usize,
    pub forfeit: bool,
    pub layer_violations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_layer_weight: Option<String>,
    /// Largest `s(v)` at the end of the game.
    pub max_presented: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<String>,
    /// The full game when Painter lost, for replay.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<TranscriptDoc>,
}

impl TrialOutcome {
    pub fn painter_lost(&self) -> bool {
        self.status != StatusDoc::PainterWins
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustiveResult {
    PainterWinsEveryLine,
    ListerWins,
    InvariantViolated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveOutcome {
    pub result: ExhaustiveResult,
    pub positions: usize,
    pub rounds: u64,
    pub max_depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_layer_weight: Option<String>,
    pub max_presented: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<TranscriptDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub games: usize,
    pub painter_wins: usize,
    pub lister_wins: usize,
    pub forfeits: usize,
    pub invariant_violations: u64,
    /// Exact `max_x h(V_x)` over every checked round, as `p/q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_layer_weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_layer_weight_approx: Option<f64>,
    /// The `2n` every layer must stay under.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer_weight_cap: Option<u64>,
    pub max_presented: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Params,
    pub trials: Vec<TrialOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<ExhaustiveOutcome>,
    pub aggregate: Aggregate,
    pub verdict: Verdict,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}

/// A fully specified campaign.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub name: String,
    pub params: Params,
    pub config: Arc<GameConfig>,
    pub painter: AnyPainter,
    pub listers: Vec<ListerKind>,
    /// Where to write one JSON transcript per game.
    pub transcripts: Option<PathBuf>,
    pub paint_options: PaintOptions,
}

/// Whether the exhaustive Lister joins automatically.
pub fn exhaustive_eligible(config: &GameConfig) -> bool {
    config.total_budget() <= EXHAUSTIVE_TOTAL_BUDGET
        && config.graph().vertex_count() <= EXHAUSTIVE_VERTICES
}

/// Requested Listers plus the exhaustive one when the game is small enough.
pub fn with_auto_exhaustive(mut listers: Vec<ListerKind>, config: &GameConfig) -> Vec<ListerKind> {
    if exhaustive_eligible(config) && !listers.contains(&ListerKind::Exhaustive) {
        listers.push(ListerKind::Exhaustive);
    }
    listers
}

fn uniform(graph: Graph, k: u32, b: u32) -> Result<Arc<GameConfig>, ExperimentError> {
    GameConfig::uniform(graph, k, b)
        .map(Arc::new)
        .map_err(|e| ExperimentError::Config(e.to_string()))
}

fn to_u32(k: u64) -> Result<u32, ExperimentError> {
    u32::try_from(k).map_err(|_| ExperimentError::Config(format!("budget {k} too large")))
}

/// Weight Painter on `base[E_n]` with `k = lemma_k(Δ, b, n)`.
pub fn lemma_campaign(
    base: &GraphSpec,
    n: usize,
    b: u32,
    trials: usize,
    listers: Vec<ListerKind>,
    seed: u64,
) -> Result<Campaign, ExperimentError> {
    if n == 0 || b == 0 {
        return Err(ExperimentError::Usage(
            "--n and --b must be positive".into(),
        ));
    }
    let layout = lexicographic_product(&base.graph, &Graph::empty(n));
    let delta = base.graph.max_degree();
    let k = to_u32(lemma_k(delta, b, n))?;
    let config = uniform(layout.product().clone(), k, b)?;
    let painter = AnyPainter::Weight(WeightPainter::new(&layout)?);
    let listers = with_auto_exhaustive(listers, &config);
    Ok(Campaign {
        name: "verify-lemma".into(),
        params: Params {
            graph: base.text.clone(),
            fiber: Some(format!("E{n}")),
            n,
            b,
            k,
            delta,
            inner_budget: None,
            vertices: config.graph().vertex_count(),
            trials,
            seed,
            listers: listers.iter().map(ToString::to_string).collect(),
            painter: PainterKind::Weight.to_string(),
        },
        config,
        painter,
        listers,
        transcripts: None,
        paint_options: PaintOptions::default(),
    })
}

/// Composed Painter on `G[H]` with `k = lemma_k(Δ(G), χ_{P,b}(H), |V(H)|)`.
pub fn theorem_campaign(
    base: &GraphSpec,
    fiber: &GraphSpec,
    b: u32,
    trials: usize,
    listers: Vec<ListerKind>,
    seed: u64,
    options: PaintOptions,
) -> Result<Campaign, ExperimentError> {
    if b == 0 {
        return Err(ExperimentError::Usage("--b must be positive".into()));
    }
    let n = fiber.graph.vertex_count();
    if n == 0 {
        return Err(ExperimentError::Usage(
            "the fiber needs at least one vertex".into(),
        ));
    }
    let layout = lexicographic_product(&base.graph, &fiber.graph);
    let (composed, inner_budget) = ComposedPainter::solved(layout.clone(), b, options)?;
    let delta = base.graph.max_degree();
    let k = to_u32(lemma_k(delta, inner_budget, n))?;
    let config = uniform(layout.product().clone(), k, b)?;
    let listers = with_auto_exhaustive(listers, &config);
    Ok(Campaign {
        name: "verify-theorem".into(),
        params: Params {
            graph: base.text.clone(),
            fiber: Some(fiber.text.clone()),
            n,
            b,
            k,
            delta,
            inner_budget: Some(inner_budget),
            vertices: config.graph().vertex_count(),
            trials,
            seed,
            listers: listers.iter().map(ToString::to_string).collect(),
            painter: PainterKind::Composed.to_string(),
        },
        config,
        painter: AnyPainter::Composed(composed),
        listers,
        transcripts: None,
        paint_options: options,
    })
}

/// Any Painter on any graph. Without `k`, the weight and composed Painters
/// use their guaranteed budgets; the others need `k`.
#[allow(clippy::too_many_arguments)]
pub fn simulate_campaign(
    graph: &GraphSpec,
    painter: PainterKind,
    k: Option<u32>,
    b: u32,
    trials: usize,
    listers: Vec<ListerKind>,
    seed: u64,
    options: PaintOptions,
) -> Result<Campaign, ExperimentError> {
    if b == 0 {
        return Err(ExperimentError::Usage("--b must be positive".into()));
    }
    let layout = graph.layout.clone();
    let needs_layout = || {
        layout.clone().ok_or_else(|| {
            ExperimentError::Usage(format!(
                "the {painter} painter needs a product graph `lex(G,H)`"
            ))
        })
    };
    let (delta, n) = match &layout {
        Some(l) => (l.base().max_degree(), l.fiber_size()),
        None => (graph.graph.max_degree(), 1),
    };
    let (any, default_k, inner_budget) = match painter {
        PainterKind::Weight => {
            let l = needs_layout()?;
            let p = WeightPainter::new(&l)?;
            (AnyPainter::Weight(p), Some(lemma_k(delta, b, n)), None)
        }
        PainterKind::Composed => {
            let l = needs_layout()?;
            let (p, inner) = ComposedPainter::solved(l, b, options)?;
            (
                AnyPainter::Composed(p),
                Some(lemma_k(delta, inner, n)),
                Some(inner),
            )
        }
        PainterKind::Policy => (AnyPainter::FirstFit, None, None),
        PainterKind::FirstFit => (AnyPainter::FirstFit, None, None),
    };
    let k = match (k, default_k) {
        (Some(k), _) => k,
        (None, Some(d)) => to_u32(d)?,
        (None, None) => {
            return Err(ExperimentError::Usage(format!(
                "the {painter} painter needs --k"
            )))
        }
    };
    let config = uniform(graph.graph.clone(), k, b)?;
    let any = if painter == PainterKind::Policy {
        let policy = StrategyPolicy::solve(config.clone(), options)?;
        AnyPainter::Policy(PolicyPainter::new(Arc::new(policy)))
    } else {
        any
    };
    Ok(Campaign {
        name: "simulate".into(),
        params: Params {
            graph: graph.text.clone(),
            fiber: graph.factors.as_ref().map(|(_, h)| h.clone()),
            n,
            b,
            k,
            delta,
            inner_budget,
            vertices: config.graph().vertex_count(),
            trials,
            seed,
            listers: listers.iter().map(ToString::to_string).collect(),
            painter: painter.to_string(),
        },
        config,
        painter: any,
        listers,
        transcripts: None,
        paint_options: options,
    })
}

struct Job {
    lister: usize,
    trial: usize,
    seed: Option<u64>,
}

fn max_presented(t: &Transcript) -> u32 {
    let n = t.config.graph().vertex_count();
    let mut s = vec![0u32; n];
    for r in &t.rounds {
        for v in &r.presented {
            s[v] += 1;
        }
    }
    s.into_iter().max().unwrap_or(0)
}

fn slug(kind: &ListerKind) -> String {
    kind.to_string().replace([':', '='], "-")
}

fn max_weight(a: Option<ExactWeight>, b: Option<ExactWeight>) -> Option<ExactWeight> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y > x { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Campaign {
    pub fn with_transcripts(mut self, dir: Option<PathBuf>) -> Self {
        self.transcripts = dir;
        self
    }

    fn jobs(&self) -> Vec<Job> {
        let mut stream = ChaCha8Rng::seed_from_u64(self.params.seed);
        let mut jobs = Vec::new();
        for (i, kind) in self.listers.iter().enumerate() {
            match kind {
                ListerKind::Random { seed: None } => {
                    for trial in 0..self.params.trials {
                        jobs.push(Job {
                            lister: i,
                            trial,
                            seed: Some(stream.next_u64()),
                        });
                    }
                }
                ListerKind::Random { seed: Some(base) } => {
                    for trial in 0..self.params.trials {
                        jobs.push(Job {
                            lister: i,
                            trial,
                            seed: Some(base.wrapping_add(trial as u64)),
                        });
                    }
                }
                ListerKind::Pressure | ListerKind::Policy => jobs.push(Job {
                    lister: i,
                    trial: 0,
                    seed: None,
                }),
                ListerKind::Exhaustive => {}
            }
        }
        jobs
    }

    fn run_job(
        &self,
        job: &Job,
        policy_lister: Option<&PolicyLister>,
    ) -> Result<(TrialOutcome, Option<ExactWeight>), ExperimentError> {
        let kind = &self.listers[job.lister];
        let mut lister: Box<dyn Lister> = match kind {
            ListerKind::Random { .. } => Box::new(RandomLister::new(job.seed.unwrap_or(0))),
            ListerKind::Pressure => Box::new(PressureLister),
            ListerKind::Policy => Box::new(policy_lister.expect("solved before running").clone()),
            ListerKind::Exhaustive => unreachable!("exhaustive runs separately"),
        };
        let mut painter = self.painter.clone();
        let t = play(self.config.clone(), &mut lister, &mut painter);
        let tracker = painter.tracker();
        let doc = TranscriptDoc::from_transcript(&t);
        let file = match &self.transcripts {
            Some(dir) => {
                let name = format!("{}-{:04}.json", slug(kind), job.trial);
                std::fs::write(dir.join(&name), doc.to_json())?;
                Some(name)
            }
            None => None,
        };
        let lost = t.status != Status::PainterWins;
        Ok((
            TrialOutcome {
                lister: kind.to_string(),
                trial: job.trial,
                seed: job.seed,
                status: t.status.into(),
                rounds: t.rounds.len(),
                forfeit: t.forfeit.is_some(),
                layer_violations: tracker.map_or(0, |t| t.violations),
                max_layer_weight: tracker.map(|t| t.max_layer_weight.to_string()),
                max_presented: max_presented(&t),
                transcript: file,
                refutation: lost.then_some(doc),
            },
            tracker.map(|t| t.max_layer_weight.clone()),
        ))
    }

    fn run_exhaustive(
        &self,
        budget: Option<usize>,
    ) -> Result<(ExhaustiveOutcome, Option<ExactWeight>), ExperimentError> {
        let mut top: Option<ExactWeight> = None;
        let mut max_s = 0u32;
        let result = exhaustive_lister(self.config.clone(), &self.painter, budget, |p, state| {
            max_s = max_s.max(state.presented_counts().iter().copied().max().unwrap_or(0));
            match p.tracker() {
                Some(t) => {
                    top = max_weight(top.take(), Some(t.max_layer_weight.clone()));
                    t.violations == 0
                }
                None => true,
            }
        });
        let (result, stats, refutation) = match result {
            Ok(stats) => (ExhaustiveResult::PainterWinsEveryLine, stats, None),
            Err(ExhaustiveError::PainterLoses(t)) => (
                ExhaustiveResult::ListerWins,
                Default::default(),
                Some(TranscriptDoc::from_transcript(&t)),
            ),
            Err(ExhaustiveError::InvariantViolated(t)) => (
                ExhaustiveResult::InvariantViolated,
                Default::default(),
                Some(TranscriptDoc::from_transcript(&t)),
            ),
            Err(ExhaustiveError::BudgetExceeded { explored }) => {
                return Err(ExperimentError::ExhaustiveBudget { explored })
            }
            Err(other) => return Err(ExperimentError::Usage(other.to_string())),
        };
        if let (Some(dir), Some(doc)) = (&self.transcripts, &refutation) {
            std::fs::write(dir.join("exhaustive-refutation.json"), doc.to_json())?;
        }
        Ok((
            ExhaustiveOutcome {
                result,
                positions: stats.positions,
                rounds: stats.rounds,
                max_depth: stats.max_depth,
                max_layer_weight: top.as_ref().map(ToString::to_string),
                max_presented: max_s,
                refutation,
            },
            top,
        ))
    }

    pub fn run(&self) -> Result<ExperimentReport, ExperimentError> {
        if let Some(dir) = &self.transcripts {
            std::fs::create_dir_all(dir)?;
        }
        let policy_lister = if self.listers.contains(&ListerKind::Policy) {
            let policy = StrategyPolicy::solve(self.config.clone(), self.paint_options)?;
            Some(PolicyLister::new(policy))
        } else {
            None
        };
        let jobs = self.jobs();
        let results: Vec<_> = jobs
            .par_iter()
            .map(|job| self.run_job(job, policy_lister.as_ref()))
            .collect::<Result<_, _>>()?;
        let exhaustive = if self.listers.contains(&ListerKind::Exhaustive) {
            let budget = (!exhaustive_eligible(&self.config)).then_some(EXHAUSTIVE_POSITION_CAP);
            Some(self.run_exhaustive(budget)?)
        } else {
            None
        };

        let weighted = self.painter.tracker().is_some();
        let mut top: Option<ExactWeight> = None;
        let mut trials = Vec::with_capacity(results.len());
        for (outcome, w) in results {
            top = max_weight(top, w);
            trials.push(outcome);
        }
        let mut aggregate = Aggregate {
            games: trials.len(),
            painter_wins: trials.iter().filter(|t| !t.painter_lost()).count(),
            lister_wins: trials.iter().filter(|t| t.painter_lost()).count(),
            forfeits: trials.iter().filter(|t| t.forfeit).count(),
            invariant_violations: trials.iter().map(|t| t.layer_violations).sum(),
            max_layer_weight: None,
            max_layer_weight_approx: None,
            layer_weight_cap: weighted.then_some(2 * self.params.n as u64),
            max_presented: trials.iter().map(|t| t.max_presented).max().unwrap_or(0),
        };
        let exhaustive = exhaustive.map(|(outcome, w)| {
            top = max_weight(top.take(), w);
            aggregate.max_presented = aggregate.max_presented.max(outcome.max_presented);
            match outcome.result {
                ExhaustiveResult::ListerWins => aggregate.lister_wins += 1,
                ExhaustiveResult::InvariantViolated => aggregate.invariant_violations += 1,
                ExhaustiveResult::PainterWinsEveryLine => {}
            }
            outcome
        });
        aggregate.max_layer_weight = top.as_ref().map(ToString::to_string);
        aggregate.max_layer_weight_approx = top.as_ref().map(approximate);
        let verdict = if aggregate.lister_wins == 0 && aggregate.invariant_violations == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Ok(ExperimentReport {
            experiment: self.name.clone(),
            params: self.params.clone(),
            trials,
            exhaustive,
            aggregate,
            verdict,
        })
    }
}

/// Human-readable summary of a report.
pub fn render(report: &ExperimentReport) -> String {
    let p = &report.params;
    let mut out = format!(
        "{}  graph={}{}  n={}  b={}  k={}  Δ={}{}  |V|={}  seed={}  painter={}\n",
        report.experiment,
        p.graph,
        p.fiber
            .as_ref()
            .map(|f| format!("  fiber={f}"))
            .unwrap_or_default(),
        p.n,
        p.b,
        p.k,
        p.delta,
        p.inner_budget
            .map(|b| format!("  inner budget={b}"))
            .unwrap_or_default(),
        p.vertices,
        p.seed,
        p.painter,
    );
    out.push_str(&format!(
        "{:<20} {:>7} {:>8} {:>7} {:>11} {:>8}\n",
        "lister", "games", "painter", "lister", "violations", "max s"
    ));
    let mut names: Vec<&str> = Vec::new();
    for t in &report.trials {
        if !names.contains(&t.lister.as_str()) {
            names.push(&t.lister);
        }
    }
    for name in names {
        let rows: Vec<&TrialOutcome> = report.trials.iter().filter(|t| t.lister == name).collect();
        out.push_str(&format!(
            "{:<20} {:>7} {:>8} {:>7} {:>11} {:>8}\n",
            name,
            rows.len(),
            rows.iter().filter(|t| !t.painter_lost()).count(),
            rows.iter().filter(|t| t.painter_lost()).count(),
            rows.iter().map(|t| t.layer_violations).sum::<u64>(),
            rows.iter().map(|t| t.max_presented).max().unwrap_or(0),
        ));
    }
    if let Some(e) = &report.exhaustive {
        out.push_str(&format!(
            "{:<20} {:>7} positions, {} rounds, depth {}: {}\n",
            "exhaustive",
            e.positions,
            e.rounds,
            e.max_depth,
            match e.result {
                ExhaustiveResult::PainterWinsEveryLine => "painter wins every line",
                ExhaustiveResult::ListerWins => "LISTER WINS",
                ExhaustiveResult::InvariantViolated => "LAYER BOUND VIOLATED",
            }
        ));
    }
    let a = &report.aggregate;
    if let (Some(w), Some(approx), Some(cap)) = (
        &a.max_layer_weight,
        a.max_layer_weight_approx,
        a.layer_weight_cap,
    ) {
        out.push_str(&format!(
            "max layer weight {approx:.4} (exact {w}) ≤ {cap}\n"
        ));
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if report.verdict.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    ));
    out
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_graph;
    use crate::transcript::replay_json;

    fn spec(s: &str) -> GraphSpec {
        parse_graph(s).unwrap()
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("random".parse(), Ok(ListerKind::Random { seed: None }));
        assert_eq!(
            "random:seed=7".parse(),
            Ok(ListerKind::Random { seed: Some(7) })
        );
        assert!("random:seed=x".parse::<ListerKind>().is_err());
        assert!("oracle".parse::<ListerKind>().is_err());
        for s in [
            "random",
            "random:seed=3",
            "pressure",
            "policy",
            "exhaustive",
        ] {
            assert_eq!(s.parse::<ListerKind>().unwrap().to_string(), s);
        }
        assert_eq!("composed".parse(), Ok(PainterKind::Composed));
        for s in [
            "weight",
            "composed:inner=policy",
            "policy",
            "greedy-first-fit",
        ] {
            assert_eq!(s.parse::<PainterKind>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn lemma_examples() {
        let c = lemma_campaign(
            &spec("K3"),
            4,
            1,
            20,
            vec![ListerKind::Random { seed: None }],
            1,
        )
        .unwrap();
        assert_eq!(c.params.k, 30);
        let r = c.run().unwrap();
        assert!(r.verdict.passed());
        assert_eq!(r.aggregate.games, 20);
        assert_eq!(r.aggregate.layer_weight_cap, Some(8));
        assert!(r.aggregate.max_layer_weight_approx.unwrap() <= 8.0);

        let c = lemma_campaign(&spec("K2"), 1, 2, 1, vec![], 0).unwrap();
        assert_eq!(c.params.k, 12);
        assert_eq!(c.listers, vec![ListerKind::Exhaustive]);
        let r = c.run().unwrap();
        assert!(r.verdict.passed());
        assert_eq!(
            r.exhaustive.unwrap().result,
            ExhaustiveResult::PainterWinsEveryLine
        );

        let c = lemma_campaign(
            &spec("E1"),
            8,
            1,
            10,
            vec![ListerKind::Random { seed: None }],
            5,
        )
        .unwrap();
        assert_eq!(c.params.k, 8);
        assert!(c.run().unwrap().verdict.passed());
    }

    #[test]
    fn theorem_examples() {
        let listers = || vec![ListerKind::Random { seed: None }, ListerKind::Pressure];
        let c = theorem_campaign(
            &spec("K2"),
            &spec("K2"),
            1,
            20,
            listers(),
            3,
            PaintOptions::default(),
        )
        .unwrap();
        assert_eq!((c.params.inner_budget, c.params.k), (Some(2), 18));
        assert!(c.run().unwrap().verdict.passed());

        let c = theorem_campaign(
            &spec("K2"),
            &spec("E4"),
            1,
            20,
            listers(),
            3,
            PaintOptions::default(),
        )
        .unwrap();
        assert_eq!((c.params.inner_budget, c.params.k), (Some(1), 18));
        assert!(c.run().unwrap().verdict.passed());

        let c = theorem_campaign(
            &spec("C4"),
            &spec("C4"),
            1,
            10,
            listers(),
            3,
            PaintOptions::default(),
        )
        .unwrap();
        assert_eq!(c.params.inner_budget, Some(2));
        assert!(c.run().unwrap().verdict.passed());
    }

    #[test]
    fn reports_are_reproducible() {
        let run = |seed| {
            lemma_campaign(
                &spec("C5"),
                2,
                1,
                30,
                vec![ListerKind::Random { seed: None }],
                seed,
            )
            .unwrap()
            .run()
            .unwrap()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9).trials, run(10).trials);
    }

    #[test]
    fn losses_are_reported_with_refutations() {
        let c = simulate_campaign(
            &spec("K3"),
            PainterKind::FirstFit,
            Some(2),
            1,
            5,
            vec![ListerKind::Pressure, ListerKind::Exhaustive],
            0,
            PaintOptions::default(),
        )
        .unwrap();
        let r = c.run().unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let t = &r.trials[0];
        assert!(t.painter_lost());
        let json = t.refutation.as_ref().unwrap().to_json();
        assert_eq!(replay_json(&json).unwrap().status, StatusDoc::ListerWins);
        assert_eq!(r.exhaustive.unwrap().result, ExhaustiveResult::ListerWins);
    }

    #[test]
    fn policy_listers_and_painters() {
        let c = simulate_campaign(
            &spec("C5"),
            PainterKind::Policy,
            Some(3),
            1,
            3,
            vec![ListerKind::Policy, ListerKind::Random { seed: Some(4) }],
            0,
            PaintOptions::default(),
        )
        .unwrap();
        let r = c.run().unwrap();
        assert!(r.verdict.passed());
        assert_eq!(r.trials.len(), 4);
        assert_eq!(r.trials[1].seed, Some(4));

        let c = simulate_campaign(
            &spec("C5"),
            PainterKind::Policy,
            Some(2),
            1,
            1,
            vec![ListerKind::Policy],
            0,
            PaintOptions::default(),
        )
        .unwrap();
        assert_eq!(c.run().unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn transcripts_are_written_and_replay() {
        let dir = tempfile::tempdir().unwrap();
        let c = lemma_campaign(
            &spec("P4"),
            2,
            1,
            3,
            vec![ListerKind::Random { seed: None }],
            2,
        )
        .unwrap()
        .with_transcripts(Some(dir.path().to_path_buf()));
        let r = c.run().unwrap();
        for t in &r.trials {
            let text =
                std::fs::read_to_string(dir.path().join(t.transcript.as_ref().unwrap())).unwrap();
            let v = replay_json(&text).unwrap();
            assert!(v.bit_exact);
            assert_eq!(v.status, t.status);
        }
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            simulate_campaign(
                &spec("K3"),
                PainterKind::Weight,
                None,
                1,
                1,
                vec![],
                0,
                PaintOptions::default()
            ),
            Err(ExperimentError::Usage(_))
        ));
        assert!(matches!(
            simulate_campaign(
                &spec("K3"),
                PainterKind::FirstFit,
                None,
                1,
                1,
                vec![],
                0,
                PaintOptions::default()
            ),
            Err(ExperimentError::Usage(_))
        ));
        assert!(matches!(
            lemma_campaign(&spec("K3"), 0, 1, 1, vec![], 0),
            Err(ExperimentError::Usage(_))
        ));
    }
}
