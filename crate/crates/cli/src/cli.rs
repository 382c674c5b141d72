//! The `lexpaint` command.
//!
//! Exit codes: 0 pass, 1 fail or refutation, 2 usage or capacity error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use lexpaint_core::solver::{
    choice_number, chromatic_number, find_coloring, is_choosable, paint_number, ChooseOptions,
    ChooseVerdict, PaintOptions, StrategyPolicy,
};
use lexpaint_core::{lexicographic_product, GameConfig, Side};
use serde::Serialize;
use serde_json::json;

use crate::dsl::{parse_graph, write_edge_list, GraphSpec};
use crate::experiment::{
    lemma_campaign, render, simulate_campaign, theorem_campaign, write_file, ExperimentError,
    ExperimentReport, ListerKind, PainterKind,
};
use crate::table::{bound_table, render_table, TableOptions, DEFAULT_BASES, DEFAULT_FIBERS};
use crate::transcript::{replay_json, ConfigDoc, SideDoc, TranscriptError};

#[derive(Debug, Parser)]
#[command(
    name = "lexpaint",
    version,
    about = "Painting-game strategies and exact solvers for lexicographic products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build G[H] and print it as an edge list.
    Product {
        #[arg(long)]
        graph: GraphSpec,
        /// Fiber H; without it `--graph` must already be a product.
        #[arg(long)]
        fiber: Option<GraphSpec>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact b-fold paint number.
    PaintExact {
        #[command(flatten)]
        exact: ExactArgs,
        /// Dump a winning policy at the paint number.
        #[arg(long)]
        policy_out: Option<PathBuf>,
    },
    /// Exact b-fold choice number.
    ChooseExact {
        #[command(flatten)]
        exact: ExactArgs,
    },
    /// Exact chromatic number.
    Chromatic {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Play seeded games between any Painter and Listers.
    Simulate {
        #[arg(long)]
        graph: GraphSpec,
        /// Fiber H, making the game graph `lex(graph, fiber)`.
        #[arg(long)]
        fiber: Option<GraphSpec>,
        #[arg(long, default_value = "weight")]
        painter: PainterKind,
        /// Per-vertex token budget; defaults to the strategy's guarantee.
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        campaign: CampaignArgs,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Weight Painter on G[E_n] with the lemma budget.
    VerifyLemma {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        campaign: CampaignArgs,
    },
    /// Composed Painter on G[H] with the theorem budget.
    VerifyTheorem {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        fiber: GraphSpec,
        #[command(flatten)]
        campaign: CampaignArgs,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// χ, ch and χ_P of G[H] against the product bound.
    BoundTable {
        /// Base graphs (repeatable).
        #[arg(long)]
        graph: Vec<GraphSpec>,
        /// Fiber graphs (repeatable).
        #[arg(long)]
        fiber: Vec<GraphSpec>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-validate a JSON transcript.
    Replay { transcript: PathBuf },
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 1)]
    pub b: u32,
    /// Vertex cap override for the solver.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = 1)]
    pub b: u32,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// random, random:seed=N, pressure, policy, exhaustive (repeatable).
    #[arg(long = "lister")]
    pub listers: Vec<ListerKind>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Directory receiving one transcript per game.
    #[arg(long)]
    pub transcripts: Option<PathBuf>,
}

impl CampaignArgs {
    fn listers(&self) -> Vec<ListerKind> {
        if self.listers.is_empty() {
            vec![ListerKind::Random { seed: None }, ListerKind::Pressure]
        } else {
            self.listers.clone()
        }
    }
}

/// Pass/fail outcome of a command that ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn paint_options(cap: Option<usize>) -> PaintOptions {
    PaintOptions {
        vertex_cap: cap,
        ..PaintOptions::default()
    }
}

fn choose_options(cap: Option<usize>) -> ChooseOptions {
    let mut o = ChooseOptions::default();
    if let Some(c) = cap {
        o.vertex_cap = c;
    }
    o
}

fn emit_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> anyhow::Result<()> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        write_file(p, &text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn product_of(graph: GraphSpec, fiber: Option<GraphSpec>) -> GraphSpec {
    match fiber {
        None => graph,
        Some(h) => {
            let layout = lexicographic_product(&graph.graph, &h.graph);
            GraphSpec {
                text: format!("lex({},{})", graph.text, h.text),
                graph: layout.product().clone(),
                layout: Some(layout),
                factors: Some((graph.text, h.text)),
            }
        }
    }
}

fn finish_campaign(
    campaign: Result<crate::experiment::Campaign, ExperimentError>,
    args: &CampaignArgs,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let report: ExperimentReport = campaign?.with_transcripts(args.transcripts.clone()).run()?;
    write!(out, "{}", render(&report))?;
    if let Some(p) = &args.json {
        write_file(p, &report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if report.verdict.passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

#[derive(Serialize)]
struct PolicyDump {
    config: ConfigDoc,
    winner: SideDoc,
    positions: Vec<PositionDump>,
}

#[derive(Serialize)]
struct PositionDump {
    /// `[f - s, g - t]` per vertex.
    remaining: Vec<[u8; 2]>,
    winner: SideDoc,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    replies: Vec<ReplyDump>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refutation: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct ReplyDump {
    presented: Vec<usize>,
    colored: Vec<usize>,
}

fn side(s: Side) -> SideDoc {
    match s {
        Side::Lister => SideDoc::Lister,
        Side::Painter => SideDoc::Painter,
    }
}

fn policy_dump(policy: &StrategyPolicy) -> PolicyDump {
    PolicyDump {
        config: ConfigDoc::from_config(policy.config()),
        winner: side(policy.winner()),
        positions: policy
            .entries()
            .into_iter()
            .map(|e| PositionDump {
                remaining: e.remaining.iter().map(|&(s, t)| [s, t]).collect(),
                winner: side(e.winner),
                replies: e
                    .replies
                    .iter()
                    .map(|(p, c)| ReplyDump {
                        presented: p.to_vec(),
                        colored: c.to_vec(),
                    })
                    .collect(),
                refutation: e.refutation.map(|r| r.to_vec()),
            })
            .collect(),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match command {
        Command::Product { graph, fiber, json } => {
            let spec = product_of(graph, fiber);
            let layout = spec
                .layout
                .as_ref()
                .ok_or_else(|| anyhow!("give --fiber or a `lex(G,H)` graph"))?;
            write!(out, "{}", write_edge_list(&spec.graph))?;
            emit_json(
                &json,
                &json!({
                    "graph": spec.text,
                    "vertex_count": spec.graph.vertex_count(),
                    "edges": spec.graph.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
                    "layers": layout.layer_count(),
                    "fiber_size": layout.fiber_size(),
                    "max_degree": spec.graph.max_degree(),
                }),
            )?;
            Ok(Outcome::Pass)
        }
        Command::PaintExact { exact, policy_out } => {
            let opts = paint_options(exact.cap);
            let value = paint_number(&exact.graph.graph, exact.b, opts)?;
            writeln!(out, "{value}")?;
            emit_json(
                &exact.json,
                &json!({"graph": exact.graph.text, "b": exact.b, "paint_number": value}),
            )?;
            if let Some(path) = policy_out {
                let cfg = GameConfig::uniform(exact.graph.graph.clone(), value.max(1), exact.b)
                    .map_err(|e| anyhow!("{e}"))?;
                // Reductions settle positions without storing them; the dump
                // should list every position.
                let full = PaintOptions {
                    reductions: false,
                    ..opts
                };
                let policy = StrategyPolicy::solve(Arc::new(cfg), full)?;
                emit_json(&Some(path), &policy_dump(&policy))?;
            }
            Ok(Outcome::Pass)
        }
        Command::ChooseExact { exact } => {
            let opts = choose_options(exact.cap);
            let b = exact.b as usize;
            let value = choice_number(&exact.graph.graph, b, opts)?;
            writeln!(out, "{value}")?;
            let witness = if value > 0 {
                match is_choosable(&exact.graph.graph, value - 1, b, opts)? {
                    ChooseVerdict::NotChoosable(lists) => Some(lists),
                    ChooseVerdict::Choosable => bail!("solver inconsistency at {}", value - 1),
                }
            } else {
                None
            };
            emit_json(
                &exact.json,
                &json!({
                    "graph": exact.graph.text,
                    "b": exact.b,
                    "choice_number": value,
                    "bad_lists_below": witness,
                }),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Chromatic { graph, json } => {
            let value = chromatic_number(&graph.graph)?;
            writeln!(out, "{value}")?;
            emit_json(
                &json,
                &json!({
                    "graph": graph.text,
                    "chromatic_number": value,
                    "coloring": find_coloring(&graph.graph, value),
                }),
            )?;
            Ok(Outcome::Pass)
        }
        Command::Simulate {
            graph,
            fiber,
            painter,
            k,
            campaign,
            cap,
        } => {
            let spec = product_of(graph, fiber);
            let c = simulate_campaign(
                &spec,
                painter,
                k,
                campaign.b,
                campaign.trials,
                campaign.listers(),
                campaign.seed,
                paint_options(cap),
            );
            finish_campaign(c, &campaign, out)
        }
        Command::VerifyLemma { graph, n, campaign } => {
            let c = lemma_campaign(
                &graph,
                n,
                campaign.b,
                campaign.trials,
                campaign.listers(),
                campaign.seed,
            );
            finish_campaign(c, &campaign, out)
        }
        Command::VerifyTheorem {
            graph,
            fiber,
            campaign,
            cap,
        } => {
            let c = theorem_campaign(
                &graph,
                &fiber,
                campaign.b,
                campaign.trials,
                campaign.listers(),
                campaign.seed,
                paint_options(cap),
            );
            finish_campaign(c, &campaign, out)
        }
        Command::BoundTable {
            graph,
            fiber,
            cap,
            json,
        } => {
            let defaults = |names: &[&str]| -> Vec<GraphSpec> {
                names
                    .iter()
                    .map(|s| parse_graph(s).expect("default specs parse"))
                    .collect()
            };
            let bases = if graph.is_empty() {
                defaults(DEFAULT_BASES)
            } else {
                graph
            };
            let fibers = if fiber.is_empty() {
                defaults(DEFAULT_FIBERS)
            } else {
                fiber
            };
            let options = TableOptions {
                paint: paint_options(cap),
                choose: choose_options(cap),
            };
            let rows = bound_table(&bases, &fibers, options);
            write!(out, "{}", render_table(&rows))?;
            emit_json(&json, &rows)?;
            let dominated = rows.iter().all(|r| r.ratio.is_none_or(|x| x <= 1.0));
            Ok(if dominated {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Replay { transcript } => {
            let text = std::fs::read_to_string(&transcript)
                .with_context(|| format!("reading {}", transcript.display()))?;
            match replay_json(&text) {
                Ok(v) => {
                    writeln!(
                        out,
                        "valid: {} rounds, status {:?}{}",
                        v.rounds,
                        v.status,
                        if v.bit_exact {
                            ", bit-exact"
                        } else {
                            ", not in canonical form"
                        }
                    )?;
                    Ok(Outcome::Pass)
                }
                Err(TranscriptError::Malformed(m)) => Err(anyhow!("malformed transcript: {m}")),
                Err(e) => {
                    writeln!(out, "rejected: {e}")?;
                    Ok(Outcome::Fail)
                }
            }
        }
    }
}
