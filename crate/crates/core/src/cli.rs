//! Command-line front end. Exit status 0 means every gating claim held, 1 means
//! a counterexample was found, 2 means bad usage or an exhausted budget.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::canonical_form;
use crate::checks::{
    check_detect, check_downlink, check_links, check_morse, check_uplink, generalized_graphs, run_stability, selftest,
    spine_graphs, CheckError, StabilityCase, Sweep,
};
use crate::enumerate::{enumerate_graphs, Budget, Constraints, Parameters};
use crate::graph::{DecorationMode, ValencyMode};
use crate::orbit::{build_quotient_complex, Stabilization};
use crate::serial::GraphDocument;

/// Largest materialized join, in simplices, for the join cross-check.
const JOIN_BUDGET: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "saut-morse", version, about = "Exhaustive checks of a Morse function on spaces of graphs with distinguished cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Decoration {
    /// cycles unlabeled and unoriented
    Sym,
    /// cycles labeled and oriented
    Pure,
}

impl From<Decoration> for DecorationMode {
    fn from(d: Decoration) -> Self {
        match d {
            Decoration::Sym => DecorationMode::UnlabeledUnoriented,
            Decoration::Pure => DecorationMode::LabeledOriented,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Spine,
    Generalized,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Map {
    Nu,
    Mu,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// write the JSON report here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(short = 'n', default_value_t = 1)]
    pub n: usize,
    #[arg(short = 'm', default_value_t = 0)]
    pub m: usize,
    #[arg(short = 'k', default_value_t = 0)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Decoration::Sym)]
    pub decoration: Decoration,
}

#[derive(Args, Debug, Clone)]
pub struct SpineSweep {
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 6)]
    pub max_vertices: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the graph classes for (n, m, k)
    Enumerate {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = Mode::Spine)]
        mode: Mode,
        /// edge bound, required in generalized mode
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        budget_cells: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Descending links are acyclic or spherical in dimension d_w - 1
    CheckLinks {
        #[command(flatten)]
        sweep: SpineSweep,
        /// also compute homology of materialized joins that fit the budget
        #[arg(long)]
        explicit_join_crosscheck: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Good forest posets, deletions, links and decisive edges
    CheckDownlink {
        #[arg(long, default_value_t = 7)]
        max_edges: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Descending partition complexes and the up-link
    CheckUplink {
        #[command(flatten)]
        sweep: SpineSweep,
        #[command(flatten)]
        output: Output,
    },
    /// Loops, thetas, lollipops and double lollipops forced by low weighted degree
    CheckDetect {
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_dw: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Height comparison against the good/bad classification of forests
    CheckMorse {
        #[command(flatten)]
        sweep: SpineSweep,
        #[command(flatten)]
        output: Output,
    },
    /// Build the quotient complex and its rational homology
    OrbitHomology {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1_000_000)]
        budget_cells: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Wedge a loop (nu) or a lollipop (mu) and compare the complexes
    Stability {
        #[arg(long, value_enum, default_value_t = Map::Nu)]
        map: Map,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 1_000_000)]
        budget_cells: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Homology engine on known complexes
    Selftest {
        #[command(flatten)]
        output: Output,
    },
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub command: String,
    pub parameters: Value,
    pub passed: bool,
    /// set when a budget stopped the run before it was exhaustive
    pub partial: bool,
    pub result: Value,
}

pub struct Outcome {
    pub code: i32,
    pub report: Option<VerificationReport>,
    pub summary: String,
}

fn sweep_summary(title: &str, s: &Sweep) -> String {
    let mut out = format!("{title}: {} graphs\n", s.graphs);
    for c in &s.claims {
        let tag = match (c.gating, c.failures) {
            (_, 0) => "PASS",
            (true, _) => "FAIL",
            (false, _) => "NOTE",
        };
        let _ = writeln!(out, "  {tag}  {:>8} instances  {:>4} failures  {}", c.instances, c.failures, c.name);
    }
    out
}

fn sweep_outcome(command: &str, parameters: Value, s: Sweep) -> Outcome {
    let summary = sweep_summary(command, &s);
    let passed = s.passed();
    Outcome {
        code: if passed { 0 } else { 1 },
        report: Some(VerificationReport {
            command: command.to_string(),
            parameters,
            passed,
            partial: false,
            result: serde_json::to_value(&s).expect("sweeps serialize"),
        }),
        summary,
    }
}

fn failure(command: &str, err: CheckError) -> Outcome {
    let budget = matches!(
        err,
        CheckError::Enumeration(_) | CheckError::Orbit(crate::orbit::OrbitError::BudgetExceeded { .. })
            | CheckError::Orbit(crate::orbit::OrbitError::Enumeration(_))
    );
    Outcome {
        code: if budget { 2 } else { 1 },
        report: Some(VerificationReport {
            command: command.to_string(),
            parameters: Value::Null,
            passed: false,
            partial: budget,
            result: json!({ "error": err.to_string() }),
        }),
        summary: format!("{command}: {err}\n"),
    }
}

fn execute(command: &Command) -> Result<Outcome, CheckError> {
    let budget = Budget::default();
    Ok(match command {
        Command::Enumerate { params, mode, max_edges, budget_cells, .. } => {
            let dec: DecorationMode = params.decoration.into();
            let (vmode, constraints) = match mode {
                Mode::Spine => (ValencyMode::Spine, Constraints::spine(dec)),
                Mode::Generalized => (
                    ValencyMode::Generalized,
                    Constraints { mode: ValencyMode::Generalized, max_edges: *max_edges, ..Constraints::spine(dec) },
                ),
            };
            let p = Parameters::new(params.n, params.m, params.k);
            let graphs = enumerate_graphs(&p, &constraints, &Budget { max_classes: *budget_cells })?;
            let mut summary = format!("{} classes for n={} m={} k={}\n", graphs.len(), p.n, p.m, p.k);
            let mut listed: Vec<Value> = Vec::with_capacity(graphs.len());
            for g in &graphs {
                let key = canonical_form(g, dec).to_hex();
                let _ = writeln!(summary, "  d_w={} V={} E={}  {key}", g.weighted_degree(), g.num_vertices(), g.num_edges());
                listed.push(json!({ "canonical": key, "graph": GraphDocument::from_graph(g, vmode, dec) }));
            }
            Outcome {
                code: 0,
                report: Some(VerificationReport {
                    command: "enumerate".into(),
                    parameters: json!({ "n": p.n, "m": p.m, "k": p.k, "decorationMode": dec, "mode": vmode, "maxEdges": max_edges }),
                    passed: true,
                    partial: false,
                    result: json!({ "count": graphs.len(), "graphs": listed }),
                }),
                summary,
            }
        }
        Command::CheckLinks { sweep, explicit_join_crosscheck, .. } => {
            let graphs = spine_graphs(sweep.max_rank, sweep.max_vertices, true, &budget)?;
            let s = check_links(&graphs, explicit_join_crosscheck.then_some(JOIN_BUDGET))?;
            sweep_outcome(
                "check-links",
                json!({ "maxRank": sweep.max_rank, "maxVertices": sweep.max_vertices, "joinBudget": explicit_join_crosscheck.then_some(JOIN_BUDGET) }),
                s,
            )
        }
        Command::CheckDownlink { max_edges, .. } => {
            let graphs = generalized_graphs(*max_edges, &budget)?;
            sweep_outcome("check-downlink", json!({ "maxEdges": max_edges }), check_downlink(&graphs)?)
        }
        Command::CheckUplink { sweep, .. } => {
            let graphs = spine_graphs(sweep.max_rank, sweep.max_vertices, true, &budget)?;
            let mut o = sweep_outcome(
                "check-uplink",
                json!({ "maxRank": sweep.max_rank, "maxVertices": sweep.max_vertices }),
                check_uplink(&graphs)?,
            );
            o.summary.push_str("  note: multi-edge blow-ups are not materialized; the up-link is taken as the join of the per-vertex complexes\n");
            o
        }
        Command::CheckDetect { max_rank, max_dw, .. } => {
            sweep_outcome("check-detect", json!({ "maxRank": max_rank, "maxDw": max_dw }), check_detect(*max_rank, *max_dw, &budget)?)
        }
        Command::CheckMorse { sweep, .. } => {
            // the equivalence holds with the basepoint on a cycle as well
            let graphs = spine_graphs(sweep.max_rank, sweep.max_vertices, false, &budget)?;
            sweep_outcome("check-morse", json!({ "maxRank": sweep.max_rank, "maxVertices": sweep.max_vertices }), check_morse(&graphs)?)
        }
        Command::OrbitHomology { params, budget_cells, .. } => {
            let p = Parameters::new(params.n, params.m, params.k);
            let dec: DecorationMode = params.decoration.into();
            let q = build_quotient_complex(p, dec, *budget_cells)?;
            let betti = q.betti();
            let counts = q.cell_counts();
            let euler_ok = betti.euler() == q.euler();
            let summary = format!(
                "quotient complex n={} m={} k={}: cells {:?}, Betti {:?} from dimension {}, Euler {}\n",
                p.n, p.m, p.k, counts, betti.values, betti.start, q.euler()
            );
            Outcome {
                code: if euler_ok { 0 } else { 1 },
                report: Some(VerificationReport {
                    command: "orbit-homology".into(),
                    parameters: json!({ "n": p.n, "m": p.m, "k": p.k, "decorationMode": dec }),
                    passed: euler_ok,
                    partial: false,
                    result: json!({ "cellCounts": counts, "betti": betti, "euler": q.euler() }),
                }),
                summary,
            }
        }
        Command::Stability { map, params, budget_cells, .. } => {
            let kind = match map {
                Map::Nu => Stabilization::Nu,
                Map::Mu => Stabilization::Mu,
            };
            let case = StabilityCase::new(kind, params.n, params.m, params.k, params.decoration.into());
            let o = run_stability(case, *budget_cells)?;
            let t = case.target();
            let mut summary = format!(
                "{map:?} ({},{},{}) -> ({},{},{}): cells {:?} -> {:?}, injective {}, bijective {}, faces commute {}\n",
                case.source.n, case.source.m, case.source.k, t.n, t.m, t.k, o.source_cells, o.target_cells, o.injective, o.bijective, o.faces_commute
            );
            let _ = writeln!(summary, "  bijection range {}, equivalence range {}", case.in_bijection_range(), case.in_equivalence_range());
            for i in &o.induced {
                let _ = writeln!(summary, "  H_{}: {} -> {}, rank {}, {:?}", i.dimension, i.source_betti, i.target_betti, i.rank, i.verdict);
            }
            let passed = o.passed();
            let _ = writeln!(summary, "  {}", if passed { "PASS" } else { "FAIL" });
            Outcome {
                code: if passed { 0 } else { 1 },
                report: Some(VerificationReport {
                    command: "stability".into(),
                    parameters: serde_json::to_value(case).expect("cases serialize"),
                    passed,
                    partial: false,
                    result: serde_json::to_value(&o).expect("outcomes serialize"),
                }),
                summary,
            }
        }
        Command::Selftest { .. } => sweep_outcome("selftest", Value::Null, selftest()),
    })
}

fn output_of(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Enumerate { output, .. }
        | Command::CheckLinks { output, .. }
        | Command::CheckDownlink { output, .. }
        | Command::CheckUplink { output, .. }
        | Command::CheckDetect { output, .. }
        | Command::CheckMorse { output, .. }
        | Command::OrbitHomology { output, .. }
        | Command::Stability { output, .. }
        | Command::Selftest { output } => output.out.as_ref(),
    }
}

fn name_of(command: &Command) -> &'static str {
    match command {
        Command::Enumerate { .. } => "enumerate",
        Command::CheckLinks { .. } => "check-links",
        Command::CheckDownlink { .. } => "check-downlink",
        Command::CheckUplink { .. } => "check-uplink",
        Command::CheckDetect { .. } => "check-detect",
        Command::CheckMorse { .. } => "check-morse",
        Command::OrbitHomology { .. } => "orbit-homology",
        Command::Stability { .. } => "stability",
        Command::Selftest { .. } => "selftest",
    }
}

/// Run a parsed command. The JSON report leaves out wall time so that equal
/// flags give byte-identical reports; the summary carries it instead.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut outcome = execute(&cli.command).unwrap_or_else(|e| failure(name_of(&cli.command), e));
    let _ = writeln!(outcome.summary, "wall time {:.2?}", start.elapsed());
    if let (Some(path), Some(report)) = (output_of(&cli.command), &outcome.report) {
        let text = serde_json::to_string_pretty(report).expect("reports serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            let _ = writeln!(outcome.summary, "could not write {}: {e}", path.display());
            outcome.code = 2;
        }
    }
    outcome
}
