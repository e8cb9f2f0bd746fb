use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use mlstc::{CoverMethod, ExactBudget, Labeling, MultilayerGraph, StatsReport, TallyMode};
use rayon::prelude::*;

use crate::commands::{load_graph, read_text, write_text};
use crate::BenchArgs;

/// Branch cap for exact cells when `--max-branches` is not given.
pub const DEFAULT_MAX_BRANCHES: u64 = 5_000_000;

pub const RESULTS_HEADER: &str =
    "dataset,algorithm,method,variant,weak_pct,strong_pct,mu,objective,inserted,runtime_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Algorithm {
    Approx,
    Baseline,
    Exact,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Approx => "approx",
            Algorithm::Baseline => "baseline",
            Algorithm::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    algorithm: Algorithm,
    method: CoverMethod,
    plus: bool,
}

fn cells(skip_exact: bool) -> Vec<(Cell, bool)> {
    let mut out = Vec::new();
    for algorithm in [Algorithm::Baseline, Algorithm::Approx] {
        for method in [CoverMethod::Pricing, CoverMethod::Greedy] {
            for plus in [false, true] {
                out.push((
                    Cell {
                        algorithm,
                        method,
                        plus,
                    },
                    true,
                ));
            }
        }
    }
    for plus in [false, true] {
        let cell = Cell {
            algorithm: Algorithm::Exact,
            method: CoverMethod::Exact,
            plus,
        };
        out.push((cell, !skip_exact));
    }
    out
}

enum Outcome {
    Done { stats: StatsReport, objective: u64 },
    Skipped,
    Failed(String),
}

struct Row {
    dataset: String,
    cell: Cell,
    outcome: Outcome,
}

impl Row {
    fn variant(&self) -> &'static str {
        if self.cell.plus {
            "stc+"
        } else {
            "stc"
        }
    }

    fn key(&self) -> (String, Algorithm, &'static str, &'static str) {
        (
            self.dataset.clone(),
            self.cell.algorithm,
            self.cell.method.name(),
            self.variant(),
        )
    }

    fn objective(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Done { objective, .. } => Some(objective),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        let head = format!(
            "{},{},{},{}",
            self.dataset,
            self.cell.algorithm.name(),
            self.cell.method.name(),
            self.variant()
        );
        match &self.outcome {
            Outcome::Done { stats, objective } => format!(
                "{head},{:.1},{:.1},{:.4},{objective},{},{:.3}",
                stats.weak_pct, stats.strong_pct, stats.mu, stats.inserted_count, stats.runtime_ms
            ),
            Outcome::Skipped => format!("{head},skipped,skipped,skipped,skipped,skipped,skipped"),
            Outcome::Failed(_) => format!("{head},error,error,error,error,error,error"),
        }
    }
}

fn run_cell(g: &MultilayerGraph, cell: Cell, budget: ExactBudget, mode: TallyMode) -> Result<(StatsReport, u64)> {
    let start = Instant::now();
    let l: Labeling = match cell.algorithm {
        Algorithm::Baseline => mlstc::baseline_per_layer(g, cell.method, cell.plus, budget, true)?,
        Algorithm::Approx | Algorithm::Exact if cell.plus => {
            mlstc::solve_min_ml_stc_plus(g, cell.method, budget, true)?
        }
        Algorithm::Approx | Algorithm::Exact => mlstc::solve_min_ml_stc(g, cell.method, budget)?,
    };
    let runtime = start.elapsed().as_secs_f64() * 1e3;
    if cell.algorithm != Algorithm::Baseline {
        crate::commands::check_clean(g, &l)?;
    }
    let obj = mlstc::objectives(g, &l);
    let objective = if cell.plus { obj.min_plus } else { obj.min };
    Ok((StatsReport::new(g, &l, mode, runtime), objective))
}

fn datasets(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot list {}", dir.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "mledges") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn sizes_line(name: &str, g: &MultilayerGraph) -> String {
    let w = mlstc::build_wedge_graph(g);
    let h = mlstc::build_wedge_hypergraph(g);
    format!(
        "{name},{},{},{},{},{},{},{}",
        g.layer_count(),
        g.node_count(),
        g.total_edges(),
        w.node_count(),
        w.edge_count(),
        h.node_count(),
        h.edge_count()
    )
}

pub fn run(a: BenchArgs) -> Result<()> {
    let files = datasets(&a.dir)?;
    if files.is_empty() {
        eprintln!("{}: no .mledges files", a.dir.display());
    }
    let mut graphs = Vec::new();
    for f in &files {
        let name = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let g = load_graph(&read_text(f)?, &a.columns, f)?;
        graphs.push((name, g));
    }
    let mut budget = a.budget.budget();
    budget.max_branches.get_or_insert(DEFAULT_MAX_BRANCHES);
    let mode = if a.mu_existing_only {
        TallyMode::ExistingOnly
    } else {
        TallyMode::IncludeInserted
    };

    let jobs: Vec<(usize, Cell, bool)> = (0..graphs.len())
        .flat_map(|d| cells(a.skip_exact).into_iter().map(move |(c, run)| (d, c, run)))
        .collect();
    let mut rows: Vec<Row> = jobs
        .into_par_iter()
        .map(|(d, cell, run)| {
            let (name, g) = &graphs[d];
            let outcome = if !run {
                Outcome::Skipped
            } else {
                match run_cell(g, cell, budget, mode) {
                    Ok((stats, objective)) => Outcome::Done { stats, objective },
                    Err(e) => Outcome::Failed(format!("{e:#}")),
                }
            };
            Row {
                dataset: name.clone(),
                cell,
                outcome,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.key());

    let mut results = format!("{RESULTS_HEADER}\n");
    for r in &rows {
        if let Outcome::Failed(msg) = &r.outcome {
            eprintln!(
                "{} {} {} {}: {msg}",
                r.dataset,
                r.cell.algorithm.name(),
                r.cell.method,
                r.variant()
            );
        }
        results.push_str(&r.csv());
        results.push('\n');
    }

    let mut ratios = String::from("dataset,method,variant,objective,exact_objective,ratio\n");
    for r in rows.iter().filter(|r| r.cell.algorithm == Algorithm::Approx) {
        let exact = rows
            .iter()
            .find(|e| e.dataset == r.dataset && e.cell.algorithm == Algorithm::Exact && e.cell.plus == r.cell.plus)
            .and_then(Row::objective);
        if let (Some(obj), Some(ex)) = (r.objective(), exact) {
            let ratio = match (obj, ex) {
                (0, 0) => "1.0000".to_string(),
                (_, 0) => "inf".to_string(),
                _ => format!("{:.4}", obj as f64 / ex as f64),
            };
            let _ = writeln!(
                ratios,
                "{},{},{},{obj},{ex},{ratio}",
                r.dataset,
                r.cell.method,
                r.variant()
            );
        }
    }

    let mut sizes = String::from(
        "dataset,layers,nodes,edges,wedge_graph_nodes,wedge_graph_edges,wedge_hypergraph_nodes,wedge_hypergraph_edges\n",
    );
    for (name, g) in &graphs {
        sizes.push_str(&sizes_line(name, g));
        sizes.push('\n');
    }

    fs::create_dir_all(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
    write_text(&a.out.join("results.csv"), &results)?;
    write_text(&a.out.join("ratios.csv"), &ratios)?;
    write_text(&a.out.join("sizes.csv"), &sizes)?;
    print!("{results}");
    Ok(())
}
