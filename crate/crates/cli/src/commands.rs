use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use mlstc::{
    build_wedge_graph, build_wedge_hypergraph, labeling_from_graph_cover, labeling_from_hypergraph_cover, Columns,
    CoverMethod, Labeling, MultilayerGraph, StatsReport, TallyMode,
};

use crate::{BaselineArgs, ExportArgs, GenMode, GenerateArgs, InputArgs, LabelArgs, Model, WedgesArgs};

/// A produced labeling failed validation.
#[derive(Debug)]
pub struct InvariantViolation(pub String);

impl std::fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal invariant violated: {}", self.0)
    }
}

impl std::error::Error for InvariantViolation {}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<mlstc::Error>() {
            return match e {
                mlstc::Error::BudgetExceeded { .. } => 4,
                mlstc::Error::Parse { .. } | mlstc::Error::SelfLoop { .. } => 3,
                mlstc::Error::Usage(_) | mlstc::Error::InvalidLayer { .. } => 2,
                mlstc::Error::InvalidInstance(_) | mlstc::Error::OracleLimits(_) => 5,
            };
        }
        if cause.is::<io::Error>() {
            return 3;
        }
        if cause.is::<InvariantViolation>() {
            return 5;
        }
    }
    1
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        let msg = match e.kind() {
            io::ErrorKind::NotFound => format!("{}: file not found", path.display()),
            _ => format!("{}: {e}", path.display()),
        };
        io::Error::new(e.kind(), msg).into()
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn load_graph(text: &str, columns: &str, source: &Path) -> Result<MultilayerGraph> {
    let cols = Columns::parse(columns)?;
    let (g, stats) = mlstc::parse_with_columns(text, cols).with_context(|| format!("in {}", source.display()))?;
    if stats.duplicates > 0 {
        eprintln!("{}: {} duplicate lines ignored", source.display(), stats.duplicates);
    }
    Ok(g)
}

fn read_input(input: &InputArgs) -> Result<MultilayerGraph> {
    load_graph(&read_text(&input.input)?, &input.columns, &input.input)
}

/// `<input>` with its extension replaced by `suffix`.
fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let mut name = input.file_stem().unwrap_or_default().to_os_string();
    name.push(suffix);
    input.with_file_name(name)
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn check_clean(g: &MultilayerGraph, l: &Labeling) -> Result<()> {
    let report = mlstc::validate(g, l);
    if !l.is_well_formed(g) {
        return Err(InvariantViolation("labeling does not match the input layers".into()).into());
    }
    if !report.is_clean() {
        return Err(InvariantViolation(format!(
            "{} STC violations, d_k = {}",
            report.violations.len(),
            report.disagreements
        ))
        .into());
    }
    Ok(())
}

pub fn summary(s: &StatsReport, plus: bool) -> String {
    let objective = if plus { s.objective_min_plus } else { s.objective_min };
    format!(
        "weak {:.1}% strong {:.1}% mu {:.4} d_k {} objective {} inserted {} runtime_ms {:.3}",
        s.weak_pct, s.strong_pct, s.mu, s.d_k, objective, s.inserted_count, s.runtime_ms
    )
}

fn write_stats(path: &Path, s: &StatsReport) -> Result<()> {
    if path == Path::new("-") {
        println!("{}", s.to_json());
        Ok(())
    } else {
        write_text(path, &(s.to_json() + "\n"))
    }
}

fn traced_labeling(g: &MultilayerGraph, plus: bool, postprocess: bool) -> Labeling {
    let print = |step: &mlstc::PricingStep<u64>, nodes: &[mlstc::Edge]| {
        let tight: Vec<String> = step
            .tightened
            .iter()
            .map(|&v| format!("{}-{}", g.node_label(nodes[v].u()), g.node_label(nodes[v].v())))
            .collect();
        eprintln!(
            "price edge {} raised {} tight [{}]",
            step.edge,
            step.raised,
            tight.join(" ")
        );
    };
    if plus {
        let h = build_wedge_hypergraph(g);
        let c = mlstc::pricing_traced(&h.to_cover_instance(), |s| print(s, h.nodes())).solution;
        let l = labeling_from_hypergraph_cover(g, &h, &c);
        if postprocess {
            mlstc::post_process(g, &l)
        } else {
            l
        }
    } else {
        let w = build_wedge_graph(g);
        let c = mlstc::pricing_traced(&w.to_cover_instance(), |s| print(s, w.nodes())).solution;
        labeling_from_graph_cover(g, &w, &c)
    }
}

pub fn label(a: LabelArgs) -> Result<()> {
    let start = Instant::now();
    let g = read_input(&a.input)?;
    let method: CoverMethod = a.method.into();
    let postprocess = !a.no_postprocess;
    if a.trace && method != CoverMethod::Pricing {
        return Err(mlstc::Error::Usage("--trace needs --method pricing".into()).into());
    }
    if a.plus && method == CoverMethod::Exact {
        eprintln!("note: exact for the insert-everywhere variant; a 2-approximation when insertions are unrestricted");
    }
    let algo_start = Instant::now();
    let l = if a.trace {
        traced_labeling(&g, a.plus, postprocess)
    } else if a.plus {
        mlstc::solve_min_ml_stc_plus(&g, method, a.budget.budget(), postprocess)?
    } else {
        mlstc::solve_min_ml_stc(&g, method, a.budget.budget())?
    };
    let runtime = ms(if a.time_all { start } else { algo_start });
    check_clean(&g, &l)?;
    let mode = if a.mu_existing_only {
        TallyMode::ExistingOnly
    } else {
        TallyMode::IncludeInserted
    };
    let stats = StatsReport::new(&g, &l, mode, runtime);
    let labels = a.labels.unwrap_or_else(|| sibling(&a.input.input, ".labels.csv"));
    let stats_path = a.stats.unwrap_or_else(|| sibling(&a.input.input, ".stats.json"));
    write_text(&labels, &l.to_csv(&g))?;
    write_stats(&stats_path, &stats)?;
    println!("{}", summary(&stats, a.plus));
    Ok(())
}

pub fn baseline(a: BaselineArgs) -> Result<()> {
    let start = Instant::now();
    let g = read_input(&a.input)?;
    let algo_start = Instant::now();
    let raw = mlstc::baseline_per_layer(&g, a.method.into(), a.plus, a.budget.budget(), !a.no_postprocess)?;
    let raw_ms = ms(if a.time_all { start } else { algo_start });
    let repaired = mlstc::enforce_consistency(&g, &raw);
    let repaired_ms = ms(if a.time_all { start } else { algo_start });
    check_clean(&g, &repaired)?;
    let mode = if a.mu_existing_only {
        TallyMode::ExistingOnly
    } else {
        TallyMode::IncludeInserted
    };
    let prefix = a.out.unwrap_or_else(|| sibling(&a.input.input, ""));
    let path = |s: &str| {
        let mut p = prefix.clone().into_os_string();
        p.push(s);
        PathBuf::from(p)
    };
    for (tag, l, runtime) in [("raw", &raw, raw_ms), ("repaired", &repaired, repaired_ms)] {
        let stats = StatsReport::new(&g, l, mode, runtime);
        write_text(&path(&format!(".{tag}.labels.csv")), &l.to_csv(&g))?;
        write_stats(&path(&format!(".{tag}.stats.json")), &stats)?;
        println!("{tag:<8} {}", summary(&stats, a.plus));
    }
    Ok(())
}

pub fn generate(a: GenerateArgs) -> Result<()> {
    let mode = match a.mode {
        GenMode::Independent => mlstc::GeneratorMode::Independent,
        GenMode::Correlated => mlstc::GeneratorMode::Correlated { epsilon: a.epsilon },
    };
    let cfg = mlstc::GeneratorConfig {
        nodes: a.n,
        layers: a.k,
        p: a.p,
        seed: a.seed,
        mode,
    };
    let text = mlstc::generate_mledges(&cfg)?;
    match a.output {
        Some(p) => write_text(&p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn export_lp(a: ExportArgs) -> Result<()> {
    let g = read_input(&a.input)?;
    if a.full && a.model != Model::MinPlus {
        return Err(mlstc::Error::Usage("--full applies to --model min-plus only".into()).into());
    }
    let doc = match a.model {
        Model::Max => mlstc::export_max_stc(&g),
        Model::Min => mlstc::export_min_stc(&g),
        Model::MinPlus if a.full => mlstc::export_min_stc_plus_with(&g, mlstc::PlusVariables::Full),
        Model::MinPlus => mlstc::export_min_stc_plus(&g),
    };
    let manifest = a.manifest.or_else(|| {
        a.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".manifest.tsv");
            PathBuf::from(s)
        })
    });
    match &a.output {
        Some(p) => write_text(p, &doc.render())?,
        None => print!("{}", doc.render()),
    }
    if let Some(m) = manifest {
        write_text(&m, &doc.manifest(&g))?;
    }
    Ok(())
}

pub fn wedges(a: WedgesArgs) -> Result<()> {
    let g = read_input(&a.input)?;
    let text = if a.hyper {
        build_wedge_hypergraph(&g).dump(&g)
    } else {
        build_wedge_graph(&g).dump(&g)
    };
    print!("{text}");
    Ok(())
}
