//! Command line definitions and the commands behind them.
//!
//! Every command returns its output as text together with warnings for
//! stderr; the binary decides where the text goes.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use graphtopo_core::embedding::{EmbedderKind, EmbedderSpec};
use graphtopo_core::filtration::{apply_mlp, degree_filtration, make_injective};
use graphtopo_core::grad::{build_routing, finite_diff_check, InfinityRouting};
use graphtopo_core::graph::betti_graph;
use graphtopo_core::persistence::{diagrams_equal, ph_graph, CycleSlot};
use graphtopo_core::simplicial::{
    betti_numbers, clique_complex, count_indistinguishable, fixtures, total_persistence_features,
    EssentialSubstitute, SimplicialComplex, FEATURE_TOLERANCE,
};
use graphtopo_core::synth::{gen_sample, Dataset};
use graphtopo_core::wl::{wl_distinguish, wl_filtration, wl_refine, InitialLabels, DEFAULT_EPSILON};
use graphtopo_core::{DiagramPair, Graph, VertexFiltration};

use crate::batch::{par_map, resolve_threads};
use crate::edgelist::parse_edge_list;
use crate::error::{IoError, Result};
use crate::export::{coloring_csv, into_string, write_dataset, DatasetLayout};
use crate::graph6::parse_graph6_file;
use crate::json::{complex_from_json, DiagramJson, EmbedderJson, MlpConfig, RoutingJson, SimplexJson};
use crate::meta::{read_input, read_input_text, Metadata};

/// Simplex count above which a complexity warning is printed.
pub const DEFAULT_SIMPLEX_CAP: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "graphtopo", version, about = "Persistent homology and WL tools for graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Persistence diagrams of one graph under a vertex filtration.
    Ph(PhArgs),
    /// Betti numbers of graphs (clique complex) or of a complex.
    Betti(BettiArgs),
    /// WL comparison of two graphs, with WL-derived filtrations.
    Wl(WlArgs),
    /// Pairwise distinguishability of a graph6 collection by total persistence.
    Regular(RegularArgs),
    /// Synthetic two-class datasets.
    Gen(GenArgs),
    /// Finite-difference check of the diagram-embedding gradient.
    Gradcheck(GradcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `.g6` / `.graph6` files are graph6, everything else an edge list.
    Auto,
    Edges,
    Graph6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    #[value(name = "gnuplot-script")]
    GnuplotScript,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the output here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub input_format: InputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationSource {
    Degree,
    /// JSON array of vertex values (`--values`).
    Values,
    /// Filtration network config applied to the vertex attributes (`--mlp`).
    Mlp,
}

#[derive(Debug, Clone, Args)]
pub struct FiltrationArgs {
    #[arg(long, value_enum, default_value = "degree")]
    pub filtration: FiltrationSource,
    #[arg(long)]
    pub values: Option<PathBuf>,
    #[arg(long)]
    pub mlp: Option<PathBuf>,
    /// Break ties by vertex index.
    #[arg(long)]
    pub injective: bool,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PhArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Leave the (0, 0) placeholder slots out of dimension 1.
    #[arg(long)]
    pub no_dummies: bool,
    #[arg(long, value_enum)]
    pub plot: Option<PlotKind>,
}

#[derive(Debug, Clone, Args)]
pub struct BettiArgs {
    /// Graph file (edge list or multi-line graph6) or, with `--complex`, a
    /// complex JSON file.
    #[arg(required_unless_present = "fixture")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
    /// Highest Betti number reported; defaults to 1 for graphs and to the
    /// top dimension for complexes.
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub complex: bool,
    #[arg(long, value_enum, conflicts_with = "input")]
    pub fixture: Option<Fixture>,
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_CAP)]
    pub simplex_cap: usize,
    #[arg(long, value_enum)]
    pub plot: Option<PlotKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    Sphere,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Uniform,
    Degree,
}

impl From<InitArg> for InitialLabels {
    fn from(a: InitArg) -> Self {
        match a {
            InitArg::Uniform => InitialLabels::Uniform,
            InitArg::Degree => InitialLabels::Degree,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct WlArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    pub init: InitArg,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Write the WL-filtration diagrams of both graphs here (JSON).
    #[arg(long)]
    pub diagrams_out: Option<PathBuf>,
    /// Write both colorings here (CSV).
    #[arg(long)]
    pub coloring_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubstituteArg {
    /// Largest filtration value.
    Max,
    /// Largest filtration value plus one.
    MaxPlusOne,
    /// Report both.
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct RegularArgs {
    /// graph6 file, one graph per line.
    pub input: PathBuf,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub substitute: SubstituteArg,
    #[arg(long, default_value_t = FEATURE_TOLERANCE)]
    pub tolerance: f64,
    /// Worker threads; `TOPO_THREADS` overrides, 0 means all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the per-graph feature vectors here (CSV).
    #[arg(long)]
    pub features_out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_CAP)]
    pub simplex_cap: usize,
    #[arg(long, value_enum)]
    pub plot: Option<PlotKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetArg {
    Cycles,
    Necklaces,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Dir,
    Jsonl,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub dataset: DatasetArg,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory (`dir`) or file (`jsonl`).
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "dir")]
    pub layout: LayoutArg,
    /// Smallest total cycle size (cycles) or chain length (necklaces).
    #[arg(long)]
    pub min_size: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GradcheckArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub input_format: InputFormat,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    /// Embedder config JSON; without it a random embedder of `--kind` is used.
    #[arg(long)]
    pub embedder: Option<PathBuf>,
    #[arg(long, default_value = "triangle")]
    pub kind: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-5)]
    pub h: f64,
    /// Write the coordinate-to-vertex routing map here (JSON).
    #[arg(long)]
    pub routing_out: Option<PathBuf>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// Text for stdout or `--out`, plus warnings for stderr.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Ph(a) => cmd_ph(a),
        Command::Betti(a) => cmd_betti(a),
        Command::Wl(a) => cmd_wl(a),
        Command::Regular(a) => cmd_regular(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Gradcheck(a) => cmd_gradcheck(a),
    }
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Invalid(msg.into())
}

fn detect(path: &Path, format: InputFormat) -> InputFormat {
    match format {
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => InputFormat::Graph6,
            _ => InputFormat::Edges,
        },
        f => f,
    }
}

/// All graphs in a file: one for an edge list, one per line for graph6.
pub fn read_graphs(meta: &mut Metadata, path: &Path, format: InputFormat) -> Result<Vec<Graph>> {
    let text = read_input_text(meta, path)?;
    match detect(path, format) {
        InputFormat::Graph6 => parse_graph6_file(&text),
        _ => Ok(vec![parse_edge_list(&text)?]),
    }
}

pub fn read_graph(meta: &mut Metadata, path: &Path, format: InputFormat) -> Result<Graph> {
    let mut gs = read_graphs(meta, path, format)?;
    match gs.len() {
        1 => Ok(gs.remove(0)),
        n => Err(invalid(format!("{} holds {n} graphs, expected one", path.display()))),
    }
}

fn write_side_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| IoError::file(path, e))
}

fn filtrations(meta: &mut Metadata, g: &Graph, a: &FiltrationArgs) -> Result<Vec<VertexFiltration>> {
    let raw = match a.filtration {
        FiltrationSource::Degree => vec![degree_filtration(g)],
        FiltrationSource::Values => {
            let path = a.values.as_ref().ok_or_else(|| invalid("--filtration values needs --values <file>"))?;
            let values: Vec<f64> = serde_json::from_slice(&read_input(meta, path)?)?;
            if values.len() != g.n_vertices() {
                return Err(invalid(format!("{} values for {} vertices", values.len(), g.n_vertices())));
            }
            vec![VertexFiltration::new(values)?]
        }
        FiltrationSource::Mlp => {
            let path = a.mlp.as_ref().ok_or_else(|| invalid("--filtration mlp needs --mlp <file>"))?;
            let cfg: MlpConfig = serde_json::from_slice(&read_input(meta, path)?)?;
            apply_mlp(&cfg.to_mlp()?, g)?.into_inner()
        }
    };
    if a.injective {
        raw.iter().map(|f| Ok(make_injective(f, a.epsilon)?)).collect()
    } else {
        Ok(raw)
    }
}

fn filtration_meta(meta: Metadata, a: &FiltrationArgs) -> Metadata {
    let name = match a.filtration {
        FiltrationSource::Degree => "degree",
        FiltrationSource::Values => "values",
        FiltrationSource::Mlp => "mlp",
    };
    meta.with("filtration", name).with("injective", a.injective).with("epsilon", a.epsilon)
}

fn with_meta(meta: &Metadata, body: serde_json::Value) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("meta".into(), meta.to_json());
    match body {
        serde_json::Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(obj)).expect("json values serialize") + "\n"
}

fn fmt_value(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else {
        format!("{x}")
    }
}

fn diagram_csv(diagrams: &[DiagramPair], include_dummies: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["filtration", "dim", "index", "birth", "death", "creator", "destroyer"])?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for (i, d) in diagrams.iter().enumerate() {
        for (v, p) in d.d0.iter().enumerate() {
            w.write_record([
                i.to_string(),
                "0".into(),
                v.to_string(),
                fmt_value(p.birth),
                fmt_value(p.death),
                p.creator.to_string(),
                opt(p.destroyer),
            ])?;
        }
        for (e, slot) in d.d1_by_edge.iter().enumerate() {
            let (creator, destroyer) = match slot {
                CycleSlot::Cycle(p) => (p.creator.to_string(), opt(p.destroyer)),
                CycleSlot::Dummy if include_dummies => (String::new(), String::new()),
                CycleSlot::Dummy => continue,
            };
            let (b, de) = slot.tuple();
            w.write_record([i.to_string(), "1".into(), e.to_string(), fmt_value(b), fmt_value(de), creator, destroyer])?;
        }
    }
    into_string(w)
}

/// Self-contained gnuplot script with the data in a datablock.
fn gnuplot_script(meta: &Metadata, data: &str, body: &str) -> String {
    let mut s = meta.comment_block();
    s += "$data << EOD\n";
    for line in data.lines().filter(|l| !l.starts_with('#')) {
        s += line;
        s.push('\n');
    }
    s += "EOD\nset datafile separator ','\nset key autotitle columnhead\n";
    s += body;
    s
}

pub fn cmd_ph(a: &PhArgs) -> Result<Output> {
    let mut meta = filtration_meta(Metadata::new("ph", None), &a.filtration).with("dummies", !a.no_dummies);
    let g = read_graph(&mut meta, &a.input, a.common.input_format)?;
    let fs = filtrations(&mut meta, &g, &a.filtration)?;
    let diagrams = fs.iter().map(|f| ph_graph(&g, f)).collect::<graphtopo_core::Result<Vec<_>>>()?;
    if let Some(PlotKind::GnuplotScript) = a.plot {
        let data = diagram_csv(&diagrams, false)?;
        let max = diagrams.iter().map(|d| d.max_filtration).fold(0.0, f64::max);
        let top = max + 1.0;
        // Essential points are drawn on a line above every finite death.
        let body = format!(
            "set xlabel 'birth'\nset ylabel 'death'\nset xrange [0:{top}]\nset yrange [0:{top}]\n\
             plot $data using 4:5:2 with points pt 7 lc variable title 'diagram', \
             x with lines lc rgb 'gray' notitle\n"
        );
        let data = data.replace(",inf,", &format!(",{top},"));
        return Ok(Output { text: gnuplot_script(&meta, &data, &body), warnings: vec![] });
    }
    let text = match a.format {
        OutputFormat::Json => {
            let docs: Vec<_> = diagrams.iter().map(|d| DiagramJson::from_diagram(d, !a.no_dummies)).collect();
            let body = if docs.len() == 1 {
                serde_json::to_value(&docs[0])?
            } else {
                json!({ "diagrams": docs })
            };
            with_meta(&meta, body)
        }
        OutputFormat::Csv => meta.comment_block() + &diagram_csv(&diagrams, !a.no_dummies)?,
    };
    Ok(Output { text, warnings: vec![] })
}

fn complexity_warning(what: &str, k: &SimplicialComplex, cap: usize) -> Option<String> {
    k.exceeds(cap).then(|| {
        format!("{what}: {} simplices exceeds the cap of {cap}; reduction time grows quickly with the clique size", k.len())
    })
}

pub fn cmd_betti(a: &BettiArgs) -> Result<Output> {
    let mut meta = Metadata::new("betti", None).with("complex", a.complex);
    let mut warnings = Vec::new();
    let complexes: Vec<(String, SimplicialComplex)> = if let Some(fx) = a.fixture {
        meta = meta.with("fixture", format!("{fx:?}").to_lowercase());
        vec![(format!("{fx:?}").to_lowercase(), if fx == Fixture::Sphere { fixtures::sphere() } else { fixtures::torus() })]
    } else {
        let path = a.input.as_ref().expect("clap requires input without fixture");
        if a.complex {
            let items: Vec<SimplexJson> = serde_json::from_slice(&read_input(&mut meta, path)?)?;
            if items.is_empty() {
                return Err(invalid(format!("{} holds an empty complex", path.display())));
            }
            vec![("0".into(), complex_from_json(&items)?)]
        } else {
            let graphs = read_graphs(&mut meta, path, a.common.input_format)?;
            if graphs.is_empty() || graphs.iter().all(|g| g.n_vertices() == 0) {
                return Err(invalid(format!("{} holds no graph", path.display())));
            }
            let max_dim = a.max_dim.unwrap_or(1).max(1);
            graphs
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let f = VertexFiltration::constant(g.n_vertices(), 0.0)?;
                    Ok((i.to_string(), clique_complex(g, &f, max_dim)?))
                })
                .collect::<Result<_>>()?
        }
    };
    let max_dim = a.max_dim.unwrap_or_else(|| {
        if a.complex || a.fixture.is_some() {
            complexes.iter().filter_map(|(_, k)| k.dim()).max().unwrap_or(0)
        } else {
            1
        }
    });
    meta = meta.with("max_dim", max_dim);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string()];
    header.extend((0..=max_dim).map(|d| format!("b{d}")));
    w.write_record(&header)?;
    for (id, k) in &complexes {
        warnings.extend(complexity_warning(id, k, a.simplex_cap));
        let mut rec = vec![id.clone()];
        rec.extend(betti_numbers(k, max_dim).iter().map(usize::to_string));
        w.write_record(&rec)?;
    }
    let data = into_string(w)?;
    let text = match a.plot {
        Some(PlotKind::GnuplotScript) => {
            let cols = (0..=max_dim).map(|d| format!("'' using {} title 'b{d}'", d + 2)).collect::<Vec<_>>();
            let body = format!(
                "set style data histograms\nset style fill solid\nplot $data using 2:xtic(1) title 'b0'{}\n",
                cols[1..].iter().map(|c| format!(", {c}")).collect::<String>()
            );
            gnuplot_script(&meta, &data, &body)
        }
        None => meta.comment_block() + &data,
    };
    Ok(Output { text, warnings })
}

pub fn cmd_wl(a: &WlArgs) -> Result<Output> {
    let init: InitialLabels = a.init.into();
    let mut meta = Metadata::new("wl", None)
        .with("iters", a.iters)
        .with("init", format!("{:?}", a.init).to_lowercase())
        .with("epsilon", a.epsilon);
    let g1 = read_graph(&mut meta, &a.first, a.common.input_format)?;
    let g2 = read_graph(&mut meta, &a.second, a.common.input_format)?;
    let diverged = wl_distinguish(&g1, &g2, a.iters, init);
    let (b1, b2) = (betti_graph(&g1), betti_graph(&g2));
    // WL-derived filtrations at the divergence depth; constant ones otherwise.
    let h = diverged.unwrap_or(a.iters);
    let (f1, f2) = if g1.n_vertices() == 0 || g2.n_vertices() == 0 {
        (VertexFiltration::constant(g1.n_vertices(), 1.0)?, VertexFiltration::constant(g2.n_vertices(), 1.0)?)
    } else {
        wl_filtration(&g1, &g2, h, a.epsilon, init)?
    };
    let (d1, d2) = (ph_graph(&g1, &f1)?, ph_graph(&g2, &f2)?);
    let equal = diagrams_equal(&d1, &d2);
    let wl_part = match diverged {
        Some(t) => format!("distinguished by WL at iteration {t}"),
        None => format!("indistinguishable by WL within {} iterations", a.iters),
    };
    let ph_part = if b1 != b2 {
        format!("distinguished by PH (betti {},{} vs {},{})", b1.b0, b1.b1, b2.b0, b2.b1)
    } else if !equal {
        "distinguished by PH (WL-filtration diagrams differ)".to_string()
    } else {
        "diagrams equal".to_string()
    };
    let summary = format!("{wl_part}; {ph_part}");
    if let Some(path) = &a.diagrams_out {
        let body = json!({
            "depth": h,
            "diagrams": [DiagramJson::from_diagram(&d1, true), DiagramJson::from_diagram(&d2, true)],
            "filtrations": [f1.values(), f2.values()],
        });
        write_side_file(path, &with_meta(&meta, body))?;
    }
    if let Some(path) = &a.coloring_out {
        let s = wl_refine(&[g1.clone(), g2.clone()], h, init);
        let mut text = meta.comment_block();
        for (i, c) in s.colorings.iter().enumerate() {
            text += &format!("# graph {i}\n");
            text += &coloring_csv(c)?;
        }
        write_side_file(path, &text)?;
    }
    let text = match a.format {
        OutputFormat::Json => with_meta(
            &meta,
            json!({
                "summary": summary,
                "diverged_at": diverged,
                "betti": [[b1.b0, b1.b1], [b2.b0, b2.b1]],
                "wl_filtration_depth": h,
                "diagrams_equal": equal,
            }),
        ),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["diverged_at", "b0_first", "b1_first", "b0_second", "b1_second", "diagrams_equal"])?;
            w.serialize((diverged.map(|t| t.to_string()).unwrap_or_default(), b1.b0, b1.b1, b2.b0, b2.b1, equal))?;
            meta.comment_block() + &format!("# {summary}\n") + &into_string(w)?
        }
    };
    Ok(Output { text, warnings: vec![] })
}

pub fn cmd_regular(a: &RegularArgs) -> Result<Output> {
    let threads = resolve_threads(a.threads)?;
    let mut meta = Metadata::new("regular", None)
        .with("max_dim", a.max_dim)
        .with("substitute", format!("{:?}", a.substitute).to_lowercase())
        .with("tolerance", a.tolerance)
        .with("threads", threads);
    if a.max_dim < 1 {
        return Err(invalid("--max-dim must be at least 1"));
    }
    let graphs = read_graphs(&mut meta, &a.input, InputFormat::Graph6)?;
    let conventions: Vec<(&str, EssentialSubstitute)> = match a.substitute {
        SubstituteArg::Max => vec![("max", EssentialSubstitute::MaxValue)],
        SubstituteArg::MaxPlusOne => vec![("max_plus_one", EssentialSubstitute::MaxValuePlusOne)],
        SubstituteArg::Both => vec![
            ("max", EssentialSubstitute::MaxValue),
            ("max_plus_one", EssentialSubstitute::MaxValuePlusOne),
        ],
    };
    let mut warnings = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let k = clique_complex(g, &degree_filtration(g), a.max_dim)?;
        warnings.extend(complexity_warning(&format!("graph {i}"), &k, a.simplex_cap));
    }
    let mut report = csv::Writer::from_writer(Vec::new());
    report.write_record(["substitute", "graphs", "pairs", "indistinguishable", "error_rate"])?;
    let mut features_csv = String::new();
    for (name, sub) in &conventions {
        let features = par_map(&graphs, threads, |g| Ok(total_persistence_features(g, a.max_dim, *sub)?))?;
        let d = count_indistinguishable(&features, a.tolerance);
        report.serialize((name, graphs.len(), d.pairs, d.indistinguishable, format!("{:.4}", d.error_rate())))?;
        for (i, f) in features.iter().enumerate() {
            features_csv += &format!("{name},{i},{}\n", f.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        }
    }
    if let Some(path) = &a.features_out {
        let header = format!(
            "substitute,graph,{}\n",
            (0..=a.max_dim).map(|d| format!("tp{d}")).collect::<Vec<_>>().join(",")
        );
        write_side_file(path, &(meta.comment_block() + &header + &features_csv))?;
    }
    let data = into_string(report)?;
    let text = match a.plot {
        Some(PlotKind::GnuplotScript) => gnuplot_script(
            &meta,
            &data,
            "set style data histograms\nset style fill solid\nset ylabel 'indistinguishable pairs'\n\
             plot $data using 4:xtic(1) title 'indistinguishable'\n",
        ),
        None => meta.comment_block() + &data,
    };
    Ok(Output { text, warnings })
}

pub fn cmd_gen(a: &GenArgs) -> Result<Output> {
    let dataset = match a.dataset {
        DatasetArg::Cycles => Dataset::Cycles,
        DatasetArg::Necklaces => Dataset::Necklaces,
    };
    let (lo, hi) = dataset.default_range();
    let range = (a.min_size.unwrap_or(lo), a.max_size.unwrap_or(hi));
    let threads = resolve_threads(a.threads)?;
    let meta = Metadata::new("gen", Some(a.seed))
        .with("dataset", dataset.name())
        .with("count", a.count)
        .with("range", format!("{}..={}", range.0, range.1))
        .with("layout", format!("{:?}", a.layout).to_lowercase())
        .with("out", a.out.display());
    if !a.count.is_multiple_of(2) {
        return Err(invalid(format!("--count must be even for balanced classes, got {}", a.count)));
    }
    let indices: Vec<usize> = (0..a.count).collect();
    let samples = par_map(&indices, threads, |&i| Ok(gen_sample(dataset, a.seed, i, range)?))?;
    let layout = match a.layout {
        LayoutArg::Dir => DatasetLayout::Directory,
        LayoutArg::Jsonl => DatasetLayout::JsonLines,
    };
    write_dataset(&samples, &a.out, layout)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "label", "n", "m", "b0", "b1"])?;
    for s in &samples {
        let b = betti_graph(&s.graph);
        w.serialize((s.index, s.label, s.graph.n_vertices(), s.graph.n_edges(), b.b0, b.b1))?;
    }
    Ok(Output { text: meta.comment_block() + &into_string(w)?, warnings: vec![] })
}

pub fn cmd_gradcheck(a: &GradcheckArgs) -> Result<Output> {
    let mut meta = filtration_meta(Metadata::new("gradcheck", Some(a.seed)), &a.filtration).with("h", a.h);
    let g = read_graph(&mut meta, &a.input, a.input_format)?;
    let mut fs = filtrations(&mut meta, &g, &a.filtration)?;
    if fs.len() != 1 {
        return Err(invalid(format!("gradcheck needs a single filtration, got {}", fs.len())));
    }
    let f = fs.remove(0);
    let spec = match &a.embedder {
        Some(path) => {
            meta = meta.with("embedder", path.display());
            let j: EmbedderJson = serde_json::from_slice(&read_input(&mut meta, path)?)?;
            j.to_spec()?
        }
        None => {
            let kind = EmbedderKind::from_name(&a.kind).ok_or_else(|| {
                invalid(format!(
                    "unknown embedder kind {:?} ({})",
                    a.kind,
                    EmbedderKind::ALL.map(EmbedderKind::name).join(", ")
                ))
            })?;
            meta = meta.with("kind", kind.name());
            let hi = f.max_value().unwrap_or(1.0).max(1.0);
            EmbedderSpec::random(kind, 1, 4, 3, (0.0, hi), a.seed)
        }
    };
    if spec.input_width() != 2 {
        return Err(invalid(format!("embedder expects {} filtrations, gradcheck uses one", spec.input_width() / 2)));
    }
    let err = finite_diff_check(&g, &f, &spec, a.h)?;
    if let Some(path) = &a.routing_out {
        let d = ph_graph(&g, &f)?;
        let r = build_routing(&g, &f, &d, InfinityRouting::ArgMax)?;
        write_side_file(path, &with_meta(&meta, serde_json::to_value(RoutingJson::from(&r))?))?;
    }
    let text = with_meta(&meta, json!({ "max_relative_error": err, "h": a.h, "embedder": spec.kind_name() }));
    Ok(Output { text, warnings: vec![] })
}
