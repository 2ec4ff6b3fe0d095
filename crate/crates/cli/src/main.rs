//! `netph` command line: each subcommand runs one pipeline stage and reads the
//! previous stage's artifact, `run` does all of them at once.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use netph::centrality::Convention;
use netph::complex::{build_filtration, enumerate_cliques, FilteredComplex, Simplex};
use netph::diagram::{bottleneck, diagram_from_pairs, DiagramKind};
use netph::error::{Error, GeneratorError, ParseError, StructureError};
use netph::experiment::{run_model_comparison, ComparisonConfig};
use netph::generators::{degree_matched_families, Family, FamilyName, ModelSpec};
use netph::graph::{load_edge_list, write_edge_list, write_vertex_map, Graph};
use netph::io as art;
use netph::persistence::{barcodes, compute_persistence, PersistencePair};
use netph::pipeline::{PipelineOptions, Scheme};
use netph::svg::{render_barcode_svg, Bar, SvgOptions};
use netph::weighting::{extend_weights, normalize_ebc, normalize_forman, EdgeWeights, DEFAULT_EPSILON};
use netph::{centrality, curvature, MAX_DIM};

#[derive(Parser)]
#[command(name = "netph", version, about = "Persistent homology of unweighted networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it as an edge list.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forman-Ricci curvature of every edge (`u,v,F`).
    Curvature {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge betweenness centrality of every edge (`u,v,ebc`).
    Ebc {
        #[command(flatten)]
        input: GraphInput,
        /// Count unordered vertex pairs (half the default ordered-pair values).
        #[arg(long)]
        halved: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized weights of every simplex of the clique complex.
    Weights {
        #[command(flatten)]
        input: GraphInput,
        /// Edge scores from `curvature` or `ebc`; computed when omitted.
        #[arg(long)]
        scores: Option<PathBuf>,
        #[arg(long, default_value = "forman")]
        scheme: Scheme,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order weighted simplices into a filtration.
    Filtration {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Persistence pairs, barcode and diagrams of a filtration.
    Persist {
        #[arg(long)]
        filtration: PathBuf,
        /// Barcode CSV; stdout when no output is given at all.
        #[arg(long)]
        barcode: Option<PathBuf>,
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long)]
        diagrams: Option<PathBuf>,
    },
    /// Draw a barcode CSV as SVG.
    BarcodeSvg {
        #[arg(long)]
        barcode: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        dims: Vec<usize>,
        /// Only draw bars whose persistence is strictly above this.
        #[arg(long)]
        min_persistence: Option<f64>,
        #[arg(long)]
        title: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bottleneck distance between two diagram files.
    Bottleneck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Homology dimension 0-3, or `total`.
        #[arg(long, default_value = "total")]
        kind: String,
    },
    /// Mean bottleneck distances between the five model families.
    CompareModels {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value = "forman")]
        scheme: Scheme,
        /// Full-precision CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Two-decimal matrix; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Every stage from graph to barcode, writing each artifact.
    Run {
        #[arg(long, conflicts_with = "model")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        vertices: Option<usize>,
        #[command(flatten)]
        generate: OptionalModel,
        #[arg(long, default_value = "forman")]
        scheme: Scheme,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, env = "NETPH_OUT_DIR", default_value = "netph-out")]
        out_dir: PathBuf,
        #[arg(long)]
        no_svg: bool,
        #[arg(long)]
        no_json: bool,
    },
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// er, ws, ba, hyp or sph.
    #[arg(long)]
    model: FamilyArg,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ModelParams,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct OptionalModel {
    #[arg(long)]
    model: Option<FamilyArg>,
    #[arg(long, requires = "model")]
    n: Option<usize>,
    #[command(flatten)]
    params: ModelParams,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct ModelParams {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Clone, Copy)]
struct FamilyArg(FamilyName);

impl std::str::FromStr for FamilyArg {
    type Err = GeneratorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(FamilyArg)
    }
}

#[derive(Args)]
struct GraphInput {
    /// Edge list: `u v` per line, `#`/`%` comments, optional `n=<count>` header.
    #[arg(long)]
    graph: PathBuf,
    /// Also create vertices 0..N that never appear in an edge (isolated vertices).
    #[arg(long)]
    vertices: Option<usize>,
    /// Write the dense-to-original vertex id map here.
    #[arg(long)]
    vertex_map: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        let g = read_graph(&self.graph, self.vertices)?;
        if let Some(p) = &self.vertex_map {
            write_to(Some(p), |w| write_vertex_map(&g, w))?;
        }
        Ok(g)
    }
}

impl ModelParams {
    fn family(&self, name: FamilyName) -> Result<Family, GeneratorError> {
        let need = |what: &str| GeneratorError::InvalidParameter(format!("--{what} is required for this model"));
        Ok(match name {
            FamilyName::Er => Family::Er { p: self.p.ok_or_else(|| need("p"))? },
            FamilyName::Ws => {
                let k = self.k.ok_or_else(|| need("k"))?;
                if k.fract() != 0.0 || k < 0.0 {
                    return Err(GeneratorError::InvalidParameter(format!("WS needs an integer k (got {k})")));
                }
                Family::Ws {
                    k: k as usize,
                    p: self.p.ok_or_else(|| need("p"))?,
                }
            }
            FamilyName::Ba => Family::Ba { m: self.m.ok_or_else(|| need("m"))? },
            FamilyName::Hyp => Family::Hyperbolic {
                k: self.k.ok_or_else(|| need("k"))?,
                gamma: self.gamma.ok_or_else(|| need("gamma"))?,
            },
            FamilyName::Sph => Family::Spherical { k: self.k.ok_or_else(|| need("k"))? },
        })
    }
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, GeneratorError> {
        Ok(ModelSpec::new(self.params.family(self.model.0)?, self.n, self.seed))
    }
}

fn read_graph(path: &Path, vertices: Option<usize>) -> Result<Graph> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    load_edge_list(BufReader::new(f), vertices).with_context(|| format!("reading edge list {}", path.display()))
}

fn open_text(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("opening {}", path.display()))?,
    ))
}

/// Writes to `path`, or stdout when `None`.
fn write_to(path: Option<&PathBuf>, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            f(&mut w).and_then(|_| w.flush()).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).context("writing to stdout")
        }
    }
}

/// Rounds to the value a 12-significant-digit artifact holds, so that later
/// stages run from files reproduce an in-memory run exactly.
fn quantize(x: f64) -> f64 {
    art::fmt_sig(x).parse().expect("formatted float parses")
}

fn forman_scores(g: &Graph) -> Vec<f64> {
    curvature::forman_ricci_all(g).into_iter().map(|f| f as f64).collect()
}

fn ebc_scores(g: &Graph, conv: Convention) -> Vec<f64> {
    centrality::edge_betweenness_all(g, conv).into_iter().map(quantize).collect()
}

fn scores_for(g: &Graph, scheme: Scheme) -> Vec<f64> {
    match scheme {
        Scheme::Forman => forman_scores(g),
        Scheme::Ebc => ebc_scores(g, Convention::OrderedPairs),
    }
}

/// Normalized edge weights, extended to every simplex and quantized.
fn simplex_weights(g: &Graph, scores: &[f64], scheme: Scheme, epsilon: f64) -> Result<(Vec<Simplex>, Vec<f64>)> {
    let normalized = match scheme {
        Scheme::Forman => {
            let ints = scores
                .iter()
                .map(|&s| {
                    if s.fract() == 0.0 {
                        Ok(s as i64)
                    } else {
                        Err(ParseError::Format(format!("Forman curvature {s} is not an integer")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            normalize_forman(&ints, epsilon)
        }
        Scheme::Ebc => normalize_ebc(scores, epsilon),
    }
    .unwrap_or_default();
    let ew = EdgeWeights::for_graph(g, normalized.into_iter().map(quantize).collect());
    let simplices = enumerate_cliques(g, MAX_DIM);
    let weights = extend_weights(&simplices, &ew)?;
    Ok((simplices, weights))
}

fn bars_of(pairs: &[PersistencePair]) -> Vec<Bar> {
    barcodes(pairs)
        .iter()
        .map(|(dim, b)| Bar {
            dim,
            birth: b.birth,
            death: b.death,
            essential: b.essential,
        })
        .collect()
}

fn write_json(path: &PathBuf, value: &serde_json::Value) -> Result<()> {
    write_to(Some(path), |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
}

fn all_diagrams(pairs: &[PersistencePair]) -> serde_json::Value {
    let mut kinds: Vec<DiagramKind> = (0..=MAX_DIM).map(DiagramKind::Dim).collect();
    kinds.push(DiagramKind::Total);
    let ds: Vec<_> = kinds.into_iter().map(|k| diagram_from_pairs(pairs, k)).collect();
    art::diagrams_json(&ds)
}

fn parse_kind(s: &str) -> Result<DiagramKind> {
    if s == "total" {
        return Ok(DiagramKind::Total);
    }
    match s.parse::<usize>() {
        Ok(p) if p <= MAX_DIM => Ok(DiagramKind::Dim(p)),
        _ => Err(ParseError::Format(format!("diagram kind must be 0-{MAX_DIM} or total (got {s:?})")).into()),
    }
}

fn persist_outputs(
    pairs: &[PersistencePair],
    barcode: Option<&PathBuf>,
    pairs_out: Option<&PathBuf>,
    diagrams: Option<&PathBuf>,
) -> Result<()> {
    let bc = barcodes(pairs);
    if barcode.is_some() || (pairs_out.is_none() && diagrams.is_none()) {
        write_to(barcode, |w| art::write_barcode_csv(&bc, w))?;
    }
    if let Some(p) = pairs_out {
        write_json(p, &art::pairs_json(pairs))?;
    }
    if let Some(p) = diagrams {
        write_json(p, &all_diagrams(pairs))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { model, out } => {
            let spec = model.spec()?;
            let g = spec.generate().with_context(|| format!("generating {spec}"))?;
            write_to(out.as_ref(), |w| {
                writeln!(w, "# {spec} seed={}", spec.seed)?;
                write_edge_list(&g, w)
            })
        }
        Command::Curvature { input, out } => {
            let g = input.load()?;
            let f = curvature::forman_ricci_all(&g);
            write_to(out.as_ref(), |w| art::write_curvature_csv(&g, &f, w))
        }
        Command::Ebc { input, halved, out } => {
            let g = input.load()?;
            let conv = if halved {
                Convention::UnorderedPairs
            } else {
                Convention::OrderedPairs
            };
            let b = centrality::edge_betweenness_all(&g, conv);
            write_to(out.as_ref(), |w| art::write_ebc_csv(&g, &b, w))
        }
        Command::Weights {
            input,
            scores,
            scheme,
            epsilon,
            out,
        } => {
            let g = input.load()?;
            let scores = match scores {
                Some(p) => art::read_edge_scores(&g, open_text(&p)?)
                    .with_context(|| format!("reading scores {}", p.display()))?,
                None => scores_for(&g, scheme),
            };
            let (simplices, weights) = simplex_weights(&g, &scores, scheme, epsilon).context("stage weights")?;
            write_to(out.as_ref(), |w| art::write_weights_csv(&simplices, &weights, w))
        }
        Command::Filtration { weights, out } => {
            let (simplices, w) = art::read_weights_csv(open_text(&weights)?)
                .with_context(|| format!("reading weights {}", weights.display()))?;
            let fc = build_filtration(simplices, w).context("stage filtration")?;
            write_to(out.as_ref(), |wr| art::write_filtration_csv(&fc, wr))
        }
        Command::Persist {
            filtration,
            barcode,
            pairs,
            diagrams,
        } => {
            let fc: FilteredComplex = art::read_filtration_csv(open_text(&filtration)?)
                .with_context(|| format!("reading filtration {}", filtration.display()))?;
            let report = netph::validate_complex(&fc);
            if !report.is_ok() {
                return Err(StructureError::InvalidFiltration(report.to_string())).context("stage persist");
            }
            let ps = compute_persistence(&fc).context("stage persist")?;
            persist_outputs(&ps, barcode.as_ref(), pairs.as_ref(), diagrams.as_ref())
        }
        Command::BarcodeSvg {
            barcode,
            dims,
            min_persistence,
            title,
            out,
        } => {
            if let Some(&d) = dims.iter().find(|&&d| d > MAX_DIM) {
                bail!(ParseError::Format(format!("--dims entries must be 0-{MAX_DIM} (got {d})")));
            }
            let records = art::read_barcode_csv(open_text(&barcode)?)
                .with_context(|| format!("reading barcode {}", barcode.display()))?;
            let bars: Vec<Bar> = records
                .iter()
                .map(|r| Bar {
                    dim: r.dim,
                    birth: r.birth,
                    death: r.death,
                    essential: r.essential,
                })
                .collect();
            let svg = render_barcode_svg(
                &bars,
                &SvgOptions {
                    dims,
                    min_persistence,
                    title,
                },
            );
            write_to(out.as_ref(), |w| w.write_all(svg.as_bytes()))
        }
        Command::Bottleneck { a, b, kind } => {
            let kind = parse_kind(&kind)?;
            let load = |p: &PathBuf| -> Result<_> {
                let text = fs::read_to_string(p).with_context(|| format!("opening {}", p.display()))?;
                let mut all = art::parse_diagrams_json(&text).with_context(|| format!("reading diagrams {}", p.display()))?;
                all.remove(&kind)
                    .ok_or_else(|| anyhow!(ParseError::Format(format!("{} has no {kind} diagram", p.display()))))
            };
            let d = bottleneck(&load(&a)?, &load(&b)?);
            println!("{}", art::fmt_sig(d));
            Ok(())
        }
        Command::CompareModels {
            n,
            k,
            samples,
            seed,
            jobs,
            scheme,
            out,
            report,
        } => {
            let cfg = ComparisonConfig {
                families: degree_matched_families(n, k).to_vec(),
                n,
                samples,
                master_seed: seed,
                options: PipelineOptions {
                    scheme,
                    ..Default::default()
                },
                jobs,
            };
            let m = run_model_comparison(&cfg).context("stage compare-models")?;
            if let Some(p) = &out {
                write_to(Some(p), |w| art::write_comparison_csv(&m.rows(), w))?;
            }
            write_to(report.as_ref(), |w| w.write_all(m.report().as_bytes()))
        }
        Command::Run {
            graph,
            vertices,
            generate,
            scheme,
            epsilon,
            out_dir,
            no_svg,
            no_json,
        } => {
            let g = match (graph, generate.model) {
                (Some(p), None) => read_graph(&p, vertices)?,
                (None, Some(name)) => {
                    let n = generate
                        .n
                        .ok_or_else(|| GeneratorError::InvalidParameter("--n is required with --model".into()))?;
                    let spec = ModelSpec::new(generate.params.family(name.0)?, n, generate.seed);
                    spec.generate().with_context(|| format!("stage generate: {spec}"))?
                }
                _ => bail!(ParseError::Format("give exactly one of --graph or --model".into())),
            };
            run_pipeline(&g, scheme, epsilon, &out_dir, !no_svg, !no_json)
        }
    }
}

fn run_pipeline(g: &Graph, scheme: Scheme, epsilon: f64, dir: &Path, svg: bool, json: bool) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let file = |name: &str| dir.join(name);
    write_to(Some(&file("graph.edges")), |w| write_edge_list(g, w))?;
    write_to(Some(&file("vertex_map.csv")), |w| write_vertex_map(g, w))?;

    let scores = scores_for(g, scheme);
    match scheme {
        Scheme::Forman => {
            let f = curvature::forman_ricci_all(g);
            write_to(Some(&file("curvature.csv")), |w| art::write_curvature_csv(g, &f, w))?;
        }
        Scheme::Ebc => write_to(Some(&file("ebc.csv")), |w| art::write_ebc_csv(g, &scores, w))?,
    }

    let (simplices, weights) = simplex_weights(g, &scores, scheme, epsilon).context("stage weights")?;
    write_to(Some(&file("weights.csv")), |w| art::write_weights_csv(&simplices, &weights, w))?;

    let fc = build_filtration(simplices, weights).context("stage filtration")?;
    write_to(Some(&file("filtration.csv")), |w| art::write_filtration_csv(&fc, w))?;

    let pairs = compute_persistence(&fc).context("stage persist")?;
    let barcode = file("barcode.csv");
    let (pairs_out, diagrams) = if json {
        (Some(file("pairs.json")), Some(file("diagrams.json")))
    } else {
        (None, None)
    };
    persist_outputs(&pairs, Some(&barcode), pairs_out.as_ref(), diagrams.as_ref())?;

    if svg {
        let doc = render_barcode_svg(&bars_of(&pairs), &SvgOptions::default());
        write_to(Some(&file("barcode.svg")), |w| w.write_all(doc.as_bytes()))?;
    }
    Ok(())
}

/// 2 parse error, 3 invariant violation, 4 calibration failure, 1 anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Parse(_) => 2,
                Error::Structure(_) => 3,
                Error::Generator(GeneratorError::Calibration(_)) => 4,
                Error::Generator(GeneratorError::InvalidParameter(_)) => 2,
                Error::Io(_) => 1,
            };
        }
        if cause.is::<ParseError>() {
            return 2;
        }
        if cause.is::<StructureError>() {
            return 3;
        }
        if let Some(g) = cause.downcast_ref::<GeneratorError>() {
            return match g {
                GeneratorError::Calibration(_) => 4,
                GeneratorError::InvalidParameter(_) => 2,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
