//! Command-line front end: one verb per computable claim, with stable
//! text or JSON output for scripting.
//!
//! Exit codes: 0 on success, 2 for validation/usage errors, 3 for
//! computational failures (non-convergence, size limits).

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::asymptotics::{
    asymptotic_energy_per_vertex, finite_size_energy_table, QuadratureConfig,
};
use crate::enumeration::{
    count_perfect_matchings, count_spanning_trees, dimer_free_energy,
    dimer_free_energy_limit_cubic, dimer_line_graph_check, predict_spanning_trees_iterated,
    tree_entropy_iterated,
};
use crate::error::{Error, Result};
use crate::graph::{iterate_clique_insert, line_graph, subdivision};
use crate::io::{read_edge_list_file, write_edge_list_file};
use crate::kirchhoff::{average_kf_limit, kf_transform, kirchhoff_index, KfTransform, KF_LIMIT_CAVEAT};
use crate::lattice::{
    build_iterated_lattice, hex_torus_closed_form_spectrum, Boundary, LatticeKind, LatticeSpec,
};
use crate::ramanujan::{build_and_verify_x, cayley_graph, chiu_generators, lps_generators};
use crate::spectral::{adjacency_spectrum, gap_iterate, graph_energy, laplacian_spectrum};

/// Outcome of one CLI invocation: a JSON payload with a fixed,
/// versioned schema per subcommand, plus human-oriented diagnostics.
/// The exit code is 0 exactly when `status` is ok.
#[derive(Debug)]
pub struct CommandResult {
    pub status: &'static str,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value, diagnostics: Vec<String>) -> CommandResult {
        CommandResult {
            status: "ok",
            payload,
            diagnostics,
            exit_code: 0,
        }
    }

    fn error(message: String, code: i32) -> CommandResult {
        CommandResult {
            status: "error",
            payload: json!({ "error": message }),
            diagnostics: vec![],
            exit_code: code,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }

    /// Aligned-text rendering of the payload and diagnostics.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_value(&self.payload, "", &mut out);
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

/// 10 significant digits, plain decimal notation.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (9 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn render_value(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                match val {
                    Value::Object(_) => render_value(val, &key, out),
                    Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                        render_table(items, &key, out)
                    }
                    Value::Array(items) => {
                        out.push_str(&format!("{key}:\n"));
                        for item in items {
                            out.push_str(&format!("  {}\n", scalar_text(item)));
                        }
                    }
                    _ => out.push_str(&format!("{key} = {}\n", scalar_text(val))),
                }
            }
        }
        _ => out.push_str(&format!("{}\n", scalar_text(v))),
    }
}

fn render_table(rows: &[Value], key: &str, out: &mut String) {
    let headers: Vec<String> = rows[0]
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let mut cells: Vec<Vec<String>> = vec![headers.clone()];
    for row in rows {
        let obj = row.as_object().unwrap();
        cells.push(
            headers
                .iter()
                .map(|h| obj.get(h).map(scalar_text).unwrap_or_default())
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap())
        .collect();
    out.push_str(&format!("{key}:\n"));
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&format!("  {}\n", line.join("  ")));
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig10(n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Parser)]
#[command(name = "clat", version, about = "Clique-inserted lattice toolkit")]
struct Cli {
    /// Emit the result as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Torus,
    Cylinder,
    Free,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Torus => Boundary::Torus,
            BoundaryArg::Cylinder => Boundary::Cylinder,
            BoundaryArg::Free => Boundary::Free,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    #[value(name = "3-12-12")]
    ThreeTwelveTwelve,
    #[value(name = "3-6-24")]
    ThreeSixTwentyFour,
}

impl From<LatticeArg> for LatticeKind {
    fn from(l: LatticeArg) -> LatticeKind {
        match l {
            LatticeArg::ThreeTwelveTwelve => LatticeKind::ThreeTwelveTwelve,
            LatticeArg::ThreeSixTwentyFour => LatticeKind::ThreeSixTwentyFour,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PredictArg {
    Line,
    Subdivision,
    #[value(name = "clique-insert")]
    CliqueInsert,
}

#[derive(Args)]
struct QuadArgs {
    /// Successive-refinement stopping threshold
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

impl QuadArgs {
    /// Starting grid comes from CLAT_QUAD_GRID (default 512).
    fn config(&self) -> Result<QuadratureConfig> {
        let mut cfg = QuadratureConfig {
            tol: self.tol,
            ..QuadratureConfig::default()
        };
        if let Ok(text) = std::env::var("CLAT_QUAD_GRID") {
            cfg.grid = text.parse().map_err(|_| {
                Error::InvalidParameter(format!("CLAT_QUAD_GRID = {text:?} is not an integer"))
            })?;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a lattice graph and export it as an edge list
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Structural graph transforms
    Transform {
        #[command(subcommand)]
        which: TransformCmd,
    },
    /// Adjacency or Laplacian spectrum of a graph (or the closed-form
    /// hexagonal torus spectrum)
    Spectrum {
        #[arg(short, long, required_unless_present = "closed_form")]
        input: Option<String>,
        /// Laplacian instead of adjacency eigenvalues
        #[arg(long)]
        laplacian: bool,
        /// Closed-form hexagonal torus spectrum (needs --m and --n)
        #[arg(long)]
        closed_form: bool,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Graph energy (sum of absolute adjacency eigenvalues)
    Energy {
        #[arg(short, long)]
        input: String,
    },
    /// Asymptotic energy per vertex of an iterated lattice
    EnergyLimit {
        #[arg(long)]
        lattice: LatticeArg,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Finite-size per-vertex energies from the closed-form sums
    EnergyTable {
        #[arg(long)]
        lattice: LatticeArg,
        /// Comma-separated sizes like 2x2,4x4,100x100
        #[arg(long)]
        sizes: String,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Kirchhoff index (eigenvalue route), optionally with a closed-form
    /// transform prediction
    Kirchhoff {
        #[arg(short, long)]
        input: String,
        #[arg(long)]
        predict: Option<PredictArg>,
    },
    /// Exact average-resistance limits of the iterated lattices
    KfLimit {
        #[arg(long)]
        lattice: Option<LatticeArg>,
    },
    /// Spanning-tree counting and entropy
    Trees {
        #[command(subcommand)]
        which: TreesCmd,
    },
    /// Perfect-matching counts and dimer identities
    Dimers {
        #[command(subcommand)]
        which: DimersCmd,
    },
    /// Spectral-gap tools
    Expander {
        #[command(subcommand)]
        which: ExpanderCmd,
    },
    /// Explicit Ramanujan-family Cayley graphs
    Ramanujan {
        #[command(subcommand)]
        which: RamanujanCmd,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Hexagonal-base lattice (k = 0 hexagonal, 1 three-twelve-twelve,
    /// 2 three-six-twenty-four)
    Hex {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Torus)]
        boundary: BoundaryArg,
        #[arg(short = 'k', long, default_value_t = 0)]
        k: u32,
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum TransformCmd {
    /// Replace every vertex of an r-regular graph by an r-clique
    CliqueInsert {
        #[arg(short, long)]
        input: String,
        #[arg(short = 'k', long, default_value_t = 1)]
        k: u32,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Line graph
    Line {
        #[arg(short, long)]
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Subdivision graph
    Subdivision {
        #[arg(short, long)]
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum TreesCmd {
    /// Exact spanning-tree count (Matrix-Tree)
    Count {
        #[arg(short, long)]
        input: String,
    },
    /// Spanning trees of the k-th clique-insertion, from the input
    /// graph's exact count
    Predict {
        #[arg(short, long)]
        input: String,
        #[arg(short = 'k', long)]
        k: u32,
    },
    /// Entropy of the k-th clique-insertion from a base entropy
    Entropy {
        #[arg(long)]
        z_base: f64,
        #[arg(short, long, default_value_t = 3)]
        r: usize,
        #[arg(short = 'k', long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum DimersCmd {
    /// Exact perfect-matching count
    Count {
        #[arg(short, long)]
        input: String,
    },
    /// Line-graph dimer bound 2^(m-n+1) with the equality test
    Check {
        #[arg(short, long)]
        input: String,
    },
    /// Finite free-energy estimate (2/n) ln M, or the cubic-lattice
    /// limit (1/3) ln 2 with --limit
    FreeEnergy {
        #[arg(short, long, required_unless_present = "limit")]
        input: Option<String>,
        #[arg(long)]
        limit: bool,
    },
}

#[derive(Subcommand)]
enum ExpanderCmd {
    /// Spectral gap mu2 (second-smallest Laplacian eigenvalue)
    Gap {
        #[arg(short, long)]
        input: String,
    },
    /// Iterate the clique-insertion gap map k times
    Iterate {
        #[arg(long)]
        mu2: f64,
        #[arg(short, long)]
        r: usize,
        #[arg(short = 'k', long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum RamanujanCmd {
    /// Build X^{p,q} and export its edge list
    Build {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        q: u64,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Build X^{p,q} and verify connectivity, the Ramanujan bound and
    /// the spectral-gap bounds
    Verify {
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        q: u64,
        #[arg(long, default_value_t = 0.05)]
        gamma: f64,
        #[arg(long)]
        max_order: Option<usize>,
    },
}

/// Parses and executes one command line (the program name must be the
/// first element).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (also used for --help/--version)
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return CommandResult {
                status: if benign { "ok" } else { "error" },
                payload: json!({ "usage": e.to_string() }),
                diagnostics: vec![],
                exit_code: if benign { 0 } else { 2 },
            };
        }
    };
    match execute(cli.command) {
        Ok(result) => result,
        Err(e) => CommandResult::error(e.to_string(), if e.is_computational() { 3 } else { 2 }),
    }
}

fn load(path: &str) -> Result<crate::graph::Graph> {
    read_edge_list_file(path)
}

fn spectrum_payload(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|&v| json!(v)).collect())
}

fn execute(cmd: Command) -> Result<CommandResult> {
    match cmd {
        Command::Gen {
            family:
                GenFamily::Hex {
                    m,
                    n,
                    boundary,
                    k,
                    output,
                },
        } => {
            let spec = LatticeSpec {
                m,
                n,
                boundary: boundary.into(),
                k,
            };
            let build = build_iterated_lattice(&spec)?;
            let mut diagnostics = Vec::new();
            if let Some(path) = output {
                let header = format!(
                    "lattice hexagonal m={m} n={n} boundary={} k={k}",
                    spec.boundary.name()
                );
                write_edge_list_file(&build.graph, &[header], &path)?;
                diagnostics.push(format!("wrote {path}"));
            }
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/gen-hex/1",
                    "m": m,
                    "n": n,
                    "boundary": spec.boundary.name(),
                    "k": k,
                    "vertices": build.graph.vertex_count(),
                    "edges": build.graph.edge_count(),
                    "boundary_a_edges": build.boundary_a.len(),
                    "boundary_b_edges": build.boundary_b.len(),
                }),
                diagnostics,
            ))
        }
        Command::Transform { which } => {
            let (input, output, graph, name) = match which {
                TransformCmd::CliqueInsert { input, k, output } => {
                    let g = load(&input)?;
                    let c = iterate_clique_insert(&g, k)?;
                    (input, output, c, format!("clique-insert^{k}"))
                }
                TransformCmd::Line { input, output } => {
                    let g = load(&input)?;
                    let l = line_graph(&g);
                    (input, output, l, "line".into())
                }
                TransformCmd::Subdivision { input, output } => {
                    let g = load(&input)?;
                    let s = subdivision(&g);
                    (input, output, s, "subdivision".into())
                }
            };
            let mut diagnostics = Vec::new();
            if let Some(path) = &output {
                write_edge_list_file(&graph, &[format!("{name} of {input}")], path)?;
                diagnostics.push(format!("wrote {path}"));
            }
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/transform/1",
                    "transform": name,
                    "vertices": graph.vertex_count(),
                    "edges": graph.edge_count(),
                }),
                diagnostics,
            ))
        }
        Command::Spectrum {
            input,
            laplacian,
            closed_form,
            m,
            n,
        } => {
            let spec = if closed_form {
                let (m, n) = match (m, n) {
                    (Some(m), Some(n)) => (m, n),
                    _ => {
                        return Err(Error::InvalidParameter(
                            "--closed-form needs --m and --n".into(),
                        ))
                    }
                };
                hex_torus_closed_form_spectrum(m, n)?
            } else {
                let g = load(input.as_deref().unwrap())?;
                if laplacian {
                    laplacian_spectrum(&g)?
                } else {
                    adjacency_spectrum(&g)?
                }
            };
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/spectrum/1",
                    "kind": if laplacian { "laplacian" } else { "adjacency" },
                    "n": spec.len(),
                    "values": spectrum_payload(spec.values()),
                }),
                vec![],
            ))
        }
        Command::Energy { input } => {
            let g = load(&input)?;
            let spec = adjacency_spectrum(&g)?;
            let energy = graph_energy(&spec)?;
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/energy/1",
                    "n": g.vertex_count(),
                    "energy": energy,
                    "per_vertex": energy / g.vertex_count() as f64,
                }),
                vec![],
            ))
        }
        Command::EnergyLimit { lattice, quad } => {
            let kind: LatticeKind = lattice.into();
            let cfg = quad.config()?;
            let value = asymptotic_energy_per_vertex(kind, &cfg)?;
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/energy-limit/1",
                    "lattice": kind.name(),
                    "per_vertex": value,
                    "per_cell": value * if kind == LatticeKind::ThreeTwelveTwelve { 6.0 } else { 18.0 },
                }),
                vec![format!(
                    "periodic trapezoid from grid {} doubling up to {} times, tol {}",
                    cfg.grid, cfg.refine_limit, cfg.tol
                )],
            ))
        }
        Command::EnergyTable {
            lattice,
            sizes,
            quad,
        } => {
            let kind: LatticeKind = lattice.into();
            let parsed = parse_sizes(&sizes)?;
            let rows = finite_size_energy_table(kind, &parsed);
            let cfg = quad.config()?;
            let limit = asymptotic_energy_per_vertex(kind, &cfg)?;
            Ok(CommandResult::ok(
                json!({
                    "schema": "clat/energy-table/1",
                    "lattice": kind.name(),
                    "integral": limit,
                    "rows": rows.iter().map(|r| json!({
                        "m": r.m,
                        "n": r.n,
                        "vertices": r.vertices,
                        "per_vertex": r.per_vertex,
                    })).collect::<Vec<_>>(),
                }),
                vec![],
            ))
        }
        Command::Kirchhoff { input, predict } => {
            let g = load(&input)?;
            let report = kirchhoff_index(&g)?;
            let mut payload = json!({
                "schema": "clat/kirchhoff/1",
                "n": report.n,
                "kf": report.kf,
                "average_kf": report.average_kf,
            });
            let mut diagnostics = vec![];
            if let Some(which) = predict {
                let r = g.regular_degree().ok_or_else(|| {
                    Error::InvalidParameter(
                        "transform predictions need a regular input graph".into(),
                    )
                })?;
                let (name, transform) = match which {
                    PredictArg::Line => ("line", KfTransform::Line),
                    PredictArg::Subdivision => ("subdivision", KfTransform::Subdivision),
                    PredictArg::CliqueInsert => ("clique-insert", KfTransform::CliqueInsert),
                };
                let value = kf_transform(report.kf, r, report.n, transform)?;
                payload["predicted"] = json!({ "transform": name, "kf": value });
                if transform == KfTransform::CliqueInsert {
                    diagnostics.push(
                        "the clique-insert closed form is the published composition; it does \
                         not agree with direct computation (see README)"
                            .into(),
                    );
                }
            }
            Ok(CommandResult::ok(payload, diagnostics))
        }
        Command::KfLimit { lattice } => {
            let kinds: Vec<LatticeKind> = match lattice {
                Some(l) => vec![l.into()],
                None => vec![
                    LatticeKind::ThreeTwelveTwelve,
                    LatticeKind::ThreeSixTwentyFour,
                ],
            };
            let limits: Vec<Value> = kinds
                .iter()
                .map(|&k| {
                    let lim = average_kf_limit(k);
                    json!({
                        "lattice": k.name(),
                        "numerator": lim.value.numer().to_string(),
                        "denominator": lim.value.denom().to_string(),
                        "decimal": lim.decimal(10),
                    })
                })
                .collect();
            Ok(CommandResult::ok(
                json!({ "schema": "clat/kf-limit/1", "limits": limits }),
                vec![KF_LIMIT_CAVEAT.into()],
            ))
        }
        Command::Trees { which } => match which {
            TreesCmd::Count { input } => {
                let g = load(&input)?;
                let count = count_spanning_trees(&g);
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/trees-count/1",
                        "n": g.vertex_count(),
                        "count": count.to_string(),
                    }),
                    vec![],
                ))
            }
            TreesCmd::Predict { input, k } => {
                let g = load(&input)?;
                let r = g.regular_degree().ok_or_else(|| {
                    Error::InvalidParameter("the tree formula needs a regular graph".into())
                })?;
                let base = count_spanning_trees(&g);
                let predicted =
                    predict_spanning_trees_iterated(&base, r, g.vertex_count(), k)?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/trees-predict/1",
                        "k": k,
                        "base_count": base.to_string(),
                        "count": predicted.to_string(),
                    }),
                    vec![],
                ))
            }
            TreesCmd::Entropy { z_base, r, k } => Ok(CommandResult::ok(
                json!({
                    "schema": "clat/trees-entropy/1",
                    "z_base": z_base,
                    "r": r,
                    "k": k,
                    "entropy": tree_entropy_iterated(z_base, r, k),
                }),
                vec![],
            )),
        },
        Command::Dimers { which } => match which {
            DimersCmd::Count { input } => {
                let g = load(&input)?;
                let count = count_perfect_matchings(&g)?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/dimers-count/1",
                        "n": g.vertex_count(),
                        "count": count.to_string(),
                    }),
                    vec![],
                ))
            }
            DimersCmd::Check { input } => {
                let g = load(&input)?;
                let report = dimer_line_graph_check(&g)?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/dimers-check/1",
                        "bound": report.bound.to_string(),
                        "count": report.count.to_string(),
                        "equality": report.equality,
                        "max_degree_le_3": report.delta_le_3,
                    }),
                    vec![],
                ))
            }
            DimersCmd::FreeEnergy { input, limit } => {
                if limit {
                    return Ok(CommandResult::ok(
                        json!({
                            "schema": "clat/dimers-free-energy/1",
                            "limit": dimer_free_energy_limit_cubic(),
                        }),
                        vec![],
                    ));
                }
                let g = load(input.as_deref().unwrap())?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/dimers-free-energy/1",
                        "n": g.vertex_count(),
                        "estimate": dimer_free_energy(&g)?,
                        "limit": dimer_free_energy_limit_cubic(),
                    }),
                    vec![],
                ))
            }
        },
        Command::Expander { which } => match which {
            ExpanderCmd::Gap { input } => {
                let g = load(&input)?;
                let spec = laplacian_spectrum(&g)?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/expander-gap/1",
                        "n": g.vertex_count(),
                        "mu2": spec.second_smallest(),
                        "connected": g.is_connected(),
                    }),
                    vec![],
                ))
            }
            ExpanderCmd::Iterate { mu2, r, k } => Ok(CommandResult::ok(
                json!({
                    "schema": "clat/expander-iterate/1",
                    "mu2": mu2,
                    "r": r,
                    "k": k,
                    "value": gap_iterate(mu2, r, k)?,
                }),
                vec![],
            )),
        },
        Command::Ramanujan { which } => match which {
            RamanujanCmd::Build { p, q, output } => {
                let s = if p == 2 {
                    chiu_generators(q)?
                } else {
                    lps_generators(p, q)?
                };
                let graph = cayley_graph(s.kind(), q, &s)?;
                let mut diagnostics = Vec::new();
                if let Some(path) = output {
                    write_edge_list_file(
                        &graph,
                        &[format!("X {p} {q} {}", s.kind().name())],
                        &path,
                    )?;
                    diagnostics.push(format!("wrote {path}"));
                }
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/ramanujan-build/1",
                        "p": p,
                        "q": q,
                        "kind": s.kind().name(),
                        "vertices": graph.vertex_count(),
                        "edges": graph.edge_count(),
                        "degree": s.degree(),
                    }),
                    diagnostics,
                ))
            }
            RamanujanCmd::Verify {
                p,
                q,
                gamma,
                max_order,
            } => {
                let report = build_and_verify_x(p, q, gamma, max_order)?;
                Ok(CommandResult::ok(
                    json!({
                        "schema": "clat/ramanujan-verify/1",
                        "p": p,
                        "q": q,
                        "kind": report.kind.name(),
                        "vertices": report.order,
                        "degree": report.degree,
                        "connected": report.connected,
                        "lambda2": report.lambda2,
                        "ramanujan_bound": report.ramanujan_bound,
                        "is_ramanujan": report.is_ramanujan,
                        "mu2": report.mu2,
                        "gamma": gamma,
                        "eps_bound": report.eps_bound,
                        "eps_after_insert": report.eps_after_insert,
                    }),
                    vec![],
                ))
            }
        },
    }
}

fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|token| {
            let parts: Vec<&str> = token.trim().split('x').collect();
            let bad = || Error::InvalidParameter(format!("bad size token {token:?}, want MxN"));
            if parts.len() != 2 {
                return Err(bad());
            }
            let m = parts[0].parse().map_err(|_| bad())?;
            let n = parts[1].parse().map_err(|_| bad())?;
            Ok((m, n))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig10_formatting() {
        assert_eq!(sig10(1.4824903064), "1.482490306");
        assert_eq!(sig10(0.23611111111), "0.2361111111");
        assert_eq!(sig10(26.834995), "26.83499500");
        assert_eq!(sig10(0.0), "0");
    }

    #[test]
    fn unknown_command_is_usage_error() {
        let r = run(["clat", "no-such-thing"]);
        assert_eq!(r.status, "error");
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn help_is_ok() {
        let r = run(["clat", "--help"]);
        assert_eq!(r.exit_code, 0);
    }

    #[test]
    fn parse_sizes_examples() {
        assert_eq!(parse_sizes("2x2,4x8").unwrap(), vec![(2, 2), (4, 8)]);
        assert!(parse_sizes("2,3").is_err());
    }

    #[test]
    fn entropy_command_payload() {
        let r = run([
            "clat", "trees", "entropy", "--z-base", "0.8076649", "-k", "1",
        ]);
        assert_eq!(r.exit_code, 0, "{:?}", r.payload);
        let v = r.payload["entropy"].as_f64().unwrap();
        assert!((v - 0.7205633).abs() < 1e-7);
    }

    #[test]
    fn kf_limit_has_caveat_diagnostic() {
        let r = run(["clat", "kf-limit"]);
        assert_eq!(r.exit_code, 0);
        assert!(!r.diagnostics.is_empty());
        let text = r.to_text();
        assert!(text.contains("0.2361111111") && text.contains("0.7280092593"));
    }

    #[test]
    fn gap_domain_error_exit_code() {
        let r = run([
            "clat", "expander", "iterate", "--mu2", "99", "-r", "3", "-k", "1",
        ]);
        assert_eq!(r.exit_code, 2);
        assert_eq!(r.status, "error");
    }
}
