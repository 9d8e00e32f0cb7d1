use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hlp_core::bruhatgraph::{bruhat_graph, parabolic_graph, product_graph, LabeledGraph};
use hlp_core::exactalg::PitConfig;
use hlp_core::lefschetz::{
    assemble_main_theorem, finite_scan, full_flag_hlp, parabolic_bad_primes, parse_ordering, stembridge_rho,
    stembridge_symbolic, table1, BadPrimes, HlReport, HlpOptions, Mode,
};
use hlp_core::modularsl2::{monomial_ci_hlp, sl2_structure_check};
use hlp_core::rootdata::{format_coroot, parse_type, Family, NodeSet, RootSystem};
use hlp_core::weyl::{Weyl, DEFAULT_CAP};

mod error;

use error::CliError;

#[derive(Parser)]
#[command(name = "hlp", version, about = "Hard Lefschetz checks for flag varieties in positive characteristic")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized identity tests and witness search.
    #[arg(long, global = true, default_value_t = PitConfig::default().seed)]
    seed: u64,

    /// Determinant strategy: auto, symbolic or pit.
    #[arg(long, global = true, default_value = "auto")]
    mode: Mode,

    /// Largest group or coset set that may be enumerated.
    #[arg(long, global = true, env = "HLP_CAP", default_value_t = DEFAULT_CAP)]
    cap: u128,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Args)]
struct TypeArgs {
    /// Cartan type, either `B` together with `--rank 3` or `B3`.
    #[arg(long = "type")]
    kind: String,

    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Existence of a Lefschetz weight in small characteristic for six types.
    Table1,
    /// Primes dividing the Lefschetz determinants of a fundamental weight on G/P.
    ParabolicPrimes {
        /// Cartan type; omit to run B, C and D at `--rank`.
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// 1-based node of the fundamental weight.
        #[arg(long, default_value_t = 1)]
        node: usize,
    },
    /// Decide the hard Lefschetz property on G/B over characteristic p.
    CheckHlp {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        prime: u32,
        /// 1-based removal order; switches to the degeneration route.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Degeneration to maximal parabolic factors, for p above the number of positive roots.
    MainTheorem {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Top coefficient of lambda^d against its product formula.
    Stembridge {
        #[command(flatten)]
        ty: TypeArgs,
    },
    /// Export a Bruhat graph.
    ExportGraph {
        #[command(flatten)]
        ty: TypeArgs,
        /// 1-based nodes of the parabolic subsystem I.
        #[arg(long, conflicts_with = "degenerate")]
        parabolic: Option<String>,
        /// 1-based removal order; exports the fully degenerate graph.
        #[arg(long)]
        degenerate: Option<String>,
    },
    /// Evaluate every weight over F_p.
    FiniteScan {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        prime: u32,
    },
    /// Monomial complete intersection K[w_1..w_n]/(w_i^{d_i}).
    Monomial {
        /// Comma-separated degrees d_i.
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        prime: u32,
        /// Comma-separated coefficients x_i of the weight (default all 1).
        #[arg(long)]
        coefficients: Option<String>,
    },
}

fn root_system(ty: &TypeArgs) -> Result<RootSystem, CliError> {
    let (family, rank) = match ty.rank {
        Some(r) => (ty.kind.parse::<Family>()?, r),
        None => parse_type(&ty.kind)?,
    };
    Ok(RootSystem::build(family, rank)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} {t:?}"))))
        .collect()
}

struct Output {
    format: Format,
    seed: u64,
    command: &'static str,
}

impl Output {
    fn json<T: Serialize>(&self, result: &T) -> Result<String, CliError> {
        let doc = json!({ "command": self.command, "seed": self.seed, "result": result });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    fn text_header(&self) -> String {
        format!("# hlp {} (seed {:#x})\n", self.command, self.seed)
    }

    fn unsupported(&self) -> CliError {
        let name = match self.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
            Format::Text => "text",
        };
        CliError::Usage(format!("format {name} is not available for {}", self.command))
    }
}

fn csv_records(reports: &[&HlReport], seed: u64) -> String {
    let mut s = String::from("subject,characteristic,k,size,method,status,verdict,seed\n");
    for r in reports {
        for d in &r.records {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{seed}",
                r.subject,
                r.characteristic,
                d.k,
                d.size,
                format!("{:?}", d.method).to_lowercase(),
                format!("{:?}", d.status).to_lowercase(),
                r.verdict
            );
        }
    }
    s
}

fn report_output(out: &Output, r: &HlReport) -> Result<String, CliError> {
    match out.format {
        Format::Json => out.json(r),
        Format::Text => Ok(out.text_header() + &r.to_string()),
        Format::Csv => Ok(csv_records(&[r], out.seed)),
        Format::Dot => Err(out.unsupported()),
    }
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    title: &'a str,
    rank: usize,
    vertices: Vec<VertexDoc<'a>>,
    edges: Vec<EdgeDoc<'a>>,
}

#[derive(Serialize)]
struct VertexDoc<'a> {
    name: &'a str,
    length: usize,
}

#[derive(Serialize)]
struct EdgeDoc<'a> {
    source: &'a str,
    target: &'a str,
    label: &'a [i32],
}

fn graph_doc<'a>(g: &'a LabeledGraph, title: &'a str) -> GraphDoc<'a> {
    GraphDoc {
        title,
        rank: g.rank(),
        vertices: (0..g.num_vertices()).map(|v| VertexDoc { name: g.name(v), length: g.length(v) }).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                source: g.name(e.source as usize),
                target: g.name(e.target as usize),
                label: &e.label,
            })
            .collect(),
    }
}

fn bad_primes_text(rows: &[BadPrimes]) -> String {
    let mut s = format!("{:<6} {:>4} {:>6} {:>7} {:>4}  primes\n", "type", "node", "|Phi+|", "cosets", "d");
    for b in rows {
        let primes = if b.primes.is_empty() {
            "{}".to_string()
        } else {
            format!("{{{}}}", b.primes.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        };
        let _ = writeln!(
            s,
            "{:<6} {:>4} {:>6} {:>7} {:>4}  {primes}",
            b.subject, b.node, b.positive_roots, b.cosets, b.top_degree
        );
        for d in &b.determinants {
            let _ = writeln!(s, "    k = {:>2} ({}x{}): {}", d.k, d.size, d.size, d.factored);
        }
        if !b.vanishing.is_empty() {
            let _ = writeln!(s, "    vanishing over Z at k = {:?}", b.vanishing);
        }
    }
    s
}

fn run(cli: Cli) -> Result<String, CliError> {
    let g = &cli.global;
    let opts = HlpOptions {
        mode: g.mode,
        pit: PitConfig { seed: g.seed, ..PitConfig::default() },
        cap: g.cap,
        ..HlpOptions::default()
    };
    let out = |command| Output { format: g.format, seed: g.seed, command };
    match &cli.command {
        Command::Table1 => {
            let o = out("table1");
            let rows = table1(&opts)?;
            match o.format {
                Format::Json => o.json(&rows),
                Format::Csv => {
                    let mut s = String::from("type,p,positive_roots,hlp,failing_k,seed\n");
                    for r in &rows {
                        let k = r.report.failing_k.map(|k| k.to_string()).unwrap_or_default();
                        let _ = writeln!(s, "{},{},{},{},{k},{}", r.subject, r.characteristic, r.positive_roots, r.verdict, g.seed);
                    }
                    Ok(s)
                }
                Format::Text => {
                    let mut s = o.text_header();
                    let _ = writeln!(s, "{:<4} {:>3} {:>7}  exists lambda with HLP?", "Phi", "p", "|Phi+|");
                    for r in &rows {
                        let _ = writeln!(s, "{:<4} {:>3} {:>7}  {}", r.subject, r.characteristic, r.positive_roots, r.verdict);
                    }
                    Ok(s)
                }
                Format::Dot => Err(o.unsupported()),
            }
        }
        Command::ParabolicPrimes { kind, rank, node } => {
            let o = out("parabolic-primes");
            let systems: Vec<RootSystem> = match kind {
                Some(k) => vec![root_system(&TypeArgs { kind: k.clone(), rank: *rank })?],
                None => {
                    let n = rank.ok_or_else(|| CliError::Usage("give --type or --rank".into()))?;
                    [Family::B, Family::C, Family::D]
                        .into_iter()
                        .filter(|&f| f != Family::D || n >= 3)
                        .map(|f| RootSystem::build(f, n))
                        .collect::<Result<_, _>>()?
                }
            };
            if *node == 0 {
                return Err(CliError::Usage("nodes are numbered from 1".into()));
            }
            let rows: Vec<BadPrimes> = systems
                .iter()
                .map(|rs| parabolic_bad_primes(rs, node - 1, g.cap))
                .collect::<Result<_, _>>()?;
            match o.format {
                Format::Json => o.json(&rows),
                Format::Csv => {
                    let mut s = String::from("type,node,positive_roots,cosets,top_degree,primes,seed\n");
                    for b in &rows {
                        let primes: Vec<String> = b.primes.iter().map(u64::to_string).collect();
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            b.subject,
                            b.node,
                            b.positive_roots,
                            b.cosets,
                            b.top_degree,
                            primes.join(";"),
                            g.seed
                        );
                    }
                    Ok(s)
                }
                Format::Text => Ok(o.text_header() + &bad_primes_text(&rows)),
                Format::Dot => Err(o.unsupported()),
            }
        }
        Command::CheckHlp { ty, prime, ordering } => {
            let rs = root_system(ty)?;
            match ordering {
                None => report_output(&out("check-hlp"), &full_flag_hlp(&rs, *prime, &opts)?),
                Some(o) => {
                    let ord = parse_ordering(o, rs.rank())?;
                    let r = assemble_main_theorem(&rs, *prime, Some(&ord), &opts)?;
                    report_output(&out("check-hlp"), &r.report)
                }
            }
        }
        Command::MainTheorem { ty, prime, ordering } => {
            let o = out("main-theorem");
            let rs = root_system(ty)?;
            let ord = ordering.as_deref().map(|s| parse_ordering(s, rs.rank())).transpose()?;
            let r = assemble_main_theorem(&rs, *prime, ord.as_deref(), &opts)?;
            match o.format {
                Format::Json => o.json(&r),
                Format::Csv => Ok(csv_records(&[&r.report], g.seed)),
                Format::Text => {
                    let mut s = o.text_header();
                    let ord: Vec<String> = r.ordering.iter().map(usize::to_string).collect();
                    let _ = writeln!(s, "{} at p = {}, |Phi+| = {}, ordering {}", r.subject, prime, r.positive_roots, ord.join(","));
                    if !r.applicable {
                        let _ = writeln!(s, "p <= |Phi+|: direct determinant check");
                    }
                    for f in &r.factors {
                        let _ = writeln!(
                            s,
                            "factor {} (node {}): {} cosets, d = {}, strings {:?}",
                            f.index, f.node, f.cosets, f.top_degree, f.strings
                        );
                    }
                    if r.applicable {
                        let _ = writeln!(s, "summand tuples: {}", r.summand_tuples.len());
                        let _ = writeln!(s, "summands have the property: {}", r.summands_hlp);
                        let _ = writeln!(s, "consistent with R_k: {}", r.consistent);
                    }
                    s.push_str(&r.report.to_string());
                    Ok(s)
                }
                Format::Dot => Err(o.unsupported()),
            }
        }
        Command::Stembridge { ty } => {
            let o = out("stembridge");
            let rs = root_system(ty)?;
            let weyl = Weyl::new(rs.clone()).with_cap(g.cap);
            let graph = bruhat_graph(&weyl, &weyl.enumerate()?);
            let rho = stembridge_rho(&rs, &graph);
            let symbolic = (g.mode == Mode::Symbolic || (g.mode == Mode::Auto && rs.rank() <= 3))
                .then(|| stembridge_symbolic(&rs, &graph));
            let doc = json!({
                "subject": rs.name(),
                "positive_roots": rs.num_positive(),
                "rho": { "path_sum": rho.lhs.to_string(), "formula": rho.rhs.to_string(), "equal": rho.equal },
                "symbolic": symbolic.as_ref().map(|c| json!({
                    "path_sum": c.lhs.to_string(), "formula": c.rhs.to_string(), "equal": c.equal,
                })),
            });
            match o.format {
                Format::Json => o.json(&doc),
                Format::Csv => {
                    let mut s = String::from("type,weight,path_sum,formula,equal,seed\n");
                    let _ = writeln!(s, "{},rho,{},{},{},{}", rs.name(), rho.lhs, rho.rhs, rho.equal, g.seed);
                    if let Some(c) = &symbolic {
                        let _ = writeln!(s, "{},symbolic,\"{}\",\"{}\",{},{}", rs.name(), c.lhs, c.rhs, c.equal, g.seed);
                    }
                    Ok(s)
                }
                Format::Text => {
                    let mut s = o.text_header();
                    let _ = writeln!(s, "{}: |Phi+| = {}", rs.name(), rs.num_positive());
                    let _ = writeln!(s, "rho: path sum {} formula {} equal {}", rho.lhs, rho.rhs, rho.equal);
                    if let Some(c) = &symbolic {
                        let _ = writeln!(s, "symbolic: equal {}", c.equal);
                        let _ = writeln!(s, "  {}", c.lhs);
                    }
                    Ok(s)
                }
                Format::Dot => Err(o.unsupported()),
            }
        }
        Command::ExportGraph { ty, parabolic, degenerate } => {
            let o = out("export-graph");
            let rs = root_system(ty)?;
            let n = rs.rank();
            let weyl = Weyl::new(rs.clone()).with_cap(g.cap);
            let (title, graph) = match (parabolic, degenerate) {
                (Some(p), _) => {
                    let nodes: Vec<usize> = if p.trim().is_empty() { Vec::new() } else { parse_list(p, "node")? };
                    if nodes.iter().any(|&x| x == 0 || x > n) {
                        return Err(CliError::Usage(format!("nodes must lie in 1..={n}")));
                    }
                    let set = NodeSet::from_nodes(nodes.iter().map(|x| x - 1));
                    (format!("{} parabolic {{{}}}", rs.name(), p.trim()), parabolic_graph(&weyl, set)?.1)
                }
                (None, Some(d)) => {
                    let ord = parse_ordering(d, n)?;
                    let all = weyl.enumerate()?;
                    let chain = weyl.chain(&ord);
                    (format!("{} degenerate {}", rs.name(), d.trim()), product_graph(&weyl, &all, &chain)?)
                }
                (None, None) => (format!("{} Bruhat", rs.name()), bruhat_graph(&weyl, &weyl.enumerate()?)),
            };
            match o.format {
                Format::Dot => Ok(format!("// hlp export-graph, seed {:#x}\n", g.seed) + &graph.to_dot(&title)),
                Format::Json => o.json(&graph_doc(&graph, &title)),
                Format::Csv => {
                    let mut s = String::from("source,target,label,seed\n");
                    for e in graph.edges() {
                        let _ = writeln!(
                            s,
                            "{},{},\"{}\",{}",
                            graph.name(e.source as usize),
                            graph.name(e.target as usize),
                            format_coroot(&e.label),
                            g.seed
                        );
                    }
                    Ok(s)
                }
                Format::Text => {
                    let mut s = o.text_header();
                    let _ = writeln!(s, "{title}: {} vertices, {} edges", graph.num_vertices(), graph.num_edges());
                    for e in graph.edges() {
                        let _ = writeln!(
                            s,
                            "{} -> {} [{}]",
                            graph.name(e.source as usize),
                            graph.name(e.target as usize),
                            format_coroot(&e.label)
                        );
                    }
                    Ok(s)
                }
            }
        }
        Command::FiniteScan { ty, prime } => {
            let o = out("finite-scan");
            let rs = root_system(ty)?;
            let scan = finite_scan(&rs, *prime, &opts)?;
            match o.format {
                Format::Json => o.json(&scan),
                Format::Csv => Ok(format!(
                    "type,p,points,witnesses,extension_field,seed\n{},{},{},{},{},{}\n",
                    scan.subject,
                    scan.characteristic,
                    scan.points,
                    scan.witnesses,
                    scan.extension_witness.as_ref().map(|w| w.field.clone()).unwrap_or_default(),
                    g.seed
                )),
                Format::Text => {
                    let mut s = o.text_header();
                    let field = format!("F_{}^{}", scan.characteristic, rs.rank());
                    let _ = writeln!(s, "{} over F_{}: {} of {} weights have the property", scan.subject, prime, scan.witnesses, scan.points);
                    match &scan.first_witness {
                        Some(w) => {
                            let _ = writeln!(s, "first witness in {field}: {w:?}");
                        }
                        None => {
                            let _ = writeln!(s, "no witness in {field}");
                        }
                    }
                    if let Some(w) = &scan.extension_witness {
                        let _ = writeln!(s, "witness over {}: ({})", w.field, w.coordinates.join(", "));
                    }
                    Ok(s)
                }
                Format::Dot => Err(o.unsupported()),
            }
        }
        Command::Monomial { degrees, prime, coefficients } => {
            let o = out("monomial");
            let degrees: Vec<usize> = parse_list(degrees, "degree")?;
            let x: Vec<i64> = match coefficients {
                Some(c) => parse_list(c, "coefficient")?,
                None => vec![1; degrees.len()],
            };
            if x.len() != degrees.len() {
                return Err(CliError::Usage("one coefficient per degree".into()));
            }
            let report = monomial_ci_hlp(&degrees, *prime, &x)?;
            let below: usize = degrees.iter().map(|d| d.saturating_sub(1)).sum();
            let structure = if *prime != 2 && below < *prime as usize {
                Some(sl2_structure_check(&degrees, *prime, &x)?)
            } else {
                None
            };
            match o.format {
                Format::Json => o.json(&json!({ "report": report, "sl2": structure })),
                Format::Csv => Ok(csv_records(&[&report], g.seed)),
                Format::Text => {
                    let mut s = o.text_header() + &report.to_string();
                    if let Some(st) = &structure {
                        let parts: Vec<String> = st.summands.iter().map(|(m, k)| format!("{k} L({m})")).collect();
                        let _ = writeln!(s, "sl2 relations hold: {}, f matches: {}", st.relations_hold, st.f_matches_factors);
                        let _ = writeln!(s, "decomposition: {}", parts.join(" + "));
                    }
                    Ok(s)
                }
                Format::Dot => Err(o.unsupported()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let target = cli.global.out.clone();
    let result = run(cli).and_then(|text| match &target {
        Some(path) => std::fs::write(path, text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hlp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
