//! `steiner`: generate graphs, compute Steiner distances and k-diameters,
//! evaluate product bounds and run the verification harness.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a report
//! contains a FAIL verdict.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use steiner_core::bounds::{
    cartesian_sdiam_bounds, cartesian_terms, drop3_parameter, lex_distance_closed_form, lex_sdiam_bounds,
    sdiam3_lex_closed_form,
};
use steiner_core::families::FamilySpec;
use steiner_core::sdiam::{Sweep, SweepContext};
use steiner_core::steiner::steiner_distance_with;
use steiner_core::verify::{self, BoundReport, CorpusSpec, TableRow};
use steiner_core::{Distance, Executor, Graph, ProductVertex, SolverConfig, VertexMultiset};

#[derive(Parser)]
#[command(name = "steiner", version, about = "Steiner distances and Steiner k-diameters of graphs and graph products")]
struct Cli {
    /// Worker threads for sweeps and verification (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph as JSON.
    Gen {
        family: String,
        params: Vec<usize>,
    },
    /// Shortest-path distance between two vertices, or the full matrix.
    Dist {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'u', long = "from", requires = "to")]
        from: Option<usize>,
        #[arg(short = 'v', long = "to", requires = "from")]
        to: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Steiner distance of a terminal multiset and a minimum Steiner tree.
    Steiner {
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated vertex ids, or `g:h` pairs together with --h-order.
        #[arg(short = 'S', long = "set")]
        set: String,
        /// Order of the second factor, for `g:h` terminals on a product graph.
        #[arg(long)]
        h_order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Steiner k-diameter with a witness set and tree.
    Sdiam {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short = 'k')]
        k: usize,
        /// Also report every k-eccentricity and the k-radius.
        #[arg(long)]
        profile: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed forms and bounds for a product of two factor graphs.
    Bounds {
        #[arg(value_enum)]
        product: ProductArg,
        #[arg(short = 'G', long = "g-file")]
        g: String,
        #[arg(short = 'H', long = "h-file")]
        h: String,
        /// Terminal set as comma-separated `g:h` pairs.
        #[arg(short = 'S', long = "set", conflicts_with = "k", required_unless_present = "k")]
        set: Option<String>,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check closed forms and bounds against exact computation.
    Verify {
        /// Result id such as `Cor2.2`, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Print zero for elapsed times, making output byte-stable.
        #[arg(long)]
        no_timing: bool,
        /// List the known result ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Predicted and computed Steiner k-diameters of a named family.
    Table {
        #[arg(long)]
        family: String,
        /// Family parameters, comma-separated.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph JSON file; `-` reads standard input.
    #[arg(short = 'g', long = "graph", default_value = "-")]
    graph: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum ProductArg {
    Cartesian,
    Lex,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(u8::from(usage));
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = SolverConfig::from_env();
    let ctx = SweepContext::new(config.clone(), Executor::with_jobs(cli.jobs));
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Gen { family, params } => {
            let g = FamilySpec::parse(&family, &params)?.generate()?;
            writeln!(out, "{}", g.to_json())?;
        }
        Command::Dist { input, from, to, format } => {
            let g = read_graph(&input.graph)?;
            match (from, to) {
                (Some(u), Some(v)) => {
                    let d = g.distance(u, v)?;
                    match format {
                        Format::Json => writeln!(out, "{}", serde_json::to_string(&d)?)?,
                        Format::Csv => writeln!(out, "from,to,distance\n{u},{v},{d}")?,
                        Format::Text => writeln!(out, "{d}")?,
                    }
                }
                _ => {
                    let m = g.distance_matrix();
                    let rows: Vec<Vec<Distance>> =
                        (0..g.order()).map(|u| (0..g.order()).map(|v| m.get(u, v)).collect()).collect();
                    match format {
                        Format::Json => writeln!(out, "{}", serde_json::to_string(&rows)?)?,
                        Format::Csv | Format::Text => {
                            for row in rows {
                                writeln!(out, "{}", join(row.iter(), ","))?;
                            }
                        }
                    }
                }
            }
        }
        Command::Steiner { input, set, h_order, format } => {
            let g = read_graph(&input.graph)?;
            let terminals = parse_terminals(&set, h_order)?;
            let s = VertexMultiset::new(terminals)?;
            let r = steiner_distance_with(&g, &s, &config)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
                Format::Csv => writeln!(out, "distance,tree\n{},{}", r.distance, edges(&r.tree_edges))?,
                Format::Text => {
                    writeln!(out, "{}", r.distance)?;
                    writeln!(out, "tree: {}", edges(&r.tree_edges))?;
                }
            }
        }
        Command::Sdiam { input, k, profile, format } => {
            let g = read_graph(&input.graph)?;
            let sweep = Sweep::new(&g, &ctx)?;
            let r = sweep.diameter(k)?;
            let prof = if profile { Some(sweep.profile(k)?) } else { None };
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a, A, B> {
                        #[serde(flatten)]
                        diameter: &'a A,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        profile: Option<&'a B>,
                    }
                    let o = Out { diameter: &r, profile: prof.as_ref() };
                    writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?
                }
                Format::Csv => {
                    writeln!(out, "k,value,witness_set,witness_tree")?;
                    writeln!(out, "{},{},{},{}", r.k, r.value, join(r.witness_set.iter(), " "), edges(&r.witness_tree))?;
                }
                Format::Text => {
                    writeln!(out, "{}", r.value)?;
                    writeln!(out, "witness: {}", join(r.witness_set.iter(), " "))?;
                    writeln!(out, "tree: {}", edges(&r.witness_tree))?;
                    if let Some(p) = &prof {
                        writeln!(out, "radius: {} (center {})", p.radius, p.center)?;
                        writeln!(out, "eccentricities: {}", join(p.eccentricities.iter(), " "))?;
                    }
                }
            }
        }
        Command::Bounds { product, g, h, set, k, format } => {
            let (g, h) = (read_graph(&g)?, read_graph(&h)?);
            let value = match (product, set, k) {
                (ProductArg::Cartesian, Some(set), _) => {
                    let s = parse_pairs(&set)?;
                    let terms = cartesian_terms(&g, &h, &s)?;
                    serde_json::json!({
                        "lower": terms.lower(),
                        "upper": terms.upper(),
                        "coarse_upper": terms.coarse_upper(),
                        "d_g": terms.d_g,
                        "d_h": terms.d_h,
                        "r": terms.r,
                        "t": terms.t,
                    })
                }
                (ProductArg::Cartesian, None, Some(k)) => serde_json::to_value(cartesian_sdiam_bounds(&g, &h, k, &ctx)?)?,
                (ProductArg::Lex, Some(set), _) => {
                    let s = parse_pairs(&set)?;
                    let closed = lex_distance_closed_form(&g, &h, &s)?;
                    let gs = VertexMultiset::new(s.iter().map(|v| v.g).collect())?;
                    let mut v = serde_json::to_value(closed)?;
                    if let (Some(obj), Ok(r)) = (v.as_object_mut(), drop3_parameter(&gs)) {
                        obj.insert("drop3_g".into(), r.value.into());
                    }
                    v
                }
                (ProductArg::Lex, None, Some(k)) => {
                    let mut v = serde_json::to_value(lex_sdiam_bounds(&g, &h, k, &ctx)?)?;
                    if k == 3 {
                        if let (Some(obj), Ok(s3)) = (v.as_object_mut(), sdiam3_lex_closed_form(&g, &h, &ctx)) {
                            obj.insert("sdiam3".into(), serde_json::to_value(s3)?);
                        }
                    }
                    v
                }
                (_, None, None) => bail!("one of -S or -k is required"),
            };
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
                Format::Csv | Format::Text => {
                    let flat = flatten(&value);
                    let sep = if format == Format::Csv { "," } else { "=" };
                    if format == Format::Csv {
                        writeln!(out, "{}", join(flat.iter().map(|(k, _)| k), ","))?;
                        writeln!(out, "{}", join(flat.iter().map(|(_, v)| v), ","))?;
                    } else {
                        for (k, v) in flat {
                            writeln!(out, "{k}{sep}{v}")?;
                        }
                    }
                }
            }
        }
        Command::Verify { theorem, seed, format, no_timing, list } => {
            if list {
                for t in verify::THEOREMS {
                    writeln!(out, "{}\t{}", t.id, t.summary)?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut corpus = CorpusSpec::with_seed(seed);
            let capped = corpus.solver_config().capped_by_env();
            corpus.dp_width_limit = capped.dp_width_limit;
            corpus.oracle_free_limit = capped.oracle_free_limit;
            corpus.max_subsets = capped.max_subsets;
            let mut reports = if theorem.eq_ignore_ascii_case("all") {
                verify::verify_all(&corpus, &ctx.executor)?
            } else {
                verify::verify_theorem(&theorem, &corpus, &ctx.executor)?
            };
            if no_timing {
                verify::strip_timing(&mut reports);
            }
            write!(out, "{}", render_reports(&reports, format)?)?;
            if reports.iter().any(|r| r.verdict.is_fail()) {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Table { family, params, kmin, kmax, format, no_timing } => {
            let spec = FamilySpec::parse(&family, &params)?;
            if kmin > kmax {
                bail!("--kmin {kmin} is larger than --kmax {kmax}");
            }
            let mut rows = verify::closed_form_table(&spec, kmin..=kmax, &ctx)?;
            if no_timing {
                rows.iter_mut().for_each(|r| r.elapsed = Default::default());
            }
            write!(out, "{}", render_table(&rows, format)?)?;
            if rows.iter().any(|r| r.verdict.is_fail()) {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_graph(path: &str) -> Result<Graph> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading graph from stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    Graph::from_json(&text).with_context(|| format!("parsing graph from {}", if path == "-" { "stdin" } else { path }))
}

fn parse_pair(item: &str) -> Result<ProductVertex> {
    let (g, h) = item.split_once(':').with_context(|| format!("expected `g:h`, got `{item}`"))?;
    let g = g.trim().parse().with_context(|| format!("bad coordinate in `{item}`"))?;
    let h = h.trim().parse().with_context(|| format!("bad coordinate in `{item}`"))?;
    Ok(ProductVertex::new(g, h))
}

fn parse_pairs(list: &str) -> Result<Vec<ProductVertex>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(parse_pair).collect()
}

/// Vertex ids, with `g:h` pairs encoded row-major against `h_order`.
fn parse_terminals(list: &str, h_order: Option<usize>) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.contains(':') {
            let Some(m) = h_order else {
                bail!("`g:h` terminals need --h-order");
            };
            let v = parse_pair(item)?;
            if v.h >= m {
                bail!("coordinate {} in `{item}` is out of range for --h-order {m}", v.h);
            }
            ids.push(v.encode(m));
        } else {
            ids.push(item.parse().with_context(|| format!("bad vertex id `{item}`"))?);
        }
    }
    Ok(ids)
}

fn join<T: ToString>(items: impl Iterator<Item = T>, sep: &str) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn edges(e: &[(usize, usize)]) -> String {
    join(e.iter().map(|(u, v)| format!("{u}-{v}")), " ")
}

/// Dotted keys and scalar values of a JSON object, in key order.
fn flatten(v: &serde_json::Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            serde_json::Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

fn render_reports(reports: &[BoundReport], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => verify::reports_to_json(reports)? + "\n",
        Format::Csv | Format::Text => verify::reports_to_csv(reports)?,
    })
}

fn render_table(rows: &[TableRow], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => verify::table_to_json(rows)? + "\n",
        Format::Csv | Format::Text => verify::table_to_csv(rows)?,
    })
}
