use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dynamod_core::curves::{
    check_point, curve_system, fiber_decomposition, pi_degree, pi_degree_via, rational_fiber, EquationSystem,
};
use dynamod_core::dynamics::{pcf_parameters, period_bound, preper_set, realize_bound, PcfKind};
use dynamod_core::dynatomic::{cycle_count, formal_count};
use dynamod_core::graph::{
    aut_order, classify_with_warnings, generator_data_for, is_isomorphic, minimal_generating_set,
    minimal_generating_set_by, normal_closure,
};
use dynamod_core::{fmt_rational, parse_rational, DynatomicCache, Error, MultiPoly, PortraitGraph, Rational};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dynamod", version, about = "Dynatomic polynomials, portrait graphs and dynamical modular curves for x^2 + c")]
struct Cli {
    /// Emit JSON (keys sorted) instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest polynomial degree in x any computation may reach.
    #[arg(long, global = true, default_value_t = 1024)]
    max_degree: u64,

    /// Seed for randomized modes such as `gens --shuffle`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file, one `name -> name` edge per line.
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// The dynatomic polynomial Phi_N(x1, t).
    Dynatomic { n: u32 },
    /// The generalized dynatomic polynomial Phi_{M,N}(x1, t).
    GenDynatomic { m: u32, n: u32 },
    /// Check the factorizations of f^N(x) - x and f^(M+N)(x) - f^M(x).
    VerifyIdentities {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        max_m: u32,
    },
    /// disc_x Phi_{M,N}(x, t) as a polynomial in t.
    BranchPoly { m: u32, n: u32 },
    /// Rational preperiodic points of x^2 + c and their graph.
    Preper {
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Rational c for which 0 is preperiodic, from Phi_{m,n}(0, t).
    PcfScan {
        #[arg(long, default_value_t = 2)]
        max_m: u32,
        #[arg(long, default_value_t = 2)]
        max_n: u32,
    },
    /// Period bounds from good reduction at two primes.
    Bounds {
        /// Degree of pi for the realizability bound.
        #[arg(long)]
        deg: u64,
        #[arg(long, default_value_t = 2)]
        norm_p: u64,
        #[arg(long, default_value_t = 3)]
        norm_q: u64,
    },
    /// Admissibility class of a graph.
    Classify(GraphArg),
    /// Minimal generating set with portraits and attachment data.
    Gens {
        #[command(flatten)]
        graph: GraphArg,
        /// Use these vertices, in order, instead of the canonical choice.
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
        /// Build the generating set from a seeded random vertex order.
        #[arg(long, conflicts_with = "vertices")]
        shuffle: bool,
    },
    /// Order of the automorphism group.
    Auto(GraphArg),
    /// Smallest union of full level structures containing the graph.
    NormalClosure(GraphArg),
    /// Equations and inequations of the curve of an admissible graph.
    Curve(GraphArg),
    /// Degree of the map to the t-line, with its fiber-product blocks.
    PiDegree {
        #[command(flatten)]
        graph: GraphArg,
        /// Recompute along a seeded random generating set.
        #[arg(long)]
        shuffle: bool,
    },
    /// Rational points of the curve over t = C.
    Fiber {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Classify a point (x1, .., xn, t) against a curve.
    CheckPoint {
        /// Graph whose curve is used.
        #[arg(long, required_unless_present = "stdin", conflicts_with = "stdin")]
        graph: Option<PathBuf>,
        /// Read the system from `curve --json` output on stdin.
        #[arg(long)]
        stdin: bool,
        /// x1 .. xn followed by t.
        #[arg(allow_hyphen_values = true, required = true)]
        point: Vec<String>,
    },
    /// Whether two graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output { text: text.into(), json }
}

fn read_graph(path: &Path) -> Result<PortraitGraph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn poly_json(p: &MultiPoly) -> Value {
    json!({"text": p.to_string(), "poly": p})
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::NegativeExponent(_) => "negative_exponent",
        Error::DivisionByZero => "division_by_zero",
        Error::NotDivisible => "not_divisible",
        Error::DegreeCap { .. } => "degree_cap",
        Error::UnboundVariable(_) => "unbound_variable",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Graph(_) => "graph",
        Error::NotAdmissible(_) => "not_admissible",
        Error::NotGenerating(_) => "not_generating",
        Error::SizeLimit { .. } => "size_limit",
        Error::Arity { .. } => "arity",
        Error::Inconsistent(_) => "inconsistent",
    }
}

fn shuffled_order(g: &PortraitGraph, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    order
}

fn run(cli: &Cli, warnings: &mut Vec<String>) -> Result<Output, Error> {
    let cache = DynatomicCache::new(cli.max_degree);
    match &cli.command {
        Command::Dynatomic { n } => {
            let phi = cache.dynatomic(*n)?;
            let mut j = poly_json(&phi);
            j["n"] = json!(n);
            j["degree_x"] = json!(formal_count(*n));
            j["cycles"] = json!(cycle_count(*n));
            Ok(out(phi.to_string(), j))
        }
        Command::GenDynatomic { m, n } => {
            let phi = cache.gen_dynatomic(*m, *n)?;
            let mut j = poly_json(&phi);
            j["m"] = json!(m);
            j["n"] = json!(n);
            Ok(out(phi.to_string(), j))
        }
        Command::BranchPoly { m, n } => {
            let b = cache.branch_poly(*m, *n)?;
            let mut j = poly_json(&b);
            j["m"] = json!(m);
            j["n"] = json!(n);
            Ok(out(b.to_string(), j))
        }
        Command::VerifyIdentities { max_n, max_m } => {
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut failed = Vec::new();
            for n in 1..=*max_n {
                let ok = cache.verify_cycle_factorization(n)?;
                text.push_str(&format!("cycle N={n}: {}\n", if ok { "ok" } else { "FAILED" }));
                rows.push(json!({"kind": "cycle", "n": n, "ok": ok}));
                if !ok {
                    failed.push(format!("cycle N={n}"));
                }
            }
            for m in 1..=*max_m {
                for n in 1..=*max_n {
                    if m + n >= 64 || 1u64 << (m + n) > cache.max_degree() {
                        text.push_str(&format!("preperiodic M={m} N={n}: skipped (degree cap)\n"));
                        rows.push(json!({"kind": "preperiodic", "m": m, "n": n, "ok": null}));
                        continue;
                    }
                    let ok = cache.verify_preper_factorization(m, n)?;
                    text.push_str(&format!("preperiodic M={m} N={n}: {}\n", if ok { "ok" } else { "FAILED" }));
                    rows.push(json!({"kind": "preperiodic", "m": m, "n": n, "ok": ok}));
                    if !ok {
                        failed.push(format!("preperiodic M={m} N={n}"));
                    }
                }
            }
            if !failed.is_empty() {
                if !cli.json {
                    let _ = write!(std::io::stdout().lock(), "{text}");
                }
                return Err(Error::Inconsistent(format!("identities failed: {}", failed.join(", "))));
            }
            Ok(out(text.trim_end(), json!({"checks": rows})))
        }
        Command::Preper { c } => {
            let set = preper_set(&rational(c)?)?;
            let mut text = String::new();
            for p in &set.points {
                let orbit: Vec<String> = p.orbit.iter().map(fmt_rational).collect();
                text.push_str(&format!("{:>10}  {}  {}\n", fmt_rational(&p.point), p.portrait, orbit.join(" -> ")));
            }
            text.push_str("graph:\n");
            text.push_str(&set.graph.to_dsl());
            Ok(out(text.trim_end(), set.to_json_value()))
        }
        Command::PcfScan { max_m, max_n } => {
            let found = pcf_parameters(&cache, *max_m, *max_n)?;
            let kind = |k: PcfKind| match k {
                PcfKind::Gleason => "Gleason",
                PcfKind::Misiurewicz => "Misiurewicz",
            };
            let text: Vec<String> =
                found.iter().map(|p| format!("{}  {}  {}", fmt_rational(&p.c), kind(p.kind), p.portrait)).collect();
            let rows: Vec<Value> = found
                .iter()
                .map(|p| json!({"c": fmt_rational(&p.c), "kind": kind(p.kind), "portrait": p.portrait}))
                .collect();
            Ok(out(text.join("\n"), Value::Array(rows)))
        }
        Command::Bounds { deg, norm_p, norm_q } => {
            let b = realize_bound(*deg)?;
            let pb = period_bound(*norm_p, *norm_q)?;
            if pb.same_characteristic {
                warnings.push(format!("norms {norm_p} and {norm_q} share a residue characteristic; the period bound does not apply"));
            }
            let text = format!("B = {b}, period_bound({norm_p},{norm_q}) = {}", pb.value);
            let j = json!({
                "deg": deg,
                "realize_bound": b.to_string(),
                "period_bound": pb.value.to_string(),
                "same_characteristic": pb.same_characteristic,
            });
            Ok(out(text, j))
        }
        Command::Classify(a) => {
            let g = read_graph(&a.graph)?;
            let (class, warns) = classify_with_warnings(&g);
            warnings.extend(warns.iter().cloned());
            let mut j = g.to_json_value();
            j["warnings"] = json!(warns);
            j["reason"] = serde_json::to_value(&class).unwrap_or(Value::Null);
            Ok(out(class.to_string(), j))
        }
        Command::Gens { graph, vertices, shuffle } => {
            let g = read_graph(&graph.graph)?;
            let gens = match vertices {
                Some(names) => {
                    let list = names
                        .iter()
                        .map(|n| g.vertex(n).ok_or_else(|| Error::Graph(format!("no vertex {n}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    generator_data_for(&g, &list)?
                }
                None if *shuffle => minimal_generating_set_by(&g, &shuffled_order(&g, cli.seed))?,
                None => minimal_generating_set(&g)?,
            };
            Ok(out(gens.describe(&g).trim_end(), gens.to_json_value(&g)))
        }
        Command::Auto(a) => {
            let g = read_graph(&a.graph)?;
            let n = aut_order(&g)?;
            Ok(out(n.to_string(), json!({"aut_order": n.to_string()})))
        }
        Command::NormalClosure(a) => {
            let g = read_graph(&a.graph)?;
            let h = normal_closure(&g)?;
            Ok(out(h.to_dsl().trim_end(), h.to_json_value()))
        }
        Command::Curve(a) => {
            let g = read_graph(&a.graph)?;
            let sys = curve_system(&cache, &g)?;
            Ok(out(sys.to_text().trim_end(), sys.to_json_value()))
        }
        Command::PiDegree { graph, shuffle } => {
            let g = read_graph(&graph.graph)?;
            let d = if *shuffle {
                pi_degree_via(&g, &minimal_generating_set_by(&g, &shuffled_order(&g, cli.seed))?)?
            } else {
                pi_degree(&g)?
            };
            let dec = fiber_decomposition(&g)?;
            let mut blocks = Vec::new();
            let mut text = format!("{d}");
            for (n, block) in &dec.blocks {
                let bd = pi_degree(block)?;
                text.push_str(&format!("\n  block N={n}: {} vertices, degree {bd}", block.len()));
                blocks.push(json!({"cycle_length": n, "vertices": block.len(), "pi_degree": bd.to_string()}));
            }
            let j = json!({"pi_degree": d.to_string(), "blocks": blocks, "applicable": dec.applicable});
            Ok(out(text, j))
        }
        Command::Fiber { graph, c } => {
            let g = read_graph(&graph.graph)?;
            let pts = rational_fiber(&cache, &g, &rational(c)?)?;
            let rows: Vec<Vec<String>> = pts.iter().map(|t| t.iter().map(fmt_rational).collect()).collect();
            let text: Vec<String> = rows.iter().map(|r| format!("({})", r.join(", "))).collect();
            Ok(out(text.join("\n"), json!(rows)))
        }
        Command::CheckPoint { graph, stdin, point } => {
            let system = if *stdin {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
                EquationSystem::from_json(&s)?
            } else {
                let path = graph.as_ref().expect("clap requires --graph without --stdin");
                curve_system(&cache, &read_graph(path)?)?.system
            };
            let values = point.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>()?;
            let check = check_point(&system, &values)?;
            let j = serde_json::to_value(&check).unwrap_or(Value::Null);
            let mut text = check.status.to_string();
            for k in &check.nonzero_equations {
                text.push_str(&format!("\n  Psi_{k} != 0"));
            }
            for tag in &check.vanishing_inequations {
                text.push_str(&format!("\n  vanishes: {tag}"));
            }
            Ok(out(text, j))
        }
        Command::Iso { first, second } => {
            let iso = is_isomorphic(&read_graph(first)?, &read_graph(second)?);
            Ok(out(if iso { "isomorphic" } else { "not isomorphic" }, json!({"isomorphic": iso})))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut warnings = Vec::new();
    let result = run(&cli, &mut warnings);
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    match result {
        Ok(o) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&o.json).expect("JSON values serialize")
            } else {
                o.text
            };
            if !body.is_empty() {
                // a closed pipe downstream is not an error
                let _ = writeln!(std::io::stdout().lock(), "{body}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                let j = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
                eprintln!("{}", serde_json::to_string_pretty(&j).expect("JSON values serialize"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
