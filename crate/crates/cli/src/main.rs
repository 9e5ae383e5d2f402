//! `psl`: command-line access to the free-pseudosemilattice decision
//! procedures — reduction, word equality, the natural order, the canonical
//! identity families, variety comparison, finite models and proof replays.
//!
//! Exit codes: 0 for success / a true verdict, 1 for a false verdict,
//! 2 for usage errors, 3 for parse errors.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use psl_core::family::{alpha, beta, word_u, word_v, FamilyIndex};
use psl_core::finmodel::{enumerate, find_witness};
use psl_core::graphs::{from_json, to_dot, to_json, BiTree, Side};
use psl_core::order;
use psl_core::replay::{self, ReplayReport};
use psl_core::rewrite::{reduce_with_trace, theta, words_equal, ReductionTrace};
use psl_core::terms::{parse_term, Term};
use psl_core::varieties::{
    compare, defining_identities, hasse, hasse_to_dot, hasse_to_json, is_sps_identity,
    parse_variety, Verdict,
};
use psl_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser)]
#[command(name = "psl", version, about = "Decision procedures for free pseudosemilattices")]
struct Cli {
    /// Output format for graph- and report-valued results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Append the reduction trace to graph output.
    #[arg(long, global = true)]
    trace: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reject unreduced graph files instead of reducing them with a notice.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rel {
    Leq,
    LeqR,
    LeqL,
    RelR,
    RelL,
    RelD,
    Covers,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a word to its canonical graph.
    Reduce { term: String },
    /// Do two words denote the same element of the free pseudosemilattice?
    Eq { u: String, v: String },
    /// Is u ≈ v an identity of all strict pseudosemilattices?
    Sps { u: String, v: String },
    /// Evaluate an order relation between two graphs (terms or @file.json).
    Order {
        #[arg(long, value_enum)]
        rel: Rel,
        a: String,
        b: String,
    },
    /// Print the invariants (l, r, content, 2-content, side contents) of a word.
    Invariants { term: String },
    /// The canonical identity family: graphs and words.
    Family {
        #[command(subcommand)]
        what: FamilyCmd,
    },
    /// Shorthand for `family word`.
    Word(WordArgs),
    /// Compare two varieties given as n,k,i[,p|d|m].
    Compare { a: String, b: String },
    /// Defining identities of a variety given as n,k,i[,p|d|m].
    Identities { variety: String },
    /// The diamond-chain Hasse diagram between two odd levels.
    Hasse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Count (or list) the pseudosemilattices of a given size.
    Models {
        #[arg(long)]
        size: usize,
        /// Count up to isomorphism instead of raw tables.
        #[arg(long)]
        iso: bool,
        /// Print the multiplication tables.
        #[arg(long)]
        list: bool,
    },
    /// Search for a finite model separating two words.
    Witness {
        u: String,
        v: String,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Re-run the constructive equations of a proof.
    Replay { selector: String },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Render alpha (or beta) of the index.
    Graph {
        n: usize,
        k: usize,
        i: usize,
        #[arg(long)]
        dual: bool,
        /// Render beta instead of alpha.
        #[arg(long)]
        beta: bool,
    },
    /// Print the canonical word of the index.
    Word(WordArgs),
}

#[derive(Debug, clap::Args)]
struct WordArgs {
    /// The alpha-side word u.
    #[arg(short = 'u', conflicts_with = "v")]
    u: bool,
    /// The beta-side word v.
    #[arg(short = 'v')]
    v: bool,
    n: usize,
    k: usize,
    i: usize,
    #[arg(long)]
    dual: bool,
}

/// Failure modes mapped to the exit-code contract.
enum Failure {
    Usage(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Syntax { .. } | Error::Schema(_) => Failure::Parse(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn render_graph_text(g: &BiTree) -> String {
    let mut out = String::new();
    let side = |s: Option<Side>| match s {
        Some(Side::L) => "L",
        Some(Side::R) => "R",
        None => "-",
    };
    let verts: Vec<String> = g
        .vertex_ids()
        .map(|id| format!("{id}={}:{}", side(g.side(id)), g.label(id)))
        .collect();
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    let _ = writeln!(out, "vertices: {}", verts.join(" "));
    let _ = writeln!(out, "edges: {}", edges.join(" "));
    let _ = write!(out, "roots: iota={} tau={}", g.iota(), g.tau());
    out
}

fn render_trace_text(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for s in &trace.steps {
        let kind = match s.kind {
            psl_core::rewrite::StepKind::Fold => "fold",
            psl_core::rewrite::StepKind::ThornDelete => "thorn",
        };
        let _ = writeln!(out, "{kind}: {} absorbs {}", s.survivor, s.removed);
    }
    let _ = write!(out, "steps: {}", trace.steps.len());
    out
}

fn print_graph(g: &BiTree, cli: &Cli, trace: Option<&ReductionTrace>) {
    match cli.format {
        Format::Text => println!("{}", render_graph_text(g)),
        Format::Json => println!("{}", to_json(g)),
        Format::Dot => print!("{}", to_dot(g)),
    }
    if let Some(trace) = trace {
        match cli.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string(trace).expect("trace serialization cannot fail")
            ),
            _ => println!("{}", render_trace_text(trace)),
        }
    }
}

/// A graph argument: a word to reduce, or `@file.json` holding a BiTree.
fn load_graph(arg: &str, strict: bool) -> Result<BiTree, Failure> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let g = from_json(&text)?;
        if g.is_reduced() {
            return Ok(g);
        }
        if strict {
            return Err(Failure::Usage(format!("{path}: graph is not reduced")));
        }
        eprintln!("notice: {path} is not reduced; reducing");
        Ok(psl_core::rewrite::reduce(&g))
    } else {
        Ok(theta(&parse_term(arg)?))
    }
}

fn verdict_exit(b: bool) -> u8 {
    println!("{b}");
    u8::from(!b)
}

fn family_index(n: usize, k: usize, i: usize, dual: bool) -> Result<FamilyIndex, Failure> {
    Ok(FamilyIndex::new(n, k, i, dual)?)
}

fn family_word(args: &WordArgs) -> Result<Term, Failure> {
    let idx = family_index(args.n, args.k, args.i, args.dual)?;
    Ok(if args.v { word_v(&idx) } else { word_u(&idx) })
}

fn print_replay(rep: &ReplayReport, format: Format) -> u8 {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&rep.steps).expect("report serialization cannot fail")
        ),
        _ => {
            for s in &rep.steps {
                let verdict = if s.ok { "pass" } else { "FAIL" };
                println!("{}: {verdict}", s.name);
            }
            let good = rep.steps.iter().filter(|s| s.ok).count();
            println!("{good}/{} steps passed", rep.steps.len());
        }
    }
    u8::from(!rep.ok())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.cmd {
        Cmd::Reduce { term } => {
            let t = parse_term(term)?;
            if cli.trace {
                let (reduced, trace) = reduce_with_trace(&psl_core::graphs::delta(&t));
                print_graph(&reduced, cli, Some(&trace));
            } else {
                print_graph(&theta(&t), cli, None);
            }
            Ok(0)
        }
        Cmd::Eq { u, v } => Ok(verdict_exit(words_equal(&parse_term(u)?, &parse_term(v)?))),
        Cmd::Sps { u, v } => Ok(verdict_exit(is_sps_identity(
            &parse_term(u)?,
            &parse_term(v)?,
        ))),
        Cmd::Order { rel, a, b } => {
            let ga = load_graph(a, cli.strict)?;
            let gb = load_graph(b, cli.strict)?;
            let value = match rel {
                Rel::Leq => order::leq(&ga, &gb)?,
                Rel::LeqR => order::leq_r(&ga, &gb)?,
                Rel::LeqL => order::leq_l(&ga, &gb)?,
                Rel::RelR => order::rel_r(&ga, &gb)?,
                Rel::RelL => order::rel_l(&ga, &gb)?,
                Rel::RelD => order::rel_d(&ga, &gb)?,
                Rel::Covers => match order::covers(&ga, &gb) {
                    Ok(v) => v,
                    Err(Error::NotComparable) => false,
                    Err(e) => return Err(e.into()),
                },
            };
            Ok(verdict_exit(value))
        }
        Cmd::Invariants { term } => {
            let inv = parse_term(term)?.invariants();
            let set = |s: &std::collections::BTreeSet<psl_core::terms::Letter>| {
                let items: Vec<String> = s.iter().map(|l| l.to_string()).collect();
                format!("{{{}}}", items.join(", "))
            };
            let pairs: Vec<String> = inv.c2.iter().map(|(a, b)| format!("({a},{b})")).collect();
            match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "l": inv.l.to_string(),
                        "r": inv.r.to_string(),
                        "c": inv.c.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                        "c2": inv.c2.iter()
                            .map(|(a, b)| vec![a.to_string(), b.to_string()])
                            .collect::<Vec<_>>(),
                        "cl": inv.cl.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                        "cr": inv.cr.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    });
                    println!("{doc}");
                }
                _ => {
                    println!("l: {}", inv.l);
                    println!("r: {}", inv.r);
                    println!("c: {}", set(&inv.c));
                    println!("c2: {{{}}}", pairs.join(", "));
                    println!("cl: {}", set(&inv.cl));
                    println!("cr: {}", set(&inv.cr));
                }
            }
            Ok(0)
        }
        Cmd::Family { what } => match what {
            FamilyCmd::Graph { n, k, i, dual, beta: want_beta } => {
                let idx = family_index(*n, *k, *i, *dual)?;
                let g = if *want_beta { beta(&idx) } else { alpha(&idx) };
                print_graph(&g, cli, None);
                Ok(0)
            }
            FamilyCmd::Word(args) => {
                println!("{}", family_word(args)?);
                Ok(0)
            }
        },
        Cmd::Word(args) => {
            println!("{}", family_word(args)?);
            Ok(0)
        }
        Cmd::Compare { a, b } => {
            let cmp = compare(&parse_variety(a)?, &parse_variety(b)?)?;
            let name = match cmp.verdict {
                Verdict::Equal => "equal",
                Verdict::Sub => "sub",
                Verdict::Super => "super",
                Verdict::Incomparable => "incomparable",
            };
            if cmp.derived {
                println!("{name} (derived)");
            } else {
                println!("{name}");
            }
            Ok(0)
        }
        Cmd::Identities { variety } => {
            let ids = defining_identities(&parse_variety(variety)?)?;
            for (u, v) in &ids.generators {
                println!("{u} ≈ {v}");
            }
            if let Some((u, v)) = &ids.single_alternate {
                println!("alternate: {u} ≈ {v}");
            }
            Ok(0)
        }
        Cmd::Hasse { n, from, to } => {
            let d = hasse(*n, *from, *to)?;
            match cli.format {
                Format::Dot => print!("{}", hasse_to_dot(&d)),
                Format::Json => println!("{}", hasse_to_json(&d)),
                Format::Text => {
                    for (i, node) in d.nodes.iter().enumerate() {
                        println!("{i}: {node}");
                    }
                    for (a, b) in &d.cover_edges {
                        println!("{a} < {b}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Models { size, iso, list } => {
            let algebras = enumerate(*size, *iso)?;
            println!(
                "{} pseudosemilattices{}",
                algebras.len(),
                if *iso { " up to isomorphism" } else { "" }
            );
            if *list {
                for a in &algebras {
                    for row in a.rows() {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        println!("{}", cells.join(" "));
                    }
                    println!();
                }
            }
            Ok(0)
        }
        Cmd::Witness { u, v, max_size } => {
            let tu = parse_term(u)?;
            let tv = parse_term(v)?;
            match find_witness(&tu, &tv, *max_size)? {
                Some((a, assign)) => {
                    println!("separating model of size {}", a.size);
                    for row in a.rows() {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        println!("{}", cells.join(" "));
                    }
                    let binds: Vec<String> = assign
                        .iter()
                        .map(|(l, x)| format!("{l}={x}"))
                        .collect();
                    println!("assignment: {}", binds.join(" "));
                    Ok(0)
                }
                None => {
                    println!("no separating model up to size {max_size}");
                    Ok(1)
                }
            }
        }
        Cmd::Replay { selector } => {
            let rep = match selector.as_str() {
                "prop3.3" => replay::prop3_3()?,
                "prop3.5" => replay::prop3_5()?,
                "lemma3.6" => replay::lemma3_6()?,
                "prop4.9" => replay::prop4_9()?,
                "prop5.1" => replay::prop5_1()?,
                "lemma4.4" => replay::lemma4_4(cli.seed, 500)?,
                "all" => replay::all(cli.seed)?,
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown selector {other:?}; use prop3.3, prop3.5, lemma3.6, prop4.9, prop5.1, lemma4.4 or all"
                    )))
                }
            };
            Ok(print_replay(&rep, cli.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
