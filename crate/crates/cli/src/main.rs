use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use urysohn::completion::{
    dist_upoint, divergent_point, divergent_sequence, ext_complete_approximating, homotopy, ApproxReal,
    CompletionError, UPoint,
};
use urysohn::disring::{
    check_axioms, BooleanLattice, BrokenDyadic, DyadicInstance, Instance, OrderTwoGroup, RationalInstance,
};
use urysohn::extend::{back_and_forth, ext_d, extend_isometry, ExtendError, PartialIsometry, Reenumerated, UDyadic};
use urysohn::metricio::{load_space, MetricIoError};
use urysohn::space::SpaceError;
use urysohn::{Dyadic, QuotPoint, Store};

#[derive(Parser)]
#[command(name = "urysohn", version, about = "Exact computations in the Urysohn universal metric space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a metric file describes a metric space.
    Validate { file: PathBuf },
    /// Embed the enumerated points of a metric file and print their encodings.
    Embed {
        file: PathBuf,
        /// Number of enumeration indices to embed (default: the whole enumeration).
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Exact distance between two encoded tuples.
    Dist { a: String, b: String },
    /// One-point extension: the point at the given distances from the given points.
    Ext {
        /// Alternating encodings and distances: ENC DYADIC [ENC DYADIC ...].
        #[arg(num_args = 0.., value_name = "ENC DYADIC")]
        constraints: Vec<String>,
    },
    /// Back-and-forth between the dyadic Urysohn space and a block-reversed
    /// enumeration of it.
    Backforth {
        #[arg(long, default_value_t = 5)]
        rounds: usize,
        /// Block length of the reversed enumeration; 1 gives the identical enumeration.
        #[arg(long, default_value_t = 3)]
        block: usize,
    },
    /// Check the disring axioms on an instance.
    Axioms {
        #[arg(long, value_enum, default_value_t = InstanceName::All)]
        instance: InstanceName,
        /// Random samples per axiom for infinite carriers.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Print the divergent sequence and verify its distance table.
    Diverge {
        #[arg(long, default_value_t = 6)]
        upto: u32,
    },
    /// Interval enclosures from the completion layer.
    Approx {
        #[arg(long, default_value_t = 6)]
        precision: u32,
        #[command(subcommand)]
        query: ApproxQuery,
    },
}

#[derive(Subcommand)]
enum ApproxQuery {
    /// Distances from the divergent point to the empty tuple.
    Divergent,
    /// The contraction homotopy at time T between X and Z. A point is an
    /// encoding or `divergent`.
    Homotopy {
        #[arg(long)]
        t: String,
        x: String,
        z: String,
    },
    /// Extension with constraints, approximated at every precision.
    Ext {
        #[arg(num_args = 0.., value_name = "ENC DYADIC")]
        constraints: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceName {
    All,
    Dyadic,
    Rational,
    Boolean,
    Z2,
    Broken,
}

struct CliError {
    kind: &'static str,
    msg: String,
    code: u8,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { kind: "usage", msg: msg.into(), code: 2 }
    }

    fn failure(kind: &'static str, msg: impl Into<String>) -> Self {
        CliError { kind, msg: msg.into(), code: 1 }
    }
}

impl From<MetricIoError> for CliError {
    fn from(e: MetricIoError) -> Self {
        let code = if matches!(e, MetricIoError::Metric { .. }) { 1 } else { 2 };
        CliError { kind: e.kind(), msg: e.to_string(), code }
    }
}

impl From<SpaceError> for CliError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::NotPermissible(_) => CliError::failure("not-permissible", e.to_string()),
            SpaceError::HypothesisViolated(_) => CliError::failure("hypothesis", e.to_string()),
            _ => CliError { kind: "encoding", msg: e.to_string(), code: 2 },
        }
    }
}

impl From<ExtendError> for CliError {
    fn from(e: ExtendError) -> Self {
        match e {
            ExtendError::Space(s) => s.into(),
            ExtendError::PrmsViolation { .. } => CliError::failure("prms", e.to_string()),
            _ => CliError::failure("extend", e.to_string()),
        }
    }
}

impl From<CompletionError> for CliError {
    fn from(e: CompletionError) -> Self {
        match e {
            CompletionError::Space(s) => s.into(),
            CompletionError::Extend(x) => x.into(),
            CompletionError::AdmissibilityRefuted { .. } => CliError::failure("admissibility", e.to_string()),
            CompletionError::InvalidParameter(_) => CliError::usage(e.to_string()),
            _ => CliError::failure("completion", e.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn parse_dyadic(s: &str) -> Result<Dyadic, CliError> {
    s.parse().map_err(|e| CliError { kind: "parse", msg: format!("`{s}`: {e}"), code: 2 })
}

fn parse_point(store: &mut Store, s: &str) -> Result<QuotPoint, CliError> {
    let id = store.decode_str(s)?;
    Ok(store.quot(id)?)
}

fn parse_pairs(constraints: &[String]) -> Result<Vec<(&str, &str)>, CliError> {
    if !constraints.len().is_multiple_of(2) {
        return Err(CliError::usage("constraints come in pairs: ENC DYADIC [ENC DYADIC ...]"));
    }
    Ok(constraints.chunks(2).map(|c| (c[0].as_str(), c[1].as_str())).collect())
}

fn validate(file: &PathBuf) -> CliResult {
    let space = load_space(file)?;
    let n = space.len();
    println!("ok: {n} point{}", if n == 1 { "" } else { "s" });
    Ok(())
}

fn embed(file: &PathBuf, upto: Option<usize>) -> CliResult {
    let space = load_space(file)?;
    let upto = upto.unwrap_or(space.enumeration().len());
    let mut store = Store::new();
    let f = extend_isometry(&mut store, &space, &PartialIsometry::empty(), upto)?;
    for (label, p) in &f.pairs {
        println!("{}\t{}", space.label(*label), store.encode_string(p.node()));
    }
    Ok(())
}

fn dist(a: &str, b: &str) -> CliResult {
    let mut store = Store::new();
    let a = store.decode_str(a)?;
    let b = store.decode_str(b)?;
    println!("{}", store.distance(a, b));
    Ok(())
}

fn ext(constraints: &[String]) -> CliResult {
    let mut store = Store::new();
    let mut c = Vec::new();
    for (enc, d) in parse_pairs(constraints)? {
        let p = parse_point(&mut store, enc)?;
        c.push((p, parse_dyadic(d)?));
    }
    let p = ext_d(&mut store, &c)?;
    println!("{}", store.encode_string(p.node()));
    Ok(())
}

fn backforth(rounds: usize, block: usize) -> CliResult {
    if block == 0 {
        return Err(CliError::usage("--block must be at least 1"));
    }
    let mut store = Store::new();
    let mut p = UDyadic::new();
    let mut q = Reenumerated::reversed_blocks(UDyadic::new(), block);
    let state = back_and_forth(&mut store, &mut p, &mut q, rounds)?;
    for (i, (l, r)) in state.left.iter().zip(&state.right).enumerate() {
        println!("{}\t{}\t{}", i, store.encode_string(l.node()), store.encode_string(r.node()));
    }
    state.verify(&mut store, &mut p, &mut q).map_err(|e| CliError::failure("backforth", e.to_string()))?;
    let identity = if state.is_identity(&mut store) { ", identity" } else { "" };
    println!("verified: {} pairs, isometric and mutually inverse{identity}", state.left.len());
    Ok(())
}

fn report<I: Instance>(inst: &I, budget: usize) -> bool {
    let r = check_axioms(inst, budget);
    print!("{r}");
    r.all_passed()
}

fn axioms(instance: InstanceName, budget: usize) -> CliResult {
    let ok = match instance {
        InstanceName::All => [
            report(&DyadicInstance, budget),
            report(&RationalInstance, budget),
            report(&BooleanLattice, budget),
            report(&OrderTwoGroup, budget),
        ]
        .iter()
        .all(|&b| b),
        InstanceName::Dyadic => report(&DyadicInstance, budget),
        InstanceName::Rational => report(&RationalInstance, budget),
        InstanceName::Boolean => report(&BooleanLattice, budget),
        InstanceName::Z2 => report(&OrderTwoGroup, budget),
        InstanceName::Broken => report(&BrokenDyadic, budget),
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::failure("axioms", "some axioms fail; see the report"))
    }
}

fn diverge(upto: u32) -> CliResult {
    let mut store = Store::new();
    let s: Vec<_> = (0..=upto).map(|n| divergent_sequence(&mut store, n)).collect();
    for (n, id) in s.iter().enumerate() {
        println!("s_{n}\t{}", store.encode_string(*id));
    }
    let mut bad = Vec::new();
    for k in 0..s.len() {
        let row: Vec<String> = (0..s.len())
            .map(|l| {
                let d = store.distance(s[k], s[l]);
                let expected = if k == l { Dyadic::zero() } else { Dyadic::pow2_neg(k.min(l) as u32) };
                if d != expected {
                    bad.push((k, l));
                }
                d.to_string()
            })
            .collect();
        println!("{}", row.join("\t"));
    }
    if let Some((k, l)) = bad.first() {
        return Err(CliError::failure("diverge", format!("d(s_{k}, s_{l}) is not 2^-min({k}, {l})")));
    }
    println!("verified: d(s_k, s_l) = 2^-min(k, l)");
    Ok(())
}

fn parse_upoint(store: &mut Store, s: &str) -> Result<UPoint, CliError> {
    if s == "divergent" {
        return Ok(divergent_point());
    }
    Ok(UPoint::constant(parse_point(store, s)?))
}

fn approx(precision: u32, query: &ApproxQuery) -> CliResult {
    let mut store = Store::new();
    match query {
        ApproxQuery::Divergent => {
            let x = divergent_point();
            let e = UPoint::constant(store.empty_point());
            for n in 0..=precision {
                println!("{n}\t{}", dist_upoint(&mut store, &x, &e, n)?);
            }
        }
        ApproxQuery::Homotopy { t, x, z } => {
            let t = parse_dyadic(t)?;
            let x = parse_upoint(&mut store, x)?;
            let z = parse_upoint(&mut store, z)?;
            let h = homotopy(&mut store, &t, &x, &z)?;
            let p = h.query(&mut store, precision)?;
            println!("point\t{}", store.encode_string(p.node()));
            println!("d(H, x)\t{}", dist_upoint(&mut store, &h, &x, precision)?);
            println!("d(H, z)\t{}", dist_upoint(&mut store, &h, &z, precision)?);
        }
        ApproxQuery::Ext { constraints } => {
            let mut c = Vec::new();
            for (enc, d) in parse_pairs(constraints)? {
                let p = parse_upoint(&mut store, enc)?;
                c.push((p, ApproxReal::exact(parse_dyadic(d)?)));
            }
            let u = ext_complete_approximating(&mut store, &c)?;
            let p = u.query(&mut store, precision)?;
            println!("point\t{}", store.encode_string(p.node()));
            for (k, (x, _)) in c.iter().enumerate() {
                println!("d(ext, x_{k})\t{}", dist_upoint(&mut store, &u, x, precision)?);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Embed { file, upto } => embed(file, *upto),
        Command::Dist { a, b } => dist(a, b),
        Command::Ext { constraints } => ext(constraints),
        Command::Backforth { rounds, block } => backforth(*rounds, *block),
        Command::Axioms { instance, budget } => axioms(*instance, *budget),
        Command::Diverge { upto } => diverge(*upto),
        Command::Approx { precision, query } => approx(*precision, query),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.kind, e.msg);
            ExitCode::from(e.code)
        }
    }
}
