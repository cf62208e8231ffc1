//! `zechjoin` command-line interface.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use zechjoin::conjugacy::cyclotomic_numbers;
use zechjoin::crossjoin::{fryers_coefficients, fryers_total, random_crossjoin};
use zechjoin::graph::{
    certify_almost_star, certify_center, certify_star, count_spanning_trees, export_dot, grow_subgraph,
    sample_spanning_tree, search_almost_star, CertOutcome,
};
use zechjoin::joining::{tree_feedback, BitStream, FeedbackFn};
use zechjoin::zech::{build_zech_table, zech_bruteforce, ZechBudget, BRUTEFORCE_CAP};
use zechjoin::{BinPoly, BitVector, CycleCtx, Error, TreeCert, TreeMethod, ZechTable};

const EXIT_PARTIAL: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Largest ANF written out monomial by monomial.
const MAX_EXPANDED_MONOMIALS: usize = 1 << 16;
/// Orders up to this get their full sequence written.
const MAX_SEQUENCE_N: usize = 20;

#[derive(Parser)]
#[command(name = "zechjoin", version, about = "de Bruijn sequences from Zech's logarithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a Zech logarithm table.
    Zech(ZechArgs),
    /// Join the cycles of an LFSR into de Bruijn sequences.
    Debruijn(DebruijnArgs),
    /// Star and almost-star spanning-tree certificates.
    Certify(CertifyArgs),
    /// Random cross-joins on an m-sequence.
    Crossjoin(CrossjoinArgs),
    /// Fryers coefficients N(l;k) and their total.
    Fryers(FryersArgs),
    /// The t x t matrix of cyclotomic numbers.
    Cyclotomic(CyclotomicArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Hex,
}

#[derive(Args)]
struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZechMode {
    Bruteforce,
    Propagate,
}

#[derive(Args)]
struct TableArgs {
    /// Primitive polynomial, e.g. "n=10;{3}", "0x409" or "x^4+x+1".
    #[arg(long)]
    p: String,
    /// Table construction; defaults to bruteforce up to degree 26.
    #[arg(long, value_enum)]
    mode: Option<ZechMode>,
    /// Also lift entries from proper subfields while propagating.
    #[arg(long)]
    subfield: bool,
    /// Cap on chaining work items.
    #[arg(long)]
    budget_chain: Option<u64>,
}

#[derive(Args)]
struct ZechArgs {
    #[command(flatten)]
    table: TableArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeChoice {
    Wilson,
    Kruskal,
    Bfs,
}

#[derive(Args)]
struct DebruijnArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long)]
    t: u64,
    /// Number of sequences; 0 reports the graph only.
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "wilson")]
    tree: TreeChoice,
    /// Largest number of cosets put into the subgraph.
    #[arg(long, default_value_t = 1 << 20)]
    budget_cosets: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    table: TableArgs,
    /// A single t; otherwise every valid t up to --budget-s.
    #[arg(long)]
    t: Option<u64>,
    /// Almost-star center; with --t and no --l the star test runs first and
    /// then the smallest admissible center is searched.
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, default_value_t = 2000)]
    budget_s: u64,
    #[arg(long, default_value_t = 2000)]
    budget_z: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CrossjoinArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FryersArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CyclotomicArgs {
    #[command(flatten)]
    table: TableArgs,
    #[arg(long)]
    t: u64,
    #[command(flatten)]
    common: Common,
}

/// Command output plus whether the run was only partially successful.
struct Output {
    body: String,
    partial: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MissingEntry(_) | Error::Disconnected(_) | Error::Budget(_) | Error::NotFound(_) => EXIT_PARTIAL,
        _ => EXIT_INVALID,
    }
}

fn parse_poly(s: &str) -> Result<BinPoly, Error> {
    Ok(BinPoly::parse(s)?)
}

fn load_table(args: &TableArgs) -> Result<(BinPoly, ZechTable), Error> {
    let p = parse_poly(&args.p)?;
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::InvalidModulus);
    }
    let mode = args.mode.unwrap_or(if p.deg() <= BRUTEFORCE_CAP {
        ZechMode::Bruteforce
    } else {
        ZechMode::Propagate
    });
    let table = match mode {
        ZechMode::Bruteforce => zech_bruteforce(&p)?,
        ZechMode::Propagate => build_zech_table(
            &p,
            &ZechBudget {
                subfield: args.subfield,
                max_chain_steps: args.budget_chain,
                ..ZechBudget::default()
            },
        )?,
    };
    Ok((p, table))
}

fn cmd_zech(args: &ZechArgs) -> Result<Output, Error> {
    let (p, table) = load_table(&args.table)?;
    let cov = table.coverage();
    let body = match args.common.format {
        Format::Json => {
            let entries: Vec<Value> = table
                .entries()
                .into_iter()
                .map(|(k, v, prov)| json!([k.to_string(), v.to_string(), prov.as_str()]))
                .collect();
            json!({
                "n": table.n(),
                "p": p.to_text(),
                "complete": table.is_complete(),
                "known_elements": cov.known_elements.to_string(),
                "total_elements": cov.total_elements.to_string(),
                "chain_steps": cov.chain_steps,
                "leaders": entries,
            })
            .to_string()
                + "\n"
        }
        _ => table.to_text(),
    };
    eprintln!("known {} of {} exponents", cov.known_elements, cov.total_elements);
    Ok(Output {
        body,
        partial: !table.is_complete(),
    })
}

fn feedback_text(fb: &FeedbackFn) -> String {
    match fb.to_anf(MAX_EXPANDED_MONOMIALS) {
        Ok(anf) => anf.to_string(),
        Err(_) => fb.to_text(),
    }
}

fn cmd_debruijn(args: &DebruijnArgs) -> Result<Output, Error> {
    let (p, table) = load_table(&args.table)?;
    let ctx = CycleCtx::new(&p, args.t, Arc::new(table))?;
    let g = grow_subgraph(&ctx, args.budget_cosets)?;
    let unreached = g.unreached();
    if !unreached.is_empty() {
        let names: Vec<String> = unreached
            .iter()
            .map(|&v| zechjoin::Cycle::from_vertex(v).to_string())
            .collect();
        eprintln!("still to connect: {}", names.join(" "));
        return Err(Error::Disconnected(unreached));
    }
    if args.common.format == Format::Dot {
        return Ok(Output {
            body: export_dot(&g, false),
            partial: false,
        });
    }
    let n = ctx.n();
    let method = match args.tree {
        TreeChoice::Wilson => TreeMethod::Wilson,
        TreeChoice::Kruskal => TreeMethod::Kruskal,
        TreeChoice::Bfs => TreeMethod::Bfs,
    };
    let trees = if g.vertex_count() <= 400 {
        Some(count_spanning_trees(&g))
    } else {
        None
    };
    let mut records = Vec::new();
    for i in 0..args.count {
        let seed = args.seed.wrapping_add(i);
        let tree = sample_spanning_tree(&g, seed, method)?;
        let fb = tree_feedback(&ctx, &tree)?;
        let bits = if n <= MAX_SEQUENCE_N {
            let s = zechjoin::joining::materialize(&fb)?;
            if !s.is_de_bruijn(n) {
                return Err(Error::Domain("generated sequence failed the window test".into()));
            }
            s.into_bits()
        } else {
            BitStream::resume(fb.clone(), BitVector::zeros(n))?.next_block(256)
        };
        records.push((seed, fb, bits));
    }
    let body = match args.common.format {
        Format::Json => {
            let items: Vec<Value> = records
                .iter()
                .map(|(seed, fb, bits)| {
                    json!({
                        "seed": seed,
                        "anf": feedback_text(fb),
                        "degree": fb.degree().ok(),
                        "bits": bits.to_string(),
                        "complete": n <= MAX_SEQUENCE_N,
                    })
                })
                .collect();
            json!({
                "n": n,
                "p": p.to_text(),
                "t": args.t,
                "f": ctx.f().to_text(),
                "edges": g.edges().count(),
                "spanning_trees_log2": trees.as_ref().map(|c| format!("{:.2}", c.log2)),
                "sequences": items,
            })
            .to_string()
                + "\n"
        }
        Format::Hex => records
            .iter()
            .map(|(_, _, bits)| zechjoin::BitSeq::new(bits.clone()).to_hex_record() + "\n")
            .collect(),
        _ => {
            let mut out = format!("n={n} p={} t={} f={}\n", p.to_text(), args.t, ctx.f().to_text());
            if let Some(c) = &trees {
                out.push_str(&format!("spanning trees: 2^{:.2}\n", c.log2));
            }
            for (seed, fb, bits) in &records {
                out.push_str(&format!("seed {seed}\nanf: {}\n", feedback_text(fb)));
                let label = if n <= MAX_SEQUENCE_N { "bits" } else { "prefix" };
                out.push_str(&format!("{label}: {bits}\n"));
            }
            out
        }
    };
    Ok(Output { body, partial: false })
}

fn cert_text(c: &TreeCert) -> String {
    let w: Vec<String> = c.witness.iter().map(u64::to_string).collect();
    format!(
        "t={} center={} f={} W={{{}}} cp={} log2={:.2}",
        c.t,
        c.center,
        c.f.to_text(),
        w.join(","),
        c.cp,
        c.log2()
    )
}

fn cmd_certify(args: &CertifyArgs) -> Result<Output, Error> {
    let (p, table) = load_table(&args.table)?;
    let m = table.ring().modulus().clone();
    let valid = |t: u64| -> Result<bool, Error> {
        let tb = BigUint::from(t);
        Ok(t >= 2 && (&m % &tb) == BigUint::from(0u32) && zechjoin::gf2poly::associated_irreducible(&p, &tb)?.valid)
    };
    let mut lines = Vec::new();
    let mut certs = Vec::new();
    let mut partial = false;
    match (args.t, args.l) {
        (Some(t), _) if !valid(t)? => {
            lines.push(format!("t={t} skipped: not a valid decimation"));
        }
        (Some(t), Some(l)) => {
            let out = if l == 0 {
                certify_center(&p, &table, t, 0, args.budget_z)?
            } else {
                certify_almost_star(&p, &table, t, l, args.budget_z)?
            };
            match out {
                CertOutcome::Certified(c) => certs.push(c),
                CertOutcome::NotFound { t, covered } => {
                    partial = true;
                    lines.push(format!(
                        "t={t} center={l} no certificate ({covered} of {t} cycles covered)"
                    ));
                }
            }
        }
        (Some(t), None) => match certify_center(&p, &table, t, 0, args.budget_z)? {
            CertOutcome::Certified(c) => certs.push(c),
            CertOutcome::NotFound { .. } => match search_almost_star(&p, &table, t, args.budget_z)? {
                Some(c) => certs.push(c),
                None => {
                    partial = true;
                    lines.push(format!("t={t} no star or almost-star certificate"));
                }
            },
        },
        (None, _) => {
            for out in certify_star(&p, &table, args.budget_s, args.budget_z)? {
                match out {
                    CertOutcome::Certified(c) => certs.push(c),
                    CertOutcome::NotFound { t, covered } => {
                        lines.push(format!("t={t} no star ({covered} of {t} cycles covered)"));
                    }
                }
            }
        }
    }
    let body = match args.common.format {
        Format::Json => {
            let items: Vec<Value> = certs.iter().map(TreeCert::to_json).collect();
            json!({ "p": p.to_text(), "certificates": items, "notes": lines }).to_string() + "\n"
        }
        _ => {
            let mut out: Vec<String> = certs.iter().map(cert_text).collect();
            out.extend(lines);
            out.join("\n") + "\n"
        }
    };
    Ok(Output { body, partial })
}

fn cmd_crossjoin(args: &CrossjoinArgs) -> Result<Output, Error> {
    let (p, table) = load_table(&args.table)?;
    let mut items = Vec::new();
    for i in 0..args.count {
        let cj = random_crossjoin(&p, &table, args.seed.wrapping_add(i))?;
        items.push(cj);
    }
    let body = match args.common.format {
        Format::Json => {
            let v: Vec<Value> = items
                .iter()
                .map(|cj| {
                    json!({
                        "anf": feedback_text(&cj.feedback),
                        "degree": cj.feedback.degree().ok(),
                        "alpha": cj.pair.alpha.to_string(),
                        "beta": cj.pair.beta.to_string(),
                        "provenance": cj.provenance(),
                    })
                })
                .collect();
            Value::Array(v).to_string() + "\n"
        }
        _ => items
            .iter()
            .map(|cj| {
                format!(
                    "anf: {}\nalpha: {}\nbeta: {}\nprovenance: {}\n",
                    feedback_text(&cj.feedback),
                    cj.pair.alpha,
                    cj.pair.beta,
                    cj.provenance()
                )
            })
            .collect(),
    };
    Ok(Output { body, partial: false })
}

fn cmd_fryers(args: &FryersArgs) -> Result<Output, Error> {
    if !(2..=24).contains(&args.n) {
        return Err(Error::Domain("n must lie in [2, 24]".into()));
    }
    let coeffs = fryers_coefficients(args.n);
    let total = fryers_total(args.n);
    let sum: BigUint = coeffs.iter().sum();
    if sum != total {
        return Err(Error::Domain("coefficients do not sum to the total".into()));
    }
    let strs: Vec<String> = coeffs.iter().map(BigUint::to_string).collect();
    let body = match args.common.format {
        Format::Json => json!({ "n": args.n, "coefficients": strs, "total": total.to_string() }).to_string() + "\n",
        _ => format!("{}\ntotal={}\n", strs.join(","), total),
    };
    Ok(Output { body, partial: false })
}

fn cmd_cyclotomic(args: &CyclotomicArgs) -> Result<Output, Error> {
    let (p, table) = load_table(&args.table)?;
    let ctx = CycleCtx::new(&p, args.t, Arc::new(table))?;
    let m = cyclotomic_numbers(&ctx)?;
    let body = match args.common.format {
        Format::Json => json!({ "p": p.to_text(), "t": args.t, "matrix": m }).to_string() + "\n",
        _ => m
            .iter()
            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect(),
    };
    Ok(Output { body, partial: false })
}

fn run(cli: &Cli) -> Result<(Output, &Common), Error> {
    Ok(match &cli.command {
        Command::Zech(a) => (cmd_zech(a)?, &a.common),
        Command::Debruijn(a) => (cmd_debruijn(a)?, &a.common),
        Command::Certify(a) => (cmd_certify(a)?, &a.common),
        Command::Crossjoin(a) => (cmd_crossjoin(a)?, &a.common),
        Command::Fryers(a) => (cmd_fryers(a)?, &a.common),
        Command::Cyclotomic(a) => (cmd_cyclotomic(a)?, &a.common),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((out, common)) => {
            let written = match &common.out {
                Some(path) => fs::write(path, &out.body),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
            if out.partial {
                ExitCode::from(EXIT_PARTIAL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
