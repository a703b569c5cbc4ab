mod source;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagalg::char_poly::char_poly_k;
use flagalg::flags::{count_flags, FlagSpace};
use flagalg::kl_index::{family_json, render_latex, render_table};
use flagalg::kl_poly::{coefficient_pairs, kl_closed, kl_closed_unchecked, kl_recursive};
use flagalg::mobius::{mobius_left, mobius_left_rooted, mobius_right};
use flagalg::poset::io;
use flagalg::selftest::{self, Status};
use flagalg::whitney::{multi_indices, whitney_first, whitney_second, MultiIndex};
use flagalg::{Error, Limits, Poset};
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COMPUTATION: u8 = 3;

/// Partial flag incidence algebras, multi-indexed Whitney numbers and
/// Kazhdan-Lusztig polynomials of graded posets, in exact arithmetic.
///
/// Posets come from a file (`--poset FILE`, JSON with `schema`, `elements`
/// and `covers`) or a generator (`--gen SPEC`):
///
///   boolean:N          Boolean lattice B_N
///   chain:N            chain with N covers
///   partition:N        partition lattice of an N-set
///   uniform:M,N        flats of the uniform matroid U_{M,N}
///   figure1            the five-element rank-2 example lattice
///   random:SEED[,MAX]  random graded bounded poset with at most MAX elements
///   product:(A,B)      Cartesian product of two generator specs
///
/// Exit status: 0 success, 1 verification mismatch, 2 usage or input error,
/// 3 computation error (caps, inconsistent input for the computation).
#[derive(Parser)]
#[command(name = "flagalg", version, verbatim_doc_comment)]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on the number of enumerated flags.
    #[arg(long, global = true, env = "FLAGALG_MAX_FLAGS")]
    max_flags: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Poset JSON file.
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
    /// Generator spec such as boolean:4 or product:(chain:2,figure1).
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Poset, Failure> {
        let loaded = match (&self.poset, &self.generator) {
            (Some(path), _) => io::read_file(path),
            (_, Some(spec)) => source::generate(spec),
            (None, None) => unreachable!("clap requires one source"),
        };
        loaded.map_err(Failure::input)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexFormat {
    Table1,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    First,
    Second,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Recursive,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Summary or canonical JSON of a poset.
    Poset {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: PosetFormat,
    },
    /// Lists the flags X_1 <= ... <= X_n.
    Flags {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Print only the number of flags.
        #[arg(long)]
        count: bool,
    },
    /// Values of the left (or right) Möbius function, one flag per line.
    Mobius {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// The right Möbius function instead of the left one.
        #[arg(long, conflicts_with = "root")]
        right: bool,
        /// Only flags starting at this element label.
        #[arg(long)]
        root: Option<String>,
    },
    /// Multi-indexed Whitney numbers.
    Whitney {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "second")]
        kind: Kind,
        /// Comma-separated weakly increasing rank levels, e.g. 1,3,4.
        #[arg(long, value_delimiter = ',', required_unless_present = "all_k", conflicts_with = "all_k")]
        index: Option<Vec<usize>>,
        /// Every multi-index of this length.
        #[arg(long, value_name = "K")]
        all_k: Option<usize>,
    },
    /// The signed index family S_k of the closed KL coefficient formula.
    Klindex {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "table1")]
        format: IndexFormat,
    },
    /// Kazhdan-Lusztig polynomial of a bounded graded poset.
    Kl {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Run the closed formula on posets that are not lattices.
        #[arg(long)]
        allow_non_lattice: bool,
        /// Also print each signed pair W_t(I) - W_I of the closed formula.
        #[arg(long)]
        terms: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: PolyFormat,
    },
    /// Generalized characteristic polynomial χ_k.
    Charpoly {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: PolyFormat,
    },
    /// Runs the acceptance checks and reports each criterion.
    Selftest {
        /// Index table to compare against instead of the built-in one.
        #[arg(long, value_name = "FILE")]
        table1: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: Error) -> Failure {
        Failure { code: EXIT_USAGE, message: format!("invalid input: {e}") }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let hint = match &e {
            Error::EnumerationLimitExceeded { .. } => "\nhint: raise --max-flags or FLAGALG_MAX_FLAGS",
            Error::NotLattice => "\nhint: pass --allow-non-lattice to run the closed formula anyway",
            Error::Parse(_) => return Failure::input(e),
            _ => "",
        };
        Failure { code: EXIT_COMPUTATION, message: format!("computation failed: {e}{hint}") }
    }
}

type Outcome = Result<u8, Failure>;

fn flag_labels(p: &Poset, flag: &[usize]) -> String {
    let labels: Vec<&str> = flag.iter().map(|&x| p.label(x)).collect();
    format!("({})", labels.join(", "))
}

fn print_poly(text: String, json: String, latex: String, format: PolyFormat) {
    match format {
        PolyFormat::Text => println!("{text}"),
        PolyFormat::Json => println!("{json}"),
        PolyFormat::Latex => println!("{latex}"),
    }
}

fn poset_cmd(p: &Poset, format: PosetFormat) -> Outcome {
    match format {
        PosetFormat::Json => println!("{}", io::to_json(p)),
        PosetFormat::Text => {
            let d = p.validate();
            println!("name: {}", p.name().unwrap_or("-"));
            println!("elements: {}", p.len());
            println!("covers: {}", p.covers().len());
            println!("rank: {}", p.top_rank());
            let sizes: Vec<String> = p.level_sizes().iter().map(ToString::to_string).collect();
            println!("level sizes: {}", sizes.join(" "));
            println!("graded: {}", d.graded);
            println!("bounded below: {}", d.bounded_below);
            println!("bounded above: {}", d.bounded_above);
            println!("lattice: {}", d.lattice);
        }
    }
    Ok(0)
}

fn flags_cmd(p: Poset, arity: usize, count: bool) -> Outcome {
    if count {
        println!("{}", count_flags(&p, arity, None, None));
        return Ok(0);
    }
    let space = FlagSpace::new(Arc::new(p), arity)?;
    let p = space.poset();
    for flag in space.iter() {
        println!("{}", flag_labels(p, flag));
    }
    Ok(0)
}

fn mobius_cmd(p: Poset, arity: usize, right: bool, root: Option<String>) -> Outcome {
    let p = Arc::new(p);
    let mu = match (&root, right) {
        (Some(label), _) => {
            let x = p
                .index_of(label)
                .ok_or_else(|| Failure::input(Error::Parse(format!("no element labelled {label:?}"))))?;
            mobius_left_rooted(&p, arity, x)?
        }
        (None, true) => mobius_right(&FlagSpace::new(p.clone(), arity)?)?,
        (None, false) => mobius_left(&FlagSpace::new(p.clone(), arity)?)?,
    };
    print!("{}", mu.dump());
    Ok(0)
}

fn whitney_cmd(p: Poset, kind: Kind, index: Option<Vec<usize>>, all_k: Option<usize>) -> Outcome {
    let indices = match (index, all_k) {
        (Some(levels), _) => vec![MultiIndex::new(levels).map_err(Failure::input)?],
        (None, Some(k)) => multi_indices(p.top_rank(), k),
        (None, None) => unreachable!("clap requires --index or --all-k"),
    };
    for index in indices {
        let (symbol, value) = match kind {
            Kind::First => ("w", whitney_first(&p, &index)?),
            Kind::Second => ("W", whitney_second(&p, &index)?),
        };
        println!("{symbol}_{index} = {value}");
    }
    Ok(0)
}

fn klindex_cmd(k: usize, format: IndexFormat) -> Outcome {
    match format {
        IndexFormat::Table1 => println!("{}", render_table(k)?),
        IndexFormat::Latex => println!("{}", render_latex(k)?),
        IndexFormat::Json => println!("{}", family_json(k)?),
    }
    Ok(0)
}

fn kl_cmd(p: Poset, method: Method, allow_non_lattice: bool, terms: bool, format: PolyFormat) -> Outcome {
    let closed = match method {
        Method::Recursive => None,
        _ if allow_non_lattice => Some(kl_closed_unchecked(&p)?),
        _ => Some(kl_closed(&p)?),
    };
    let recursive = match method {
        Method::Closed => None,
        _ => Some(kl_recursive(&p)?),
    };
    if terms {
        for k in (1..).take_while(|&k| 2 * k < p.top_rank()) {
            for pair in coefficient_pairs(&p, k)? {
                let sign = if pair.positive { '+' } else { '-' };
                println!(
                    "k={k} {sign} (W_{} - W_{}) = {sign}({} - {})",
                    pair.partner, pair.index, pair.w_partner, pair.w_index
                );
            }
        }
    }
    let show = |label: &str, poly: &flagalg::polynomial::Polynomial| match format {
        PolyFormat::Json => println!("{}", json!({"method": label, "polynomial": serde_json::from_str::<serde_json::Value>(&poly.to_json()).expect("valid JSON")})),
        PolyFormat::Text if method == Method::Both => println!("{label}: {poly}"),
        PolyFormat::Latex if method == Method::Both => println!("{label}: {}", poly.to_latex()),
        _ => print_poly(poly.to_string(), poly.to_json(), poly.to_latex(), format),
    };
    if let Some(c) = &closed {
        show("closed", c);
    }
    if let Some(r) = &recursive {
        show("recursive", r);
    }
    if let (Some(c), Some(r)) = (&closed, &recursive) {
        if c != r {
            eprintln!("mismatch: the closed formula and the recursion disagree");
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(0)
}

fn charpoly_cmd(p: Poset, k: usize, format: PolyFormat) -> Outcome {
    let chi = char_poly_k(&p, k)?;
    print_poly(chi.to_string(), chi.to_json(), chi.to_latex(), format);
    Ok(0)
}

fn selftest_cmd(table1: Option<PathBuf>) -> Outcome {
    let table = match table1 {
        Some(path) => Some(
            std::fs::read_to_string(&path)
                .map_err(|e| Failure::input(Error::Parse(format!("{}: {e}", path.display()))))?,
        ),
        None => None,
    };
    let reports = selftest::run(table.as_deref());
    for report in &reports {
        println!("{report}");
    }
    let failed = reports.iter().filter(|r| matches!(r.status, Status::Fail(_))).count();
    Ok(if failed == 0 { 0 } else { EXIT_MISMATCH })
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure { code: EXIT_USAGE, message: format!("cannot start {n} threads: {e}") })?;
    }
    if let Some(max_flags) = cli.max_flags {
        if max_flags == 0 {
            return Err(Failure { code: EXIT_USAGE, message: "--max-flags must be positive".into() });
        }
        Limits { max_flags, ..Limits::current() }.install();
    }
    match cli.command {
        Command::Poset { source, format } => poset_cmd(&source.load()?, format),
        Command::Flags { source, arity, count } => flags_cmd(source.load()?, arity, count),
        Command::Mobius { source, arity, right, root } => mobius_cmd(source.load()?, arity, right, root),
        Command::Whitney { source, kind, index, all_k } => whitney_cmd(source.load()?, kind, index, all_k),
        Command::Klindex { k, format } => klindex_cmd(k, format),
        Command::Kl { source, method, allow_non_lattice, terms, format } => {
            kl_cmd(source.load()?, method, allow_non_lattice, terms, format)
        }
        Command::Charpoly { source, k, format } => charpoly_cmd(source.load()?, k, format),
        Command::Selftest { table1 } => selftest_cmd(table1),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("flagalg: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
