//! `coreseq`: scenario loading, invariant sequences, guessing, oracle runs
//! and the end-to-end verification suite.
//!
//! Machine-readable output lines start with `#data` (sequences), `#rec`
//! (recurrences) or `#eq` (algebraic equations). Exit status is 0 on
//! success, 1 when a verification fails and 2 on usage errors.

use std::fmt;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coreseq::cfinite::CFiniteSeq;
use coreseq::convolve::{tri_laurent, tri_plain, GuessRequest, PolySeqRec};
use coreseq::guess::{guess_cfinite_with_margin, GuessReport, DEFAULT_MARGIN};
use coreseq::modrep::{
    builtin_module, channel_harvest_with_budget, fit_tails, oracle_invariants_with_budget, parse_gens, FpModule,
    GroupShape, DEFAULT_DIM_BUDGET,
};
use coreseq::omega::{load_scenario, InvariantKind, Scenario};
use coreseq::ring::parse_rational_list;
use coreseq::{verify, Error, Rational};

#[derive(Parser)]
#[command(name = "coreseq", version, about = "Invariant sequences of tensor powers of modular representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant sequences of a tensor system scenario
    Omega(OmegaArgs),
    /// Direct computation over F_p
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Guess a relation from a list of terms
    #[command(subcommand)]
    Guess(GuessCommand),
    /// Substitute a C-finite sequence into a polynomial sequence
    Tri(TriArgs),
    /// C-finite sequence arithmetic
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Run verification suites
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum GuessKindArg {
    Cfinite,
    Algebraic,
    Prec,
}

#[derive(Args)]
struct GuessBounds {
    /// Run a guesser on the computed terms
    #[arg(long, value_enum)]
    guess: Option<GuessKindArg>,
    /// Largest recurrence order (cfinite, prec)
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Largest offset before the recurrence starts (cfinite)
    #[arg(long, default_value_t = 4)]
    max_offset: usize,
    /// Polynomial degree bound in t (algebraic) or n (prec)
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Degree bound in y (algebraic)
    #[arg(long, default_value_t = 2)]
    deg_y: usize,
}

impl GuessBounds {
    fn request(&self) -> Option<GuessRequest> {
        Some(match self.guess? {
            GuessKindArg::Cfinite => GuessRequest::CFinite {
                max_order: self.max_order,
                max_offset: self.max_offset,
            },
            GuessKindArg::Algebraic => GuessRequest::Algebraic {
                deg_t: self.max_degree,
                deg_y: self.deg_y,
                margin: DEFAULT_MARGIN,
            },
            GuessKindArg::Prec => GuessRequest::PRecursive {
                max_order: self.max_order,
                max_poldeg: self.max_degree,
            },
        })
    }
}

#[derive(Args)]
struct OmegaArgs {
    /// Scenario file, or `builtin:<id>` (c7, z3z3, s10-prefix, s9-prefix)
    #[arg(long)]
    scenario: String,
    /// Invariant: c, s, d or l
    #[arg(long, default_value = "c")]
    invariant: InvariantKind,
    /// Number of terms, starting at n = 1
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Print the characteristic polynomial, class and growth estimate
    #[arg(long)]
    info: bool,
    /// Print the first rows v T^(n-1)
    #[arg(long)]
    rows: bool,
    #[command(flatten)]
    bounds: GuessBounds,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Jordan block J_m of a cyclic group Z/p^k
    Cyclic {
        #[arg(long)]
        p: u32,
        /// Group order p^k (defaults to p)
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        jordan: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "c,s")]
        kinds: Vec<InvariantKind>,
    },
    /// Module given by generator matrices
    Elab {
        /// Generator file, or `builtin:<id>` (z3z3-m, z3z3-m-dual, z3z3-n, c7-j<m>)
        #[arg(long)]
        file: String,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "c,d")]
        kinds: Vec<InvariantKind>,
        /// Largest module dimension the dense linear algebra may touch
        #[arg(long, default_value_t = DEFAULT_DIM_BUDGET)]
        budget: usize,
    },
    /// Dimension channels of the syzygies of a module
    Channels {
        #[arg(long)]
        file: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Fit quasipolynomial tails with this quasiperiod bound
        #[arg(long)]
        fit_period: Option<usize>,
        /// Degree bound for the tail fit
        #[arg(long, default_value_t = 1)]
        fit_degree: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_BUDGET)]
        budget: usize,
    },
}

#[derive(Args)]
struct TermsArg {
    /// Comma-separated rationals, e.g. 1,4,19,94
    #[arg(long, value_parser = parse_terms)]
    terms: Terms,
}

#[derive(Subcommand)]
enum GuessCommand {
    /// Linear recurrence with constant coefficients
    Cfinite {
        #[command(flatten)]
        terms: TermsArg,
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        max_offset: usize,
        /// Terms held back for verification (default 8, reduced when data is short)
        #[arg(long)]
        margin: Option<usize>,
    },
    /// Polynomial equation P(t, y) = 0 satisfied by the generating function
    Algebraic {
        #[command(flatten)]
        terms: TermsArg,
        #[arg(long)]
        deg_t: usize,
        #[arg(long)]
        deg_y: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Linear recurrence with polynomial coefficients
    Prec {
        #[command(flatten)]
        terms: TermsArg,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_poldeg: usize,
    },
}

#[derive(Args)]
struct TriArgs {
    /// Polynomial sequence file (`coeffs:`, `init:`, optional `from:` and `var:`)
    #[arg(long)]
    polyseq: String,
    /// C-finite sequence a, as `rec: ...; from: k; prefix: ...`
    #[arg(long)]
    a: CFiniteSeq,
    /// Sequence for the negative exponents; switches to the Laurent form
    #[arg(long)]
    b: Option<CFiniteSeq>,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[command(flatten)]
    bounds: GuessBounds,
}

#[derive(Subcommand)]
enum SeqCommand {
    /// First n terms
    Terms {
        #[arg(long)]
        a: CFiniteSeq,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Termwise sum
    Add {
        #[arg(long)]
        a: CFiniteSeq,
        #[arg(long)]
        b: CFiniteSeq,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Termwise product
    Hadamard {
        #[arg(long)]
        a: CFiniteSeq,
        #[arg(long)]
        b: CFiniteSeq,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Running sums a_0 + ... + a_n
    PartialSums {
        #[arg(long)]
        a: CFiniteSeq,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Subsequence a_{d n}
    Dilate {
        #[arg(long)]
        a: CFiniteSeq,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Generating function as a rational function of t
    Hilbert {
        #[arg(long)]
        a: CFiniteSeq,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The end-to-end acceptance checks
    Paper {
        /// Run a single criterion
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Debug)]
struct Terms(Vec<Rational>);

fn parse_terms(s: &str) -> Result<Terms, String> {
    parse_rational_list(s).map(Terms).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Scenario { .. }
            | Error::InvalidArgument(_)
            | Error::Io(_)
            | Error::Positivity(_)
            | Error::InsufficientTerms { .. } => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<(), Failure>;

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn print_data(v: &[Rational]) {
    println!("#data {}", join(v));
}

fn print_report(report: &GuessReport) {
    println!("{report}");
    println!("{}", report.machine_line());
}

fn run_guess(terms: &[Rational], bounds: &GuessBounds) -> Outcome {
    if let Some(request) = bounds.request() {
        print_report(&request.run(terms)?);
    }
    Ok(())
}

fn omega(args: &OmegaArgs) -> Outcome {
    match load_scenario(&args.scenario)? {
        Scenario::Prefix(p) => {
            println!("prefix dataset {} ({} published terms)", p.name, p.terms.len());
            if args.n > p.terms.len() {
                return Err(Failure::Usage(format!(
                    "--n {} exceeds the {} published terms",
                    args.n,
                    p.terms.len()
                )));
            }
            let terms = &p.terms[..args.n];
            print_data(terms);
            if let Some(rec) = &p.recurrence {
                println!("published recurrence coefficients: {}", join(rec));
            }
            run_guess(terms, &args.bounds)
        }
        Scenario::System(sys) => {
            if args.info {
                println!("system {} with {} orbits", sys.name(), sys.size());
                println!("characteristic polynomial: {}", sys.matrix().char_poly());
                println!("class: {}", sys.classify());
                if let Ok((gamma, _)) = sys.gamma_estimate(args.n.max(4)) {
                    println!("growth estimate: {gamma:.6}");
                }
            }
            if args.rows {
                for (i, row) in sys.core_rows(args.n)?.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    println!("n={}: [{}]", i + 1, cells.join(", "));
                }
            }
            let terms = sys.invariant_seq(args.invariant, args.n)?;
            print_data(&terms);
            run_guess(&terms, &args.bounds)
        }
    }
}

fn load_module(source: &str) -> Result<FpModule, Failure> {
    Ok(match source.strip_prefix("builtin:") {
        Some(id) => builtin_module(id)?,
        None => {
            let text = fs::read_to_string(source).map_err(|e| Failure::Usage(format!("--file {source}: {e}")))?;
            parse_gens(&text)?
        }
    })
}

fn print_table(m: &FpModule, n: usize, kinds: &[InvariantKind], budget: usize) -> Outcome {
    println!("module over {} of dimension {}", m.shape(), m.dim());
    let table = oracle_invariants_with_budget(m, n, kinds, budget)?;
    for kind in kinds {
        let v: Vec<String> = table[kind].iter().map(ToString::to_string).collect();
        println!("#data {kind} {}", v.join(","));
    }
    Ok(())
}

fn oracle(cmd: &OracleCommand) -> Outcome {
    match cmd {
        OracleCommand::Cyclic {
            p,
            order,
            jordan,
            n,
            kinds,
        } => {
            let shape = GroupShape::Cyclic {
                p: *p,
                order: order.unwrap_or(*p),
            };
            let m = FpModule::jordan(shape, *jordan)?;
            print_table(&m, *n, kinds, DEFAULT_DIM_BUDGET)
        }
        OracleCommand::Elab { file, n, kinds, budget } => print_table(&load_module(file)?, *n, kinds, *budget),
        OracleCommand::Channels {
            file,
            depth,
            fit_period,
            fit_degree,
            budget,
        } => {
            let m = load_module(file)?;
            for channel in channel_harvest_with_budget(&m, *depth, *budget)? {
                let channel = match fit_period {
                    Some(t) => fit_tails(&channel, *t, *fit_degree)?,
                    None => channel,
                };
                println!("{channel}");
            }
            Ok(())
        }
    }
}

fn guess(cmd: &GuessCommand) -> Outcome {
    let report = match cmd {
        GuessCommand::Cfinite {
            terms,
            max_order,
            max_offset,
            margin,
        } => {
            let t = &terms.terms.0;
            let margin = match margin {
                Some(m) => *m,
                None => {
                    let room = t.len().saturating_sub(2 * max_order + max_offset);
                    if room < DEFAULT_MARGIN {
                        eprintln!("note: only {} terms, verification margin reduced to {room}", t.len());
                    }
                    room.min(DEFAULT_MARGIN)
                }
            };
            guess_cfinite_with_margin(t, *max_order, *max_offset, margin)?
        }
        GuessCommand::Algebraic {
            terms,
            deg_t,
            deg_y,
            margin,
        } => GuessRequest::Algebraic {
            deg_t: *deg_t,
            deg_y: *deg_y,
            margin: *margin,
        }
        .run(&terms.terms.0)?,
        GuessCommand::Prec {
            terms,
            max_order,
            max_poldeg,
        } => GuessRequest::PRecursive {
            max_order: *max_order,
            max_poldeg: *max_poldeg,
        }
        .run(&terms.terms.0)?,
    };
    print_report(&report);
    Ok(())
}

fn tri(args: &TriArgs) -> Outcome {
    let text =
        fs::read_to_string(&args.polyseq).map_err(|e| Failure::Usage(format!("--polyseq {}: {e}", args.polyseq)))?;
    let ps = PolySeqRec::parse(&text)?;
    let terms = match &args.b {
        Some(b) => tri_laurent(&ps, &args.a, b, args.n)?,
        None => tri_plain(&ps, &args.a, args.n)?,
    };
    print_data(&terms);
    run_guess(&terms, &args.bounds)
}

fn seq(cmd: &SeqCommand) -> Outcome {
    let (result, n) = match cmd {
        SeqCommand::Terms { a, n } => (a.clone(), *n),
        SeqCommand::Add { a, b, n } => (a.add(b), *n),
        SeqCommand::Hadamard { a, b, n } => (a.hadamard(b), *n),
        SeqCommand::PartialSums { a, n } => (a.partial_sums(), *n),
        SeqCommand::Dilate { a, d, n } => (a.dilate(*d)?, *n),
        SeqCommand::Hilbert { a } => {
            println!("{}", a.hilbert_series());
            return Ok(());
        }
    };
    println!("{result}");
    print_data(&result.terms(n));
    Ok(())
}

fn verify_cmd(cmd: &VerifyCommand) -> Outcome {
    let VerifyCommand::Paper { only } = cmd;
    let outcomes = match only {
        Some(id) if verify::CRITERIA.iter().any(|(i, _)| i == id) => vec![verify::run(*id)],
        Some(id) => return Err(Failure::Usage(format!("--only {id}: no such criterion"))),
        None => verify::run_all(),
    };
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} criteria failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Omega(args) => omega(args),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Guess(cmd) => guess(cmd),
        Command::Tri(args) => tri(args),
        Command::Seq(cmd) => seq(cmd),
        Command::Verify(cmd) => verify_cmd(cmd),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
