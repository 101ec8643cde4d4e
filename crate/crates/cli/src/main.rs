//! Command-line front end for the closure-computation kernel.
//!
//! Every command prints a machine-readable JSON report on standard output.
//! Exit codes: 0 = computed (whatever the mathematical verdict), 1 = input
//! error or failed corpus expectation, 2 = resource budget exhausted.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use axtight_cli::commands::{self, CommandError, Context, Overrides};
use axtight_cli::{corpus, problem};

#[derive(Parser)]
#[command(name = "axtight", version, about = "Exact closure computations: Gröbner bases, bounded tight-closure certificates, axes-closure tests, and reduction sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Problem file (see the documented grammar)
    file: PathBuf,
    /// Monomial order: degrevlex | deglex | lex, optionally `lex:Z,X`
    #[arg(long)]
    order: Option<String>,
    /// S-pair budget for basis computations
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct SearchFlags {
    /// Highest Frobenius exponent checked (e in [1, e_max])
    #[arg(long)]
    e_max: Option<u32>,
    /// Degree bound for candidate multipliers
    #[arg(long)]
    c_deg: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of an ideal (plus the ring relations)
    Gb {
        #[command(flatten)]
        common: Common,
        /// Ideal name; omitted means the relations themselves
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Exact ideal membership in the quotient ring, with witness cofactors
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
    },
    /// Frobenius bracket power I^[q] with q = p^e
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        /// Frobenius exponent e
        #[arg(long)]
        e: u32,
    },
    /// Bounded tight-closure certificate search
    Tight {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Special tight closure: search over q0 = p^e0
    SpecialTight {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        /// Name of the ideal playing the maximal ideal
        #[arg(long)]
        maximal: String,
        #[arg(long)]
        element: String,
        /// Highest e0 tried (q0 = p^0 .. p^e0)
        #[arg(long)]
        q0_max: Option<u32>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Valuative membership in the problem ring, which must be an axes ring
    AxesMember {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
    },
    /// Axes-closure test through the problem file's homomorphisms
    AxesTest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
        /// Comma-separated hom names; omitted means all applicable homs
        #[arg(long)]
        homs: Option<String>,
    },
    /// Is the problem ring a canonical axes ring (possibly after a change
    /// of variables)?
    IsAxes {
        #[command(flatten)]
        common: Common,
        /// Name of a hom block carrying the change of variables
        #[arg(long)]
        via: Option<String>,
    },
    /// Clear denominators and reduce modulo each prime, reporting luckiness
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
        /// Comma-separated primes (overrides the file params)
        #[arg(long)]
        primes: Option<String>,
        /// `k,m`: first k primes congruent to 1 mod m, skipping bad primes
        #[arg(long, conflicts_with = "primes")]
        auto_primes: Option<String>,
    },
    /// Reduction sweep: bounded tight test on every lucky fiber
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        primes: Option<String>,
        /// `k,m`: first k primes congruent to 1 mod m, skipping bad primes
        #[arg(long, conflicts_with = "primes")]
        auto_primes: Option<String>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Run the bundled example corpus and compare against expectations
    Corpus {
        /// Only run cases whose id contains this substring
        #[arg(long)]
        case: Option<String>,
        /// Flip one case's expectation (exercises the failure path)
        #[arg(long, hide = true)]
        corrupt_case: Option<String>,
    },
}

fn parse_primes(text: &str) -> Result<Vec<u64>, CommandError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CommandError::Input(format!("invalid prime `{t}`")))
        })
        .collect()
}

fn parse_auto_primes(text: &str) -> Result<(usize, u64), CommandError> {
    let bad = || CommandError::Input(format!("expected `k,m` in --auto-primes, got `{text}`"));
    let (k, m) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        k.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

fn load_context(
    common: &Common,
    search: Option<&SearchFlags>,
    q0_max: Option<u32>,
    primes: Option<&str>,
    auto_primes: Option<&str>,
) -> Result<Context, CommandError> {
    let text = std::fs::read_to_string(&common.file).map_err(|e| {
        CommandError::Input(format!("cannot read {}: {e}", common.file.display()))
    })?;
    let problem = problem::parse_problem(&text)
        .map_err(|e| CommandError::Input(format!("{}: {e}", common.file.display())))?;
    let overrides = Overrides {
        e_max: search.and_then(|s| s.e_max),
        c_deg: search.and_then(|s| s.c_deg),
        q0_max,
        primes: primes.map(parse_primes).transpose()?,
        auto_primes: auto_primes.map(parse_auto_primes).transpose()?,
        order: common.order.clone(),
        budget: common.budget,
    };
    Context::new(problem, &overrides)
}

fn run(command: &Command) -> Result<commands::Report, CommandError> {
    match command {
        Command::Gb { common, ideal } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_gb(&ctx, ideal.as_deref())
        }
        Command::Member {
            common,
            ideal,
            element,
        } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_member(&ctx, ideal, element)
        }
        Command::Bracket { common, ideal, e } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_bracket(&ctx, ideal, *e)
        }
        Command::Tight {
            common,
            ideal,
            element,
            search,
        } => {
            let ctx = load_context(common, Some(search), None, None, None)?;
            commands::cmd_tight(&ctx, ideal, element)
        }
        Command::SpecialTight {
            common,
            ideal,
            maximal,
            element,
            q0_max,
            search,
        } => {
            let ctx = load_context(common, Some(search), *q0_max, None, None)?;
            commands::cmd_special_tight(&ctx, ideal, maximal, element)
        }
        Command::AxesMember {
            common,
            ideal,
            element,
        } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_axes_member(&ctx, ideal, element)
        }
        Command::AxesTest {
            common,
            ideal,
            element,
            homs,
        } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_axes_test(&ctx, ideal, element, homs.as_deref())
        }
        Command::IsAxes { common, via } => {
            let ctx = load_context(common, None, None, None, None)?;
            commands::cmd_is_axes(&ctx, via.as_deref())
        }
        Command::Reduce {
            common,
            ideal,
            element,
            primes,
            auto_primes,
        } => {
            let ctx = load_context(common, None, None, primes.as_deref(), auto_primes.as_deref())?;
            commands::cmd_reduce(&ctx, ideal, element)
        }
        Command::Sweep {
            common,
            ideal,
            element,
            primes,
            auto_primes,
            search,
        } => {
            let ctx = load_context(
                common,
                Some(search),
                None,
                primes.as_deref(),
                auto_primes.as_deref(),
            )?;
            commands::cmd_sweep(&ctx, ideal, element)
        }
        Command::Corpus { .. } => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Command::Corpus { case, corrupt_case } = &cli.command {
        let outcome = corpus::run_corpus(case.as_deref(), corrupt_case.as_deref());
        for line in &outcome.lines {
            println!("{line}");
        }
        for line in &outcome.timing_lines {
            eprintln!("{line}");
        }
        return if outcome.passed == outcome.total && outcome.total > 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    }

    match run(&cli.command) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.to_json()).expect("serializable")
            );
            ExitCode::SUCCESS
        }
        Err(CommandError::Input(message)) => {
            eprintln!("input error: {message}");
            ExitCode::from(1)
        }
        Err(CommandError::Resource(message)) => {
            eprintln!("resource exhausted: {message}");
            ExitCode::from(2)
        }
    }
}
