use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use nlie::counting::{self, Method};
use nlie::oracle::{self, OracleCache, CACHE_ENV};
use nlie::report::{self, Evaluator};
use nlie::{
    EnumerationMode, LinearCombination, DEFAULT_ENUMERATION_CAP, DEFAULT_MONOMIAL_CEILING,
    DEFAULT_STEP_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "nlie",
    version,
    about = "Basic commutators and graded dimensions of free n-Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(alias = "full-rule3")]
    Full,
    #[value(alias = "left-normed")]
    Left,
}

impl From<Mode> for EnumerationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => EnumerationMode::FullRule3,
            Mode::Left => EnumerationMode::LeftNormed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct OracleOpts {
    /// Largest monomial basis the oracle may build.
    #[arg(long, default_value_t = DEFAULT_MONOMIAL_CEILING)]
    ceiling: usize,
    /// Directory holding the JSON-lines cache of oracle cells.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
}

impl OracleOpts {
    fn evaluator(&self) -> Result<Evaluator> {
        let cache = self.cache_dir.as_ref().map(OracleCache::new).transpose()?;
        Ok(Evaluator {
            oracle_ceiling: self.ceiling,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            cache,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a count; the method tag goes to stderr.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        /// One of WITT, NECKLACE_BOUND, WEIGHT2, LADDER, LADDER_RECURSIVE,
        /// EQ14, EQ15, EQ16, ENUM_FULL, ENUM_LEFT, ORACLE, VIA_LIE.
        #[arg(long)]
        method: String,
        #[command(flatten)]
        oracle: OracleOpts,
    },
    /// List basic commutators in ascending order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Rewrite a term into basic commutators.
    Rewrite {
        #[arg(long)]
        n: usize,
        expr: String,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: usize,
        /// Check with the oracle that the input minus the output lies in the
        /// relation span, over this many generators (default: largest index
        /// in the input).
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        d: Option<u32>,
    },
    /// Graded dimension from the exact oracle, as a JSON record.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        #[command(flatten)]
        oracle: OracleOpts,
    },
    /// Reproduce a reference table as CSV.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        which: u8,
    },
    /// Per-cell comparison of every method, with discrepancy flags.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w_max: u32,
        #[command(flatten)]
        oracle: OracleOpts,
    },
    /// Total, nonbasic and partial nonbasic counts at one cell.
    Breakdown {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        w: u32,
        /// Method supplying the basic counts.
        #[arg(long, default_value = "ORACLE")]
        source: String,
        #[command(flatten)]
        oracle: OracleOpts,
    },
    /// Dimension of F^i / F^(i+c).
    Lcs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value = "ORACLE")]
        source: String,
        #[command(flatten)]
        oracle: OracleOpts,
    },
}

fn method(tag: &str) -> Result<Method> {
    Method::from_tag(tag).ok_or_else(|| {
        let known: Vec<&str> = Method::ALL.iter().map(|m| m.tag()).collect();
        anyhow!(
            "unknown method {tag:?}; expected one of {}",
            known.join(", ")
        )
    })
}

fn integer_source(
    evaluator: &Evaluator,
    source: Method,
    n: usize,
    d: u32,
) -> impl FnMut(u32) -> Result<nlie::BigInt, counting::CountError> + '_ {
    move |k| match evaluator.evaluate(source, n, d, k) {
        Ok(v) => {
            let q = v.as_rational();
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(counting::CountError::InvalidParameters(format!(
                    "{source} gave non-integer {q} at w={k}"
                )))
            }
        }
        Err(nlie::Error::Count(e)) => Err(e),
        Err(e) => Err(counting::CountError::InvalidParameters(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Count {
            n,
            d,
            w,
            method: tag,
            oracle,
        } => {
            let m = method(&tag)?;
            let v = oracle.evaluator()?.evaluate(m, n, d, w)?;
            writeln!(out, "{v}")?;
            eprintln!("method: {m}");
        }
        Command::Enumerate {
            n,
            d,
            w,
            mode,
            format,
            cap,
        } => {
            for b in nlie::enumerate_basic_capped(n, d, w, mode.into(), cap)? {
                match format {
                    Format::Text => writeln!(out, "{}", b.term)?,
                    Format::Json => {
                        let rec = serde_json::json!({"term": b.term.to_string(), "weight": b.weight, "length": b.length});
                        writeln!(out, "{rec}")?
                    }
                }
            }
        }
        Command::Rewrite {
            n,
            expr,
            budget,
            verify,
            d,
        } => {
            let t = nlie::parse(&expr, n)?;
            let (lc, trace) = nlie::collect(&t, n, budget)?;
            writeln!(out, "{lc}")?;
            if trace.capped {
                eprintln!("warning: step budget of {budget} exhausted; output may contain non-basic terms");
            }
            if verify {
                let d = d.unwrap_or_else(|| t.max_generator());
                let diff = LinearCombination::from_term(&t).minus(&lc);
                let ok = oracle::membership(&diff, n, d)?;
                eprintln!("verified: {ok}");
                if !ok {
                    bail!("input and output differ modulo the relations");
                }
            }
        }
        Command::Oracle {
            n,
            d,
            w,
            oracle: opts,
        } => {
            let cell = match opts.cache_dir.as_ref().map(OracleCache::new).transpose()? {
                Some(cache) => cache.get_or_compute(n, d, w, opts.ceiling)?,
                None => oracle::graded_dimension_capped(n, d, w, opts.ceiling)?,
            };
            writeln!(out, "{}", serde_json::to_string(&cell)?)?;
        }
        Command::Table { which } => {
            let csv = match which {
                2 => report::table2_csv(),
                3 => report::table3_csv(),
                4 => report::table4_csv(),
                _ => report::table5_csv(),
            };
            out.write_all(csv.as_bytes())?;
        }
        Command::Compare {
            n,
            d,
            w_max,
            oracle,
        } => {
            let rows = report::compare_rows(&oracle.evaluator()?, n, d, w_max)?;
            out.write_all(report::compare_csv(&rows).as_bytes())?;
        }
        Command::Breakdown {
            n,
            d,
            w,
            source,
            oracle,
        } => {
            let m = method(&source)?;
            let evaluator = oracle.evaluator()?;
            let br = counting::nonbasic_breakdown(
                n,
                u64::from(d),
                w,
                integer_source(&evaluator, m, n, d),
            )?;
            let show =
                |v: &Option<nlie::BigInt>| v.as_ref().map_or(String::new(), ToString::to_string);
            let show_b = |v: Option<bool>| v.map_or(String::new(), |b| b.to_string());
            writeln!(out, "n,d,w,source,basic,total,L,L_prime,L_double_prime,L_star,kappa,kappa_matches,L_split_matches")?;
            writeln!(
                out,
                "{n},{d},{w},{m},{},{},{},{},{},{},{},{},{}",
                br.basic,
                br.total,
                br.nonbasic,
                show(&br.l_prime),
                show(&br.l_double_prime),
                show(&br.l_star),
                show(&br.kappa),
                show_b(br.kappa_matches()),
                show_b(br.split_matches()),
            )?;
        }
        Command::Lcs {
            n,
            d,
            i,
            c,
            source,
            oracle,
        } => {
            let m = method(&source)?;
            let evaluator = oracle.evaluator()?;
            let v = counting::lcs_quotient_dim(i, c, integer_source(&evaluator, m, n, d))?;
            writeln!(out, "{v}")?;
            eprintln!("method: {m}");
        }
    }
    out.flush().context("writing output")?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
