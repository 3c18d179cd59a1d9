//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (genus below 2),
//! 3 verification failure. Data goes to the output stream; warnings and
//! errors go to the diagnostic stream only.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::cache_file::{cache_load, cache_store};
use crate::error::Error;
use crate::hn::{enumerate_hn_types, BundleClass, CurveContext, HnType};
use crate::moduli::{
    bun_hodge_poincare, bun_poincare, ss_hodge_poincare, ss_poincare, verify_strata_identity,
    SsCache, StrataReport,
};
use crate::series::{HodgeSeries, TruncatedSeries};
use crate::stable::{moduli_hodge, ModuliNumbers, RangeMode};

/// Largest accepted `--trunc` and `--max-codim`.
pub const MAX_TRUNCATION: usize = 200;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "SHATZ_CACHE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Bun,
    Ss,
    Stable,
    Strata,
    Verify,
}

/// A parsed command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub truncation: usize,
    pub max_codim: u64,
    pub hodge: bool,
    pub conservative: bool,
    pub format: Format,
    pub cache_path: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "shatz",
    version,
    about = "Exact Poincare and Hodge-Poincare series for moduli of vector bundles on a curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Series of the whole moduli stack (closed product formula).
    Bun(Common),
    /// Series of the semistable locus (stratification recursion).
    Ss(Common),
    /// Betti (and Hodge) numbers of the stable moduli space in the valid range.
    Stable(Common),
    /// Harder-Narasimhan types up to a codimension bound.
    Strata(Common),
    /// Reassemble the stratification identity and report the residual.
    Verify(Common),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    rank: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    degree: i64,
    #[arg(long)]
    genus: u32,
    #[arg(long = "trunc", default_value_t = 12)]
    truncation: usize,
    #[arg(long, default_value_t = 12)]
    max_codim: u64,
    /// Two-variable Hodge-Poincare output.
    #[arg(long)]
    hodge: bool,
    /// Use the range bound 2(r-1)(g-1) - 1 instead of 2(r-1)(g-1).
    #[arg(long)]
    conservative: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cache file; defaults to $SHATZ_CACHE.
    #[arg(long = "cache")]
    cache_path: Option<PathBuf>,
}

/// Parses arguments (including the program name). The cache path falls back
/// to `$SHATZ_CACHE` when `--cache` is absent.
pub fn parse_args<I, T>(args: I) -> Result<Invocation, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, c) = match cli.command {
        Sub::Bun(c) => (Command::Bun, c),
        Sub::Ss(c) => (Command::Ss, c),
        Sub::Stable(c) => (Command::Stable, c),
        Sub::Strata(c) => (Command::Strata, c),
        Sub::Verify(c) => (Command::Verify, c),
    };
    let cache_path = c
        .cache_path
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
    Ok(Invocation {
        command,
        rank: c.rank,
        degree: c.degree,
        genus: c.genus,
        truncation: c.truncation,
        max_codim: c.max_codim,
        hodge: c.hodge,
        conservative: c.conservative,
        format: c.format,
        cache_path,
    })
}

/// Runs an invocation, writing data to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(inv, out, err) {
        Ok(code) => code,
        Err(RunError::Calc(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_domain() {
                EXIT_DOMAIN
            } else {
                EXIT_USAGE
            }
        }
        Err(RunError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum RunError {
    Calc(Error),
    Io(io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Calc(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

fn dispatch(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, RunError> {
    let ctx = CurveContext::new(inv.genus)?;
    let class = BundleClass::new(inv.rank, inv.degree)?;
    if inv.truncation > MAX_TRUNCATION {
        return Err(Error::InvalidArgument(format!(
            "truncation {} exceeds the limit {MAX_TRUNCATION}",
            inv.truncation
        ))
        .into());
    }
    if inv.max_codim > MAX_TRUNCATION as u64 {
        return Err(Error::InvalidArgument(format!(
            "max codimension {} exceeds the limit {MAX_TRUNCATION}",
            inv.max_codim
        ))
        .into());
    }
    let n = inv.truncation;

    match inv.command {
        Command::Bun => {
            if inv.hodge {
                write_hodge(out, &bun_hodge_poincare(class.rank(), ctx, n), inv.format)?;
            } else {
                write_poincare(out, &bun_poincare(class.rank(), ctx, n), inv.format)?;
            }
            Ok(EXIT_OK)
        }
        Command::Ss => {
            let cache = open_cache(inv, ctx, err)?;
            if inv.hodge {
                write_hodge(out, &ss_hodge_poincare(class, ctx, n, &cache), inv.format)?;
            } else {
                write_poincare(out, &ss_poincare(class, ctx, n, &cache), inv.format)?;
            }
            save_cache(inv, &cache, ctx, err);
            Ok(EXIT_OK)
        }
        Command::Stable => {
            let mode = if inv.conservative {
                RangeMode::Conservative
            } else {
                RangeMode::Paper
            };
            let numbers = moduli_hodge(class, ctx, mode);
            write_stable(out, inv, &numbers, mode)?;
            Ok(EXIT_OK)
        }
        Command::Strata => {
            let types = enumerate_hn_types(class, ctx, inv.max_codim);
            write_strata(out, inv, &types)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let cache = open_cache(inv, ctx, err)?;
            let report = verify_strata_identity(class, ctx, n, &cache);
            write_verify(out, inv, &report)?;
            save_cache(inv, &cache, ctx, err);
            if report.pass {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(err, "verification failed: residual is non-zero");
                Ok(EXIT_VERIFY_FAILED)
            }
        }
    }
}

fn open_cache(inv: &Invocation, ctx: CurveContext, err: &mut dyn Write) -> io::Result<SsCache> {
    let Some(path) = &inv.cache_path else {
        return Ok(SsCache::new());
    };
    let load = cache_load(path, ctx, inv.truncation);
    if let Some(w) = load.warning {
        writeln!(err, "warning: {}: {w}", path.display())?;
    }
    Ok(load.cache)
}

fn save_cache(inv: &Invocation, cache: &SsCache, ctx: CurveContext, err: &mut dyn Write) {
    if let Some(path) = &inv.cache_path {
        if let Err(e) = cache_store(path, cache, ctx, inv.truncation) {
            let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
        }
    }
}

#[derive(Serialize)]
struct PoincareDoc {
    kind: &'static str,
    vars: [&'static str; 1],
    truncation: usize,
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct HodgeDoc {
    kind: &'static str,
    vars: [&'static str; 2],
    truncation: usize,
    terms: Vec<(usize, usize, String)>,
}

/// Serializes a one-variable series.
pub fn render_poincare(series: &TruncatedSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{series}\n"),
        Format::Json => {
            let doc = PoincareDoc {
                kind: "poincare",
                vars: ["t"],
                truncation: series.truncation(),
                coeffs: series.coeffs().iter().map(BigInt::to_string).collect(),
            };
            json_line(&doc)
        }
        Format::Csv => series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{i},{c}\n"))
            .collect(),
    }
}

/// Serializes a two-variable series.
pub fn render_hodge(series: &HodgeSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{series}\n"),
        Format::Json => json_line(&HodgeDoc {
            kind: "hodge_poincare",
            vars: ["x", "y"],
            truncation: series.truncation(),
            terms: hodge_triples(series.terms()),
        }),
        Format::Csv => series
            .terms()
            .into_iter()
            .map(|(p, q, c)| format!("{p},{q},{c}\n"))
            .collect(),
    }
}

fn hodge_triples(terms: Vec<(usize, usize, &BigInt)>) -> Vec<(usize, usize, String)> {
    terms
        .into_iter()
        .map(|(p, q, c)| (p, q, c.to_string()))
        .collect()
}

fn json_line<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn write_poincare(out: &mut dyn Write, s: &TruncatedSeries, f: Format) -> io::Result<()> {
    out.write_all(render_poincare(s, f).as_bytes())
}

fn write_hodge(out: &mut dyn Write, s: &HodgeSeries, f: Format) -> io::Result<()> {
    out.write_all(render_hodge(s, f).as_bytes())
}

const EMPTY_RANGE_NOTE: &str = "valid range is empty for rank 1";

#[derive(Serialize)]
struct StableDoc {
    kind: &'static str,
    rank: u32,
    degree: i64,
    genus: u32,
    bound: u64,
    mode: &'static str,
    pure: bool,
    betti: Vec<(usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hodge: Option<Vec<(usize, usize, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn write_stable(
    out: &mut dyn Write,
    inv: &Invocation,
    numbers: &ModuliNumbers,
    mode: RangeMode,
) -> io::Result<()> {
    let empty = numbers.bound_used == 0;
    let mode_name = match mode {
        RangeMode::Paper => "paper",
        RangeMode::Conservative => "conservative",
    };
    match inv.format {
        Format::Json => {
            let doc = StableDoc {
                kind: "moduli_numbers",
                rank: inv.rank,
                degree: inv.degree,
                genus: inv.genus,
                bound: numbers.bound_used,
                mode: mode_name,
                pure: numbers.pure,
                betti: numbers
                    .betti
                    .iter()
                    .map(|(&i, b)| (i, b.to_string()))
                    .collect(),
                hodge: inv.hodge.then(|| hodge_triples(numbers.hodge_terms())),
                note: empty.then_some(EMPTY_RANGE_NOTE),
            };
            out.write_all(json_line(&doc).as_bytes())
        }
        Format::Csv => {
            if inv.hodge {
                for (p, q, h) in numbers.hodge_terms() {
                    writeln!(out, "{p},{q},{h}")?;
                }
            } else {
                for (i, b) in &numbers.betti {
                    writeln!(out, "{i},{b}")?;
                }
            }
            Ok(())
        }
        Format::Text => {
            writeln!(
                out,
                "# stable moduli, rank {} degree {} genus {}: degrees i < {} ({mode_name} bound)",
                inv.rank, inv.degree, inv.genus, numbers.bound_used
            )?;
            writeln!(out, "i\tb_i")?;
            for (i, b) in &numbers.betti {
                writeln!(out, "{i}\t{b}")?;
            }
            if inv.hodge {
                writeln!(out, "p\tq\th^pq")?;
                for (p, q, h) in numbers.hodge_terms() {
                    writeln!(out, "{p}\t{q}\t{h}")?;
                }
            }
            if empty {
                writeln!(out, "# {EMPTY_RANGE_NOTE}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct StrataEntry {
    vertices: Vec<(u32, i64)>,
    segments: Vec<(u32, i64)>,
    codim: u64,
}

#[derive(Serialize)]
struct StrataDoc {
    kind: &'static str,
    rank: u32,
    degree: i64,
    genus: u32,
    max_codim: u64,
    types: Vec<StrataEntry>,
}

fn write_strata(out: &mut dyn Write, inv: &Invocation, types: &[(HnType, u64)]) -> io::Result<()> {
    match inv.format {
        Format::Json => {
            let doc = StrataDoc {
                kind: "strata",
                rank: inv.rank,
                degree: inv.degree,
                genus: inv.genus,
                max_codim: inv.max_codim,
                types: types
                    .iter()
                    .map(|(ty, codim)| StrataEntry {
                        vertices: ty.vertices(),
                        segments: ty.segments().iter().map(|s| (s.rank, s.degree)).collect(),
                        codim: *codim,
                    })
                    .collect(),
            };
            out.write_all(json_line(&doc).as_bytes())
        }
        Format::Csv => {
            for (ty, codim) in types {
                let segs: Vec<String> = ty
                    .segments()
                    .iter()
                    .map(|s| format!("{}:{}", s.rank, s.degree))
                    .collect();
                writeln!(out, "{codim},{}", segs.join(";"))?;
            }
            Ok(())
        }
        Format::Text => {
            for (ty, codim) in types {
                let verts: Vec<String> = ty
                    .vertices()
                    .iter()
                    .map(|(r, d)| format!("({r},{d})"))
                    .collect();
                writeln!(out, "codim {codim}\tvertices {}\tsegments {ty}", verts.join(" "))?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    kind: &'static str,
    rank: u32,
    degree: i64,
    genus: u32,
    truncation: usize,
    pass: bool,
    strata: usize,
    residual: Vec<String>,
}

fn write_verify(out: &mut dyn Write, inv: &Invocation, report: &StrataReport) -> io::Result<()> {
    match inv.format {
        Format::Json => {
            let doc = VerifyDoc {
                kind: "verify",
                rank: inv.rank,
                degree: inv.degree,
                genus: inv.genus,
                truncation: inv.truncation,
                pass: report.pass,
                strata: report.strata_used,
                residual: report.residual.coeffs().iter().map(BigInt::to_string).collect(),
            };
            out.write_all(json_line(&doc).as_bytes())
        }
        Format::Csv => out.write_all(render_poincare(&report.residual, Format::Csv).as_bytes()),
        Format::Text => writeln!(out, "residual = {}", report.residual),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["shatz"];
        argv.extend_from_slice(args);
        let inv = parse_args(argv).expect("parses");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&inv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn serialize_examples() {
        let s = TruncatedSeries::from_i64s(&[1, 4, 7]);
        assert_eq!(render_poincare(&s, Format::Csv), "0,1\n1,4\n2,7\n");
        let h = HodgeSeries::monomial(1, 1, 5.into(), 2);
        assert_eq!(
            render_hodge(&h, Format::Json),
            "{\"kind\":\"hodge_poincare\",\"vars\":[\"x\",\"y\"],\"truncation\":2,\"terms\":[[1,1,\"5\"]]}\n"
        );
        let s = TruncatedSeries::from_i64s(&[1, 0, 1]);
        assert_eq!(render_poincare(&s, Format::Text), "1 + t^2\n");
    }

    #[test]
    fn genus_below_two_is_a_domain_error() {
        let (code, out, err) = run_args(&["bun", "--rank", "2", "--genus", "1"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(out.is_empty());
        assert!(err.contains("genus"));
    }

    #[test]
    fn zero_rank_and_oversized_truncation_are_usage_errors() {
        assert_eq!(run_args(&["bun", "--rank", "0", "--genus", "2"]).0, EXIT_USAGE);
        let (code, out, _) = run_args(&["bun", "--rank", "2", "--genus", "2", "--trunc", "201"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
    }

    #[test]
    fn negative_degrees_parse() {
        let inv = parse_args(["shatz", "ss", "--rank", "2", "--degree", "-3", "--genus", "2"]).unwrap();
        assert_eq!(inv.degree, -3);
        assert_eq!(inv.command, Command::Ss);
    }

    #[test]
    fn strata_lists_types_in_order() {
        let (code, out, _) = run_args(&[
            "strata", "--rank", "2", "--degree", "1", "--genus", "2", "--max-codim", "4",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "codim 2\tvertices (0,0) (1,1) (2,1)\tsegments [(1,1),(1,0)]\n\
             codim 4\tvertices (0,0) (1,2) (2,1)\tsegments [(1,2),(1,-1)]\n"
        );
    }
}
