//! Text persistence for [`SsCache`], format `shatz-cache/1`.
//!
//! ```text
//! shatz-cache/1
//! genus 2
//! truncation 4
//! poincare 2:1 = 1 4 8 16 32
//! hodge 2:1 = 0,0,1 1,0,2 0,1,2
//! ```
//!
//! Keys are `rank:degree`. Poincare entries list all `N + 1` coefficients;
//! Hodge entries list non-zero `p,q,coefficient` triples. Coefficients are
//! decimal integers of any size. A file whose version, genus or truncation
//! does not match the run is ignored with a warning; a malformed file is
//! ignored with a warning. Loading never fails hard.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use num_bigint::BigInt;

use crate::hn::{BundleClass, CurveContext};
use crate::moduli::{SsCache, SsKey};
use crate::series::{HodgeSeries, TruncatedSeries};

pub const CACHE_VERSION: &str = "shatz-cache/1";

/// Reasons a cache file was not used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheWarning {
    Unreadable(String),
    Version(String),
    GenusMismatch { file: u32, run: u32 },
    TruncationMismatch { file: usize, run: usize },
    Malformed { line: usize, reason: String },
}

impl fmt::Display for CacheWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheWarning::Unreadable(e) => write!(f, "cache unreadable ({e}); starting cold"),
            CacheWarning::Version(v) => write!(
                f,
                "cache version {v:?} is not {CACHE_VERSION:?}; starting cold"
            ),
            CacheWarning::GenusMismatch { file, run } => write!(
                f,
                "cache was built for genus {file}, this run uses genus {run}; starting cold"
            ),
            CacheWarning::TruncationMismatch { file, run } => write!(
                f,
                "cache was built at truncation {file}, this run uses {run}; starting cold"
            ),
            CacheWarning::Malformed { line, reason } => {
                write!(f, "cache malformed at line {line}: {reason}; starting cold")
            }
        }
    }
}

/// Result of loading a cache file: always a usable cache, cold on any warning.
#[derive(Debug)]
pub struct CacheLoad {
    pub cache: SsCache,
    pub warning: Option<CacheWarning>,
}

impl CacheLoad {
    fn cold(warning: Option<CacheWarning>) -> Self {
        CacheLoad {
            cache: SsCache::new(),
            warning,
        }
    }
}

/// Loads `path` for a run with the given genus and truncation. A missing file
/// yields a cold cache without warning.
pub fn cache_load(path: &Path, ctx: CurveContext, truncation: usize) -> CacheLoad {
    match fs::read_to_string(path) {
        Ok(text) => parse_cache(&text, ctx, truncation),
        Err(e) if e.kind() == io::ErrorKind::NotFound => CacheLoad::cold(None),
        Err(e) => CacheLoad::cold(Some(CacheWarning::Unreadable(e.to_string()))),
    }
}

/// Writes every entry of `cache` built for `(ctx, truncation)` to `path`.
pub fn cache_store(
    path: &Path,
    cache: &SsCache,
    ctx: CurveContext,
    truncation: usize,
) -> io::Result<()> {
    let text = render_cache(cache, ctx, truncation);
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

pub fn render_cache(cache: &SsCache, ctx: CurveContext, truncation: usize) -> String {
    let wanted = |k: &SsKey| k.genus == ctx.genus() && k.truncation == truncation;
    let mut out = format!("{CACHE_VERSION}\ngenus {}\ntruncation {truncation}\n", ctx.genus());
    for (key, series) in cache.poincare_entries() {
        if !wanted(&key) {
            continue;
        }
        let coeffs: Vec<String> = series.coeffs().iter().map(BigInt::to_string).collect();
        out.push_str(&format!(
            "poincare {}:{} = {}\n",
            key.rank,
            key.degree,
            coeffs.join(" ")
        ));
    }
    for (key, series) in cache.hodge_entries() {
        if !wanted(&key) {
            continue;
        }
        let terms: Vec<String> = series
            .terms()
            .into_iter()
            .map(|(p, q, c)| format!("{p},{q},{c}"))
            .collect();
        out.push_str(&format!(
            "hodge {}:{} = {}\n",
            key.rank,
            key.degree,
            terms.join(" ")
        ));
    }
    out
}

pub fn parse_cache(text: &str, ctx: CurveContext, truncation: usize) -> CacheLoad {
    match parse_inner(text, ctx, truncation) {
        Ok(cache) => CacheLoad {
            cache,
            warning: None,
        },
        Err(w) => CacheLoad::cold(Some(w)),
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> CacheWarning {
    CacheWarning::Malformed {
        line,
        reason: reason.into(),
    }
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    name: &str,
) -> Result<(usize, &'a str), CacheWarning> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| malformed(0, format!("missing {name} line")))?;
    let value = line
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| malformed(no, format!("expected `{name} <value>`")))?;
    Ok((no, value.trim()))
}

fn parse_inner(text: &str, ctx: CurveContext, truncation: usize) -> Result<SsCache, CacheWarning> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (_, version) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    if version.trim() != CACHE_VERSION {
        return Err(CacheWarning::Version(version.trim().to_string()));
    }
    let (no, genus) = header_value(&mut lines, "genus")?;
    let genus: u32 = genus.parse().map_err(|_| malformed(no, "bad genus"))?;
    if genus != ctx.genus() {
        return Err(CacheWarning::GenusMismatch {
            file: genus,
            run: ctx.genus(),
        });
    }
    let (no, trunc) = header_value(&mut lines, "truncation")?;
    let trunc: usize = trunc.parse().map_err(|_| malformed(no, "bad truncation"))?;
    if trunc != truncation {
        return Err(CacheWarning::TruncationMismatch {
            file: trunc,
            run: truncation,
        });
    }

    let cache = SsCache::new();
    for (no, line) in lines {
        let (head, body) = line
            .split_once(" = ")
            .ok_or_else(|| malformed(no, "expected `<kind> <rank>:<degree> = ...`"))?;
        let (kind, key) = head
            .split_once(' ')
            .ok_or_else(|| malformed(no, "missing key"))?;
        let (rank, degree) = key
            .split_once(':')
            .ok_or_else(|| malformed(no, "key must be rank:degree"))?;
        let rank: u32 = rank.parse().map_err(|_| malformed(no, "bad rank"))?;
        let degree: i64 = degree.parse().map_err(|_| malformed(no, "bad degree"))?;
        let class = BundleClass::new(rank, degree).map_err(|e| malformed(no, e.to_string()))?;
        let key = SsKey::new(class, ctx, truncation);
        match kind {
            "poincare" => {
                let coeffs = body
                    .split_whitespace()
                    .map(|c| c.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| malformed(no, "bad coefficient"))?;
                if coeffs.len() != truncation + 1 {
                    return Err(malformed(
                        no,
                        format!("expected {} coefficients, got {}", truncation + 1, coeffs.len()),
                    ));
                }
                cache.insert_poincare(key, TruncatedSeries::from_coeffs(coeffs));
            }
            "hodge" => {
                let mut terms = Vec::new();
                for triple in body.split_whitespace() {
                    let parts: Vec<&str> = triple.split(',').collect();
                    let [p, q, c] = parts[..] else {
                        return Err(malformed(no, "hodge term must be p,q,coefficient"));
                    };
                    let p: usize = p.parse().map_err(|_| malformed(no, "bad p"))?;
                    let q: usize = q.parse().map_err(|_| malformed(no, "bad q"))?;
                    let c: BigInt = c.parse().map_err(|_| malformed(no, "bad coefficient"))?;
                    if p + q > truncation {
                        return Err(malformed(no, "term above truncation"));
                    }
                    terms.push((p, q, c));
                }
                cache.insert_hodge(key, HodgeSeries::from_terms(truncation, terms));
            }
            other => return Err(malformed(no, format!("unknown entry kind {other:?}"))),
        }
    }
    Ok(cache)
}
