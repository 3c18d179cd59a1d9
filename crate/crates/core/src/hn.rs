//! Harder-Narasimhan types (Shatz polygons) and their stratum codimensions.
//!
//! A type for a class `(r, d)` is a concave lattice path from `(0, 0)` to
//! `(r, d)`, stored as its segments `(r'_i, d'_i)` with strictly decreasing
//! slopes. All slope comparisons are done by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Rank and degree of a moduli problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleClass {
    rank: u32,
    degree: i64,
}

impl BundleClass {
    pub fn new(rank: u32, degree: i64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(BundleClass { rank, degree })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
}

/// The genus of the base curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveContext {
    genus: u32,
}

impl CurveContext {
    pub fn new(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        Ok(CurveContext { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }
}

/// One segment of a Shatz polygon: rank and degree increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub rank: u32,
    pub degree: i64,
}

impl Segment {
    pub fn new(rank: u32, degree: i64) -> Self {
        Segment { rank, degree }
    }

    /// Compares slopes `degree / rank` exactly.
    pub fn cmp_slope(&self, other: &Segment) -> Ordering {
        let lhs = self.degree as i128 * other.rank as i128;
        let rhs = other.degree as i128 * self.rank as i128;
        lhs.cmp(&rhs)
    }
}

/// A Harder-Narasimhan type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnType {
    segments: Vec<Segment>,
}

impl HnType {
    /// Builds a type from its vertex list `(0,0), (r_1,d_1), ..., (r,d)`.
    pub fn from_vertices(vertices: &[(u32, i64)]) -> Result<Self> {
        match vertices.first() {
            Some(&(0, 0)) => {}
            Some(v) => {
                return Err(Error::BadVertices(format!(
                    "first vertex must be (0, 0), got {v:?}"
                )))
            }
            None => return Err(Error::BadVertices("empty vertex list".into())),
        }
        if vertices.len() < 2 {
            return Err(Error::BadVertices("need at least two vertices".into()));
        }
        let segments = vertices
            .windows(2)
            .map(|w| {
                let ((r0, d0), (r1, d1)) = (w[0], w[1]);
                if r1 <= r0 {
                    return Err(Error::BadVertices(format!(
                        "ranks must strictly increase, got {r0} then {r1}"
                    )));
                }
                Ok(Segment::new(r1 - r0, d1 - d0))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_segments(segments)
    }

    /// Builds a type from segments, checking strict slope descent.
    pub fn from_segments(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::BadVertices("no segments".into()));
        }
        if segments.iter().any(|s| s.rank == 0) {
            return Err(Error::BadVertices("segment of rank zero".into()));
        }
        if segments
            .windows(2)
            .any(|w| w[0].cmp_slope(&w[1]) != Ordering::Greater)
        {
            return Err(Error::NonDecreasingSlopes);
        }
        Ok(HnType { segments })
    }

    /// The single-segment type of the semistable stratum.
    pub fn trivial(class: BundleClass) -> Self {
        HnType {
            segments: vec![Segment::new(class.rank, class.degree)],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_trivial(&self) -> bool {
        self.segments.len() == 1
    }

    pub fn class(&self) -> BundleClass {
        BundleClass {
            rank: self.segments.iter().map(|s| s.rank).sum(),
            degree: self.segments.iter().map(|s| s.degree).sum(),
        }
    }

    /// Cumulative vertices, starting at `(0, 0)`.
    pub fn vertices(&self) -> Vec<(u32, i64)> {
        let mut out = vec![(0, 0)];
        let (mut r, mut d) = (0, 0);
        for s in &self.segments {
            r += s.rank;
            d += s.degree;
            out.push((r, d));
        }
        out
    }

    /// Codimension `d_P` of the stratum, evaluated on segment data:
    /// `sum_{i<j} (r'_j d'_i - r'_i d'_j) + (g - 1) r'_i r'_j`.
    pub fn codim(&self, ctx: CurveContext) -> u64 {
        let g1 = ctx.genus as i128 - 1;
        let mut total: i128 = 0;
        for (i, a) in self.segments.iter().enumerate() {
            for b in &self.segments[i + 1..] {
                total += pair_term(a, b, g1);
            }
        }
        // Strict slope descent makes every pair term positive.
        u64::try_from(total).expect("codimension is non-negative")
    }

    /// Value of the polygon at integer abscissa `x` as an exact fraction
    /// `(numerator, denominator)` with positive denominator.
    fn value_at(&self, x: u32) -> (i128, i128) {
        let (mut r, mut d) = (0u32, 0i64);
        for s in &self.segments {
            if x <= r + s.rank {
                let num = d as i128 * s.rank as i128 + (x - r) as i128 * s.degree as i128;
                return (num, s.rank as i128);
            }
            r += s.rank;
            d += s.degree;
        }
        (d as i128, 1)
    }

    /// Partial order: `self` lies on or below `other` on `[0, r]`.
    pub fn leq(&self, other: &HnType) -> Result<bool> {
        let (a, b) = (self.class(), other.class());
        if a != b {
            return Err(Error::ClassMismatch(a.rank, a.degree, b.rank, b.degree));
        }
        // Breakpoints are integers, so integer abscissae suffice.
        Ok((0..=a.rank).all(|x| {
            let (p, q) = self.value_at(x);
            let (u, v) = other.value_at(x);
            p * v <= u * q
        }))
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("({},{})", s.rank, s.degree))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn pair_term(a: &Segment, b: &Segment, g1: i128) -> i128 {
    let (ra, da) = (a.rank as i128, a.degree as i128);
    let (rb, db) = (b.rank as i128, b.degree as i128);
    rb * da - ra * db + g1 * ra * rb
}

/// All non-trivial types of `class` with codimension at most `max_codim`,
/// sorted by `(codim, segments)`.
///
/// Segments are chosen left to right. With a prefix fixed and the remainder
/// treated as one lump `(R, D)`, the codimension of any completion is at least
/// the codimension of prefix-plus-lump; appending a segment `(rho, delta)`
/// raises that bound by `delta R - rho D + (g-1) rho (R - rho)`, which grows with
/// `delta`, so the degree range of every step is finite.
pub fn enumerate_hn_types(
    class: BundleClass,
    ctx: CurveContext,
    max_codim: u64,
) -> Vec<(HnType, u64)> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(
        &mut prefix,
        class.rank,
        class.degree,
        0,
        ctx.genus as i128 - 1,
        max_codim as i128,
        &mut out,
    );
    let mut out: Vec<(HnType, u64)> = out
        .into_iter()
        .map(|segments| {
            let ty = HnType { segments };
            let c = ty.codim(ctx);
            (ty, c)
        })
        .collect();
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

fn extend(
    prefix: &mut Vec<Segment>,
    rem_rank: u32,
    rem_deg: i64,
    bound: i128,
    g1: i128,
    max_codim: i128,
    out: &mut Vec<Vec<Segment>>,
) {
    let (big_r, big_d) = (rem_rank as i128, rem_deg as i128);
    for rho in 1..=rem_rank {
        if rho == rem_rank {
            // Closing segment; the trivial type is excluded.
            if prefix.is_empty() {
                continue;
            }
            let last = Segment::new(rem_rank, rem_deg);
            if prefix.last().unwrap().cmp_slope(&last) == Ordering::Greater {
                prefix.push(last);
                out.push(prefix.clone());
                prefix.pop();
            }
            continue;
        }
        let rho_i = rho as i128;
        let base = (g1 * rho_i * (big_r - rho_i)) - rho_i * big_d;
        // Smallest delta with delta * R > rho * D.
        let mut delta = (rho_i * big_d).div_euclid(big_r) + 1;
        loop {
            let increment = delta * big_r + base;
            if bound + increment > max_codim {
                break;
            }
            let seg = Segment::new(rho, delta as i64);
            let fits = prefix
                .last()
                .is_none_or(|p| p.cmp_slope(&seg) == Ordering::Greater);
            if fits {
                prefix.push(seg);
                extend(
                    prefix,
                    rem_rank - rho,
                    rem_deg - delta as i64,
                    bound + increment,
                    g1,
                    max_codim,
                    out,
                );
                prefix.pop();
            }
            delta += 1;
        }
    }
}
