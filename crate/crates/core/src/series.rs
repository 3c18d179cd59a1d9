//! Exact truncated power series in one variable `t` and two variables `x, y`.
//!
//! One-variable series are stored densely, two-variable series sparsely and
//! truncated by total degree. Coefficients are arbitrary precision integers.
//! Binary operations require equal truncation orders; a mismatch is an error
//! and never silently re-truncated.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Power series in `t` modulo `t^(N+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, BigInt::one(), truncation)
    }

    /// `c * t^k`, or zero when `k` exceeds the truncation.
    pub fn monomial(k: usize, c: BigInt, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from its coefficient list; the truncation is
    /// `coeffs.len() - 1`. Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1 + t^a)^m` truncated at `N`.
    pub fn binomial_power(a: usize, m: u32, truncation: usize) -> Self {
        assert!(a >= 1, "exponent of t must be positive");
        let mut s = Self::zero(truncation);
        // Running binomial(m, k) via the multiplicative recurrence.
        let mut binom = BigInt::one();
        for k in 0..=m as usize {
            let deg = a * k;
            if deg > truncation {
                break;
            }
            s.coeffs[deg] = binom.clone();
            binom = binom * BigInt::from(m as usize - k) / BigInt::from(k + 1);
        }
        s
    }

    /// `1 / (1 - t^a)` truncated at `N`.
    pub fn geometric_inverse(a: usize, truncation: usize) -> Self {
        assert!(a >= 1, "exponent of t must be positive");
        let mut s = Self::zero(truncation);
        for deg in (0..=truncation).step_by(a) {
            s.coeffs[deg] = BigInt::one();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coefficient(&self, index: usize) -> Result<&BigInt> {
        self.coeffs.get(index).ok_or(Error::IndexOutOfRange {
            index,
            truncation: self.truncation(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch {
                lhs: self.truncation(),
                rhs: other.truncation(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.truncation();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplication by `t^k`; terms pushed past the truncation are dropped.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > n {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// Explicit re-truncation to a lower order.
    pub fn truncate(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation() {
            return Err(Error::TruncationMismatch {
                lhs: self.truncation(),
                rhs: truncation,
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=truncation].to_vec(),
        })
    }

    /// Multiplies a sequence of factors, starting from `1`.
    pub fn product<'a, I>(truncation: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TruncatedSeries>,
    {
        factors
            .into_iter()
            .try_fold(Self::one(truncation), |acc, f| acc.mul(f))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial_name(&[("t", i)])));
        write_polynomial(f, terms)
    }
}

/// Power series in `x, y` modulo all monomials of total degree `> N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HodgeSeries {
    truncation: usize,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl HodgeSeries {
    pub fn zero(truncation: usize) -> Self {
        HodgeSeries {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, 0, BigInt::one(), truncation)
    }

    /// `c * x^p y^q`, or zero when `p + q` exceeds the truncation.
    pub fn monomial(p: usize, q: usize, c: BigInt, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.insert(p, q, c);
        s
    }

    /// Builds a series from `(p, q, coefficient)` triples; repeated keys add up
    /// and terms above the truncation are discarded.
    pub fn from_terms<I>(truncation: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut s = Self::zero(truncation);
        for (p, q, c) in terms {
            s.insert(p, q, c);
        }
        s
    }

    fn insert(&mut self, p: usize, q: usize, c: BigInt) {
        if p + q > self.truncation || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    /// `(1 + x^p y^q)^m` truncated at total degree `N`.
    pub fn binomial_power(p: usize, q: usize, m: u32, truncation: usize) -> Self {
        assert!(p + q >= 1, "monomial must be non-constant");
        let mut s = Self::zero(truncation);
        let mut binom = BigInt::one();
        for k in 0..=m as usize {
            if (p + q) * k > truncation {
                break;
            }
            s.insert(p * k, q * k, binom.clone());
            binom = binom * BigInt::from(m as usize - k) / BigInt::from(k + 1);
        }
        s
    }

    /// `1 / (1 - x^p y^q)` truncated at total degree `N`.
    pub fn geometric_inverse(p: usize, q: usize, truncation: usize) -> Self {
        assert!(p + q >= 1, "monomial must be non-constant");
        let mut s = Self::zero(truncation);
        let mut k = 0;
        while (p + q) * k <= truncation {
            s.insert(p * k, q * k, BigInt::one());
            k += 1;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Coefficient of `x^p y^q`; zero for absent keys inside the truncation.
    pub fn coefficient(&self, p: usize, q: usize) -> Result<BigInt> {
        if p + q > self.truncation {
            return Err(Error::IndexOutOfRange {
                index: p + q,
                truncation: self.truncation,
            });
        }
        Ok(self.terms.get(&(p, q)).cloned().unwrap_or_default())
    }

    /// Non-zero terms ordered by ascending total degree, then ascending `p`.
    pub fn terms(&self) -> Vec<(usize, usize, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().map(|(&(p, q), c)| (p, q, c)).collect();
        out.sort_by_key(|&(p, q, _)| (p + q, p));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch {
                lhs: self.truncation,
                rhs: other.truncation,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.insert(p, q, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.insert(p, q, -c);
        }
        Ok(out)
    }

    /// Product discarding every term of total degree above the truncation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.truncation);
        for (&(p, q), a) in &self.terms {
            for (&(s, t), b) in &other.terms {
                if p + q + s + t <= self.truncation {
                    out.insert(p + s, q + t, a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by `x^p y^q`.
    pub fn shift(&self, p: usize, q: usize) -> Self {
        let mut out = Self::zero(self.truncation);
        for (&(a, b), c) in &self.terms {
            out.insert(a + p, b + q, c.clone());
        }
        out
    }

    pub fn truncate(&self, truncation: usize) -> Result<Self> {
        if truncation > self.truncation {
            return Err(Error::TruncationMismatch {
                lhs: self.truncation,
                rhs: truncation,
            });
        }
        let mut out = Self::zero(truncation);
        for (&(p, q), c) in &self.terms {
            out.insert(p, q, c.clone());
        }
        Ok(out)
    }

    pub fn product<'a, I>(truncation: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a HodgeSeries>,
    {
        factors
            .into_iter()
            .try_fold(Self::one(truncation), |acc, f| acc.mul(f))
    }

    /// Specialization `x = y = t`.
    pub fn diagonal(&self) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.truncation);
        for (&(p, q), c) in &self.terms {
            out.coeffs[p + q] += c;
        }
        out
    }

    /// True when `coeff(p, q) == coeff(q, p)` for every term.
    pub fn is_hodge_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(p, q), c)| self.terms.get(&(q, p)) == Some(c))
    }
}

impl fmt::Display for HodgeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms()
            .into_iter()
            .map(|(p, q, c)| (c.clone(), monomial_name(&[("x", p), ("y", q)])));
        write_polynomial(f, terms)
    }
}

fn monomial_name(vars: &[(&str, usize)]) -> String {
    vars.iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect()
}

fn write_polynomial<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigInt, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let magnitude = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mono.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{magnitude}{mono}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
