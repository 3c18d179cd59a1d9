//! Independent reference computations for the integration tests.
//!
//! Nothing here calls into the library's series arithmetic or enumeration:
//! polynomials are plain `Vec<BigInt>`, powers are taken by repeated
//! multiplication, inverses by long division, and Harder-Narasimhan types by
//! exhaustive search over a degree window.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;

pub type Poly = Vec<BigInt>;

pub fn poly(c: &[i64]) -> Poly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

/// Product of two polynomials, keeping degrees `<= n`.
pub fn mul_trunc(a: &Poly, b: &Poly, n: usize) -> Poly {
    let mut out = vec![BigInt::zero(); n + 1];
    for i in 0..a.len().min(n + 1) {
        for j in 0..b.len() {
            if i + j > n {
                break;
            }
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `(1 + c t^a)^m` by `m` repeated multiplications.
pub fn one_plus_pow(a: usize, c: i64, m: u32, n: usize) -> Poly {
    let mut factor = vec![BigInt::zero(); a + 1];
    factor[0] = 1.into();
    factor[a] += c;
    let mut out = poly(&[1]);
    for _ in 0..m {
        out = mul_trunc(&out, &factor, n);
    }
    out.resize(n + 1, BigInt::zero());
    out
}

/// Power series quotient `num / den` up to degree `n`, for `den[0] = 1`.
pub fn divide(num: &Poly, den: &Poly, n: usize) -> Poly {
    assert_eq!(den[0], BigInt::from(1));
    let mut q = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        let mut v = num.get(i).cloned().unwrap_or_default();
        for j in 1..den.len().min(i + 1) {
            v -= &den[j] * &q[i - j];
        }
        q[i] = v;
    }
    q
}

/// The stack series: numerator and denominator expanded separately, then
/// divided.
pub fn oracle_bun(r: usize, g: u32, n: usize) -> Poly {
    let mut num = poly(&[1]);
    for j in 1..=r {
        num = mul_trunc(&num, &one_plus_pow(2 * j - 1, 1, 2 * g, n), n);
    }
    let mut den = one_plus_pow(2 * r, -1, 1, n);
    for j in 1..r {
        den = mul_trunc(&den, &one_plus_pow(2 * j, -1, 2, n), n);
    }
    divide(&num, &den, n)
}

/// Coarse moduli series of rank 2, degree 1:
/// `(1+t)^{2g} [(1+t^3)^{2g} - t^{2g} (1+t)^{2g}] / ((1-t^2)(1-t^4))`.
pub fn oracle_rank2_coprime(g: u32, n: usize) -> Poly {
    let a = one_plus_pow(1, 1, 2 * g, n);
    let b = one_plus_pow(3, 1, 2 * g, n);
    let mut shifted = vec![BigInt::zero(); n + 1];
    for (i, c) in a.iter().enumerate() {
        if i + 2 * g as usize <= n {
            shifted[i + 2 * g as usize] = c.clone();
        }
    }
    let bracket: Poly = b.iter().zip(&shifted).map(|(x, y)| x - y).collect();
    let num = mul_trunc(&a, &bracket, n);
    let den = mul_trunc(&one_plus_pow(2, -1, 1, n), &one_plus_pow(4, -1, 1, n), n);
    divide(&num, &den, n)
}

/// Codimension written straight from `sum_{i<j} r_i r_j (mu_i - mu_j + g - 1)`
/// over segments, with the slopes kept as exact fractions over
/// `r_i r_j`.
pub fn oracle_codim(segs: &[(u32, i64)], g: u32) -> i64 {
    let mut total = 0i64;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (ri, di) = (segs[i].0 as i64, segs[i].1);
            let (rj, dj) = (segs[j].0 as i64, segs[j].1);
            // r_i r_j (d_i/r_i - d_j/r_j) = d_i r_j - d_j r_i
            total += di * rj - dj * ri + ri * rj * (g as i64 - 1);
        }
    }
    total
}

/// All segment lists for `(r, d)` with at least two segments, strictly
/// decreasing slopes, degrees in `|d_i| <= |d| + cmax`, and codimension at
/// most `cmax`, found by exhaustive search.
pub fn brute_force_types(r: u32, d: i64, g: u32, cmax: i64) -> Vec<(Vec<(u32, i64)>, i64)> {
    let window = d.abs() + cmax;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(
        rem_r: u32,
        rem_d: i64,
        window: i64,
        g: u32,
        cmax: i64,
        prefix: &mut Vec<(u32, i64)>,
        out: &mut Vec<(Vec<(u32, i64)>, i64)>,
    ) {
        if rem_r == 0 {
            if rem_d != 0 || prefix.len() < 2 {
                return;
            }
            let descending = prefix
                .windows(2)
                .all(|w| w[0].1 * w[1].0 as i64 > w[1].1 * w[0].0 as i64);
            if descending {
                let c = oracle_codim(prefix, g);
                if c <= cmax {
                    out.push((prefix.clone(), c));
                }
            }
            return;
        }
        for rr in 1..=rem_r {
            for dd in -window..=window {
                prefix.push((rr, dd));
                rec(rem_r - rr, rem_d - dd, window, g, cmax, prefix, out);
                prefix.pop();
            }
        }
    }
    rec(r, d, window, g, cmax, &mut prefix, &mut out);
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}
