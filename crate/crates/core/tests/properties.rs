mod common;

use std::sync::Arc;
use std::thread;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use common::{brute_force_types, oracle_bun, oracle_codim};
use shatz::{
    bun_hodge_poincare, bun_poincare, enumerate_hn_types, moduli_betti, moduli_hodge,
    ss_hodge_poincare, ss_poincare, stable_range_bound, stable::betti_from_series, BundleClass,
    CurveContext, HnType, HodgeSeries, RangeMode, SsCache, TruncatedSeries,
};

fn ctx(g: u32) -> CurveContext {
    CurveContext::new(g).unwrap()
}

fn class(r: u32, d: i64) -> BundleClass {
    BundleClass::new(r, d).unwrap()
}

fn series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-1000i64..1000, n + 1).prop_map(|c| TruncatedSeries::from_i64s(&c))
}

fn hodge(n: usize) -> impl Strategy<Value = HodgeSeries> {
    prop::collection::vec((0..=n, 0..=n, -50i64..50), 0..12).prop_map(move |terms| {
        HodgeSeries::from_terms(
            n,
            terms
                .into_iter()
                .filter(|(p, q, _)| p + q <= n)
                .map(|(p, q, c)| (p, q, BigInt::from(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn series_ring_laws((a, b, c) in (0usize..8).prop_flat_map(|n| (series(n), series(n), series(n)))) {
        let n = a.truncation();
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&TruncatedSeries::one(n)).unwrap(), a.clone());
        prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }

    #[test]
    fn diagonal_is_a_ring_homomorphism((a, b) in (0usize..7).prop_flat_map(|n| (hodge(n), hodge(n)))) {
        prop_assert_eq!(
            a.mul(&b).unwrap().diagonal(),
            a.diagonal().mul(&b.diagonal()).unwrap()
        );
        prop_assert_eq!(
            a.add(&b).unwrap().diagonal(),
            a.diagonal().add(&b.diagonal()).unwrap()
        );
    }

    #[test]
    fn hodge_mul_commutes((a, b) in (0usize..7).prop_flat_map(|n| (hodge(n), hodge(n)))) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }
}

#[test]
fn geometric_inverse_inverts_one_minus_t_a() {
    for n in 1..=16 {
        for a in 1..=n {
            let one_minus = TruncatedSeries::one(n)
                .sub(&TruncatedSeries::monomial(a, 1.into(), n))
                .unwrap();
            let prod = TruncatedSeries::geometric_inverse(a, n).mul(&one_minus).unwrap();
            assert_eq!(prod, TruncatedSeries::one(n), "a={a} n={n}");
        }
    }
}

#[test]
fn coefficients_exceed_machine_words() {
    // Independent oracle agrees coefficient for coefficient at a size where
    // 64-bit arithmetic would overflow.
    let s = bun_poincare(3, ctx(20), 40);
    assert_eq!(s.coeffs(), oracle_bun(3, 20, 40).as_slice());
    let max = s.coeffs().iter().max().unwrap();
    assert!(*max > BigInt::from(u64::MAX), "max coefficient {max}");
}

#[test]
fn bun_poincare_matches_oracle_expansion() {
    for r in 1..=4 {
        for g in 2..=4 {
            assert_eq!(bun_poincare(r, ctx(g), 16).coeffs(), oracle_bun(r as usize, g, 16).as_slice());
        }
    }
}

fn types_for(r: u32, d: i64) -> impl Strategy<Value = HnType> {
    // Genus 2 has the smallest codimensions, so this covers every type that
    // appears at higher genus with the same bound.
    let mut all: Vec<HnType> = enumerate_hn_types(class(r, d), ctx(2), 16)
        .into_iter()
        .map(|(ty, _)| ty)
        .collect();
    all.push(HnType::trivial(class(r, d)));
    prop::sample::select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn polygon_order_is_a_partial_order(
        (p, q, s) in (2u32..=4, -2i64..=2).prop_flat_map(|(r, d)| (types_for(r, d), types_for(r, d), types_for(r, d)))
    ) {
        prop_assert!(p.leq(&p).unwrap());
        if p.leq(&q).unwrap() && q.leq(&p).unwrap() {
            prop_assert_eq!(&p, &q);
        }
        if p.leq(&q).unwrap() && q.leq(&s).unwrap() {
            prop_assert!(p.leq(&s).unwrap());
        }
        prop_assert!(HnType::trivial(p.class()).leq(&p).unwrap());
    }

    #[test]
    fn codim_positive_and_integral(ty in (2u32..=4, -3i64..=3).prop_flat_map(|(r, d)| types_for(r, d)), g in 2u32..=5) {
        let c = ty.codim(ctx(g));
        let segs: Vec<(u32, i64)> = ty.segments().iter().map(|s| (s.rank, s.degree)).collect();
        prop_assert_eq!(c as i64, oracle_codim(&segs, g));
        if ty.is_trivial() {
            prop_assert_eq!(c, 0);
        } else {
            prop_assert!(c >= 1);
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for r in 1..=3u32 {
        for d in -3..=3i64 {
            for g in [2, 3] {
                for cmax in 0..=10u64 {
                    let found: Vec<(Vec<(u32, i64)>, i64)> = enumerate_hn_types(class(r, d), ctx(g), cmax)
                        .into_iter()
                        .map(|(ty, c)| {
                            (ty.segments().iter().map(|s| (s.rank, s.degree)).collect(), c as i64)
                        })
                        .collect();
                    assert_eq!(found, brute_force_types(r, d, g, cmax as i64), "r={r} d={d} g={g} cmax={cmax}");
                }
            }
        }
    }
}

#[test]
fn trivial_type_is_the_minimum_of_enumerated_types() {
    for (r, d) in [(2, 1), (3, 0), (3, 2), (4, -1)] {
        let trivial = HnType::trivial(class(r, d));
        for (ty, _) in enumerate_hn_types(class(r, d), ctx(2), 12) {
            assert!(trivial.leq(&ty).unwrap());
            assert!(!ty.leq(&trivial).unwrap());
        }
    }
}

#[test]
fn translation_preserves_codim_multisets() {
    for r in 1..=3u32 {
        for d in -3..=3i64 {
            for g in [2, 3] {
                let codims = |d| -> Vec<u64> {
                    enumerate_hn_types(class(r, d), ctx(g), 12).into_iter().map(|(_, c)| c).collect()
                };
                assert_eq!(codims(d), codims(d + r as i64));
            }
        }
    }
}

#[test]
fn ss_series_translation_invariant() {
    let cache = SsCache::new();
    for r in 1..=3u32 {
        for d in -3..=3i64 {
            for g in [2, 3] {
                for n in [4, 9, 12] {
                    assert_eq!(
                        ss_poincare(class(r, d), ctx(g), n, &cache),
                        ss_poincare(class(r, d + r as i64), ctx(g), n, &cache),
                        "r={r} d={d} g={g} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn series_are_non_negative_and_hodge_symmetric() {
    let cache = SsCache::new();
    for r in 1..=3u32 {
        for d in -3..=3i64 {
            for g in [2, 3] {
                let n = 12;
                assert!(bun_poincare(r, ctx(g), n).coeffs().iter().all(|c| !c.is_negative()));
                assert!(ss_poincare(class(r, d), ctx(g), n, &cache).coeffs().iter().all(|c| !c.is_negative()));
                assert!(bun_hodge_poincare(r, ctx(g), n).is_hodge_symmetric());
                assert!(ss_hodge_poincare(class(r, d), ctx(g), n, &cache).is_hodge_symmetric());
            }
        }
    }
}

#[test]
fn stabilization_under_truncation_extension() {
    let cache = SsCache::new();
    for r in 1..=3u32 {
        for d in 0..r as i64 {
            for g in [2, 3] {
                let low = ss_poincare(class(r, d), ctx(g), 8, &cache);
                let high = ss_poincare(class(r, d), ctx(g), 12, &cache);
                assert_eq!(*low, high.truncate(8).unwrap());
                let low = ss_hodge_poincare(class(r, d), ctx(g), 8, &cache);
                let high = ss_hodge_poincare(class(r, d), ctx(g), 12, &cache);
                assert_eq!(*low, high.truncate(8).unwrap());
                assert_eq!(bun_poincare(r, ctx(g), 8), bun_poincare(r, ctx(g), 12).truncate(8).unwrap());
            }
        }
    }
}

#[test]
fn moduli_numbers_consistent_on_grid() {
    let cache = SsCache::new();
    for r in 1..=3u32 {
        for d in -3..=3i64 {
            for g in [2, 3, 4] {
                let m = moduli_hodge(class(r, d), ctx(g), RangeMode::Paper);
                let bound = stable_range_bound(r, ctx(g)).paper_bound;
                assert_eq!(m.betti.len() as u64, bound);
                for (&i, b) in &m.betti {
                    assert!(!b.is_negative(), "b_{i} negative for r={r} d={d} g={g}");
                    let row: BigInt = m.hodge.iter().filter(|((p, q), _)| p + q == i).map(|(_, h)| h).sum();
                    assert_eq!(&row, b);
                }
                assert!(m.hodge.values().all(|h| !h.is_negative()));
                for (&(p, q), h) in &m.hodge {
                    assert_eq!(m.hodge.get(&(q, p)), Some(h));
                }
                // Feeding the semistable series instead changes nothing in range.
                if bound > 0 {
                    let ss = ss_poincare(class(r, d), ctx(g), bound as usize - 1, &cache);
                    assert_eq!(betti_from_series(&ss, bound), m.betti, "r={r} d={d} g={g}");
                }
                assert_eq!(moduli_betti(class(r, d), ctx(g), RangeMode::Paper).betti, m.betti);
            }
        }
    }
}

#[test]
fn concurrent_callers_share_one_result() {
    let cache = Arc::new(SsCache::new());
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let cache = Arc::clone(&cache);
            thread::spawn(move || ss_poincare(class(3, i % 3), ctx(2), 14, &cache))
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (i, r) in results.iter().enumerate() {
        let again = ss_poincare(class(3, i as i64 % 3), ctx(2), 14, &cache);
        assert!(Arc::ptr_eq(r, &again));
        assert_eq!(**r, *ss_poincare(class(3, i as i64 % 3), ctx(2), 14, &SsCache::new()));
    }
}
