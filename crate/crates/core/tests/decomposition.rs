mod common;

use circulant_wdr::circulant::Circulant;
use circulant_wdr::classify::{antisymmetric_sets, is_least_multiplier_image};
use circulant_wdr::sring::{
    decompose, is_schur_partition, orbit_sring, quotient, sring_radical,
    verify_decomposition_lemmas, SchurPartition,
};
use circulant_wdr::wdr::is_wdr;
use circulant_wdr::zn::{units, Subgroup};
use common::*;

/// S-rings of WDR circulants: every multiplier class for n ≤ 14, antisymmetric
/// multiplier classes up to 24.
fn wdr_srings() -> Vec<SchurPartition> {
    let mut out = Vec::new();
    for n in 3..=24u32 {
        let sets = if n <= 14 {
            generating_multiplier_classes(n)
        } else {
            let us = units(n);
            antisymmetric_sets(n)
                .into_iter()
                .filter(|s| s.generates() && is_least_multiplier_image(s, &us))
                .collect()
        };
        for s in sets {
            if let Some(cert) = is_wdr(&Circulant::new(s).unwrap()).unwrap().certificate() {
                out.push(is_schur_partition(&cert.partition).unwrap());
            }
        }
    }
    out
}

#[test]
fn decomposition_lemmas_on_wdr_srings() {
    let srings = wdr_srings();
    let (mut checked, mut free) = (0, 0);
    for s in &srings {
        let Ok(rad) = sring_radical(s) else { continue };
        free += rad.is_trivial() as usize;
        let dec = decompose(s).unwrap();
        let q = quotient(s, &rad).unwrap();
        assert!(
            dec.reconstruct().unwrap().same_classes(q.partition()),
            "{s}"
        );
        assert!(
            dec.conditions.pairwise_coprime && dec.conditions.rank_two_factors,
            "{s}"
        );
        for x in s.basic_sets().iter().filter(|x| x.generates()) {
            let r = verify_decomposition_lemmas(s, x).unwrap();
            assert!(r.passed(), "{s} at {x}: {r:?}");
            checked += 1;
        }
    }
    assert!(free >= 80, "{free} free S-rings");
    assert!(checked > free);
}

#[test]
fn radical_contains_order_p_subgroup() {
    for (n, p) in [(9u32, 3u32), (25, 5), (27, 3), (49, 7)] {
        let order_p = Subgroup::of_order(n, p).unwrap();
        let mut seen = 0;
        for k in units(n) {
            let s = orbit_sring(n, &[k]).unwrap();
            let group_order = s.basic_sets().iter().find(|x| x.contains(1)).unwrap().len() as u32;
            if !group_order.is_multiple_of(p) {
                continue;
            }
            let rad = sring_radical(&s).unwrap();
            assert!(
                order_p.is_subgroup_of(&rad),
                "n = {n}, K = <{k}>, rad = {rad}"
            );
            seen += 1;
        }
        assert!(seen > 0);
    }
}
