mod common;

use circulant_wdr::circulant::{two_way_partition, Circulant, TranslationPartition};
use circulant_wdr::scheme::FailureWitness;
use circulant_wdr::sring::{
    a_subgroups, is_schur_partition, multiplier_closure_check, multiplier_group, orbit_sring,
    quotient, unit_closure,
};
use circulant_wdr::wdr::is_wdr;
use circulant_wdr::zn::{units, ResidueSet};
use common::*;
use proptest::prelude::*;

fn circulant() -> impl Strategy<Value = Circulant> {
    (3u32..=30)
        .prop_flat_map(|n| {
            proptest::collection::btree_set(1..n, 1..n as usize).prop_map(move |s| (n, s))
        })
        .prop_filter_map("connected", |(n, s)| {
            let set = ResidueSet::from_members(n, s).unwrap();
            set.generates().then(|| Circulant::new(set).unwrap())
        })
}

/// Circulants more likely to be weakly distance-regular: unions of multiplier
/// orbits, which makes the distance partition coarse.
fn orbit_union_circulant() -> impl Strategy<Value = Circulant> {
    (3u32..=40, any::<u64>(), any::<u64>()).prop_filter_map("connected", |(n, pick_k, pick_s)| {
        let us = units(n);
        let k = us[(pick_k % us.len() as u64) as usize];
        let s = orbit_sring(n, &[k]).unwrap();
        let basic = s.basic_sets();
        let mut set = ResidueSet::empty(n).unwrap();
        for (i, x) in basic.iter().enumerate().skip(1) {
            if pick_s >> (i % 64) & 1 == 1 {
                set = set.union(x).unwrap();
            }
        }
        (!set.is_empty() && set.generates()).then(|| Circulant::new(set).unwrap())
    })
}

fn orbit_params() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (2u32..=36).prop_flat_map(|n| {
        let us = units(n);
        proptest::collection::vec(proptest::sample::select(us), 0..3).prop_map(move |k| (n, k))
    })
}

fn direct_count(p: &TranslationPartition, i: usize, j: usize, z: u32) -> u32 {
    let n = p.n();
    let mut c = 0;
    for x in p.class(i).iter() {
        for y in p.class(j).iter() {
            c += ((x + y) % n == z) as u32;
        }
    }
    c
}

fn check_distance_partition(c: &Circulant) -> Result<bool, TestCaseError> {
    let p = two_way_partition(c).unwrap();
    match is_wdr(c).unwrap().certificate() {
        Some(cert) => {
            let ids = cert.scheme.check_identities();
            prop_assert!(ids.passed(), "{c}: {:?}", ids.violations);
            prop_assert!(ids.checked > 0);
            let s = is_schur_partition(&p).unwrap();
            prop_assert!(multiplier_closure_check(&s).passed(), "{c}");
            if c.n() <= 24 {
                prop_assert_eq!(
                    cert.scheme.intersection_tensor().concat().concat(),
                    scheme_oracle(&p).unwrap()
                );
            }
            Ok(true)
        }
        None => {
            prop_assert!(!sring_oracle(&p), "{c}");
            match is_wdr(c).unwrap().witness().unwrap().clone() {
                FailureWitness::NonConstant {
                    i,
                    j,
                    l,
                    z1,
                    count1,
                    z2,
                    count2,
                    ..
                } => {
                    prop_assert!(p.class(l).contains(z1) && p.class(l).contains(z2));
                    prop_assert_ne!(count1, count2);
                    prop_assert_eq!(direct_count(&p, i, j, z1), count1);
                    prop_assert_eq!(direct_count(&p, i, j, z2), count2);
                }
                FailureWitness::NotClosedUnderNegation { class, .. } => {
                    prop_assert!(p.index_of_set(&p.class(class).negate()).is_none());
                }
            }
            Ok(false)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn random_circulants(c in circulant()) {
        check_distance_partition(&c)?;
    }

    #[test]
    fn orbit_union_circulants(c in orbit_union_circulant()) {
        check_distance_partition(&c)?;
    }

    #[test]
    fn orbit_srings_satisfy_identities_and_closure((n, k) in orbit_params()) {
        let s = orbit_sring(n, &k).unwrap();
        prop_assert!(s.scheme().check_identities().passed());
        prop_assert!(multiplier_closure_check(&s).passed());
        let group = unit_closure(n, &k).unwrap();
        let fixing = multiplier_group(&s);
        prop_assert!(group.iter().all(|m| fixing.contains(m)));
        let spec = s.scheme().spectrum().unwrap();
        prop_assert_eq!(spec.multiplicities.iter().sum::<u32>(), n);
        for l in a_subgroups(&s) {
            let q = quotient(&s, &l).unwrap();
            prop_assert!(sring_oracle(q.partition()));
            prop_assert!(q.scheme().check_identities().passed());
            prop_assert!(multiplier_closure_check(&q).passed());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbit_partitions_are_schur((n, k) in orbit_params()) {
        let s = orbit_sring(n, &k).unwrap();
        prop_assert!(sring_oracle(s.partition()));
        if n <= 40 {
            prop_assert!(scheme_oracle(s.partition()).is_ok());
        }
        let group = unit_closure(n, &k).unwrap();
        for x in s.basic_sets() {
            let v = x.min().unwrap();
            let orbit = ResidueSet::from_members(n, group.iter().map(|&m| v * m % n)).unwrap();
            prop_assert_eq!(*x, orbit);
        }
    }
}
