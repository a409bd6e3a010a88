use circulant_wdr::canon::canonical_form;
use circulant_wdr::circulant::Circulant;
use circulant_wdr::classify::{enumerate_one_type_wdr, verify_main2, verify_main3, SearchOptions};
use circulant_wdr::constructions::{cyclotomic_classes, expected_one_type_family, paley};
use circulant_wdr::wdr::is_wdr;

fn canon_set(cs: &[Circulant]) -> Vec<String> {
    let mut v: Vec<String> = cs.iter().map(|c| canonical_form(c).to_hex()).collect();
    v.sort();
    v
}

#[test]
fn reduction_does_not_change_the_classes() {
    for n in 3..=14 {
        let reduced = enumerate_one_type_wdr(n, &SearchOptions::default()).unwrap();
        let full = enumerate_one_type_wdr(
            n,
            &SearchOptions {
                multiplier_reduction: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(canon_set(&reduced), canon_set(&full), "n = {n}");
    }
}

#[test]
fn parallel_matches_sequential() {
    let seq = verify_main2(3, 20, &SearchOptions::default()).unwrap();
    let par = verify_main2(
        3,
        20,
        &SearchOptions {
            jobs: 8,
            ..SearchOptions::default()
        },
    )
    .unwrap();
    assert_eq!(
        serde_json::to_string(&seq).unwrap(),
        serde_json::to_string(&par).unwrap()
    );
}

#[test]
fn warm_cache_replays_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let opts = SearchOptions {
        jobs: 4,
        cache: Some(path.clone()),
        ..SearchOptions::default()
    };
    let cold = verify_main2(3, 16, &opts).unwrap();
    let written = std::fs::read_to_string(&path).unwrap();
    let warm = verify_main2(3, 16, &opts).unwrap();
    assert_eq!(
        serde_json::to_string(&cold).unwrap(),
        serde_json::to_string(&warm).unwrap()
    );
    assert_eq!(std::fs::read_to_string(&path).unwrap(), written);
    assert!(warm.iter().map(|r| r.cache_hits).sum::<u64>() > 0);

    // resume after losing the tail of the file
    let keep: Vec<&str> = written.lines().take(written.lines().count() / 2).collect();
    std::fs::write(&path, keep.join("\n") + "\n{\"n\":1").unwrap();
    let resumed = verify_main2(3, 16, &opts).unwrap();
    assert_eq!(
        serde_json::to_string(&cold).unwrap(),
        serde_json::to_string(&resumed).unwrap()
    );
}

#[test]
fn classification_and_primitive_survivors_up_to_16() {
    let reports = verify_main2(3, 16, &SearchOptions::default()).unwrap();
    assert!(reports.iter().all(|r| r.passed()));
    let counts: Vec<(u32, usize)> = reports.iter().map(|r| (r.n, r.found.len())).collect();
    for (n, k) in [(6, 2), (7, 2), (12, 5), (13, 2), (14, 3)] {
        assert!(counts.contains(&(n, k)), "n = {n}");
    }
    let prim = verify_main3(6, 7, &SearchOptions::default()).unwrap();
    assert!(prim[0].found.is_empty());
    assert_eq!(prim[1].found.len(), 2);
}

#[test]
fn every_family_member_is_one_type_wdr() {
    for n in 3..=30 {
        for m in expected_one_type_family(n).unwrap() {
            let cert = is_wdr(&m.circulant).unwrap().certificate();
            let cert = cert.unwrap_or_else(|| panic!("{} ({}) is not WDR", m.circulant, m.tag));
            assert!(cert.one_type, "{}", m.tag);
        }
    }
}

#[test]
fn paley_digraphs_are_primitive() {
    for p in [7, 11, 19, 23] {
        let cert = is_wdr(&paley(p).unwrap()).unwrap().certificate().unwrap();
        assert!(cert.is_primitive() && cert.one_type);
    }
}

#[test]
fn cyclotomic_classes_give_isomorphic_circulants() {
    let classes = cyclotomic_classes(13, 4).unwrap();
    let canon: Vec<_> = classes
        .iter()
        .map(|x| canonical_form(&Circulant::new(*x).unwrap()))
        .collect();
    assert!(canon.windows(2).all(|w| w[0] == w[1]));
}
