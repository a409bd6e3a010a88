#![allow(dead_code)]

use circulant_wdr::circulant::TranslationPartition;
use circulant_wdr::scheme::verify_relations;
use circulant_wdr::zn::{gcd, units, ResidueSet};

/// Relation matrix `(x, y) ↦ class of y − x` for the pair-level oracle.
pub fn relation_matrix(p: &TranslationPartition) -> Vec<usize> {
    let n = p.n() as usize;
    let mut rel = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            rel[x * n + y] = p.class_of(((y + n - x) % n) as u32);
        }
    }
    rel
}

/// Pair-level association scheme check; returns the flat tensor.
pub fn scheme_oracle(p: &TranslationPartition) -> Result<Vec<u32>, String> {
    verify_relations(p.n() as usize, &relation_matrix(p))
}

/// Group-ring check: `{0}` is a class, negation permutes classes, and every
/// product `X_i X_j` is an integer combination of class sums.
pub fn sring_oracle(p: &TranslationPartition) -> bool {
    let n = p.n() as usize;
    let classes: Vec<Vec<usize>> = p
        .classes()
        .iter()
        .map(|c| c.iter().map(|v| v as usize).collect())
        .collect();
    let mut label = vec![usize::MAX; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            label[v] = i;
        }
    }
    if classes
        .iter()
        .filter(|c| c.contains(&0))
        .any(|c| c.len() != 1)
    {
        return false;
    }
    for c in &classes {
        let neg: Vec<usize> = c.iter().map(|&v| (n - v) % n).collect();
        let l = label[neg[0]];
        if neg.iter().any(|&v| label[v] != l) || classes[l].len() != c.len() {
            return false;
        }
    }
    for a in &classes {
        for b in &classes {
            let mut prod = vec![0u32; n];
            for &x in a {
                for &y in b {
                    prod[(x + y) % n] += 1;
                }
            }
            for c in &classes {
                if c.iter().any(|&z| prod[z] != prod[c[0]]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every `S ⊆ Z_n ∖ {0}` that generates `Z_n`.
pub fn generating_sets(n: u32) -> impl Iterator<Item = ResidueSet> {
    (1u64..(1u64 << (n - 1))).filter_map(move |mask| {
        let members: Vec<u32> = (1..n).filter(|&x| mask >> (x - 1) & 1 == 1).collect();
        let g = members.iter().fold(n as u64, |g, &x| gcd(g, x as u64));
        (g == 1).then(|| ResidueSet::from_members(n, members).unwrap())
    })
}

/// Least set of each multiplier class among the generating sets.
pub fn generating_multiplier_classes(n: u32) -> Vec<ResidueSet> {
    let us = units(n);
    generating_sets(n)
        .filter(|s| {
            us.iter()
                .all(|&m| s.lex_cmp(&s.multiplier_image(m as i64)).is_le())
        })
        .collect()
}

/// All set partitions of `Z_n ∖ {0}`, with `{0}` prepended.
pub fn translation_partitions(n: u32) -> Vec<TranslationPartition> {
    let k = (n - 1) as usize;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![ResidueSet::singleton(n, 0).unwrap()];
        for b in 0..blocks {
            let members = (0..k).filter(|&i| rgs[i] == b).map(|i| i as u32 + 1);
            classes.push(ResidueSet::from_members(n, members).unwrap());
        }
        out.push(TranslationPartition::from_classes(classes).unwrap());
        // next restricted growth string
        let mut i = k;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let bound = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
                break;
            }
        }
    }
}
