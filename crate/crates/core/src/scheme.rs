//! Association schemes attached to translation partitions of `Z_n`.
//!
//! For a translation partition the relation `R(X) = {(g, g + x) : x ∈ X}` is
//! invariant under all shifts, so every intersection number can be read off
//! from the zero vertex: `p_{i,j}^l = #{(x, y) ∈ X_i × X_j : x + y = z}` for
//! any `z ∈ X_l`. [`verify_scheme`] computes these convolution counts and
//! checks that they really are constant on each class. [`verify_relations`]
//! is the generic pair-by-pair check on explicit relations and serves as the
//! independent slow path.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circulant::{ClassLabel, TranslationPartition};
use crate::error::{Error, Result};
use crate::zn::lcm;

/// A set of class indices (at most 128 classes).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSet(u128);

impl ClassSet {
    pub fn new() -> Self {
        ClassSet(0)
    }

    pub fn single(i: usize) -> Self {
        ClassSet(1u128 << i)
    }

    /// `{0, 1, ..., rank − 1}`.
    pub fn all(rank: usize) -> Self {
        if rank >= 128 {
            ClassSet(u128::MAX)
        } else {
            ClassSet((1u128 << rank) - 1)
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn union(&self, other: &Self) -> Self {
        ClassSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }
}

impl FromIterator<usize> for ClassSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ClassSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ClassSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Why a translation partition fails to be an association scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FailureWitness {
    /// `−X_i` is not a class, so the transpose of `R_i` is not a relation.
    NotClosedUnderNegation { class: usize, label: ClassLabel },
    /// `#{(x, y) ∈ X_i × X_j : x + y = z}` differs between two residues of class `l`.
    NonConstant {
        i: usize,
        j: usize,
        l: usize,
        labels: [ClassLabel; 3],
        z1: u32,
        count1: u32,
        z2: u32,
        count2: u32,
    },
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureWitness::NotClosedUnderNegation { label, .. } => {
                write!(f, "the negative of class {label} is not a class")
            }
            FailureWitness::NonConstant {
                labels,
                z1,
                count1,
                z2,
                count2,
                ..
            } => write!(
                f,
                "P_{{{},{}}} counts differ inside class {}: z={z1} has {count1}, z={z2} has {count2}",
                labels[0], labels[1], labels[2]
            ),
        }
    }
}

impl std::error::Error for FailureWitness {}

/// A verified translation association scheme over `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeData {
    partition: TranslationPartition,
    star: Vec<usize>,
    valency: Vec<u32>,
    tensor: Vec<u32>,
    commutative: bool,
    symmetric_class: Vec<bool>,
}

fn convolution(p: &TranslationPartition, i: usize, j: usize) -> Vec<u32> {
    let n = p.n();
    let mut counts = vec![0u32; n as usize];
    let xj = p.class(j);
    for x in p.class(i).iter() {
        for y in xj.iter() {
            counts[((x + y) % n) as usize] += 1;
        }
    }
    counts
}

fn negation_failures(p: &TranslationPartition) -> Option<(Vec<usize>, FailureWitness)> {
    let mut star = Vec::with_capacity(p.rank());
    for i in 0..p.rank() {
        match p.negation_partner(i) {
            Some(s) => star.push(s),
            None => {
                return Some((
                    star,
                    FailureWitness::NotClosedUnderNegation {
                        class: i,
                        label: p.label(i),
                    },
                ))
            }
        }
    }
    None
}

/// Verify that a translation partition defines an association scheme.
///
/// Returns the first failure found, scanning class pairs `(i, j)` and then
/// target classes `l` in index order.
pub fn verify_scheme(p: &TranslationPartition) -> std::result::Result<SchemeData, FailureWitness> {
    if let Some((_, w)) = negation_failures(p) {
        return Err(w);
    }
    let r = p.rank();
    let mut tensor = vec![0u32; r * r * r];
    for i in 0..r {
        for j in 0..r {
            let counts = convolution(p, i, j);
            for l in 0..r {
                let xl = p.class(l);
                let z1 = xl.min().unwrap();
                let c1 = counts[z1 as usize];
                if let Some(z2) = xl.iter().find(|&z| counts[z as usize] != c1) {
                    return Err(FailureWitness::NonConstant {
                        i,
                        j,
                        l,
                        labels: [p.label(i), p.label(j), p.label(l)],
                        z1,
                        count1: c1,
                        z2,
                        count2: counts[z2 as usize],
                    });
                }
                tensor[(i * r + j) * r + l] = c1;
            }
        }
    }
    Ok(SchemeData::from_tensor(p.clone(), tensor))
}

/// Every constancy violation, one per `(i, j, l)` (with the first offending
/// pair of residues), plus any negation failure.
pub fn all_violations(p: &TranslationPartition) -> Vec<FailureWitness> {
    let mut out = Vec::new();
    if let Some((_, w)) = negation_failures(p) {
        out.push(w);
    }
    let r = p.rank();
    for i in 0..r {
        for j in 0..r {
            let counts = convolution(p, i, j);
            for l in 0..r {
                let xl = p.class(l);
                let z1 = xl.min().unwrap();
                let c1 = counts[z1 as usize];
                if let Some(z2) = xl.iter().find(|&z| counts[z as usize] != c1) {
                    out.push(FailureWitness::NonConstant {
                        i,
                        j,
                        l,
                        labels: [p.label(i), p.label(j), p.label(l)],
                        z1,
                        count1: c1,
                        z2,
                        count2: counts[z2 as usize],
                    });
                }
            }
        }
    }
    out
}

/// `#{(x, y) ∈ X_i × X_j : x + y = z}`.
pub fn path_count(p: &TranslationPartition, i: usize, j: usize, z: u32) -> u32 {
    convolution(p, i, j)[(z % p.n()) as usize]
}

impl SchemeData {
    fn from_tensor(partition: TranslationPartition, tensor: Vec<u32>) -> Self {
        let r = partition.rank();
        let star: Vec<usize> = (0..r)
            .map(|i| partition.negation_partner(i).expect("negation closed"))
            .collect();
        let valency = (0..r).map(|i| tensor[(i * r + star[i]) * r]).collect();
        let commutative = (0..r).all(|i| {
            (0..r)
                .all(|j| (0..r).all(|l| tensor[(i * r + j) * r + l] == tensor[(j * r + i) * r + l]))
        });
        let symmetric_class = (0..r).map(|i| star[i] == i).collect();
        SchemeData {
            partition,
            star,
            valency,
            tensor,
            commutative,
            symmetric_class,
        }
    }

    pub fn partition(&self) -> &TranslationPartition {
        &self.partition
    }

    pub fn n_points(&self) -> u32 {
        self.partition.n()
    }

    /// Number of relations including the diagonal.
    pub fn rank(&self) -> usize {
        self.star.len()
    }

    /// Number of non-diagonal classes.
    pub fn d(&self) -> usize {
        self.rank() - 1
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn valency(&self, i: usize) -> u32 {
        self.valency[i]
    }

    pub fn valencies(&self) -> &[u32] {
        &self.valency
    }

    pub fn p(&self, i: usize, j: usize, l: usize) -> u32 {
        let r = self.rank();
        self.tensor[(i * r + j) * r + l]
    }

    /// The full tensor, indexed `[i][j][l]`.
    pub fn intersection_tensor(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|l| self.p(i, j, l)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_symmetric_class(&self, i: usize) -> bool {
        self.symmetric_class[i]
    }

    /// Every relation is self-paired.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric_class.iter().all(|&s| s)
    }

    /// Only the diagonal relation is self-paired.
    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetric_class.iter().skip(1).all(|&s| !s)
    }

    pub fn label(&self, i: usize) -> ClassLabel {
        self.partition.label(i)
    }

    pub fn index_of_label(&self, label: ClassLabel) -> Option<usize> {
        self.partition.index_of_label(label)
    }

    /// `EF = {R_l : p_{i,j}^l ≠ 0 for some R_i ∈ E, R_j ∈ F}`.
    pub fn complex_product(&self, e: ClassSet, f: ClassSet) -> ClassSet {
        let r = self.rank();
        let mut out = ClassSet::new();
        for i in e.iter() {
            for j in f.iter() {
                for l in 0..r {
                    if self.p(i, j, l) != 0 {
                        out.insert(l);
                    }
                }
            }
        }
        out
    }

    /// `R_i^m` as a set of relations, `m ≥ 1`.
    pub fn power(&self, i: usize, m: u32) -> ClassSet {
        let base = ClassSet::single(i);
        (1..m).fold(base, |acc, _| self.complex_product(acc, base))
    }

    pub fn star_set(&self, e: ClassSet) -> ClassSet {
        e.iter().map(|i| self.star[i]).collect()
    }

    /// Smallest closed subset containing `seed` and `R_0`.
    pub fn closed_subset_generated(&self, seed: ClassSet) -> ClassSet {
        let mut f = seed.union(&ClassSet::single(0));
        loop {
            let next = f.union(&self.complex_product(self.star_set(f), f));
            if next == f {
                return f;
            }
            f = next;
        }
    }

    pub fn is_closed(&self, f: ClassSet) -> bool {
        f.contains(0) && self.complex_product(self.star_set(f), f).is_subset(&f)
    }

    /// Every non-diagonal relation generates the whole scheme.
    pub fn is_primitive(&self) -> bool {
        let all = ClassSet::all(self.rank());
        (1..self.rank()).all(|i| self.closed_subset_generated(ClassSet::single(i)) == all)
    }

    /// Union of the residue classes of a class set; for a closed subset this
    /// is the corresponding subgroup.
    pub fn residues(&self, f: ClassSet) -> crate::zn::ResidueSet {
        f.iter().fold(
            crate::zn::ResidueSet::empty(self.n_points()).unwrap(),
            |acc, i| acc.union(self.partition.class(i)).unwrap(),
        )
    }

    pub fn check_identities(&self) -> IdentityReport {
        check_identities(self)
    }

    pub fn spectrum(&self) -> Result<SchemeSpectrum> {
        spectrum_multiplicities(self)
    }

    pub fn is_pseudocyclic(&self) -> Result<bool> {
        let spec = self.spectrum()?;
        Ok(spec.multiplicities[1..].windows(2).all(|w| w[0] == w[1]))
    }

    pub fn report(&self) -> SchemeReport {
        SchemeReport::from(self)
    }
}

/// One violated instance of an intersection-number identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    /// 1: `k_i k_j = Σ_l p_{ij}^l k_l`; 2: `p_{ij}^l k_l = p_{l j*}^i k_i = p_{i* l}^j k_j`;
    /// 3: `Σ_j p_{ij}^l = k_i`; 4: associativity; 5: `lcm(k_i, k_j) | p_{ij}^l k_l`.
    pub identity: u8,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: u64,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, identity: u8) -> bool {
        self.violations.iter().any(|v| v.identity == identity)
    }
}

pub fn check_identities(s: &SchemeData) -> IdentityReport {
    let r = s.rank();
    let k = |i: usize| s.valency(i) as u64;
    let p = |i: usize, j: usize, l: usize| s.p(i, j, l) as u64;
    let mut rep = IdentityReport::default();
    let fail = |rep: &mut IdentityReport, identity: u8, indices: Vec<usize>| {
        rep.violations.push(IdentityViolation { identity, indices })
    };
    for i in 0..r {
        for j in 0..r {
            rep.checked += 1;
            if k(i) * k(j) != (0..r).map(|l| p(i, j, l) * k(l)).sum::<u64>() {
                fail(&mut rep, 1, vec![i, j]);
            }
            for l in 0..r {
                rep.checked += 2;
                let a = p(i, j, l) * k(l);
                if a != p(l, s.star(j), i) * k(i) || a != p(s.star(i), l, j) * k(j) {
                    fail(&mut rep, 2, vec![i, j, l]);
                }
                if a % lcm(k(i), k(j)) != 0 {
                    fail(&mut rep, 5, vec![i, j, l]);
                }
            }
        }
        for l in 0..r {
            rep.checked += 1;
            if (0..r).map(|j| p(i, j, l)).sum::<u64>() != k(i) {
                fail(&mut rep, 3, vec![i, l]);
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for f in 0..r {
                for l in 0..r {
                    rep.checked += 1;
                    let lhs: u64 = (0..r).map(|a| p(i, j, a) * p(f, a, l)).sum();
                    let rhs: u64 = (0..r).map(|b| p(f, i, b) * p(b, j, l)).sum();
                    if lhs != rhs {
                        fail(&mut rep, 4, vec![i, j, f, l]);
                    }
                }
            }
        }
    }
    rep
}

/// Default absolute tolerance when grouping eigenvalue vectors.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

/// Character-sum spectrum of a translation scheme over `Z_n`.
#[derive(Clone, Debug)]
pub struct SchemeSpectrum {
    /// Characters `j ∈ Z_n` grouped by equal eigenvalue vectors; group 0 is `{0}`.
    pub character_groups: Vec<Vec<u32>>,
    /// `eigenvalues[g][i] = Σ_{x ∈ X_i} exp(2πi·j·x/n)` for any `j` in group `g`.
    pub eigenvalues: Vec<Vec<Complex64>>,
    pub multiplicities: Vec<u32>,
}

pub fn spectrum_multiplicities(s: &SchemeData) -> Result<SchemeSpectrum> {
    spectrum_with_tolerance(s, SPECTRUM_TOLERANCE)
}

pub fn spectrum_with_tolerance(s: &SchemeData, tol: f64) -> Result<SchemeSpectrum> {
    let n = s.n_points();
    let p = s.partition();
    let vector = |j: u32| -> Vec<Complex64> {
        p.classes()
            .iter()
            .map(|x| {
                x.iter()
                    .map(|v| {
                        let theta =
                            2.0 * std::f64::consts::PI * ((j as u64 * v as u64) % n as u64) as f64
                                / n as f64;
                        Complex64::from_polar(1.0, theta)
                    })
                    .sum()
            })
            .collect()
    };
    let mut groups: Vec<Vec<u32>> = Vec::new();
    let mut reps: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let v = vector(j);
        let mut home = None;
        for (g, rep) in reps.iter().enumerate() {
            let dist = rep
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if dist <= tol {
                home = Some(g);
            } else if dist <= 10.0 * tol {
                return Err(Error::Precision {
                    distance: dist,
                    tolerance: tol,
                });
            }
        }
        match home {
            Some(g) => groups[g].push(j),
            None => {
                groups.push(vec![j]);
                reps.push(v);
            }
        }
    }
    let multiplicities = groups.iter().map(|g| g.len() as u32).collect();
    Ok(SchemeSpectrum {
        character_groups: groups,
        eigenvalues: reps,
        multiplicities,
    })
}

/// Sorted copy of the multiplicities, for comparisons that ignore order.
impl SchemeSpectrum {
    pub fn sorted_multiplicities(&self) -> Vec<u32> {
        let mut m = self.multiplicities.clone();
        m.sort_unstable();
        m
    }
}

/// One admissible choice of `R_2` for the hypotheses of the classification of
/// commutative schemes generated by a non-symmetric `R_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct R2Assignment {
    pub r2: usize,
    pub r2_star: usize,
    pub k2: u32,
    /// `I = {i : R_i ∈ R_1²}`.
    pub i_set: ClassSet,
    /// `J = {i : R_i ∈ R_1 R_1*}`.
    pub j_set: ClassSet,
    pub i_symbols: Vec<String>,
    pub j_symbols: Vec<String>,
    /// `R_1² ⊆ {R_1, R_1*, R_2}`
    pub cond_a: bool,
    /// `R_1 R_1* ⊆ {R_0, R_1, R_1*, R_2, R_2*}`
    pub cond_b: bool,
    /// `2 ∉ {1*, 2*}`
    pub cond_c: bool,
    pub k1_ge_k2: bool,
}

impl R2Assignment {
    pub fn conditions_hold(&self) -> bool {
        self.cond_a && self.cond_b && self.cond_c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub r1: usize,
    pub r1_star: usize,
    pub k1: u32,
    pub d: usize,
    pub generated_by_r1: bool,
    /// Every class other than `0, 1, 1*` satisfying `R_1² ⊆ {R_1, R_1*, R_2}`.
    pub assignments: Vec<R2Assignment>,
}

impl CharacterizationReport {
    /// Some assignment satisfies all three conditions.
    pub fn conditions_hold(&self) -> bool {
        self.assignments.iter().any(R2Assignment::conditions_hold)
    }

    pub fn assignment(&self, r2: usize) -> Option<&R2Assignment> {
        self.assignments.iter().find(|a| a.r2 == r2)
    }
}

/// Audit the hypotheses and computed data `I`, `J`, `d`, `k_1`, `k_2` for
/// the class `r1`. Errors when the scheme is not commutative, `R_1` is
/// symmetric, or `k_1 = 1`.
pub fn characterization_conditions(s: &SchemeData, r1: usize) -> Result<CharacterizationReport> {
    if r1 == 0 || r1 >= s.rank() {
        return Err(Error::InvalidInput(format!(
            "class {r1} is not a non-diagonal class"
        )));
    }
    if !s.is_commutative() {
        return Err(Error::NotApplicable("scheme is not commutative".into()));
    }
    let r1s = s.star(r1);
    if r1s == r1 {
        return Err(Error::NotApplicable(format!(
            "R_1 = {} is symmetric",
            s.label(r1)
        )));
    }
    let k1 = s.valency(r1);
    if k1 <= 1 {
        return Err(Error::NotApplicable(format!(
            "k_1 = {k1}; k_1 > 1 is required"
        )));
    }
    let one = ClassSet::single(r1);
    let sq = s.complex_product(one, one);
    let mixed = s.complex_product(one, ClassSet::single(r1s));
    let generated_by_r1 = s.closed_subset_generated(one) == ClassSet::all(s.rank());

    let mut assignments = Vec::new();
    for r2 in 1..s.rank() {
        if r2 == r1 || r2 == r1s {
            continue;
        }
        let allowed_a: ClassSet = [r1, r1s, r2].into_iter().collect();
        if !sq.is_subset(&allowed_a) {
            continue;
        }
        let r2s = s.star(r2);
        let allowed_b: ClassSet = [0, r1, r1s, r2, r2s].into_iter().collect();
        let symbol = |i: usize| -> String {
            match i {
                0 => "0".into(),
                _ if i == r1 => "1".into(),
                _ if i == r1s => "1*".into(),
                _ if i == r2 => "2".into(),
                _ if i == r2s => "2*".into(),
                _ => s.label(i).to_string(),
            }
        };
        assignments.push(R2Assignment {
            r2,
            r2_star: r2s,
            k2: s.valency(r2),
            i_set: sq,
            j_set: mixed,
            i_symbols: sq.iter().map(symbol).collect(),
            j_symbols: mixed.iter().map(symbol).collect(),
            cond_a: true,
            cond_b: mixed.is_subset(&allowed_b),
            cond_c: r2 != r1s && r2 != r2s,
            k1_ge_k2: k1 >= s.valency(r2),
        });
    }
    Ok(CharacterizationReport {
        r1,
        r1_star: r1s,
        k1,
        d: s.d(),
        generated_by_r1,
        assignments,
    })
}

/// For a 4-class skew-symmetric pseudocyclic scheme that fissions a
/// conference graph with `|X| = u² + 4v²`, the candidate value
/// `(|X| + 1 + 2u + sign·8v) / 16` of `p_{1,1}^{2*}`. `None` when the
/// representation does not hold or the quotient is not an integer.
pub fn skew_fission_p11_2star(points: i64, u: i64, v: i64, sign: i64) -> Option<i64> {
    if points != u * u + 4 * v * v {
        return None;
    }
    let num = points + 1 + 2 * u + sign.signum() * 8 * v;
    (num % 16 == 0).then_some(num / 16)
}

/// Pair-level verification of axioms (1)–(4) for explicit relations on
/// `0..points`: `relation[x * points + y]` is the index of the relation
/// containing `(x, y)`. Slow (`O(points³)`); used as an independent check.
pub fn verify_relations(
    points: usize,
    relation: &[usize],
) -> std::result::Result<Vec<u32>, String> {
    let rank = relation.iter().copied().max().map_or(0, |m| m + 1);
    let rel = |x: usize, y: usize| relation[x * points + y];
    // diagonal is exactly relation 0
    for x in 0..points {
        for y in 0..points {
            if (x == y) != (rel(x, y) == 0) {
                return Err(format!("pair ({x},{y}) breaks the diagonal relation"));
            }
        }
    }
    // transposes
    let mut star = vec![usize::MAX; rank];
    for x in 0..points {
        for y in 0..points {
            let (a, b) = (rel(x, y), rel(y, x));
            if star[a] == usize::MAX {
                star[a] = b;
            } else if star[a] != b {
                return Err(format!("transpose of relation {a} is not a relation"));
            }
        }
    }
    let mut tensor = vec![u32::MAX; rank * rank * rank];
    let mut counts = vec![0u32; rank * rank];
    for x in 0..points {
        for z in 0..points {
            counts.iter_mut().for_each(|c| *c = 0);
            for y in 0..points {
                counts[rel(x, y) * rank + rel(y, z)] += 1;
            }
            let l = rel(x, z);
            for i in 0..rank {
                for j in 0..rank {
                    let slot = &mut tensor[(i * rank + j) * rank + l];
                    let c = counts[i * rank + j];
                    if *slot == u32::MAX {
                        *slot = c;
                    } else if *slot != c {
                        return Err(format!(
                            "p_({i},{j})^{l} is not constant: {} vs {c} at ({x},{z})",
                            *slot
                        ));
                    }
                }
            }
        }
    }
    Ok(tensor
        .into_iter()
        .map(|c| if c == u32::MAX { 0 } else { c })
        .collect())
}

/// Serializable form of a scheme: classes, pairing, valencies, nonzero
/// intersection numbers and flags.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SchemeReport {
    pub n: u32,
    pub d: usize,
    pub classes: Vec<ClassEntry>,
    pub intersection_numbers: Vec<TensorEntry>,
    pub commutative: bool,
    pub symmetric: bool,
    pub skew_symmetric: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassEntry {
    pub index: usize,
    pub label: String,
    pub members: Vec<u32>,
    pub star: usize,
    pub valency: u32,
    pub symmetric: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub value: u32,
}

impl From<&SchemeData> for SchemeReport {
    fn from(s: &SchemeData) -> Self {
        let r = s.rank();
        let classes = (0..r)
            .map(|i| ClassEntry {
                index: i,
                label: s.label(i).to_string(),
                members: s.partition().class(i).to_vec(),
                star: s.star(i),
                valency: s.valency(i),
                symmetric: s.is_symmetric_class(i),
            })
            .collect();
        let mut intersection_numbers = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for l in 0..r {
                    let value = s.p(i, j, l);
                    if value != 0 {
                        intersection_numbers.push(TensorEntry { i, j, l, value });
                    }
                }
            }
        }
        SchemeReport {
            n: s.n_points(),
            d: s.d(),
            classes,
            intersection_numbers,
            commutative: s.is_commutative(),
            symmetric: s.is_symmetric(),
            skew_symmetric: s.is_skew_symmetric(),
        }
    }
}

impl fmt::Display for SchemeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flags = Vec::new();
        flags.push(if self.commutative {
            "commutative"
        } else {
            "non-commutative"
        });
        if self.symmetric {
            flags.push("symmetric");
        }
        if self.skew_symmetric {
            flags.push("skew-symmetric");
        }
        writeln!(
            f,
            "scheme on Z_{}: d = {}, {}",
            self.n,
            self.d,
            flags.join(", ")
        )?;
        writeln!(f, "classes:")?;
        for c in &self.classes {
            let members: Vec<String> = c.members.iter().map(|m| m.to_string()).collect();
            writeln!(
                f,
                "  [{}] {} {{{}}} star={} k={}{}",
                c.index,
                c.label,
                members.join(","),
                c.star,
                c.valency,
                if c.symmetric { " symmetric" } else { "" }
            )?;
        }
        writeln!(f, "intersection numbers (nonzero):")?;
        let label = |i: usize| self.classes[i].label.as_str();
        let mut line = String::new();
        for e in &self.intersection_numbers {
            line.clear();
            let _ = write!(
                line,
                "  p[{},{}]^{} = {}",
                label(e.i),
                label(e.j),
                label(e.l),
                e.value
            );
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
