//! Schur rings over `Z_n`.
//!
//! An S-ring is described by its basic sets, which form a [`TranslationPartition`].
//! A partition is a Schur partition exactly when its translation relations form
//! an association scheme, so validation goes through [`verify_scheme`].

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::circulant::TranslationPartition;
use crate::error::{Error, Result};
use crate::scheme::{verify_scheme, FailureWitness, SchemeData};
use crate::zn::{factorize, is_unit, units, CrtSplit, ResidueSet, Subgroup};

/// A translation partition whose classes are the basic sets of an S-ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurPartition {
    scheme: SchemeData,
}

impl SchurPartition {
    pub fn partition(&self) -> &TranslationPartition {
        self.scheme.partition()
    }

    pub fn scheme(&self) -> &SchemeData {
        &self.scheme
    }

    pub fn n(&self) -> u32 {
        self.partition().n()
    }

    pub fn rank(&self) -> usize {
        self.partition().rank()
    }

    pub fn basic_sets(&self) -> &[ResidueSet] {
        self.partition().classes()
    }

    pub fn is_basic_set(&self, x: &ResidueSet) -> bool {
        self.partition().index_of_set(x).is_some()
    }
}

impl fmt::Display for SchurPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition())
    }
}

pub fn is_schur_partition(
    p: &TranslationPartition,
) -> std::result::Result<SchurPartition, FailureWitness> {
    verify_scheme(p).map(|scheme| SchurPartition { scheme })
}

fn expect_schur(p: TranslationPartition, what: &str) -> Result<SchurPartition> {
    is_schur_partition(&p)
        .map_err(|w| Error::InvalidInput(format!("{what} is not a Schur partition: {w}")))
}

/// Subgroups of `Z_n` that are unions of basic sets, by increasing order.
pub fn a_subgroups(s: &SchurPartition) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Subgroup::all(s.n())
        .expect("modulus already validated")
        .into_iter()
        .filter(|h| s.partition().is_union_of_classes(&h.to_set()))
        .collect();
    out.sort_by_key(|h| h.order());
    out
}

/// The radical of any basic set containing a unit.
pub fn sring_radical(s: &SchurPartition) -> Result<Subgroup> {
    let n = s.n();
    s.basic_sets()
        .iter()
        .find(|x| x.iter().any(|v| is_unit(v, n)))
        .map(|x| x.radical())
        .ok_or_else(|| Error::NotApplicable("no basic set contains a generator".into()))
}

pub fn is_free(s: &SchurPartition) -> Result<bool> {
    Ok(sring_radical(s)?.is_trivial())
}

/// `π(A)` for `π: Z_n → Z_n/L`, with `Z_n/L` identified with `Z_d` where
/// `L = dZ_n`.
pub fn quotient(s: &SchurPartition, l: &Subgroup) -> Result<SchurPartition> {
    if l.modulus() != s.n() {
        return Err(Error::ModulusMismatch {
            left: s.n(),
            right: l.modulus(),
        });
    }
    if !s.partition().is_union_of_classes(&l.to_set()) {
        return Err(Error::InvalidInput(format!("{l} is not an A-subgroup")));
    }
    let d = l.generator();
    let mut images = BTreeSet::new();
    for x in s.basic_sets() {
        images.insert(ResidueSet::from_members(d, x.iter().map(|v| v % d))?);
    }
    let p = TranslationPartition::from_classes(images.into_iter().collect())?;
    expect_schur(p, "quotient")
}

/// The subgroup of units generated by `k` (always contains 1).
pub fn unit_closure(n: u32, k: &[u32]) -> Result<Vec<u32>> {
    if let Some(&m) = k.iter().find(|&&m| !is_unit(m % n, n)) {
        return Err(Error::InvalidInput(format!("{m} is not a unit modulo {n}")));
    }
    let mut group: BTreeSet<u32> = BTreeSet::from([1 % n]);
    let mut frontier = vec![1 % n];
    while let Some(g) = frontier.pop() {
        for &m in k {
            let h = (g as u64 * m as u64 % n as u64) as u32;
            if group.insert(h) {
                frontier.push(h);
            }
        }
    }
    Ok(group.into_iter().collect())
}

/// Orbits of `⟨K⟩ ≤ Aut(Z_n)` acting by multiplication.
pub fn orbit_sring(n: u32, k: &[u32]) -> Result<SchurPartition> {
    let group = unit_closure(n, k)?;
    let mut seen = ResidueSet::empty(n)?;
    let mut classes = Vec::new();
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let orbit = ResidueSet::from_members(
            n,
            group
                .iter()
                .map(|&m| (x as u64 * m as u64 % n as u64) as u32),
        )?;
        seen = seen.union(&orbit)?;
        classes.push(orbit);
    }
    expect_schur(
        TranslationPartition::from_classes(classes)?,
        "orbit partition",
    )
}

/// Units fixing every basic set.
pub fn multiplier_group(s: &SchurPartition) -> Vec<u32> {
    units(s.n())
        .into_iter()
        .filter(|&m| {
            s.basic_sets()
                .iter()
                .all(|x| x.multiplier_image(m as i64) == *x)
        })
        .collect()
}

/// Whether `s` coincides with the orbit S-ring of its multiplier group.
pub fn is_orbit_sring(s: &SchurPartition) -> bool {
    orbit_sring(s.n(), &multiplier_group(s))
        .map(|o| o.partition().same_classes(s.partition()))
        .unwrap_or(false)
}

/// The action of a unit on basic sets: `perm[i]` is the index of `X_i^(m)`.
pub fn multiplier_permutation(s: &SchurPartition, m: u32) -> Result<Vec<usize>> {
    if !is_unit(m % s.n(), s.n()) {
        return Err(Error::InvalidInput(format!(
            "{m} is not a unit modulo {}",
            s.n()
        )));
    }
    s.basic_sets()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let img = x.multiplier_image(m as i64);
            s.partition().index_of_set(&img).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "image of basic set {i} under {m} is {img}, not a basic set"
                ))
            })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MultiplierClosureReport {
    /// `(m, perm)` for every unit `m` that permutes the basic sets.
    pub permutations: Vec<(u32, Vec<usize>)>,
    /// `(m, class)` where the image of a basic set is not a basic set.
    pub violations: Vec<(u32, usize)>,
}

impl MultiplierClosureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn permutation(&self, m: u32) -> Option<&[usize]> {
        self.permutations
            .iter()
            .find(|(u, _)| *u == m)
            .map(|(_, p)| p.as_slice())
    }
}

/// Check that every unit multiplier permutes the basic sets.
pub fn multiplier_closure_check(s: &SchurPartition) -> MultiplierClosureReport {
    let mut rep = MultiplierClosureReport::default();
    for m in units(s.n()) {
        let mut perm = Vec::with_capacity(s.rank());
        let mut ok = true;
        for (i, x) in s.basic_sets().iter().enumerate() {
            match s.partition().index_of_set(&x.multiplier_image(m as i64)) {
                Some(j) => perm.push(j),
                None => {
                    rep.violations.push((m, i));
                    ok = false;
                }
            }
        }
        if ok {
            rep.permutations.push((m, perm));
        }
    }
    rep
}

/// Integers `b ∈ [0, n)` with `Y^(b) = Y^(−b−1) = Y` for every basic set `Y`.
pub fn fixing_b_values(s: &SchurPartition) -> Vec<u32> {
    let n = s.n();
    (0..n)
        .filter(|&b| {
            s.basic_sets().iter().all(|y| {
                y.multiplier_image(b as i64) == *y && y.multiplier_image(-(b as i64) - 1) == *y
            })
        })
        .collect()
}

/// Whether some generating basic set `X` has `X^(−1) ⊆ X + X`.
pub fn has_generating_set_with_inverse_in_square(s: &SchurPartition) -> bool {
    s.basic_sets()
        .iter()
        .any(|x| x.generates() && inverse_in_square(x))
}

fn inverse_in_square(x: &ResidueSet) -> bool {
    x.sumset(x)
        .map(|sq| x.negate().is_subset(&sq))
        .unwrap_or(false)
}

/// One factor `A_i` of a tensor decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFactor {
    /// `U_i ≤ Z_n`, containing the radical.
    pub subgroup: Subgroup,
    /// `|U_i / L|`.
    pub order: u32,
    /// The factor S-ring over `U_i/L ≅ Z_order`.
    pub sring: SchurPartition,
    pub is_orbit: bool,
}

/// Side conditions on a decomposition `A/L = A_0 ⊗ A_1 ⊗ ⋯ ⊗ A_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionConditions {
    pub pairwise_coprime: bool,
    pub rank_two_factors: bool,
    pub orders_above_three: bool,
    pub factor0_orbit: bool,
    pub factor0_free: bool,
}

impl DecompositionConditions {
    pub fn all_hold(&self) -> bool {
        self.pairwise_coprime
            && self.rank_two_factors
            && self.orders_above_three
            && self.factor0_orbit
            && self.factor0_free
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDecomposition {
    pub radical: Subgroup,
    /// Factor 0 first, then the rank-2 factors by increasing order.
    pub factors: Vec<TensorFactor>,
    pub conditions: DecompositionConditions,
    /// Orders `(|U_0/L|, [|U_1/L|, ...])` of every valid factorization found.
    pub alternatives: Vec<(u32, Vec<u32>)>,
}

impl TensorDecomposition {
    /// Number of rank-2 factors.
    pub fn k(&self) -> usize {
        self.factors.len() - 1
    }

    /// `|Z_n / L|`.
    pub fn quotient_order(&self) -> u32 {
        self.factors.iter().map(|f| f.order).product()
    }

    fn split(&self) -> CrtSplit {
        let orders: Vec<u32> = self.factors.iter().map(|f| f.order).collect();
        CrtSplit::new(self.quotient_order(), &orders).expect("factor orders are coprime")
    }

    /// The product partition over `Z_n/L`.
    pub fn reconstruct(&self) -> Result<TranslationPartition> {
        let split = self.split();
        let mut classes = vec![];
        let mut combos: Vec<Vec<ResidueSet>> = vec![vec![]];
        for f in &self.factors {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    f.sring.basic_sets().iter().map(move |x| {
                        let mut v = prefix.clone();
                        v.push(*x);
                        v
                    })
                })
                .collect();
        }
        for parts in combos {
            classes.push(split.product(&parts)?);
        }
        TranslationPartition::from_classes(classes)
    }

    /// `φ_i(π(x))` for a residue `x` of `Z_n`.
    pub fn project(&self, set: &ResidueSet, i: usize) -> ResidueSet {
        let q = self.quotient_order();
        let image = ResidueSet::from_members(q, set.iter().map(|v| v % q)).expect("valid modulus");
        self.split().project(&image, i)
    }
}

struct Candidate {
    orders: Vec<u32>,
    factors: Vec<SchurPartition>,
}

/// Test whether `s` is the tensor product of its projections onto the
/// coprime factors `orders`.
fn tensor_factors(s: &SchurPartition, orders: &[u32]) -> Result<Option<Vec<SchurPartition>>> {
    let split = CrtSplit::new(s.n(), orders)?;
    let mut factor_sets: Vec<BTreeSet<ResidueSet>> = vec![BTreeSet::new(); orders.len()];
    for x in s.basic_sets() {
        let mut size = 1usize;
        for (i, fs) in factor_sets.iter_mut().enumerate() {
            let p = split.project(x, i);
            size *= p.len();
            fs.insert(p);
        }
        if size != x.len() {
            return Ok(None);
        }
    }
    let ranks: usize = factor_sets.iter().map(BTreeSet::len).product();
    if ranks != s.rank() {
        return Ok(None);
    }
    let mut factors = Vec::new();
    for fs in factor_sets {
        let classes: Vec<ResidueSet> = fs.into_iter().collect();
        let total: usize = classes.iter().map(ResidueSet::len).sum();
        let n = classes[0].modulus();
        if total != n as usize {
            return Ok(None);
        }
        match TranslationPartition::from_classes(classes) {
            Ok(p) => factors.push(expect_schur(p, "tensor factor")?),
            Err(_) => return Ok(None),
        }
    }
    Ok(Some(factors))
}

fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

/// Decompose a free S-ring as `A_0 ⊗ A_1 ⊗ ⋯ ⊗ A_k` over a coprime
/// factorization of `Z_n`, with rank-2 factors of order above 3 for `i > 0`.
///
/// Every valid factorization is listed in `alternatives`; the one with the
/// most rank-2 factors is returned, preferring an orbit S-ring as factor 0.
pub fn tensor_decompose_free(s: &SchurPartition) -> Result<TensorDecomposition> {
    let radical = sring_radical(s)?;
    if !radical.is_trivial() {
        return Err(Error::InvalidInput(format!(
            "S-ring is not free (radical {radical}); decompose its quotient instead"
        )));
    }
    decompose_free_unchecked(s, radical)
}

fn decompose_free_unchecked(s: &SchurPartition, radical: Subgroup) -> Result<TensorDecomposition> {
    let n = s.n();
    let prime_powers: Vec<u32> = factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for blocks in set_partitions(&prime_powers) {
        let orders: Vec<u32> = blocks.iter().map(|b| b.iter().product()).collect();
        let Some(parts) = tensor_factors(s, &orders)? else {
            continue;
        };
        // rank-2 blocks of order > 3 become U_i; everything else merges into U_0
        let (mut order0, mut rest) = (1u32, Vec::new());
        for (o, p) in orders.iter().zip(&parts) {
            if p.rank() == 2 && *o > 3 {
                rest.push(*o);
            } else {
                order0 *= o;
            }
        }
        rest.sort_unstable();
        let mut orders = vec![order0];
        orders.extend(&rest);
        if candidates.iter().any(|c| c.orders == orders) {
            continue;
        }
        let factors = tensor_factors(s, &orders)?.expect("merging tensor factors stays valid");
        candidates.push(Candidate { orders, factors });
    }
    if candidates.is_empty() {
        // a single factor always works; reached only for n = 1
        candidates.push(Candidate {
            orders: vec![n],
            factors: vec![s.clone()],
        });
    }
    let alternatives = candidates
        .iter()
        .map(|c| (c.orders[0], c.orders[1..].to_vec()))
        .collect();
    let best = candidates
        .into_iter()
        .max_by_key(|c| {
            (
                c.orders.len(),
                is_orbit_sring(&c.factors[0]),
                std::cmp::Reverse(c.orders[0]),
            )
        })
        .expect("at least one candidate");
    let q = n;
    let big_n = radical.modulus();
    let factors: Vec<TensorFactor> = best
        .orders
        .iter()
        .zip(best.factors)
        .map(|(&order, sring)| TensorFactor {
            // U_i/L = (q/order)·Z_q lifts to (q/order)·Z_N
            subgroup: Subgroup::new(big_n, q / order).expect("divisor of n"),
            order,
            is_orbit: is_orbit_sring(&sring),
            sring,
        })
        .collect();
    let conditions = DecompositionConditions {
        pairwise_coprime: true,
        rank_two_factors: factors[1..].iter().all(|f| f.sring.rank() == 2),
        orders_above_three: factors[1..].iter().all(|f| f.order > 3),
        factor0_orbit: factors[0].is_orbit,
        factor0_free: factors[0].order == 1 || is_free(&factors[0].sring).unwrap_or(false),
    };
    Ok(TensorDecomposition {
        radical,
        factors,
        conditions,
        alternatives,
    })
}

/// Quotient by the radical, then decompose the free quotient. The factor
/// subgroups `U_i` are reported inside `Z_n`.
pub fn decompose(s: &SchurPartition) -> Result<TensorDecomposition> {
    let radical = sring_radical(s)?;
    let free = quotient(s, &radical)?;
    let mut dec = decompose_free_unchecked(&free, radical)?;
    for f in &mut dec.factors {
        let q = radical.generator();
        f.subgroup = Subgroup::new(s.n(), q / f.order)?;
    }
    Ok(dec)
}

/// Outcome of the structural checks on a generating basic set `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionLemmaReport {
    pub radical: Subgroup,
    /// `X` is a union of `L`-cosets.
    pub union_of_cosets: bool,
    /// `π(X) = φ_0π(X) × (U_1/L ∖ {L}) × ⋯ × (U_k/L ∖ {L})`.
    pub product_shape: bool,
    /// `|X| ≥ |Y|` for every basic set `Y`.
    pub largest: bool,
    /// `X^(−1) ⊆ X + X`.
    pub inverse_in_square: bool,
    /// When `inverse_in_square`: `π(Y)^(−1) ⊆ π(Y) + π(Y)` for every `Y`.
    pub inverse_in_square_everywhere: bool,
}

impl DecompositionLemmaReport {
    pub fn passed(&self) -> bool {
        self.union_of_cosets
            && self.product_shape
            && self.largest
            && (!self.inverse_in_square || self.inverse_in_square_everywhere)
    }
}

pub fn verify_decomposition_lemmas(
    s: &SchurPartition,
    x: &ResidueSet,
) -> Result<DecompositionLemmaReport> {
    if !s.is_basic_set(x) {
        return Err(Error::InvalidInput(format!("{x} is not a basic set")));
    }
    if !x.generates() {
        return Err(Error::InvalidInput(format!(
            "{x} does not generate Z_{}",
            s.n()
        )));
    }
    let dec = decompose(s)?;
    let l = dec.radical;
    let q = l.generator();
    let pi = |y: &ResidueSet| {
        ResidueSet::from_members(q, y.iter().map(|v| v % q)).expect("valid modulus")
    };

    let union_of_cosets = l.is_subgroup_of(&x.radical());

    let mut parts = vec![dec.project(x, 0)];
    for f in &dec.factors[1..] {
        let mut nonzero = ResidueSet::full(f.order)?;
        nonzero.remove(0);
        parts.push(nonzero);
    }
    let product_shape = dec.split().product(&parts)? == pi(x);

    let largest = s.basic_sets().iter().all(|y| x.len() >= y.len());

    let premise = inverse_in_square(x);
    let everywhere = s.basic_sets().iter().all(|y| inverse_in_square(&pi(y)));

    Ok(DecompositionLemmaReport {
        radical: l,
        union_of_cosets,
        product_shape,
        largest,
        inverse_in_square: premise,
        inverse_in_square_everywhere: everywhere,
    })
}

/// Everything the CLI prints about an S-ring.
#[derive(Clone, Debug, Serialize)]
pub struct SringSummary {
    pub partition: String,
    pub a_subgroups: Vec<String>,
    pub radical: Option<String>,
    pub free: Option<bool>,
    pub multiplier_group: Vec<u32>,
    pub orbit: bool,
    pub closure_violations: usize,
    /// `(|U_0/L|, [|U_i/L|])`, or `None` when the radical is undefined.
    pub decomposition: Option<(u32, Vec<u32>)>,
    pub decomposition_conditions: Option<DecompositionConditions>,
}

pub fn summary(s: &SchurPartition) -> SringSummary {
    let radical = sring_radical(s).ok();
    let dec = decompose(s).ok();
    SringSummary {
        partition: s.to_string(),
        a_subgroups: a_subgroups(s).iter().map(Subgroup::to_string).collect(),
        radical: radical.map(|r| r.to_string()),
        free: radical.map(|r| r.is_trivial()),
        multiplier_group: multiplier_group(s),
        orbit: is_orbit_sring(s),
        closure_violations: multiplier_closure_check(s).violations.len(),
        decomposition: dec.as_ref().map(|d| {
            (
                d.factors[0].order,
                d.factors[1..].iter().map(|f| f.order).collect(),
            )
        }),
        decomposition_conditions: dec.map(|d| d.conditions),
    }
}

impl fmt::Display for SringSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S-ring {}", self.partition)?;
        writeln!(f, "  A-subgroups: {}", self.a_subgroups.join(", "))?;
        match (&self.radical, self.free) {
            (Some(r), Some(free)) => {
                writeln!(f, "  radical: {r}{}", if free { " (free)" } else { "" })?
            }
            _ => writeln!(
                f,
                "  radical: undefined (no basic set contains a generator)"
            )?,
        }
        writeln!(f, "  multiplier group: {:?}", self.multiplier_group)?;
        writeln!(
            f,
            "  orbit S-ring: {}",
            if self.orbit { "yes" } else { "no" }
        )?;
        writeln!(
            f,
            "  multiplier closure violations: {}",
            self.closure_violations
        )?;
        if let (Some((o0, rest)), Some(c)) = (&self.decomposition, &self.decomposition_conditions) {
            let rest: Vec<String> = rest.iter().map(|o| format!("Z_{o} (rank 2)")).collect();
            let mut line = format!("  A/rad(A) = A_0 over Z_{o0}");
            for r in rest {
                line.push_str(" ⊗ ");
                line.push_str(&r);
            }
            writeln!(f, "{line}")?;
            writeln!(
                f,
                "  factor 0 orbit: {}, factor 0 free: {}",
                c.factor0_orbit, c.factor0_free
            )?;
        }
        Ok(())
    }
}
