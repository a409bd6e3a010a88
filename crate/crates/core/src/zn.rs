//! Arithmetic on the cyclic group `Z_n` and its subsets.
//!
//! A [`ResidueSet`] is a membership mask over `0..n` packed into a `u128`, so
//! every set operation is a handful of word operations and no value allocates.
//! Moduli are therefore capped at [`MAX_MODULUS`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus (width of the membership mask).
pub const MAX_MODULUS: u32 = 128;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Distinct prime divisors of `n` with their exponents.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The units of `Z_n` in increasing order.
pub fn units(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&m| gcd(m as u64, n as u64) == 1).collect()
}

pub fn is_unit(m: u32, n: u32) -> bool {
    n == 1 || gcd((m % n) as u64, n as u64) == 1
}

/// Reduce a signed integer into `0..n`.
pub fn reduce(m: i64, n: u32) -> u32 {
    m.rem_euclid(n as i64) as u32
}

fn check_modulus(n: u32) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        Err(Error::ModulusOutOfRange(n))
    } else {
        Ok(())
    }
}

fn full_mask(n: u32) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// A subset of `Z_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueSet {
    n: u32,
    bits: u128,
}

impl ResidueSet {
    pub fn empty(n: u32) -> Result<Self> {
        check_modulus(n)?;
        Ok(ResidueSet { n, bits: 0 })
    }

    pub fn full(n: u32) -> Result<Self> {
        check_modulus(n)?;
        Ok(ResidueSet {
            n,
            bits: full_mask(n),
        })
    }

    pub fn singleton(n: u32, x: u32) -> Result<Self> {
        Self::from_members(n, [x])
    }

    /// Build a set from members, each of which must lie in `0..n`.
    pub fn from_members<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Result<Self> {
        check_modulus(n)?;
        let mut bits = 0u128;
        for x in members {
            if x >= n {
                return Err(Error::InvalidInput(format!(
                    "residue {x} out of range for modulus {n}"
                )));
            }
            bits |= 1u128 << x;
        }
        Ok(ResidueSet { n, bits })
    }

    /// Build a set from arbitrary integers, reducing each modulo `n`.
    pub fn from_reduced<I: IntoIterator<Item = i64>>(n: u32, members: I) -> Result<Self> {
        check_modulus(n)?;
        let bits = members
            .into_iter()
            .fold(0u128, |b, x| b | (1u128 << reduce(x, n)));
        Ok(ResidueSet { n, bits })
    }

    /// Raw constructor for masks already known to fit the modulus.
    pub(crate) fn from_bits(n: u32, bits: u128) -> Self {
        debug_assert!((1..=MAX_MODULUS).contains(&n));
        debug_assert_eq!(bits & !full_mask(n), 0);
        ResidueSet { n, bits }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.n && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: u32) {
        assert!(
            x < self.n,
            "residue {x} out of range for modulus {}",
            self.n
        );
        self.bits |= 1u128 << x;
    }

    pub fn remove(&mut self, x: u32) {
        if x < self.n {
            self.bits &= !(1u128 << x);
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn min(&self) -> Option<u32> {
        (self.bits != 0).then(|| self.bits.trailing_zeros())
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members {
        Members { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self::from_bits(self.n, self.bits | other.bits))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self::from_bits(self.n, self.bits & other.bits))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(Self::from_bits(self.n, self.bits & !other.bits))
    }

    pub fn complement(&self) -> Self {
        Self::from_bits(self.n, !self.bits & full_mask(self.n))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// The translate `X + g`.
    pub fn shift(&self, g: u32) -> Self {
        let g = g % self.n;
        if g == 0 {
            return *self;
        }
        let n = self.n;
        let bits = ((self.bits << g) | (self.bits >> (n - g))) & full_mask(n);
        Self::from_bits(n, bits)
    }

    /// `X^(-1)`, the set of negatives.
    pub fn negate(&self) -> Self {
        self.multiplier_image(-1)
    }

    /// `{m·x mod n : x ∈ X}`. `m` need not be a unit.
    pub fn multiplier_image(&self, m: i64) -> Self {
        let m = reduce(m, self.n) as u64;
        let n = self.n as u64;
        let bits = self
            .iter()
            .fold(0u128, |b, x| b | 1u128 << (m * x as u64 % n));
        Self::from_bits(self.n, bits)
    }

    /// `{x + y : x ∈ X, y ∈ Y}`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let bits = self.iter().fold(0u128, |b, x| b | other.shift(x).bits);
        Ok(Self::from_bits(self.n, bits))
    }

    /// The subgroup generated by the members (`{0}` for the empty set).
    pub fn generated_subgroup(&self) -> Subgroup {
        let d = self.iter().fold(self.n as u64, |g, x| gcd(g, x as u64)) as u32;
        Subgroup {
            n: self.n,
            generator: d,
        }
    }

    pub fn generates(&self) -> bool {
        self.generated_subgroup().is_whole()
    }

    /// `rad(X) = {g : g + X = X}`, the largest subgroup whose cosets `X` is a union of.
    pub fn radical(&self) -> Subgroup {
        let period = (1..self.n)
            .find(|&g| self.n.is_multiple_of(g) && self.shift(g) == *self)
            .unwrap_or(self.n);
        Subgroup {
            n: self.n,
            generator: period,
        }
    }

    /// Compare by the sorted member lists, lexicographically.
    ///
    /// For sets of equal size this is the order used to pick a canonical
    /// representative of a multiplier class.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.bits;
        let mut b = other.bits;
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
            if x != y {
                return x.cmp(&y);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

pub struct Members {
    bits: u128,
}

impl Iterator for Members {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.bits.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueSet({self})")
    }
}

/// Parses the `n:a,b,c` syntax. `n:` is the empty set.
impl FromStr for ResidueSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `n:a,b,c`, got {s:?}")))?;
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        let members = parse_list(rest)?;
        ResidueSet::from_members(n, members)
    }
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad residue {t:?}")))
        })
        .collect()
}

impl Serialize for ResidueSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ResidueSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The subgroup `dZ_n` of `Z_n`, `d | n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    n: u32,
    generator: u32,
}

impl Subgroup {
    pub fn new(n: u32, generator: u32) -> Result<Self> {
        check_modulus(n)?;
        if generator == 0 || !n.is_multiple_of(generator) {
            return Err(Error::InvalidInput(format!(
                "{generator} does not divide {n}"
            )));
        }
        Ok(Subgroup { n, generator })
    }

    /// The unique subgroup of the given order.
    pub fn of_order(n: u32, order: u32) -> Result<Self> {
        if order == 0 || !n.is_multiple_of(order) {
            return Err(Error::InvalidInput(format!(
                "Z_{n} has no subgroup of order {order}"
            )));
        }
        Self::new(n, n / order)
    }

    pub fn trivial(n: u32) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn whole(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    /// All subgroups of `Z_n`, from `Z_n` down to `{0}`.
    pub fn all(n: u32) -> Result<Vec<Self>> {
        check_modulus(n)?;
        Ok(divisors(n)
            .into_iter()
            .map(|d| Subgroup { n, generator: d })
            .collect())
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// The divisor `d` with subgroup `dZ_n`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn order(&self) -> u32 {
        self.n / self.generator
    }

    /// Order of the factor group `Z_n / self`.
    pub fn index(&self) -> u32 {
        self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.n
    }

    pub fn is_whole(&self) -> bool {
        self.generator == 1
    }

    pub fn contains(&self, x: u32) -> bool {
        x.is_multiple_of(self.generator)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.n == other.n && self.generator.is_multiple_of(other.generator)
    }

    pub fn to_set(&self) -> ResidueSet {
        let bits = (0..self.n)
            .step_by(self.generator as usize)
            .fold(0u128, |b, x| b | 1u128 << x);
        ResidueSet::from_bits(self.n, bits)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Z_{} (order {})", self.generator, self.n, self.order())
    }
}

/// A ring isomorphism `Z_n ≅ Z_{f_1} × ⋯ × Z_{f_k}` for pairwise coprime `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSplit {
    n: u32,
    factors: Vec<u32>,
    // basis[i] ≡ 1 (mod factors[i]) and ≡ 0 modulo every other factor
    basis: Vec<u32>,
}

impl CrtSplit {
    pub fn new(n: u32, factors: &[u32]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidInput("zero factor".into()));
        }
        let product: u64 = factors.iter().map(|&f| f as u64).product();
        if product != n as u64 {
            return Err(Error::InvalidInput(format!(
                "factors {factors:?} multiply to {product}, not {n}"
            )));
        }
        for (i, &a) in factors.iter().enumerate() {
            for &b in &factors[i + 1..] {
                if gcd(a as u64, b as u64) != 1 {
                    return Err(Error::InvalidInput(format!(
                        "factors {a} and {b} are not coprime"
                    )));
                }
            }
        }
        let basis = factors
            .iter()
            .map(|&f| {
                let rest = n / f;
                // rest · t ≡ 1 (mod f); f is small, so search directly
                let t = (0..f).find(|&t| (rest as u64 * t as u64) % f as u64 == 1 % f as u64);
                (rest as u64 * t.unwrap_or(0) as u64 % n as u64) as u32
            })
            .collect();
        Ok(CrtSplit {
            n,
            factors: factors.to_vec(),
            basis,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn forward(&self, x: u32) -> Vec<u32> {
        self.factors.iter().map(|&f| x % f).collect()
    }

    pub fn inverse(&self, parts: &[u32]) -> Result<u32> {
        if parts.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} components, got {}",
                self.factors.len(),
                parts.len()
            )));
        }
        let n = self.n as u64;
        let mut x = 0u64;
        for ((&r, &f), &e) in parts.iter().zip(&self.factors).zip(&self.basis) {
            if r >= f {
                return Err(Error::InvalidInput(format!(
                    "component {r} out of range for {f}"
                )));
            }
            x = (x + r as u64 * e as u64) % n;
        }
        Ok(x as u32)
    }

    /// Project a set onto factor `i`.
    pub fn project(&self, set: &ResidueSet, i: usize) -> ResidueSet {
        let f = self.factors[i];
        let bits = set.iter().fold(0u128, |b, x| b | 1u128 << (x % f));
        ResidueSet::from_bits(f, bits)
    }

    /// The preimage of a product of component sets.
    pub fn product(&self, parts: &[ResidueSet]) -> Result<ResidueSet> {
        if parts.len() != self.factors.len() {
            return Err(Error::InvalidInput("component count mismatch".into()));
        }
        for (p, &f) in parts.iter().zip(&self.factors) {
            if p.modulus() != f {
                return Err(Error::ModulusMismatch {
                    left: p.modulus(),
                    right: f,
                });
            }
        }
        let mut out = ResidueSet::empty(self.n)?;
        for x in 0..self.n {
            if self
                .factors
                .iter()
                .zip(parts)
                .all(|(&f, p)| p.contains(x % f))
            {
                out.insert(x);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(s: &str) -> ResidueSet {
        s.parse().unwrap()
    }

    fn pair_loop_sumset(x: &ResidueSet, y: &ResidueSet) -> Vec<u32> {
        let n = x.modulus();
        let mut out: Vec<u32> = x
            .iter()
            .flat_map(|a| y.iter().map(move |b| (a + b) % n))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn sumset_examples() {
        let x = set("6:1,4");
        assert_eq!(pair_loop_sumset(&x, &x), vec![2, 5]);
        assert_eq!(x.sumset(&x).unwrap(), set("6:2,5"));

        let y = set("13:1,3,9");
        assert_eq!(pair_loop_sumset(&y, &y), vec![2, 4, 5, 6, 10, 12]);
        assert_eq!(y.sumset(&y).unwrap(), set("13:2,4,5,6,10,12"));

        assert!(y
            .sumset(&ResidueSet::empty(13).unwrap())
            .unwrap()
            .is_empty());
        assert!(matches!(
            y.sumset(&x),
            Err(Error::ModulusMismatch { left: 13, right: 6 })
        ));
    }

    #[test]
    fn multiplier_examples() {
        let x = set("13:1,3,9");
        assert_eq!(x.multiplier_image(4), set("13:4,10,12"));
        assert_eq!(x.multiplier_image(-1), set("13:4,10,12"));
        assert_eq!(x.multiplier_image(1), x);
        // non-units collapse
        assert_eq!(set("12:1,5,7").multiplier_image(6), set("12:6"));
    }

    #[test]
    fn generated_subgroup_examples() {
        let g = set("12:4,10").generated_subgroup();
        assert_eq!((g.generator(), g.order()), (2, 6));
        assert!(set("13:1,3,9").generates());
        assert!(ResidueSet::empty(6)
            .unwrap()
            .generated_subgroup()
            .is_trivial());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(set("6:1,4").radical().to_set(), set("6:0,3"));
        assert!(set("13:1,3,9").radical().is_trivial());
        assert!(ResidueSet::full(9).unwrap().radical().is_whole());
    }

    #[test]
    fn crt_examples() {
        let c = CrtSplit::new(12, &[3, 4]).unwrap();
        assert_eq!(c.forward(7), vec![1, 3]);
        assert_eq!(c.inverse(&[1, 3]).unwrap(), 7);
        assert_eq!(c.forward(0), vec![0, 0]);
        assert_eq!(c.inverse(&[0, 0]).unwrap(), 0);
        let c = CrtSplit::new(6, &[2, 3]).unwrap();
        assert_eq!(c.forward(5), vec![1, 2]);
        assert_eq!(c.inverse(&[1, 2]).unwrap(), 5);

        assert!(CrtSplit::new(12, &[2, 6]).is_err());
        assert!(CrtSplit::new(12, &[3, 5]).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(set("13:9,1,3").to_string(), "13:1,3,9");
        assert_eq!(set("5:").to_string(), "5:");
        assert!("13:13".parse::<ResidueSet>().is_err());
        assert!("0:".parse::<ResidueSet>().is_err());
        assert!("129:1".parse::<ResidueSet>().is_err());
        assert!("13;1".parse::<ResidueSet>().is_err());
        let full = ResidueSet::full(128).unwrap();
        assert_eq!(full.len(), 128);
        assert_eq!(full.shift(5), full);
    }

    #[test]
    fn lex_order_matches_sorted_lists() {
        let a = set("10:1,5,9");
        let b = set("10:1,6,7");
        assert_eq!(a.lex_cmp(&b), a.to_vec().cmp(&b.to_vec()));
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }

    fn arb_set(max_n: u32) -> impl Strategy<Value = ResidueSet> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0..n, 0..n as usize)
                .prop_map(move |v| ResidueSet::from_members(n, v).unwrap())
        })
    }

    fn arb_triple(max_n: u32) -> impl Strategy<Value = (ResidueSet, ResidueSet, ResidueSet)> {
        (1..=max_n).prop_flat_map(|n| {
            let s = move || {
                proptest::collection::vec(0..n, 0..n as usize)
                    .prop_map(move |v| ResidueSet::from_members(n, v).unwrap())
            };
            (s(), s(), s())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn sumset_is_commutative_and_associative((x, y, z) in arb_triple(30)) {
            prop_assert_eq!(x.sumset(&y).unwrap(), y.sumset(&x).unwrap());
            prop_assert_eq!(
                x.sumset(&y).unwrap().sumset(&z).unwrap(),
                x.sumset(&y.sumset(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(x.sumset(&y).unwrap().to_vec(), pair_loop_sumset(&x, &y));
        }

        #[test]
        fn multiplier_images_compose(x in arb_set(40), a in -50i64..50, b in -50i64..50) {
            let n = x.modulus() as i64;
            prop_assert_eq!(
                x.multiplier_image(a).multiplier_image(b),
                x.multiplier_image((a * b).rem_euclid(n))
            );
        }

        #[test]
        fn radical_is_the_maximal_coset_subgroup(x in arb_set(60)) {
            let rad = x.radical();
            prop_assert_eq!(x.sumset(&rad.to_set()).unwrap(), x);
            for h in Subgroup::all(x.modulus()).unwrap() {
                if x.sumset(&h.to_set()).unwrap() == x {
                    prop_assert!(h.is_subgroup_of(&rad));
                }
            }
        }

        #[test]
        fn crt_round_trips(n in 1u32..=120) {
            let factors: Vec<u32> = factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect();
            let factors = if factors.is_empty() { vec![1] } else { factors };
            let c = CrtSplit::new(n, &factors).unwrap();
            for x in 0..n {
                prop_assert_eq!(c.inverse(&c.forward(x)).unwrap(), x);
            }
        }
    }
}
