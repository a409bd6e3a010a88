//! Named circulant families and the expected answer set for one-type
//! weakly distance-regular circulants of a given order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, Certificate};
use crate::circulant::{direct_product, lex_product, Circulant};
use crate::error::{Error, Result};
use crate::zn::{divisors, is_prime, ResidueSet};

/// `C_n = Cay(Z_n, {1})`.
pub fn cycle(n: u32) -> Result<Circulant> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("cycle needs n ≥ 2, got {n}")));
    }
    Circulant::from_members(n, [1])
}

/// `K_n = Cay(Z_n, Z_n ∖ {0})`.
pub fn complete(n: u32) -> Result<Circulant> {
    Circulant::from_members(n, 1..n)
}

/// `K̄_n = Cay(Z_n, ∅)`.
pub fn empty(n: u32) -> Result<Circulant> {
    Circulant::from_members(n, [])
}

/// The Paley digraph `P(p)` on the nonzero squares, `p ≡ 3 (mod 4)` prime.
pub fn paley(p: u32) -> Result<Circulant> {
    if !is_prime(p) || p % 4 != 3 {
        return Err(Error::InvalidInput(format!(
            "Paley digraphs need a prime p ≡ 3 (mod 4), got {p}"
        )));
    }
    Circulant::from_members(p, (1..p).map(|x| (x as u64 * x as u64 % p as u64) as u32))
}

/// Least primitive root modulo a prime.
pub fn primitive_root(p: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = |g: u32| {
        let mut x = g as u64;
        let mut k = 1;
        while x != 1 {
            x = x * g as u64 % p as u64;
            k += 1;
        }
        k
    };
    Ok((2..p)
        .find(|&g| order(g) == p - 1)
        .expect("primes have primitive roots"))
}

/// The cosets `α^i⟨α^d⟩`, `0 ≤ i < d`, of the index-`d` subgroup of `Z_p^×`,
/// with `α` the least primitive root.
pub fn cyclotomic_classes(p: u32, d: u32) -> Result<Vec<ResidueSet>> {
    let alpha = primitive_root(p)? as u64;
    if d == 0 || !(p - 1).is_multiple_of(d) {
        return Err(Error::InvalidInput(format!(
            "{d} does not divide {}",
            p - 1
        )));
    }
    let pow = |e: u32| (0..e).fold(1u64, |x, _| x * alpha % p as u64);
    let step = pow(d);
    (0..d)
        .map(|i| {
            let start = pow(i);
            let members = (0..(p - 1) / d).scan(start, |x, _| {
                let v = *x;
                *x = *x * step % p as u64;
                Some(v as u32)
            });
            ResidueSet::from_members(p, members)
        })
        .collect()
}

/// A named family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `C_m`
    Cycle { m: u32 },
    /// `C_m[K̄_l]`
    CycleLex { m: u32, l: u32 },
    /// `P(p)[K̄_l]`
    PaleyLex { p: u32, l: u32 },
    /// `C_3 × K_h`
    C3xKh { h: u32 },
    /// `(C_3 × K_h)[K̄_l]`
    C3xKhLex { h: u32, l: u32 },
    /// `Cay(Z_13, {1,3,9})[K̄_l]`
    Z13Lex { l: u32 },
}

fn check_h(h: u32) -> Result<()> {
    if h <= 3 || h.is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "need h > 3 and 3 ∤ h, got h = {h}"
        )));
    }
    Ok(())
}

fn check_l(l: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidInput("need l ≥ 1".into()));
    }
    Ok(())
}

impl FamilyTag {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilyTag::Cycle { m } if m < 3 => {
                Err(Error::InvalidInput(format!("need m ≥ 3, got {m}")))
            }
            FamilyTag::Cycle { .. } => Ok(()),
            FamilyTag::CycleLex { m, l } => {
                if m < 3 {
                    return Err(Error::InvalidInput(format!("need m ≥ 3, got {m}")));
                }
                check_l(l)
            }
            FamilyTag::PaleyLex { p, l } => {
                if p <= 3 || !is_prime(p) || p % 4 != 3 {
                    return Err(Error::InvalidInput(format!(
                        "need a prime p > 3 with p ≡ 3 (mod 4), got {p}"
                    )));
                }
                check_l(l)
            }
            FamilyTag::C3xKh { h } => check_h(h),
            FamilyTag::C3xKhLex { h, l } => {
                check_h(h)?;
                check_l(l)
            }
            FamilyTag::Z13Lex { l } => check_l(l),
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> u32 {
        match *self {
            FamilyTag::Cycle { m } => m,
            FamilyTag::CycleLex { m, l } => m * l,
            FamilyTag::PaleyLex { p, l } => p * l,
            FamilyTag::C3xKh { h } => 3 * h,
            FamilyTag::C3xKhLex { h, l } => 3 * h * l,
            FamilyTag::Z13Lex { l } => 13 * l,
        }
    }

    pub fn build(&self) -> Result<Circulant> {
        self.validate()?;
        if self.order() > crate::zn::MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(self.order()));
        }
        let blow_up = |c: Circulant, l: u32| lex_product(&c, &empty(l)?);
        match *self {
            FamilyTag::Cycle { m } => cycle(m),
            FamilyTag::CycleLex { m, l } => blow_up(cycle(m)?, l),
            FamilyTag::PaleyLex { p, l } => blow_up(paley(p)?, l),
            FamilyTag::C3xKh { h } => direct_product(&cycle(3)?, &complete(h)?),
            FamilyTag::C3xKhLex { h, l } => blow_up(direct_product(&cycle(3)?, &complete(h)?)?, l),
            FamilyTag::Z13Lex { l } => blow_up(Circulant::from_members(13, [1, 3, 9])?, l),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Cycle { m } => write!(f, "Cycle(m={m})"),
            FamilyTag::CycleLex { m, l } => write!(f, "CycleLex(m={m},l={l})"),
            FamilyTag::PaleyLex { p, l } => write!(f, "PaleyLex(p={p},l={l})"),
            FamilyTag::C3xKh { h } => write!(f, "C3xKh(h={h})"),
            FamilyTag::C3xKhLex { h, l } => write!(f, "C3xKhLex(h={h},l={l})"),
            FamilyTag::Z13Lex { l } => write!(f, "Z13Lex(l={l})"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad family tag {s:?}"));
        let s = s.trim();
        let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut params = BTreeMap::new();
        for part in body.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: u32 = v.trim().parse().map_err(|_| bad())?;
            if params.insert(k.trim().to_string(), v).is_some() {
                return Err(bad());
            }
        }
        let mut take = |k: &str| params.remove(k).ok_or_else(bad);
        let tag = match kind.trim() {
            "Cycle" => FamilyTag::Cycle { m: take("m")? },
            "CycleLex" => FamilyTag::CycleLex {
                m: take("m")?,
                l: take("l")?,
            },
            "PaleyLex" => FamilyTag::PaleyLex {
                p: take("p")?,
                l: take("l")?,
            },
            "C3xKh" => FamilyTag::C3xKh { h: take("h")? },
            "C3xKhLex" => FamilyTag::C3xKhLex {
                h: take("h")?,
                l: take("l")?,
            },
            "Z13Lex" => FamilyTag::Z13Lex { l: take("l")? },
            _ => return Err(bad()),
        };
        if !params.is_empty() {
            return Err(bad());
        }
        tag.validate()?;
        Ok(tag)
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A family member with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub circulant: Circulant,
    pub tag: FamilyTag,
    pub canon: Certificate,
}

fn dedup(tags: impl IntoIterator<Item = FamilyTag>) -> Result<Vec<FamilyMember>> {
    let mut out: Vec<FamilyMember> = Vec::new();
    for tag in tags {
        let circulant = tag.build()?;
        let canon = canonical_form(&circulant);
        if out.iter().all(|m| m.canon != canon) {
            out.push(FamilyMember {
                circulant,
                tag,
                canon,
            });
        }
    }
    Ok(out)
}

/// Every one-type weakly distance-regular circulant on `n` vertices up to
/// isomorphism: `C_m[K̄_l]`, `P(p)[K̄_l]`, `C_3 × K_h` and
/// `Cay(Z_13, {1,3,9})[K̄_l]`.
pub fn expected_one_type_family(n: u32) -> Result<Vec<FamilyMember>> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n ≥ 3, got {n}")));
    }
    if n > crate::zn::MAX_MODULUS {
        return Err(Error::ModulusOutOfRange(n));
    }
    let mut tags = Vec::new();
    for m in divisors(n).into_iter().filter(|&m| m >= 3).rev() {
        let l = n / m;
        tags.push(if l == 1 {
            FamilyTag::Cycle { m }
        } else {
            FamilyTag::CycleLex { m, l }
        });
    }
    for p in divisors(n) {
        if p > 3 && is_prime(p) && p % 4 == 3 {
            tags.push(FamilyTag::PaleyLex { p, l: n / p });
        }
    }
    if n.is_multiple_of(3) && check_h(n / 3).is_ok() {
        tags.push(FamilyTag::C3xKh { h: n / 3 });
    }
    if n.is_multiple_of(13) {
        tags.push(FamilyTag::Z13Lex { l: n / 13 });
    }
    dedup(tags)
}

/// The possible shapes of `Δ_3` on `n` vertices: `P(p)[K̄_l]`, `C_3 × K_h`,
/// `Cay(Z_13,{1,3,9})[K̄_l]`, `C_3[K̄_l]` and `(C_3 × K_h)[K̄_l]` with `l > 1`.
pub fn delta3_candidates(n: u32) -> Result<Vec<FamilyMember>> {
    let mut tags = Vec::new();
    for p in divisors(n) {
        if p > 3 && is_prime(p) && p % 4 == 3 {
            tags.push(FamilyTag::PaleyLex { p, l: n / p });
        }
    }
    if n.is_multiple_of(3) {
        let l = n / 3;
        tags.push(if l == 1 {
            FamilyTag::Cycle { m: 3 }
        } else {
            FamilyTag::CycleLex { m: 3, l }
        });
        for h in divisors(n / 3) {
            if check_h(h).is_ok() {
                let l = n / (3 * h);
                tags.push(if l == 1 {
                    FamilyTag::C3xKh { h }
                } else {
                    FamilyTag::C3xKhLex { h, l }
                });
            }
        }
    }
    if n.is_multiple_of(13) {
        tags.push(FamilyTag::Z13Lex { l: n / 13 });
    }
    dedup(tags)
}

/// The family tag of `c`, if it is isomorphic to an expected one-type member.
pub fn match_family(c: &Circulant) -> Option<FamilyTag> {
    let canon = canonical_form(c);
    expected_one_type_family(c.n())
        .ok()?
        .into_iter()
        .find(|m| m.canon == canon)
        .map(|m| m.tag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn circ(s: &str) -> Circulant {
        s.parse().unwrap()
    }

    #[test]
    fn base_circulants() {
        assert_eq!(cycle(5).unwrap(), circ("5:1"));
        assert_eq!(complete(4).unwrap(), circ("4:1,2,3"));
        assert_eq!(empty(3).unwrap(), circ("3:"));
    }

    #[test]
    fn paley_sets() {
        assert_eq!(paley(7).unwrap(), circ("7:1,2,4"));
        assert_eq!(paley(11).unwrap(), circ("11:1,3,4,5,9"));
        assert_eq!(paley(3).unwrap(), circ("3:1"));
        assert!(paley(13).is_err());
        assert!(paley(15).is_err());
    }

    #[test]
    fn cyclotomy() {
        assert_eq!(primitive_root(13).unwrap(), 2);
        let cls = cyclotomic_classes(13, 4).unwrap();
        let want = ["13:1,3,9", "13:2,5,6", "13:4,10,12", "13:7,8,11"];
        for (c, w) in cls.iter().zip(want) {
            assert_eq!(*c, w.parse::<ResidueSet>().unwrap());
        }
        let base = circ("13:1,3,9");
        for c in &cls {
            assert!(is_isomorphic(&Circulant::new(*c).unwrap(), &base));
        }
        assert_eq!(
            cyclotomic_classes(7, 1).unwrap(),
            vec!["7:1,2,3,4,5,6".parse().unwrap()]
        );
        assert!(cyclotomic_classes(13, 5).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for s in [
            "Cycle(m=5)",
            "CycleLex(m=4,l=3)",
            "PaleyLex(p=7,l=1)",
            "C3xKh(h=4)",
            "C3xKhLex(h=4,l=4)",
            "Z13Lex(l=2)",
        ] {
            let t: FamilyTag = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{s}\""));
        }
        for bad in [
            "C3xKh(h=3)",
            "C3xKh(h=6)",
            "PaleyLex(p=13,l=1)",
            "Cycle(m=2)",
            "Cycle(m=5,l=1)",
            "Foo(m=3)",
        ] {
            assert!(bad.parse::<FamilyTag>().is_err(), "{bad}");
        }
    }

    #[test]
    fn builds() {
        assert_eq!(
            FamilyTag::C3xKh { h: 4 }.build().unwrap(),
            circ("12:1,7,10")
        );
        assert_eq!(
            FamilyTag::CycleLex { m: 4, l: 3 }.build().unwrap(),
            circ("12:1,5,9")
        );
        assert_eq!(
            FamilyTag::Z13Lex { l: 1 }.build().unwrap(),
            circ("13:1,3,9")
        );
    }

    #[test]
    fn expected_counts() {
        let count = |n| expected_one_type_family(n).unwrap().len();
        assert_eq!(count(6), 2);
        assert_eq!(count(7), 2);
        assert_eq!(count(12), 5);
        assert_eq!(count(13), 2);
        assert_eq!(count(14), 3);
        assert_eq!(count(4), 1);
        assert_eq!(count(3), 1);
    }

    #[test]
    fn matching() {
        assert_eq!(
            match_family(&circ("13:2,5,6")),
            Some(FamilyTag::Z13Lex { l: 1 })
        );
        assert_eq!(
            match_family(&circ("7:3,5,6")),
            Some(FamilyTag::PaleyLex { p: 7, l: 1 })
        );
        assert_eq!(match_family(&circ("12:1,2")), None);
    }
}
