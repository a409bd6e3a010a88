//! Weakly distance-regular circulants and the subdigraphs `Δ_q`.
//!
//! A circulant is weakly distance-regular when its two-way distance partition
//! is an association scheme. For an arc type `(1, q − 1)`, `F_q` is the
//! smallest closed subset containing that relation and `Δ_q` is the digraph
//! of `(1, q − 1)`-arcs inside `F_q(0)`. Because `F_q(0) = dZ_n` is cyclic,
//! `Δ_q` is returned as a circulant on `Z_{n/d}`.

use std::fmt;

use serde::Serialize;

use crate::canon::is_isomorphic;
use crate::circulant::{
    arc_types_from_table, distances_from_zero, lex_product, two_way_partition_from_table,
    Circulant, ClassLabel, TranslationPartition,
};
use crate::constructions::{cycle, delta3_candidates, empty, match_family, FamilyTag};
use crate::error::{Error, Result};
use crate::scheme::{verify_scheme, ClassSet, FailureWitness, SchemeData};
use crate::zn::{ResidueSet, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdrCertificate {
    pub circulant: Circulant,
    pub partition: TranslationPartition,
    pub scheme: SchemeData,
    /// `T = {q : (1, q − 1) is an arc type}`, ascending.
    pub types: Vec<u32>,
    /// `|T| = 1` and `2 ∉ T`.
    pub one_type: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Wdr(Box<WdrCertificate>),
    NotWdr(FailureWitness),
}

impl Outcome {
    pub fn is_wdr(&self) -> bool {
        matches!(self, Outcome::Wdr(_))
    }

    pub fn certificate(self) -> Option<WdrCertificate> {
        match self {
            Outcome::Wdr(c) => Some(*c),
            Outcome::NotWdr(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&FailureWitness> {
        match self {
            Outcome::Wdr(_) => None,
            Outcome::NotWdr(w) => Some(w),
        }
    }
}

/// Decide weak distance-regularity of a strongly connected circulant.
pub fn is_wdr(c: &Circulant) -> Result<Outcome> {
    let table = distances_from_zero(c)?;
    let partition = two_way_partition_from_table(c.n(), &table)?;
    match verify_scheme(&partition) {
        Err(w) => Ok(Outcome::NotWdr(w)),
        Ok(scheme) => {
            let types = arc_types_from_table(c, &table);
            let one_type = types.len() == 1 && types[0] != 2;
            Ok(Outcome::Wdr(Box::new(WdrCertificate {
                circulant: *c,
                partition,
                scheme,
                types,
                one_type,
            })))
        }
    }
}

impl WdrCertificate {
    /// Index of the `(a, b)` class, if present.
    pub fn class(&self, a: u32, b: u32) -> Option<usize> {
        self.partition.index_of_label(ClassLabel::Distance(a, b))
    }

    fn arc_class(&self, q: u32) -> Result<usize> {
        if !self.types.contains(&q) {
            return Err(Error::InvalidInput(format!(
                "{q} is not in T = {:?}",
                self.types
            )));
        }
        Ok(self.class(1, q - 1).expect("q ∈ T"))
    }

    /// `p_{(1,q−1),(1,q−1)}^{(2,q−2)}`, zero when there is no `(2, q − 2)` class.
    pub fn p_arc_arc_two(&self, q: u32) -> Result<u32> {
        let i = self.arc_class(q)?;
        Ok(q.checked_sub(2)
            .and_then(|r| self.class(2, r))
            .map_or(0, |l| self.scheme.p(i, i, l)))
    }

    /// `Γ_{1,q−1}^h = {Γ_{h,q−h}}` for `1 ≤ h ≤ q − 1`.
    pub fn powers_are_single_classes(&self, q: u32) -> Result<bool> {
        let i = self.arc_class(q)?;
        Ok((1..q).all(|h| match self.class(h, q - h) {
            Some(l) => self.scheme.power(i, h) == ClassSet::single(l),
            None => false,
        }))
    }

    pub fn is_primitive(&self) -> bool {
        self.scheme.is_primitive()
    }

    /// Every non-zero class generates `Z_n`.
    pub fn classes_generate(&self) -> bool {
        self.partition.classes()[1..]
            .iter()
            .all(ResidueSet::generates)
    }
}

/// `F_q` as a class set, with `F_q(0)` as a subgroup.
pub fn closed_fq(cert: &WdrCertificate, q: u32) -> Result<(ClassSet, Subgroup)> {
    let i = cert.arc_class(q)?;
    let f = cert.scheme.closed_subset_generated(ClassSet::single(i));
    let support = cert.scheme.residues(f);
    let sub = support.generated_subgroup();
    debug_assert_eq!(sub.to_set(), support);
    Ok((f, sub))
}

/// `Δ_q` as a circulant on `Z_{n/d}`, where `F_q(0) = dZ_n`.
pub fn delta_q(cert: &WdrCertificate, q: u32) -> Result<Circulant> {
    let (_, sub) = closed_fq(cert, q)?;
    let d = sub.generator();
    let arcs = cert.partition.class(cert.arc_class(q)?);
    Circulant::from_members(sub.order(), arcs.iter().map(|x| x / d))
}

/// Length of a shortest circuit of a strongly connected circulant.
pub fn girth(c: &Circulant) -> Result<u32> {
    let t = distances_from_zero(c)?;
    let n = c.n();
    c.connection()
        .iter()
        .map(|s| 1 + t.d_out[((n - s) % n) as usize])
        .min()
        .ok_or_else(|| Error::InvalidInput("empty connection set".into()))
}

/// `C_m[K̄_l]`.
pub fn cycle_blow_up(m: u32, l: u32) -> Result<Circulant> {
    lex_product(&cycle(m)?, &empty(l)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureReport {
    pub q: u32,
    /// `p_{(1,q−1),(1,q−1)}^{(2,q−2)}`
    pub p: u32,
    /// `k_{1,q−1}`
    pub k: u32,
    pub applicable: bool,
    pub powers_single: bool,
    pub isomorphic: bool,
}

impl PureReport {
    pub fn passed(&self) -> bool {
        !self.applicable || (self.powers_single && self.isomorphic)
    }
}

/// When `p_{(1,q−1),(1,q−1)}^{(2,q−2)} = k_{1,q−1}`: the powers of
/// `Γ_{1,q−1}` are single classes and `Δ_q ≅ C_q[K̄_k]`.
pub fn check_pure(cert: &WdrCertificate, q: u32) -> Result<PureReport> {
    let i = cert.arc_class(q)?;
    if q < 3 {
        return Err(Error::NotApplicable(format!("q = {q} < 3")));
    }
    let p = cert.p_arc_arc_two(q)?;
    let k = cert.scheme.valency(i);
    let applicable = p == k;
    let (powers_single, isomorphic) = if applicable {
        let delta = delta_q(cert, q)?;
        let iso = delta.n() == q * k && is_isomorphic(&delta, &cycle_blow_up(q, k)?);
        (cert.powers_are_single_classes(q)?, iso)
    } else {
        (false, false)
    };
    Ok(PureReport {
        q,
        p,
        k,
        applicable,
        powers_single,
        isomorphic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LargeQReport {
    pub q: u32,
    pub applicable: bool,
    /// `p_{(1,q−1),(1,q−1)}^{(2,q−2)}`
    pub p: u32,
    /// `l = k_{1,q−1}`
    pub l: u32,
    /// Shortest circuit length `m` in `Δ_q`.
    pub girth: u32,
    /// `Δ_q ≅ C_m[K̄_l]`
    pub isomorphic: bool,
    /// When `p > 0`: `p = k_{1,q−1}`.
    pub p_equals_k: Option<bool>,
    /// When `p > 0`: `Γ_{1,q−1}^h = {Γ_{h,q−h}}` for `1 ≤ h < q`.
    pub powers_single: Option<bool>,
    pub delta_is_wdr: bool,
}

impl LargeQReport {
    pub fn passed(&self) -> bool {
        !self.applicable
            || (self.isomorphic
                && self.p_equals_k != Some(false)
                && self.powers_single != Some(false))
    }
}

/// For `q > 3` with `p_{(1,q−1),(1,q−1)}^{(2,q−2)} > 0` or `|Γ_{1,q−1}²| = 1`:
/// `Δ_q ≅ C_m[K̄_l]` with `m` the girth of `Δ_q` and `l = k_{1,q−1}`.
pub fn check_prop_q_gt_3(cert: &WdrCertificate, q: u32) -> Result<LargeQReport> {
    let i = cert.arc_class(q)?;
    let p = cert.p_arc_arc_two(q)?;
    let l = cert.scheme.valency(i);
    let one = ClassSet::single(i);
    let square_single = cert.scheme.complex_product(one, one).len() == 1;
    let delta = delta_q(cert, q)?;
    let m = girth(&delta)?;
    let delta_is_wdr = is_wdr(&delta)?.is_wdr();
    if q <= 3 || (p == 0 && !square_single) {
        return Ok(LargeQReport {
            q,
            applicable: false,
            p,
            l,
            girth: m,
            isomorphic: false,
            p_equals_k: None,
            powers_single: None,
            delta_is_wdr,
        });
    }
    let isomorphic = delta.n() == m * l && is_isomorphic(&delta, &cycle_blow_up(m, l)?);
    let (p_equals_k, powers_single) = if p > 0 {
        (Some(p == l), Some(cert.powers_are_single_classes(q)?))
    } else {
        (None, None)
    };
    Ok(LargeQReport {
        q,
        applicable: true,
        p,
        l,
        girth: m,
        isomorphic,
        p_equals_k,
        powers_single,
        delta_is_wdr,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delta3Report {
    pub delta: Circulant,
    pub matched: Option<FamilyTag>,
    pub delta_is_wdr: bool,
}

/// When `min T = 3`: identify `Δ_3` among `P(p)[K̄_l]`, `C_3 × K_h`,
/// `Cay(Z_13,{1,3,9})[K̄_l]`, `C_3[K̄_l]` and `(C_3 × K_h)[K̄_l]`.
pub fn check_prop_q3(cert: &WdrCertificate) -> Result<Delta3Report> {
    if cert.types.first() != Some(&3) {
        return Err(Error::NotApplicable(format!(
            "min T ≠ 3 (T = {:?})",
            cert.types
        )));
    }
    let delta = delta_q(cert, 3)?;
    let matched = delta3_candidates(delta.n())?
        .into_iter()
        .find(|m| is_isomorphic(&m.circulant, &delta))
        .map(|m| m.tag);
    let delta_is_wdr = is_wdr(&delta)?.is_wdr();
    Ok(Delta3Report {
        delta,
        matched,
        delta_is_wdr,
    })
}

/// Arcs `(0, s)` of type `(1, q − 1)` that lie on no circuit of length `q`
/// made of `(1, q − 1)`-arcs.
pub fn arcs_without_short_circuit(cert: &WdrCertificate, q: u32) -> Result<Vec<u32>> {
    let arcs = *cert.partition.class(cert.arc_class(q)?);
    let mut bad = Vec::new();
    for s in arcs.iter() {
        let mut reach = ResidueSet::singleton(arcs.modulus(), s)?;
        for _ in 1..q {
            reach = reach.sumset(&arcs)?;
        }
        if !reach.contains(0) {
            bad.push(s);
        }
    }
    Ok(bad)
}

/// Given a path `x_0 → x_1 → ⋯ → x_m` in the circulant and a position `i`,
/// find a path from `x_0` to `x_m` of the same length whose first arc has
/// the two-way type of `(x_i, x_{i+1})`.
pub fn reorder_path(cert: &WdrCertificate, path: &[u32], i: usize) -> Option<Vec<u32>> {
    let c = &cert.circulant;
    let n = c.n();
    let m = path.len().checked_sub(1)?;
    if i >= m || path.windows(2).any(|w| !c.has_arc(w[0], w[1])) {
        return None;
    }
    let class = cert
        .partition
        .class(cert.partition.class_of((path[i + 1] + n - path[i]) % n));
    let (start, end) = (path[0], path[m]);
    let s = *c.connection();
    let mut back = vec![ResidueSet::singleton(n, end).ok()?];
    for _ in 0..m {
        let prev = back.last().unwrap();
        back.push(prev.sumset(&s.negate()).ok()?);
    }
    back.reverse();
    // back[j]: vertices from which `end` is reachable in exactly m − j steps
    let first = class
        .iter()
        .map(|x| (start + x) % n)
        .find(|&y| back[1].contains(y))?;
    let mut out = vec![start, first];
    for layer in &back[2..=m] {
        let cur = *out.last().unwrap();
        let next = s
            .iter()
            .map(|x| (cur + x) % n)
            .find(|&y| layer.contains(y))?;
        out.push(next);
    }
    (out[m] == end).then_some(out)
}

/// Serializable summary of a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub circulant: Circulant,
    pub partition: String,
    pub types: Vec<u32>,
    pub one_type: bool,
    pub primitive: bool,
    pub commutative: bool,
    pub family: Option<FamilyTag>,
}

impl From<&WdrCertificate> for CertificateReport {
    fn from(cert: &WdrCertificate) -> Self {
        CertificateReport {
            circulant: cert.circulant,
            partition: cert.partition.to_string(),
            types: cert.types.clone(),
            one_type: cert.one_type,
            primitive: cert.is_primitive(),
            commutative: cert.scheme.is_commutative(),
            family: if cert.one_type {
                match_family(&cert.circulant)
            } else {
                None
            },
        }
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} is weakly distance-regular", self.circulant)?;
        writeln!(f, "  partition: {}", self.partition)?;
        writeln!(
            f,
            "  T = {:?}{}",
            self.types,
            if self.one_type { " (one type)" } else { "" }
        )?;
        writeln!(f, "  primitive: {}", self.primitive)?;
        writeln!(f, "  commutative: {}", self.commutative)?;
        if let Some(tag) = self.family {
            writeln!(f, "  family: {tag}")?;
        }
        Ok(())
    }
}
