//! Circulant digraphs `Cay(Z_n, S)`: distances, two-way distance partitions,
//! arc types and products.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zn::{gcd, CrtSplit, ResidueSet};

/// `Cay(Z_n, S)`: arcs `v → v + s` for `s ∈ S`, with `0 ∉ S`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circulant {
    connection: ResidueSet,
}

impl Circulant {
    pub fn new(connection: ResidueSet) -> Result<Self> {
        if connection.contains(0) {
            return Err(Error::InvalidInput(format!(
                "connection set {connection} contains 0"
            )));
        }
        Ok(Circulant { connection })
    }

    pub fn from_members<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Result<Self> {
        Self::new(ResidueSet::from_members(n, members)?)
    }

    pub fn n(&self) -> u32 {
        self.connection.modulus()
    }

    pub fn connection(&self) -> &ResidueSet {
        &self.connection
    }

    pub fn out_degree(&self) -> usize {
        self.connection.len()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.connection.generates()
    }

    /// `S = −S`: every arc has its reverse.
    pub fn is_undirected(&self) -> bool {
        self.connection.negate() == self.connection
    }

    /// `S ∩ −S = ∅`: no arc has its reverse.
    pub fn is_antisymmetric(&self) -> bool {
        self.connection.is_disjoint(&self.connection.negate())
    }

    /// The circulant `Cay(Z_n, mS)`.
    pub fn multiplier_image(&self, m: i64) -> Result<Self> {
        Self::new(self.connection.multiplier_image(m))
    }

    pub fn has_arc(&self, from: u32, to: u32) -> bool {
        let n = self.n();
        self.connection.contains((to + n - from % n) % n)
    }

    /// Out-neighbourhood masks, one per vertex.
    pub fn out_rows(&self) -> Vec<u128> {
        (0..self.n())
            .map(|v| self.connection.shift(v).bits())
            .collect()
    }

    /// In-neighbourhood masks, one per vertex.
    pub fn in_rows(&self) -> Vec<u128> {
        let back = self.connection.negate();
        (0..self.n()).map(|v| back.shift(v).bits()).collect()
    }
}

impl fmt::Display for Circulant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.connection.fmt(f)
    }
}

impl fmt::Debug for Circulant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circulant({})", self.connection)
    }
}

impl FromStr for Circulant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl Serialize for Circulant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Circulant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One-way distances to and from vertex 0.
///
/// `d_out[v] = ∂(0, v)` and `d_in[v] = ∂(v, 0)`; by vertex transitivity these
/// determine the two-way distance between any pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoWayTable {
    pub d_out: Vec<u32>,
    pub d_in: Vec<u32>,
}

impl TwoWayTable {
    pub fn two_way(&self, v: u32) -> (u32, u32) {
        (self.d_out[v as usize], self.d_in[v as usize])
    }

    pub fn diameter(&self) -> u32 {
        self.d_out.iter().copied().max().unwrap_or(0)
    }
}

pub fn distances_from_zero(c: &Circulant) -> Result<TwoWayTable> {
    let n = c.n();
    let full = ResidueSet::full(n)?;
    let mut d_out = vec![0u32; n as usize];
    let mut visited = ResidueSet::singleton(n, 0)?;
    let mut frontier = visited;
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = ResidueSet::empty(n)?;
        for s in c.connection().iter() {
            next = next.union(&frontier.shift(s))?;
        }
        next = next.difference(&visited)?;
        for v in next.iter() {
            d_out[v as usize] = d;
        }
        visited = visited.union(&next)?;
        frontier = next;
    }
    if visited != full {
        return Err(Error::Disconnected {
            reachable: c.connection().generated_subgroup(),
        });
    }
    let d_in = (0..n).map(|v| d_out[((n - v) % n) as usize]).collect();
    Ok(TwoWayTable { d_out, d_in })
}

/// Label of a class in a [`TranslationPartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    /// Two-way distance `(∂(0,v), ∂(v,0))`.
    Distance(u32, u32),
    /// Positional label for partitions that do not come from distances.
    Index(usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Distance(a, b) => write!(f, "({a},{b})"),
            ClassLabel::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// A partition of `Z_n` with `{0}` as class 0.
///
/// Each class `X` induces the relation `R(X) = {(g, g + x) : x ∈ X}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TranslationPartition {
    n: u32,
    classes: Vec<ResidueSet>,
    labels: Vec<ClassLabel>,
    class_of: Vec<usize>,
}

impl TranslationPartition {
    /// Validates that `classes` partition `Z_n` and that `{0}` is a class;
    /// `{0}` is moved to index 0 if it is elsewhere.
    pub fn new(classes: Vec<ResidueSet>, labels: Vec<ClassLabel>) -> Result<Self> {
        let first = classes
            .first()
            .ok_or_else(|| Error::InvalidInput("empty partition".into()))?;
        let n = first.modulus();
        if labels.len() != classes.len() {
            return Err(Error::InvalidInput("one label per class required".into()));
        }
        let mut class_of = vec![usize::MAX; n as usize];
        for (i, x) in classes.iter().enumerate() {
            if x.modulus() != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: x.modulus(),
                });
            }
            if x.is_empty() {
                return Err(Error::InvalidInput(format!("class {i} is empty")));
            }
            for v in x.iter() {
                if class_of[v as usize] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "residue {v} lies in two classes"
                    )));
                }
                class_of[v as usize] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidInput(format!("residue {v} is not covered")));
        }
        let zero = class_of[0];
        if classes[zero].len() != 1 {
            return Err(Error::InvalidInput(format!(
                "the class of 0 is {}, not {{0}}",
                classes[zero]
            )));
        }
        let (mut classes, mut labels) = (classes, labels);
        if zero != 0 {
            let c = classes.remove(zero);
            classes.insert(0, c);
            let l = labels.remove(zero);
            labels.insert(0, l);
        }
        Ok(Self::from_parts(n, classes, labels))
    }

    /// A partition labelled by position.
    pub fn from_classes(classes: Vec<ResidueSet>) -> Result<Self> {
        let labels = (0..classes.len()).map(ClassLabel::Index).collect();
        let mut p = Self::new(classes, labels)?;
        p.labels = (0..p.classes.len()).map(ClassLabel::Index).collect();
        Ok(p)
    }

    /// Every residue in its own class.
    pub fn singletons(n: u32) -> Result<Self> {
        let classes = (0..n)
            .map(|x| ResidueSet::singleton(n, x))
            .collect::<Result<Vec<_>>>()?;
        Self::from_classes(classes)
    }

    fn from_parts(n: u32, classes: Vec<ResidueSet>, labels: Vec<ClassLabel>) -> Self {
        let mut class_of = vec![0; n as usize];
        for (i, x) in classes.iter().enumerate() {
            for v in x.iter() {
                class_of[v as usize] = i;
            }
        }
        TranslationPartition {
            n,
            classes,
            labels,
            class_of,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of classes including `{0}`.
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ResidueSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ResidueSet {
        &self.classes[i]
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> ClassLabel {
        self.labels[i]
    }

    pub fn class_of(&self, v: u32) -> usize {
        self.class_of[(v % self.n) as usize]
    }

    pub fn class_table(&self) -> &[usize] {
        &self.class_of
    }

    pub fn index_of_label(&self, label: ClassLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Index of the class equal to `set`, if any.
    pub fn index_of_set(&self, set: &ResidueSet) -> Option<usize> {
        let i = self.class_of(set.min()?);
        (self.classes[i] == *set).then_some(i)
    }

    /// Index of the class equal to `−X_i`, if the partition has one.
    pub fn negation_partner(&self, i: usize) -> Option<usize> {
        self.index_of_set(&self.classes[i].negate())
    }

    /// Whether a set is a union of classes.
    pub fn is_union_of_classes(&self, set: &ResidueSet) -> bool {
        self.classes
            .iter()
            .all(|x| x.is_subset(set) || x.is_disjoint(set))
    }

    /// Same classes, regardless of order and labels.
    pub fn same_classes(&self, other: &Self) -> bool {
        self.n == other.n
            && self.rank() == other.rank()
            && self.classes.iter().all(|x| other.index_of_set(x).is_some())
    }
}

impl fmt::Display for TranslationPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        for x in &self.classes {
            f.write_str(" | ")?;
            let members: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            f.write_str(&members.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TranslationPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TranslationPartition(")?;
        for (i, (x, l)) in self.classes.iter().zip(&self.labels).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{l}: {{{}}}",
                x.to_vec()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
        }
        f.write_str(")")
    }
}

/// Parses `n | 0 | a,b,c | d,e,f | ...`.
impl FromStr for TranslationPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('|');
        let n: u32 = parts
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in partition {s:?}")))?;
        let classes = parts
            .map(|p| ResidueSet::from_members(n, crate::zn::parse_list(p)?))
            .collect::<Result<Vec<_>>>()?;
        Self::from_classes(classes)
    }
}

/// Classes `N_(a,b) = {v : ∂(0,v) = a, ∂(v,0) = b}`, ordered by label, with
/// `{0}` labelled `(0,0)` first.
pub fn two_way_partition(c: &Circulant) -> Result<TranslationPartition> {
    let table = distances_from_zero(c)?;
    two_way_partition_from_table(c.n(), &table)
}

pub(crate) fn two_way_partition_from_table(
    n: u32,
    table: &TwoWayTable,
) -> Result<TranslationPartition> {
    let mut by_label: BTreeMap<(u32, u32), ResidueSet> = BTreeMap::new();
    for v in 0..n {
        by_label
            .entry(table.two_way(v))
            .or_insert(ResidueSet::empty(n)?)
            .insert(v);
    }
    let (labels, classes): (Vec<_>, Vec<_>) = by_label
        .into_iter()
        .map(|((a, b), x)| (ClassLabel::Distance(a, b), x))
        .unzip();
    Ok(TranslationPartition::from_parts(n, classes, labels))
}

/// `T = {1 + ∂(s, 0) : s ∈ S}`: an arc `(0, s)` has type `(1, q − 1)` for `q ∈ T`.
pub fn arc_type_set(c: &Circulant) -> Result<Vec<u32>> {
    let table = distances_from_zero(c)?;
    Ok(arc_types_from_table(c, &table))
}

pub(crate) fn arc_types_from_table(c: &Circulant, table: &TwoWayTable) -> Vec<u32> {
    let mut t: Vec<u32> = c
        .connection()
        .iter()
        .map(|s| 1 + table.d_in[s as usize])
        .collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// `Γ × Σ` for coprime orders, realised on `Z_{n1·n2}` through the CRT.
pub fn direct_product(a: &Circulant, b: &Circulant) -> Result<Circulant> {
    let (n1, n2) = (a.n(), b.n());
    if gcd(n1 as u64, n2 as u64) != 1 {
        return Err(Error::InvalidInput(format!(
            "orders {n1} and {n2} are not coprime; the direct product is not a circulant"
        )));
    }
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= crate::zn::MAX_MODULUS)
        .ok_or(Error::ModulusOutOfRange(n1.saturating_mul(n2)))?;
    let crt = CrtSplit::new(n, &[n1, n2])?;
    Circulant::new(crt.product(&[*a.connection(), *b.connection()])?)
}

/// `Γ[Σ]` on `Z_{m·l}`: connection `{x : x mod m ∈ S1} ∪ {m·b : b ∈ S2}`,
/// whose fibres are the cosets of `mZ_{ml}`.
pub fn lex_product(outer: &Circulant, inner: &Circulant) -> Result<Circulant> {
    let (m, l) = (outer.n(), inner.n());
    let n = m
        .checked_mul(l)
        .filter(|&n| n <= crate::zn::MAX_MODULUS)
        .ok_or(Error::ModulusOutOfRange(m.saturating_mul(l)))?;
    let mut s = ResidueSet::empty(n)?;
    for x in 0..n {
        if outer.connection().contains(x % m) {
            s.insert(x);
        }
    }
    for b in inner.connection().iter() {
        s.insert(m * b);
    }
    Circulant::new(s)
}

/// All-pairs one-way distances computed by a BFS from every vertex over
/// explicit adjacency, with no use of translation invariance. `None` marks
/// unreachable pairs.
pub fn all_pairs_distances(c: &Circulant) -> Vec<Vec<Option<u32>>> {
    let n = c.n() as usize;
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| c.has_arc(u as u32, v as u32)).collect())
        .collect();
    (0..n)
        .map(|src| {
            let mut dist = vec![None; n];
            dist[src] = Some(0);
            let mut queue = std::collections::VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u].unwrap();
                for &v in &adj[u] {
                    if dist[v].is_none() {
                        dist[v] = Some(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(s: &str) -> Circulant {
        s.parse().unwrap()
    }

    fn set(s: &str) -> ResidueSet {
        s.parse().unwrap()
    }

    fn bfs_oracle(c: &Circulant) -> (Vec<u32>, Vec<u32>) {
        let all = all_pairs_distances(c);
        let n = c.n() as usize;
        let out = (0..n).map(|v| all[0][v].unwrap()).collect();
        let inn = (0..n).map(|v| all[v][0].unwrap()).collect();
        (out, inn)
    }

    #[test]
    fn distance_examples() {
        let t = distances_from_zero(&circ("5:1")).unwrap();
        assert_eq!(t.d_out, vec![0, 1, 2, 3, 4]);

        let c = circ("13:1,3,9");
        let t = distances_from_zero(&c).unwrap();
        assert_eq!((t.d_out[2], t.d_in[2]), (2, 3));
        assert_eq!((t.d_out.clone(), t.d_in.clone()), bfs_oracle(&c));

        let c = circ("6:1,4");
        let t = distances_from_zero(&c).unwrap();
        assert_eq!((t.d_out[3], t.d_in[3]), (3, 3));
        assert_eq!((t.d_out, t.d_in), bfs_oracle(&c));
    }

    #[test]
    fn disconnected_is_an_error() {
        match distances_from_zero(&circ("12:4,8")) {
            Err(Error::Disconnected { reachable }) => assert_eq!(reachable.generator(), 4),
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    fn classes_of(p: &TranslationPartition) -> Vec<(String, ClassLabel)> {
        p.classes()
            .iter()
            .zip(p.labels())
            .map(|(x, &l)| (x.to_string(), l))
            .collect()
    }

    #[test]
    fn two_way_partition_examples() {
        use ClassLabel::Distance as D;
        let p = two_way_partition(&circ("6:1,4")).unwrap();
        assert_eq!(
            classes_of(&p),
            vec![
                ("6:0".into(), D(0, 0)),
                ("6:1,4".into(), D(1, 2)),
                ("6:2,5".into(), D(2, 1)),
                ("6:3".into(), D(3, 3)),
            ]
        );

        let p = two_way_partition(&circ("13:1,3,9")).unwrap();
        assert_eq!(
            classes_of(&p)[1..],
            [
                ("13:1,3,9".into(), D(1, 2)),
                ("13:4,10,12".into(), D(2, 1)),
                ("13:2,5,6".into(), D(2, 3)),
                ("13:7,8,11".into(), D(3, 2)),
            ]
        );

        let p = two_way_partition(&circ("12:1,7,10")).unwrap();
        let got = classes_of(&p);
        for expected in [
            ("12:1,7,10", D(1, 2)),
            ("12:2,5,11", D(2, 1)),
            ("12:3,6,9", D(3, 3)),
            ("12:8", D(2, 4)),
            ("12:4", D(4, 2)),
        ] {
            assert!(
                got.contains(&(expected.0.to_string(), expected.1)),
                "{expected:?}"
            );
        }
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn cycle_partition_is_the_group_scheme() {
        for n in 3..20 {
            let p = two_way_partition(&Circulant::from_members(n, [1]).unwrap()).unwrap();
            assert_eq!(p.rank(), n as usize);
            for k in 1..n {
                let i = p.class_of(k);
                assert_eq!(p.class(i).to_vec(), vec![k]);
                assert_eq!(p.label(i), ClassLabel::Distance(k, n - k));
            }
        }
    }

    #[test]
    fn arc_type_examples() {
        assert_eq!(arc_type_set(&circ("13:1,3,9")).unwrap(), vec![3]);
        assert_eq!(arc_type_set(&circ("5:1")).unwrap(), vec![5]);
        let c3k4 = direct_product(&circ("3:1"), &circ("4:1,2,3")).unwrap();
        let g = lex_product(&c3k4, &circ("4:1")).unwrap();
        assert_eq!(g.n(), 48);
        assert_eq!(arc_type_set(&g).unwrap(), vec![3, 4]);
    }

    #[test]
    fn product_examples() {
        let c3 = circ("3:1");
        assert_eq!(
            direct_product(&c3, &circ("4:1,2,3")).unwrap(),
            circ("12:1,7,10")
        );
        assert_eq!(direct_product(&c3, &circ("4:")).unwrap(), circ("12:"));
        assert_eq!(direct_product(&c3, &circ("5:1")).unwrap(), circ("15:1"));
        assert!(direct_product(&c3, &circ("6:1")).is_err());

        assert_eq!(lex_product(&c3, &circ("2:")).unwrap(), circ("6:1,4"));
        assert_eq!(
            lex_product(&c3, &circ("4:1")).unwrap(),
            circ("12:1,3,4,7,10")
        );
        let g = circ("13:1,3,9");
        assert_eq!(lex_product(&g, &circ("1:")).unwrap(), g);
    }

    #[test]
    fn in_distances_mirror_out_distances() {
        for n in 2..16u32 {
            for mask in 0u32..(1 << (n - 1)) {
                let c = Circulant::new(ResidueSet::from_bits(n, (mask as u128) << 1)).unwrap();
                if let Ok(t) = distances_from_zero(&c) {
                    for v in 0..n {
                        assert_eq!(t.d_in[v as usize], t.d_out[((n - v) % n) as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_literal_round_trip() {
        let p: TranslationPartition = "5 | 0 | 1,4 | 2,3".parse().unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.to_string(), "5 | 0 | 1,4 | 2,3");
        assert_eq!(p.negation_partner(1), Some(1));
        let q: TranslationPartition = "5 | 1,4 | 0 | 2,3".parse().unwrap();
        assert_eq!(q.class(0), &set("5:0"));
        assert!("5 | 0 | 1,4".parse::<TranslationPartition>().is_err());
        assert!("5 | 0,1 | 2,3,4".parse::<TranslationPartition>().is_err());
        assert!("5 | 0 | 1,4 | 2,3,4"
            .parse::<TranslationPartition>()
            .is_err());
    }
}
