//! Canonical certificates for circulant digraphs.
//!
//! Individualisation-refinement: the coarsest equitable ordered partition
//! (refined on out- and in-neighbour counts) is split by individualising one
//! vertex of the first smallest non-singleton cell at a time, and every
//! discrete leaf is scored by the row-major bit string of the relabelled
//! adjacency matrix. The certificate is the least score over the search tree.
//!
//! Subtrees are pruned with automorphisms: the rotation `v ↦ v + 1` and the
//! multipliers fixing `S` are known up front, and every pair of leaves with
//! equal scores contributes one more. A child whose vertex shares an orbit
//! (under the automorphisms fixing the current prefix pointwise) with an
//! explored sibling is skipped, and an automorphism found at a leaf sends the
//! search back to the branching point it shares with the earlier leaf.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circulant::Circulant;
use crate::error::{Error, Result};
use crate::zn::units;

/// A canonical certificate: two bytes of big-endian order followed by the
/// adjacency matrix of the canonical relabelling, row-major, MSB first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        if !s.len().is_multiple_of(2) || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("bad certificate hex {s:?}")));
        }
        (0..s.len())
            .step_by(2)
            .map(|i| {
                u8::from_str_radix(&s[i..i + 2], 16)
                    .map_err(|_| Error::Parse(format!("bad certificate hex {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Certificate)
    }

    /// Number of vertices encoded in the certificate.
    pub fn order(&self) -> usize {
        match self.0.as_slice() {
            [hi, lo, ..] => (*hi as usize) << 8 | *lo as usize,
            _ => 0,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

impl FromStr for Certificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

pub fn canonical_form(c: &Circulant) -> Certificate {
    let n = c.n() as usize;
    let mut seeds: Vec<Vec<usize>> = Vec::new();
    if n > 1 {
        seeds.push((0..n).map(|v| (v + 1) % n).collect());
    }
    for m in units(c.n()) {
        if m > 1 && c.connection().multiplier_image(m as i64) == *c.connection() {
            seeds.push((0..n).map(|v| v * m as usize % n).collect());
        }
    }
    canonical_digraph(&c.out_rows(), &c.in_rows(), seeds)
}

/// A unit `m` with `m·S1 = S2`, if one exists.
pub fn multiplier_equivalence(a: &Circulant, b: &Circulant) -> Option<u32> {
    if a.n() != b.n() || a.out_degree() != b.out_degree() {
        return None;
    }
    units(a.n())
        .into_iter()
        .find(|&m| a.connection().multiplier_image(m as i64) == *b.connection())
}

/// Multiplier equivalence is tried first; otherwise certificates decide.
pub fn is_isomorphic(a: &Circulant, b: &Circulant) -> bool {
    if a.n() != b.n() || a.out_degree() != b.out_degree() {
        return false;
    }
    multiplier_equivalence(a, b).is_some() || canonical_form(a) == canonical_form(b)
}

/// Canonical certificate of a digraph on at most 128 vertices given by
/// out- and in-neighbour masks. `known_automorphisms` may be empty; any
/// permutation supplied must be an automorphism.
pub fn canonical_digraph(
    out: &[u128],
    inn: &[u128],
    known_automorphisms: Vec<Vec<usize>>,
) -> Certificate {
    let n = out.len();
    assert_eq!(n, inn.len());
    assert!(n <= 128, "at most 128 vertices");
    let mut search = Search {
        n,
        out,
        inn,
        autos: known_automorphisms,
        first: None,
        best: None,
    };
    let root = search.refine(vec![(0..n).collect()]);
    let mut path = Vec::new();
    search.descend(root, &mut path);
    search
        .best
        .expect("the search tree has at least one leaf")
        .cert
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    path: Vec<usize>,
    order: Vec<usize>,
    cert: Certificate,
}

struct Search<'a> {
    n: usize,
    out: &'a [u128],
    inn: &'a [u128],
    autos: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
}

fn mask_of(cell: &[usize]) -> u128 {
    cell.iter().fold(0u128, |m, &v| m | 1u128 << v)
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    /// Coarsest equitable refinement of an ordered partition.
    fn refine(&self, mut cells: Cells) -> Cells {
        loop {
            let before = cells.len();
            let mut i = 0;
            while i < cells.len() && cells.len() < self.n {
                let splitter = mask_of(&cells[i]);
                let mut next = Vec::with_capacity(cells.len());
                for cell in cells {
                    if cell.len() == 1 {
                        next.push(cell);
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cell
                        .iter()
                        .map(|&v| {
                            let o = (self.out[v] & splitter).count_ones();
                            let n = (self.inn[v] & splitter).count_ones();
                            (o << 8 | n, v)
                        })
                        .collect();
                    keyed.sort_unstable();
                    let mut start = 0;
                    for k in 1..=keyed.len() {
                        if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                            next.push(keyed[start..k].iter().map(|&(_, v)| v).collect());
                            start = k;
                        }
                    }
                }
                cells = next;
                i += 1;
            }
            if cells.len() == before || cells.len() == self.n {
                return cells;
            }
        }
    }

    fn certificate(&self, order: &[usize]) -> Certificate {
        let n = self.n;
        let mut bytes = Vec::with_capacity(2 + (n * n).div_ceil(8));
        bytes.extend_from_slice(&(n as u16).to_be_bytes());
        let mut acc = 0u8;
        let mut filled = 0;
        for &u in order {
            let row = self.out[u];
            for &v in order {
                acc = acc << 1 | (row >> v & 1) as u8;
                filled += 1;
                if filled == 8 {
                    bytes.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bytes.push(acc << (8 - filled));
        }
        Certificate(bytes)
    }

    /// Orbit representatives under the automorphisms fixing `path` pointwise.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in &self.autos {
            if path.iter().all(|&v| g[v] == v) {
                for (v, &w) in g.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn descend(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let level = path.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
            .unwrap();
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();

        let mut explored: Vec<usize> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<usize>)> = None;
        for v in candidates {
            if !explored.is_empty() {
                let stale = orbit_cache
                    .as_ref()
                    .is_none_or(|(k, _)| *k != self.autos.len());
                if stale {
                    orbit_cache = Some((self.autos.len(), self.orbits(path)));
                }
                let orbit = &orbit_cache.as_ref().unwrap().1;
                if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                    continue;
                }
            }
            explored.push(v);

            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            let child = self.refine(child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(j) = jump {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = self.certificate(&order);
        let leaf = Leaf {
            path: path.to_vec(),
            order,
            cert,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                order: leaf.order.clone(),
                cert: leaf.cert.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.cert == leaf.cert {
            let jump = common_prefix(&first.path, &leaf.path);
            let g = self.automorphism(&first.order, &leaf.order);
            self.autos.push(g);
            return Some(jump);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let jump = common_prefix(&best.path, &leaf.path);
                let g = self.automorphism(&best.order, &leaf.order);
                self.autos.push(g);
                Some(jump)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn automorphism(&self, from: &[usize], to: &[usize]) -> Vec<usize> {
        let mut g = vec![0; self.n];
        for (&a, &b) in from.iter().zip(to) {
            g[a] = b;
        }
        g
    }
}
