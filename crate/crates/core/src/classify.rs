//! Exhaustive search for one-type weakly distance-regular circulants.
//!
//! For each order `n` the search walks every antisymmetric connection set
//! (each pair `{x, −x}` contributes `x`, `−x` or nothing), keeps those that
//! generate `Z_n`, keeps only the lexicographically least set in each
//! multiplier class, discards sets whose arcs do not all share one return
//! distance, and runs the full scheme check on the rest. Survivors are
//! deduplicated by canonical form and compared with the expected families.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, Certificate};
use crate::circulant::{arc_type_set, Circulant};
use crate::constructions::{cycle, expected_one_type_family, paley, FamilyMember, FamilyTag};
use crate::error::{Error, Result};
use crate::wdr::is_wdr;
use crate::zn::{is_prime, units, ResidueSet};

/// Largest order searched without opting in.
pub const DEFAULT_CAP: u32 = 24;
/// Largest order searched with the extended budget.
pub const EXTENDED_CAP: u32 = 30;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Orders above this are refused with [`Error::Budget`].
    pub cap: u32,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Process only the lexicographically least set of each multiplier class.
    pub multiplier_reduction: bool,
    /// Append-only JSONL cache of full evaluations.
    pub cache: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_CAP,
            jobs: 1,
            multiplier_reduction: true,
            cache: None,
        }
    }
}

/// One evaluated multiplier class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: u32,
    pub set: ResidueSet,
    pub wdr: bool,
    pub one_type: bool,
    pub family: Option<FamilyTag>,
    pub primitive: Option<bool>,
}

/// Line-delimited cache of [`CacheRecord`]s, keyed by connection set.
pub struct Cache {
    path: PathBuf,
    records: HashMap<ResidueSet, CacheRecord>,
}

impl Cache {
    /// Load `path` if it exists. A torn final line (from an interrupted run)
    /// is ignored; any other malformed line is an error.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut records = HashMap::new();
        if path.exists() {
            let lines: Vec<String> = BufReader::new(File::open(&path)?)
                .lines()
                .collect::<std::io::Result<_>>()?;
            let last = lines.len().saturating_sub(1);
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(line) {
                    Ok(r) => {
                        records.insert(r.set, r);
                    }
                    Err(_) if i == last => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Ok(Cache { path, records })
    }

    pub fn get(&self, set: &ResidueSet) -> Option<&CacheRecord> {
        self.records.get(set)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Append records in order and flush.
    pub fn append(&mut self, new: &[CacheRecord]) -> Result<()> {
        if new.is_empty() {
            return Ok(());
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut w = BufWriter::new(file);
        for r in new {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
            self.records.insert(r.set, r.clone());
        }
        w.flush()?;
        Ok(())
    }
}

/// Deterministic search counters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Antisymmetric non-empty connection sets.
    pub antisymmetric_sets: u64,
    /// Sets dropped because they do not generate `Z_n`.
    pub non_generating: u64,
    /// Sets dropped because a multiplier image is lexicographically smaller.
    pub multiplier_duplicates: u64,
    /// Sets dropped because their arcs have more than one return distance.
    pub several_types: u64,
    /// Full scheme checks performed or replayed.
    pub scheme_checks: u64,
    pub wdr: u64,
    pub one_type: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundEntry {
    pub set: ResidueSet,
    pub canon: Certificate,
    pub family: Option<FamilyTag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactMatch,
    Missing,
    Extra,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExactMatch => "exact-match",
            Verdict::Missing => "missing",
            Verdict::Extra => "extra",
        })
    }
}

/// Primitive members of the search output against `C_p`, `P(p)` and
/// `Cay(Z_13, {1,3,9})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveReport {
    pub n: u32,
    pub found: Vec<ResidueSet>,
    pub expected: Vec<ResidueSet>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: u32,
    pub found: Vec<FoundEntry>,
    pub expected: Vec<FoundEntry>,
    pub verdict: Verdict,
    /// Expected members with no match in the search.
    pub missing: Vec<FoundEntry>,
    /// Search results that match no expected member.
    pub extra: Vec<FoundEntry>,
    pub stats: SearchStats,
    pub primitive: PrimitiveReport,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub cache_hits: u64,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::ExactMatch && self.primitive.ok
    }
}

/// Result of one search, before comparison.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// One entry per isomorphism class, ordered by canonical form.
    pub found: Vec<(Circulant, Certificate, bool)>,
    pub stats: SearchStats,
    pub cache_hits: u64,
}

/// All antisymmetric non-empty connection sets of `Z_n`.
pub fn antisymmetric_sets(n: u32) -> Vec<ResidueSet> {
    let half = (n - 1) / 2;
    let mut out = vec![0u128];
    for x in 1..=half {
        let (a, b) = (1u128 << x, 1u128 << (n - x));
        out = out.into_iter().flat_map(|m| [m, m | a, m | b]).collect();
    }
    out.into_iter()
        .filter(|&m| m != 0)
        .map(|m| ResidueSet::from_bits(n, m))
        .collect()
}

/// Whether `s` is the lexicographically least member of its multiplier class.
pub fn is_least_multiplier_image(s: &ResidueSet, units: &[u32]) -> bool {
    units
        .iter()
        .all(|&m| s.lex_cmp(&s.multiplier_image(m as i64)) != std::cmp::Ordering::Greater)
}

fn check_range(n: u32, opts: &SearchOptions) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n ≥ 3, got {n}")));
    }
    if n > opts.cap {
        return Err(Error::Budget { n, cap: opts.cap });
    }
    Ok(())
}

fn evaluate(n: u32, set: ResidueSet) -> Result<CacheRecord> {
    let c = Circulant::new(set)?;
    let out = is_wdr(&c)?;
    Ok(match out.certificate() {
        None => CacheRecord {
            n,
            set,
            wdr: false,
            one_type: false,
            family: None,
            primitive: None,
        },
        Some(cert) => CacheRecord {
            n,
            set,
            wdr: true,
            one_type: cert.one_type,
            family: None,
            primitive: Some(cert.is_primitive()),
        },
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start worker pool: {e}")))
}

/// Run the search for one order.
pub fn search(n: u32, opts: &SearchOptions, mut cache: Option<&mut Cache>) -> Result<SearchResult> {
    check_range(n, opts)?;
    let us = units(n);
    let sets = antisymmetric_sets(n);
    let mut stats = SearchStats {
        antisymmetric_sets: sets.len() as u64,
        ..SearchStats::default()
    };

    #[derive(Clone, Copy)]
    enum Stage {
        NonGenerating,
        Duplicate,
        SeveralTypes,
        Check(ResidueSet),
    }
    let stage = |s: &ResidueSet| -> Result<Stage> {
        if !s.generates() {
            return Ok(Stage::NonGenerating);
        }
        if opts.multiplier_reduction && !is_least_multiplier_image(s, &us) {
            return Ok(Stage::Duplicate);
        }
        let types = arc_type_set(&Circulant::new(*s)?)?;
        if types.len() != 1 {
            return Ok(Stage::SeveralTypes);
        }
        Ok(Stage::Check(*s))
    };

    let workers = pool(opts.jobs)?;
    let stages: Vec<Stage> =
        workers.install(|| sets.par_iter().map(stage).collect::<Result<_>>())?;

    let mut to_check = Vec::new();
    for st in stages {
        match st {
            Stage::NonGenerating => stats.non_generating += 1,
            Stage::Duplicate => stats.multiplier_duplicates += 1,
            Stage::SeveralTypes => stats.several_types += 1,
            Stage::Check(s) => to_check.push(s),
        }
    }
    stats.scheme_checks = to_check.len() as u64;

    let mut cache_hits = 0;
    let mut records = Vec::with_capacity(to_check.len());
    let mut pending = Vec::new();
    for s in &to_check {
        match cache.as_ref().and_then(|c| c.get(s)) {
            Some(r) if r.n == n => {
                cache_hits += 1;
                records.push(r.clone());
            }
            _ => pending.push(*s),
        }
    }
    let fresh: Vec<CacheRecord> = workers.install(|| {
        pending
            .par_iter()
            .map(|&s| evaluate(n, s))
            .collect::<Result<_>>()
    })?;

    let mut found: BTreeMap<Certificate, (Circulant, bool)> = BTreeMap::new();
    let mut fresh_tagged = Vec::with_capacity(fresh.len());
    let family_index = |c: &Certificate, expected: &[FamilyMember]| {
        expected.iter().find(|m| m.canon == *c).map(|m| m.tag)
    };
    let expected = expected_one_type_family(n)?;
    for mut r in fresh {
        if r.one_type {
            let c = Circulant::new(r.set)?;
            r.family = family_index(&canonical_form(&c), &expected);
        }
        fresh_tagged.push(r);
    }
    if let Some(c) = cache.as_mut() {
        c.append(&fresh_tagged)?;
    }
    records.extend(fresh_tagged);
    for r in &records {
        if r.wdr {
            stats.wdr += 1;
        }
        if r.one_type {
            stats.one_type += 1;
            let c = Circulant::new(r.set)?;
            let canon = canonical_form(&c);
            let primitive = r.primitive.unwrap_or(false);
            // keep the least set per isomorphism class
            found
                .entry(canon)
                .and_modify(|(best, _)| {
                    if c.connection().lex_cmp(best.connection()).is_lt() {
                        *best = c;
                    }
                })
                .or_insert((c, primitive));
        }
    }
    Ok(SearchResult {
        found: found.into_iter().map(|(k, (c, p))| (c, k, p)).collect(),
        stats,
        cache_hits,
    })
}

/// One representative per isomorphism class of one-type weakly
/// distance-regular circulants on `n` vertices.
pub fn enumerate_one_type_wdr(n: u32, opts: &SearchOptions) -> Result<Vec<Circulant>> {
    Ok(search(n, opts, None)?
        .found
        .into_iter()
        .map(|(c, _, _)| c)
        .collect())
}

fn expected_primitive(n: u32) -> Result<Vec<Circulant>> {
    let mut out = Vec::new();
    if is_prime(n) {
        out.push(cycle(n)?);
        if n > 3 && n % 4 == 3 {
            out.push(paley(n)?);
        }
    }
    if n == 13 {
        out.push(Circulant::from_members(13, [1, 3, 9])?);
    }
    Ok(out)
}

fn classify_with(
    n: u32,
    opts: &SearchOptions,
    cache: Option<&mut Cache>,
) -> Result<ClassificationReport> {
    let start = Instant::now();
    let result = search(n, opts, cache)?;
    let expected_members = expected_one_type_family(n)?;
    let tag_of = |c: &Certificate| {
        expected_members
            .iter()
            .find(|m| m.canon == *c)
            .map(|m| m.tag)
    };

    let found: Vec<FoundEntry> = result
        .found
        .iter()
        .map(|(c, canon, _)| FoundEntry {
            set: *c.connection(),
            canon: canon.clone(),
            family: tag_of(canon),
        })
        .collect();
    let mut expected: Vec<FoundEntry> = expected_members
        .iter()
        .map(|m| FoundEntry {
            set: *m.circulant.connection(),
            canon: m.canon.clone(),
            family: Some(m.tag),
        })
        .collect();
    expected.sort_by(|a, b| a.canon.cmp(&b.canon));

    let missing: Vec<FoundEntry> = expected
        .iter()
        .filter(|e| found.iter().all(|f| f.canon != e.canon))
        .cloned()
        .collect();
    let extra: Vec<FoundEntry> = found
        .iter()
        .filter(|f| f.family.is_none())
        .cloned()
        .collect();
    let verdict = if !missing.is_empty() {
        Verdict::Missing
    } else if !extra.is_empty() {
        Verdict::Extra
    } else {
        Verdict::ExactMatch
    };

    let mut prim_found: Vec<(Certificate, ResidueSet)> = result
        .found
        .iter()
        .filter(|(_, _, p)| *p)
        .map(|(c, k, _)| (k.clone(), *c.connection()))
        .collect();
    prim_found.sort();
    let mut prim_expected: Vec<(Certificate, ResidueSet)> = expected_primitive(n)?
        .iter()
        .map(|c| (canonical_form(c), *c.connection()))
        .collect();
    prim_expected.sort();
    let ok = prim_found.len() == prim_expected.len()
        && prim_found
            .iter()
            .zip(&prim_expected)
            .all(|(a, b)| a.0 == b.0);
    let primitive = PrimitiveReport {
        n,
        found: prim_found.into_iter().map(|(_, s)| s).collect(),
        expected: prim_expected.into_iter().map(|(_, s)| s).collect(),
        ok,
    };

    Ok(ClassificationReport {
        n,
        found,
        expected,
        verdict,
        missing,
        extra,
        stats: result.stats,
        primitive,
        elapsed: start.elapsed(),
        cache_hits: result.cache_hits,
    })
}

/// Search and compare a single order.
pub fn classify(n: u32, opts: &SearchOptions) -> Result<ClassificationReport> {
    let mut cache = opts.cache.as_ref().map(Cache::open).transpose()?;
    classify_with(n, opts, cache.as_mut())
}

/// Compare search output with the expected families for every `n` in range.
pub fn verify_main2(
    n_min: u32,
    n_max: u32,
    opts: &SearchOptions,
) -> Result<Vec<ClassificationReport>> {
    if n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "empty range {n_min}..={n_max}"
        )));
    }
    check_range(n_min, opts)?;
    check_range(n_max, opts)?;
    let mut cache = opts.cache.as_ref().map(Cache::open).transpose()?;
    (n_min..=n_max)
        .map(|n| classify_with(n, opts, cache.as_mut()))
        .collect()
}

/// The primitive sub-reports for every `n` in range.
pub fn verify_main3(n_min: u32, n_max: u32, opts: &SearchOptions) -> Result<Vec<PrimitiveReport>> {
    Ok(verify_main2(n_min, n_max, opts)?
        .into_iter()
        .map(|r| r.primitive)
        .collect())
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {:>3}: {} found, {} expected, {} ({} scheme checks, {:.2?})",
            self.n,
            self.found.len(),
            self.expected.len(),
            self.verdict,
            self.stats.scheme_checks,
            self.elapsed
        )?;
        for e in &self.found {
            let tag = e.family.map_or("no family".to_string(), |t| t.to_string());
            writeln!(f, "    {:<28} {tag}", e.set.to_string())?;
        }
        for e in &self.missing {
            writeln!(
                f,
                "    missing: {}",
                e.family.map_or(e.set.to_string(), |t| t.to_string())
            )?;
        }
        if !self.primitive.ok {
            writeln!(
                f,
                "    primitive mismatch: found {:?}, expected {:?}",
                self.primitive.found, self.primitive.expected
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(n: u32) -> Vec<String> {
        enumerate_one_type_wdr(n, &SearchOptions::default())
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(sets(4), vec!["4:1"]);
        let s7 = sets(7);
        assert_eq!(s7.len(), 2);
        assert!(s7.contains(&"7:1".to_string()));
        assert!(s7.contains(&"7:1,2,4".to_string()));
        let s13 = sets(13);
        assert_eq!(s13.len(), 2);
        assert!(s13.contains(&"13:1,3,9".to_string()));
    }

    #[test]
    fn antisymmetric_count() {
        assert_eq!(antisymmetric_sets(7).len(), 26);
        assert_eq!(antisymmetric_sets(8).len(), 26);
        assert!(antisymmetric_sets(9)
            .iter()
            .all(|s| s.is_disjoint(&s.negate())));
    }

    #[test]
    fn reports() {
        let r = classify(12, &SearchOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::ExactMatch);
        assert_eq!(r.found.len(), 5);
        assert!(r.primitive.ok && r.primitive.found.is_empty());

        let r = classify(13, &SearchOptions::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.primitive.found.len(), 2);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            classify(25, &SearchOptions::default()),
            Err(Error::Budget { n: 25, cap: 24 })
        ));
        assert!(classify(2, &SearchOptions::default()).is_err());
    }

    #[test]
    fn cache_replay_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let opts = SearchOptions {
            cache: Some(dir.path().join("cache.jsonl")),
            ..SearchOptions::default()
        };
        let cold = verify_main2(5, 9, &opts).unwrap();
        let lines = std::fs::read_to_string(dir.path().join("cache.jsonl")).unwrap();
        let warm = verify_main2(5, 9, &opts).unwrap();
        assert_eq!(
            serde_json::to_string(&cold).unwrap(),
            serde_json::to_string(&warm).unwrap()
        );
        assert!(warm.iter().all(|r| r.cache_hits == r.stats.scheme_checks));
        // the warm run appends nothing
        assert_eq!(
            std::fs::read_to_string(dir.path().join("cache.jsonl")).unwrap(),
            lines
        );
        assert!(lines
            .lines()
            .all(|l| l.starts_with("{\"n\":") && !l.ends_with(' ')));
    }

    #[test]
    fn torn_final_line_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(
            &path,
            "{\"n\":7,\"set\":\"7:1\",\"wdr\":true,\"one_type\":true,\"family\":\"Cycle(m=7)\",\"primitive\":true}\n{\"n\":7,\"se",
        )
        .unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        std::fs::write(&path, "garbage\n{}\n").unwrap();
        assert!(Cache::open(&path).is_err());
    }
}
