//! Chambers of length-vector space, keyed by their subset classification.
//!
//! The Betti numbers depend on a length vector only through which subsets
//! are short, median or long. A [`ChamberFingerprint`] records exactly that
//! for the ascending-sorted vector, so it is invariant under permutation and
//! scaling. An [`Atlas`] collects one representative per fingerprint from
//! random integer vectors and stores them as JSON lines.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::{betti_vector, bound_total, bound_total_generic_even, BettiVector};
use crate::error::{Error, Result};
use crate::model::{LengthVector, SubsetClass, SubsetMask};

pub const FINGERPRINT_MAX_LINKS: usize = 20;
pub const ATLAS_MIN_LINKS: usize = 3;
pub const ATLAS_MAX_LINKS: usize = 9;

const SAMPLE_CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberFingerprint {
    pub n: usize,
    pub short_masks: Vec<SubsetMask>,
    pub median_masks: Vec<SubsetMask>,
}

impl ChamberFingerprint {
    pub fn is_generic(&self) -> bool {
        self.median_masks.is_empty()
    }
}

pub fn fingerprint(lengths: &LengthVector) -> Result<ChamberFingerprint> {
    let n = lengths.n();
    if n > FINGERPRINT_MAX_LINKS {
        return Err(Error::Budget {
            what: "fingerprint",
            detail: format!("n = {n} exceeds {FINGERPRINT_MAX_LINKS}"),
        });
    }
    let (sorted, _) = lengths.sorted();
    let mut short_masks = Vec::new();
    let mut median_masks = Vec::new();
    for m in sorted.all_masks()? {
        match sorted.classify_subset(m) {
            SubsetClass::Short => short_masks.push(m),
            SubsetClass::Median => median_masks.push(m),
            SubsetClass::Long => {}
        }
    }
    Ok(ChamberFingerprint {
        n,
        short_masks,
        median_masks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasEntry {
    pub fingerprint: ChamberFingerprint,
    pub representative: LengthVector,
    pub betti: BettiVector,
    pub total: BigUint,
    pub generic: bool,
}

impl AtlasEntry {
    pub fn new(representative: LengthVector) -> Result<Self> {
        let fingerprint = fingerprint(&representative)?;
        Self::with_fingerprint(representative, fingerprint)
    }

    fn with_fingerprint(
        representative: LengthVector,
        fingerprint: ChamberFingerprint,
    ) -> Result<Self> {
        let betti = betti_vector(&representative)?;
        Ok(Self {
            total: betti.total(),
            generic: fingerprint.is_generic(),
            fingerprint,
            representative,
            betti,
        })
    }
}

/// One representative per chamber, for a fixed number of links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    n: usize,
    entries: BTreeMap<ChamberFingerprint, AtlasEntry>,
}

impl Atlas {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in fingerprint order.
    pub fn entries(&self) -> impl Iterator<Item = &AtlasEntry> {
        self.entries.values()
    }

    pub fn get(&self, fingerprint: &ChamberFingerprint) -> Option<&AtlasEntry> {
        self.entries.get(fingerprint)
    }

    /// Adds `lengths` if its chamber is new. Returns whether it was added.
    pub fn insert(&mut self, lengths: LengthVector) -> Result<bool> {
        if lengths.n() != self.n {
            return Err(Error::Precondition(format!(
                "atlas holds {}-gons, got {} links",
                self.n,
                lengths.n()
            )));
        }
        let fp = fingerprint(&lengths)?;
        if self.entries.contains_key(&fp) {
            return Ok(false);
        }
        let entry = AtlasEntry::with_fingerprint(lengths, fp.clone())?;
        self.entries.insert(fp, entry);
        Ok(true)
    }

    /// Adds the equilateral vector and, for even `n`, `(1, 2, ..., 2)`.
    pub fn seed_extremal(&mut self) -> Result<()> {
        for v in extremal_vectors(self.n)? {
            self.insert(v)?;
        }
        Ok(())
    }

    /// Set union keyed by fingerprint; existing representatives win.
    pub fn merge(&mut self, other: Atlas) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Precondition(format!(
                "cannot merge a {}-link atlas into a {}-link atlas",
                other.n, self.n
            )));
        }
        for (fp, entry) in other.entries {
            self.entries.entry(fp).or_insert(entry);
        }
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for entry in self.entries() {
            let record = AtlasRecord::from(entry);
            let line = serde_json::to_string(&record).map_err(|e| Error::Format(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    /// Reads an atlas, recomputing and checking every stored fingerprint and
    /// Betti vector.
    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Atlas> {
        let mut atlas: Option<Atlas> = None;
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let ctx = |msg: String| Error::Format(format!("line {}: {msg}", lineno + 1));
            let record: AtlasRecord =
                serde_json::from_str(&line).map_err(|e| ctx(e.to_string()))?;
            let entry = record.into_entry().map_err(|e| ctx(e.to_string()))?;
            let atlas = atlas.get_or_insert_with(|| Atlas::new(entry.fingerprint.n));
            if entry.fingerprint.n != atlas.n {
                return Err(ctx(format!(
                    "mixed link counts {} and {}",
                    atlas.n, entry.fingerprint.n
                )));
            }
            atlas
                .entries
                .entry(entry.fingerprint.clone())
                .or_insert(entry);
        }
        atlas.ok_or_else(|| Error::Format("empty atlas file".into()))
    }
}

/// Vectors attaining `B_n` and, for even `n`, `B'_n`.
pub fn extremal_vectors(n: usize) -> Result<Vec<LengthVector>> {
    let mut out = vec![LengthVector::equilateral(n)?];
    if n.is_multiple_of(2) {
        let mut v = vec![2; n];
        v[0] = 1;
        out.push(LengthVector::new(v)?);
    }
    Ok(out)
}

/// Draws `samples` sorted vectors with entries in `1..=max_len` and keeps
/// one representative per chamber. Draws are split into fixed blocks with
/// their own random streams and merged in block order, so the atlas depends
/// only on the arguments.
pub fn sample_atlas(n: usize, samples: usize, max_len: u64, seed: u64) -> Result<Atlas> {
    if !(ATLAS_MIN_LINKS..=ATLAS_MAX_LINKS).contains(&n) {
        return Err(Error::Precondition(format!(
            "sample_atlas needs {ATLAS_MIN_LINKS} <= n <= {ATLAS_MAX_LINKS}, got {n}"
        )));
    }
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be positive".into()));
    }
    let blocks = samples.div_ceil(SAMPLE_CHUNK);
    let partial: Vec<Result<Atlas>> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            let mut atlas = Atlas::new(n);
            for _ in 0..SAMPLE_CHUNK.min(samples - block * SAMPLE_CHUNK) {
                atlas.insert(random_sorted_vector(&mut rng, n, max_len))?;
            }
            Ok(atlas)
        })
        .collect();
    let mut atlas = Atlas::new(n);
    for part in partial {
        atlas.merge(part?)?;
    }
    Ok(atlas)
}

/// An ascending integer vector with entries drawn uniformly from `1..=max_len`.
pub fn random_sorted_vector<R: Rng>(rng: &mut R, n: usize, max_len: u64) -> LengthVector {
    let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_len)).collect();
    v.sort_unstable();
    LengthVector::new(v).expect("n >= 3 positive lengths")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// Total Betti number above `B_n`.
    AllVectors,
    /// Generic even-`n` total above `B'_n`.
    GenericEven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub kind: ViolationKind,
    pub representative: LengthVector,
    pub total: BigUint,
    pub bound: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremesReport {
    pub n: usize,
    pub chambers: usize,
    pub bound: BigUint,
    /// `B'_n` for even `n`.
    pub bound_generic: Option<BigUint>,
    pub max_total: BigUint,
    pub argmax: LengthVector,
    pub max_generic_total: Option<BigUint>,
    pub argmax_generic: Option<LengthVector>,
    pub violations: Vec<BoundViolation>,
}

pub fn atlas_extremes(atlas: &Atlas) -> Result<ExtremesReport> {
    let first = atlas
        .entries()
        .next()
        .ok_or_else(|| Error::Precondition("atlas is empty".into()))?;
    let n = atlas.n;
    let bound = bound_total(n)?;
    let bound_generic = if n.is_multiple_of(2) {
        Some(bound_total_generic_even(n)?)
    } else {
        None
    };

    let mut best = first;
    let mut best_generic: Option<&AtlasEntry> = None;
    let mut violations = Vec::new();
    for entry in atlas.entries() {
        if entry.total > best.total {
            best = entry;
        }
        if entry.generic && best_generic.is_none_or(|b| entry.total > b.total) {
            best_generic = Some(entry);
        }
        if entry.total > bound {
            violations.push(BoundViolation {
                kind: ViolationKind::AllVectors,
                representative: entry.representative.clone(),
                total: entry.total.clone(),
                bound: bound.clone(),
            });
        }
        if let (true, Some(bg)) = (entry.generic, &bound_generic) {
            if entry.total > *bg {
                violations.push(BoundViolation {
                    kind: ViolationKind::GenericEven,
                    representative: entry.representative.clone(),
                    total: entry.total.clone(),
                    bound: bg.clone(),
                });
            }
        }
    }
    Ok(ExtremesReport {
        n,
        chambers: atlas.len(),
        bound,
        bound_generic,
        max_total: best.total.clone(),
        argmax: best.representative.clone(),
        max_generic_total: best_generic.map(|e| e.total.clone()),
        argmax_generic: best_generic.map(|e| e.representative.clone()),
        violations,
    })
}

/// One line of an atlas file. Exact integers are decimal strings; masks are
/// lowercase hex with bit 0 standing for link 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub n: usize,
    pub lengths: Vec<String>,
    pub short_masks: Vec<String>,
    pub median_masks: Vec<String>,
    pub betti: Vec<String>,
    pub total: String,
    pub generic: bool,
}

impl From<&AtlasEntry> for AtlasRecord {
    fn from(e: &AtlasEntry) -> Self {
        let hex = |ms: &[SubsetMask]| ms.iter().map(|m| m.to_hex()).collect();
        AtlasRecord {
            n: e.fingerprint.n,
            lengths: e
                .representative
                .lengths()
                .iter()
                .map(u64::to_string)
                .collect(),
            short_masks: hex(&e.fingerprint.short_masks),
            median_masks: hex(&e.fingerprint.median_masks),
            betti: e.betti.ranks.iter().map(BigUint::to_string).collect(),
            total: e.total.to_string(),
            generic: e.generic,
        }
    }
}

impl AtlasRecord {
    pub fn into_entry(self) -> Result<AtlasEntry> {
        let lengths = self
            .lengths
            .iter()
            .map(|s| {
                s.parse::<u64>().map_err(|_| Error::InvalidLength {
                    token: s.clone(),
                    reason: "not an integer".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let representative = LengthVector::new(lengths)?;
        if representative.n() != self.n {
            return Err(Error::Format(format!(
                "n = {} but {} lengths",
                self.n,
                representative.n()
            )));
        }
        let masks = |hex: &[String]| {
            hex.iter()
                .map(|h| SubsetMask::from_hex(self.n, h))
                .collect::<Result<Vec<_>>>()
        };
        let stored = ChamberFingerprint {
            n: self.n,
            short_masks: masks(&self.short_masks)?,
            median_masks: masks(&self.median_masks)?,
        };
        let entry = AtlasEntry::new(representative)?;
        if entry.fingerprint != stored {
            return Err(Error::Format(
                "stored masks disagree with the lengths".into(),
            ));
        }
        let betti: Vec<String> = entry.betti.ranks.iter().map(BigUint::to_string).collect();
        if betti != self.betti
            || entry.total.to_string() != self.total
            || entry.generic != self.generic
        {
            return Err(Error::Format(
                "stored Betti data disagree with the lengths".into(),
            ));
        }
        Ok(entry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[u64]) -> LengthVector {
        LengthVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fingerprint_invariances() {
        let base = fingerprint(&lv(&[3, 2, 2, 1, 1])).unwrap();
        assert_eq!(base, fingerprint(&lv(&[6, 4, 4, 2, 2])).unwrap());
        assert_eq!(base, fingerprint(&lv(&[2, 3, 2, 1, 1])).unwrap());
        assert!(base.is_generic());
        assert_eq!(base.short_masks.len(), 16);
    }

    #[test]
    fn square_fingerprint_has_six_medians() {
        let fp = fingerprint(&lv(&[1, 1, 1, 1])).unwrap();
        assert_eq!(fp.median_masks.len(), 6);
        assert!(fp.median_masks.iter().all(|m| m.cardinality() == 2));
    }

    #[test]
    fn fingerprint_budget() {
        assert!(fingerprint(&LengthVector::equilateral(21).unwrap()).is_err());
    }

    #[test]
    fn quadrilateral_chambers() {
        let mut atlas = sample_atlas(4, 20_000, 12, 3).unwrap();
        for v in [[1u64, 1, 1, 9], [1, 1, 1, 2], [1, 2, 2, 2]] {
            atlas.insert(lv(&v)).unwrap();
        }
        let generic: Vec<BettiVector> = atlas
            .entries()
            .filter(|e| e.generic)
            .map(|e| e.betti.clone())
            .collect();
        for expected in [[0u64, 0], [1, 1], [2, 2]] {
            assert!(
                generic.contains(&BettiVector::from_u64(&expected)),
                "{expected:?}"
            );
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(
            sample_atlas(5, 5000, 10, 9).unwrap(),
            sample_atlas(5, 5000, 10, 9).unwrap()
        );
        assert!(sample_atlas(2, 10, 10, 0).is_err());
        assert!(sample_atlas(10, 10, 10, 0).is_err());
    }

    #[test]
    fn merge_deduplicates() {
        let a = sample_atlas(5, 3000, 8, 1).unwrap();
        let b = sample_atlas(5, 3000, 8, 2).unwrap();
        let mut merged = a.clone();
        merged.merge(b.clone()).unwrap();
        let mut fps: Vec<_> = merged.entries().map(|e| e.fingerprint.clone()).collect();
        let before = fps.len();
        fps.dedup();
        assert_eq!(before, fps.len());
        assert!(merged.len() >= a.len().max(b.len()));
        assert!(merged.merge(Atlas::new(6)).is_err());
    }

    #[test]
    fn extremes_pentagon() {
        let mut atlas = Atlas::new(5);
        atlas.seed_extremal().unwrap();
        atlas.insert(lv(&[1, 1, 1, 1, 9])).unwrap();
        let report = atlas_extremes(&atlas).unwrap();
        assert_eq!(report.max_total, 10u32.into());
        assert_eq!(report.argmax, LengthVector::equilateral(5).unwrap());
        assert!(report.violations.is_empty());
        assert!(atlas_extremes(&Atlas::new(5)).is_err());
    }

    #[test]
    fn extremes_hexagon() {
        let mut atlas = Atlas::new(6);
        atlas.seed_extremal().unwrap();
        let report = atlas_extremes(&atlas).unwrap();
        assert_eq!(report.max_total, 22u32.into());
        assert_eq!(report.max_generic_total, Some(20u32.into()));
        assert_eq!(report.argmax_generic, Some(lv(&[1, 2, 2, 2, 2, 2])));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn empty_chamber_is_never_extremal() {
        let mut atlas = Atlas::new(4);
        atlas.insert(lv(&[1, 1, 1, 9])).unwrap();
        atlas.insert(lv(&[1, 1, 1, 2])).unwrap();
        let report = atlas_extremes(&atlas).unwrap();
        assert_eq!(report.argmax, lv(&[1, 1, 1, 2]));
        let empty = atlas
            .get(&fingerprint(&lv(&[1, 1, 1, 9])).unwrap())
            .unwrap();
        assert_eq!(empty.total, 0u32.into());
    }

    #[test]
    fn jsonl_round_trip_and_validation() {
        let mut atlas = sample_atlas(5, 2000, 6, 4).unwrap();
        atlas.seed_extremal().unwrap();
        let mut buf = Vec::new();
        atlas.write_jsonl(&mut buf).unwrap();
        let back = Atlas::read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(back, atlas);

        let text = String::from_utf8(buf).unwrap();
        let mut record: AtlasRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        record.total = "999".into();
        let bad = serde_json::to_string(&record).unwrap();
        assert!(Atlas::read_jsonl(bad.as_bytes()).is_err());
        assert!(Atlas::read_jsonl("".as_bytes()).is_err());
    }

    #[test]
    fn record_format() {
        let entry = AtlasEntry::new(lv(&[1, 1, 2])).unwrap();
        let record = AtlasRecord::from(&entry);
        assert_eq!(record.lengths, vec!["1", "1", "2"]);
        assert_eq!(record.median_masks, vec!["3", "4"]);
        assert_eq!(record.betti, vec!["1"]);
        assert!(!record.generic);
    }
}
