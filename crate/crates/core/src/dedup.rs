//! MinHash-LSH near-duplicate detection.
//!
//! Texts are shingled into k-unit windows (hybrid tokenization), each window
//! is hashed to 64 bits, and a signature keeps the minimum of P seeded hash
//! functions over the shingle set. Signatures are cut into `bands × rows`;
//! items sharing any band bucket become candidates, which are confirmed by
//! estimated (or optionally exact) Jaccard and merged with union-find.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::hashing::{derive_seeds, fnv1a64, mix64};
use crate::text::{tokenize, TokenMode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShingleSet {
    pub doc_id: String,
    pub k: usize,
    pub shingles: BTreeSet<u64>,
}

fn hash_window(units: &[&str]) -> u64 {
    let mut bytes = Vec::new();
    for (i, u) in units.iter().enumerate() {
        if i > 0 {
            bytes.push(0x1f);
        }
        bytes.extend_from_slice(u.as_bytes());
    }
    fnv1a64(&bytes)
}

/// Hashes of every contiguous k-unit window; texts shorter than k give one
/// shingle covering the whole text.
pub fn shingle(doc_id: &str, text: &str, k: usize) -> Result<ShingleSet> {
    if k < 1 {
        return Err(Error::invalid("shingle size k must be >= 1"));
    }
    let units = tokenize(text, TokenMode::Word);
    let shingles = if units.len() < k {
        std::iter::once(hash_window(&units)).collect()
    } else {
        units.windows(k).map(hash_window).collect()
    };
    Ok(ShingleSet { doc_id: doc_id.to_string(), k, shingles })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinHashSignature {
    pub doc_id: String,
    pub values: Vec<u64>,
}

impl MinHashSignature {
    /// Fraction of positions where the two signatures agree.
    pub fn estimate(&self, other: &MinHashSignature) -> f64 {
        let same = self.values.iter().zip(&other.values).filter(|(a, b)| a == b).count();
        same as f64 / self.values.len().max(1) as f64
    }
}

pub fn minhash_signature(s: &ShingleSet, seeds: &[u64]) -> Result<MinHashSignature> {
    minhash_values(&s.shingles, seeds).map(|values| MinHashSignature { doc_id: s.doc_id.clone(), values })
}

/// Per-seed minimum of `mix64(shingle ^ seed)` over a shingle set.
pub fn minhash_values(shingles: &BTreeSet<u64>, seeds: &[u64]) -> Result<Vec<u64>> {
    if shingles.is_empty() {
        return Err(Error::invalid("minhash of an empty shingle set"));
    }
    if seeds.is_empty() {
        return Err(Error::invalid("minhash needs at least one seed"));
    }
    Ok(seeds
        .iter()
        .map(|&seed| shingles.iter().map(|&s| mix64(s ^ seed)).min().expect("non-empty"))
        .collect())
}

pub fn jaccard(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DedupParams {
    pub k: usize,
    pub num_perm: usize,
    pub bands: usize,
    pub rows: usize,
    pub threshold: f64,
    pub seed: u64,
    /// Confirm candidates with exact shingle Jaccard instead of the estimate.
    pub exact_confirm: bool,
}

impl Default for DedupParams {
    fn default() -> Self {
        Self { k: 5, num_perm: 128, bands: 16, rows: 8, threshold: 0.8, seed: 0x5eed, exact_confirm: false }
    }
}

impl DedupParams {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::Config("dedup k must be >= 1".into()));
        }
        if self.num_perm < 1 || self.bands * self.rows != self.num_perm {
            return Err(Error::Config(format!(
                "bands ({}) × rows ({}) must equal num_perm ({})",
                self.bands, self.rows, self.num_perm
            )));
        }
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::Config("dedup threshold must lie in (0, 1]".into()));
        }
        Ok(())
    }

    /// Probability that a pair with Jaccard `j` shares at least one band.
    pub fn candidate_probability(&self, j: f64) -> f64 {
        1.0 - (1.0 - j.powi(self.rows as i32)).powi(self.bands as i32)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DedupReport {
    pub params: DedupParams,
    pub threshold: f64,
    pub clusters: Vec<Cluster>,
    /// Kept ids in input order.
    pub kept_ids: Vec<String>,
    pub removed: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Clusters near-duplicates among `items` (id, text). Each cluster keeps its
/// lexicographically smallest id.
pub fn dedupe(items: &[(String, String)], params: &DedupParams) -> Result<DedupReport> {
    params.validate()?;
    let mut ids = std::collections::HashSet::new();
    for (id, _) in items {
        if !ids.insert(id.as_str()) {
            return Err(Error::invalid(format!("duplicate id {id:?}")));
        }
    }
    let seeds = derive_seeds(params.seed, params.num_perm);
    let sign = |(id, text): &(String, String)| -> Result<(BTreeSet<u64>, Vec<u64>)> {
        let s = shingle(id, text, params.k)?;
        let v = minhash_values(&s.shingles, &seeds)?;
        Ok((s.shingles, v))
    };
    #[cfg(feature = "parallel")]
    let signed: Vec<Result<(BTreeSet<u64>, Vec<u64>)>> = {
        use rayon::prelude::*;
        items.par_iter().map(sign).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let signed: Vec<Result<(BTreeSet<u64>, Vec<u64>)>> = items.iter().map(sign).collect();
    let signed = signed.into_iter().collect::<Result<Vec<_>>>()?;

    let mut buckets: HashMap<(usize, u64), Vec<usize>> = HashMap::new();
    for (idx, (_, sig)) in signed.iter().enumerate() {
        for band in 0..params.bands {
            let chunk = &sig[band * params.rows..(band + 1) * params.rows];
            let key = chunk.iter().fold(mix64(band as u64), |h, v| mix64(h ^ v));
            buckets.entry((band, key)).or_default().push(idx);
        }
    }
    let mut candidates = BTreeSet::new();
    for members in buckets.values() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                candidates.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut uf = UnionFind::new(items.len());
    for (a, b) in candidates {
        let sim = if params.exact_confirm {
            jaccard(&signed[a].0, &signed[b].0)
        } else {
            let same = signed[a].1.iter().zip(&signed[b].1).filter(|(x, y)| x == y).count();
            same as f64 / params.num_perm as f64
        };
        if sim >= params.threshold {
            uf.union(a, b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..items.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut clusters = Vec::new();
    let mut dropped = std::collections::HashSet::new();
    for members in groups.values().filter(|m| m.len() > 1) {
        let mut ids: Vec<String> = members.iter().map(|&i| items[i].0.clone()).collect();
        ids.sort();
        for id in &ids[1..] {
            dropped.insert(id.clone());
        }
        clusters.push(Cluster { representative: ids[0].clone(), members: ids });
    }
    clusters.sort_by(|a, b| a.representative.cmp(&b.representative));
    let kept_ids: Vec<String> =
        items.iter().map(|(id, _)| id.clone()).filter(|id| !dropped.contains(id)).collect();
    Ok(DedupReport {
        params: params.clone(),
        threshold: params.threshold,
        removed: dropped.len(),
        clusters,
        kept_ids,
    })
}

/// Text used for dedup from a generic JSON record: `text` if present, else
/// instruction + question + answer.
pub fn record_text(v: &serde_json::Value) -> Option<String> {
    if let Some(t) = v.get("text").and_then(|t| t.as_str()) {
        return Some(t.to_string());
    }
    let parts: Vec<&str> = ["instruction", "question", "answer"]
        .iter()
        .filter_map(|k| v.get(*k).and_then(|x| x.as_str()))
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("\n"))
    }
}
