//! Preference data: annotation sampling, candidate generation, best/worst
//! voting, reward-gap scoring and quantile denoising.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::ordered_map;
use crate::hashing::{derive_seeds, mix64, seeded_hash};
use crate::llm::{ask_parsed, parse_vote, render, Gateway, Quarantined, TemplateId};
use crate::sft::DialogueSample;
use crate::text::{rouge_l_str, special_char_ratio, tokenize, word_repetition_rate, CharClasses, NGramModel, TokenMode};
use crate::{Error, Result};

pub const DEFAULT_N_SFT: usize = 4000;
pub const DEFAULT_N_SUPPLEMENTARY: usize = 2000;
pub const DEFAULT_CANDIDATES: usize = 5;
pub const DEFAULT_TEMPERATURE: f64 = 0.8;
/// Extra draws allowed per candidate slot when a reply repeats an earlier one.
pub const RESAMPLE_CAP: usize = 3;
pub const DEFAULT_CUT: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationItem {
    pub id: String,
    pub query: String,
    pub provenance: String,
}

fn sample_indices(len: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut idx = rand::seq::index::sample(rng, len, n).into_vec();
    idx.sort_unstable();
    idx
}

/// Draws `n_sft` and `n_sup` items uniformly without replacement.
pub fn build_annotation_set(
    sft: &[DialogueSample],
    supplementary: &[DialogueSample],
    n_sft: usize,
    n_sup: usize,
    seed: u64,
) -> Result<Vec<AnnotationItem>> {
    if sft.len() < n_sft {
        return Err(Error::invalid(format!("sft stream has {} items, {n_sft} requested ({} short)", sft.len(), n_sft - sft.len())));
    }
    if supplementary.len() < n_sup {
        return Err(Error::invalid(format!(
            "supplementary stream has {} items, {n_sup} requested ({} short)",
            supplementary.len(),
            n_sup - supplementary.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n_sft + n_sup);
    for (stream, n, tag) in [(sft, n_sft, "sft"), (supplementary, n_sup, "supplementary")] {
        for i in sample_indices(stream.len(), n, &mut rng) {
            let s = &stream[i];
            out.push(AnnotationItem { id: s.id.clone(), query: s.question.clone(), provenance: tag.into() });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub candidates: Vec<String>,
    /// Set when duplicates survived the resample cap.
    pub duplicates: bool,
}

/// Samples `k` responses with distinct sub-seeds; an exact repeat is redrawn
/// up to [`RESAMPLE_CAP`] times before it is accepted and flagged.
pub fn generate_candidates(x: &str, policy: Gateway<'_>, k: usize, temperature: f64, seed: u64) -> Result<CandidateSet> {
    if k < 2 {
        return Err(Error::invalid(format!("need at least 2 candidates, got {k}")));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::Config(format!("candidate temperature must be > 0, got {temperature}")));
    }
    let seeds = derive_seeds(seeded_hash(seed, x), k * (RESAMPLE_CAP + 1));
    let mut seen = BTreeSet::new();
    let mut out = CandidateSet { candidates: Vec::with_capacity(k), duplicates: false };
    for slot in 0..k {
        let mut reply = String::new();
        for attempt in 0..=RESAMPLE_CAP {
            let req = policy.request(x).with_temperature(temperature).with_seed(seeds[attempt * k + slot]);
            reply = policy.provider.complete(&req)?;
            if !seen.contains(&reply) {
                break;
            }
        }
        if !seen.insert(reply.clone()) {
            out.duplicates = true;
        }
        out.candidates.push(reply);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoteResult {
    pub chosen: usize,
    pub rejected: usize,
    /// One entry per judge; `None` means the judge abstained.
    pub ballots: Vec<Option<(usize, usize)>>,
}

pub const JUDGES: usize = 3;

fn responses_block(candidates: &[String]) -> String {
    candidates
        .iter()
        .enumerate()
        .map(|(i, c)| format!("Response {}:\n{c}", i + 1))
        .collect::<Vec<_>>()
        .join("\n\n")
}

/// Combines ballots: plurality per slot, lowest index on ties. If the worst
/// plurality equals the chosen index, the next most-voted worst index wins.
pub fn tally(n: usize, ballots: &[(usize, usize)]) -> Result<(usize, usize)> {
    if ballots.is_empty() {
        return Err(Error::InvalidState("no valid ballots".into()));
    }
    let mut best = vec![0usize; n];
    let mut worst = vec![0usize; n];
    for &(b, w) in ballots {
        if b >= n || w >= n {
            return Err(Error::invalid(format!("ballot ({b}, {w}) out of range for {n} candidates")));
        }
        best[b] += 1;
        worst[w] += 1;
    }
    // max_by_key keeps the last maximum, so scan in reverse for lowest index
    let chosen = (0..n).rev().max_by_key(|&i| best[i]).unwrap_or(0);
    let rejected = (0..n)
        .rev()
        .filter(|&i| i != chosen && worst[i] > 0)
        .max_by_key(|&i| worst[i])
        .unwrap_or_else(|| (0..n).rev().filter(|&i| i != chosen).min_by_key(|&i| best[i]).unwrap_or(0));
    Ok((chosen, rejected))
}

pub fn vote_best_worst(x: &str, candidates: &[String], judges: &[Gateway<'_>]) -> Result<VoteResult> {
    if candidates.len() < 2 {
        return Err(Error::invalid("voting needs at least 2 candidates"));
    }
    if judges.len() != JUDGES {
        return Err(Error::invalid(format!("expected {JUDGES} judges, got {}", judges.len())));
    }
    let slots = [("question".to_string(), x.to_string()), ("responses".to_string(), responses_block(candidates))]
        .into_iter()
        .collect();
    let prompt = render(TemplateId::PrefVote, &slots)?;
    let n = candidates.len();
    let mut ballots = Vec::with_capacity(judges.len());
    for j in judges {
        let req = j.request(prompt.clone()).with_temperature(0.0);
        match ask_parsed(j.provider, &req, |r| parse_vote(r, n)) {
            Ok(v) => ballots.push(Some((v.best, v.worst))),
            Err(Error::Parse(_)) => ballots.push(None),
            Err(e) => return Err(e),
        }
    }
    let valid: Vec<_> = ballots.iter().flatten().copied().collect();
    let (chosen, rejected) = tally(n, &valid)?;
    Ok(VoteResult { chosen, rejected, ballots })
}

/// Negative log-likelihood that the chosen response outranks the rejected one.
pub fn rm_loss(r_c: f64, r_r: f64) -> Result<f64> {
    if !r_c.is_finite() || !r_r.is_finite() {
        return Err(Error::invalid(format!("non-finite reward ({r_c}, {r_r})")));
    }
    let d = r_c - r_r;
    Ok(if d >= 0.0 { (-d).exp().ln_1p() } else { -d + d.exp().ln_1p() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreferencePair {
    pub id: String,
    pub query: String,
    pub chosen: String,
    pub rejected: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub per_scorer_rewards: BTreeMap<String, (f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dis: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub duplicates: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

impl PreferencePair {
    pub fn new(id: impl Into<String>, query: impl Into<String>, chosen: impl Into<String>, rejected: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            query: query.into(),
            chosen: chosen.into(),
            rejected: rejected.into(),
            per_scorer_rewards: BTreeMap::new(),
            dis: None,
            duplicates: false,
            provenance: String::new(),
        }
    }
}

pub trait RewardScorer: Send + Sync {
    fn id(&self) -> &str;
    fn score(&self, x: &str, y: &str) -> Result<f64>;
}

/// Offline stand-in for a trained reward model: a seeded linear blend of
/// cheap text features.
#[derive(Clone)]
pub struct FeatureScorer {
    id: String,
    weights: [f64; 5],
    lm: Option<Arc<NGramModel>>,
}

const BASE_WEIGHTS: [f64; 5] = [0.5, 2.0, 1.0, -2.0, -0.1];

impl FeatureScorer {
    pub fn new(id: impl Into<String>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed));
        let weights = BASE_WEIGHTS.map(|w| w * (1.0 + rng.random_range(-0.25..=0.25)));
        Self { id: id.into(), weights, lm: None }
    }

    pub fn with_lm(mut self, lm: Arc<NGramModel>) -> Self {
        self.lm = Some(lm);
        self
    }

    pub fn weights(&self) -> &[f64; 5] {
        &self.weights
    }

    fn features(&self, x: &str, y: &str) -> Result<[f64; 5]> {
        let len = tokenize(y, TokenMode::Word).len() as f64;
        let overlap = if x.trim().is_empty() { 0.0 } else { rouge_l_str(y, x, TokenMode::Word)?.f1 };
        let distinct = 1.0 - word_repetition_rate(y, 2).unwrap_or(0.0);
        let special = special_char_ratio(y, &CharClasses::default());
        let ppl = match &self.lm {
            Some(lm) => lm.perplexity(y)?.ln(),
            None => 0.0,
        };
        Ok([len.ln_1p(), overlap, distinct, special, ppl])
    }
}

impl RewardScorer for FeatureScorer {
    fn id(&self) -> &str {
        &self.id
    }

    fn score(&self, x: &str, y: &str) -> Result<f64> {
        let f = self.features(x, y)?;
        Ok(f.iter().zip(&self.weights).map(|(a, b)| a * b).sum())
    }
}

/// Mean reward gap over all scorers. The pair is only updated when every
/// scorer succeeds.
pub fn preference_distance(pair: &mut PreferencePair, scorers: &[&dyn RewardScorer]) -> Result<f64> {
    if scorers.is_empty() {
        return Err(Error::invalid("at least one reward scorer is required"));
    }
    let mut rewards = BTreeMap::new();
    let mut sum = 0.0;
    for s in scorers {
        let rc = s.score(&pair.query, &pair.chosen)?;
        let rr = s.score(&pair.query, &pair.rejected)?;
        if !rc.is_finite() || !rr.is_finite() {
            return Err(Error::invalid(format!("scorer {} returned a non-finite reward", s.id())));
        }
        if rewards.insert(s.id().to_string(), (rc, rr)).is_some() {
            return Err(Error::invalid(format!("duplicate scorer id {}", s.id())));
        }
        sum += rc - rr;
    }
    let dis = sum / scorers.len() as f64;
    pair.per_scorer_rewards = rewards;
    pair.dis = Some(dis);
    Ok(dis)
}

#[derive(Debug, Clone, Default)]
pub struct ScoreOutput {
    pub pairs: Vec<PreferencePair>,
    pub quarantined: Vec<Quarantined>,
}

pub fn score_pairs(pairs: Vec<PreferencePair>, scorers: &[&dyn RewardScorer]) -> Result<ScoreOutput> {
    if scorers.is_empty() {
        return Err(Error::invalid("at least one reward scorer is required"));
    }
    let results = ordered_map(&pairs, |p| {
        let mut p = p.clone();
        preference_distance(&mut p, scorers).map(|_| p)
    });
    let mut out = ScoreOutput::default();
    for (orig, r) in pairs.iter().zip(results) {
        match r {
            Ok(p) => out.pairs.push(p),
            Err(e) => out.quarantined.push(Quarantined::new(&orig.id, "score_preference", &e)),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct DenoiseOutput {
    /// Survivors in input order.
    pub kept: Vec<PreferencePair>,
    pub removed_low: Vec<PreferencePair>,
    pub removed_high: Vec<PreferencePair>,
    pub removed_negative: Vec<PreferencePair>,
}

/// Number of items a fraction cuts from `n`; the epsilon keeps e.g. 0.1 * 10
/// from flooring to 0.
pub fn cut_count(frac: f64, n: usize) -> usize {
    (frac * n as f64 + 1e-9).floor() as usize
}

/// Drops the lowest `low` and highest `high` fraction of pairs by distance.
/// With `drop_negative`, pairs with a negative distance go first and the
/// quantile cut applies to the rest.
pub fn denoise(pairs: Vec<PreferencePair>, low: f64, high: f64, drop_negative: bool) -> Result<DenoiseOutput> {
    if !(low.is_finite() && high.is_finite() && low >= 0.0 && high >= 0.0 && low + high < 1.0) {
        return Err(Error::Config(format!("cut fractions ({low}, {high}) must be >= 0 and sum below 1")));
    }
    let mut out = DenoiseOutput::default();
    let mut ranked = Vec::with_capacity(pairs.len());
    for (pos, p) in pairs.into_iter().enumerate() {
        let d = p.dis.ok_or_else(|| Error::InvalidState(format!("pair {:?} has no distance", p.id)))?;
        if drop_negative && d < 0.0 {
            out.removed_negative.push(p);
        } else {
            ranked.push((d, pos, p));
        }
    }
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.2.id.cmp(&b.2.id)));
    let n = ranked.len();
    let (nl, nh) = (cut_count(low, n), cut_count(high, n));
    let mut kept = Vec::with_capacity(n - nl - nh);
    for (rank, (_, pos, p)) in ranked.into_iter().enumerate() {
        if rank < nl {
            out.removed_low.push(p);
        } else if rank >= n - nh {
            out.removed_high.push(p);
        } else {
            kept.push((pos, p));
        }
    }
    kept.sort_by_key(|k| k.0);
    out.kept = kept.into_iter().map(|k| k.1).collect();
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct PrefGenOutput {
    pub pairs: Vec<PreferencePair>,
    pub quarantined: Vec<Quarantined>,
}

/// Candidates then votes, per annotation item.
pub fn generate_preferences(
    items: &[AnnotationItem],
    policy: Gateway<'_>,
    judges: &[Gateway<'_>],
    k: usize,
    temperature: f64,
    seed: u64,
) -> Result<PrefGenOutput> {
    if judges.len() != JUDGES {
        return Err(Error::invalid(format!("expected {JUDGES} judges, got {}", judges.len())));
    }
    let results = ordered_map(items, |it| -> Result<PreferencePair> {
        let set = generate_candidates(&it.query, policy, k, temperature, seed)?;
        let vote = vote_best_worst(&it.query, &set.candidates, judges)?;
        let mut p = PreferencePair::new(&it.id, &it.query, &set.candidates[vote.chosen], &set.candidates[vote.rejected]);
        p.duplicates = set.duplicates;
        p.provenance = it.provenance.clone();
        Ok(p)
    });
    let mut out = PrefGenOutput::default();
    for (it, r) in items.iter().zip(results) {
        match r {
            Ok(p) => out.pairs.push(p),
            Err(e) => out.quarantined.push(Quarantined::new(&it.id, "gen_preference", &e)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::{LlmRequest, MockChat};
    use proptest::prelude::*;

    fn stream(prefix: &str, n: usize) -> Vec<DialogueSample> {
        (0..n).map(|i| DialogueSample::new(format!("{prefix}{i}"), format!("{prefix}q{i}"), "a")).collect()
    }

    #[test]
    fn annotation_sampling() {
        let (a, b) = (stream("s", 5), stream("p", 3));
        let set = build_annotation_set(&a, &b, 2, 1, 7).unwrap();
        assert_eq!(set.len(), 3);
        assert_eq!(set, build_annotation_set(&a, &b, 2, 1, 7).unwrap());
        assert_eq!(set.iter().filter(|i| i.provenance == "sft").count(), 2);
        let ids: BTreeSet<_> = set.iter().map(|i| &i.id).collect();
        assert_eq!(ids.len(), 3);
        let only = build_annotation_set(&a, &b, 4, 0, 7).unwrap();
        assert!(only.iter().all(|i| i.provenance == "sft"));
        let err = build_annotation_set(&a, &b, 6, 0, 7).unwrap_err().to_string();
        assert!(err.contains("1 short"), "{err}");
    }

    #[test]
    fn distinct_candidates_from_seeded_mock() {
        let mock = MockChat::new(|r: &LlmRequest| Ok(format!("resp-{}", r.seed.unwrap())));
        let set = generate_candidates("x", Gateway::new(&mock, "m"), 5, 0.8, 1).unwrap();
        assert_eq!(set.candidates.iter().collect::<BTreeSet<_>>().len(), 5);
        assert!(!set.duplicates);
    }

    #[test]
    fn constant_mock_flags_duplicates() {
        let mock = MockChat::constant("same");
        let set = generate_candidates("x", Gateway::new(&mock, "m"), 5, 0.8, 1).unwrap();
        assert_eq!(set.candidates.len(), 5);
        assert!(set.duplicates);
        assert!(generate_candidates("x", Gateway::new(&mock, "m"), 5, 0.0, 1).is_err());
        assert!(generate_candidates("x", Gateway::new(&mock, "m"), 1, 0.8, 1).is_err());
    }

    #[test]
    fn plurality_and_ties() {
        assert_eq!(tally(5, &[(2, 0), (2, 1), (4, 0)]).unwrap().0, 2);
        assert_eq!(tally(5, &[(1, 0), (2, 0), (3, 0)]).unwrap().0, 1);
        // worst plurality collides with chosen: runner-up worst takes it
        assert_eq!(tally(5, &[(2, 2), (2, 2), (3, 4)]).unwrap(), (2, 4));
        assert!(tally(5, &[]).is_err());
    }

    #[test]
    fn abstaining_judge() {
        let good = MockChat::constant("Best Response: 2\nWorst Response: 4\nReason: x");
        let bad = MockChat::constant("no idea");
        let cands: Vec<String> = (0..5).map(|i| format!("c{i}")).collect();
        let judges = [Gateway::new(&good, "a"), Gateway::new(&bad, "b"), Gateway::new(&good, "c")];
        let v = vote_best_worst("q", &cands, &judges).unwrap();
        assert_eq!((v.chosen, v.rejected), (1, 3));
        assert_eq!(v.ballots[1], None);
        let all_bad = [Gateway::new(&bad, "a"), Gateway::new(&bad, "b"), Gateway::new(&bad, "c")];
        assert!(vote_best_worst("q", &cands, &all_bad).is_err());
        assert!(vote_best_worst("q", &cands, &judges[..2]).is_err());
    }

    #[test]
    fn loss_values() {
        assert!((rm_loss(1.0, 1.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
        assert!((rm_loss(1.0, 0.0).unwrap() - 0.313261687518222).abs() < 1e-12);
        let tiny = rm_loss(50.0, 0.0).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-21);
        assert!((rm_loss(0.0, 800.0).unwrap() - 800.0).abs() < 1e-9);
        assert!(rm_loss(f64::NAN, 0.0).is_err());
        assert!(rm_loss(0.0, f64::INFINITY).is_err());
    }

    struct Fixed(&'static str, f64, f64);
    impl RewardScorer for Fixed {
        fn id(&self) -> &str {
            self.0
        }
        fn score(&self, _: &str, y: &str) -> Result<f64> {
            Ok(if y == "c" { self.1 } else { self.2 })
        }
    }

    #[test]
    fn distance_mean() {
        let mut p = PreferencePair::new("p", "q", "c", "r");
        assert_eq!(preference_distance(&mut p, &[&Fixed("a", 2.0, 1.0)]).unwrap(), 1.0);
        let gaps = [0.5, -0.2, 0.1, 0.4, 0.2];
        let ids = ["a", "b", "c", "d", "e"];
        let s: Vec<Fixed> = ids.iter().zip(gaps).map(|(i, g)| Fixed(i, 3.0 + g, 3.0)).collect();
        let refs: Vec<&dyn RewardScorer> = s.iter().map(|s| s as &dyn RewardScorer).collect();
        assert!((preference_distance(&mut p, &refs).unwrap() - 0.2).abs() < 1e-12);
        assert_eq!(p.per_scorer_rewards.len(), 5);
        assert_eq!(preference_distance(&mut p, &[&Fixed("a", 4.0, 4.0)]).unwrap(), 0.0);
    }

    #[test]
    fn distance_failure_leaves_pair_untouched() {
        struct Broken;
        impl RewardScorer for Broken {
            fn id(&self) -> &str {
                "broken"
            }
            fn score(&self, _: &str, _: &str) -> Result<f64> {
                Err(Error::Parse("down".into()))
            }
        }
        let mut p = PreferencePair::new("p", "q", "c", "r");
        assert!(preference_distance(&mut p, &[&Fixed("a", 1.0, 0.0), &Broken]).is_err());
        assert!(p.dis.is_none() && p.per_scorer_rewards.is_empty());
        let out = score_pairs(vec![p], &[&Broken]).unwrap();
        assert_eq!(out.quarantined.len(), 1);
    }

    #[test]
    fn feature_scorer_is_seeded() {
        let a = FeatureScorer::new("a", 1);
        assert_eq!(a.weights(), FeatureScorer::new("a", 1).weights());
        assert_ne!(a.weights(), FeatureScorer::new("a", 2).weights());
        let s = a.score("头痛怎么办", "头痛时建议多休息，多喝水。").unwrap();
        assert!(s.is_finite());
    }

    fn with_dis(ds: &[f64]) -> Vec<PreferencePair> {
        ds.iter()
            .enumerate()
            .map(|(i, d)| PreferencePair { dis: Some(*d), ..PreferencePair::new(format!("p{i:02}"), "q", "c", "r") })
            .collect()
    }

    #[test]
    fn denoise_examples() {
        let out = denoise(with_dis(&(1..=10).map(f64::from).collect::<Vec<_>>()), 0.1, 0.1, false).unwrap();
        assert_eq!(out.removed_low[0].dis, Some(1.0));
        assert_eq!(out.removed_high[0].dis, Some(10.0));
        assert_eq!(out.kept.len(), 8);
        let out = denoise(with_dis(&[1.0, 2.0, 3.0, 4.0, 5.0]), 0.1, 0.1, false).unwrap();
        assert_eq!(out.kept.len(), 5);
        let mut missing = with_dis(&[1.0]);
        missing[0].dis = None;
        assert!(matches!(denoise(missing, 0.1, 0.1, false), Err(Error::InvalidState(_))));
        assert!(denoise(vec![], 0.5, 0.5, false).is_err());
        let out = denoise(with_dis(&[-1.0, 2.0, 3.0]), 0.0, 0.0, true).unwrap();
        assert_eq!((out.removed_negative.len(), out.kept.len()), (1, 2));
    }

    proptest! {
        #[test]
        fn loss_monotone(a in -60.0f64..60.0, b in -60.0f64..60.0, step in 0.01f64..5.0) {
            prop_assert!(rm_loss(a + step, b).unwrap() < rm_loss(a, b).unwrap());
            let sym = rm_loss(a, b).unwrap() + rm_loss(b, a).unwrap();
            prop_assert!(sym >= 2.0 * std::f64::consts::LN_2 - 1e-12);
        }

        #[test]
        fn denoise_partition(ds in proptest::collection::vec(-5.0f64..5.0, 0..60), low in 0.0f64..0.45, high in 0.0f64..0.45) {
            let n = ds.len();
            let out = denoise(with_dis(&ds), low, high, false).unwrap();
            prop_assert_eq!(out.kept.len() + out.removed_low.len() + out.removed_high.len(), n);
            let max_low = out.removed_low.iter().map(|p| p.dis.unwrap()).fold(f64::NEG_INFINITY, f64::max);
            let min_high = out.removed_high.iter().map(|p| p.dis.unwrap()).fold(f64::INFINITY, f64::min);
            for p in &out.kept {
                prop_assert!(max_low <= p.dis.unwrap() && p.dis.unwrap() <= min_high);
            }
        }

        #[test]
        fn tally_order_invariant(ballots in proptest::collection::vec((0usize..5, 0usize..5), 1..4)) {
            let mut rev = ballots.clone();
            rev.reverse();
            let (c, r) = tally(5, &ballots).unwrap();
            prop_assert_eq!((c, r), tally(5, &rev).unwrap());
            prop_assert_ne!(c, r);
        }

        #[test]
        fn shift_invariance(c in -10.0f64..10.0, r in -10.0f64..10.0, shift in -100.0f64..100.0) {
            let mut p = PreferencePair::new("p", "q", "c", "r");
            let base = preference_distance(&mut p, &[&Fixed("a", c, r)]).unwrap();
            let moved = preference_distance(&mut p, &[&Fixed("a", c + shift, r + shift)]).unwrap();
            prop_assert!((base - moved).abs() < 1e-9);
        }
    }
}
