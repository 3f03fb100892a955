use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::lcs::rouge_l;
use super::tokenize::{tokenize, TokenMode};
use crate::llm::Embedder;
use crate::{Error, Result};

/// Fixed-length, finite embedding vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("vector must have dim >= 1"));
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("vector has non-finite components"));
        }
        Ok(Self(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Unit-length copy; zero vectors are rejected.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::invalid("cannot normalize a zero vector"));
        }
        Ok(Self(self.0.iter().map(|x| x / n).collect()))
    }
}

pub fn cosine(u: &Vector, v: &Vector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::invalid(format!("dimension mismatch: {} vs {}", u.dim(), v.dim())));
    }
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::invalid("cosine of a zero vector"));
    }
    let dot: f64 = u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

/// Greedy token matching F1 over per-token embeddings.
///
/// Precision averages, over candidate tokens, the best cosine to any reference
/// token; recall is the mirror image. Negative similarities count as 0.
pub fn embedding_f1(candidate: &[&str], reference: &[&str], embedder: &dyn Embedder) -> Result<f64> {
    if candidate.is_empty() || reference.is_empty() {
        return Ok(0.0);
    }
    let mut unique: Vec<String> = Vec::new();
    let mut slot: HashMap<&str, usize> = HashMap::new();
    for t in candidate.iter().chain(reference) {
        slot.entry(t).or_insert_with(|| {
            unique.push(t.to_string());
            unique.len() - 1
        });
    }
    let vectors = embedder.embed(&unique)?;
    if vectors.len() != unique.len() {
        return Err(Error::invalid("embedder returned the wrong number of vectors"));
    }
    let sim = |a: &str, b: &str| cosine(&vectors[slot[a]], &vectors[slot[b]]);
    let mut sims = vec![vec![0.0; reference.len()]; candidate.len()];
    for (i, c) in candidate.iter().enumerate() {
        for (j, r) in reference.iter().enumerate() {
            sims[i][j] = sim(c, r)?.max(0.0);
        }
    }
    let precision = sims
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum::<f64>()
        / candidate.len() as f64;
    let recall = (0..reference.len())
        .map(|j| sims.iter().map(|row| row[j]).fold(0.0, f64::max))
        .sum::<f64>()
        / reference.len() as f64;
    if precision + recall == 0.0 {
        return Ok(0.0);
    }
    Ok((2.0 * precision * recall / (precision + recall)).clamp(0.0, 1.0))
}

/// `0.5 · embedding_f1 + 0.5 · rouge_l`, both over the same tokenization.
pub fn similarity_eval(
    candidate: &str,
    reference: &str,
    embedder: &dyn Embedder,
    mode: TokenMode,
) -> Result<f64> {
    let c = tokenize(candidate, mode);
    let r = tokenize(reference, mode);
    let rouge = rouge_l(&c, &r)?.f1;
    let emb = embedding_f1(&c, &r, embedder)?;
    Ok(0.5 * emb + 0.5 * rouge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::llm::TableEmbedder;
    use proptest::prelude::*;

    fn v(x: &[f64]) -> Vector {
        Vector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn cosine_examples() {
        assert!((cosine(&v(&[3.0, 4.0]), &v(&[3.0, 4.0])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&v(&[1.0, 0.0]), &v(&[0.0, 1.0])).unwrap(), 0.0);
        let c = cosine(&v(&[1.0, 1.0]), &v(&[1.0, 0.0])).unwrap();
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn cosine_errors() {
        assert!(cosine(&v(&[1.0]), &v(&[1.0, 0.0])).is_err());
        assert!(cosine(&v(&[0.0, 0.0]), &v(&[1.0, 0.0])).is_err());
        assert!(Vector::new(vec![f64::NAN]).is_err());
        assert!(Vector::new(vec![]).is_err());
    }

    fn table() -> TableEmbedder {
        TableEmbedder::new([
            ("a", vec![1.0, 0.0, 0.0]),
            ("b", vec![0.0, 1.0, 0.0]),
            ("c", vec![0.0, 0.0, 1.0]),
            ("d", vec![1.0, 1.0, 0.0]),
            ("e", vec![0.0, 1.0, 1.0]),
        ])
    }

    #[test]
    fn identical_sequences_score_one() {
        assert!((embedding_f1(&["a", "b"], &["a", "b"], &table()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_sequences_score_zero() {
        assert_eq!(embedding_f1(&["a"], &["b", "c"], &table()).unwrap(), 0.0);
    }

    #[test]
    fn hand_computed_two_by_three() {
        // candidate [d, c], reference [a, b, e]; cosine table
        //        a      b      e
        //  d  1/√2   1/√2   1/2
        //  c   0      0     1/√2
        // precision = (1/√2 + 1/√2)/2 = 1/√2
        // recall    = (1/√2 + 1/√2 + 1/√2)/3 = 1/√2
        let f = embedding_f1(&["d", "c"], &["a", "b", "e"], &table()).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        // candidate [d], reference [a, c]: P = 1/√2, R = (1/√2 + 0)/2
        let f = embedding_f1(&["d"], &["a", "c"], &table()).unwrap();
        let (p, r) = (0.5f64.sqrt(), 0.5f64.sqrt() / 2.0);
        assert!((f - 2.0 * p * r / (p + r)).abs() < 1e-12);
    }

    #[test]
    fn similarity_eval_examples() {
        let e = table();
        assert!((similarity_eval("a b", "a b", &e, TokenMode::Word).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(similarity_eval("a", "b c", &e, TokenMode::Word).unwrap(), 0.0);
        // rouge 8/13 and embedding 0.40 average to 0.5077
        let mean: f64 = 0.5 * (8.0 / 13.0) + 0.5 * 0.40;
        assert!((mean - 0.5077).abs() < 1e-4);
    }

    #[test]
    fn embedder_failure_propagates() {
        let e = table();
        assert!(matches!(embedding_f1(&["zzz"], &["a"], &e), Err(Error::Provider(_))));
    }

    proptest! {
        #[test]
        fn cosine_scale_invariant(u in proptest::collection::vec(-10.0f64..10.0, 4),
                                  w in proptest::collection::vec(-10.0f64..10.0, 4),
                                  alpha in 0.01f64..100.0) {
            prop_assume!(u.iter().any(|x| x.abs() > 1e-3) && w.iter().any(|x| x.abs() > 1e-3));
            let scaled: Vec<f64> = u.iter().map(|x| x * alpha).collect();
            let a = cosine(&v(&scaled), &v(&w)).unwrap();
            let b = cosine(&v(&u), &v(&w)).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
        }

        #[test]
        fn constant_embedder_gives_one(c in proptest::collection::vec("[a-z]{1,4}", 1..6),
                                       r in proptest::collection::vec("[a-z]{1,4}", 1..6)) {
            let e = crate::llm::ConstantEmbedder::new(vec![0.3, -0.2, 0.9]);
            let c: Vec<&str> = c.iter().map(String::as_str).collect();
            let r: Vec<&str> = r.iter().map(String::as_str).collect();
            prop_assert!((embedding_f1(&c, &r, &e).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
