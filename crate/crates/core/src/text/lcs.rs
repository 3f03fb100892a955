use serde::{Deserialize, Serialize};

use super::tokenize::{tokenize, TokenMode};
use crate::{Error, Result};

/// Length of the longest common subsequence. O(|a|·|b|) time, O(min) memory.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    let mut row = vec![0usize; short.len() + 1];
    for x in long {
        let mut diag = 0;
        for (j, y) in short.iter().enumerate() {
            let above = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { above.max(row[j]) };
            diag = above;
        }
    }
    row[short.len()]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeScore {
    pub lcs: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// ROUGE-L in F1 form (β = 1). An empty candidate scores 0; an empty
/// reference is rejected.
pub fn rouge_l<T: PartialEq>(candidate: &[T], reference: &[T]) -> Result<RougeScore> {
    if reference.is_empty() {
        return Err(Error::invalid("rouge_l: reference is empty"));
    }
    if candidate.is_empty() {
        return Ok(RougeScore { lcs: 0, precision: 0.0, recall: 0.0, f1: 0.0 });
    }
    let lcs = lcs_length(candidate, reference);
    let precision = lcs as f64 / candidate.len() as f64;
    let recall = lcs as f64 / reference.len() as f64;
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(RougeScore { lcs, precision, recall, f1 })
}

pub fn rouge_l_str(candidate: &str, reference: &str, mode: TokenMode) -> Result<RougeScore> {
    rouge_l(&tokenize(candidate, mode), &tokenize(reference, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    // Exponential oracle: try every subsequence of the shorter sequence.
    fn brute_lcs(a: &[u8], b: &[u8]) -> usize {
        let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut best = 0;
        for mask in 0u32..(1u32 << short.len()) {
            let sub: Vec<u8> =
                (0..short.len()).filter(|i| mask & (1 << i) != 0).map(|i| short[i]).collect();
            if sub.len() <= best {
                continue;
            }
            let mut it = long.iter();
            if sub.iter().all(|c| it.any(|x| x == c)) {
                best = sub.len();
            }
        }
        best
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_length(&chars(""), &chars("abc")), 0);
        assert_eq!(lcs_length(&chars("abc"), &chars("abc")), 3);
        assert_eq!(lcs_length(&chars("ABCBDAB"), &chars("BDCABA")), 4);
        assert_eq!(brute_lcs(b"ABCBDAB", b"BDCABA"), 4);
    }

    #[test]
    fn rouge_examples() {
        let r = rouge_l(&chars("abc"), &chars("abc")).unwrap();
        assert_eq!(r.f1, 1.0);
        let r = rouge_l(&chars("abc"), &chars("xyz")).unwrap();
        assert_eq!(r.f1, 0.0);
        let r = rouge_l_str("ABCBDAB", "BDCABA", TokenMode::Char).unwrap();
        assert!((r.f1 - 8.0 / 13.0).abs() < 1e-12);
        assert!((r.f1 - 0.6154).abs() < 1e-4);
    }

    #[test]
    fn rouge_edge_cases() {
        assert!(matches!(rouge_l::<char>(&chars("a"), &[]), Err(Error::InvalidInput(_))));
        assert_eq!(rouge_l(&[], &chars("abc")).unwrap().f1, 0.0);
    }

    proptest! {
        #[test]
        fn lcs_matches_brute_force(a in proptest::collection::vec(0u8..4, 0..=12),
                                   b in proptest::collection::vec(0u8..4, 0..=12)) {
            prop_assert_eq!(lcs_length(&a, &b), brute_lcs(&a, &b));
        }

        #[test]
        fn lcs_symmetric_and_bounded(a in proptest::collection::vec(0u8..5, 0..30),
                                     b in proptest::collection::vec(0u8..5, 0..30)) {
            let l = lcs_length(&a, &b);
            prop_assert_eq!(l, lcs_length(&b, &a));
            prop_assert!(l <= a.len().min(b.len()));
            prop_assert_eq!(lcs_length(&a, &a), a.len());
        }

        #[test]
        fn lcs_monotone_under_shared_suffix(a in proptest::collection::vec(0u8..5, 0..20),
                                            b in proptest::collection::vec(0u8..5, 0..20),
                                            s in proptest::collection::vec(0u8..5, 0..5)) {
            let mut a2 = a.clone();
            a2.extend(&s);
            let mut b2 = b.clone();
            b2.extend(&s);
            prop_assert!(lcs_length(&a2, &b2) >= lcs_length(&a, &b));
        }

        #[test]
        fn rouge_f1_symmetric(a in proptest::collection::vec(0u8..5, 1..20),
                              b in proptest::collection::vec(0u8..5, 1..20)) {
            let ab = rouge_l(&a, &b).unwrap();
            let ba = rouge_l(&b, &a).unwrap();
            prop_assert!((ab.f1 - ba.f1).abs() < 1e-12);
            prop_assert!((ab.precision - ba.recall).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab.f1));
        }
    }
}
