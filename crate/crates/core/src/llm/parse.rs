use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Folds full-width ASCII variants (U+FF01..U+FF5E) and the ideographic space
/// onto their ASCII forms and normalizes line endings.
pub fn normalize_reply(reply: &str) -> String {
    reply
        .replace("\r\n", "\n")
        .chars()
        .map(|c| match c as u32 {
            0xFF01..=0xFF5E => char::from_u32(c as u32 - 0xFF01 + 0x21).unwrap_or(c),
            0x3000 => ' ',
            _ => c,
        })
        .collect()
}

fn fold(c: char) -> char {
    match c as u32 {
        0xFF01..=0xFF5E => char::from_u32(c as u32 - 0xFF01 + 0x21).unwrap_or(c),
        0x3000 => ' ',
        _ => c,
    }
}

/// Every match of `header` then optional spaces and a colon, compared
/// case-insensitively with full-width forms folded. Offsets index `text`
/// itself: (start of header, end of colon).
fn header_matches<'a>(text: &'a str, header: &'a str) -> impl Iterator<Item = (usize, usize)> + 'a {
    text.char_indices().filter_map(move |(start, _)| {
        let mut chars = text[start..].char_indices().peekable();
        for h in header.chars() {
            let (_, c) = chars.next()?;
            if !fold(c).eq_ignore_ascii_case(&h) {
                return None;
            }
        }
        while chars.next_if(|&(_, c)| matches!(fold(c), ' ' | '\t')).is_some() {}
        let (i, c) = chars.next()?;
        (fold(c) == ':').then(|| (start, start + i + c.len_utf8()))
    })
}

fn find_header(text: &str, header: &str) -> Option<(usize, usize)> {
    header_matches(text, header).next()
}

/// Trimmed text after the first `header:`, original characters kept.
pub(crate) fn after_header<'a>(text: &'a str, header: &str) -> Option<&'a str> {
    find_header(text, header).map(|(_, end)| text[end..].trim())
}

/// `text` minus a leading `header:`, if it starts with one.
pub(crate) fn strip_header<'a>(text: &'a str, header: &str) -> Option<&'a str> {
    header_matches(text, header).next().filter(|(s, _)| *s == 0).map(|(_, end)| text[end..].trim())
}

/// Trimmed text after the last `header:`.
pub(crate) fn after_last_header<'a>(text: &'a str, header: &str) -> Option<&'a str> {
    header_matches(text, header).last().map(|(_, end)| text[end..].trim())
}

/// Content of each header up to the next header in `headers` (or the end).
fn sections<'a>(text: &'a str, headers: &[&str]) -> Vec<Option<&'a str>> {
    let found: Vec<Option<(usize, usize)>> = headers.iter().map(|h| find_header(text, h)).collect();
    found
        .iter()
        .map(|f| {
            let (_, body_start) = (*f)?;
            let end = found
                .iter()
                .flatten()
                .map(|(s, _)| *s)
                .filter(|s| *s >= body_start)
                .min()
                .unwrap_or(text.len());
            Some(text[body_start..end].trim())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedScore {
    pub score: u8,
    pub reason: String,
}

fn leading_int(s: &str) -> Option<u64> {
    let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() || digits.len() > 6 {
        return None;
    }
    digits.parse().ok()
}

pub fn parse_score(reply: &str) -> Result<ParsedScore> {
    let text = reply.replace("\r\n", "\n");
    let secs = sections(&text, &["Score Result", "Reason"]);
    let raw = secs[0].ok_or_else(|| Error::Parse("missing `Score Result:` header".into()))?;
    let body = &normalize_reply(raw);
    let score = leading_int(body)
        .ok_or_else(|| Error::Parse(format!("score is not an integer: {:?}", truncate(body))))?;
    if !(1..=10).contains(&score) {
        return Err(Error::Parse(format!("score {score} outside 1..=10")));
    }
    Ok(ParsedScore { score: score as u8, reason: secs[1].unwrap_or("").to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedOptimization {
    pub needs_opt: bool,
    pub optimized: Option<String>,
    pub reason: String,
}

pub fn parse_optimization(reply: &str) -> Result<ParsedOptimization> {
    let text = reply.replace("\r\n", "\n");
    let secs = sections(&text, &["Data Requires Optimization", "Optimized Data", "Reason"]);
    let flag = &normalize_reply(secs[0].ok_or_else(|| Error::Parse("missing `Data Requires Optimization:`".into()))?);
    let data = secs[1].ok_or_else(|| Error::Parse("missing `Optimized Data:`".into()))?;
    let word = flag.split_whitespace().next().unwrap_or("").trim_end_matches(['.', '。']);
    let needs_opt = match word.to_ascii_lowercase().as_str() {
        "yes" | "是" => true,
        "no" | "否" => false,
        _ => return Err(Error::Parse(format!("expected yes/no, got {:?}", truncate(flag)))),
    };
    let reason = secs[2].unwrap_or("").to_string();
    if !needs_opt {
        return Ok(ParsedOptimization { needs_opt, optimized: None, reason });
    }
    if data.is_empty() || data.eq_ignore_ascii_case("null") {
        return Err(Error::Parse("optimization requested but no optimized data given".into()));
    }
    Ok(ParsedOptimization { needs_opt, optimized: Some(data.to_string()), reason })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JudgeOutcome {
    Win,
    Lose,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgement {
    pub outcome: JudgeOutcome,
    pub reason: String,
}

pub fn parse_judgement(reply: &str) -> Result<Judgement> {
    let text = reply.replace("\r\n", "\n");
    let secs = sections(&text, &["Evaluation Result", "Reason"]);
    let body = &normalize_reply(secs[0].ok_or_else(|| Error::Parse("missing `Evaluation Result:` header".into()))?);
    let word = body
        .split_whitespace()
        .next()
        .unwrap_or("")
        .trim_matches(|c: char| !c.is_alphanumeric());
    let outcome = match word.to_ascii_lowercase().as_str() {
        "win" => JudgeOutcome::Win,
        "lose" => JudgeOutcome::Lose,
        "tie" => JudgeOutcome::Tie,
        _ => return Err(Error::Parse(format!("unknown judgement {:?}", truncate(body)))),
    };
    Ok(Judgement { outcome, reason: secs[1].unwrap_or("").to_string() })
}

/// A judge's ballot, 0-based indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedVote {
    pub best: usize,
    pub worst: usize,
}

/// Parses `Best Response:` / `Worst Response:` (1-based numbers) for a vote
/// over `n_candidates` responses.
pub fn parse_vote(reply: &str, n_candidates: usize) -> Result<ParsedVote> {
    let text = reply.replace("\r\n", "\n");
    let secs = sections(&text, &["Best Response", "Worst Response", "Reason"]);
    let pick = |sec: Option<&str>, name: &str| -> Result<usize> {
        let body = &normalize_reply(sec.ok_or_else(|| Error::Parse(format!("missing `{name}:` header")))?);
        let body = body.trim_start_matches(|c: char| !c.is_ascii_digit() && !c.is_alphabetic());
        let body = body.strip_prefix("Response").unwrap_or(body).trim_start();
        let n = leading_int(body).ok_or_else(|| Error::Parse(format!("{name} is not a number")))?;
        if n < 1 || n as usize > n_candidates {
            return Err(Error::Parse(format!("{name} {n} outside 1..={n_candidates}")));
        }
        Ok(n as usize - 1)
    };
    let best = pick(secs[0], "Best Response")?;
    let worst = pick(secs[1], "Worst Response")?;
    if best == worst {
        return Err(Error::Parse("best and worst name the same response".into()));
    }
    Ok(ParsedVote { best, worst })
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bodies_keep_full_width_text() {
        let reply = "Data Requires Optimization：是\nOptimized Data：Question: 头痛？\nAnswer: 多休息，多喝水。\nReason：更清楚";
        let p = parse_optimization(reply).unwrap();
        assert_eq!(p.optimized.as_deref(), Some("Question: 头痛？\nAnswer: 多休息，多喝水。"));
        assert_eq!(after_last_header(p.optimized.as_deref().unwrap(), "Answer"), Some("多休息，多喝水。"));
        assert_eq!(strip_header("ＩＮＳＴＲＵＣＴＩＯＮ　：请简要回答", "Instruction"), Some("请简要回答"));
        assert_eq!(strip_header("Use the Instruction: field", "Instruction"), None);
    }

    #[test]
    fn score_examples() {
        let p = parse_score("Score Result:\n8\nReason:\nclear").unwrap();
        assert_eq!(p, ParsedScore { score: 8, reason: "clear".into() });
        assert!(matches!(parse_score("Score Result: 11 because"), Err(Error::Parse(_))));
        let p = parse_score("Score Result：9\nReason：good").unwrap();
        assert_eq!(p.score, 9);
        assert_eq!(p.reason, "good");
    }

    #[test]
    fn score_full_width_digits_and_case() {
        let p = parse_score("score result :\n　１０\nREASON:\nok").unwrap();
        assert_eq!(p.score, 10);
    }

    #[test]
    fn score_errors() {
        assert!(parse_score("I give it 8").is_err());
        assert!(parse_score("Score Result:\nexcellent").is_err());
        assert!(parse_score("Score Result:\n0").is_err());
        assert!(parse_score("").is_err());
    }

    #[test]
    fn optimization_examples() {
        let p = parse_optimization("Data Requires Optimization: no\nOptimized Data:\nnull\nReason: fine").unwrap();
        assert!(!p.needs_opt);
        assert_eq!(p.optimized, None);
        let p = parse_optimization(
            "Data Requires Optimization:\nyes\nOptimized Data:\nbetter text\nReason:\nclearer",
        )
        .unwrap();
        assert_eq!(p.optimized.as_deref(), Some("better text"));
        assert_eq!(p.reason, "clearer");
        assert!(parse_optimization("Data Requires Optimization: yes\nOptimized Data:\n\nReason: x").is_err());
        assert!(parse_optimization("Data Requires Optimization: yes").is_err());
        assert!(parse_optimization("Data Requires Optimization: maybe\nOptimized Data: x").is_err());
    }

    #[test]
    fn judgement_examples() {
        assert_eq!(parse_judgement("Evaluation Result:\nWin\nReason:x").unwrap().outcome, JudgeOutcome::Win);
        assert_eq!(parse_judgement("Evaluation Result:\ntie\nReason: y").unwrap().outcome, JudgeOutcome::Tie);
        assert_eq!(parse_judgement("Evaluation Result：LOSE.").unwrap().outcome, JudgeOutcome::Lose);
        assert!(parse_judgement("Evaluation Result:\nDraw").is_err());
        assert!(parse_judgement("Win").is_err());
    }

    #[test]
    fn vote_examples() {
        let v = parse_vote("Best Response:\n3\nWorst Response:\nResponse 1\nReason: r", 5).unwrap();
        assert_eq!(v, ParsedVote { best: 2, worst: 0 });
        assert!(parse_vote("Best Response: 6\nWorst Response: 1", 5).is_err());
        assert!(parse_vote("Best Response: 2\nWorst Response: 2", 5).is_err());
        assert!(parse_vote("Best Response: 2", 5).is_err());
    }

    #[test]
    fn header_inside_reason_does_not_confuse() {
        // a later "Reason" mention only ends the section once
        let p = parse_score("Score Result: 7\nReason: the Score Result is fair").unwrap();
        assert_eq!(p.score, 7);
    }

    proptest! {
        #[test]
        fn parsers_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
            let s = String::from_utf8_lossy(&bytes);
            let _ = parse_score(&s);
            let _ = parse_optimization(&s);
            let _ = parse_judgement(&s);
            let _ = parse_vote(&s, 5);
        }

        #[test]
        fn score_round_trip(score in 1u8..=10, reason in "[a-zA-Z ,]{0,30}") {
            let reply = format!("Score Result:\n{score}\nReason:\n{reason}");
            let p = parse_score(&reply).unwrap();
            prop_assert_eq!(p.score, score);
            prop_assert_eq!(p.reason, reason.trim());
        }
    }
}
