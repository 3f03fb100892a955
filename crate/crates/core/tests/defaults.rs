//! Published parameter values that the defaults must reproduce.

use dpf_core::llm::{render, TemplateId};
use dpf_core::pipeline::PipelineConfig;
use dpf_core::ppvd::{DEFAULT_MATCH_THRESHOLD, DEFAULT_SCAN_THRESHOLD};
use dpf_core::pref::{DEFAULT_CANDIDATES, DEFAULT_CUT, DEFAULT_N_SFT, DEFAULT_N_SUPPLEMENTARY};
use dpf_core::sft::{within_length_band, LENGTH_BAND};

#[test]
fn preference_defaults() {
    assert_eq!((DEFAULT_N_SFT, DEFAULT_N_SUPPLEMENTARY), (4000, 2000));
    assert_eq!(DEFAULT_CANDIDATES, 5);
    assert_eq!(DEFAULT_CUT, 0.10);
    let cfg = PipelineConfig::default();
    assert_eq!((cfg.preference.low, cfg.preference.high), (0.10, 0.10));
    assert!(!cfg.preference.drop_negative);
}

#[test]
fn ppvd_defaults() {
    assert_eq!(DEFAULT_SCAN_THRESHOLD, 0.85);
    assert_eq!(DEFAULT_MATCH_THRESHOLD, 0.8);
    let cfg = PipelineConfig::default();
    assert_eq!(cfg.ppvd.scan_threshold, 0.85);
    assert_eq!(cfg.ppvd.match_threshold, 0.8);
}

#[test]
fn rewrite_band_is_thirty_percent() {
    assert_eq!(LENGTH_BAND, (0.7, 1.3));
    let original = "one two three four five six seven eight nine ten";
    let longer = format!("{original} eleven twelve");
    assert!(within_length_band(original, &longer));
    let doubled = format!("{original} {original}");
    assert!(!within_length_band(original, &doubled));
}

#[test]
fn select_prompt_asks_for_ten_point_score() {
    let slots = [("question".to_string(), "q".to_string()), ("answer".to_string(), "a".to_string())].into_iter().collect();
    let text = render(TemplateId::SftSelect, &slots).unwrap();
    assert!(text.contains("provide a score from 1 to 10"));
    assert_eq!(PipelineConfig::default().select.threshold, 9);
}
