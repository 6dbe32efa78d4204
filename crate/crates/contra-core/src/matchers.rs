//! Detection front end: per-category rule matching, the surface-cue category
//! classifier, and the three test modes (gold category, classified category,
//! all-matchers voting) with the feature scorer as the OTHERS fallback.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baseline::{score_pair, BaselineModel};
use crate::corpus::{ContradictionCategory, PosTag, SentencePair, TokenPolarity};
use crate::features::{cosine_of_bags, extract_feature_vector, is_negative_marker_token, role_bags};
use crate::lexicons::Lexicons;
use crate::mining::{AssociationRule, RuleBase};
use crate::tuples::{extract_transaction, Transaction, Tuple};

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("pair {pair_id} has no gold category (required by gold-category mode)")]
    MissingGoldCategory { pair_id: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinaryLabel {
    #[serde(rename = "CONTRADICTION")]
    Contradiction,
    #[serde(rename = "NOT_CONTRADICTION")]
    NotContradiction,
}

impl BinaryLabel {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, BinaryLabel::Contradiction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectionMode {
    #[serde(rename = "gold")]
    GoldCategory,
    #[serde(rename = "classify")]
    Classified,
    #[serde(rename = "vote")]
    Voting,
}

impl DetectionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetectionMode::GoldCategory => "gold",
            DetectionMode::Classified => "classify",
            DetectionMode::Voting => "vote",
        }
    }
}

impl fmt::Display for DetectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gold" => Ok(DetectionMode::GoldCategory),
            "classify" => Ok(DetectionMode::Classified),
            "vote" => Ok(DetectionMode::Voting),
            _ => Err(format!("unknown mode {s:?} (expected gold|classify|vote)")),
        }
    }
}

/// Per-pair decision with the evidence that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pair_id: String,
    pub label: BinaryLabel,
    pub category: Option<ContradictionCategory>,
    pub fired_rules: Vec<AssociationRule>,
    pub baseline_score: Option<f64>,
    pub mode: DetectionMode,
}

impl Verdict {
    /// JSONL dump record.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            id: &'a str,
            label: BinaryLabel,
            category: Option<ContradictionCategory>,
            fired: Vec<String>,
            baseline_score: Option<f64>,
            mode: DetectionMode,
        }
        serde_json::to_string(&Line {
            id: &self.pair_id,
            label: self.label,
            category: self.category,
            fired: self
                .fired_rules
                .iter()
                .map(AssociationRule::antecedent_display)
                .collect(),
            baseline_score: self.baseline_score,
            mode: self.mode,
        })
        .expect("verdict serializes")
    }
}

/// All CONTRA rules of the category whose antecedent is contained in the
/// transaction's item set.
pub fn match_category(
    rb: &RuleBase,
    category: ContradictionCategory,
    tx: &Transaction,
) -> Vec<AssociationRule> {
    let items: BTreeSet<String> = tx.items.iter().map(Tuple::encode).collect();
    rb.contra_rules_of(category)
        .filter(|rule| rule.fires_on(&items))
        .cloned()
        .collect()
}

/// Surface-cue category classifier for inputs without a gold category.
/// Cues are checked in the fixed priority order; the first hit wins.
pub fn classify_category(pair: &SentencePair, lexicons: &Lexicons) -> ContradictionCategory {
    if negation_cue(pair, lexicons) {
        ContradictionCategory::Negation
    } else if numeric_cue(pair) {
        ContradictionCategory::Numeric
    } else if antonym_cue(pair, lexicons) {
        ContradictionCategory::Antonym
    } else if structural_cue(pair, lexicons) {
        ContradictionCategory::Structural
    } else {
        ContradictionCategory::Others
    }
}

/// A shared verb lemma with differing token polarity, or a negative marker
/// in exactly one sentence.
fn negation_cue(pair: &SentencePair, lexicons: &Lexicons) -> bool {
    for t1 in &pair.premise.tokens {
        if t1.pos != PosTag::V {
            continue;
        }
        for t2 in &pair.hypothesis.tokens {
            if t2.pos == PosTag::V && t2.lemma == t1.lemma {
                let n1 = t1.polarity == TokenPolarity::Neg;
                let n2 = t2.polarity == TokenPolarity::Neg;
                if n1 != n2 {
                    return true;
                }
            }
        }
    }
    let has_marker = |s: &crate::corpus::AnnotatedSentence| {
        (1..=s.tokens.len()).any(|i| is_negative_marker_token(s, i, &lexicons.markers))
    };
    has_marker(&pair.premise) != has_marker(&pair.hypothesis)
}

fn numeric_cue(pair: &SentencePair) -> bool {
    let has_num =
        |s: &crate::corpus::AnnotatedSentence| s.tokens.iter().any(|t| t.pos == PosTag::NUM);
    has_num(&pair.premise) && has_num(&pair.hypothesis)
}

fn antonym_cue(pair: &SentencePair, lexicons: &Lexicons) -> bool {
    pair.premise.tokens.iter().any(|t1| {
        pair.hypothesis
            .tokens
            .iter()
            .any(|t2| lexicons.antonyms.are_antonyms(&t1.lemma, &t2.lemma))
    })
}

/// Frames on both sides with a high-similarity argument pair under
/// different roles.
fn structural_cue(pair: &SentencePair, lexicons: &Lexicons) -> bool {
    if pair.premise.srl.is_empty() || pair.hypothesis.srl.is_empty() {
        return false;
    }
    let p = role_bags(&pair.premise, &lexicons.markers);
    let h = role_bags(&pair.hypothesis, &lexicons.markers);
    for (role_p, bag_p) in &p {
        for (role_h, bag_h) in &h {
            if role_p != role_h && cosine_of_bags(bag_p, bag_h) >= 0.6 {
                return true;
            }
        }
    }
    false
}

/// One category's decision: mined rules for the four pattern categories,
/// the feature scorer for OTHERS.
fn run_category(
    pair: &SentencePair,
    category: ContradictionCategory,
    rb: &RuleBase,
    model: &BaselineModel,
    lexicons: &Lexicons,
    tx: &Transaction,
) -> (BinaryLabel, Vec<AssociationRule>, Option<f64>) {
    if category == ContradictionCategory::Others {
        let score = score_pair(model, &extract_feature_vector(pair, lexicons));
        let label = if score >= model.threshold {
            BinaryLabel::Contradiction
        } else {
            BinaryLabel::NotContradiction
        };
        (label, Vec::new(), Some(score))
    } else {
        let fired = match_category(rb, category, tx);
        let label = if fired.is_empty() {
            BinaryLabel::NotContradiction
        } else {
            BinaryLabel::Contradiction
        };
        (label, fired, None)
    }
}

/// Category priority for reporting a voting result.
const VOTING_PRIORITY: [ContradictionCategory; 5] = [
    ContradictionCategory::Negation,
    ContradictionCategory::Numeric,
    ContradictionCategory::Antonym,
    ContradictionCategory::Structural,
    ContradictionCategory::Others,
];

/// Applies the selected test mode to one pair.
///
/// Gold-category mode requires the pair to carry its category; use
/// [`detect_lenient`] for corpora that mix in unlabeled pairs.
pub fn detect(
    pair: &SentencePair,
    rb: &RuleBase,
    model: &BaselineModel,
    lexicons: &Lexicons,
    mode: DetectionMode,
) -> Result<Verdict, MatchError> {
    let tx = extract_transaction(pair, lexicons);
    match mode {
        DetectionMode::GoldCategory => {
            let category = pair.category.ok_or(MatchError::MissingGoldCategory {
                pair_id: pair.id.clone(),
            })?;
            let (label, fired, score) = run_category(pair, category, rb, model, lexicons, &tx);
            Ok(Verdict {
                pair_id: pair.id.clone(),
                label,
                category: Some(category),
                fired_rules: fired,
                baseline_score: score,
                mode,
            })
        }
        DetectionMode::Classified => {
            let category = classify_category(pair, lexicons);
            let (label, fired, score) = run_category(pair, category, rb, model, lexicons, &tx);
            Ok(Verdict {
                pair_id: pair.id.clone(),
                label,
                category: Some(category),
                fired_rules: fired,
                baseline_score: score,
                mode,
            })
        }
        DetectionMode::Voting => {
            let mut fired_all = Vec::new();
            let mut reported = None;
            let mut baseline_score = None;
            for category in VOTING_PRIORITY {
                let (label, fired, score) =
                    run_category(pair, category, rb, model, lexicons, &tx);
                if let Some(s) = score {
                    baseline_score = Some(s);
                }
                if label.is_contradiction() && reported.is_none() {
                    reported = Some(category);
                }
                fired_all.extend(fired);
            }
            Ok(Verdict {
                pair_id: pair.id.clone(),
                label: if reported.is_some() {
                    BinaryLabel::Contradiction
                } else {
                    BinaryLabel::NotContradiction
                },
                category: reported,
                fired_rules: fired_all,
                baseline_score,
                mode,
            })
        }
    }
}

/// Like [`detect`], but in gold-category mode a pair without a gold category
/// is routed through voting instead of failing, so whole corpora (including
/// non-contradiction pairs) can be processed.
pub fn detect_lenient(
    pair: &SentencePair,
    rb: &RuleBase,
    model: &BaselineModel,
    lexicons: &Lexicons,
    mode: DetectionMode,
) -> Verdict {
    let effective = match mode {
        DetectionMode::GoldCategory if pair.category.is_none() => DetectionMode::Voting,
        other => other,
    };
    let mut verdict =
        detect(pair, rb, model, lexicons, effective).expect("category present or mode lenient");
    verdict.mode = mode;
    verdict
}
