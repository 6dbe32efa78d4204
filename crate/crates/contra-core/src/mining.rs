//! Levelwise Apriori frequent-itemset mining over transactions, class
//! association rules (tuple antecedent -> CONTRA/NOTCONTRA), and category
//! assignment through an ordered pattern-mapping file.
//!
//! Everything here is deterministic: itemsets and rules come out in a
//! canonical (size, lexicographic) order, so identical inputs serialize to
//! identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ContradictionCategory;
use crate::tuples::{Transaction, Tuple, TxLabel};

pub const RULEBASE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum MiningError {
    #[error("no transactions to mine")]
    EmptyCorpus,
    #[error("malformed category mapping: {0}")]
    MalformedMapping(String),
    #[error(
        "rule {{{rule}}} matches both {first} and {second} mapping entries in strict mode"
    )]
    AmbiguousMapping {
        rule: String,
        first: ContradictionCategory,
        second: ContradictionCategory,
    },
    #[error("malformed rule base file: {0}")]
    MalformedRuleBaseFile(String),
    #[error("rule base version {found} unsupported (expected {RULEBASE_VERSION})")]
    VersionMismatch { found: u32 },
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiningParams {
    pub min_support: f64,
    pub min_confidence: f64,
    pub max_antecedent_size: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            min_support: 0.05,
            min_confidence: 0.7,
            max_antecedent_size: 3,
        }
    }
}

impl MiningParams {
    fn validate(&self) {
        assert!(
            self.min_support > 0.0 && self.min_support <= 1.0,
            "min_support must lie in (0,1]"
        );
        assert!(
            self.min_confidence > 0.0 && self.min_confidence <= 1.0,
            "min_confidence must lie in (0,1]"
        );
        assert!(self.max_antecedent_size >= 1, "max_antecedent_size must be >= 1");
    }
}

/// Itemsets are sorted vectors over the item-plus-label string alphabet.
pub type Itemset = Vec<String>;

pub fn label_item(label: TxLabel) -> &'static str {
    label.as_str()
}

fn is_label_item(item: &str) -> bool {
    item == "CONTRA" || item == "NOTCONTRA"
}

/// Transaction as the string set mining operates on: tuple encodings plus
/// the label item.
fn item_set(tx: &Transaction) -> BTreeSet<String> {
    let mut set: BTreeSet<String> = tx.items.iter().map(Tuple::encode).collect();
    set.insert(label_item(tx.label).to_string());
    set
}

fn contains_all(tx: &BTreeSet<String>, itemset: &[String]) -> bool {
    itemset.iter().all(|item| tx.contains(item))
}

/// Levelwise Apriori over the item-plus-label alphabet. Returns every
/// itemset of size at most `max_antecedent_size + 1` with support at least
/// `min_support`, sorted by (size, lexicographic items).
pub fn mine_frequent_itemsets(
    transactions: &[Transaction],
    params: &MiningParams,
) -> Result<Vec<(Itemset, f64)>, MiningError> {
    params.validate();
    if transactions.is_empty() {
        return Err(MiningError::EmptyCorpus);
    }
    let n = transactions.len();
    let tx_sets: Vec<BTreeSet<String>> = transactions.iter().map(item_set).collect();
    let support_of = |itemset: &[String]| -> f64 {
        let count = tx_sets.iter().filter(|tx| contains_all(tx, itemset)).count();
        count as f64 / n as f64
    };
    let max_size = params.max_antecedent_size + 1;

    let alphabet: BTreeSet<&String> = tx_sets.iter().flatten().collect();
    let mut level: Vec<Itemset> = alphabet
        .into_iter()
        .map(|item| vec![item.clone()])
        .collect();
    let mut out: Vec<(Itemset, f64)> = Vec::new();
    let mut size = 1;
    while !level.is_empty() && size <= max_size {
        let mut frequent: Vec<Itemset> = Vec::new();
        for itemset in level {
            let support = support_of(&itemset);
            if support >= params.min_support {
                out.push((itemset.clone(), support));
                frequent.push(itemset);
            }
        }
        if size == max_size {
            break;
        }
        let prev: BTreeSet<&Itemset> = frequent.iter().collect();
        let mut next: Vec<Itemset> = Vec::new();
        for i in 0..frequent.len() {
            for j in i + 1..frequent.len() {
                let a = &frequent[i];
                let b = &frequent[j];
                if a[..size - 1] != b[..size - 1] {
                    continue;
                }
                let mut candidate = a.clone();
                candidate.push(b[size - 1].clone());
                // Downward-closure prune: all size-k subsets must be frequent.
                let prunable = (0..candidate.len()).any(|drop| {
                    let mut subset = candidate.clone();
                    subset.remove(drop);
                    !prev.contains(&subset)
                });
                if !prunable {
                    next.push(candidate);
                }
            }
        }
        level = next;
        size += 1;
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationRule {
    /// Sorted canonical tuple encodings.
    pub antecedent: Vec<String>,
    pub consequent: TxLabelRepr,
    pub support: f64,
    pub confidence: f64,
    pub category: Option<ContradictionCategory>,
}

/// Serialized form of the rule consequent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TxLabelRepr {
    #[serde(rename = "CONTRA")]
    Contra,
    #[serde(rename = "NOTCONTRA")]
    NotContra,
}

impl From<TxLabel> for TxLabelRepr {
    fn from(l: TxLabel) -> Self {
        match l {
            TxLabel::Contra => TxLabelRepr::Contra,
            TxLabel::NotContra => TxLabelRepr::NotContra,
        }
    }
}

impl AssociationRule {
    pub fn is_contra(&self) -> bool {
        self.consequent == TxLabelRepr::Contra
    }

    pub fn antecedent_display(&self) -> String {
        self.antecedent.join(",")
    }

    /// True when every antecedent item occurs in the transaction.
    pub fn fires_on(&self, items: &BTreeSet<String>) -> bool {
        self.antecedent.iter().all(|item| items.contains(item))
    }
}

/// Class association rules from frequent itemsets: one label item becomes
/// the consequent, the rest the antecedent; confidence is the itemset
/// support over the antecedent support. Deterministic order.
pub fn derive_rules(
    frequent: &[(Itemset, f64)],
    params: &MiningParams,
) -> Vec<AssociationRule> {
    let support: BTreeMap<&Itemset, f64> = frequent.iter().map(|(i, s)| (i, *s)).collect();
    let mut rules = Vec::new();
    for (itemset, itemset_support) in frequent {
        let labels: Vec<&String> = itemset.iter().filter(|i| is_label_item(i)).collect();
        if labels.len() != 1 || itemset.len() < 2 {
            continue;
        }
        let label = labels[0].clone();
        let antecedent: Itemset = itemset.iter().filter(|i| !is_label_item(i)).cloned().collect();
        let antecedent_support = *support
            .get(&antecedent)
            .expect("antecedent frequent by downward closure");
        let confidence = itemset_support / antecedent_support;
        if confidence >= params.min_confidence {
            rules.push(AssociationRule {
                antecedent,
                consequent: if label == "CONTRA" {
                    TxLabelRepr::Contra
                } else {
                    TxLabelRepr::NotContra
                },
                support: *itemset_support,
                confidence,
                category: None,
            });
        }
    }
    rules.sort_by(|a, b| {
        a.antecedent
            .len()
            .cmp(&b.antecedent.len())
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    rules
}

impl PartialOrd for TxLabelRepr {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TxLabelRepr {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let rank = |r: &TxLabelRepr| match r {
            TxLabelRepr::Contra => 0,
            TxLabelRepr::NotContra => 1,
        };
        rank(self).cmp(&rank(other))
    }
}

/// One ordered mapping entry: a tuple-kind pattern with optional per-field
/// globs, e.g. `POL(*-NEG,*)` or `DEP(*,NUM,*)` or a bare kind `SENT`.
#[derive(Debug, Clone)]
struct PatternEntry {
    kind: String,
    fields: Option<Vec<String>>,
    category: ContradictionCategory,
}

/// `*` matches any (possibly empty) substring; everything else is literal.
fn glob_match(pattern: &str, text: &str) -> bool {
    let segments: Vec<&str> = pattern.split('*').collect();
    if segments.len() == 1 {
        return pattern == text;
    }
    let mut rest = text;
    for (i, segment) in segments.iter().enumerate() {
        if segment.is_empty() {
            continue;
        }
        if i == 0 {
            match rest.strip_prefix(segment) {
                Some(r) => rest = r,
                None => return false,
            }
        } else if i == segments.len() - 1 {
            return rest.ends_with(segment);
        } else {
            match rest.find(segment) {
                Some(pos) => rest = &rest[pos + segment.len()..],
                None => return false,
            }
        }
    }
    true
}

impl PatternEntry {
    fn matches_item(&self, item: &str) -> bool {
        let Some(open) = item.find('(') else {
            return false;
        };
        if item[..open] != self.kind || !item.ends_with(')') {
            return false;
        }
        match &self.fields {
            None => true,
            Some(globs) => {
                let fields: Vec<&str> = item[open + 1..item.len() - 1].split(',').collect();
                fields.len() == globs.len()
                    && globs.iter().zip(&fields).all(|(g, f)| glob_match(g, f))
            }
        }
    }

    fn matches_rule(&self, rule: &AssociationRule) -> bool {
        rule.antecedent.iter().any(|item| self.matches_item(item))
    }
}

/// Ordered rule-to-category mapping; the first matching entry wins.
#[derive(Debug, Clone)]
pub struct CategoryMapping {
    entries: Vec<PatternEntry>,
}

#[derive(Debug, Deserialize, Serialize)]
struct MappingRecord {
    pattern: String,
    category: String,
}

impl CategoryMapping {
    pub fn parse(content: &str) -> Result<CategoryMapping, MiningError> {
        let records: Vec<MappingRecord> = serde_json::from_str(content)
            .map_err(|e| MiningError::MalformedMapping(e.to_string()))?;
        let mut entries = Vec::new();
        for record in records {
            let category = ContradictionCategory::from_str(&record.category).map_err(|_| {
                MiningError::MalformedMapping(format!("unknown category {:?}", record.category))
            })?;
            let pattern = record.pattern.trim();
            if pattern.is_empty() || pattern.contains(char::is_whitespace) {
                return Err(MiningError::MalformedMapping(format!(
                    "bad pattern {pattern:?}"
                )));
            }
            let (kind, fields) = match pattern.find('(') {
                None => (pattern.to_string(), None),
                Some(open) => {
                    if !pattern.ends_with(')') {
                        return Err(MiningError::MalformedMapping(format!(
                            "unbalanced pattern {pattern:?}"
                        )));
                    }
                    let fields: Vec<String> = pattern[open + 1..pattern.len() - 1]
                        .split(',')
                        .map(str::to_string)
                        .collect();
                    if fields.iter().any(|f| f.is_empty()) {
                        return Err(MiningError::MalformedMapping(format!(
                            "empty field in pattern {pattern:?}"
                        )));
                    }
                    (pattern[..open].to_string(), Some(fields))
                }
            };
            if !matches!(kind.as_str(), "DEP" | "SRLSIM" | "SENT" | "POL") {
                return Err(MiningError::MalformedMapping(format!(
                    "unknown tuple kind {kind:?}"
                )));
            }
            entries.push(PatternEntry {
                kind,
                fields,
                category,
            });
        }
        Ok(CategoryMapping { entries })
    }

    pub fn load(path: &Path) -> Result<CategoryMapping, MiningError> {
        let content = fs::read_to_string(path).map_err(|source| MiningError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&content)
    }

    /// The mapping shipped with the crate, covering the four rule-matched
    /// categories.
    pub fn builtin() -> CategoryMapping {
        Self::parse(include_str!("../resources/category_mapping.json"))
            .expect("builtin mapping is well-formed")
    }

    /// First matching entry in file order. In strict mode, two matching
    /// entries with different categories are an error.
    fn category_for(
        &self,
        rule: &AssociationRule,
        strict: bool,
    ) -> Result<Option<ContradictionCategory>, MiningError> {
        let mut found: Option<ContradictionCategory> = None;
        for entry in &self.entries {
            if !entry.matches_rule(rule) {
                continue;
            }
            match found {
                None => {
                    found = Some(entry.category);
                    if !strict {
                        break;
                    }
                }
                Some(first) if strict && first != entry.category => {
                    return Err(MiningError::AmbiguousMapping {
                        rule: rule.antecedent_display(),
                        first,
                        second: entry.category,
                    });
                }
                Some(_) => {}
            }
        }
        Ok(found)
    }
}

/// Fills in rule categories from the mapping; unmatched rules keep `None`
/// and are ignored by the category matchers.
pub fn assign_categories(
    mut rules: Vec<AssociationRule>,
    mapping: &CategoryMapping,
    strict: bool,
) -> Result<Vec<AssociationRule>, MiningError> {
    for rule in &mut rules {
        rule.category = mapping.category_for(rule, strict)?;
    }
    Ok(rules)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleBase {
    pub version: u32,
    pub params: MiningParams,
    pub provenance: String,
    pub rules: Vec<AssociationRule>,
}

impl RuleBase {
    /// CONTRA rules of one category, the set a matcher applies.
    pub fn contra_rules_of(
        &self,
        category: ContradictionCategory,
    ) -> impl Iterator<Item = &AssociationRule> {
        self.rules
            .iter()
            .filter(move |r| r.is_contra() && r.category == Some(category))
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.version != RULEBASE_VERSION {
            return Err(format!("version {}", self.version));
        }
        let mut seen: BTreeSet<(Vec<String>, TxLabelRepr)> = BTreeSet::new();
        for rule in &self.rules {
            if rule.antecedent.is_empty() {
                return Err("empty antecedent".into());
            }
            if rule.antecedent.len() > self.params.max_antecedent_size {
                return Err(format!(
                    "antecedent {} longer than max {}",
                    rule.antecedent_display(),
                    self.params.max_antecedent_size
                ));
            }
            for item in &rule.antecedent {
                Tuple::decode(item).map_err(|e| e.to_string())?;
            }
            if !(rule.support > 0.0 && rule.support <= 1.0) {
                return Err(format!("support {} outside (0,1]", rule.support));
            }
            if !(rule.confidence > 0.0 && rule.confidence <= 1.0) {
                return Err(format!("confidence {} outside (0,1]", rule.confidence));
            }
            if !seen.insert((rule.antecedent.clone(), rule.consequent)) {
                return Err(format!(
                    "duplicate rule ({} -> {:?})",
                    rule.antecedent_display(),
                    rule.consequent
                ));
            }
        }
        Ok(())
    }
}

/// FNV-1a over the canonical transaction dump; identifies the mined corpus.
pub fn corpus_fingerprint(transactions: &[Transaction]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for tx in transactions {
        for byte in tx.dump_line().bytes().chain(*b"\n") {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    format!("fnv1a:{hash:016x}")
}

/// The full mining pipeline: frequent itemsets, rule derivation, category
/// assignment, provenance fingerprint.
pub fn mine_rulebase(
    transactions: &[Transaction],
    params: &MiningParams,
    mapping: &CategoryMapping,
    strict: bool,
) -> Result<RuleBase, MiningError> {
    let frequent = mine_frequent_itemsets(transactions, params)?;
    let rules = assign_categories(derive_rules(&frequent, params), mapping, strict)?;
    Ok(RuleBase {
        version: RULEBASE_VERSION,
        params: *params,
        provenance: corpus_fingerprint(transactions),
        rules,
    })
}

pub fn rulebase_to_json(rb: &RuleBase) -> String {
    let mut s = serde_json::to_string_pretty(rb).expect("rule base serializes");
    s.push('\n');
    s
}

pub fn save_rulebase(rb: &RuleBase, path: &Path) -> Result<(), MiningError> {
    fs::write(path, rulebase_to_json(rb)).map_err(|source| MiningError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_rulebase(path: &Path) -> Result<RuleBase, MiningError> {
    let content = fs::read_to_string(path).map_err(|source| MiningError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let rb: RuleBase = serde_json::from_str(&content)
        .map_err(|e| MiningError::MalformedRuleBaseFile(e.to_string()))?;
    if rb.version != RULEBASE_VERSION {
        return Err(MiningError::VersionMismatch { found: rb.version });
    }
    rb.validate().map_err(MiningError::MalformedRuleBaseFile)?;
    Ok(rb)
}
