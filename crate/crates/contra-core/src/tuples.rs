//! Generalized pair-level items for rule mining: dependency tuples,
//! SRL-similarity tuples, the sentiment-pair tuple, and verb/marker
//! polarity tuples, bundled with the binary label into a [`Transaction`].
//!
//! Canonical string encodings form the mining item alphabet and must stay
//! stable: `DEP(rel,slot1,slot2)`, `SRLSIM(role1,role2,B0|B1|B2)`,
//! `SENT(POS|NEG|NEU,POS|NEG|NEU)`, `POL(V1-POS,Q1-NEG)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{AnnotatedSentence, PosTag, SentencePair, TokenPolarity};
use crate::features::{
    content_lemmas, cosine_of_bags, governing_verb, is_negative_marker_token, main_verb,
    role_bags, sentence_sentiment_score,
};
use crate::lexicons::Lexicons;

#[derive(Debug, Error)]
pub enum TupleError {
    #[error("similarity {0} outside [0,1]")]
    OutOfRange(f64),
    #[error("cannot decode tuple {input:?}: {reason}")]
    Decode { input: String, reason: String },
}

/// Cosine similarity discretized into three intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimilarityBin {
    /// [0.0, 0.3)
    B0,
    /// [0.3, 0.6)
    B1,
    /// [0.6, 1.0]
    B2,
}

impl SimilarityBin {
    pub fn as_str(&self) -> &'static str {
        match self {
            SimilarityBin::B0 => "B0",
            SimilarityBin::B1 => "B1",
            SimilarityBin::B2 => "B2",
        }
    }
}

impl fmt::Display for SimilarityBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Buckets a similarity value. Intervals are right-open except the top one.
pub fn bin_similarity(x: f64) -> Result<SimilarityBin, TupleError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(TupleError::OutOfRange(x));
    }
    Ok(if x < 0.3 {
        SimilarityBin::B0
    } else if x < 0.6 {
        SimilarityBin::B1
    } else {
        SimilarityBin::B2
    })
}

/// An endpoint of a kept dependency arc, generalized for mining.
///
/// Precedence per endpoint: cross-sentence common lemma, then antonym-pair
/// side, then the NUM tag, then the plain POS tag. Indices are assigned in
/// first-occurrence order over the pair so the same lemma shares its index
/// across both sentences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Common(u32),
    Ant(u32),
    Num,
    Pos(PosTag),
}

impl Slot {
    fn pos(tag: PosTag) -> Slot {
        if tag == PosTag::NUM {
            Slot::Num
        } else {
            Slot::Pos(tag)
        }
    }

    pub fn is_special(&self) -> bool {
        !matches!(self, Slot::Pos(_))
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Common(k) => write!(f, "COMMON{k}"),
            Slot::Ant(k) => write!(f, "ANT{k}"),
            Slot::Num => f.write_str("NUM"),
            Slot::Pos(tag) => f.write_str(tag.as_str()),
        }
    }
}

impl FromStr for Slot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let index = |rest: &str| -> Result<u32, String> {
            rest.parse::<u32>()
                .map_err(|_| format!("bad slot index in {s:?}"))
        };
        if let Some(rest) = s.strip_prefix("COMMON") {
            return Ok(Slot::Common(index(rest)?));
        }
        if let Some(rest) = s.strip_prefix("ANT") {
            return Ok(Slot::Ant(index(rest)?));
        }
        if s == "NUM" {
            return Ok(Slot::Num);
        }
        PosTag::from_str(s)
            .map(Slot::pos)
            .map_err(|_| format!("unknown slot {s:?}"))
    }
}

/// Who carries a polarity in a POL tuple: the verb, a negative quantifier,
/// or a negative adverb of sentence 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolOwner {
    V1,
    V2,
    Q1,
    Q2,
    Adv1,
    Adv2,
}

impl PolOwner {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolOwner::V1 => "V1",
            PolOwner::V2 => "V2",
            PolOwner::Q1 => "Q1",
            PolOwner::Q2 => "Q2",
            PolOwner::Adv1 => "ADV1",
            PolOwner::Adv2 => "ADV2",
        }
    }
}

impl FromStr for PolOwner {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "V1" => Ok(PolOwner::V1),
            "V2" => Ok(PolOwner::V2),
            "Q1" => Ok(PolOwner::Q1),
            "Q2" => Ok(PolOwner::Q2),
            "ADV1" => Ok(PolOwner::Adv1),
            "ADV2" => Ok(PolOwner::Adv2),
            _ => Err(format!("unknown polarity owner {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolSign {
    Pos,
    Neg,
}

impl PolSign {
    fn of_token(polarity: TokenPolarity) -> PolSign {
        if polarity == TokenPolarity::Neg {
            PolSign::Neg
        } else {
            PolSign::Pos
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PolSign::Pos => "POS",
            PolSign::Neg => "NEG",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentSign {
    Pos,
    Neg,
    Neu,
}

impl SentSign {
    fn of_score(score: f64) -> SentSign {
        if score > 0.0 {
            SentSign::Pos
        } else if score < 0.0 {
            SentSign::Neg
        } else {
            SentSign::Neu
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SentSign::Pos => "POS",
            SentSign::Neg => "NEG",
            SentSign::Neu => "NEU",
        }
    }
}

impl FromStr for SentSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "POS" => Ok(SentSign::Pos),
            "NEG" => Ok(SentSign::Neg),
            "NEU" => Ok(SentSign::Neu),
            _ => Err(format!("unknown sentiment sign {s:?}")),
        }
    }
}

/// One generalized item of a transaction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tuple {
    Dep {
        rel: String,
        slot1: Slot,
        slot2: Slot,
    },
    SrlSim {
        role1: String,
        role2: String,
        bin: SimilarityBin,
    },
    Sent(SentSign, SentSign),
    Pol {
        left: (PolOwner, PolSign),
        right: (PolOwner, PolSign),
    },
}

impl Tuple {
    /// Canonical encoding; the inverse of [`Tuple::decode`].
    pub fn encode(&self) -> String {
        match self {
            Tuple::Dep { rel, slot1, slot2 } => format!("DEP({rel},{slot1},{slot2})"),
            Tuple::SrlSim { role1, role2, bin } => format!("SRLSIM({role1},{role2},{bin})"),
            Tuple::Sent(a, b) => format!("SENT({},{})", a.as_str(), b.as_str()),
            Tuple::Pol { left, right } => format!(
                "POL({}-{},{}-{})",
                left.0.as_str(),
                left.1.as_str(),
                right.0.as_str(),
                right.1.as_str()
            ),
        }
    }

    pub fn decode(input: &str) -> Result<Tuple, TupleError> {
        let err = |reason: &str| TupleError::Decode {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let open = input.find('(').ok_or_else(|| err("missing '('"))?;
        if !input.ends_with(')') {
            return Err(err("missing ')'"));
        }
        let kind = &input[..open];
        let inner = &input[open + 1..input.len() - 1];
        if inner.contains(['(', ')', ' ', '\t']) {
            return Err(err("reserved character inside fields"));
        }
        let fields: Vec<&str> = inner.split(',').collect();
        let field_ok = |f: &str| !f.is_empty();
        match kind {
            "DEP" => {
                let [rel, s1, s2] = fields.as_slice() else {
                    return Err(err("DEP takes three fields"));
                };
                if !field_ok(rel) {
                    return Err(err("empty relation"));
                }
                Ok(Tuple::Dep {
                    rel: rel.to_string(),
                    slot1: Slot::from_str(s1).map_err(|e| err(&e))?,
                    slot2: Slot::from_str(s2).map_err(|e| err(&e))?,
                })
            }
            "SRLSIM" => {
                let [r1, r2, b] = fields.as_slice() else {
                    return Err(err("SRLSIM takes three fields"));
                };
                if !field_ok(r1) || !field_ok(r2) {
                    return Err(err("empty role"));
                }
                let bin = match *b {
                    "B0" => SimilarityBin::B0,
                    "B1" => SimilarityBin::B1,
                    "B2" => SimilarityBin::B2,
                    _ => return Err(err("unknown similarity bin")),
                };
                Ok(Tuple::SrlSim {
                    role1: r1.to_string(),
                    role2: r2.to_string(),
                    bin,
                })
            }
            "SENT" => {
                let [a, b] = fields.as_slice() else {
                    return Err(err("SENT takes two fields"));
                };
                Ok(Tuple::Sent(
                    SentSign::from_str(a).map_err(|e| err(&e))?,
                    SentSign::from_str(b).map_err(|e| err(&e))?,
                ))
            }
            "POL" => {
                let [l, r] = fields.as_slice() else {
                    return Err(err("POL takes two fields"));
                };
                let parse_side = |side: &str| -> Result<(PolOwner, PolSign), TupleError> {
                    let (owner, sign) = side.rsplit_once('-').ok_or_else(|| err("missing '-'"))?;
                    let owner = PolOwner::from_str(owner).map_err(|e| err(&e))?;
                    let sign = match sign {
                        "POS" => PolSign::Pos,
                        "NEG" => PolSign::Neg,
                        _ => return Err(err("unknown polarity sign")),
                    };
                    Ok((owner, sign))
                };
                Ok(Tuple::Pol {
                    left: parse_side(l)?,
                    right: parse_side(r)?,
                })
            }
            _ => Err(err("unknown tuple kind")),
        }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// Binary label a transaction carries into mining.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TxLabel {
    Contra,
    NotContra,
}

impl TxLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TxLabel::Contra => "CONTRA",
            TxLabel::NotContra => "NOTCONTRA",
        }
    }
}

impl FromStr for TxLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CONTRA" => Ok(TxLabel::Contra),
            "NOTCONTRA" => Ok(TxLabel::NotContra),
            _ => Err(format!("unknown label {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transaction {
    pub pair_id: String,
    pub label: TxLabel,
    pub items: BTreeSet<Tuple>,
}

impl Transaction {
    /// Sorted canonical item encodings.
    pub fn encoded_items(&self) -> Vec<String> {
        let mut items: Vec<String> = self.items.iter().map(Tuple::encode).collect();
        items.sort();
        items
    }

    /// Interchange/debug line: `pair_id<TAB>label<TAB>item1,item2,…`.
    pub fn dump_line(&self) -> String {
        format!(
            "{}\t{}\t{}",
            self.pair_id,
            self.label.as_str(),
            self.encoded_items().join(",")
        )
    }
}

/// Slot assignment for both sentences of a pair.
struct SlotMap {
    common: BTreeMap<String, u32>,
    ant: BTreeMap<String, u32>,
}

impl SlotMap {
    fn build(pair: &SentencePair, lexicons: &Lexicons) -> SlotMap {
        let c1: BTreeSet<&str> = content_lemmas(&pair.premise, &lexicons.markers)
            .into_iter()
            .collect();
        let c2: BTreeSet<&str> = content_lemmas(&pair.hypothesis, &lexicons.markers)
            .into_iter()
            .collect();
        let common_set: BTreeSet<&str> = c1.intersection(&c2).copied().collect();

        let mut map = SlotMap {
            common: BTreeMap::new(),
            ant: BTreeMap::new(),
        };
        let mut next_common = 1u32;
        let mut next_ant = 1u32;
        let sentences = [(&pair.premise, &c2), (&pair.hypothesis, &c1)];
        for (sentence, other_lemmas) in sentences {
            for tok in &sentence.tokens {
                let lemma = tok.lemma.as_str();
                if common_set.contains(lemma) {
                    if !map.common.contains_key(lemma) {
                        map.common.insert(lemma.to_string(), next_common);
                        next_common += 1;
                    }
                } else if lexicons
                    .antonyms
                    .has_antonym_in(lemma, other_lemmas.iter().copied())
                    && !map.ant.contains_key(lemma)
                {
                    map.ant.insert(lemma.to_string(), next_ant);
                    next_ant += 1;
                }
            }
        }
        map
    }

    fn slot(&self, lemma: &str, pos: PosTag) -> Slot {
        if let Some(&k) = self.common.get(lemma) {
            Slot::Common(k)
        } else if let Some(&k) = self.ant.get(lemma) {
            Slot::Ant(k)
        } else {
            Slot::pos(pos)
        }
    }
}

/// Dependency arcs kept for mining: arcs with at least one common-word,
/// antonym-side, or numeral endpoint, endpoints generalized to slots.
/// Arc direction is (dependent, head).
pub fn extract_dep_tuples(pair: &SentencePair, lexicons: &Lexicons) -> BTreeSet<Tuple> {
    let slots = SlotMap::build(pair, lexicons);
    let mut out = BTreeSet::new();
    for sentence in [&pair.premise, &pair.hypothesis] {
        for tok in &sentence.tokens {
            if tok.head == 0 {
                continue;
            }
            let head = sentence.token(tok.head);
            let slot1 = slots.slot(&tok.lemma, tok.pos);
            let slot2 = slots.slot(&head.lemma, head.pos);
            if slot1.is_special() || slot2.is_special() {
                out.insert(Tuple::Dep {
                    rel: tok.deprel.clone(),
                    slot1,
                    slot2,
                });
            }
        }
    }
    out
}

/// Cross-sentence SRL argument similarity tuples. Roles are stored in fixed
/// (lexicographic) order so both directions collapse onto one tuple.
pub fn extract_srl_tuples(pair: &SentencePair, lexicons: &Lexicons) -> BTreeSet<Tuple> {
    let p = role_bags(&pair.premise, &lexicons.markers);
    let h = role_bags(&pair.hypothesis, &lexicons.markers);
    let mut out = BTreeSet::new();
    for (role_p, bag_p) in &p {
        for (role_h, bag_h) in &h {
            let sim = cosine_of_bags(bag_p, bag_h).clamp(0.0, 1.0);
            let bin = bin_similarity(sim).expect("clamped similarity");
            let (role1, role2) = if role_p <= role_h {
                (*role_p, *role_h)
            } else {
                (*role_h, *role_p)
            };
            out.insert(Tuple::SrlSim {
                role1: role1.to_string(),
                role2: role2.to_string(),
                bin,
            });
        }
    }
    out
}

/// The (sentiment1, sentiment2) tuple, using the same sentence scorer as the
/// sentiment-disagreement feature.
pub fn extract_sentiment_tuple(pair: &SentencePair, lexicons: &Lexicons) -> Tuple {
    let s1 = sentence_sentiment_score(&pair.premise, &lexicons.polarity, &lexicons.markers);
    let s2 = sentence_sentiment_score(&pair.hypothesis, &lexicons.polarity, &lexicons.markers);
    Tuple::Sent(SentSign::of_score(s1), SentSign::of_score(s2))
}

/// Verb polarity tuples for cross-sentence verbs sharing a lemma, plus
/// verb/marker tuples for negative quantifiers and adverbs co-occurring with
/// a sentence's verb.
pub fn extract_polarity_tuples(pair: &SentencePair, lexicons: &Lexicons) -> BTreeSet<Tuple> {
    let mut out = BTreeSet::new();
    for t1 in &pair.premise.tokens {
        if t1.pos != PosTag::V {
            continue;
        }
        for t2 in &pair.hypothesis.tokens {
            if t2.pos == PosTag::V && t2.lemma == t1.lemma {
                out.insert(Tuple::Pol {
                    left: (PolOwner::V1, PolSign::of_token(t1.polarity)),
                    right: (PolOwner::V2, PolSign::of_token(t2.polarity)),
                });
            }
        }
    }

    let sides: [(&AnnotatedSentence, PolOwner, PolOwner, PolOwner); 2] = [
        (&pair.premise, PolOwner::V1, PolOwner::Q1, PolOwner::Adv1),
        (&pair.hypothesis, PolOwner::V2, PolOwner::Q2, PolOwner::Adv2),
    ];
    for (sentence, verb_owner, quant_owner, adv_owner) in sides {
        for (i, tok) in sentence.tokens.iter().enumerate() {
            if !is_negative_marker_token(sentence, i + 1, &lexicons.markers) {
                continue;
            }
            let Some(verb) = governing_verb(sentence, i + 1).or_else(|| main_verb(sentence)) else {
                continue;
            };
            let verb_sign = PolSign::of_token(sentence.token(verb).polarity);
            let owner = if tok.pos == PosTag::QUANT {
                quant_owner
            } else {
                adv_owner
            };
            out.insert(Tuple::Pol {
                left: (verb_owner, verb_sign),
                right: (owner, PolSign::Neg),
            });
        }
    }
    out
}

/// Runs all four extractors and attaches the binary label.
pub fn extract_transaction(pair: &SentencePair, lexicons: &Lexicons) -> Transaction {
    let mut items = extract_dep_tuples(pair, lexicons);
    items.extend(extract_srl_tuples(pair, lexicons));
    items.insert(extract_sentiment_tuple(pair, lexicons));
    items.extend(extract_polarity_tuples(pair, lexicons));
    Transaction {
        pair_id: pair.id.clone(),
        label: if pair.gold.is_contradiction() {
            TxLabel::Contra
        } else {
            TxLabel::NotContra
        },
        items,
    }
}
