//! Data model for annotated sentence pairs: ingestion, validation,
//! deterministic splits, and JSONL round-tripping.
//!
//! The engine consumes annotations (POS, lemma, polarity, NER, dependency
//! arcs, SRL frames) produced by external tools; nothing here runs a tagger
//! or parser. One JSON object per line, UTF-8, NFC-normalized on load.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

/// Coarse part-of-speech inventory. Richer tagsets must be projected onto
/// this one by the ingester.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PosTag {
    V,
    #[serde(rename = "N-SING-COM")]
    NSingCom,
    #[serde(rename = "N-PLUR")]
    NPlur,
    ADJ,
    ADV,
    NUM,
    QUANT,
    PRO,
    PREP,
    CONJ,
    PUNC,
    O,
}

impl PosTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::V => "V",
            PosTag::NSingCom => "N-SING-COM",
            PosTag::NPlur => "N-PLUR",
            PosTag::ADJ => "ADJ",
            PosTag::ADV => "ADV",
            PosTag::NUM => "NUM",
            PosTag::QUANT => "QUANT",
            PosTag::PRO => "PRO",
            PosTag::PREP => "PREP",
            PosTag::CONJ => "CONJ",
            PosTag::PUNC => "PUNC",
            PosTag::O => "O",
        }
    }
}

impl FromStr for PosTag {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "V" => Ok(PosTag::V),
            "N-SING-COM" => Ok(PosTag::NSingCom),
            "N-PLUR" => Ok(PosTag::NPlur),
            "ADJ" => Ok(PosTag::ADJ),
            "ADV" => Ok(PosTag::ADV),
            "NUM" => Ok(PosTag::NUM),
            "QUANT" => Ok(PosTag::QUANT),
            "PRO" => Ok(PosTag::PRO),
            "PREP" => Ok(PosTag::PREP),
            "CONJ" => Ok(PosTag::CONJ),
            "PUNC" => Ok(PosTag::PUNC),
            "O" => Ok(PosTag::O),
            _ => Err(()),
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verb/quantifier/adverb polarity carried on the token itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum TokenPolarity {
    #[serde(rename = "POS")]
    Pos,
    #[serde(rename = "NEG")]
    Neg,
    #[serde(rename = "NONE")]
    #[default]
    None,
}

/// Named-entity tag set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NerTag {
    PER,
    LOC,
    ORG,
    DAT,
    TIM,
    NUM,
    O,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    pub pos: PosTag,
    #[serde(default)]
    pub polarity: TokenPolarity,
    pub ner: NerTag,
    /// Head token index, 1-based; 0 means the token is the root.
    pub head: usize,
    pub deprel: String,
}

/// One predicate-argument frame. Spans are 1-based and inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrlFrame {
    pub predicate: usize,
    pub args: Vec<SrlArg>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrlArg {
    pub role: String,
    pub span: [usize; 2],
}

/// Characters with structural meaning in tuple encodings and dump lines;
/// deprel and role strings must avoid them.
pub(crate) const RESERVED_CHARS: [char; 5] = [',', '(', ')', ' ', '\t'];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub text: String,
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub srl: Vec<SrlFrame>,
}

impl AnnotatedSentence {
    /// Token at a 1-based index.
    pub fn token(&self, idx: usize) -> &Token {
        &self.tokens[idx - 1]
    }

    /// Checks every structural invariant; returns the first violation.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.tokens.len();
        if n == 0 {
            return Err("sentence has no tokens".into());
        }
        let mut roots = 0;
        for (i, tok) in self.tokens.iter().enumerate() {
            let idx = i + 1;
            if tok.head > n {
                return Err(format!("token {idx}: head out of range ({} > {n})", tok.head));
            }
            if tok.head == idx {
                return Err(format!("token {idx}: head points at itself"));
            }
            if tok.head == 0 {
                roots += 1;
            }
            if tok.polarity == TokenPolarity::Neg
                && !matches!(tok.pos, PosTag::V | PosTag::QUANT | PosTag::ADV)
            {
                return Err(format!(
                    "token {idx}: NEG polarity on pos {} (only V, QUANT, ADV may be negative)",
                    tok.pos
                ));
            }
            if tok.deprel.is_empty() || tok.deprel.contains(RESERVED_CHARS) {
                return Err(format!(
                    "token {idx}: deprel {:?} is empty or contains a reserved character",
                    tok.deprel
                ));
            }
        }
        if roots != 1 {
            return Err(format!("expected exactly one root token, found {roots}"));
        }
        // Root reachability rules out cycles among non-root arcs.
        for i in 1..=n {
            let mut cur = i;
            let mut steps = 0;
            while cur != 0 {
                cur = self.tokens[cur - 1].head;
                steps += 1;
                if steps > n {
                    return Err(format!("token {i}: dependency arcs form a cycle"));
                }
            }
        }
        for (fi, frame) in self.srl.iter().enumerate() {
            if frame.predicate == 0 || frame.predicate > n {
                return Err(format!("srl frame {fi}: predicate index out of range"));
            }
            let mut roles = BTreeSet::new();
            for arg in &frame.args {
                let [start, end] = arg.span;
                if start == 0 || end < start || end > n {
                    return Err(format!(
                        "srl frame {fi}: span [{start},{end}] out of bounds for role {}",
                        arg.role
                    ));
                }
                if arg.role.is_empty() || arg.role.contains(RESERVED_CHARS) {
                    return Err(format!(
                        "srl frame {fi}: role {:?} is empty or contains a reserved character",
                        arg.role
                    ));
                }
                if !roles.insert(arg.role.as_str()) {
                    return Err(format!("srl frame {fi}: duplicate role {}", arg.role));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoldLabel {
    Contradiction,
    Entailment,
    Neutral,
}

impl GoldLabel {
    /// Mining and scoring only care about contradiction vs everything else.
    pub fn is_contradiction(&self) -> bool {
        matches!(self, GoldLabel::Contradiction)
    }
}

/// Contradiction type labels. Factive, lexical, and world-knowledge cases
/// are merged into `Others`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ContradictionCategory {
    Negation,
    Numeric,
    Antonym,
    Structural,
    Others,
}

impl ContradictionCategory {
    pub const ALL: [ContradictionCategory; 5] = [
        ContradictionCategory::Negation,
        ContradictionCategory::Numeric,
        ContradictionCategory::Antonym,
        ContradictionCategory::Structural,
        ContradictionCategory::Others,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ContradictionCategory::Negation => "NEGATION",
            ContradictionCategory::Numeric => "NUMERIC",
            ContradictionCategory::Antonym => "ANTONYM",
            ContradictionCategory::Structural => "STRUCTURAL",
            ContradictionCategory::Others => "OTHERS",
        }
    }
}

impl fmt::Display for ContradictionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ContradictionCategory {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NEGATION" => Ok(ContradictionCategory::Negation),
            "NUMERIC" => Ok(ContradictionCategory::Numeric),
            "ANTONYM" => Ok(ContradictionCategory::Antonym),
            "STRUCTURAL" => Ok(ContradictionCategory::Structural),
            "OTHERS" => Ok(ContradictionCategory::Others),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentencePair {
    pub id: String,
    pub premise: AnnotatedSentence,
    pub hypothesis: AnnotatedSentence,
    #[serde(rename = "gold_label")]
    pub gold: GoldLabel,
    #[serde(default)]
    pub category: Option<ContradictionCategory>,
}

impl SentencePair {
    pub fn validate(&self) -> Result<(), String> {
        self.premise
            .validate()
            .map_err(|e| format!("premise: {e}"))?;
        self.hypothesis
            .validate()
            .map_err(|e| format!("hypothesis: {e}"))?;
        if self.category.is_some() && self.gold != GoldLabel::Contradiction {
            return Err("category set on a non-contradiction pair".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub pairs: Vec<SentencePair>,
    pub provenance: String,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("line {line}: duplicate pair id \"{id}\"")]
    DuplicateId { line: usize, id: String },
    #[error("file contains no records")]
    EmptyFile,
    #[error("corpus is empty")]
    EmptyCorpus,
}

const PAIR_FIELDS: &[&str] = &["id", "gold_label", "category", "premise", "hypothesis"];
const SENTENCE_FIELDS: &[&str] = &["text", "tokens", "srl"];
const TOKEN_FIELDS: &[&str] = &["form", "lemma", "pos", "polarity", "ner", "head", "deprel"];
const FRAME_FIELDS: &[&str] = &["predicate", "args"];
const ARG_FIELDS: &[&str] = &["role", "span"];

/// Walks a record and reports keys outside the schema. These are hard errors
/// in strict mode and warnings otherwise.
fn unknown_fields(value: &serde_json::Value) -> Vec<String> {
    fn check(
        value: &serde_json::Value,
        allowed: &[&str],
        path: &str,
        out: &mut Vec<String>,
        nested: &[(&str, &[&str])],
    ) {
        let Some(map) = value.as_object() else {
            return;
        };
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                out.push(format!("{path}{key}"));
            }
        }
        for (field, fields) in nested {
            if let Some(v) = map.get(*field) {
                let sub = format!("{path}{field}.");
                match v {
                    serde_json::Value::Array(items) => {
                        for item in items {
                            check(item, fields, &sub, out, nested_for(field));
                        }
                    }
                    _ => check(v, fields, &sub, out, nested_for(field)),
                }
            }
        }
    }

    fn nested_for(field: &str) -> &'static [(&'static str, &'static [&'static str])] {
        match field {
            "premise" | "hypothesis" => &[("tokens", TOKEN_FIELDS), ("srl", FRAME_FIELDS)],
            "srl" => &[("args", ARG_FIELDS)],
            _ => &[],
        }
    }

    let mut out = Vec::new();
    check(
        value,
        PAIR_FIELDS,
        "",
        &mut out,
        &[
            ("premise", SENTENCE_FIELDS),
            ("hypothesis", SENTENCE_FIELDS),
        ],
    );
    out
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

/// Persian negated verb forms carry the prefix "ن" that the lemma lacks.
/// Applied only when the ingested record left the polarity unset.
fn infer_verb_polarity(form: &str, lemma: &str) -> TokenPolarity {
    if form.starts_with('ن') && !lemma.starts_with('ن') {
        TokenPolarity::Neg
    } else {
        TokenPolarity::Pos
    }
}

fn normalize_sentence(sentence: &mut AnnotatedSentence) {
    sentence.text = nfc(&sentence.text);
    for tok in &mut sentence.tokens {
        tok.form = nfc(&tok.form);
        tok.lemma = nfc(&tok.lemma);
        if tok.polarity == TokenPolarity::None && tok.pos == PosTag::V {
            tok.polarity = infer_verb_polarity(&tok.form, &tok.lemma);
        }
    }
}

fn parse_record(line_no: usize, line: &str, strict: bool, warnings: &mut Vec<String>)
    -> Result<SentencePair, CorpusError> {
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| CorpusError::MalformedRecord {
            line: line_no,
            reason: format!("invalid JSON: {e}"),
        })?;
    let unknown = unknown_fields(&value);
    if !unknown.is_empty() {
        let msg = format!("unknown field(s): {}", unknown.join(", "));
        if strict {
            return Err(CorpusError::MalformedRecord {
                line: line_no,
                reason: msg,
            });
        }
        warnings.push(format!("line {line_no}: {msg} (ignored)"));
    }
    let mut pair: SentencePair =
        serde_json::from_value(value).map_err(|e| CorpusError::MalformedRecord {
            line: line_no,
            reason: e.to_string(),
        })?;
    normalize_sentence(&mut pair.premise);
    normalize_sentence(&mut pair.hypothesis);
    pair.validate().map_err(|reason| CorpusError::MalformedRecord {
        line: line_no,
        reason,
    })?;
    Ok(pair)
}

/// Loads a JSONL pair file, validating every record against the schema and
/// the type invariants. Record order is preserved. Returns the corpus plus
/// any non-fatal warnings gathered in lenient mode.
pub fn load_corpus(path: &Path, strict: bool) -> Result<(Corpus, Vec<String>), CorpusError> {
    let content = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let (corpus, warnings) = parse_corpus_str(&content, strict)?;
    let corpus = Corpus {
        provenance: path.display().to_string(),
        ..corpus
    };
    Ok((corpus, warnings))
}

/// Same as [`load_corpus`] but over an in-memory string.
pub fn parse_corpus_str(content: &str, strict: bool) -> Result<(Corpus, Vec<String>), CorpusError> {
    let mut pairs = Vec::new();
    let mut seen = BTreeSet::new();
    let mut warnings = Vec::new();
    for (i, line) in content.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let pair = parse_record(line_no, line, strict, &mut warnings)?;
        if !seen.insert(pair.id.clone()) {
            return Err(CorpusError::DuplicateId {
                line: line_no,
                id: pair.id,
            });
        }
        pairs.push(pair);
    }
    if pairs.is_empty() {
        return Err(CorpusError::EmptyFile);
    }
    Ok((
        Corpus {
            pairs,
            provenance: String::new(),
        },
        warnings,
    ))
}

/// Serializes a corpus into the JSONL interchange format, one pair per line.
pub fn corpus_to_jsonl(corpus: &Corpus) -> String {
    let mut out = String::new();
    for pair in &corpus.pairs {
        out.push_str(&serde_json::to_string(pair).expect("pair serializes"));
        out.push('\n');
    }
    out
}

pub fn save_corpus(corpus: &Corpus, path: &Path) -> Result<(), CorpusError> {
    let mut file = fs::File::create(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(corpus_to_jsonl(corpus).as_bytes())
        .map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })
}

/// Splits a corpus into disjoint dev/test parts. The dev part gets
/// `round(dev_fraction * len)` pairs. The shuffle is seeded, so identical
/// inputs give identical splits; each side keeps the original pair order.
pub fn split_corpus(
    corpus: &Corpus,
    dev_fraction: f64,
    seed: u64,
) -> Result<(Corpus, Corpus), CorpusError> {
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    assert!(
        dev_fraction > 0.0 && dev_fraction < 1.0,
        "dev_fraction must lie in (0,1)"
    );
    let n = corpus.pairs.len();
    let dev_size = ((dev_fraction * n as f64).round() as usize).min(n);
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    indices.shuffle(&mut rng);
    let mut dev_idx: BTreeSet<usize> = indices[..dev_size].iter().copied().collect();
    let mut dev = Vec::with_capacity(dev_size);
    let mut test = Vec::with_capacity(n - dev_size);
    for (i, pair) in corpus.pairs.iter().enumerate() {
        if dev_idx.remove(&i) {
            dev.push(pair.clone());
        } else {
            test.push(pair.clone());
        }
    }
    Ok((
        Corpus {
            pairs: dev,
            provenance: format!("{} [dev {dev_fraction} seed {seed}]", corpus.provenance),
        },
        Corpus {
            pairs: test,
            provenance: format!("{} [test {dev_fraction} seed {seed}]", corpus.provenance),
        },
    ))
}
