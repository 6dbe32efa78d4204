//! Lexical resources: antonym pairs, a polarity lexicon, stopwords, and
//! negative quantifier/adverb marker lists.
//!
//! All lookups are by lemma. A small builtin fixture set ships with the
//! crate; real deployments point the loader at their own directory.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

pub const ANTONYMS_FILE: &str = "antonyms.tsv";
pub const POLARITY_FILE: &str = "polarity.tsv";
pub const STOPWORDS_FILE: &str = "stopwords.txt";
pub const NEG_QUANTIFIERS_FILE: &str = "neg_quantifiers.txt";
pub const NEG_ADVERBS_FILE: &str = "neg_adverbs.txt";

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("missing lexicon file {file}: {reason}")]
    MissingLexiconFile { file: String, reason: String },
    #[error("{file}:{line}: {reason}")]
    MalformedLexiconLine {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("lemma \"{lemma}\" appears in more than one marker list")]
    MarkerOverlap { lemma: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexPolarity {
    Positive,
    Negative,
}

impl LexPolarity {
    pub fn sign(&self) -> f64 {
        match self {
            LexPolarity::Positive => 1.0,
            LexPolarity::Negative => -1.0,
        }
    }
}

/// Unordered lemma pairs; symmetric closure is applied at load time.
#[derive(Debug, Clone, Default)]
pub struct AntonymLexicon {
    pairs: BTreeSet<(String, String)>,
}

impl AntonymLexicon {
    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    }

    pub fn insert(&mut self, a: &str, b: &str) -> bool {
        if a == b {
            return false;
        }
        self.pairs.insert(Self::key(a, b))
    }

    /// Symmetric, irreflexive membership test.
    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        a != b && self.pairs.contains(&Self::key(a, b))
    }

    /// True when the lemma participates in any antonym pair with a lemma of
    /// the given set.
    pub fn has_antonym_in<'a, I: IntoIterator<Item = &'a str>>(&self, lemma: &str, set: I) -> bool {
        set.into_iter().any(|other| self.are_antonyms(lemma, other))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Lemma -> (polarity, strength), strength in (0, 1].
#[derive(Debug, Clone, Default)]
pub struct PolarityLexicon {
    entries: BTreeMap<String, (LexPolarity, f64)>,
}

impl PolarityLexicon {
    pub fn polarity_of(&self, lemma: &str) -> Option<(LexPolarity, f64)> {
        self.entries.get(lemma).copied()
    }

    /// Signed strength: positive entries contribute +s, negative -s, absent 0.
    pub fn signed_strength(&self, lemma: &str) -> f64 {
        self.polarity_of(lemma)
            .map(|(pol, s)| pol.sign() * s)
            .unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct MarkerLists {
    pub stopwords: BTreeSet<String>,
    pub negative_quantifiers: BTreeSet<String>,
    pub negative_adverbs: BTreeSet<String>,
}

impl MarkerLists {
    pub fn is_stopword(&self, lemma: &str) -> bool {
        self.stopwords.contains(lemma)
    }

    pub fn is_negative_quantifier(&self, lemma: &str) -> bool {
        self.negative_quantifiers.contains(lemma)
    }

    pub fn is_negative_adverb(&self, lemma: &str) -> bool {
        self.negative_adverbs.contains(lemma)
    }

    pub fn is_negative_marker(&self, lemma: &str) -> bool {
        self.is_negative_quantifier(lemma) || self.is_negative_adverb(lemma)
    }

    fn check_disjoint(&self) -> Result<(), LexiconError> {
        for lemma in &self.negative_quantifiers {
            if self.stopwords.contains(lemma) || self.negative_adverbs.contains(lemma) {
                return Err(LexiconError::MarkerOverlap {
                    lemma: lemma.clone(),
                });
            }
        }
        for lemma in &self.negative_adverbs {
            if self.stopwords.contains(lemma) {
                return Err(LexiconError::MarkerOverlap {
                    lemma: lemma.clone(),
                });
            }
        }
        Ok(())
    }
}

/// The full resource bundle the features and tuple extractors consume.
#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub antonyms: AntonymLexicon,
    pub polarity: PolarityLexicon,
    pub markers: MarkerLists,
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

/// Data lines of a lexicon file: 1-based line numbers, comments and blank
/// lines skipped.
fn data_lines(content: &str) -> impl Iterator<Item = (usize, &str)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_antonyms(file: &str, content: &str) -> Result<AntonymLexicon, LexiconError> {
    let mut lex = AntonymLexicon::default();
    for (line, text) in data_lines(content) {
        let mut parts = text.split('\t');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(LexiconError::MalformedLexiconLine {
                file: file.to_string(),
                line,
                reason: "expected exactly two tab-separated lemmas".into(),
            });
        };
        let (a, b) = (nfc(a.trim()), nfc(b.trim()));
        if a.is_empty() || b.is_empty() || a == b {
            return Err(LexiconError::MalformedLexiconLine {
                file: file.to_string(),
                line,
                reason: "antonym pairs must be two distinct non-empty lemmas".into(),
            });
        }
        lex.insert(&a, &b);
    }
    Ok(lex)
}

fn parse_polarity(file: &str, content: &str) -> Result<PolarityLexicon, LexiconError> {
    let mut lex = PolarityLexicon::default();
    for (line, text) in data_lines(content) {
        let err = |reason: String| LexiconError::MalformedLexiconLine {
            file: file.to_string(),
            line,
            reason,
        };
        let parts: Vec<&str> = text.split('\t').collect();
        if parts.len() != 3 {
            return Err(err("expected lemma<TAB>POSITIVE|NEGATIVE<TAB>strength".into()));
        }
        let lemma = nfc(parts[0].trim());
        let polarity = match parts[1].trim() {
            "POSITIVE" => LexPolarity::Positive,
            "NEGATIVE" => LexPolarity::Negative,
            other => return Err(err(format!("unknown polarity \"{other}\""))),
        };
        let strength: f64 = parts[2]
            .trim()
            .parse()
            .map_err(|e| err(format!("bad strength: {e}")))?;
        if !(strength > 0.0 && strength <= 1.0) {
            return Err(err(format!("strength {strength} outside (0,1]")));
        }
        if lex.entries.insert(lemma.clone(), (polarity, strength)).is_some() {
            return Err(err(format!("duplicate entry for \"{lemma}\"")));
        }
    }
    Ok(lex)
}

fn parse_lemma_set(content: &str) -> BTreeSet<String> {
    data_lines(content).map(|(_, l)| nfc(l)).collect()
}

fn build(
    antonyms: &str,
    polarity: &str,
    stopwords: &str,
    quantifiers: &str,
    adverbs: &str,
) -> Result<Lexicons, LexiconError> {
    let markers = MarkerLists {
        stopwords: parse_lemma_set(stopwords),
        negative_quantifiers: parse_lemma_set(quantifiers),
        negative_adverbs: parse_lemma_set(adverbs),
    };
    markers.check_disjoint()?;
    Ok(Lexicons {
        antonyms: parse_antonyms(ANTONYMS_FILE, antonyms)?,
        polarity: parse_polarity(POLARITY_FILE, polarity)?,
        markers,
    })
}

/// Loads the five resource files from a directory.
pub fn load_lexicons(dir: &Path) -> Result<Lexicons, LexiconError> {
    let read = |file: &str| {
        fs::read_to_string(dir.join(file)).map_err(|e| LexiconError::MissingLexiconFile {
            file: dir.join(file).display().to_string(),
            reason: e.to_string(),
        })
    };
    build(
        &read(ANTONYMS_FILE)?,
        &read(POLARITY_FILE)?,
        &read(STOPWORDS_FILE)?,
        &read(NEG_QUANTIFIERS_FILE)?,
        &read(NEG_ADVERBS_FILE)?,
    )
}

impl Lexicons {
    /// The fixture resources embedded in the crate. The polarity lexicon is
    /// deliberately small; sentiment-based behavior depends on the resource
    /// supplied at deployment.
    pub fn builtin() -> Lexicons {
        build(
            include_str!("../resources/lexicons/antonyms.tsv"),
            include_str!("../resources/lexicons/polarity.tsv"),
            include_str!("../resources/lexicons/stopwords.txt"),
            include_str!("../resources/lexicons/neg_quantifiers.txt"),
            include_str!("../resources/lexicons/neg_adverbs.txt"),
        )
        .expect("builtin lexicons are well-formed")
    }
}
