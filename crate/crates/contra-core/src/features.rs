//! The ten pairwise feature scores, each normalized to [0,1], plus the
//! sentence-analysis helpers (lemma bags, cosine, sentiment scoring,
//! clause scope) shared with the tuple extractor.
//!
//! Orientation: contrast features grow with evidence of contradiction;
//! `common_words` and `cosine_similarity` grow with similarity and are
//! inverted by the scorer that consumes them.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{AnnotatedSentence, NerTag, PosTag, SentencePair, TokenPolarity};
use crate::lexicons::{AntonymLexicon, Lexicons, MarkerLists, PolarityLexicon};

pub type LemmaBag<'a> = BTreeMap<&'a str, usize>;

/// Lemmas that carry content: punctuation and stopwords are dropped.
pub(crate) fn content_lemmas<'a>(
    sentence: &'a AnnotatedSentence,
    markers: &MarkerLists,
) -> Vec<&'a str> {
    sentence
        .tokens
        .iter()
        .filter(|t| t.pos != PosTag::PUNC && !markers.is_stopword(&t.lemma))
        .map(|t| t.lemma.as_str())
        .collect()
}

pub(crate) fn bag<'a>(lemmas: impl IntoIterator<Item = &'a str>) -> LemmaBag<'a> {
    let mut bag = LemmaBag::new();
    for lemma in lemmas {
        *bag.entry(lemma).or_insert(0) += 1;
    }
    bag
}

/// Cosine of two count vectors; 0 when either is the zero vector.
pub(crate) fn cosine_of_bags(a: &LemmaBag, b: &LemmaBag) -> f64 {
    let dot: f64 = a
        .iter()
        .filter_map(|(lemma, &ca)| b.get(lemma).map(|&cb| (ca * cb) as f64))
        .sum();
    let norm = |bag: &LemmaBag| {
        bag.values()
            .map(|&c| (c * c) as f64)
            .sum::<f64>()
            .sqrt()
    };
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

/// Content-lemma bag of an inclusive 1-based token span.
pub(crate) fn span_bag<'a>(
    sentence: &'a AnnotatedSentence,
    span: [usize; 2],
    markers: &MarkerLists,
) -> LemmaBag<'a> {
    bag(sentence.tokens[span[0] - 1..span[1]]
        .iter()
        .filter(|t| t.pos != PosTag::PUNC && !markers.is_stopword(&t.lemma))
        .map(|t| t.lemma.as_str()))
}

/// The verb whose clause a token belongs to: the token itself when it is a
/// verb, otherwise the nearest verb ancestor along the head chain.
pub(crate) fn governing_verb(sentence: &AnnotatedSentence, idx: usize) -> Option<usize> {
    let mut cur = idx;
    loop {
        if sentence.token(cur).pos == PosTag::V {
            return Some(cur);
        }
        let head = sentence.token(cur).head;
        if head == 0 {
            return None;
        }
        cur = head;
    }
}

/// The sentence's main verb: the root when it is a verb, else the first verb.
pub(crate) fn main_verb(sentence: &AnnotatedSentence) -> Option<usize> {
    let root = sentence
        .tokens
        .iter()
        .position(|t| t.head == 0)
        .map(|i| i + 1);
    if let Some(r) = root {
        if sentence.token(r).pos == PosTag::V {
            return Some(r);
        }
    }
    sentence
        .tokens
        .iter()
        .position(|t| t.pos == PosTag::V)
        .map(|i| i + 1)
}

/// Is this token a negation marker (negative quantifier or adverb)? Both the
/// marker lexicon and an explicit NEG polarity on a QUANT/ADV token count.
pub(crate) fn is_negative_marker_token(
    sentence: &AnnotatedSentence,
    idx: usize,
    markers: &MarkerLists,
) -> bool {
    let tok = sentence.token(idx);
    match tok.pos {
        PosTag::QUANT | PosTag::ADV => {
            tok.polarity == TokenPolarity::Neg || markers.is_negative_marker(&tok.lemma)
        }
        _ => markers.is_negative_marker(&tok.lemma),
    }
}

/// Negation markers whose clause is the given verb. A marker with no verb
/// ancestor falls back to the sentence's main verb.
fn markers_governed_by(
    sentence: &AnnotatedSentence,
    verb: usize,
    markers: &MarkerLists,
) -> bool {
    (1..=sentence.tokens.len()).any(|i| {
        is_negative_marker_token(sentence, i, markers)
            && governing_verb(sentence, i)
                .or_else(|| main_verb(sentence))
                .is_some_and(|v| v == verb)
    })
}

/// Effective clause negation of a verb occurrence. A negative verb stays
/// negative even with a co-occurring negative marker (the double-negation
/// pattern asserts emptiness, it does not cancel).
pub(crate) fn verb_effectively_negated(
    sentence: &AnnotatedSentence,
    verb: usize,
    markers: &MarkerLists,
) -> bool {
    sentence.token(verb).polarity == TokenPolarity::Neg
        || markers_governed_by(sentence, verb, markers)
}

/// Lexicon-based sentiment score of one sentence: signed strength summed over
/// polar lemmas, with the sign flipped for occurrences inside a negated
/// clause or preceded by a negation marker in the same clause.
pub(crate) fn sentence_sentiment_score(
    sentence: &AnnotatedSentence,
    polarity: &PolarityLexicon,
    markers: &MarkerLists,
) -> f64 {
    let mut score = 0.0;
    for (i, tok) in sentence.tokens.iter().enumerate() {
        let idx = i + 1;
        let signed = polarity.signed_strength(&tok.lemma);
        if signed == 0.0 {
            continue;
        }
        let clause = governing_verb(sentence, idx).or_else(|| main_verb(sentence));
        let negated_clause = clause
            .map(|v| verb_effectively_negated(sentence, v, markers))
            .unwrap_or(false);
        let preceding_marker = (1..idx).any(|m| {
            is_negative_marker_token(sentence, m, markers)
                && governing_verb(sentence, m).or_else(|| main_verb(sentence)) == clause
        });
        let flip = negated_clause || preceding_marker;
        score += if flip { -signed } else { signed };
    }
    score
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Feature 1: 1 when the sentence sentiment scores have strictly opposite
/// signs, 0.5 when exactly one is zero, 0 otherwise.
pub fn sentiment_disagreement(
    pair: &SentencePair,
    polarity: &PolarityLexicon,
    markers: &MarkerLists,
) -> f64 {
    let s1 = sign(sentence_sentiment_score(&pair.premise, polarity, markers));
    let s2 = sign(sentence_sentiment_score(&pair.hypothesis, polarity, markers));
    if s1 != 0 && s2 != 0 && s1 != s2 {
        1.0
    } else if (s1 == 0) ^ (s2 == 0) {
        0.5
    } else {
        0.0
    }
}

fn ne_values(sentence: &AnnotatedSentence) -> BTreeMap<NerTag, BTreeSet<&str>> {
    let mut map: BTreeMap<NerTag, BTreeSet<&str>> = BTreeMap::new();
    for tok in &sentence.tokens {
        if tok.ner != NerTag::O {
            map.entry(tok.ner).or_default().insert(tok.lemma.as_str());
        }
    }
    map
}

/// Feature 2: over NE types present in both sentences, the fraction whose
/// value sets differ.
pub fn ne_mismatch(pair: &SentencePair) -> f64 {
    let p = ne_values(&pair.premise);
    let h = ne_values(&pair.hypothesis);
    let shared: Vec<_> = p.keys().filter(|t| h.contains_key(*t)).collect();
    if shared.is_empty() {
        return 0.0;
    }
    let mismatched = shared.iter().filter(|t| p[t] != h[t]).count();
    mismatched as f64 / shared.len() as f64
}

fn non_punct_len(sentence: &AnnotatedSentence) -> usize {
    sentence
        .tokens
        .iter()
        .filter(|t| t.pos != PosTag::PUNC)
        .count()
}

/// Feature 3: |n1 - n2| / max(n1, n2) over non-punctuation token counts.
pub fn length_difference(pair: &SentencePair) -> f64 {
    let n1 = non_punct_len(&pair.premise);
    let n2 = non_punct_len(&pair.hypothesis);
    let max = n1.max(n2);
    if max == 0 {
        0.0
    } else {
        (n1 as f64 - n2 as f64).abs() / max as f64
    }
}

/// Head of a token as an alignment key: the head's lemma, or None at root.
fn head_key(sentence: &AnnotatedSentence, idx: usize) -> Option<&str> {
    match sentence.token(idx).head {
        0 => None,
        h => Some(sentence.token(h).lemma.as_str()),
    }
}

fn adjectives(sentence: &AnnotatedSentence) -> Vec<(usize, &str)> {
    sentence
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.pos == PosTag::ADJ)
        .map(|(i, t)| (i + 1, t.lemma.as_str()))
        .collect()
}

/// Feature 4: adjectives aligned by equal head lemma. Any aligned antonym
/// pair scores 1; otherwise the fraction of aligned pairs with differing
/// lemmas; 0 without alignment.
pub fn adjective_contrast(pair: &SentencePair, antonyms: &AntonymLexicon) -> f64 {
    let mut aligned = 0usize;
    let mut differing = 0usize;
    for (i, a1) in adjectives(&pair.premise) {
        for (j, a2) in adjectives(&pair.hypothesis) {
            if head_key(&pair.premise, i) != head_key(&pair.hypothesis, j) {
                continue;
            }
            if antonyms.are_antonyms(a1, a2) {
                return 1.0;
            }
            aligned += 1;
            if a1 != a2 {
                differing += 1;
            }
        }
    }
    if aligned == 0 {
        0.0
    } else {
        differing as f64 / aligned as f64
    }
}

/// Verb lemmas on the verbal spine: verbs whose whole head path up to the
/// root consists of verbs.
fn verb_spine(sentence: &AnnotatedSentence) -> BTreeSet<&str> {
    let mut spine = BTreeSet::new();
    'tokens: for (i, tok) in sentence.tokens.iter().enumerate() {
        if tok.pos != PosTag::V {
            continue;
        }
        let mut cur = i + 1;
        while sentence.token(cur).head != 0 {
            cur = sentence.token(cur).head;
            if sentence.token(cur).pos != PosTag::V {
                continue 'tokens;
            }
        }
        spine.insert(tok.lemma.as_str());
    }
    spine
}

/// Feature 5: 1 when spine verbs contain a cross-sentence antonym pair, else
/// the Jaccard distance of the spine lemma sets.
pub fn verb_contrast(pair: &SentencePair, antonyms: &AntonymLexicon) -> f64 {
    let v1 = verb_spine(&pair.premise);
    let v2 = verb_spine(&pair.hypothesis);
    if v1.is_empty() && v2.is_empty() {
        return 0.0;
    }
    for a in &v1 {
        if antonyms.has_antonym_in(a, v2.iter().copied()) {
            return 1.0;
        }
    }
    let inter = v1.intersection(&v2).count();
    let union = v1.union(&v2).count();
    1.0 - inter as f64 / union as f64
}

/// Effective polarities (negated yes/no) of all occurrences of a verb lemma.
fn effective_negations(
    sentence: &AnnotatedSentence,
    lemma: &str,
    markers: &MarkerLists,
) -> BTreeSet<bool> {
    sentence
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.pos == PosTag::V && t.lemma == lemma)
        .map(|(i, _)| verb_effectively_negated(sentence, i + 1, markers))
        .collect()
}

/// Feature 6: 1 when some verb lemma shared by both sentences has opposite
/// effective polarity across them, else 0.
pub fn negation(pair: &SentencePair, markers: &MarkerLists) -> f64 {
    let lemmas1: BTreeSet<&str> = pair
        .premise
        .tokens
        .iter()
        .filter(|t| t.pos == PosTag::V)
        .map(|t| t.lemma.as_str())
        .collect();
    for lemma in lemmas1 {
        if !pair
            .hypothesis
            .tokens
            .iter()
            .any(|t| t.pos == PosTag::V && t.lemma == lemma)
        {
            continue;
        }
        let n1 = effective_negations(&pair.premise, lemma, markers);
        let n2 = effective_negations(&pair.hypothesis, lemma, markers);
        if n1 != n2 {
            return 1.0;
        }
    }
    0.0
}

/// Feature 7: shared content lemmas over the smaller content-lemma set.
pub fn common_words(pair: &SentencePair, markers: &MarkerLists) -> f64 {
    let c1: BTreeSet<&str> = content_lemmas(&pair.premise, markers).into_iter().collect();
    let c2: BTreeSet<&str> = content_lemmas(&pair.hypothesis, markers)
        .into_iter()
        .collect();
    let min = c1.len().min(c2.len());
    if min == 0 {
        return 0.0;
    }
    c1.intersection(&c2).count() as f64 / min as f64
}

/// Feature 8: cosine of content-lemma count vectors.
pub fn cosine_similarity(pair: &SentencePair, markers: &MarkerLists) -> f64 {
    let b1 = bag(content_lemmas(&pair.premise, markers));
    let b2 = bag(content_lemmas(&pair.hypothesis, markers));
    cosine_of_bags(&b1, &b2)
}

/// Argument bags per role, merged over frames.
pub(crate) fn role_bags<'a>(
    sentence: &'a AnnotatedSentence,
    markers: &MarkerLists,
) -> BTreeMap<&'a str, LemmaBag<'a>> {
    let mut map: BTreeMap<&str, LemmaBag> = BTreeMap::new();
    for frame in &sentence.srl {
        for arg in &frame.args {
            let entry = map.entry(arg.role.as_str()).or_default();
            for (lemma, count) in span_bag(sentence, arg.span, markers) {
                *entry.entry(lemma).or_insert(0) += count;
            }
        }
    }
    map
}

/// Feature 9: max of two conflict components: a TMP/LOC role filled on both
/// sides with zero lemma overlap, and a mutual A0/A1 argument swap.
pub fn srl_mismatch(pair: &SentencePair, markers: &MarkerLists) -> f64 {
    let p = role_bags(&pair.premise, markers);
    let h = role_bags(&pair.hypothesis, markers);

    for role in ["TMP", "LOC"] {
        if let (Some(bp), Some(bh)) = (p.get(role), h.get(role)) {
            if !bp.is_empty() && !bh.is_empty() && bp.keys().all(|l| !bh.contains_key(l)) {
                return 1.0;
            }
        }
    }

    if let (Some(a0p), Some(a1p), Some(a0h), Some(a1h)) =
        (p.get("A0"), p.get("A1"), h.get("A0"), h.get("A1"))
    {
        let cross = cosine_of_bags(a0p, a1h).min(cosine_of_bags(a1p, a0h));
        let same = cosine_of_bags(a0p, a0h).max(cosine_of_bags(a1p, a1h));
        if cross > 0.0 && cross > same {
            return 1.0;
        }
    }
    0.0
}

/// An SRL role a token fills (any arg span containing it).
fn roles_of_token(sentence: &AnnotatedSentence, idx: usize) -> BTreeSet<&str> {
    let mut roles = BTreeSet::new();
    for frame in &sentence.srl {
        for arg in &frame.args {
            if arg.span[0] <= idx && idx <= arg.span[1] {
                roles.insert(arg.role.as_str());
            }
        }
    }
    roles
}

/// Feature 10: 1 when a cross-sentence antonym pair occurs in agreeing
/// positions (same deprel under lemma-equal heads, or a shared SRL role),
/// 0.5 when an antonym pair occurs without positional agreement, else 0.
pub fn antonym(pair: &SentencePair, antonyms: &AntonymLexicon) -> f64 {
    let mut seen_any = false;
    for (i, t1) in pair.premise.tokens.iter().enumerate() {
        for (j, t2) in pair.hypothesis.tokens.iter().enumerate() {
            if !antonyms.are_antonyms(&t1.lemma, &t2.lemma) {
                continue;
            }
            seen_any = true;
            let same_arc = t1.deprel == t2.deprel
                && head_key(&pair.premise, i + 1) == head_key(&pair.hypothesis, j + 1);
            let shared_role = roles_of_token(&pair.premise, i + 1)
                .intersection(&roles_of_token(&pair.hypothesis, j + 1))
                .next()
                .is_some();
            if same_arc || shared_role {
                return 1.0;
            }
        }
    }
    if seen_any {
        0.5
    } else {
        0.0
    }
}

/// The ten feature scores in their fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub sentiment_disagreement: f64,
    pub ne_mismatch: f64,
    pub length_difference: f64,
    pub adjective_contrast: f64,
    pub verb_contrast: f64,
    pub negation: f64,
    pub common_words: f64,
    pub cosine_similarity: f64,
    pub srl_mismatch: f64,
    pub antonym: f64,
}

pub const FEATURE_NAMES: [&str; 10] = [
    "sentiment_disagreement",
    "ne_mismatch",
    "length_difference",
    "adjective_contrast",
    "verb_contrast",
    "negation",
    "common_words",
    "cosine_similarity",
    "srl_mismatch",
    "antonym",
];

/// Indices of the two similarity-oriented features within the fixed order.
pub const SIMILARITY_FEATURES: [usize; 2] = [6, 7];

impl FeatureVector {
    pub fn to_array(self) -> [f64; 10] {
        [
            self.sentiment_disagreement,
            self.ne_mismatch,
            self.length_difference,
            self.adjective_contrast,
            self.verb_contrast,
            self.negation,
            self.common_words,
            self.cosine_similarity,
            self.srl_mismatch,
            self.antonym,
        ]
    }
}

/// Computes all ten features for a pair.
pub fn extract_feature_vector(pair: &SentencePair, lexicons: &Lexicons) -> FeatureVector {
    FeatureVector {
        sentiment_disagreement: sentiment_disagreement(pair, &lexicons.polarity, &lexicons.markers),
        ne_mismatch: ne_mismatch(pair),
        length_difference: length_difference(pair),
        adjective_contrast: adjective_contrast(pair, &lexicons.antonyms),
        verb_contrast: verb_contrast(pair, &lexicons.antonyms),
        negation: negation(pair, &lexicons.markers),
        common_words: common_words(pair, &lexicons.markers),
        cosine_similarity: cosine_similarity(pair, &lexicons.markers),
        srl_mismatch: srl_mismatch(pair, &lexicons.markers),
        antonym: antonym(pair, &lexicons.antonyms),
    }
}
