//! Deterministic synthetic corpora with planted contradiction patterns.
//!
//! Each category template instantiates its classic pattern (flipped verb
//! polarity, differing numerals over a shared noun, antonym adjective swap,
//! agent/patient swap) from a closed vocabulary that is consistent with the
//! builtin lexicons. Noise pairs are entailment/neutral shapes designed to
//! share surface structure with the planted pairs without instantiating any
//! pattern. Everything is reproducible from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{
    AnnotatedSentence, ContradictionCategory, Corpus, GoldLabel, NerTag, PosTag, SentencePair,
    SrlArg, SrlFrame, TokenPolarity,
};
use crate::fixtures::{frame, sentence, token};

/// Pair counts per planted category plus neutral/entailment noise pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SynthSpec {
    pub negation: usize,
    pub numeric: usize,
    pub antonym: usize,
    pub structural: usize,
    pub noise: usize,
}

impl SynthSpec {
    pub fn total(&self) -> usize {
        self.negation + self.numeric + self.antonym + self.structural + self.noise
    }
}

struct Verb {
    lemma: &'static str,
    positive: &'static str,
    negative: &'static str,
}

const NAMES: [&str; 8] = [
    "علی", "مریم", "سامان", "رضا", "سارا", "حسن", "نرگس", "امید",
];

const PLACES: [&str; 8] = [
    "مدرسه", "بازار", "کتابخانه", "پارک", "مسجد", "دانشگاه", "سینما", "ایستگاه",
];

const MOTION_VERBS: [Verb; 4] = [
    Verb { lemma: "رفت", positive: "رفت", negative: "نرفت" },
    Verb { lemma: "آمد", positive: "آمد", negative: "نیامد" },
    Verb { lemma: "برگشت", positive: "برگشت", negative: "برنگشت" },
    Verb { lemma: "رسید", positive: "رسید", negative: "نرسید" },
];

const NEG_ADVERBS: [&str; 2] = ["هرگز", "هیچ‌وقت"];

const COUNT_NOUNS: [&str; 5] = ["دختر", "کتاب", "درخت", "صندلی", "سیب"];

const SIT_VERBS: [&str; 3] = ["نشست", "ایستاد", "ماند"];

const NUMERALS: [&str; 8] = ["۲", "۳", "۴", "۵", "۶", "۷", "۸", "۹"];

/// Antonym adjective pairs; every pair appears in the builtin antonym
/// lexicon and none of the adjectives is a polar word.
const ADJ_PAIRS: [(&str, &str); 8] = [
    ("داغ", "سرد"),
    ("پیر", "جوان"),
    ("بزرگ", "کوچک"),
    ("کوتاه", "بلند"),
    ("باز", "بسته"),
    ("خشک", "خیس"),
    ("سبک", "سنگین"),
    ("ارزان", "گران"),
];

const PRED_SUBJECTS: [&str; 6] = ["سوپ", "غذا", "چای", "هوا", "اتاق", "نان"];

const ATTR_NOUNS: [&str; 4] = ["مرد", "زن", "خانه", "ماشین"];

const COME_VERBS: [&str; 2] = ["آمد", "رسید"];

/// Non-antonym object pairs for the swap template.
const FLOAT_PAIRS: [(&str, &str); 3] = [("آب", "روغن"), ("چوب", "قیر"), ("یخ", "شیر")];

/// (object, verb) activities for cue-free noise; no two verbs and no two
/// objects form an antonym pair.
const ACTIVITIES: [(&str, &str); 4] = [
    ("کتاب", "خواند"),
    ("غذا", "خورد"),
    ("نامه", "نوشت"),
    ("آهنگ", "شنید"),
];

const POSITIVE_ADJ_PAIRS: [(&str, &str); 3] = [
    ("خوب", "عالی"),
    ("عالی", "خوب"),
    ("خوب", "لذیذ"),
];

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn pick_two_distinct<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> (&'a T, &'a T) {
    let first = rng.random_range(0..items.len());
    let offset = rng.random_range(1..items.len());
    (&items[first], &items[(first + offset) % items.len()])
}

fn noun(form: &str, head: usize, deprel: &str) -> crate::corpus::Token {
    token(form, form, PosTag::NSingCom, TokenPolarity::None, NerTag::O, head, deprel)
}

fn name_token(form: &str, head: usize) -> crate::corpus::Token {
    token(form, form, PosTag::NSingCom, TokenPolarity::None, NerTag::PER, head, "nsubj")
}

fn prep(form: &str, head: usize) -> crate::corpus::Token {
    token(form, form, PosTag::PREP, TokenPolarity::None, NerTag::O, head, "case")
}

fn verb_token(form: &str, lemma: &str, negated: bool) -> crate::corpus::Token {
    token(
        form,
        lemma,
        PosTag::V,
        if negated { TokenPolarity::Neg } else { TokenPolarity::Pos },
        NerTag::O,
        0,
        "root",
    )
}

/// "<name> به <place> <verb>"
fn went_to(name: &str, place: &str, verb: &Verb, negated: bool) -> AnnotatedSentence {
    let form = if negated { verb.negative } else { verb.positive };
    sentence(
        vec![
            name_token(name, 4),
            prep("به", 3),
            noun(place, 4, "obl"),
            verb_token(form, verb.lemma, negated),
        ],
        vec![frame(4, &[("A0", 1, 1), ("LOC", 2, 3)])],
    )
}

/// "هیچ‌کس به <place> <neg-verb>"
fn no_one_went_to(place: &str, verb: &Verb) -> AnnotatedSentence {
    sentence(
        vec![
            token("هیچ‌کس", "هیچ‌کس", PosTag::QUANT, TokenPolarity::Neg, NerTag::O, 4, "nsubj"),
            prep("به", 3),
            noun(place, 4, "obl"),
            verb_token(verb.negative, verb.lemma, true),
        ],
        vec![frame(4, &[("A0", 1, 1), ("LOC", 2, 3)])],
    )
}

/// "<name> <neg-adverb> به <place> <neg-verb>"
fn never_went_to(name: &str, adverb: &str, place: &str, verb: &Verb) -> AnnotatedSentence {
    sentence(
        vec![
            name_token(name, 5),
            token(adverb, adverb, PosTag::ADV, TokenPolarity::Neg, NerTag::O, 5, "advmod"),
            prep("به", 4),
            noun(place, 5, "obl"),
            verb_token(verb.negative, verb.lemma, true),
        ],
        vec![frame(5, &[("A0", 1, 1), ("LOC", 3, 4)])],
    )
}

fn negation_pair_at(i: usize, rng: &mut ChaCha8Rng) -> (AnnotatedSentence, AnnotatedSentence) {
    // Mostly plain verb flips (both directions) with occasional negative
    // quantifier and adverb variants.
    const VARIANTS: [u8; 10] = [0, 1, 0, 1, 2, 0, 1, 0, 1, 3];
    let variant = VARIANTS[i % VARIANTS.len()];
    let name = *pick(rng, &NAMES);
    let place = *pick(rng, &PLACES);
    let verb = pick(rng, &MOTION_VERBS);
    match variant {
        0 => (went_to(name, place, verb, false), went_to(name, place, verb, true)),
        1 => (went_to(name, place, verb, true), went_to(name, place, verb, false)),
        2 => (no_one_went_to(place, verb), went_to(name, place, verb, false)),
        _ => {
            let adverb = *pick(rng, &NEG_ADVERBS);
            (
                never_went_to(name, adverb, place, verb),
                went_to(name, place, verb, false),
            )
        }
    }
}

/// "<numeral> <noun> در <place> <verb>ند"
fn counted(numeral: &str, noun_lemma: &str, place: &str, verb_lemma: &str) -> AnnotatedSentence {
    let form = format!("{verb_lemma}ند");
    sentence(
        vec![
            token(numeral, numeral, PosTag::NUM, TokenPolarity::None, NerTag::NUM, 2, "num"),
            noun(noun_lemma, 5, "nsubj"),
            prep("در", 4),
            noun(place, 5, "obl"),
            token(&form, verb_lemma, PosTag::V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(5, &[("A0", 1, 2), ("LOC", 3, 4)])],
    )
}

fn numeric_pair_at(rng: &mut ChaCha8Rng) -> (AnnotatedSentence, AnnotatedSentence) {
    let (n1, n2) = pick_two_distinct(rng, &NUMERALS);
    let noun_lemma = *pick(rng, &COUNT_NOUNS);
    let place = *pick(rng, &PLACES);
    let verb = *pick(rng, &SIT_VERBS);
    (
        counted(n1, noun_lemma, place, verb),
        counted(n2, noun_lemma, place, verb),
    )
}

/// "<subject> <adjective> است"
fn predicated(subject: &str, adjective: &str) -> AnnotatedSentence {
    sentence(
        vec![
            noun(subject, 2, "nsubj"),
            token(adjective, adjective, PosTag::ADJ, TokenPolarity::None, NerTag::O, 0, "root"),
            token("است", "است", PosTag::V, TokenPolarity::Pos, NerTag::O, 2, "cop"),
        ],
        vec![frame(2, &[("A1", 1, 1)])],
    )
}

/// "<noun> <adjective> <verb>"
fn attributed(noun_lemma: &str, adjective: &str, verb_lemma: &str) -> AnnotatedSentence {
    sentence(
        vec![
            noun(noun_lemma, 3, "nsubj"),
            token(adjective, adjective, PosTag::ADJ, TokenPolarity::None, NerTag::O, 1, "amod"),
            verb_token(verb_lemma, verb_lemma, false),
        ],
        vec![frame(3, &[("A0", 1, 2)])],
    )
}

fn antonym_pair_at(i: usize, rng: &mut ChaCha8Rng) -> (AnnotatedSentence, AnnotatedSentence) {
    let (mut a1, mut a2) = *pick(rng, &ADJ_PAIRS);
    if rng.random::<bool>() {
        std::mem::swap(&mut a1, &mut a2);
    }
    if i.is_multiple_of(2) {
        let subject = *pick(rng, &PRED_SUBJECTS);
        (predicated(subject, a1), predicated(subject, a2))
    } else {
        let noun_lemma = *pick(rng, &ATTR_NOUNS);
        let verb = *pick(rng, &COME_VERBS);
        (
            attributed(noun_lemma, a1, verb),
            attributed(noun_lemma, a2, verb),
        )
    }
}

/// "<a> روی <b> شناور ماند"
fn floats_on(a: &str, b: &str) -> AnnotatedSentence {
    sentence(
        vec![
            noun(a, 5, "nsubj"),
            prep("روی", 3),
            noun(b, 5, "obl"),
            token("شناور", "شناور", PosTag::ADJ, TokenPolarity::None, NerTag::O, 5, "xcomp"),
            verb_token("ماند", "ماند", false),
        ],
        vec![frame(5, &[("A0", 1, 1), ("A1", 3, 3)])],
    )
}

/// "<x> <y> را برد"
fn beat(x: &str, y: &str) -> AnnotatedSentence {
    sentence(
        vec![
            name_token(x, 4),
            token(y, y, PosTag::NSingCom, TokenPolarity::None, NerTag::PER, 4, "obj"),
            prep("را", 2),
            verb_token("برد", "برد", false),
        ],
        vec![frame(4, &[("A0", 1, 1), ("A1", 2, 2)])],
    )
}

fn structural_pair_at(i: usize, rng: &mut ChaCha8Rng) -> (AnnotatedSentence, AnnotatedSentence) {
    if i.is_multiple_of(2) {
        let (a, b) = *pick(rng, &FLOAT_PAIRS);
        (floats_on(a, b), floats_on(b, a))
    } else {
        let (x, y) = pick_two_distinct(rng, &NAMES);
        (beat(x, y), beat(y, x))
    }
}

/// "<name> <object> را <verb>"
fn did_activity(name: &str, object: &str, verb_lemma: &str) -> AnnotatedSentence {
    sentence(
        vec![
            name_token(name, 4),
            noun(object, 4, "obj"),
            prep("را", 2),
            verb_token(verb_lemma, verb_lemma, false),
        ],
        vec![frame(4, &[("A0", 1, 1), ("A1", 2, 2)])],
    )
}

/// "<name> <verb>"
fn bare(name: &str, verb: &Verb) -> AnnotatedSentence {
    sentence(
        vec![name_token(name, 2), verb_token(verb.positive, verb.lemma, false)],
        vec![frame(2, &[("A0", 1, 1)])],
    )
}

/// "<subject> <adjective> بود"
fn was(subject: &str, adjective: &str) -> AnnotatedSentence {
    sentence(
        vec![
            noun(subject, 3, "nsubj"),
            token(adjective, adjective, PosTag::ADJ, TokenPolarity::None, NerTag::O, 3, "xcomp"),
            token("بود", "بود", PosTag::V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![],
    )
}

fn noise_pair_at(
    i: usize,
    rng: &mut ChaCha8Rng,
) -> (AnnotatedSentence, AnnotatedSentence, GoldLabel) {
    match i % 6 {
        // Modifier-dropping entailment.
        0 => {
            let name = *pick(rng, &NAMES);
            let place = *pick(rng, &PLACES);
            let verb = pick(rng, &MOTION_VERBS);
            (
                went_to(name, place, verb, false),
                bare(name, verb),
                GoldLabel::Entailment,
            )
        }
        // Same person, unrelated activities.
        1 => {
            let name = *pick(rng, &NAMES);
            let ((o1, v1), (o2, v2)) = pick_two_distinct(rng, &ACTIVITIES);
            (
                did_activity(name, o1, v1),
                did_activity(name, o2, v2),
                GoldLabel::Neutral,
            )
        }
        // Same count, different place: the shared numeral must not read as
        // a numeric contradiction.
        2 => {
            let numeral = *pick(rng, &NUMERALS);
            let noun_lemma = *pick(rng, &COUNT_NOUNS);
            let (p1, p2) = pick_two_distinct(rng, &PLACES);
            let verb = *pick(rng, &SIT_VERBS);
            (
                counted(numeral, noun_lemma, p1, verb),
                counted(numeral, noun_lemma, p2, verb),
                GoldLabel::Neutral,
            )
        }
        // Different subjects, same destination.
        3 => {
            let (x, y) = pick_two_distinct(rng, &NAMES);
            let place = *pick(rng, &PLACES);
            let verb = pick(rng, &MOTION_VERBS);
            (
                went_to(x, place, verb, false),
                went_to(y, place, verb, false),
                GoldLabel::Neutral,
            )
        }
        // Agreeing positive sentiment.
        4 => {
            let subject = *pick(rng, &PRED_SUBJECTS);
            let (a1, a2) = *pick(rng, &POSITIVE_ADJ_PAIRS);
            (was(subject, a1), was(subject, a2), GoldLabel::Entailment)
        }
        // Repeated transitive event, roles in the same order.
        _ => {
            let (x, y) = pick_two_distinct(rng, &NAMES);
            let verb = "دید";
            (
                did_activity(x, y, verb),
                did_activity(x, y, verb),
                GoldLabel::Entailment,
            )
        }
    }
}

/// Generates the requested corpus. Identical (spec, seed) inputs produce
/// byte-identical corpora; output always satisfies load-time validation.
pub fn generate_synthetic_corpus(spec: &SynthSpec, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(spec.total());

    let push = |pairs: &mut Vec<SentencePair>,
                    kind: &str,
                    index: usize,
                    premise: AnnotatedSentence,
                    hypothesis: AnnotatedSentence,
                    gold: GoldLabel,
                    category: Option<ContradictionCategory>| {
        let pair = SentencePair {
            id: format!("syn-{kind}-{index:05}"),
            premise,
            hypothesis,
            gold,
            category,
        };
        debug_assert!(pair.validate().is_ok(), "generated pair must validate");
        pairs.push(pair);
    };

    for i in 0..spec.negation {
        let (p, h) = negation_pair_at(i, &mut rng);
        push(
            &mut pairs,
            "negation",
            i,
            p,
            h,
            GoldLabel::Contradiction,
            Some(ContradictionCategory::Negation),
        );
    }
    for i in 0..spec.numeric {
        let (p, h) = numeric_pair_at(&mut rng);
        push(
            &mut pairs,
            "numeric",
            i,
            p,
            h,
            GoldLabel::Contradiction,
            Some(ContradictionCategory::Numeric),
        );
    }
    for i in 0..spec.antonym {
        let (p, h) = antonym_pair_at(i, &mut rng);
        push(
            &mut pairs,
            "antonym",
            i,
            p,
            h,
            GoldLabel::Contradiction,
            Some(ContradictionCategory::Antonym),
        );
    }
    for i in 0..spec.structural {
        let (p, h) = structural_pair_at(i, &mut rng);
        push(
            &mut pairs,
            "structural",
            i,
            p,
            h,
            GoldLabel::Contradiction,
            Some(ContradictionCategory::Structural),
        );
    }
    for i in 0..spec.noise {
        let (p, h, gold) = noise_pair_at(i, &mut rng);
        push(&mut pairs, "noise", i, p, h, gold, None);
    }

    Corpus {
        pairs,
        provenance: format!("synthetic seed={seed}"),
    }
}

/// A random (but always invariant-satisfying) annotated pair for fuzzing
/// the feature extractors. Unrelated to the planted templates.
pub fn random_annotated_pair(id: &str, seed: u64) -> SentencePair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let premise = random_sentence(&mut rng);
    let hypothesis = random_sentence(&mut rng);
    let gold = match rng.random_range(0..3) {
        0 => GoldLabel::Contradiction,
        1 => GoldLabel::Entailment,
        _ => GoldLabel::Neutral,
    };
    let category = if gold == GoldLabel::Contradiction && rng.random::<bool>() {
        Some(
            *pick(
                &mut rng,
                &ContradictionCategory::ALL,
            ),
        )
    } else {
        None
    };
    let pair = SentencePair {
        id: id.to_string(),
        premise,
        hypothesis,
        gold,
        category,
    };
    debug_assert!(pair.validate().is_ok(), "random pair must validate");
    pair
}

const FUZZ_LEMMAS: [&str; 20] = [
    "سرد", "گرم", "داغ", "خوب", "بد", "کتاب", "میز", "رفت", "آمد", "علی", "مدرسه", "هیچ‌کس",
    "هرگز", "دیروز", "امروز", "آب", "روغن", "دختر", "پسر", "۳",
];

const FUZZ_DEPRELS: [&str; 6] = ["nsubj", "obj", "obl", "amod", "case", "advmod"];

const FUZZ_ROLES: [&str; 5] = ["A0", "A1", "A2", "TMP", "LOC"];

fn random_sentence(rng: &mut ChaCha8Rng) -> AnnotatedSentence {
    let len = rng.random_range(1..=8usize);
    let mut tokens = Vec::with_capacity(len);
    for i in 1..=len {
        let lemma = *pick(rng, &FUZZ_LEMMAS);
        let pos = match rng.random_range(0..8) {
            0 => PosTag::V,
            1 => PosTag::NSingCom,
            2 => PosTag::ADJ,
            3 => PosTag::ADV,
            4 => PosTag::NUM,
            5 => PosTag::QUANT,
            6 => PosTag::PREP,
            _ => PosTag::NPlur,
        };
        let polarity = if matches!(pos, PosTag::V | PosTag::QUANT | PosTag::ADV) {
            match rng.random_range(0..3) {
                0 => TokenPolarity::Neg,
                1 => TokenPolarity::Pos,
                _ => TokenPolarity::None,
            }
        } else {
            TokenPolarity::None
        };
        let ner = match rng.random_range(0..6) {
            0 => NerTag::PER,
            1 => NerTag::LOC,
            2 => NerTag::NUM,
            _ => NerTag::O,
        };
        // Heads point at earlier tokens; token 1 is the root. This keeps
        // the arcs a single-rooted tree for any draw.
        let head = if i == 1 { 0 } else { rng.random_range(1..i) };
        let deprel = if head == 0 { "root" } else { *pick(rng, &FUZZ_DEPRELS) };
        tokens.push(token(lemma, lemma, pos, polarity, ner, head, deprel));
    }

    let mut srl = Vec::new();
    for _ in 0..rng.random_range(0..=2usize) {
        let predicate = rng.random_range(1..=len);
        let mut args = Vec::new();
        let mut roles_used: Vec<&str> = Vec::new();
        for _ in 0..rng.random_range(0..=3usize) {
            let role = *pick(rng, &FUZZ_ROLES);
            if roles_used.contains(&role) {
                continue;
            }
            roles_used.push(role);
            let start = rng.random_range(1..=len);
            let end = rng.random_range(start..=len);
            args.push(SrlArg {
                role: role.to_string(),
                span: [start, end],
            });
        }
        srl.push(SrlFrame { predicate, args });
    }
    let mut s = sentence(tokens, srl);
    s.text = s
        .tokens
        .iter()
        .map(|t| t.form.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    s
}
