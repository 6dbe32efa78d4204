//! Hand-annotated demo pairs covering the classic contradiction patterns.
//!
//! These are small, fully annotated Persian pairs used by unit tests and the
//! documentation examples. The synthetic generator in [`crate::synth`]
//! produces corpus-scale variants of the same patterns.

use crate::corpus::{
    AnnotatedSentence, ContradictionCategory, GoldLabel, NerTag, PosTag, SentencePair, SrlArg,
    SrlFrame, Token, TokenPolarity,
};

pub fn token(
    form: &str,
    lemma: &str,
    pos: PosTag,
    polarity: TokenPolarity,
    ner: NerTag,
    head: usize,
    deprel: &str,
) -> Token {
    Token {
        form: form.to_string(),
        lemma: lemma.to_string(),
        pos,
        polarity,
        ner,
        head,
        deprel: deprel.to_string(),
    }
}

pub fn sentence(tokens: Vec<Token>, srl: Vec<SrlFrame>) -> AnnotatedSentence {
    let text = tokens
        .iter()
        .map(|t| t.form.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    AnnotatedSentence { text, tokens, srl }
}

pub fn frame(predicate: usize, args: &[(&str, usize, usize)]) -> SrlFrame {
    SrlFrame {
        predicate,
        args: args
            .iter()
            .map(|(role, start, end)| SrlArg {
                role: role.to_string(),
                span: [*start, *end],
            })
            .collect(),
    }
}

fn pair(
    id: &str,
    premise: AnnotatedSentence,
    hypothesis: AnnotatedSentence,
    gold: GoldLabel,
    category: Option<ContradictionCategory>,
) -> SentencePair {
    let pair = SentencePair {
        id: id.to_string(),
        premise,
        hypothesis,
        gold,
        category,
    };
    debug_assert!(pair.validate().is_ok(), "fixture violates invariants");
    pair
}

fn went_to_school(subject_negated: bool, verb_negated: bool) -> AnnotatedSentence {
    use PosTag::*;
    let (subj, subj_pos, subj_pol, subj_ner) = if subject_negated {
        ("هیچ‌کس", QUANT, TokenPolarity::Neg, NerTag::O)
    } else {
        ("علی", NSingCom, TokenPolarity::None, NerTag::PER)
    };
    let (verb, verb_pol) = if verb_negated {
        ("نرفت", TokenPolarity::Neg)
    } else {
        ("رفت", TokenPolarity::Pos)
    };
    sentence(
        vec![
            token(subj, subj, subj_pos, subj_pol, subj_ner, 4, "nsubj"),
            token("به", "به", PREP, TokenPolarity::None, NerTag::O, 3, "case"),
            token("مدرسه", "مدرسه", NSingCom, TokenPolarity::None, NerTag::O, 4, "obl"),
            token(verb, "رفت", V, verb_pol, NerTag::O, 0, "root"),
        ],
        vec![frame(4, &[("A0", 1, 1), ("LOC", 2, 3)])],
    )
}

/// Same verb lemma, flipped polarity: "علی به مدرسه رفت" / "علی به مدرسه نرفت".
pub fn negation_pair(id: &str) -> SentencePair {
    pair(
        id,
        went_to_school(false, false),
        went_to_school(false, true),
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Negation),
    )
}

/// Negative quantifier plus negative verb against a positive assertion:
/// "هیچ‌کس به مدرسه نرفت" / "علی به مدرسه رفت".
pub fn quantifier_negation_pair(id: &str) -> SentencePair {
    pair(
        id,
        went_to_school(true, true),
        went_to_school(false, false),
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Negation),
    )
}

/// Negative adverb plus negative verb against a positive assertion:
/// "هرگز به تهران برنگشت" / "به تهران برگشت".
pub fn adverb_negation_pair(id: &str) -> SentencePair {
    use PosTag::*;
    let premise = sentence(
        vec![
            token("هرگز", "هرگز", ADV, TokenPolarity::Neg, NerTag::O, 4, "advmod"),
            token("به", "به", PREP, TokenPolarity::None, NerTag::O, 3, "case"),
            token("تهران", "تهران", NSingCom, TokenPolarity::None, NerTag::LOC, 4, "obl"),
            token("برنگشت", "برگشت", V, TokenPolarity::Neg, NerTag::O, 0, "root"),
        ],
        vec![frame(4, &[("LOC", 2, 3)])],
    );
    let hypothesis = sentence(
        vec![
            token("به", "به", PREP, TokenPolarity::None, NerTag::O, 2, "case"),
            token("تهران", "تهران", NSingCom, TokenPolarity::None, NerTag::LOC, 3, "obl"),
            token("برگشت", "برگشت", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(3, &[("LOC", 1, 2)])],
    );
    pair(
        id,
        premise,
        hypothesis,
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Negation),
    )
}

fn girls_in_street(numeral: &str) -> AnnotatedSentence {
    use PosTag::*;
    sentence(
        vec![
            token(numeral, numeral, NUM, TokenPolarity::None, NerTag::NUM, 2, "num"),
            token("دختر", "دختر", NSingCom, TokenPolarity::None, NerTag::O, 5, "nsubj"),
            token("در", "در", PREP, TokenPolarity::None, NerTag::O, 4, "case"),
            token("خیابان", "خیابان", NSingCom, TokenPolarity::None, NerTag::O, 5, "obl"),
            token("نشستند", "نشست", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(5, &[("A0", 1, 2), ("LOC", 3, 4)])],
    )
}

/// Differing numerals over a shared noun: "۳ دختر در خیابان نشستند" /
/// "۵ دختر در خیابان نشستند".
pub fn numeric_pair(id: &str) -> SentencePair {
    pair(
        id,
        girls_in_street("۳"),
        girls_in_street("۵"),
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Numeric),
    )
}

fn soup_is(adjective: &str) -> AnnotatedSentence {
    use PosTag::*;
    sentence(
        vec![
            token("سوپ", "سوپ", NSingCom, TokenPolarity::None, NerTag::O, 2, "nsubj"),
            token(adjective, adjective, ADJ, TokenPolarity::None, NerTag::O, 0, "root"),
            token("است", "است", V, TokenPolarity::Pos, NerTag::O, 2, "cop"),
        ],
        vec![frame(2, &[("A1", 1, 1)])],
    )
}

/// Antonym adjectives predicated of the same subject: "سوپ داغ است" /
/// "سوپ سرد است".
pub fn antonym_pair(id: &str) -> SentencePair {
    pair(
        id,
        soup_is("داغ"),
        soup_is("سرد"),
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Antonym),
    )
}

fn floats_on(subject: &str, object: &str) -> AnnotatedSentence {
    use PosTag::*;
    sentence(
        vec![
            token(subject, subject, NSingCom, TokenPolarity::None, NerTag::O, 5, "nsubj"),
            token("روی", "روی", PREP, TokenPolarity::None, NerTag::O, 3, "case"),
            token(object, object, NSingCom, TokenPolarity::None, NerTag::O, 5, "obl"),
            token("شناور", "شناور", ADJ, TokenPolarity::None, NerTag::O, 5, "xcomp"),
            token("ماند", "ماند", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(5, &[("A0", 1, 1), ("A1", 3, 3)])],
    )
}

/// Swapped agent/patient: "آب روی روغن شناور ماند" / "روغن روی آب شناور ماند".
pub fn structural_pair(id: &str) -> SentencePair {
    pair(
        id,
        floats_on("آب", "روغن"),
        floats_on("روغن", "آب"),
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Structural),
    )
}

/// Opposite sentiment without any shared cue words: "او خوب خوابید" /
/// "او کابوس دید". Routed to the fallback category.
pub fn sentiment_pair(id: &str) -> SentencePair {
    use PosTag::*;
    let premise = sentence(
        vec![
            token("او", "او", PRO, TokenPolarity::None, NerTag::O, 3, "nsubj"),
            token("خوب", "خوب", ADV, TokenPolarity::None, NerTag::O, 3, "advmod"),
            token("خوابید", "خوابید", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(3, &[("A0", 1, 1)])],
    );
    let hypothesis = sentence(
        vec![
            token("او", "او", PRO, TokenPolarity::None, NerTag::O, 3, "nsubj"),
            token("کابوس", "کابوس", NSingCom, TokenPolarity::None, NerTag::O, 3, "obj"),
            token("دید", "دید", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(3, &[("A0", 1, 1), ("A1", 2, 2)])],
    );
    pair(
        id,
        premise,
        hypothesis,
        GoldLabel::Contradiction,
        Some(ContradictionCategory::Others),
    )
}

/// Modifier-dropping entailment: "علی به مدرسه رفت" / "علی رفت".
pub fn entailment_pair(id: &str) -> SentencePair {
    use PosTag::*;
    let hypothesis = sentence(
        vec![
            token("علی", "علی", NSingCom, TokenPolarity::None, NerTag::PER, 2, "nsubj"),
            token("رفت", "رفت", V, TokenPolarity::Pos, NerTag::O, 0, "root"),
        ],
        vec![frame(2, &[("A0", 1, 1)])],
    );
    pair(
        id,
        went_to_school(false, false),
        hypothesis,
        GoldLabel::Entailment,
        None,
    )
}
