//! Acceptance suite. Each test covers one release criterion and prints a
//! `criterion N: PASS` line; run with `--nocapture` to see them all:
//!
//! ```text
//! cargo test -p contra-cli --test acceptance -- --nocapture
//! ```
//!
//! 1. Metric reproduction against the historical reference triples.
//! 2. Miner equivalence with an exhaustive reference enumerator.
//! 3. Synthetic end-to-end recovery of planted patterns via the CLI.
//! 4. Annealing-tuner contracts (monotone best-so-far, separable optimum,
//!    seed determinism), with the optimum cross-checked by a grid oracle.
//! 5. Fuzzed feature invariants (range, symmetry, reflexivity, cosine).
//! 6. Byte-identical CLI outputs for identical flags and seeds.
//! 7. File round-trips and error-class exit codes.
//!
//! Criterion 1 currently FAILS on three reference rows whose printed F is
//! arithmetically inconsistent with their own printed P and R (deltas
//! 0.15/0.22/0.28 against the ±0.1 gate); no harmonic-mean implementation
//! can reproduce those three numbers. The failure message lists them.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use contra_core::baseline::{model_to_json, tune, BaselineModel, SaParams};
use contra_core::corpus::{corpus_to_jsonl, parse_corpus_str, split_corpus};
use contra_core::evaluation::{f_measure, macro_average};
use contra_core::features::extract_feature_vector;
use contra_core::lexicons::Lexicons;
use contra_core::mining::{
    derive_rules, load_rulebase, mine_frequent_itemsets, rulebase_to_json, save_rulebase,
    AssociationRule, Itemset, MiningParams,
};
use contra_core::synth::{generate_synthetic_corpus, random_annotated_pair, SynthSpec};
use contra_core::tuples::{Transaction, Tuple, TxLabel};

// ---------------------------------------------------------------------------
// criterion 1: metric reproduction
// ---------------------------------------------------------------------------

/// Reference (precision, recall, f) triples, percent scale, as printed in
/// the historical evaluation tables this engine's metrics must reproduce.
/// The harmonic mean of each row's P and R must match its F within ±0.1.
const REFERENCE_ROWS: [(f64, f64, f64, &str); 12] = [
    (62.0, 68.2, 65.1, "feature scorer, dev1->test2 (also the fallback-category row)"),
    (53.7, 86.4, 66.2, "feature scorer, dev2->test1"),
    (55.5, 72.0, 62.9, "naive-Bayes comparison"),
    (56.0, 65.5, 60.4, "RBF-network comparison"),
    (60.3, 64.0, 62.1, "meta-classifier comparison"),
    (92.8, 85.7, 89.1, "negation category"),
    (89.3, 82.14, 85.6, "numeric category"),
    (86.5, 84.0, 85.2, "antonym category"),
    (67.0, 46.0, 54.5, "structural category"),
    (73.2, 72.5, 72.9, "all matchers on unlabeled data"),
    (39.4, 41.0, 40.18, "LSTM comparison"),
    (69.0, 71.2, 69.8, "transformer comparison"),
];

/// Per-category reference columns; their unweighted means form the Average
/// row (79.52, 73.21, 75.9), which is a column mean rather than an f(P,R)
/// row and is checked as such.
const REFERENCE_P: [f64; 5] = [92.8, 89.3, 86.5, 67.0, 62.0];
const REFERENCE_R: [f64; 5] = [85.7, 82.14, 84.0, 46.0, 68.2];
const REFERENCE_F: [f64; 5] = [89.1, 85.6, 85.2, 54.5, 65.1];

#[test]
fn criterion_1_metric_reproduction() {
    let started = Instant::now();
    let mut violations = Vec::new();
    for (p, r, printed, name) in REFERENCE_ROWS {
        let computed = f_measure(p, r);
        let delta = (computed - printed).abs();
        let verdict = if delta <= 0.1 { "ok  " } else { "FAIL" };
        println!("  {verdict} f({p}, {r}) = {computed:.4} vs printed {printed} [{name}]");
        if delta > 0.1 {
            violations.push(format!(
                "{name}: f({p}, {r}) = {computed:.4}, printed {printed}, delta {delta:.4}"
            ));
        }
    }

    let macro_p = macro_average(&REFERENCE_P);
    let macro_r = macro_average(&REFERENCE_R);
    let macro_f = macro_average(&REFERENCE_F);
    assert!(
        (macro_p - 79.52).abs() < 1e-9,
        "macro precision {macro_p} != 79.52"
    );
    assert!((macro_r - 73.21).abs() < 0.005, "macro recall {macro_r} != 73.21");
    assert!((macro_f - 75.9).abs() < 1e-9, "macro F {macro_f} != 75.9");
    println!("  ok   macro over category columns = ({macro_p:.2}, {macro_r:.3}, {macro_f:.2})");

    assert!(started.elapsed().as_secs() < 1, "criterion 1 exceeded 1s");
    if violations.is_empty() {
        println!("acceptance criterion 1: PASS: all reference rows reproduced within ±0.1");
    } else {
        println!(
            "acceptance criterion 1: FAIL: {} of {} reference rows are arithmetically \
             inconsistent with their own printed P/R (reference-data defect, not reproducible \
             by any harmonic mean):",
            violations.len(),
            REFERENCE_ROWS.len()
        );
        for v in &violations {
            println!("    {v}");
        }
        panic!(
            "criterion 1: {} reference rows outside ±0.1: {}",
            violations.len(),
            violations.join("; ")
        );
    }
}

// ---------------------------------------------------------------------------
// criterion 2: miner equivalence with an exhaustive enumerator
// ---------------------------------------------------------------------------

const ORACLE_ALPHABET: [&str; 12] = [
    "POL(V1-POS,V2-NEG)",
    "POL(V1-NEG,V2-POS)",
    "POL(V1-NEG,Q1-NEG)",
    "SENT(NEU,NEU)",
    "SENT(POS,NEG)",
    "DEP(num,NUM,COMMON1)",
    "DEP(amod,ANT1,COMMON1)",
    "DEP(nsubj,COMMON1,COMMON2)",
    "DEP(case,PREP,COMMON2)",
    "SRLSIM(A0,A1,B2)",
    "SRLSIM(A0,A0,B0)",
    "SRLSIM(LOC,LOC,B2)",
];

fn random_transactions(rng: &mut ChaCha8Rng) -> Vec<Transaction> {
    let n = rng.random_range(1..=50usize);
    (0..n)
        .map(|i| {
            let k = rng.random_range(0..=6usize);
            let mut items = BTreeSet::new();
            for _ in 0..k {
                let item = ORACLE_ALPHABET[rng.random_range(0..ORACLE_ALPHABET.len())];
                items.insert(Tuple::decode(item).unwrap());
            }
            Transaction {
                pair_id: format!("t{i}"),
                label: if rng.random::<bool>() {
                    TxLabel::Contra
                } else {
                    TxLabel::NotContra
                },
                items,
            }
        })
        .collect()
}

/// Exhaustive reference: every subset of the observed alphabet up to the
/// size cap, counted by scanning. Independent of the levelwise miner.
fn enumerate_frequent(
    transactions: &[Transaction],
    params: &MiningParams,
) -> Vec<(Itemset, f64)> {
    let n = transactions.len();
    let tx_sets: Vec<BTreeSet<String>> = transactions
        .iter()
        .map(|tx| {
            let mut set: BTreeSet<String> = tx.items.iter().map(Tuple::encode).collect();
            set.insert(tx.label.as_str().to_string());
            set
        })
        .collect();
    let alphabet: Vec<String> = tx_sets
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cap = params.max_antecedent_size + 1;
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << alphabet.len()) {
        if (mask.count_ones() as usize) > cap {
            continue;
        }
        let itemset: Itemset = alphabet
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, item)| item.clone())
            .collect();
        let count = tx_sets
            .iter()
            .filter(|tx| itemset.iter().all(|item| tx.contains(item)))
            .count();
        let support = count as f64 / n as f64;
        if support >= params.min_support {
            out.push((itemset, support));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn rule_key(rule: &AssociationRule) -> (Vec<String>, bool, u64, u64) {
    (
        rule.antecedent.clone(),
        rule.is_contra(),
        rule.support.to_bits(),
        rule.confidence.to_bits(),
    )
}

#[test]
fn criterion_2_miner_matches_exhaustive_enumeration() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..200 {
        let transactions = random_transactions(&mut rng);
        let params = MiningParams {
            min_support: rng.random_range(0.02..=0.6),
            min_confidence: rng.random_range(0.05..=1.0),
            max_antecedent_size: rng.random_range(1..=3),
        };
        let fast = mine_frequent_itemsets(&transactions, &params).unwrap();
        let slow = enumerate_frequent(&transactions, &params);
        assert_eq!(
            fast, slow,
            "case {case}: frequent itemsets diverge ({} transactions, {params:?})",
            transactions.len()
        );

        let fast_rules: BTreeSet<_> = derive_rules(&fast, &params).iter().map(rule_key).collect();
        let slow_rules: BTreeSet<_> = derive_rules(&slow, &params).iter().map(rule_key).collect();
        assert_eq!(fast_rules, slow_rules, "case {case}: rule sets diverge");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "criterion 2 exceeded 30s: {elapsed:?}");
    println!(
        "acceptance criterion 2: PASS: 200 random corpora, levelwise == exhaustive ({:.1}s)",
        elapsed.as_secs_f64()
    );
}

// ---------------------------------------------------------------------------
// criterion 3: synthetic end-to-end via the CLI
// ---------------------------------------------------------------------------

fn contra(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contra"))
        .args(args)
        .current_dir(dir)
        .env_remove("CONTRA_LEXICON_DIR")
        .output()
        .expect("binary runs")
}

fn expect_success(out: &Output, what: &str) {
    assert!(
        out.status.success(),
        "{what} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn criterion_3_synthetic_end_to_end() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = contra(
        &[
            "synth",
            "--negation", "200",
            "--numeric", "200",
            "--antonym", "200",
            "--structural", "200",
            "--noise", "400",
            "--seed", "42",
            "--dev-fraction", "0.7",
            "--out", "corpus.jsonl",
        ],
        dir.path(),
    );
    expect_success(&out, "synth");

    let out = contra(
        &["mine", "--corpus", "corpus.dev.jsonl", "--out", "rules.json"],
        dir.path(),
    );
    expect_success(&out, "mine");

    let out = contra(
        &[
            "eval",
            "--corpus", "corpus.test.jsonl",
            "--rulebase", "rules.json",
            "--mode", "gold",
            "--out", "report.json",
        ],
        dir.path(),
    );
    expect_success(&out, "eval");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    let f_of = |category: &str| {
        report["per_category"][category]["f_measure"]
            .as_f64()
            .unwrap_or(0.0)
    };
    let mut lines = Vec::new();
    for (category, floor) in [
        ("NEGATION", 0.95),
        ("NUMERIC", 0.95),
        ("ANTONYM", 0.95),
        ("STRUCTURAL", 0.80),
    ] {
        let f = f_of(category);
        lines.push(format!("{category} F={f:.4} (floor {floor})"));
        assert!(f >= floor, "{category} F {f} below {floor}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 3 exceeded 60s: {elapsed:?}");
    println!(
        "acceptance criterion 3: PASS: {} ({:.1}s)",
        lines.join(", "),
        elapsed.as_secs_f64()
    );
}

// ---------------------------------------------------------------------------
// criterion 4: annealing-tuner contracts
// ---------------------------------------------------------------------------

/// Exhaustive oracle over weights in {0,1}^10 and thresholds in
/// {0.05, 0.10, ..., 0.95}: the best F-measure reachable on that grid.
fn grid_best_f(dev: &contra_core::Corpus, lexicons: &Lexicons) -> f64 {
    let fvs: Vec<_> = dev
        .pairs
        .iter()
        .map(|p| extract_feature_vector(p, lexicons))
        .collect();
    let gold: Vec<bool> = dev.pairs.iter().map(|p| p.gold.is_contradiction()).collect();
    let mut best: f64 = 0.0;
    for mask in 0u32..(1 << 10) {
        let mut weights = [0.0; 10];
        for (i, w) in weights.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *w = 1.0;
            }
        }
        for step in 1..=19 {
            let threshold = step as f64 * 0.05;
            let model = BaselineModel {
                weights,
                threshold,
                version: 1,
            };
            let mut tp = 0u64;
            let mut fp = 0u64;
            let mut fn_ = 0u64;
            for (fv, &g) in fvs.iter().zip(&gold) {
                let decided = contra_core::baseline::decide_from_features(&model, fv);
                match (decided, g) {
                    (true, true) => tp += 1,
                    (true, false) => fp += 1,
                    (false, true) => fn_ += 1,
                    _ => {}
                }
            }
            let f = f_measure(
                contra_core::evaluation::precision(tp, fp),
                contra_core::evaluation::recall(tp, fn_),
            );
            best = best.max(f);
        }
    }
    best
}

#[test]
fn criterion_4_annealing_tuner_contracts() {
    let lexicons = Lexicons::builtin();

    // Separable dev set: the negation feature alone splits the classes.
    let separable = generate_synthetic_corpus(
        &SynthSpec {
            negation: 30,
            noise: 30,
            ..Default::default()
        },
        42,
    );
    let oracle_best = grid_best_f(&separable, &lexicons);
    assert!(
        (oracle_best - 1.0).abs() < 1e-12,
        "grid oracle should certify a perfect optimum, found {oracle_best}"
    );

    let params = SaParams::default();
    let (model, history) = tune(&separable, &lexicons, &params).unwrap();
    let tuned_f = history.last().copied().unwrap();
    assert!(
        (tuned_f - 1.0).abs() < 1e-12,
        "tuner reached F={tuned_f}, oracle certifies 1.0"
    );
    assert!(
        history.windows(2).all(|w| w[0] <= w[1]),
        "best-so-far history must be non-decreasing"
    );

    // Non-decreasing history also on a mixed, non-separable dev set.
    let mixed = generate_synthetic_corpus(
        &SynthSpec {
            negation: 10,
            numeric: 10,
            antonym: 10,
            structural: 10,
            noise: 40,
        },
        7,
    );
    let (_, mixed_history) = tune(
        &mixed,
        &lexicons,
        &SaParams {
            iterations: 800,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(mixed_history.windows(2).all(|w| w[0] <= w[1]));

    // Identical seeds give byte-identical models.
    let (again, again_history) = tune(&separable, &lexicons, &params).unwrap();
    assert_eq!(model_to_json(&model), model_to_json(&again));
    assert_eq!(history, again_history);

    println!(
        "acceptance criterion 4: PASS: separable dev tuned to F=1.0 (grid-certified), \
         monotone best-so-far, seed-deterministic"
    );
}

// ---------------------------------------------------------------------------
// criterion 5: fuzzed feature invariants
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_feature_invariants() {
    let lexicons = Lexicons::builtin();
    let mut contentful_reflexive = 0;

    for seed in 0..1000u64 {
        let pair = random_annotated_pair(&format!("acc-{seed}"), seed);
        let fv = extract_feature_vector(&pair, &lexicons);
        let values = fv.to_array();

        // Range.
        for (i, v) in values.iter().enumerate() {
            assert!((0.0..=1.0).contains(v), "seed {seed}: feature {i} = {v}");
        }

        // Premise/hypothesis symmetry.
        let mut swapped = pair.clone();
        std::mem::swap(&mut swapped.premise, &mut swapped.hypothesis);
        assert_eq!(
            values,
            extract_feature_vector(&swapped, &lexicons).to_array(),
            "seed {seed}: asymmetric features"
        );

        // Reflexivity.
        let mut reflexive = pair.clone();
        reflexive.hypothesis = reflexive.premise.clone();
        let rfv = extract_feature_vector(&reflexive, &lexicons);
        assert_eq!(rfv.sentiment_disagreement, 0.0, "seed {seed}");
        assert_eq!(rfv.ne_mismatch, 0.0, "seed {seed}");
        assert_eq!(rfv.length_difference, 0.0, "seed {seed}");
        assert_eq!(rfv.negation, 0.0, "seed {seed}");
        assert_eq!(rfv.srl_mismatch, 0.0, "seed {seed}");
        if rfv.common_words > 0.0 {
            assert_eq!(rfv.common_words, 1.0, "seed {seed}");
            assert!((rfv.cosine_similarity - 1.0).abs() < 1e-12, "seed {seed}");
            contentful_reflexive += 1;
        }

        // Cosine against a direct dot/norm computation.
        let brute = {
            use std::collections::BTreeMap;
            let bag = |s: &contra_core::corpus::AnnotatedSentence| {
                let mut m: BTreeMap<String, f64> = BTreeMap::new();
                for t in &s.tokens {
                    if t.pos != contra_core::corpus::PosTag::PUNC
                        && !lexicons.markers.is_stopword(&t.lemma)
                    {
                        *m.entry(t.lemma.clone()).or_insert(0.0) += 1.0;
                    }
                }
                m
            };
            let (a, b) = (bag(&pair.premise), bag(&pair.hypothesis));
            let dot: f64 = a
                .iter()
                .filter_map(|(k, va)| b.get(k).map(|vb| va * vb))
                .sum();
            let na = a.values().map(|v| v * v).sum::<f64>().sqrt();
            let nb = b.values().map(|v| v * v).sum::<f64>().sqrt();
            if na == 0.0 || nb == 0.0 {
                0.0
            } else {
                dot / (na * nb)
            }
        };
        assert!(
            (fv.cosine_similarity - brute).abs() < 1e-9,
            "seed {seed}: cosine {} vs brute {brute}",
            fv.cosine_similarity
        );
    }

    assert!(contentful_reflexive > 300, "degenerate fuzz distribution");
    println!(
        "acceptance criterion 5: PASS: 1000 random pairs: range, symmetry, reflexivity, \
         cosine within 1e-9"
    );
}

// ---------------------------------------------------------------------------
// criterion 6: byte-identical CLI outputs
// ---------------------------------------------------------------------------

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

#[test]
fn criterion_6_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = contra(
        &[
            "synth",
            "--negation", "30",
            "--numeric", "30",
            "--antonym", "30",
            "--structural", "30",
            "--noise", "60",
            "--seed", "42",
            "--dev-fraction", "0.7",
            "--out", "corpus.jsonl",
        ],
        dir.path(),
    );
    expect_success(&out, "synth");

    // Identical flags in two per-round working directories; every file and
    // every stdout must agree byte for byte.
    let mut stdouts: Vec<Vec<Vec<u8>>> = Vec::new();
    for round in ["a", "b"] {
        let round_dir = dir.path().join(round);
        std::fs::create_dir(&round_dir).unwrap();
        let mut captured = Vec::new();

        let mine = contra(
            &["mine", "--corpus", "../corpus.dev.jsonl", "--out", "rules.json"],
            &round_dir,
        );
        expect_success(&mine, "mine");
        captured.push(mine.stdout);

        let tune = contra(
            &[
                "tune",
                "--corpus", "../corpus.dev.jsonl",
                "--iterations", "500",
                "--seed", "42",
                "--out", "model.json",
            ],
            &round_dir,
        );
        expect_success(&tune, "tune");
        captured.push(tune.stdout);

        let classify = contra(
            &[
                "classify",
                "--corpus", "../corpus.test.jsonl",
                "--rulebase", "rules.json",
                "--model", "model.json",
                "--mode", "vote",
                "--out", "verdicts.jsonl",
            ],
            &round_dir,
        );
        expect_success(&classify, "classify");
        captured.push(classify.stdout);

        let eval = contra(
            &[
                "eval",
                "--corpus", "../corpus.test.jsonl",
                "--rulebase", "rules.json",
                "--model", "model.json",
                "--mode", "vote",
                "--out", "report.json",
            ],
            &round_dir,
        );
        expect_success(&eval, "eval");
        captured.push(eval.stdout);
        stdouts.push(captured);
    }

    for name in ["rules.json", "model.json", "verdicts.jsonl", "report.json"] {
        assert_eq!(
            read(&dir.path().join("a"), name),
            read(&dir.path().join("b"), name),
            "{name} differs between identical runs"
        );
    }
    assert_eq!(stdouts[0], stdouts[1], "stdout differs between identical runs");
    println!(
        "acceptance criterion 6: PASS: mine/tune/classify/eval byte-identical across reruns"
    );
}

// ---------------------------------------------------------------------------
// criterion 7: round-trips and error classes
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_round_trips_and_error_classes() {
    let dir = tempfile::tempdir().unwrap();
    let lexicons = Lexicons::builtin();

    // Corpus JSONL round-trip.
    let corpus = generate_synthetic_corpus(
        &SynthSpec {
            negation: 10,
            numeric: 10,
            antonym: 10,
            structural: 10,
            noise: 20,
        },
        9,
    );
    let jsonl = corpus_to_jsonl(&corpus);
    let (reloaded, warnings) = parse_corpus_str(&jsonl, true).unwrap();
    assert!(warnings.is_empty());
    assert_eq!(reloaded.pairs, corpus.pairs);
    assert_eq!(corpus_to_jsonl(&reloaded), jsonl, "corpus bytes not stable");

    // Rule-base round-trip at full float precision.
    let transactions: Vec<_> = corpus
        .pairs
        .iter()
        .map(|p| contra_core::tuples::extract_transaction(p, &lexicons))
        .collect();
    let rb = contra_core::mining::mine_rulebase(
        &transactions,
        &MiningParams::default(),
        &contra_core::mining::CategoryMapping::builtin(),
        false,
    )
    .unwrap();
    let rb_path = dir.path().join("rules.json");
    save_rulebase(&rb, &rb_path).unwrap();
    let rb2 = load_rulebase(&rb_path).unwrap();
    assert_eq!(rb, rb2);
    assert_eq!(rulebase_to_json(&rb), rulebase_to_json(&rb2));

    // Model round-trip.
    let (dev, _) = split_corpus(&corpus, 0.5, 1).unwrap();
    let (model, _) = tune(
        &dev,
        &lexicons,
        &SaParams {
            iterations: 200,
            ..Default::default()
        },
    )
    .unwrap();
    let model_path = dir.path().join("model.json");
    contra_core::baseline::save_model(&model, &model_path).unwrap();
    assert_eq!(contra_core::baseline::load_model(&model_path).unwrap(), model);

    // Malformed fixtures exit with their error class.
    std::fs::write(dir.path().join("corpus.jsonl"), jsonl).unwrap();

    let out = contra(&["validate", "--corpus", "missing.jsonl"], dir.path());
    assert_eq!(out.status.code(), Some(2), "missing corpus file must exit 2");

    let mut broken = corpus_to_jsonl(&corpus);
    broken = broken.replacen("\"gold_label\":\"contradiction\"", "\"gold_label\":\"maybe\"", 1);
    std::fs::write(dir.path().join("broken.jsonl"), broken).unwrap();
    let out = contra(&["validate", "--corpus", "broken.jsonl"], dir.path());
    assert_eq!(out.status.code(), Some(1), "malformed corpus must exit 1");
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("line 1"),
        "diagnostic must cite the line"
    );

    let mut bad_rb = rulebase_to_json(&rb);
    bad_rb = bad_rb.replacen("\"confidence\": 1.0", "\"confidence\": 1.2", 1);
    std::fs::write(dir.path().join("bad_rules.json"), bad_rb).unwrap();
    let out = contra(
        &[
            "eval",
            "--corpus", "corpus.jsonl",
            "--rulebase", "bad_rules.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1), "corrupt rule base must exit 1");

    let mut stale = rulebase_to_json(&rb);
    stale = stale.replacen("\"version\": 1", "\"version\": 7", 1);
    std::fs::write(dir.path().join("stale_rules.json"), stale).unwrap();
    let out = contra(
        &[
            "eval",
            "--corpus", "corpus.jsonl",
            "--rulebase", "stale_rules.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1), "version mismatch must exit 1");

    std::fs::write(dir.path().join("bad_model.json"), "{\"weights\": [2.0]}").unwrap();
    let out = contra(
        &[
            "classify",
            "--corpus", "corpus.jsonl",
            "--rulebase", "rules.json",
            "--model", "bad_model.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1), "corrupt model must exit 1");

    println!(
        "acceptance criterion 7: PASS: corpus/rulebase/model round-trip exactly; \
         malformed inputs exit with their error class"
    );
}
