//! End-to-end checks of the `contra` binary: exit codes, diagnostics, and
//! output shapes for every subcommand.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use contra_core::corpus::corpus_to_jsonl;
use contra_core::synth::{generate_synthetic_corpus, SynthSpec};

fn contra(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contra"))
        .args(args)
        .current_dir(dir)
        .env_remove("CONTRA_LEXICON_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_corpus(dir: &Path, name: &str, spec: &SynthSpec, seed: u64) -> PathBuf {
    let corpus = generate_synthetic_corpus(spec, seed);
    let path = dir.join(name);
    std::fs::write(&path, corpus_to_jsonl(&corpus)).unwrap();
    path
}

fn small_spec() -> SynthSpec {
    SynthSpec {
        negation: 10,
        numeric: 10,
        antonym: 10,
        structural: 10,
        noise: 20,
    }
}

#[test]
fn validate_accepts_a_well_formed_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let out = contra(&["validate", "--corpus", corpus.to_str().unwrap(), "--strict"], dir.path());
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("ok: 60 pairs"));
}

#[test]
fn validate_cites_the_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let mut content = std::fs::read_to_string(&corpus).unwrap();
    // Corrupt the second record with an out-of-range head.
    content = {
        let mut lines: Vec<String> = content.lines().map(str::to_string).collect();
        lines[1] = lines[1].replace("\"head\":4", "\"head\":99");
        lines.join("\n") + "\n"
    };
    std::fs::write(&corpus, content).unwrap();
    let out = contra(&["validate", "--corpus", corpus.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("head out of range"), "stderr: {err}");
}

#[test]
fn validate_missing_file_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = contra(&["validate", "--corpus", "nope.jsonl"], dir.path());
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn unknown_fields_warn_by_default_and_fail_in_strict_mode() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let mut content = std::fs::read_to_string(&corpus).unwrap();
    content = content.replacen("{\"id\":", "{\"extra_field\":1,\"id\":", 1);
    std::fs::write(&corpus, content).unwrap();

    let out = contra(&["validate", "--corpus", corpus.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("extra_field"), "stderr: {}", stderr(&out));

    let out = contra(&["validate", "--corpus", corpus.to_str().unwrap(), "--strict"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn classify_requires_a_rulebase_argument() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let out = contra(&["classify", "--corpus", corpus.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_with_missing_rulebase_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let out = contra(
        &["eval", "--corpus", corpus.to_str().unwrap(), "--rulebase", "nope.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn corrupt_rulebase_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let rules = dir.path().join("rules.json");
    std::fs::write(&rules, "{\"version\": 9}").unwrap();
    let out = contra(
        &[
            "eval",
            "--corpus",
            corpus.to_str().unwrap(),
            "--rulebase",
            rules.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
}

fn mine_small(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let out = contra(
        &[
            "synth",
            "--negation",
            "30",
            "--numeric",
            "30",
            "--antonym",
            "30",
            "--structural",
            "30",
            "--noise",
            "60",
            "--seed",
            "7",
            "--dev-fraction",
            "0.7",
            "--out",
            "corpus.jsonl",
        ],
        dir,
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let dev = dir.join("corpus.dev.jsonl");
    let test = dir.join("corpus.test.jsonl");
    let rules = dir.join("rules.json");
    let out = contra(
        &[
            "mine",
            "--corpus",
            dev.to_str().unwrap(),
            "--out",
            rules.to_str().unwrap(),
        ],
        dir,
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    (dev, test, rules)
}

#[test]
fn mine_reports_rule_counts_per_category() {
    let dir = tempfile::tempdir().unwrap();
    let (_, _, rules) = mine_small(dir.path());
    assert!(rules.exists());
    let listing = contra(
        &[
            "mine",
            "--corpus",
            dir.path().join("corpus.dev.jsonl").to_str().unwrap(),
            "--out",
            rules.to_str().unwrap(),
        ],
        dir.path(),
    );
    let text = stdout(&listing);
    for name in ["NEGATION", "NUMERIC", "ANTONYM", "STRUCTURAL"] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
}

#[test]
fn mine_with_impossible_support_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 3);
    let out = contra(
        &[
            "mine",
            "--corpus",
            corpus.to_str().unwrap(),
            "--min-support",
            "1.0",
            "--out",
            "rules.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(
        stderr(&out).contains("no CONTRA rules"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn eval_prints_the_category_table() {
    let dir = tempfile::tempdir().unwrap();
    let (_, test, rules) = mine_small(dir.path());
    let out = contra(
        &[
            "eval",
            "--corpus",
            test.to_str().unwrap(),
            "--rulebase",
            rules.to_str().unwrap(),
            "--mode",
            "gold",
            "--out",
            "report.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    for name in ["NEGATION", "NUMERIC", "ANTONYM", "STRUCTURAL", "OTHERS", "Average", "Overall"] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["mode"], "gold");
    assert!(report["per_category"]["NEGATION"]["f_measure"].as_f64().unwrap() > 0.9);
}

#[test]
fn classify_emits_verdict_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let (_, test, rules) = mine_small(dir.path());
    let out = contra(
        &[
            "classify",
            "--corpus",
            test.to_str().unwrap(),
            "--rulebase",
            rules.to_str().unwrap(),
            "--mode",
            "vote",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut seen = 0;
    for line in text.lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["id", "label", "category", "fired", "baseline_score", "mode"] {
            assert!(value.get(key).is_some(), "missing {key} in {line}");
        }
        assert_eq!(value["mode"], "vote");
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn unknown_mode_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (_, test, rules) = mine_small(dir.path());
    let out = contra(
        &[
            "classify",
            "--corpus",
            test.to_str().unwrap(),
            "--rulebase",
            rules.to_str().unwrap(),
            "--mode",
            "oracle",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn lexicon_directory_flag_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 5);
    // An empty directory is a configuration error (missing files).
    let empty = dir.path().join("lexicons");
    std::fs::create_dir(&empty).unwrap();
    let out = contra(
        &[
            "mine",
            "--corpus",
            corpus.to_str().unwrap(),
            "--lexicons",
            empty.to_str().unwrap(),
            "--out",
            "rules.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("missing lexicon file"));
}

#[test]
fn tune_writes_a_loadable_model() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "dev.jsonl",
        &SynthSpec {
            negation: 15,
            noise: 15,
            ..Default::default()
        },
        11,
    );
    let out = contra(
        &[
            "tune",
            "--corpus",
            corpus.to_str().unwrap(),
            "--iterations",
            "400",
            "--seed",
            "3",
            "--out",
            "model.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("best dev F"));
    let model = contra_core::baseline::load_model(&dir.path().join("model.json")).unwrap();
    assert_eq!(model.version, 1);
}

#[test]
fn out_of_range_numeric_flags_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(dir.path(), "c.jsonl", &small_spec(), 1);
    let c = corpus.to_str().unwrap();

    let out = contra(
        &["synth", "--negation", "2", "--dev-fraction", "1.5", "--out", "x.jsonl"],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));

    let out = contra(
        &["mine", "--corpus", c, "--min-support", "0", "--out", "r.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));

    let out = contra(
        &["mine", "--corpus", c, "--min-confidence", "1.2", "--out", "r.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));

    let out = contra(
        &["tune", "--corpus", c, "--cooling-rate", "1.0", "--out", "m.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
}

#[test]
fn tune_on_a_single_class_corpus_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "dev.jsonl",
        &SynthSpec {
            negation: 10,
            ..Default::default()
        },
        11,
    );
    let out = contra(
        &[
            "tune",
            "--corpus",
            corpus.to_str().unwrap(),
            "--iterations",
            "50",
            "--out",
            "model.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("single class"));
}
