//! `contra`: command-line front end for the contradiction-detection engine.
//!
//! Subcommands mirror the pipeline stages: `validate` and `synth` manage
//! corpora, `mine` builds a rule base from a development set, `tune` fits
//! the feature-scorer weights, `classify` emits per-pair verdicts, and
//! `eval` prints the per-category report.
//!
//! Exit codes: 0 success, 1 data/domain error, 2 usage or configuration
//! error. All outputs are reproducible from (inputs, flags, seed).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use contra_core::baseline::{
    load_model, save_model, tune, BaselineError, BaselineModel, SaParams,
};
use contra_core::corpus::{load_corpus, save_corpus, split_corpus, Corpus, CorpusError};
use contra_core::evaluation::{
    evaluate_with_verdicts, report_to_json, report_to_table, EvalError,
};
use contra_core::lexicons::{load_lexicons, LexiconError, Lexicons};
use contra_core::matchers::{detect_lenient, DetectionMode, MatchError};
use contra_core::mining::{
    load_rulebase, mine_rulebase, save_rulebase, CategoryMapping, MiningError, MiningParams,
};
use contra_core::synth::{generate_synthetic_corpus, SynthSpec};
use contra_core::tuples::extract_transaction;

#[derive(Parser)]
#[command(name = "contra", version, about = "Rule-based contradiction detection for annotated Persian sentence pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LexiconOpts {
    /// Directory with antonyms.tsv, polarity.tsv, stopwords.txt,
    /// neg_quantifiers.txt, neg_adverbs.txt. Falls back to the builtin
    /// fixture resources when unset.
    #[arg(long, env = "CONTRA_LEXICON_DIR")]
    lexicons: Option<PathBuf>,
}

impl LexiconOpts {
    fn load(&self) -> Result<Lexicons> {
        match &self.lexicons {
            Some(dir) => Ok(load_lexicons(dir)?),
            None => Ok(Lexicons::builtin()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus file against the pair schema and invariants.
    Validate {
        #[arg(long)]
        corpus: PathBuf,
        /// Reject unknown fields instead of warning.
        #[arg(long)]
        strict: bool,
    },
    /// Generate a synthetic corpus with planted contradiction patterns.
    Synth {
        /// Pairs with a flipped-polarity verb.
        #[arg(long, default_value_t = 0)]
        negation: usize,
        /// Pairs with differing numerals over a shared noun.
        #[arg(long, default_value_t = 0)]
        numeric: usize,
        /// Pairs with an antonym adjective swap.
        #[arg(long, default_value_t = 0)]
        antonym: usize,
        /// Pairs with swapped agent/patient arguments.
        #[arg(long, default_value_t = 0)]
        structural: usize,
        /// Neutral/entailment pairs without any planted pattern.
        #[arg(long, default_value_t = 0)]
        noise: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also split the corpus: the development fraction goes to
        /// OUT.dev.jsonl, the rest to OUT.test.jsonl.
        #[arg(long)]
        dev_fraction: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mine category rules from a development corpus.
    Mine {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        lexicons: LexiconOpts,
        /// Rule-to-category mapping file (builtin mapping when unset).
        #[arg(long)]
        mapping: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        min_support: f64,
        #[arg(long, default_value_t = 0.7)]
        min_confidence: f64,
        #[arg(long = "max-antecedent", default_value_t = 3)]
        max_antecedent: usize,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tune the feature-scorer weights and threshold on a development
    /// corpus by simulated annealing.
    Tune {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        lexicons: LexiconOpts,
        #[arg(long, default_value_t = 5000)]
        iterations: usize,
        #[arg(long = "initial-temp", default_value_t = 1.0)]
        initial_temperature: f64,
        #[arg(long = "cooling-rate", default_value_t = 0.995)]
        cooling_rate: f64,
        #[arg(long = "step-size", default_value_t = 0.05)]
        step_size: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit one verdict per pair as JSONL.
    Classify {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        rulebase: PathBuf,
        /// Feature-scorer model file; an untuned default when unset.
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        lexicons: LexiconOpts,
        #[arg(long, default_value = "vote")]
        mode: DetectionModeArg,
        #[arg(long)]
        strict: bool,
        /// Verdicts file; stdout when unset.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a test corpus and print the per-category report.
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        rulebase: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        lexicons: LexiconOpts,
        #[arg(long, default_value = "vote")]
        mode: DetectionModeArg,
        #[arg(long)]
        strict: bool,
        /// Report JSON file; the table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
struct DetectionModeArg(DetectionMode);

impl std::str::FromStr for DetectionModeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(DetectionModeArg)
    }
}

/// Data/domain problems exit 1; missing files and other configuration
/// problems exit 2.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<CorpusError>() {
        return match e {
            CorpusError::Io { .. } => 2,
            _ => 1,
        };
    }
    if let Some(e) = err.downcast_ref::<LexiconError>() {
        return match e {
            LexiconError::MissingLexiconFile { .. } => 2,
            _ => 1,
        };
    }
    if let Some(e) = err.downcast_ref::<MiningError>() {
        return match e {
            MiningError::Io { .. } => 2,
            _ => 1,
        };
    }
    if let Some(e) = err.downcast_ref::<BaselineError>() {
        return match e {
            BaselineError::Io { .. } => 2,
            _ => 1,
        };
    }
    if err.downcast_ref::<EvalError>().is_some() || err.downcast_ref::<MatchError>().is_some() {
        return 1;
    }
    2
}

fn load_corpus_reporting_warnings(path: &Path, strict: bool) -> Result<Corpus> {
    let (corpus, warnings) = load_corpus(path, strict)?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    Ok(corpus)
}

fn load_model_or_default(path: &Option<PathBuf>) -> Result<BaselineModel> {
    match path {
        Some(p) => Ok(load_model(p)?),
        None => Ok(BaselineModel::default()),
    }
}

fn cmd_validate(corpus: &Path, strict: bool) -> Result<()> {
    let corpus = load_corpus_reporting_warnings(corpus, strict)?;
    println!("ok: {} pairs", corpus.len());
    Ok(())
}

fn cmd_synth(spec: SynthSpec, seed: u64, dev_fraction: Option<f64>, out: &Path) -> Result<()> {
    if let Some(f) = dev_fraction {
        anyhow::ensure!(
            f > 0.0 && f < 1.0,
            "--dev-fraction must lie strictly between 0 and 1, got {f}"
        );
    }
    let corpus = generate_synthetic_corpus(&spec, seed);
    save_corpus(&corpus, out)?;
    println!(
        "wrote {} pairs to {} (seed {seed})",
        corpus.len(),
        out.display()
    );
    if let Some(fraction) = dev_fraction {
        let (dev, test) = split_corpus(&corpus, fraction, seed)?;
        let dev_path = out.with_extension("dev.jsonl");
        let test_path = out.with_extension("test.jsonl");
        save_corpus(&dev, &dev_path)?;
        save_corpus(&test, &test_path)?;
        println!(
            "split: {} dev pairs to {}, {} test pairs to {}",
            dev.len(),
            dev_path.display(),
            test.len(),
            test_path.display()
        );
    }
    Ok(())
}

fn cmd_mine(
    corpus_path: &Path,
    lexicons: &LexiconOpts,
    mapping: &Option<PathBuf>,
    params: MiningParams,
    strict: bool,
    out: &Path,
) -> Result<()> {
    anyhow::ensure!(
        params.min_support > 0.0 && params.min_support <= 1.0,
        "--min-support must lie in (0,1], got {}",
        params.min_support
    );
    anyhow::ensure!(
        params.min_confidence > 0.0 && params.min_confidence <= 1.0,
        "--min-confidence must lie in (0,1], got {}",
        params.min_confidence
    );
    anyhow::ensure!(
        params.max_antecedent_size >= 1,
        "--max-antecedent must be at least 1"
    );
    let corpus = load_corpus_reporting_warnings(corpus_path, strict)?;
    let lexicons = lexicons.load()?;
    let mapping = match mapping {
        Some(path) => CategoryMapping::load(path)?,
        None => CategoryMapping::builtin(),
    };
    let transactions: Vec<_> = corpus
        .pairs
        .iter()
        .map(|p| extract_transaction(p, &lexicons))
        .collect();
    let rb = mine_rulebase(&transactions, &params, &mapping, strict)?;
    save_rulebase(&rb, out)?;

    let contra_total = rb.rules.iter().filter(|r| r.is_contra()).count();
    println!(
        "mined {} rules ({} CONTRA) from {} transactions",
        rb.rules.len(),
        contra_total,
        transactions.len()
    );
    for category in contra_core::corpus::ContradictionCategory::ALL {
        let n = rb.contra_rules_of(category).count();
        println!("  {category}: {n} rules");
    }
    let uncategorized = rb
        .rules
        .iter()
        .filter(|r| r.is_contra() && r.category.is_none())
        .count();
    println!("  uncategorized: {uncategorized} rules");
    if contra_total == 0 {
        eprintln!("warning: no CONTRA rules survived the support/confidence thresholds");
    }
    println!("rule base written to {}", out.display());
    Ok(())
}

fn cmd_tune(
    corpus_path: &Path,
    lexicons: &LexiconOpts,
    params: SaParams,
    strict: bool,
    out: &Path,
) -> Result<()> {
    anyhow::ensure!(
        params.initial_temperature > 0.0,
        "--initial-temp must be positive"
    );
    anyhow::ensure!(
        params.cooling_rate > 0.0 && params.cooling_rate < 1.0,
        "--cooling-rate must lie strictly between 0 and 1"
    );
    anyhow::ensure!(params.step_size > 0.0, "--step-size must be positive");
    let corpus = load_corpus_reporting_warnings(corpus_path, strict)?;
    let lexicons = lexicons.load()?;
    let (model, history) = tune(&corpus, &lexicons, &params)?;
    save_model(&model, out)?;
    let final_f = history.last().copied().unwrap_or(0.0);
    println!(
        "tuned over {} iterations (seed {}): best dev F = {:.4}",
        params.iterations, params.seed, final_f
    );
    println!("model written to {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    corpus_path: &Path,
    rulebase: &Path,
    model: &Option<PathBuf>,
    lexicons: &LexiconOpts,
    mode: DetectionMode,
    strict: bool,
    out: &Option<PathBuf>,
) -> Result<()> {
    let corpus = load_corpus_reporting_warnings(corpus_path, strict)?;
    let rb = load_rulebase(rulebase)?;
    let model = load_model_or_default(model)?;
    let lexicons = lexicons.load()?;
    let mut lines = String::new();
    for pair in &corpus.pairs {
        let verdict = detect_lenient(pair, &rb, &model, &lexicons, mode);
        lines.push_str(&verdict.to_json_line());
        lines.push('\n');
    }
    match out {
        Some(path) => {
            std::fs::write(path, &lines)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {} verdicts to {}", corpus.len(), path.display());
        }
        None => print!("{lines}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    corpus_path: &Path,
    rulebase: &Path,
    model: &Option<PathBuf>,
    lexicons: &LexiconOpts,
    mode: DetectionMode,
    strict: bool,
    out: &Option<PathBuf>,
) -> Result<()> {
    let corpus = load_corpus_reporting_warnings(corpus_path, strict)?;
    let rb = load_rulebase(rulebase)?;
    let model = load_model_or_default(model)?;
    let lexicons = lexicons.load()?;
    let (report, _) = evaluate_with_verdicts(&corpus, &rb, &model, &lexicons, mode)?;
    print!("{}", report_to_table(&report));
    for flag in &report.flags {
        eprintln!("note: {flag}");
    }
    if let Some(path) = out {
        std::fs::write(path, report_to_json(&report))
            .with_context(|| format!("cannot write {}", path.display()))?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { corpus, strict } => cmd_validate(&corpus, strict),
        Command::Synth {
            negation,
            numeric,
            antonym,
            structural,
            noise,
            seed,
            dev_fraction,
            out,
        } => cmd_synth(
            SynthSpec {
                negation,
                numeric,
                antonym,
                structural,
                noise,
            },
            seed,
            dev_fraction,
            &out,
        ),
        Command::Mine {
            corpus,
            lexicons,
            mapping,
            min_support,
            min_confidence,
            max_antecedent,
            strict,
            out,
        } => cmd_mine(
            &corpus,
            &lexicons,
            &mapping,
            MiningParams {
                min_support,
                min_confidence,
                max_antecedent_size: max_antecedent,
            },
            strict,
            &out,
        ),
        Command::Tune {
            corpus,
            lexicons,
            iterations,
            initial_temperature,
            cooling_rate,
            step_size,
            seed,
            strict,
            out,
        } => cmd_tune(
            &corpus,
            &lexicons,
            SaParams {
                iterations,
                initial_temperature,
                cooling_rate,
                step_size,
                seed,
            },
            strict,
            &out,
        ),
        Command::Classify {
            corpus,
            rulebase,
            model,
            lexicons,
            mode,
            strict,
            out,
        } => cmd_classify(&corpus, &rulebase, &model, &lexicons, mode.0, strict, &out),
        Command::Eval {
            corpus,
            rulebase,
            model,
            lexicons,
            mode,
            strict,
            out,
        } => cmd_eval(&corpus, &rulebase, &model, &lexicons, mode.0, strict, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            for cause in err.chain().skip(1) {
                eprintln!("  caused by: {cause}");
            }
            ExitCode::from(exit_code_for(&err))
        }
    }
}
