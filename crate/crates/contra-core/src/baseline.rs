//! The feature-scorer classifier: weighted sum of the ten features against a
//! decision threshold, with weights and threshold searched by simulated
//! annealing on a development corpus.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Corpus;
use crate::evaluation::{f_measure, precision, recall};
use crate::features::{extract_feature_vector, FeatureVector, SIMILARITY_FEATURES};
use crate::lexicons::Lexicons;

pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("development set contains a single class; tuning needs both")]
    DegenerateDevSet,
    #[error("malformed model file: {0}")]
    MalformedModelFile(String),
    #[error("model file version {found} unsupported (expected {MODEL_VERSION})")]
    VersionMismatch { found: u32 },
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Weights in [-1,1] per feature plus a decision threshold in [0,1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineModel {
    pub weights: [f64; 10],
    pub threshold: f64,
    #[serde(default = "default_version")]
    pub version: u32,
}

fn default_version() -> u32 {
    MODEL_VERSION
}

impl Default for BaselineModel {
    fn default() -> Self {
        BaselineModel {
            weights: [0.1; 10],
            threshold: 0.5,
            version: MODEL_VERSION,
        }
    }
}

impl BaselineModel {
    fn validate(&self) -> Result<(), String> {
        if self.version != MODEL_VERSION {
            return Err(format!("version {}", self.version));
        }
        for (i, w) in self.weights.iter().enumerate() {
            if !w.is_finite() || !(-1.0..=1.0).contains(w) {
                return Err(format!("weight {i} = {w} outside [-1,1]"));
            }
        }
        if !self.threshold.is_finite() || !(0.0..=1.0).contains(&self.threshold) {
            return Err(format!("threshold {} outside [0,1]", self.threshold));
        }
        Ok(())
    }
}

/// Contradiction score of a feature vector: similarity features enter
/// inverted so every weight reads as evidence for contradiction. Clamped
/// to [0,1].
pub fn score_pair(model: &BaselineModel, fv: &FeatureVector) -> f64 {
    let values = fv.to_array();
    let mut score = 0.0;
    for (i, value) in values.iter().enumerate() {
        let oriented = if SIMILARITY_FEATURES.contains(&i) {
            1.0 - value
        } else {
            *value
        };
        score += model.weights[i] * oriented;
    }
    score.clamp(0.0, 1.0)
}

/// True means CONTRADICTION. The boundary score decides positive.
pub fn decide_from_features(model: &BaselineModel, fv: &FeatureVector) -> bool {
    score_pair(model, fv) >= model.threshold
}

/// Extracts the features of a pair and applies the threshold decision.
pub fn decide(
    model: &BaselineModel,
    pair: &crate::corpus::SentencePair,
    lexicons: &Lexicons,
) -> bool {
    decide_from_features(model, &extract_feature_vector(pair, lexicons))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaParams {
    pub iterations: usize,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
    pub step_size: f64,
    pub seed: u64,
}

impl Default for SaParams {
    fn default() -> Self {
        SaParams {
            iterations: 5000,
            initial_temperature: 1.0,
            cooling_rate: 0.995,
            step_size: 0.05,
            seed: 42,
        }
    }
}

impl SaParams {
    fn validate(&self) {
        assert!(self.initial_temperature > 0.0, "initial temperature must be positive");
        assert!(
            self.cooling_rate > 0.0 && self.cooling_rate < 1.0,
            "cooling rate must lie in (0,1)"
        );
        assert!(self.step_size > 0.0, "step size must be positive");
    }
}

/// Standard normal via Box-Muller; two uniform draws per sample.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0,1], keeps ln finite
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Contradiction-class F-measure of a model over cached feature vectors.
fn dev_f_measure(model: &BaselineModel, fvs: &[FeatureVector], gold: &[bool]) -> f64 {
    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut fn_ = 0u64;
    for (fv, &positive) in fvs.iter().zip(gold) {
        let decided = decide_from_features(model, fv);
        match (decided, positive) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    f_measure(precision(tp, fp), recall(tp, fn_))
}

/// Simulated-annealing search for (weights, threshold) maximizing the
/// contradiction-class F-measure on the development corpus.
///
/// One coordinate is perturbed per iteration by a Gaussian step and clamped
/// to its bounds; worse states are accepted with the Metropolis probability
/// under the geometric cooling schedule. Returns the best state ever visited
/// plus the best-so-far objective per iteration. Deterministic per seed.
pub fn tune(
    dev: &Corpus,
    lexicons: &Lexicons,
    params: &SaParams,
) -> Result<(BaselineModel, Vec<f64>), BaselineError> {
    params.validate();
    let fvs: Vec<FeatureVector> = dev
        .pairs
        .iter()
        .map(|p| extract_feature_vector(p, lexicons))
        .collect();
    let gold: Vec<bool> = dev.pairs.iter().map(|p| p.gold.is_contradiction()).collect();
    if !gold.iter().any(|&g| g) || gold.iter().all(|&g| g) {
        return Err(BaselineError::DegenerateDevSet);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut current = BaselineModel::default();
    let mut current_f = dev_f_measure(&current, &fvs, &gold);
    let mut best = current.clone();
    let mut best_f = current_f;
    let mut history = Vec::with_capacity(params.iterations);

    let mut temperature = params.initial_temperature;
    for _ in 0..params.iterations {
        let coord = rng.random_range(0..11usize);
        let step = gaussian(&mut rng) * params.step_size;
        let mut candidate = current.clone();
        if coord < 10 {
            candidate.weights[coord] = (candidate.weights[coord] + step).clamp(-1.0, 1.0);
        } else {
            candidate.threshold = (candidate.threshold + step).clamp(0.0, 1.0);
        }
        let candidate_f = dev_f_measure(&candidate, &fvs, &gold);
        let delta = candidate_f - current_f;
        let accept = delta >= 0.0 || rng.random::<f64>() < (delta / temperature).exp();
        if accept {
            current = candidate;
            current_f = candidate_f;
            if current_f > best_f {
                best = current.clone();
                best_f = current_f;
            }
        }
        history.push(best_f);
        temperature *= params.cooling_rate;
    }
    Ok((best, history))
}

pub fn model_to_json(model: &BaselineModel) -> String {
    let mut s = serde_json::to_string_pretty(model).expect("model serializes");
    s.push('\n');
    s
}

pub fn save_model(model: &BaselineModel, path: &Path) -> Result<(), BaselineError> {
    fs::write(path, model_to_json(model)).map_err(|source| BaselineError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<BaselineModel, BaselineError> {
    let content = fs::read_to_string(path).map_err(|source| BaselineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let model: BaselineModel = serde_json::from_str(&content)
        .map_err(|e| BaselineError::MalformedModelFile(e.to_string()))?;
    if model.version != MODEL_VERSION {
        return Err(BaselineError::VersionMismatch {
            found: model.version,
        });
    }
    model.validate().map_err(BaselineError::MalformedModelFile)?;
    Ok(model)
}
