use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::HarnessError;
use crate::forge::{Dataset, Example};
use crate::gridworld::{execute_with, goal_satisfied, ActionSymbol, Physics};

/// Token-for-token equality, length included.
pub fn exact_match<S: AsRef<str>, T: AsRef<str>>(prediction: &[S], target: &[T]) -> bool {
    prediction.len() == target.len() && prediction.iter().zip(target).all(|(p, t)| p.as_ref() == t.as_ref())
}

/// The prediction parses, executes without error and satisfies the verb goal.
pub fn semantically_valid<S: AsRef<str>>(prediction: &[S], example: &Example, physics: &Physics) -> bool {
    let Ok(actions) = prediction.iter().map(|t| t.as_ref().parse::<ActionSymbol>()).collect::<Result<Vec<_>, _>>()
    else {
        return false;
    };
    execute_with(&example.world, &actions, physics).is_ok_and(|t| goal_satisfied(example.verb, &t))
}

/// `100 * num / den` with two decimals, rounded half to even.
pub fn format_percent(num: usize, den: usize) -> Option<String> {
    if den == 0 {
        return None;
    }
    let scaled = num as u128 * 10_000;
    let den = den as u128;
    let (mut q, r) = (scaled / den, scaled % den);
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    Some(format!("{}.{:02}", q / 100, q % 100))
}

/// One line of a predictions file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictionRecord {
    pub index: usize,
    pub prediction: Vec<String>,
}

pub fn parse_predictions(text: &str) -> Result<Vec<PredictionRecord>, HarnessError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| HarnessError::MalformedPrediction { line: i + 1, message: e.to_string() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMetrics {
    pub n: usize,
    pub exact_matches: usize,
    pub semantic_valid: usize,
    /// `None` for an empty test set.
    pub exact_match_percent: Option<String>,
    /// Auxiliary, weaker metric: prediction executes and reaches the goal.
    pub semantic_valid_percent: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Digest of the dataset manifest the predictions were scored against.
    pub dataset_digest: String,
    /// Order-independent digest of the prediction records.
    pub predictions_digest: String,
    pub splits: BTreeMap<String, SplitMetrics>,
}

fn predictions_digest(predictions: &[PredictionRecord]) -> String {
    let mut sorted: Vec<&PredictionRecord> = predictions.iter().collect();
    sorted.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.prediction.cmp(&b.prediction)));
    let mut h = Sha256::new();
    for p in sorted {
        h.update(serde_json::to_string(p).expect("record serializes").as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Scores `predictions` on the test set of every split in `splits`.
///
/// Every test example needs exactly one prediction; predictions for other
/// existing examples are ignored.
pub fn evaluate(
    dataset: &Dataset,
    dataset_digest: &str,
    splits: &[&str],
    predictions: &[PredictionRecord],
) -> Result<EvalReport, HarnessError> {
    let mut by_index: HashMap<usize, &PredictionRecord> = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if p.index >= dataset.examples.len() {
            return Err(HarnessError::UnknownIndex(p.index));
        }
        if by_index.insert(p.index, p).is_some() {
            return Err(HarnessError::DuplicatePrediction(p.index));
        }
    }
    let physics = &dataset.config.oracle.physics;
    let mut out = BTreeMap::new();
    for &name in splits {
        let split = dataset.split(name).ok_or_else(|| HarnessError::UnknownSplit(name.to_string()))?;
        if let Some(&missing) = split.test.iter().find(|i| !by_index.contains_key(i)) {
            return Err(HarnessError::MissingPrediction(missing));
        }
        let (exact, valid) = split
            .test
            .par_iter()
            .map(|i| {
                let ex = &dataset.examples[*i];
                let pred = &by_index[i].prediction;
                let target: Vec<&str> = ex.target.iter().map(|s| s.as_str()).collect();
                (exact_match(pred, &target) as usize, semantically_valid(pred, ex, physics) as usize)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let n = split.test.len();
        out.insert(
            name.to_string(),
            SplitMetrics {
                n,
                exact_matches: exact,
                semantic_valid: valid,
                exact_match_percent: format_percent(exact, n),
                semantic_valid_percent: format_percent(valid, n),
            },
        );
    }
    Ok(EvalReport {
        dataset_digest: dataset_digest.to_string(),
        predictions_digest: predictions_digest(predictions),
        splits: out,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitAggregate {
    pub runs: usize,
    pub exact_match_mean: String,
    pub exact_match_std: String,
    pub semantic_valid_mean: String,
    pub semantic_valid_std: String,
}

/// Mean and sample standard deviation over several runs' reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub dataset_digest: String,
    pub predictions_digests: Vec<String>,
    pub splits: BTreeMap<String, SplitAggregate>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

/// Combines reports of several runs on the same dataset. Splits missing from
/// some reports aggregate over the reports that have them.
pub fn aggregate(reports: &[EvalReport]) -> Result<AggregateReport, HarnessError> {
    let first = reports.first().ok_or(HarnessError::NoReports)?;
    if reports.iter().any(|r| r.dataset_digest != first.dataset_digest) {
        return Err(HarnessError::MixedDatasets);
    }
    let mut per_split: BTreeMap<&str, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in reports {
        for (name, m) in &r.splits {
            if m.n == 0 {
                continue;
            }
            let e = per_split.entry(name).or_default();
            e.0.push(100.0 * m.exact_matches as f64 / m.n as f64);
            e.1.push(100.0 * m.semantic_valid as f64 / m.n as f64);
        }
    }
    let splits = per_split
        .into_iter()
        .map(|(name, (em, sv))| {
            let ((em_m, em_s), (sv_m, sv_s)) = (mean_std(&em), mean_std(&sv));
            let agg = SplitAggregate {
                runs: em.len(),
                exact_match_mean: format!("{em_m:.2}"),
                exact_match_std: format!("{em_s:.2}"),
                semantic_valid_mean: format!("{sv_m:.2}"),
                semantic_valid_std: format!("{sv_s:.2}"),
            };
            (name.to_string(), agg)
        })
        .collect();
    Ok(AggregateReport {
        dataset_digest: first.dataset_digest.clone(),
        predictions_digests: reports.iter().map(|r| r.predictions_digest.clone()).collect(),
        splits,
    })
}
