//! Monte-Carlo error-rate estimation.
//!
//! Each trial draws a fresh balanced training set, fits every requested rule
//! and scores it on a test set that is fixed per `(experiment, p)`. Trials are
//! independent units of work; results are gathered in trial order, so the
//! summary does not depend on how many workers ran them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{
    calibrate_sign, fit_lda, fit_ncc, fit_qda, Classifier, ClassifierKind, LdaModel, NccConfig, NccModel,
    NcdaModel,
};
use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::geometry::SurfaceMode;
use crate::linalg::{Matrix, RegularizationLadder};
use crate::rng::{derive_stream, SeedSpec};
use crate::scalar::Scalar;
use crate::simulation::distributions::{sample_mixture, GaussianComponent, MixtureSpec};

/// Row label of the cross-validated, possibly flipped NCC.
pub const NCC_CALIBRATED: &str = "NCC-CV";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExperimentId {
    /// `N(0, I)` against `N(c1, I)`.
    #[serde(rename = "EXP1")]
    Exp1,
    /// Bimodal `½N(0, I) + ½N(2c1, I)` against `N(c1, I)`.
    #[serde(rename = "EXP2")]
    Exp2,
    /// `½N(0, I) + ½N(2c1, I)` against `½N(c1, I) + ½N(3c1, I)`.
    #[serde(rename = "EXP3")]
    Exp3,
}

impl ExperimentId {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentId::Exp1 => "EXP1",
            ExperimentId::Exp2 => "EXP2",
            ExperimentId::Exp3 => "EXP3",
        }
    }
}

impl std::str::FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EXP1" => Ok(ExperimentId::Exp1),
            "EXP2" => Ok(ExperimentId::Exp2),
            "EXP3" => Ok(ExperimentId::Exp3),
            _ => Err(Error::Config(format!("unknown experiment {s:?}"))),
        }
    }
}

impl std::fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Class populations `(F1, F2)` of an experiment in `p` dimensions.
pub fn populations(id: ExperimentId, p: usize, c: f64) -> (MixtureSpec, MixtureSpec) {
    let at = |k: f64| GaussianComponent::isotropic(vec![k * c; p]);
    let bimodal = |a: f64, b: f64| MixtureSpec::equal(vec![at(a), at(b)]).expect("two equal weights");
    match id {
        ExperimentId::Exp1 => (MixtureSpec::single(at(0.0)), MixtureSpec::single(at(1.0))),
        ExperimentId::Exp2 => (bimodal(0.0, 2.0), MixtureSpec::single(at(1.0))),
        ExperimentId::Exp3 => (bimodal(0.0, 2.0), bimodal(1.0, 3.0)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    /// Mean separation `c`.
    pub separation: f64,
    pub dims: Vec<usize>,
    /// Training observations per class.
    pub train_sizes: Vec<usize>,
    pub trials: usize,
    pub test_per_class: usize,
    pub classifiers: Vec<ClassifierKind>,
    pub surface_mode: SurfaceMode,
    pub max_depth: usize,
    pub outer_owner: ClassId,
    pub base_seed: u64,
    /// Also report NCC with its sign chosen by cross-validation.
    pub sign_calibration: bool,
    pub calibration_folds: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentId::Exp1,
            separation: 1.0,
            dims: vec![2, 4, 8, 16],
            train_sizes: vec![10, 20, 40, 80, 160, 200],
            trials: 1000,
            test_per_class: 1000,
            classifiers: ClassifierKind::ALL.to_vec(),
            surface_mode: SurfaceMode::AdjacentPairHull,
            max_depth: 8,
            outer_owner: ClassId::Omega1,
            base_seed: 2009,
            sign_calibration: false,
            calibration_folds: 5,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.separation <= 0.0 || !self.separation.is_finite() {
            return bad("separation must be positive");
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dims must be a non-empty list of positive integers");
        }
        if self.train_sizes.is_empty() || self.train_sizes.contains(&0) {
            return bad("train_sizes must be a non-empty list of positive integers");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.test_per_class == 0 {
            return bad("test_per_class must be at least 1");
        }
        if self.classifiers.is_empty() {
            return bad("at least one classifier required");
        }
        let mut seen = self.classifiers.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.classifiers.len() {
            return bad("classifiers must not repeat");
        }
        if self.max_depth == 0 {
            return bad("max_depth must be at least 1");
        }
        if self.sign_calibration && self.calibration_folds < 2 {
            return bad("calibration_folds must be at least 2");
        }
        Ok(())
    }

    fn ncc_config(&self) -> NccConfig {
        NccConfig {
            mode: self.surface_mode,
            outer_owner: self.outer_owner,
            max_depth: self.max_depth,
        }
    }

    /// Row labels in output order.
    pub fn row_labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for k in &self.classifiers {
            out.push(k.name());
            if *k == ClassifierKind::Ncc && self.sign_calibration {
                out.push(NCC_CALIBRATED);
            }
        }
        out
    }
}

fn draw_labeled<T: Scalar>(f1: &MixtureSpec, f2: &MixtureSpec, per_class: usize, seed: &SeedSpec) -> Dataset<T> {
    let mut stream = derive_stream(seed);
    let a = sample_mixture(f1, per_class, &mut stream);
    let b = sample_mixture(f2, per_class, &mut stream);
    let cast = |m: &Matrix<f64>| {
        Matrix::from_vec(m.rows(), m.cols(), m.as_slice().iter().map(|&v| T::of(v)).collect()).unwrap()
    };
    Dataset::from_class_matrices(&cast(&a), &cast(&b)).expect("generated data is finite")
}

/// The evaluation set shared by every trial and training size at dimension `p`.
pub fn test_set<T: Scalar>(cfg: &ExperimentConfig, p: usize) -> Dataset<T> {
    let (f1, f2) = populations(cfg.experiment, p, cfg.separation);
    let seed = SeedSpec::new(cfg.base_seed, cfg.experiment.name(), p, 0, 0, "test");
    draw_labeled(&f1, &f2, cfg.test_per_class, &seed)
}

/// Training set of one trial: `n` draws per class.
pub fn train_set<T: Scalar>(cfg: &ExperimentConfig, p: usize, n: usize, trial: usize) -> Dataset<T> {
    let (f1, f2) = populations(cfg.experiment, p, cfg.separation);
    let seed = SeedSpec::new(cfg.base_seed, cfg.experiment.name(), p, n, trial, "train");
    draw_labeled(&f1, &f2, n, &seed)
}

/// Outcome of one classifier in one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialError {
    pub classifier: &'static str,
    /// Misclassified fraction of the test set; `None` if fitting failed.
    pub error: Option<f64>,
    pub diagnostic: Option<String>,
}

impl TrialError {
    fn ok(classifier: &'static str, error: f64) -> Self {
        TrialError {
            classifier,
            error: Some(error),
            diagnostic: None,
        }
    }

    fn failed(classifier: &'static str, e: &Error) -> Self {
        TrialError {
            classifier,
            error: None,
            diagnostic: Some(e.to_string()),
        }
    }
}

pub fn run_trial<T: Scalar>(cfg: &ExperimentConfig, p: usize, n: usize, trial: usize) -> Result<Vec<TrialError>> {
    cfg.validate()?;
    let test = test_set::<T>(cfg, p);
    Ok(trial_on(cfg, &test, p, n, trial))
}

fn misclassified<T: Scalar, C: Classifier<T> + ?Sized>(model: &C, test: &Dataset<T>) -> usize {
    test.observations()
        .iter()
        .filter(|o| model.predict(o.features()) != o.label())
        .count()
}

fn trial_on<T: Scalar>(cfg: &ExperimentConfig, test: &Dataset<T>, p: usize, n: usize, trial: usize) -> Vec<TrialError> {
    let train = train_set::<T>(cfg, p, n, trial);
    let ncc_cfg = cfg.ncc_config();
    let ladder = RegularizationLadder::default();
    let total = test.len() as f64;
    let wants = |k| cfg.classifiers.contains(&k);

    let ncc: Option<Result<NccModel<T>>> = (wants(ClassifierKind::Ncc) || wants(ClassifierKind::Ncda))
        .then(|| fit_ncc(&train, ncc_cfg.mode, ncc_cfg.outer_owner, ncc_cfg.max_depth));
    let lda: Option<Result<LdaModel<T>>> =
        (wants(ClassifierKind::Lda) || wants(ClassifierKind::Ncda)).then(|| fit_lda(&train, &ladder));

    let mut out = Vec::new();
    for &kind in &cfg.classifiers {
        let name = kind.name();
        match kind {
            ClassifierKind::Ncc => {
                let outcome = ncc.as_ref().unwrap().as_ref().map(|m| misclassified(m, test));
                match outcome {
                    Ok(wrong) => {
                        out.push(TrialError::ok(name, wrong as f64 / total));
                        if cfg.sign_calibration {
                            match calibrate_sign(&train, cfg.calibration_folds, &ncc_cfg) {
                                Ok(flip) => {
                                    let w = if flip { test.len() - wrong } else { wrong };
                                    out.push(TrialError::ok(NCC_CALIBRATED, w as f64 / total));
                                }
                                Err(e) => out.push(TrialError::failed(NCC_CALIBRATED, &e)),
                            }
                        }
                    }
                    Err(e) => {
                        out.push(TrialError::failed(name, e));
                        if cfg.sign_calibration {
                            out.push(TrialError::failed(NCC_CALIBRATED, e));
                        }
                    }
                }
            }
            ClassifierKind::Lda => match lda.as_ref().unwrap() {
                Ok(m) => out.push(TrialError::ok(name, misclassified(m, test) as f64 / total)),
                Err(e) => out.push(TrialError::failed(name, e)),
            },
            ClassifierKind::Ncda => match (ncc.as_ref().unwrap(), lda.as_ref().unwrap()) {
                (Ok(nm), Ok(lm)) => {
                    let model = NcdaModel {
                        ncc: nm.clone(),
                        lda: lm.clone(),
                    };
                    out.push(TrialError::ok(name, misclassified(&model, test) as f64 / total));
                }
                (Err(e), _) | (_, Err(e)) => out.push(TrialError::failed(name, e)),
            },
            ClassifierKind::Qda => match fit_qda(&train, &ladder) {
                Ok(m) => out.push(TrialError::ok(name, misclassified(&m, test) as f64 / total)),
                Err(e) => out.push(TrialError::failed(name, &e)),
            },
        }
    }
    out
}

/// Per-trial errors of one `(classifier, p, n)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub classifier: &'static str,
    pub p: usize,
    pub n: usize,
    /// Successful trials in trial order.
    pub errors: Vec<f64>,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub experiment: ExperimentId,
    pub classifier: String,
    pub p: usize,
    pub n: usize,
    pub mean_err: f64,
    /// Sample standard deviation over trials; 0 when fewer than two trials.
    pub std_err: f64,
    pub trials: usize,
    /// Set when `std_err` is a placeholder because `trials < 2`.
    #[serde(default)]
    pub std_undefined: bool,
}

impl CellResult {
    fn summary(&self, experiment: ExperimentId) -> Option<SummaryRow> {
        let k = self.errors.len();
        if k == 0 {
            return None;
        }
        let mean = self.errors.iter().sum::<f64>() / k as f64;
        let std = if k > 1 {
            let ss: f64 = self.errors.iter().map(|e| (e - mean) * (e - mean)).sum();
            (ss / (k - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(SummaryRow {
            experiment,
            classifier: self.classifier.to_string(),
            p: self.p,
            n: self.n,
            mean_err: mean,
            std_err: std,
            trials: k,
            std_undefined: k < 2,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<SummaryRow>,
    pub cells: Vec<CellResult>,
    pub diagnostics: Vec<String>,
}

impl ExperimentResult {
    /// Unflipped NCC rows whose mean error exceeds one half.
    pub fn ncc_above_half(&self) -> Vec<&SummaryRow> {
        self.rows
            .iter()
            .filter(|r| r.classifier == ClassifierKind::Ncc.name() && r.mean_err > 0.5)
            .collect()
    }
}

/// Runs every `(p, n, trial)` on the current rayon pool.
pub fn run_experiment<T: Scalar>(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let tests: Vec<Dataset<T>> = cfg.dims.iter().map(|&p| test_set(cfg, p)).collect();

    let jobs: Vec<(usize, usize, usize)> = (0..cfg.dims.len())
        .flat_map(|pi| (0..cfg.train_sizes.len()).flat_map(move |ni| (0..cfg.trials).map(move |t| (pi, ni, t))))
        .collect();
    let outcomes: Vec<Vec<TrialError>> = jobs
        .par_iter()
        .map(|&(pi, ni, t)| trial_on(cfg, &tests[pi], cfg.dims[pi], cfg.train_sizes[ni], t))
        .collect();

    let labels = cfg.row_labels();
    let mut cells = Vec::new();
    let mut diagnostics = Vec::new();
    for &label in &labels {
        for (pi, &p) in cfg.dims.iter().enumerate() {
            for (ni, &n) in cfg.train_sizes.iter().enumerate() {
                let base = (pi * cfg.train_sizes.len() + ni) * cfg.trials;
                let mut cell = CellResult {
                    classifier: label,
                    p,
                    n,
                    errors: Vec::with_capacity(cfg.trials),
                    failures: 0,
                };
                let mut first_failure = None;
                for outcome in &outcomes[base..base + cfg.trials] {
                    let te = outcome.iter().find(|te| te.classifier == label).unwrap();
                    match te.error {
                        Some(e) => cell.errors.push(e),
                        None => {
                            cell.failures += 1;
                            if first_failure.is_none() {
                                first_failure = te.diagnostic.clone();
                            }
                        }
                    }
                }
                if cell.failures > 0 {
                    diagnostics.push(format!(
                        "{label} p={p} n={n}: {} of {} trials failed ({})",
                        cell.failures,
                        cfg.trials,
                        first_failure.unwrap_or_default()
                    ));
                }
                cells.push(cell);
            }
        }
    }
    let rows: Vec<SummaryRow> = cells.iter().filter_map(|c| c.summary(cfg.experiment)).collect();
    for r in rows.iter().filter(|r| r.classifier == ClassifierKind::Ncc.name() && r.mean_err > 0.5) {
        diagnostics.push(format!(
            "NCC p={} n={}: mean error {:.4} exceeds 0.5; the rule is worse than its flip",
            r.p, r.n, r.mean_err
        ));
    }
    if rows.iter().any(|r| r.std_undefined) {
        diagnostics.push("fewer than 2 successful trials in some cells: std_err reported as 0".into());
    }
    Ok(ExperimentResult {
        rows,
        cells,
        diagnostics,
    })
}

/// [`run_experiment`] on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads<T: Scalar>(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment::<T>(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::{bayes_error_exp1, sample_mixture};

    fn small(id: ExperimentId) -> ExperimentConfig {
        ExperimentConfig {
            experiment: id,
            dims: vec![2],
            train_sizes: vec![10, 40],
            trials: 5,
            test_per_class: 200,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn trial_is_deterministic() {
        let cfg = small(ExperimentId::Exp3);
        let a = run_trial::<f64>(&cfg, 2, 10, 3).unwrap();
        let b = run_trial::<f64>(&cfg, 2, 10, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        assert!(a.iter().all(|t| (0.0..=1.0).contains(&t.error.unwrap())));
    }

    #[test]
    fn test_set_fixed_across_trials_and_sizes() {
        let cfg = small(ExperimentId::Exp2);
        let t: Dataset<f64> = test_set(&cfg, 4);
        assert_eq!(t, test_set(&cfg, 4));
        assert_eq!(t.len(), 400);
        // training sets differ by trial and by n
        let a: Dataset<f64> = train_set(&cfg, 4, 10, 0);
        let b: Dataset<f64> = train_set(&cfg, 4, 10, 1);
        assert_ne!(a, b);
        assert_eq!(a.count(ClassId::Omega1), 10);
        assert_eq!(a.count(ClassId::Omega2), 10);
    }

    #[test]
    fn lda_near_bayes_exp1() {
        let cfg = ExperimentConfig {
            classifiers: vec![ClassifierKind::Lda],
            ..small(ExperimentId::Exp1)
        };
        let mut errs = Vec::new();
        for t in 0..10 {
            errs.push(run_trial::<f64>(&cfg, 2, 200, t).unwrap()[0].error.unwrap());
        }
        let mean = errs.iter().sum::<f64>() / errs.len() as f64;
        assert!((0.20..=0.29).contains(&mean), "{mean}");
        assert!((mean - bayes_error_exp1(2, 1.0)).abs() < 0.04);
    }

    #[test]
    fn exp3_with_degenerate_weights_reduces_to_exp1() {
        let p = 3;
        let (e1f1, e1f2) = populations(ExperimentId::Exp1, p, 1.0);
        let at = |k: f64| GaussianComponent::isotropic(vec![k; p]);
        let f1 = MixtureSpec::new(vec![at(0.0), at(2.0)], vec![1.0, 0.0]).unwrap();
        let f2 = MixtureSpec::new(vec![at(1.0), at(3.0)], vec![1.0, 0.0]).unwrap();
        let seed = SeedSpec::new(5, "EXP1", p, 10, 0, "train");
        let mut s1 = derive_stream(&seed);
        let mut s2 = derive_stream(&seed);
        assert_eq!(sample_mixture(&f1, 30, &mut s1), sample_mixture(&e1f1, 30, &mut s2));
        assert_eq!(sample_mixture(&f2, 30, &mut s1), sample_mixture(&e1f2, 30, &mut s2));
    }

    #[test]
    fn summary_statistics() {
        let cfg = small(ExperimentId::Exp1);
        let res = run_experiment::<f64>(&cfg).unwrap();
        assert_eq!(res.rows.len(), 4 * 2);
        for (row, cell) in res.rows.iter().zip(&res.cells) {
            let m = cell.errors.iter().sum::<f64>() / cell.errors.len() as f64;
            assert!((row.mean_err - m).abs() < 1e-15);
            let v = cell.errors.iter().map(|e| (e - m).powi(2)).sum::<f64>() / (cell.errors.len() - 1) as f64;
            assert!((row.std_err - v.sqrt()).abs() < 1e-15);
            assert!(cell.errors.iter().all(|e| (0.0..=1.0).contains(e)));
            assert_eq!(row.trials, 5);
        }
        let order: Vec<_> = res.rows.iter().map(|r| (r.classifier.as_str(), r.n)).collect();
        assert_eq!(order[0], ("NCC", 10));
        assert_eq!(order[1], ("NCC", 40));
        assert_eq!(order[2], ("NCDA", 10));
    }

    #[test]
    fn single_trial_flags_std() {
        let cfg = ExperimentConfig {
            trials: 1,
            classifiers: vec![ClassifierKind::Lda],
            ..small(ExperimentId::Exp1)
        };
        let res = run_experiment::<f64>(&cfg).unwrap();
        assert!(res.rows.iter().all(|r| r.std_err == 0.0 && r.std_undefined));
        assert!(!res.diagnostics.is_empty());
    }

    #[test]
    fn failures_counted_not_fatal() {
        // n = 1 per class: QDA cannot fit
        let cfg = ExperimentConfig {
            train_sizes: vec![1],
            classifiers: vec![ClassifierKind::Ncc, ClassifierKind::Qda],
            ..small(ExperimentId::Exp1)
        };
        let res = run_experiment::<f64>(&cfg).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.cells[1].failures, 5);
        assert!(res.diagnostics[0].starts_with("QDA p=2 n=1: 5 of 5"));
    }

    #[test]
    fn calibration_adds_rows() {
        let cfg = ExperimentConfig {
            sign_calibration: true,
            classifiers: vec![ClassifierKind::Ncc],
            ..small(ExperimentId::Exp2)
        };
        let res = run_experiment::<f64>(&cfg).unwrap();
        let names: Vec<_> = res.rows.iter().map(|r| r.classifier.as_str()).collect();
        assert_eq!(names, vec!["NCC", "NCC", "NCC-CV", "NCC-CV"]);
        for (raw, cal) in res.cells[..2].iter().zip(&res.cells[2..]) {
            for (a, b) in raw.errors.iter().zip(&cal.errors) {
                assert!(*b == *a || (*b - (1.0 - *a)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn f32_experiment_runs() {
        let res = run_experiment::<f32>(&small(ExperimentId::Exp1)).unwrap();
        assert_eq!(res.rows.len(), 8);
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            ExperimentConfig { trials: 0, ..Default::default() },
            ExperimentConfig { dims: vec![], ..Default::default() },
            ExperimentConfig { separation: -1.0, ..Default::default() },
            ExperimentConfig { classifiers: vec![ClassifierKind::Lda, ClassifierKind::Lda], ..Default::default() },
        ] {
            assert!(cfg.validate().is_err());
        }
    }
}
