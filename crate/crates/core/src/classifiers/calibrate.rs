//! Cross-validated sign choice for NCC.

use crate::classifiers::{fit_ncc, Classifier, NccConfig};
use crate::data::{ClassId, Dataset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Stratified fold assignment: the i-th observation of each class goes to
/// fold `i % folds`. Returns the observation indices of every fold.
pub fn stratified_folds<T: Scalar>(d: &Dataset<T>, folds: usize) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::Config("at least 2 folds required".into()));
    }
    for c in [ClassId::Omega1, ClassId::Omega2] {
        if d.count(c) < folds {
            return Err(Error::InsufficientData(format!(
                "class {c} has {} observations, fewer than {folds} folds",
                d.count(c)
            )));
        }
    }
    let mut out = vec![Vec::new(); folds];
    let mut seen = [0usize; 2];
    for (i, o) in d.observations().iter().enumerate() {
        let slot = &mut seen[(o.label() == ClassId::Omega2) as usize];
        out[*slot % folds].push(i);
        *slot += 1;
    }
    Ok(out)
}

/// k-fold stratified cross-validated error of the unflipped NCC rule.
pub fn cv_error<T: Scalar>(d: &Dataset<T>, folds: usize, cfg: &NccConfig) -> Result<f64> {
    let assignment = stratified_folds(d, folds)?;
    let mut wrong = 0usize;
    for held in &assignment {
        let mut in_fold = vec![false; d.len()];
        held.iter().for_each(|&i| in_fold[i] = true);
        let train_idx: Vec<usize> = (0..d.len()).filter(|&i| !in_fold[i]).collect();
        let model = fit_ncc(&d.select(&train_idx), cfg.mode, cfg.outer_owner, cfg.max_depth)?;
        wrong += held
            .iter()
            .filter(|&&i| {
                let o = &d.observations()[i];
                model.predict(o.features()) != o.label()
            })
            .count();
    }
    Ok(wrong as f64 / d.len() as f64)
}

/// `true` when the cross-validated NCC error exceeds one half.
pub fn calibrate_sign<T: Scalar>(d: &Dataset<T>, folds: usize, cfg: &NccConfig) -> Result<bool> {
    Ok(cv_error(d, folds, cfg)? > 0.5)
}
