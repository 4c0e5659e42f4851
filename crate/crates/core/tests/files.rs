use std::fs;

use ncda::classifiers::{fit, load_model, save_model};
use ncda::data::Dataset;
use ncda::geometry::build_cavities;
use ncda::report::{emit_csv, read_summary_csv, render_curves, render_parcoords, render_regions_2d, RegionBounds, RunConfigFile};
use ncda::simulation::{run_experiment, train_set, ExperimentConfig, ExperimentId};
use ncda::{load_dataset, save_dataset, ClassId, Classifier, ClassifierKind, FitConfig, SurfaceMode};
use tempfile::TempDir;

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        experiment: ExperimentId::Exp3,
        dims: vec![2],
        train_sizes: vec![10, 40],
        trials: 4,
        test_per_class: 100,
        ..ExperimentConfig::default()
    }
}

fn training() -> Dataset<f64> {
    train_set::<f64>(&small_config(), 2, 40, 0)
}

#[test]
fn dataset_and_model_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let d = training();
    let data = dir.path().join("train.csv");
    save_dataset(&d, &data).unwrap();
    let back: Dataset<f64> = load_dataset(&data).unwrap();
    assert_eq!(back, d);

    for kind in ClassifierKind::ALL {
        let m = fit(kind, &d, &FitConfig::default()).unwrap();
        let path = dir.path().join(format!("{}.json", kind.name()));
        save_model(&m, &path).unwrap();
        let loaded = load_model::<f64>(&path).unwrap();
        assert_eq!(loaded, m);
        for o in d.observations() {
            assert_eq!(loaded.predict(o.features()), m.predict(o.features()));
        }
    }
}

#[test]
fn summary_csv_round_trips_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let rows = run_experiment::<f64>(&small_config()).unwrap().rows;
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    emit_csv(&rows, &a).unwrap();
    emit_csv(&run_experiment::<f64>(&small_config()).unwrap().rows, &b).unwrap();
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let parsed = read_summary_csv(fs::File::open(&a).unwrap()).unwrap();
    assert_eq!(parsed.len(), rows.len());
    for (p, r) in parsed.iter().zip(&rows) {
        assert_eq!((p.experiment, &p.classifier, p.p, p.n, p.trials), (r.experiment, &r.classifier, r.p, r.n, r.trials));
        assert!((p.mean_err - r.mean_err).abs() <= 5e-7);
        assert!((p.std_err - r.std_err).abs() <= 5e-7);
    }

    let svg = dir.path().join("curves.svg");
    render_curves(&parsed, &svg).unwrap();
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<?xml"));
}

#[test]
fn figures_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let d = training();
    let stack = build_cavities(&d, SurfaceMode::AdjacentPairHull, ClassId::Omega1, 8).unwrap();
    let m = fit(ClassifierKind::Ncda, &d, &FitConfig::default()).unwrap();
    let render = |tag: &str| {
        let pc = dir.path().join(format!("pc-{tag}.svg"));
        let rg = dir.path().join(format!("rg-{tag}.svg"));
        render_parcoords(&d, Some(&stack), &pc).unwrap();
        render_regions_2d(&m, RegionBounds::square(-4.0, 6.0), 32, Some(&d), &rg).unwrap();
        (fs::read(pc).unwrap(), fs::read(rg).unwrap())
    };
    assert_eq!(render("a"), render("b"));
}

#[test]
fn run_config_file_loads() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("exp.json");
    fs::write(
        &path,
        r#"{"schema_version": 1, "experiment": "EXP2", "dims": [2, 4], "trials": 10,
            "surface_mode": "box", "output": {"csv": "exp2.csv"}}"#,
    )
    .unwrap();
    let cfg = RunConfigFile::load(&path).unwrap();
    let e = cfg.experiment_config();
    assert_eq!((e.experiment, e.dims.clone(), e.trials, e.surface_mode), (ExperimentId::Exp2, vec![2, 4], 10, SurfaceMode::Box));
    assert_eq!(e.train_sizes, ExperimentConfig::default().train_sizes);
    assert!(RunConfigFile::load(dir.path().join("missing.json")).is_err());
}
