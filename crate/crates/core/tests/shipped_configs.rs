use std::path::PathBuf;

use rtemvdr::harness::{ExperimentConfig, Regime};
use rtemvdr::scenario::TextureLaw;

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

#[test]
fn every_shipped_config_loads_and_validates() {
    let mut seen = 0;
    for entry in std::fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let cfg = ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
            cfg.validate().unwrap();
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn baseline_sweep_matches_built_in_scenario() {
    let cfg = ExperimentConfig::load(&configs_dir().join("baseline_sweep.toml")).unwrap();
    let built_in = rtemvdr::Scenario::baseline();
    assert_eq!(cfg.scenario.n_sensors, 4);
    assert_eq!(cfg.regime, Regime::Both);
    assert_eq!(cfg.scenario.texture, TextureLaw::InverseGamma { shape: 2.0 });
    let diff = (cfg.scenario.covariance() - built_in.covariance()).camax();
    assert!(diff < 1e-12, "{diff}");
}
