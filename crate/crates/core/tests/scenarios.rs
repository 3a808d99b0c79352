use std::path::PathBuf;

use wildfire_iga::sim_io::config::FuelSource;
use wildfire_iga::sim_io::{ScenarioConfig, Simulation};

fn load(name: &str) -> ScenarioConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name);
    ScenarioConfig::load(&path).unwrap()
}

#[test]
fn shipped_scenarios_load_and_step() {
    for name in ["model_circle.cfg", "vina_del_mar.cfg", "gran_canaria.cfg"] {
        let mut cfg = load(name);
        cfg.steps = 3;
        let mut sim = Simulation::new(cfg).unwrap();
        let report = sim.run(false).unwrap();
        assert_eq!(report.diverged_at, None, "{name}");
        assert!(sim.state().fuel.values().iter().all(|v| (0.0..=1.0).contains(v)));
    }
}

#[test]
fn map_scenarios_use_two_phase_wind() {
    for name in ["vina_del_mar.cfg", "gran_canaria.cfg"] {
        let cfg = load(name);
        assert!(
            matches!(cfg.fuel, FuelSource::Csv { ref path, .. } if path.exists()),
            "{name}"
        );
        assert_eq!(cfg.wind.len(), 2);
        let [a, b] = [cfg.wind[0].velocity, cfg.wind[1].velocity];
        // South-west wind blowing north-east, then westerly with a northward component.
        assert!(a[0] > 0.0 && a[1] > 0.0);
        assert!(b[0] > 0.0 && b[1] > 0.0 && b[1] < 0.5 * b[0]);
    }
}

#[test]
fn circle_scenario_matches_the_reference_setup() {
    let cfg = load("model_circle.cfg");
    assert_eq!((cfg.nx, cfg.ny, cfg.degree, cfg.steps), (100, 100, 2, 120));
    assert!(cfg.wind.is_empty());
    assert_eq!(cfg.fuel, FuelSource::Constant(1.0));
    assert_eq!(cfg.ignition.center, [50.0, 50.0]);
}
