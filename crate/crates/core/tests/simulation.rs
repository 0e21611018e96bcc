use iregress::estimation::fit;
use iregress::simulation::{
    cell_seed, estimate_wrong_branch_probability, generate_sample, preset, replication_rng, run_comparison_cell,
    run_negative_radius_study, run_parameter_cell, Execution, Law, Method, PredictorLaw, SimulationConfig,
    PRESET_NAMES,
};

fn noiseless(name: &str) -> SimulationConfig {
    let mut model = preset(name).unwrap();
    model.sigma_lambda = 1e-12;
    model.sigma_eta = 1e-12;
    SimulationConfig::new(model, 50, 11, 1)
}

#[test]
fn noiseless_presets_are_recovered() {
    for name in PRESET_NAMES {
        let cfg = noiseless(name);
        let mut rng = replication_rng(cell_seed(cfg.seed, "test", name, cfg.n), 0);
        let sample = generate_sample(&cfg, &mut rng).unwrap();
        let f = fit(&sample.data).unwrap().into_fitted().unwrap();
        for (est, truth) in f.a.iter().zip(&cfg.model.a) {
            assert!((est - truth).abs() < 1e-6, "{name}: {:?}", f.a);
        }
        assert!((f.b - cfg.model.b).abs() < 1e-6, "{name}: b = {}", f.b);
        assert!((f.mu - cfg.model.mu).abs() < 1e-6, "{name}: mu = {}", f.mu);
        assert!(f.objective <= 1e-12, "{name}: objective {}", f.objective);
    }
}

#[test]
fn sequential_and_parallel_runs_agree_exactly() {
    let cfg = SimulationConfig::new(preset("model6").unwrap(), 40, 99, 64);
    let a = run_parameter_cell(&cfg, Execution::Sequential).unwrap();
    let b = run_parameter_cell(&cfg, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let a = run_comparison_cell(&cfg, 0.8, &[Method::LeastSquares, Method::Ccrm], Execution::Sequential).unwrap();
    let b = run_comparison_cell(&cfg, 0.8, &[Method::LeastSquares, Method::Ccrm], Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn different_seeds_give_different_cells() {
    let a = run_parameter_cell(
        &SimulationConfig::new(preset("model1").unwrap(), 20, 1, 20),
        Execution::Sequential,
    )
    .unwrap();
    let b = run_parameter_cell(
        &SimulationConfig::new(preset("model1").unwrap(), 20, 2, 20),
        Execution::Sequential,
    )
    .unwrap();
    assert_ne!(a.parameters, b.parameters);
}

// Predictor centres packed around one point make the slope hard to resolve,
// so the wrong branch is selected often and the bias becomes visible.
#[test]
fn low_signal_slope_bias_matches_formula() {
    let mut cfg = SimulationConfig::new(preset("model1").unwrap(), 20, 5, 2000);
    cfg.predictor_law = vec![PredictorLaw {
        center: Law::Uniform { low: 4.7, high: 5.3 },
        radius: Law::Uniform { low: 0.5, high: 2.5 },
    }];
    let cell = run_parameter_cell(&cfg, Execution::Parallel).unwrap();
    let me = cell.parameter("a1").unwrap().me;
    let check = cell.bias_check.unwrap();
    assert!(cell.wrong_branch.mean > 0.05, "wrong branch {:?}", cell.wrong_branch);
    assert!(me.mean < -3.0 * me.se, "ME {me:?}");
    assert!(check.difference.z().abs() < 3.0, "{check:?}");
}

#[test]
fn wrong_branch_probability_shrinks_with_n() {
    let p = |n| {
        estimate_wrong_branch_probability(
            &SimulationConfig::new(preset("model1").unwrap(), n, 3, 500),
            Execution::Parallel,
        )
        .unwrap()
        .mean
    };
    let (small, large) = (p(20), p(100));
    assert!(small < 0.05 && large <= small, "{small} {large}");
}

#[test]
fn negative_radius_frequency_is_dominated_by_bound() {
    let cfg = SimulationConfig::new(preset("model4").unwrap(), 100, 17, 200);
    let study = run_negative_radius_study(&cfg, Execution::Parallel).unwrap();
    assert!(study.dominated_fraction >= 0.99, "{}", study.dominated_fraction);
}

#[test]
fn comparison_favours_least_squares_when_mu_is_negative() {
    let cfg = SimulationConfig::new(preset("model4").unwrap(), 100, 21, 200);
    let cell = run_comparison_cell(&cfg, 0.8, &[Method::LeastSquares, Method::Ccrm], Execution::Parallel).unwrap();
    let ls = cell.method(Method::LeastSquares).unwrap().average.mean;
    let cc = cell.method(Method::Ccrm).unwrap().average.mean;
    assert!(ls < 0.8 * cc, "{ls} vs {cc}");
}

#[test]
fn methods_are_competitive_when_mu_is_positive() {
    let cfg = SimulationConfig::new(preset("model1").unwrap(), 100, 22, 200);
    let cell = run_comparison_cell(&cfg, 0.8, &[Method::LeastSquares, Method::Ccrm], Execution::Parallel).unwrap();
    let ls = cell.method(Method::LeastSquares).unwrap().average.mean;
    let cc = cell.method(Method::Ccrm).unwrap().average.mean;
    assert!((ls - cc).abs() < 0.02, "{ls} vs {cc}");
}
