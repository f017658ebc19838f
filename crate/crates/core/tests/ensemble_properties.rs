use emisim::ensemble::{self, Execution};
use emisim::ingest::bundled;
use emisim::{CorrelationMode, Halfwidths, SimulationConfig};
use proptest::prelude::*;

fn width_2030(fraction: f64, seed: u64) -> f64 {
    let config = SimulationConfig {
        realizations: 400,
        master_seed: seed,
        halfwidths: Halfwidths::uniform_fraction(fraction),
        ..Default::default()
    };
    let result = ensemble::run_simulation_with(&bundled::driver_table(), &config, Execution::Serial).unwrap();
    let b = ensemble::bands(&result, &[5.0, 95.0]).unwrap();
    b.get(2030, 95.0).unwrap() - b.get(2030, 5.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // same seed means the same standard normals, scaled by sigma
    #[test]
    fn wider_halfwidths_widen_the_band(a in 0.0f64..0.15, extra in 0.001f64..0.1, seed in any::<u64>()) {
        prop_assert!(width_2030(a + extra, seed) >= width_2030(a, seed));
    }

    #[test]
    fn bands_are_ordered(seed in any::<u64>(), per_year in any::<bool>()) {
        let config = SimulationConfig {
            realizations: 200,
            master_seed: seed,
            correlation_mode: if per_year { CorrelationMode::IndependentPerYear } else { CorrelationMode::CorrelatedPerVariable },
            percentiles: vec![1.0, 5.0, 25.0, 50.0, 75.0, 95.0, 99.0],
            ..Default::default()
        };
        let result = ensemble::run_simulation(&bundled::driver_table(), &config).unwrap();
        let b = ensemble::bands(&result, &config.percentiles).unwrap();
        for row in &b.rows {
            prop_assert!(row.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn small_halfwidth_mean_tracks_table() {
    let config = SimulationConfig {
        halfwidths: Halfwidths::uniform_fraction(0.05),
        ..Default::default()
    };
    let result = ensemble::run_simulation(&bundled::driver_table(), &config).unwrap();
    let b = ensemble::bands(&result, &[50.0]).unwrap();
    let mean = b.row(2030).unwrap().mean;
    assert!((mean - 126.0).abs() / 126.0 < 0.02, "{mean}");
}
