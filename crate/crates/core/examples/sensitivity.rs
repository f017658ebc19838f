//! How the 2030 band responds to halfwidth size, correlation mode and confidence level.
//!
//! cargo run --release --example sensitivity

use emisim::ensemble;
use emisim::ingest::bundled;
use emisim::{CorrelationMode, Halfwidths, HalfwidthSpec, SimulationConfig};

fn band_2030(config: &SimulationConfig) -> emisim::Result<(f64, f64, f64)> {
    let table = bundled::driver_table();
    let result = ensemble::run_simulation(&table, config)?;
    let b = ensemble::bands(&result, &[5.0, 50.0, 95.0])?;
    let r = b.row(2030).expect("2030 is in the table");
    Ok((r.values[0], r.values[1], r.values[2]))
}

fn main() -> emisim::Result<()> {
    let base = SimulationConfig {
        realizations: 5_000,
        ..Default::default()
    };

    println!("halfwidth  mode                      p5      p50     p95");
    for pct in [0.0, 5.0, 10.0, 20.0, 30.0] {
        for mode in [CorrelationMode::CorrelatedPerVariable, CorrelationMode::IndependentPerYear] {
            let config = SimulationConfig {
                halfwidths: Halfwidths::uniform_fraction(pct / 100.0),
                correlation_mode: mode,
                ..base.clone()
            };
            let (lo, mid, hi) = band_2030(&config)?;
            println!("{pct:>8}%  {:<24} {lo:>7.2} {mid:>7.2} {hi:>7.2}", format!("{mode:?}"));
        }
    }

    println!("\nci level (±10% halfwidth)");
    for level in [0.9, 0.95, 0.99] {
        let config = SimulationConfig {
            ci_level: level,
            ..base.clone()
        };
        let (lo, _, hi) = band_2030(&config)?;
        println!("  {level}: p5 {lo:.2}  p95 {hi:.2}");
    }

    // only data-center demand uncertain
    let halfwidths = Halfwidths {
        dc_twh: Some(HalfwidthSpec::FractionOfMean(0.2)),
        ..Halfwidths::uniform_fraction(0.0)
    };
    let config = SimulationConfig {
        halfwidths,
        ..base
    };
    let (lo, mid, hi) = band_2030(&config)?;
    println!("\ndc_twh ±20% only: {lo:.2} {mid:.2} {hi:.2}");
    Ok(())
}
