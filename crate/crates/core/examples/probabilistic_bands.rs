//! Run the default ensemble (10 000 realizations, seed 42, ±10% at 99% confidence) and print
//! the P5/P50/P95 bands next to the deterministic table values.
//!
//! cargo run --release --example probabilistic_bands

use emisim::ensemble::{self, export};
use emisim::ingest::bundled;
use emisim::SimulationConfig;

fn main() -> emisim::Result<()> {
    let table = bundled::driver_table();
    let config = SimulationConfig::default();
    let result = ensemble::run_simulation(&table, &config)?;
    let bands = ensemble::bands(&result, &config.percentiles)?;

    println!(
        "{} realizations, seed {}, {} driver clamps",
        result.n_realizations(),
        result.master_seed,
        result.driver_clamps
    );
    println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "year", "table", "p5", "p50", "p95");
    for row in &bands.rows {
        let det = table.row(row.year).map(|r| r.co2_mt).unwrap_or(f64::NAN);
        println!(
            "{:>6} {:>8.2} {:>8.2} {:>8.2} {:>8.2}",
            row.year, det, row.values[0], row.values[1], row.values[2]
        );
    }
    print!("\n{}", export::bands_to_csv(&bands));
    Ok(())
}
