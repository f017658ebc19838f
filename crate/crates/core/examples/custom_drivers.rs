//! Build a driver table in code, validate it, write it to CSV and read it back, then run a small
//! ensemble with per-year absolute halfwidths.
//!
//! cargo run --example custom_drivers

use emisim::ensemble::{self, Execution};
use emisim::ingest::{driver_table_to_csv, parse_driver_csv};
use emisim::{validate_driver_table, DriverRow, DriverTable, Halfwidths, HalfwidthSpec, SimulationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows: Vec<DriverRow> = (0..6)
        .map(|i| {
            let t = i as f64;
            DriverRow {
                year: 2030 + i,
                semis_twh: 250.0 + 10.0 * t,
                dc_twh: 900.0 + 60.0 * t,
                mix_factor: 0.45 - 0.02 * t,
                ai_share: 0.5 + 0.03 * t,
                co2_mt: 0.42 * (900.0 + 60.0 * t) * (0.45 - 0.02 * t) * (0.5 + 0.03 * t),
            }
        })
        .collect();

    let mut broken = rows.clone();
    broken[2].ai_share = 1.4;
    if let Err(e) = validate_driver_table(broken) {
        println!("rejected: {e}");
    }

    let table = DriverTable::new(rows)?;
    let dir = std::env::temp_dir().join("emisim-custom-drivers");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("drivers.csv");
    std::fs::write(&path, driver_table_to_csv(&table))?;
    let table = parse_driver_csv(&path)?;
    println!("read back {} rows from {}", table.len(), path.display());

    let mut halfwidths = Halfwidths::uniform_fraction(0.05);
    halfwidths.dc_twh = Some(HalfwidthSpec::Absolute(
        table.years().into_iter().map(|y| (y, 20.0 * f64::from(y - 2029))).collect(),
    ));
    let config = SimulationConfig {
        realizations: 2_000,
        master_seed: 7,
        halfwidths,
        ..Default::default()
    };
    let result = ensemble::run_simulation_with(&table, &config, Execution::Serial)?;
    let bands = ensemble::bands(&result, &config.percentiles)?;
    for row in &bands.rows {
        println!("{} mean {:.2} band {:.2}..{:.2}", row.year, row.mean, row.values[0], row.values[2]);
    }
    Ok(())
}
