//! Household equivalents of emission levels and inference energy per task.
//!
//! cargo run --example footprint_equivalents

use emisim::ingest::{bundled, equivalent_homes, inference_energy, InferenceTask};

fn main() -> emisim::Result<()> {
    let table = bundled::driver_table();
    for year in [2024, 2030, 2035] {
        let co2 = table.row(year).expect("year in table").co2_mt;
        println!("{year}: {co2} Mt CO2 ~ {:.2} million homes", equivalent_homes(co2)? / 1e6);
    }

    println!();
    let energies = bundled::inference_energy_table();
    for task in InferenceTask::ALL {
        let e = energies.get(task);
        println!("{:<20} {:>7} Wh per {}", task.key(), e.energy_wh, e.unit);
    }

    // one million image generations
    let wh = inference_energy("image generation", 1_000)?;
    println!("\n1M image generations: {:.3} MWh", wh / 1e6);
    Ok(())
}
