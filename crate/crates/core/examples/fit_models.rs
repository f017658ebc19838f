//! Fit both emission models to the bundled driver table and compare them year by year.
//!
//! cargo run --example fit_models

use emisim::ingest::bundled;
use emisim::model::{self, EmissionModel};
use emisim::ModelKind;

fn main() -> emisim::Result<()> {
    let table = bundled::driver_table();
    let intensity = model::fit(&table, ModelKind::ImpliedIntensity)?;
    let regression = model::fit(&table, ModelKind::LinearRegression)?;

    if let EmissionModel::ImpliedIntensity(m) = &intensity {
        println!(
            "intensity range: {:.4}..{:.4} Mt/TWh, unused drivers {:?}",
            m.diagnostics.kappa_min, m.diagnostics.kappa_max, m.diagnostics.unused_drivers
        );
    }
    if let EmissionModel::LinearRegression(m) = &regression {
        println!("regression coefficients {:?}", m.coefficients);
        println!("residual sum of squares {:.3}", m.diagnostics.residual_sum_of_squares);
    }

    println!("{:>6} {:>10} {:>10} {:>10}", "year", "table", "intensity", "regression");
    for row in table.rows() {
        let d = row.drivers();
        let a = intensity.predict(row.year, &d)?;
        let b = regression.predict(row.year, &d)?;
        let flag = if b.clamped { " (clamped)" } else { "" };
        println!(
            "{:>6} {:>10.2} {:>10.2} {:>10.2}{flag}",
            row.year, row.co2_mt, a.co2_mt, b.co2_mt
        );
    }
    Ok(())
}
