//! Compound annual growth and doubling-time projections.
//!
//! cargo run --example growth_projections

use emisim::ingest::{cagr_project, doubling_project};

fn main() -> emisim::Result<()> {
    let fast = cagr_project(152.0, 0.15, 2023, 7)?;
    let slow = cagr_project(152.0, 0.037, 2023, 7)?;
    println!("{:>6} {:>10} {:>10}", "year", "15%/yr", "3.7%/yr");
    for ((y, a), (_, b)) in fast.points().iter().zip(slow.points()) {
        println!("{y:>6} {a:>10.2} {b:>10.2}");
    }

    println!();
    for months in [3.4, 6.0, 12.0, 24.0] {
        println!(
            "doubling every {months:>4} months: x{:.2} per year",
            doubling_project(1.0, months, 12.0)?
        );
    }
    Ok(())
}
