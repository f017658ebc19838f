//! Align the bundled scenario trajectories into groups and compute their mean scenario.
//!
//! cargo run --example mean_scenario

use emisim::ingest::bundled;
use emisim::scenario::{align_scenarios, group_by_alignment, mean_scenario};

fn main() -> emisim::Result<()> {
    for bundle in [bundled::ai_co2_scenarios(), bundled::datacenter_scenarios()] {
        let aligned = align_scenarios(bundle.trajectories().to_vec())?;
        for (group, members) in group_by_alignment(&aligned) {
            let names: Vec<_> = members.iter().map(|t| t.name.as_str()).collect();
            println!("{group:?}: {}", names.join(", "));
        }
        for (i, t) in bundle.trajectories().iter().enumerate() {
            println!("  {} anchors {:?}", t.name, bundle.anchors(i));
        }
        let mean = mean_scenario(&aligned)?;
        println!("mean scenario ({}):", mean.unit());
        for (year, v) in mean.points() {
            println!("  {year} {v:.2}");
        }
        println!();
    }
    Ok(())
}
