//! Datasets compiled into the library.
//!
//! * `table2.csv`: annual drivers and AI-attributed CO2 for 2020-2035.
//! * `inference_energy.csv`: energy per 1000 inferences for six model tasks.
//! * `ai_co2_scenarios.json`: four AI-study CO2 trajectories whose mean is the CO2 column of
//!   the driver table.
//! * `datacenter_electricity_scenarios.json`: data-center demand for the Surge, Archipelagos,
//!   Horizon and Baseline groups.
//!
//! Only stated anchor points are data. Everything in between is linear interpolation and is
//! listed under each trajectory's `provenance.interpolated`.

use super::bundle::ScenarioBundle;
use super::footprint::InferenceEnergyTable;
use crate::drivers::DriverTable;

pub const TABLE2_CSV: &str = include_str!("../../data/table2.csv");
pub const INFERENCE_ENERGY_CSV: &str = include_str!("../../data/inference_energy.csv");
pub const AI_CO2_SCENARIOS_JSON: &str = include_str!("../../data/ai_co2_scenarios.json");
pub const DATACENTER_SCENARIOS_JSON: &str =
    include_str!("../../data/datacenter_electricity_scenarios.json");

pub fn driver_table() -> DriverTable {
    super::parse_driver_str(TABLE2_CSV).expect("bundled driver table is valid")
}

pub fn inference_energy_table() -> InferenceEnergyTable {
    InferenceEnergyTable::parse(INFERENCE_ENERGY_CSV).expect("bundled inference table is valid")
}

pub fn ai_co2_scenarios() -> ScenarioBundle {
    ScenarioBundle::from_json(AI_CO2_SCENARIOS_JSON).expect("bundled AI CO2 scenarios are valid")
}

pub fn datacenter_scenarios() -> ScenarioBundle {
    ScenarioBundle::from_json(DATACENTER_SCENARIOS_JSON)
        .expect("bundled data-center scenarios are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::driver_table_to_csv;
    use crate::scenario::{align_scenarios, mean_scenario, AlignmentGroup};
    use crate::series::Unit;

    #[test]
    fn driver_csv_round_trips_byte_exact() {
        assert_eq!(driver_table_to_csv(&driver_table()), TABLE2_CSV);
    }

    #[test]
    fn bundle_json_round_trips_byte_exact() {
        assert_eq!(ai_co2_scenarios().to_json().unwrap(), AI_CO2_SCENARIOS_JSON);
        assert_eq!(datacenter_scenarios().to_json().unwrap(), DATACENTER_SCENARIOS_JSON);
    }

    #[test]
    fn inference_csv_round_trips_byte_exact() {
        assert_eq!(inference_energy_table().to_csv(), INFERENCE_ENERGY_CSV);
    }

    #[test]
    fn ai_co2_mean_matches_driver_table_at_anchor_years() {
        let b = ai_co2_scenarios();
        assert!(b.trajectories().iter().all(|t| t.series.unit() == Unit::MtCO2));
        let mean = mean_scenario(b.trajectories()).unwrap();
        let table = driver_table();
        for year in [2020, 2021, 2022, 2023, 2024, 2030] {
            let want = table.row(year).unwrap().co2_mt;
            assert!((mean.get(year).unwrap() - want).abs() < 1e-9, "{year}");
        }
        assert_eq!(mean.get(2035), Some(126.25));
    }

    #[test]
    fn bundles_align() {
        let ai = align_scenarios(ai_co2_scenarios().into_trajectories()).unwrap();
        let groups: Vec<_> = ai.iter().map(|t| t.alignment.unwrap()).collect();
        assert_eq!(
            groups,
            vec![
                AlignmentGroup::HorizonGroup,
                AlignmentGroup::ArchipelagosGroup,
                AlignmentGroup::SurgeGroup,
                AlignmentGroup::BaselineCrisisGroup
            ]
        );
        let dc = align_scenarios(datacenter_scenarios().into_trajectories()).unwrap();
        assert_eq!(dc.len(), 4);
    }
}
