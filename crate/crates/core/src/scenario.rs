//! Named scenario trajectories, the fixed cross-study alignment table, and the mean scenario.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::AnnualSeries;

/// Publisher of a scenario family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Shell,
    #[serde(rename = "IEA")]
    Iea,
    #[serde(rename = "AIStudy")]
    AiStudy,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Shell => "Shell",
            Family::Iea => "IEA",
            Family::AiStudy => "AIStudy",
        })
    }
}

/// Cross-study grouping of scenarios that tell the same story.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlignmentGroup {
    /// Surge, Lift-Off, Abundance Without Boundaries.
    SurgeGroup,
    /// Archipelagos, Headwinds, Limits To Growth.
    ArchipelagosGroup,
    /// Horizon, High Efficiency, Sustainable AI.
    HorizonGroup,
    /// Baseline, Energy Crisis.
    BaselineCrisisGroup,
}

/// Canonical scenario names and their groups. Lookups ignore case, whitespace, punctuation and
/// a trailing "case".
const ALIGNMENT: &[(&str, AlignmentGroup)] = &[
    ("Surge", AlignmentGroup::SurgeGroup),
    ("Lift-Off", AlignmentGroup::SurgeGroup),
    ("Abundance Without Boundaries", AlignmentGroup::SurgeGroup),
    ("Archipelagos", AlignmentGroup::ArchipelagosGroup),
    ("Headwinds", AlignmentGroup::ArchipelagosGroup),
    ("Limits To Growth", AlignmentGroup::ArchipelagosGroup),
    ("Horizon", AlignmentGroup::HorizonGroup),
    ("High Efficiency", AlignmentGroup::HorizonGroup),
    ("Sustainable AI", AlignmentGroup::HorizonGroup),
    ("Baseline", AlignmentGroup::BaselineCrisisGroup),
    ("Energy Crisis", AlignmentGroup::BaselineCrisisGroup),
];

/// Short forms used in prose ("Abundance", "Base Case").
const ALIASES: &[(&str, &str)] = &[("abundance", "abundancewithoutboundaries"), ("base", "baseline")];

fn normalize(name: &str) -> String {
    let mut key: String = name
        .chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect();
    for suffix in ["case", "scenario"] {
        if key.len() > suffix.len() && key.ends_with(suffix) {
            key.truncate(key.len() - suffix.len());
        }
    }
    for (alias, target) in ALIASES {
        if key == *alias {
            return (*target).to_string();
        }
    }
    key
}

/// The 11 canonical scenario names known to the alignment table.
pub fn known_scenarios() -> impl Iterator<Item = (&'static str, AlignmentGroup)> {
    ALIGNMENT.iter().copied()
}

/// Looks up the alignment group for a scenario name.
pub fn alignment_of(name: &str) -> Result<AlignmentGroup> {
    let key = normalize(name);
    ALIGNMENT
        .iter()
        .find(|(n, _)| normalize(n) == key)
        .map(|&(_, g)| g)
        .ok_or_else(|| Error::UnknownScenarioName(name.to_string()))
}

/// A named trajectory from one scenario family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioTrajectory {
    pub name: String,
    pub family: Family,
    /// Filled in by [`align_scenarios`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alignment: Option<AlignmentGroup>,
    pub series: AnnualSeries,
}

impl ScenarioTrajectory {
    pub fn new(name: impl Into<String>, family: Family, series: AnnualSeries) -> Self {
        Self {
            name: name.into(),
            family,
            alignment: None,
            series,
        }
    }
}

/// Annotates every trajectory with its alignment group.
///
/// Fails on the first name missing from the dictionary, or when a trajectory already carries
/// a group that disagrees with the dictionary.
pub fn align_scenarios(bundle: Vec<ScenarioTrajectory>) -> Result<Vec<ScenarioTrajectory>> {
    bundle
        .into_iter()
        .map(|mut t| {
            let group = alignment_of(&t.name)?;
            if let Some(existing) = t.alignment {
                if existing != group {
                    return Err(Error::InvalidSeries(format!(
                        "{} is tagged {existing:?} but belongs to {group:?}",
                        t.name
                    )));
                }
            }
            t.alignment = Some(group);
            Ok(t)
        })
        .collect()
}

/// Groups already-aligned trajectories. Trajectories without a group are skipped.
pub fn group_by_alignment(
    bundle: &[ScenarioTrajectory],
) -> BTreeMap<AlignmentGroup, Vec<&ScenarioTrajectory>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for t in bundle {
        if let Some(g) = t.alignment {
            out.entry(g).or_default().push(t);
        }
    }
    out
}

/// Fails if two trajectories share the same `(name, family)`.
pub fn ensure_unique(bundle: &[ScenarioTrajectory]) -> Result<()> {
    let mut seen = HashSet::new();
    for t in bundle {
        if !seen.insert((normalize(&t.name), t.family)) {
            return Err(Error::DuplicateScenario {
                name: t.name.clone(),
                family: t.family.to_string(),
            });
        }
    }
    Ok(())
}

/// Pointwise arithmetic mean over the years every trajectory defines.
///
/// Values are summed in sorted order as offsets from the per-year minimum, so the result does
/// not depend on input order and `k` identical inputs return that input bit for bit.
pub fn mean_scenario(trajectories: &[ScenarioTrajectory]) -> Result<AnnualSeries> {
    let first = trajectories
        .first()
        .ok_or(Error::EmptyInput("mean scenario needs at least one trajectory"))?;
    let unit = first.series.unit();
    if let Some(t) = trajectories.iter().find(|t| t.series.unit() != unit) {
        return Err(Error::UnitMismatch {
            expected: unit.to_string(),
            found: t.series.unit().to_string(),
        });
    }

    let mut common: BTreeSet<i32> = first.series.years().collect();
    for t in &trajectories[1..] {
        let years: BTreeSet<i32> = t.series.years().collect();
        common.retain(|y| years.contains(y));
    }
    if common.is_empty() {
        return Err(Error::DisjointYearRanges);
    }

    let k = trajectories.len() as f64;
    let points = common
        .into_iter()
        .map(|year| {
            let mut vals: Vec<f64> = trajectories
                .iter()
                .map(|t| t.series.get(year).expect("year is in the intersection"))
                .collect();
            vals.sort_by(f64::total_cmp);
            let lo = vals[0];
            let hi = vals[vals.len() - 1];
            let spread: f64 = vals.iter().map(|v| v - lo).sum();
            (year, (lo + spread / k).clamp(lo, hi))
        })
        .collect();
    AnnualSeries::new(unit, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Unit;
    use proptest::prelude::*;

    fn traj(name: &str, points: Vec<(i32, f64)>) -> ScenarioTrajectory {
        ScenarioTrajectory::new(
            name,
            Family::AiStudy,
            AnnualSeries::new(Unit::MtCO2, points).unwrap(),
        )
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(alignment_of("Lift-Off").unwrap(), AlignmentGroup::SurgeGroup);
        assert_eq!(alignment_of("Lift-Off Case").unwrap(), AlignmentGroup::SurgeGroup);
        assert_eq!(
            alignment_of("Energy Crisis").unwrap(),
            AlignmentGroup::BaselineCrisisGroup
        );
        assert_eq!(
            alignment_of("limits-to-growth").unwrap(),
            AlignmentGroup::ArchipelagosGroup
        );
        assert_eq!(alignment_of("Abundance").unwrap(), AlignmentGroup::SurgeGroup);
        match alignment_of("FooScenario") {
            Err(Error::UnknownScenarioName(n)) => assert_eq!(n, "FooScenario"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn alignment_is_total_over_known_names() {
        let names: Vec<_> = known_scenarios().collect();
        assert_eq!(names.len(), 11);
        for (name, group) in names {
            assert_eq!(alignment_of(name).unwrap(), group);
        }
    }

    #[test]
    fn align_is_idempotent() {
        let bundle: Vec<_> = known_scenarios()
            .map(|(n, _)| traj(n, vec![(2030, 1.0)]))
            .collect();
        let once = align_scenarios(bundle).unwrap();
        let twice = align_scenarios(once.clone()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(group_by_alignment(&once).len(), 4);
    }

    #[test]
    fn align_rejects_unknown_name() {
        let bundle = vec![traj("Surge", vec![(2030, 1.0)]), traj("FooScenario", vec![(2030, 1.0)])];
        assert!(matches!(
            align_scenarios(bundle),
            Err(Error::UnknownScenarioName(n)) if n == "FooScenario"
        ));
    }

    #[test]
    fn duplicate_names_rejected() {
        let bundle = vec![traj("Surge", vec![(2030, 1.0)]), traj("surge", vec![(2030, 2.0)])];
        assert!(matches!(ensure_unique(&bundle), Err(Error::DuplicateScenario { .. })));
    }

    #[test]
    fn midpoint_mean() {
        let m = mean_scenario(&[traj("a", vec![(2030, 10.0)]), traj("b", vec![(2030, 30.0)])])
            .unwrap();
        assert_eq!(m.points(), &[(2030, 20.0)]);
    }

    #[test]
    fn mean_of_quoted_2035_endpoints() {
        let ts: Vec<_> = [115.0, 115.0, 240.0, 35.0]
            .iter()
            .map(|&v| traj("x", vec![(2035, v)]))
            .collect();
        let m = mean_scenario(&ts).unwrap();
        assert_eq!(m.get(2035), Some(126.25));
        assert!((126.25f64 - 123.0).abs() / 123.0 < 0.05);
    }

    #[test]
    fn mean_uses_year_intersection() {
        let m = mean_scenario(&[
            traj("a", vec![(2020, 1.0), (2021, 2.0), (2022, 3.0)]),
            traj("b", vec![(2021, 4.0), (2022, 5.0), (2023, 6.0)]),
        ])
        .unwrap();
        assert_eq!(m.points(), &[(2021, 3.0), (2022, 4.0)]);
    }

    #[test]
    fn mean_errors() {
        assert!(matches!(mean_scenario(&[]), Err(Error::EmptyInput(_))));
        let disjoint = [traj("a", vec![(2020, 1.0)]), traj("b", vec![(2021, 1.0)])];
        assert!(matches!(mean_scenario(&disjoint), Err(Error::DisjointYearRanges)));
        let twh = ScenarioTrajectory::new(
            "c",
            Family::Shell,
            AnnualSeries::new(Unit::TWh, vec![(2020, 1.0)]).unwrap(),
        );
        assert!(matches!(
            mean_scenario(&[traj("a", vec![(2020, 1.0)]), twh]),
            Err(Error::UnitMismatch { .. })
        ));
    }

    fn arb_values(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(0.0f64..1e4, n), 1..7)
    }

    proptest! {
        #[test]
        fn mean_is_permutation_invariant(rows in arb_values(5), seed in any::<u64>()) {
            let ts: Vec<_> = rows.iter()
                .map(|r| traj("x", r.iter().copied().zip(2020..).map(|(v, y)| (y, v)).collect()))
                .collect();
            let mut shuffled = ts.clone();
            // deterministic rotation + reversal as the permutation
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            if seed % 2 == 0 { shuffled.reverse(); }
            prop_assert_eq!(mean_scenario(&ts).unwrap(), mean_scenario(&shuffled).unwrap());
        }

        #[test]
        fn mean_of_copies_is_identity(row in prop::collection::vec(0.0f64..1e6, 1..10), k in 1usize..12) {
            let t = traj("x", row.iter().copied().zip(2000..).map(|(v, y)| (y, v)).collect());
            let copies = vec![t.clone(); k];
            prop_assert_eq!(mean_scenario(&copies).unwrap(), t.series);
        }

        #[test]
        fn mean_is_bounded(rows in arb_values(4)) {
            let ts: Vec<_> = rows.iter()
                .map(|r| traj("x", r.iter().copied().zip(2020..).map(|(v, y)| (y, v)).collect()))
                .collect();
            let m = mean_scenario(&ts).unwrap();
            for (i, (_, v)) in m.points().iter().enumerate() {
                let lo = rows.iter().map(|r| r[i]).fold(f64::INFINITY, f64::min);
                let hi = rows.iter().map(|r| r[i]).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(lo <= *v && *v <= hi);
            }
        }
    }
}
