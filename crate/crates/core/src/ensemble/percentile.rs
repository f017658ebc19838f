//! Percentiles by linear interpolation between order statistics.
//!
//! For `n` sorted values and percentile `p`, the rank is `r = (p / 100) * (n - 1)` and the
//! result is `v[floor(r)] + frac(r) * (v[floor(r) + 1] - v[floor(r)])`.

use crate::error::{Error, Result};

pub fn percentile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("percentile of an empty list"));
    }
    check_p(p)?;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(percentile_sorted(&sorted, p))
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 100.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("percentile {p} is not in (0, 100)")))
    }
}

/// Same as [`percentile`] for input already sorted ascending. Panics on an empty slice.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let rank = p / 100.0 * (n - 1) as f64;
    let lo = rank.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = rank - lo as f64;
    // the min keeps rounding from stepping past the next order statistic
    (sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])).min(sorted[lo + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIVE: [f64; 5] = [10.0, 20.0, 30.0, 40.0, 50.0];

    #[test]
    fn worked_examples() {
        assert_eq!(percentile(&FIVE, 50.0).unwrap(), 30.0);
        // rank 0.2: 10 + 0.2 * 10
        assert!((percentile(&FIVE, 5.0).unwrap() - 12.0).abs() < 1e-12);
        // rank 3.8: 40 + 0.8 * 10
        assert!((percentile(&FIVE, 95.0).unwrap() - 48.0).abs() < 1e-12);
    }

    #[test]
    fn unsorted_input() {
        assert_eq!(percentile(&[50.0, 10.0, 40.0, 20.0, 30.0], 50.0).unwrap(), 30.0);
    }

    #[test]
    fn single_value() {
        assert_eq!(percentile(&[7.0], 1.0).unwrap(), 7.0);
        assert_eq!(percentile(&[7.0], 99.0).unwrap(), 7.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(percentile(&[], 50.0), Err(Error::EmptyInput(_))));
        assert!(percentile(&FIVE, 0.0).is_err());
        assert!(percentile(&FIVE, 100.0).is_err());
        assert!(percentile(&FIVE, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn monotone_in_p(mut xs in prop::collection::vec(-1e6f64..1e6, 1..50), a in 1u32..99, b in 1u32..99) {
            xs.sort_by(f64::total_cmp);
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(percentile_sorted(&xs, f64::from(lo)) <= percentile_sorted(&xs, f64::from(hi)));
        }

        #[test]
        fn within_sample_range(xs in prop::collection::vec(-1e6f64..1e6, 1..50), p in 0.001f64..99.999) {
            let v = percentile(&xs, p).unwrap();
            let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo <= v && v <= hi);
        }
    }
}
