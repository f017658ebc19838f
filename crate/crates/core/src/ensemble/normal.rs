//! Standard-normal quantile and confidence-interval width conversions.

use crate::error::{Error, Result};

/// Inverse of the standard-normal CDF.
///
/// Wichura's AS241 (PPND16) rational approximations; relative accuracy around 1e-16 over the
/// open unit interval. Returns `-inf`/`+inf` at 0 and 1 and NaN outside `[0, 1]`.
#[allow(clippy::inconsistent_digit_grouping, clippy::excessive_precision)]
pub fn inverse_normal_cdf(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = ((((((r * 2509.080_928_730_122_7 + 33430.575_583_588_128) * r
            + 67265.770_927_008_7)
            * r
            + 45921.953_931_549_87)
            * r
            + 13731.693_765_509_461)
            * r
            + 1971.590_950_306_551_3)
            * r
            + 133.141_667_891_784_38)
            * r
            + 3.387_132_872_796_366_5;
        let den = ((((((r * 5226.495_278_852_546 + 28729.085_735_721_943) * r
            + 39307.895_800_092_71)
            * r
            + 21213.794_301_586_597)
            * r
            + 5394.196_021_424_751)
            * r
            + 687.187_007_492_057_9)
            * r
            + 42.313_330_701_600_91)
            * r
            + 1.0;
        return q * num / den;
    }

    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let val = if r <= 5.0 {
        r -= 1.6;
        let num = ((((((r * 7.745_450_142_783_414e-4 + 0.022_723_844_989_269_184) * r
            + 0.241_780_725_177_450_6)
            * r
            + 1.270_458_252_452_368_4)
            * r
            + 3.647_848_324_763_204_5)
            * r
            + 5.769_497_221_460_691)
            * r
            + 4.630_337_846_156_545)
            * r
            + 1.423_437_110_749_683_5;
        let den = ((((((r * 1.050_750_071_644_416_8e-9 + 5.475_938_084_995_345e-4) * r
            + 0.015_198_666_563_616_457)
            * r
            + 0.148_103_976_427_480_07)
            * r
            + 0.689_767_334_985_1)
            * r
            + 1.676_384_830_183_803_8)
            * r
            + 2.053_191_626_637_759)
            * r
            + 1.0;
        num / den
    } else {
        r -= 5.0;
        let num = ((((((r * 2.010_334_399_292_288e-7 + 2.711_555_568_743_487_6e-5) * r
            + 0.001_242_660_947_388_078_4)
            * r
            + 0.026_532_189_526_576_124)
            * r
            + 0.296_560_571_828_504_9)
            * r
            + 1.784_826_539_917_291_3)
            * r
            + 5.463_784_911_164_114)
            * r
            + 6.657_904_643_501_103;
        let den = ((((((r * 2.044_263_103_389_939_7e-15 + 1.421_511_758_316_446e-7) * r
            + 1.846_318_317_510_054_8e-5)
            * r
            + 7.868_691_311_456_133e-4)
            * r
            + 0.014_875_361_290_850_615)
            * r
            + 0.136_929_880_922_735_8)
            * r
            + 0.599_832_206_555_888)
            * r
            + 1.0;
        num / den
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

/// Two-sided critical value `z` such that `mean +/- z*sigma` covers `level` of a normal.
pub fn two_sided_z(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    Ok(inverse_normal_cdf(0.5 * (1.0 + level)))
}

/// Standard deviation whose symmetric `level` interval has the given halfwidth.
pub fn ci_to_sigma(halfwidth: f64, level: f64) -> Result<f64> {
    if halfwidth.is_nan() || halfwidth < 0.0 {
        return Err(Error::NegativeInput(halfwidth));
    }
    Ok(halfwidth / two_sided_z(level)?)
}

/// Halfwidth of the symmetric `level` interval for a normal with standard deviation `sigma`.
pub fn sigma_to_ci(sigma: f64, level: f64) -> Result<f64> {
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::NegativeInput(sigma));
    }
    Ok(sigma * two_sided_z(level)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use statrs::distribution::{ContinuousCDF, Normal};

    // Tabulated standard-normal quantiles.
    const TABLE: &[(f64, f64)] = &[
        (0.5, 0.0),
        (0.975, 1.959_963_984_540_054),
        (0.995, 2.575_829_303_548_900_4),
        (0.95, 1.644_853_626_951_472_2),
        (0.9, 1.281_551_565_544_600_5),
        (0.999, 3.090_232_306_167_813_5),
        (0.025, -1.959_963_984_540_054),
        (1e-10, -6.361_340_902_404_056),
    ];

    #[test]
    fn matches_tabulated_quantiles() {
        for &(p, z) in TABLE {
            assert!((inverse_normal_cdf(p) - z).abs() < 1e-9, "p={p}");
        }
    }

    #[test]
    fn agrees_with_independent_implementation() {
        let n = Normal::new(0.0, 1.0).unwrap();
        for i in 1..2000 {
            let p = f64::from(i) / 2000.0;
            assert!((inverse_normal_cdf(p) - n.inverse_cdf(p)).abs() < 1e-9, "p={p}");
        }
        for p in [1e-300, 1e-100, 1e-20, 1e-12, 1e-6, 1.0 - 1e-12] {
            let want = n.inverse_cdf(p);
            assert!((inverse_normal_cdf(p) - want).abs() < 1e-9 * want.abs().max(1.0), "p={p}");
        }
    }

    #[test]
    fn edges() {
        assert_eq!(inverse_normal_cdf(0.0), f64::NEG_INFINITY);
        assert_eq!(inverse_normal_cdf(1.0), f64::INFINITY);
        assert!(inverse_normal_cdf(1.5).is_nan());
    }

    #[test]
    fn ci_examples() {
        assert!((ci_to_sigma(2.575_829_3, 0.99).unwrap() - 1.0).abs() < 1e-8);
        assert!((ci_to_sigma(1.959_964, 0.95).unwrap() - 1.0).abs() < 1e-8);
        assert_eq!(ci_to_sigma(0.0, 0.7).unwrap(), 0.0);
        // 10% of the 2030 data-center demand
        assert!((ci_to_sigma(91.8, 0.99).unwrap() - 35.639_007_551).abs() < 1e-6);
    }

    #[test]
    fn ci_errors() {
        assert!(matches!(ci_to_sigma(1.0, 1.0), Err(Error::InvalidLevel(_))));
        assert!(matches!(ci_to_sigma(1.0, 0.0), Err(Error::InvalidLevel(_))));
        assert!(matches!(ci_to_sigma(-1.0, 0.9), Err(Error::NegativeInput(_))));
    }

    proptest! {
        #[test]
        fn ci_round_trip(h in 0.0f64..1e6, level in 0.01f64..0.9999) {
            let back = sigma_to_ci(ci_to_sigma(h, level).unwrap(), level).unwrap();
            prop_assert!((back - h).abs() <= 1e-12 * h.max(1.0));
        }

        #[test]
        fn quantile_is_antisymmetric(p in 1e-6f64..0.5) {
            prop_assert!((inverse_normal_cdf(p) + inverse_normal_cdf(1.0 - p)).abs() < 1e-6);
        }
    }
}
