//! Exact ratios for confidence, similarity and thresholds.

use num_rational::Ratio as NumRatio;

use crate::error::{Error, Result};

/// Non-negative exact ratio. Comparisons are exact (cross-multiplied).
pub type Ratio = NumRatio<u64>;

/// Parses a threshold written either as a decimal (`0.25`, `1`, `.5`) or a
/// fraction (`1/3`).
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let text = text.trim();
    let bad = || Error::Config(format!("not a non-negative ratio: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 18 {
        return Err(bad());
    }
    let int: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let scale = 10u64.pow(frac_part.len() as u32);
    let frac: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(scale)
        .and_then(|v| v.checked_add(frac))
        .ok_or_else(bad)?;
    Ok(Ratio::new(num, scale))
}

/// Renders `r` with exactly `places` decimals, rounding half up.
pub fn format_ratio(r: &Ratio, places: u32) -> String {
    let scale = 10u128.pow(places);
    let num = *r.numer() as u128;
    let den = *r.denom() as u128;
    let scaled = (2 * num * scale + den) / (2 * den);
    let int = scaled / scale;
    let frac = scaled % scale;
    if places == 0 {
        format!("{int}")
    } else {
        format!("{int}.{frac:0width$}", width = places as usize)
    }
}

/// `num / den >= threshold`, exact. `den` must be nonzero.
pub fn ratio_at_least(num: u64, den: u64, threshold: &Ratio) -> bool {
    (num as u128) * (*threshold.denom() as u128) >= (*threshold.numer() as u128) * (den as u128)
}
