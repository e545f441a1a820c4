//! Number formatting shared by the text outputs.

/// Six significant digits; scientific notation when `|x| < 1e-3` or
/// `|x| >= 1e6`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let a = x.abs();
    if !(1e-3..1e6).contains(&a) {
        return format!("{x:.5e}");
    }
    let digits = a.log10().floor() as i32;
    let decimals = (5 - digits).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a seventh digit (999999.5 -> 1000000)
    if s.trim_start_matches('-').split('.').next().map_or(0, str::len) > 6 {
        return format!("{x:.5e}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn fixed_and_scientific() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(0.534567891), "0.534568");
        assert_eq!(sig6(-156.944512), "-156.945");
        assert_eq!(sig6(52.35987755), "52.3599");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(999999.7), "1.00000e6");
        assert_eq!(sig6(1.5e6), "1.50000e6");
        assert_eq!(sig6(0.00012345678), "1.23457e-4");
        assert_eq!(sig6(0.001), "0.00100000");
    }
}
