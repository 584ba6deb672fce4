//! Fixed-significance float formatting for CSV outputs.

/// Formats `x` with `digits` significant digits.
///
/// Magnitudes in `[1e-4, 1e6)` use plain decimal notation, others scientific.
/// Non-finite values print as `NaN`, `inf` or `-inf`.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

/// Round-trippable form used in raw outputs (17 significant digits).
pub fn raw(x: f64) -> String {
    sig(x, 17)
}

/// Summary form used in aggregate tables (4 significant digits).
pub fn short(x: f64) -> String {
    sig(x, 4)
}
