//! Number formatting shared by every CSV writer.

/// Fixed-point rendering with a negative zero folded into `0`.
pub fn fixed(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Six decimals, the precision used by every tabular output.
pub fn f6(value: f64) -> String {
    fixed(value, 6)
}
