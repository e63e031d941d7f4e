//! Deterministic decimal formatting for emitted files.

/// Formats a float with 17 significant digits in scientific notation.
///
/// 17 significant decimal digits are enough to round-trip any f64 exactly,
/// which makes repeated runs byte-comparable and re-parsed values bit-equal.
pub fn dec17(x: f64) -> String {
    format!("{x:.16e}")
}
