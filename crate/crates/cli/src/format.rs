use serde_json::Number;

/// Shortest round-trip decimal form (the same digits the JSON output uses).
/// Non-finite values render as an empty string.
pub fn fmt_f64(x: f64) -> String {
    Number::from_f64(x)
        .map(|n| n.to_string())
        .unwrap_or_default()
}
