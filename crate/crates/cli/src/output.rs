//! CSV and JSON emission. Logs and ratios print with 15 significant
//! digits, matching the precision the reference table is stated at.

use serde_json::{json, Value};

/// Format with 15 significant digits, plain decimal notation.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (14 - magnitude).clamp(0, 18) as usize;
    format!("{:.*}", decimals, x)
}

pub fn opt_sig15(x: Option<f64>) -> String {
    x.map(sig15).unwrap_or_default()
}

/// A rectangular table with a fixed header; renders as CSV and as rows of
/// a JSON document.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Records as JSON objects keyed by column name; numeric-looking cells
    /// stay strings so exact integers survive.
    pub fn to_json_records(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    obj.insert(c.clone(), json!(v));
                }
                Value::Object(obj)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(1172.58709098390), "1172.58709098390");
        assert_eq!(sig15(3.25809653802148), "3.25809653802148");
        assert_eq!(sig15(0.682606194485985), "0.682606194485985");
        assert_eq!(sig15(800.888358439052), "800.888358439052");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(-4.47733681447821), "-4.47733681447821");
    }

    #[test]
    fn csv_layout_is_stable() {
        let mut t = Table::new(&["n", "h"]);
        t.push(vec!["0".into(), "1.5".into()]);
        assert_eq!(t.to_csv(), "n,h\n0,1.5\n");
    }
}
