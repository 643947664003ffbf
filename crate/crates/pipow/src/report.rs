//! Output records and their text, CSV and JSON renderings.
//!
//! Every number is carried as a string so no value ever passes through a
//! binary float. Series results share one schema:
//!
//! ```text
//! {"depth": int, "truncation": int, "mode": str, "value": str,
//!  "tail_bound": str, "reference": str|null, "abs_error": str|null}
//! ```
//!
//! and the CSV header `depth,truncation,mode,value,tail_bound,reference,abs_error`.

use pipow_core::exactnum::Rounding;
use pipow_core::reference::CONSTANT_GUARD;
use pipow_core::{fixed_from_rational, FixedDecimal, SeriesResult, SeriesValue};
use serde::{Deserialize, Serialize};

use crate::Format;

/// Extra decimals for bounds and errors. These sit close to `10^-digits`
/// by construction, so rounding them at `digits` would hide which side of
/// it they fall on.
pub const DIAGNOSTIC_EXTRA_DIGITS: u32 = CONSTANT_GUARD;

pub const SERIES_CSV_HEADER: &str = "depth,truncation,mode,value,tail_bound,reference,abs_error";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesRecord {
    pub depth: usize,
    pub truncation: u64,
    pub mode: String,
    pub value: String,
    pub tail_bound: String,
    pub reference: Option<String>,
    pub abs_error: Option<String>,
}

impl SeriesRecord {
    pub fn from_result(result: &SeriesResult, digits: u32, as_decimal: bool) -> Self {
        let value = match &result.value {
            SeriesValue::Exact(q) if as_decimal => {
                fixed_from_rational(q, digits, 0).to_decimal_string(digits)
            }
            SeriesValue::Exact(q) => q.to_string(),
            SeriesValue::Fixed(x) => x.to_decimal_string(digits),
        };
        let diagnostic = digits + DIAGNOSTIC_EXTRA_DIGITS;
        Self {
            depth: result.depth,
            truncation: result.truncation,
            mode: result.mode.name().to_string(),
            value,
            tail_bound: result
                .tail_bound
                .to_decimal_string_with(diagnostic, Rounding::Ceiling),
            reference: result
                .reference
                .as_ref()
                .map(|r| r.to_decimal_string(digits)),
            abs_error: result
                .abs_error
                .as_ref()
                .map(|e| e.to_decimal_string(diagnostic)),
        }
    }

    fn text_fields(&self) -> [(&'static str, String); 7] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        [
            ("depth", self.depth.to_string()),
            ("truncation", self.truncation.to_string()),
            ("mode", self.mode.clone()),
            ("value", self.value.clone()),
            ("tail_bound", self.tail_bound.clone()),
            ("reference", opt(&self.reference)),
            ("abs_error", opt(&self.abs_error)),
        ]
    }
}

/// `key: value` lines for one record.
pub fn key_value_text(fields: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in fields {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(v);
        out.push('\n');
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn columns_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if i + 1 < widths.len() {
                s.push_str(&" ".repeat(w - cell.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(&mut header.iter().copied());
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    out
}

pub fn csv_rows<T: Serialize>(rows: &[T]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory CSV");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}

pub fn json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn render_series(record: &SeriesRecord, format: Format) -> String {
    match format {
        Format::Text => key_value_text(&record.text_fields()),
        Format::Csv => csv_rows(std::slice::from_ref(record)),
        Format::Json => json_pretty(record),
    }
}

pub fn render_table(records: &[SeriesRecord], format: Format) -> String {
    match format {
        Format::Text => {
            let header: Vec<&str> = SERIES_CSV_HEADER.split(',').collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.text_fields().into_iter().map(|(_, v)| v).collect())
                .collect();
            columns_text(&header, &rows)
        }
        Format::Csv => {
            if records.is_empty() {
                format!("{SERIES_CSV_HEADER}\n")
            } else {
                csv_rows(records)
            }
        }
        Format::Json => json_pretty(records),
    }
}

/// Outcome of `verify-theorem`, flat so that it fits one CSV row.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TheoremRecord {
    pub m: u32,
    pub theorem: String,
    pub coefficients_checked: u32,
    pub oracles: String,
    pub oracle_cases: u32,
    pub mismatch_k: Option<u32>,
    pub expansion: Option<String>,
    pub nested_sum: Option<String>,
    pub recurrence: Option<String>,
    pub oracle_mismatch: Option<String>,
}

impl TheoremRecord {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut fields = vec![
                    ("m", self.m.to_string()),
                    (
                        "theorem",
                        format!(
                            "{} ({} coefficients compared)",
                            self.theorem, self.coefficients_checked
                        ),
                    ),
                    (
                        "oracles",
                        format!("{} ({} cases)", self.oracles, self.oracle_cases),
                    ),
                ];
                if let Some(k) = self.mismatch_k {
                    fields.push(("first_mismatch_k", k.to_string()));
                }
                for (name, value) in [
                    ("expansion", &self.expansion),
                    ("nested_sum", &self.nested_sum),
                    ("recurrence", &self.recurrence),
                    ("oracle_mismatch", &self.oracle_mismatch),
                ] {
                    if let Some(v) = value {
                        fields.push((name, v.clone()));
                    }
                }
                key_value_text(&fields)
            }
            Format::Csv => csv_rows(std::slice::from_ref(self)),
            Format::Json => json_pretty(self),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SincRecord {
    pub x: String,
    pub terms: u64,
    pub powers: usize,
    pub product: String,
    pub series: String,
    pub reference: String,
    pub product_deviation: String,
    pub series_deviation: String,
    pub product_series_deviation: String,
}

impl SincRecord {
    pub fn new(
        x: String,
        terms: u64,
        powers: usize,
        [product, series, reference]: [&FixedDecimal; 3],
        digits: u32,
    ) -> Self {
        let shown = |v: &FixedDecimal| v.to_decimal_string(digits);
        let dev = |a: &FixedDecimal, b: &FixedDecimal| (a - b).abs().to_decimal_string(digits);
        Self {
            x,
            terms,
            powers,
            product: shown(product),
            series: shown(series),
            reference: shown(reference),
            product_deviation: dev(product, reference),
            series_deviation: dev(series, reference),
            product_series_deviation: dev(product, series),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => key_value_text(&[
                ("x", self.x.clone()),
                ("terms", self.terms.to_string()),
                ("powers", self.powers.to_string()),
                ("product", self.product.clone()),
                ("series", self.series.clone()),
                ("reference", self.reference.clone()),
                ("|product - reference|", self.product_deviation.clone()),
                ("|series - reference|", self.series_deviation.clone()),
                ("|product - series|", self.product_series_deviation.clone()),
            ]),
            Format::Csv => csv_rows(std::slice::from_ref(self)),
            Format::Json => json_pretty(self),
        }
    }
}

/// One line of the benchmark report. `micros` is the only
/// nondeterministic field.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub method: String,
    pub depth: usize,
    pub truncation: u64,
    pub ring_ops: Option<u64>,
    pub micros: Option<u64>,
    pub value: Option<String>,
    pub note: Option<String>,
}

pub fn render_bench(records: &[BenchRecord], format: Format) -> String {
    match format {
        Format::Text => {
            let header = [
                "method",
                "depth",
                "truncation",
                "ring_ops",
                "micros",
                "value",
                "note",
            ];
            let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.method.clone(),
                        r.depth.to_string(),
                        r.truncation.to_string(),
                        r.ring_ops.map_or("-".into(), |v| v.to_string()),
                        r.micros.map_or("-".into(), |v| v.to_string()),
                        opt(&r.value),
                        opt(&r.note),
                    ]
                })
                .collect();
            columns_text(&header, &rows)
        }
        Format::Csv => csv_rows(records),
        Format::Json => json_pretty(records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pipow_core::series::Mode;

    #[test]
    fn series_record_renders_all_formats() {
        let result = SeriesResult::evaluate(2, 3, Mode::Exact, 10);
        let record = SeriesRecord::from_result(&result, 10, false);
        assert_eq!(record.value, "7/18");
        assert_eq!(record.mode, "exact");
        assert_eq!(record.reference.as_deref(), Some("0.8117424253"));

        let text = render_series(&record, Format::Text);
        assert!(text.lines().any(|l| l == "value: 7/18"));

        let csv = render_series(&record, Format::Csv);
        assert_eq!(csv.lines().next(), Some(SERIES_CSV_HEADER));

        let json: serde_json::Value =
            serde_json::from_str(&render_series(&record, Format::Json)).unwrap();
        assert_eq!(json["value"], "7/18");
        assert_eq!(json["depth"], 2);

        let decimal = SeriesRecord::from_result(&result, 10, true);
        assert_eq!(decimal.value, "0.3888888889");
    }

    #[test]
    fn empty_table_csv_keeps_header() {
        assert_eq!(
            render_table(&[], Format::Csv),
            format!("{SERIES_CSV_HEADER}\n")
        );
    }

    #[test]
    fn columns_align() {
        let out = columns_text(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(out, "a    bb\nxyz  1\n");
    }
}
