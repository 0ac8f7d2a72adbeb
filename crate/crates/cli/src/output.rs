//! Deterministic rendering: a small JSON writer with insertion-ordered
//! keys and 12-significant-digit floats, plus table, CSV, and bar-chart
//! helpers. Identical inputs must produce byte-identical output.

/// Version tag carried by every JSON envelope.
pub const SCHEMA_VERSION: &str = "1";

/// JSON value with deterministic serialization. Object keys keep their
/// insertion order; arbitrary-precision integers travel as strings so no
/// reader ever rounds them.
#[derive(Debug, Clone)]
pub enum Json {
    U64(u64),
    I64(i64),
    F64(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj(fields: Vec<(&str, Json)>) -> Json {
        Json::Obj(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }
}

pub fn render(value: &Json) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Json, out: &mut String) {
    match value {
        Json::U64(v) => out.push_str(&v.to_string()),
        Json::I64(v) => out.push_str(&v.to_string()),
        Json::F64(v) => out.push_str(&fmt_f64(*v)),
        Json::Str(s) => write_string(s, out),
        Json::Arr(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Json::Obj(fields) => {
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(key, out);
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Formats a float at 12 significant digits, positional for exponents in
/// [-4, 12) and scientific otherwise, trailing zeros trimmed. The result
/// survives a parse/re-format round trip unchanged.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    debug_assert!(x.is_finite(), "non-finite values never reach the writer");
    let sign = if x < 0.0 { "-" } else { "" };
    let sci = format!("{:.11e}", x.abs());
    let (mantissa, exp_str) = sci.split_once('e').expect("e-format layout");
    let exp: i32 = exp_str.parse().expect("e-format exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);
    if (-4..12).contains(&exp) {
        let body = if exp >= 0 {
            let (int_part, frac) = digits.split_at(exp as usize + 1);
            format!("{int_part}.{frac}")
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let trimmed = body.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{trimmed}")
    } else {
        let trimmed = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{trimmed}e{exp}")
    }
}

/// Wraps a result payload in the output envelope, one JSON document per
/// invocation.
pub fn envelope(command: &str, result: Json, warnings: Vec<String>) -> String {
    let doc = Json::obj(vec![
        ("schema_version", Json::Str(SCHEMA_VERSION.to_string())),
        ("command", Json::Str(command.to_string())),
        ("result", result),
        (
            "warnings",
            Json::Arr(warnings.into_iter().map(Json::Str).collect()),
        ),
    ]);
    render(&doc) + "\n"
}

/// Fixed-width table from rows of cells: columns padded to their widest
/// member, two spaces between columns, left-aligned.
pub fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// CSV with a header row; fields are pre-rendered and contain no commas.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Horizontal ASCII bar chart, one row per digit, bar length proportional
/// to probability with the longest bar at 60 columns.
pub fn chart(rows: &[(u64, f64)]) -> String {
    const WIDTH: f64 = 60.0;
    let max = rows.iter().map(|&(_, p)| p).fold(0.0f64, f64::max);
    let mut out = String::new();
    for &(digit, p) in rows {
        let len = if max > 0.0 {
            ((p / max) * WIDTH).round() as usize
        } else {
            0
        };
        out.push_str(&format!(
            "{digit:>2} | {bar:<60} {p:.6}\n",
            bar = "#".repeat(len)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_at_twelve_significant_digits() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1.0), "1");
        assert_eq!(fmt_f64(-2.0), "-2");
        assert_eq!(fmt_f64(2f64.log10()), "0.301029995664");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(232.19280948874), "232.192809489");
        assert_eq!(fmt_f64(1e-5), "1e-5");
        assert_eq!(fmt_f64(1.5e-5), "1.5e-5");
        assert_eq!(fmt_f64(1e11), "100000000000");
        assert_eq!(fmt_f64(1.234567890123e15), "1.23456789012e15");
        assert_eq!(fmt_f64(-0.0001), "-0.0001");
    }

    #[test]
    #[allow(clippy::approx_constant)] // a 12-digit decimal, not a stand-in constant
    fn float_formatting_is_reparse_stable() {
        for &x in &[
            0.301029995664,
            1.0,
            0.5,
            1e-5,
            123456.789,
            9.99999999999e11,
            -3.25e-17,
            0.045757490561,
        ] {
            let rendered = fmt_f64(x);
            let reparsed: f64 = rendered.parse().unwrap();
            assert_eq!(fmt_f64(reparsed), rendered, "{x}");
        }
    }

    #[test]
    fn json_escaping_and_shape() {
        let doc = Json::obj(vec![
            ("plain", Json::Str("a\"b\\c\nd".to_string())),
            ("items", Json::Arr(vec![Json::U64(1), Json::F64(0.5)])),
        ]);
        assert_eq!(render(&doc), r#"{"plain":"a\"b\\c\nd","items":[1,0.5]}"#);
    }

    #[test]
    fn chart_scales_longest_bar_to_sixty() {
        let rendered = chart(&[(1, 0.5), (2, 0.25)]);
        let lines: Vec<&str> = rendered.lines().collect();
        assert!(lines[0].contains(&"#".repeat(60)));
        assert!(lines[1].contains(&"#".repeat(30)));
        assert!(!lines[1].contains(&"#".repeat(31)));
    }
}
