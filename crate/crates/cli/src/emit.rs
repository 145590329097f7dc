//! Text renderings of sweep output: CSV and JSON, sharing one number
//! format so the two artifacts always agree digit for digit.

use crate::sweep::SweepOutput;

/// Renders `x` with `sig` significant digits: positional for moderate
/// exponents, scientific otherwise, trailing zeros trimmed. The output
/// re-parses to the same f64 it was printed from whenever `sig` >= 17,
/// and re-rendering a parsed value reproduces the bytes for any `sig`.
pub fn render_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let formatted = format!("{:.*e}", sig - 1, x.abs());
    let (mantissa, exp_text) = formatted.split_once('e').expect("exponent marker");
    let exp: i32 = exp_text.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= -4 && exp < sig as i32 {
        positional(&digits, exp)
    } else {
        let trimmed = digits.trim_end_matches('0');
        let (head, tail) = trimmed.split_at(1);
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

fn positional(digits: &str, exp: i32) -> String {
    if exp >= 0 {
        let point = (exp + 1) as usize;
        let int = &digits[..point];
        let frac = digits[point..].trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits}");
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    }
}

/// The rendering contract for data cells: 12 significant digits.
pub fn render_value(x: f64) -> String {
    render_sig(x, 12)
}

/// CSV with a header row, '.' decimals, LF line endings; absent cells are
/// empty fields. Parameters first, then quantities in canonical order.
pub fn emit_csv(out: &SweepOutput) -> String {
    let mut text = String::from("j,delta,temperature");
    for q in &out.quantities {
        text.push(',');
        text.push_str(q.name());
    }
    text.push('\n');
    for row in &out.rows {
        text.push_str(&render_value(row.j));
        text.push(',');
        text.push_str(&render_value(row.delta));
        text.push(',');
        text.push_str(&render_value(row.temperature));
        for v in &row.values {
            text.push(',');
            if let Some(x) = v {
                text.push_str(&render_value(*x));
            }
        }
        text.push('\n');
    }
    text
}

/// JSON array of row objects with the same field names and the same
/// number rendering as the CSV; absent cells are null.
pub fn emit_json(out: &SweepOutput) -> String {
    let mut text = String::from("[");
    for (i, row) in out.rows.iter().enumerate() {
        text.push_str(if i == 0 { "\n" } else { ",\n" });
        text.push_str(&format!(
            "{{\"j\":{},\"delta\":{},\"temperature\":{}",
            render_value(row.j),
            render_value(row.delta),
            render_value(row.temperature)
        ));
        for (q, v) in out.quantities.iter().zip(&row.values) {
            match v {
                Some(x) => text.push_str(&format!(",\"{}\":{}", q.name(), render_value(*x))),
                None => text.push_str(&format!(",\"{}\":null", q.name())),
            }
        }
        text.push('}');
    }
    if !out.rows.is_empty() {
        text.push('\n');
    }
    text.push_str("]\n");
    text
}
