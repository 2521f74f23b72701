// SPDX-License-Identifier: MIT OR Apache-2.0

/// Parses newline-delimited decimal values, skipping blank lines.
pub fn parse_values(text: &str) -> Result<Vec<f64>, String> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| format!("line {}: not a number: {line:?}", i + 1))?;
        if !v.is_finite() {
            return Err(format!("line {}: non-finite value {line:?}", i + 1));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err("no values".into());
    }
    Ok(values)
}

/// `v` rounded to `digits` significant digits, without trailing zeros,
/// switching to exponent notation for very large or small magnitudes.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
