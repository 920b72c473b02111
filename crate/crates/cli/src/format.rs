//! Fixed number formatting and the CSV/JSON writers.

use serde_json::{Map, Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: 12 significant digits, trailing zeros stripped, lowercase `e`
/// with a signed two-digit exponent. Negative zero prints as `0`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to what [`fmt_num`] prints.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_num(x).parse().expect("formatted number parses")
    } else {
        x
    }
}

/// JSON number rounded to 12 significant digits; `null` if not finite.
pub fn json_num(x: f64) -> Value {
    Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

pub fn json_nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| json_num(x)).collect())
}

/// Pretty JSON with a trailing newline.
pub fn render_json(map: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
    s.push('\n');
    s
}

/// Line-oriented CSV with `#` comment lines ahead of the header.
#[derive(Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        self.out.push_str("# ");
        self.out.push_str(text);
        self.out.push('\n');
        self
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) -> &mut Self {
        let line: Vec<&str> = cells.iter().map(AsRef::as_ref).collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
        self
    }

    pub fn finish(&mut self) -> String {
        std::mem::take(&mut self.out)
    }
}

/// Reads back CSV produced by [`Csv`]: comment lines are skipped, the first
/// remaining line is the header.
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .map(|h| h.split(',').map(str::to_string).collect())
        .unwrap_or_default();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (2f64.sqrt(), "1.41421356237"),
            (-0.5, "-0.5"),
            (-0.0, "0"),
            (1e-5, "1e-05"),
            (1.5e-4, "0.00015"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (6.02214076e23, "6.02214076e+23"),
            (0.1 + 0.2, "0.3"),
            (999999999999.5, "1e+12"),
            (5.236_067_977_499_79, "5.2360679775"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_num(x), s, "{x}");
        }
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(json_num(2f64.sqrt()).to_string(), "1.41421356237");
        assert_eq!(json_num(f64::NAN), Value::Null);
    }

    #[test]
    fn csv_round_trip() {
        let text = Csv::new()
            .comment("units: test")
            .row(&["a", "b"])
            .row(&["1", "2"])
            .finish();
        assert_eq!(text, "# units: test\na,b\n1,2\n");
        let (h, rows) = parse_csv(&text);
        assert_eq!(h, ["a", "b"]);
        assert_eq!(rows, [["1", "2"]]);
    }
}
