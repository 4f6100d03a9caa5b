//! Output formatting: one fixed numeric rendering shared by the CSV and
//! JSON writers so both carry the same digits and files diff cleanly.

/// Formats with 12 significant digits, plain `.` decimal separator and no
/// grouping. Values with decimal exponent in `[-4, 12)` render fixed
/// (trailing zeros trimmed), everything else renders as `d.dddde<exp>`.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp_str) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp_str.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);

    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let point = exp as usize + 1;
            let (int_part, frac_part) = digits.split_at(point);
            let frac = frac_part.trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            let frac = format!("{zeros}{digits}");
            let frac = frac.trim_end_matches('0');
            format!("0.{frac}")
        }
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{lead}e{exp}")
        } else {
            format!("{lead}.{rest}e{exp}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// The same 12-digit value as a JSON number, via round-trip through the
/// textual form so CSV and JSON files carry identical digits.
pub fn json_sig12(x: f64) -> serde_json::Value {
    let rounded: f64 = fmt_sig12(x).parse().expect("rendered float parses");
    serde_json::Number::from_f64(rounded)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}
