//! Number formatting shared by the CSV and JSON writers.

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros dropped,
/// scientific notation outside `1e-5 <= |x| < 1e17`. Round-trips every `f64`.
pub fn g17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let body = if (-5..17).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            let (int, frac) = digits.split_at(split);
            join_trimmed(int, frac)
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            join_trimmed("0", &format!("{zeros}{digits}"))
        }
    } else {
        let (lead, frac) = digits.split_at(1);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", join_trimmed(lead, frac), exp.abs())
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn join_trimmed(int: &str, frac: &str) -> String {
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}
