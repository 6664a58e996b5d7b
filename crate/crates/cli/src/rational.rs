//! Exact scalars from command-line text.

use ferroflow_core::poly::ExactScalar;

use crate::error::{CliError, CliResult};

/// Parses `3`, `-2/5` or a plain decimal such as `0.125` exactly.
pub fn parse_exact(text: &str) -> CliResult<ExactScalar> {
    let s = text.trim();
    let bad = || CliError::usage(format!("`{text}` is not an integer, fraction or decimal"));
    let parsed = match s.split_once('.') {
        Some((int, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int = if int.is_empty() || int == "-" || int == "+" { format!("{int}0") } else { int.to_string() };
            format!("{int}{frac}/1{}", "0".repeat(frac.len())).parse::<ExactScalar>()
        }
        None => s.parse::<ExactScalar>(),
    };
    parsed.map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ferroflow_core::poly::{exact, ratio};

    #[test]
    fn forms() {
        assert_eq!(parse_exact("3").unwrap(), exact(3));
        assert_eq!(parse_exact("-2/6").unwrap(), ratio(-1, 3));
        assert_eq!(parse_exact("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_exact("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_exact(".5").unwrap(), ratio(1, 2));
        for bad in ["", "x", "1/0", "1.", "1.2.3", "1e3"] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }
}
