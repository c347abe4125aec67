use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar. `BigRational` keeps values in lowest terms with a
/// positive denominator, which is exactly the invariant we need for
/// breakpoint arithmetic.
pub type Rational = BigRational;

/// Shorthand for small literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p" (optionally signed). Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Renders as "p/q" with the sign on the numerator, e.g. "-3/2", "0/1".
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_normalize() {
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("6/-4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat_from(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn format_keeps_denominator() {
        assert_eq!(format_ratio(&rat(1, 2)), "1/2");
        assert_eq!(format_ratio(&rat_from(0)), "0/1");
        assert_eq!(format_ratio(&rat(-4, 6)), "-2/3");
    }
}
