//! Exact rationals and the few helpers the formulas need (integer part,
//! fractional part, strict parsing).

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

/// Integer part `[x]`, rounding toward negative infinity.
pub fn floor(x: Rational) -> i64 {
    x.numer().div_floor(x.denom())
}

/// Smallest integer `>= x`.
pub fn ceil(x: Rational) -> i64 {
    -floor(-x)
}

/// Fractional part `{x} = x - [x]`, always in `[0, 1)`.
pub fn frac(x: Rational) -> Rational {
    x - Rational::from_integer(floor(x))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"a/b"` or a plain integer. No whitespace, no decimals.
pub fn parse(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let parse_int = |t: &str| -> Result<i64> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        t.parse::<i64>().map_err(|_| err())
    };
    match s.split_once('/') {
        None => Ok(int(parse_int(s)?)),
        Some((a, b)) => {
            let numer = parse_int(a)?;
            let denom = parse_int(b)?;
            if denom.is_zero() || b.starts_with('-') {
                return Err(err());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Canonical string form: `"n"` for integers, `"a/b"` otherwise.
pub fn render(x: Rational) -> String {
    x.to_string()
}

/// Integer square root (floor) of a nonnegative `i128`.
pub(crate) fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_frac() {
        assert_eq!(floor(Rational::new(3, 2)), 1);
        assert_eq!(floor(Rational::new(-3, 2)), -2);
        assert_eq!(frac(Rational::new(-3, 2)), Rational::new(1, 2));
        assert_eq!(ceil(Rational::new(3, 2)), 2);
        assert_eq!(ceil(int(2)), 2);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse("4/2").unwrap(), int(2));
        for bad in ["", "1.5", "1/0", "a", "1/-2", " 1", "1/", "/2", "--1"] {
            assert!(parse(bad).is_err(), "{bad:?} accepted");
        }
        assert_eq!(render(Rational::new(-1, 2)), "-1/2");
        assert_eq!(render(int(5)), "5");
    }

    #[test]
    fn isqrt_bounds() {
        for n in 0..2000i128 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
        }
    }
}
