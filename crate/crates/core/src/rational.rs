//! Exact rational scalars shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Q {
    qf(1, 2)
}

/// Parses `p`, `-p`, `p/q` (whitespace tolerant). Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_q(text: &str) -> Option<Q> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Canonical text form: lowest terms, `-` for negatives, integers without `/1`.
pub fn fmt_q(v: &Q) -> String {
    v.to_string()
}

pub fn to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    match (v.numer().to_f64(), v.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge numerator/denominator: scale down by shifting both
            let bits = v.numer().bits().max(v.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (v.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (v.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if v.is_positive() {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

pub fn is_power_of_two(v: &Q) -> bool {
    v.is_integer() && v.is_positive() && {
        let n = v.numer();
        (n & (n - BigInt::one())).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("3/6"), Some(qf(1, 2)));
        assert_eq!(parse_q(" -4 "), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&qf(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5");
    }

    #[test]
    fn float_conversion() {
        assert!((to_f64(&qf(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert!(is_power_of_two(&q(8)));
        assert!(!is_power_of_two(&q(6)));
        assert!(!is_power_of_two(&qf(1, 2)));
    }
}
