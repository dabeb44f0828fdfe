//! The scalar type: arbitrary-precision rationals, always in lowest terms.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `num_rational` keeps the value reduced with a
/// positive denominator, which is exactly the invariant we rely on.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer constant as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `⌊r⌋` as a big integer.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// `⌊r·n⌋` for an integer multiplier.
pub fn floor_mul(r: &Rational, n: i64) -> BigInt {
    floor_int(&(r * Rational::from_integer(BigInt::from(n))))
}

/// Whether `r·n` is an integer, i.e. the reduced denominator of `r` divides `n`.
pub fn denominator_divides(r: &Rational, n: i64) -> bool {
    (BigInt::from(n) % r.denom()).is_zero()
}

/// Render as `p/q` in lowest terms, or just `p` for integers.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Positive part predicate used when screening exponents into `(0, 1]`.
pub fn in_unit_interval(r: &Rational) -> bool {
    r.is_positive() && *r <= int(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form() {
        let r = rat(6, -4);
        assert_eq!(display(&r), "-3/2");
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn floors() {
        assert_eq!(floor_mul(&rat(5, 6), 6), BigInt::from(5));
        assert_eq!(floor_mul(&rat(5, 6), 2), BigInt::from(1));
        assert_eq!(floor_mul(&rat(-1, 2), 3), BigInt::from(-2));
    }

    #[test]
    fn divisibility() {
        assert!(denominator_divides(&rat(5, 6), 6));
        assert!(denominator_divides(&rat(5, 6), 12));
        assert!(!denominator_divides(&rat(5, 6), 4));
        assert!(denominator_divides(&int(1), 1));
    }
}
