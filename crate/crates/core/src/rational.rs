//! Arbitrary-precision rationals and a few helpers around them.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn render(q: &Rational) -> String {
    use alloc::string::ToString;
    q.to_string()
}

/// Least common multiple of the denominators, as an `i64`.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Option<i64> {
    let mut l = BigInt::one();
    for q in qs {
        l = l.lcm(q.denom());
    }
    l.to_i64()
}

/// Scales every entry by `scale` and returns the (necessarily integral) results.
pub fn scaled_integers(qs: &[Rational], scale: i64) -> Option<Vec<i64>> {
    let s = int(scale);
    qs.iter().map(|q| to_i64(&(q * &s))).collect()
}
