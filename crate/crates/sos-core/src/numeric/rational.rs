use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Arbitrary-precision fraction, always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(value.into())
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Lossy conversion for plotting and diagnostics only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_of_negative_fraction() {
        let r = rat(-7, 2);
        assert_eq!(floor(&r), BigInt::from(-4));
        assert_eq!(ceil(&r), BigInt::from(-3));
    }

    #[test]
    fn stored_reduced() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
