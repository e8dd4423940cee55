use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use super::rational::{floor, int, rat, Rational};

/// Fixed-point decimal `units / 10^digits`, produced only for output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    units: BigInt,
    digits: u32,
}

fn pow10(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

impl Decimal {
    /// Round to nearest, ties away from zero.
    pub fn round(value: &Rational, digits: u32) -> Self {
        let scaled = value.abs() * int(pow10(digits));
        let mut units = floor(&(scaled + rat(1, 2)));
        if value.is_negative() {
            units = -units;
        }
        Decimal { units, digits }
    }

    /// Correctly rounded square root of a nonnegative rational.
    pub fn sqrt(value: &Rational, digits: u32) -> Self {
        assert!(!value.is_negative(), "square root of a negative rational");
        let scaled = value * int(pow10(2 * digits));
        let mut m = floor(&scaled).sqrt();
        let half_up = int(m.clone()) + rat(1, 2);
        if &half_up * &half_up <= scaled {
            m += 1;
        }
        Decimal { units: m, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.units.clone(), pow10(self.digits))
    }

    pub fn to_f64(&self) -> f64 {
        super::rational::to_f64(&self.to_rational())
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.units.sign() == Sign::Minus { "-" } else { "" };
        let mag = self.units.abs().to_string();
        let d = self.digits as usize;
        if d == 0 {
            return write!(f, "{sign}{mag}");
        }
        let padded = if mag.len() <= d { format!("{}{}", "0".repeat(d + 1 - mag.len()), mag) } else { mag };
        let (whole, frac) = padded.split_at(padded.len() - d);
        if self.units.is_zero() {
            return write!(f, "{whole}.{frac}");
        }
        write!(f, "{sign}{whole}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_half_away_from_zero() {
        assert_eq!(Decimal::round(&rat(1, 8), 2).to_string(), "0.13");
        assert_eq!(Decimal::round(&rat(-1, 8), 2).to_string(), "-0.13");
        assert_eq!(Decimal::round(&rat(2, 3), 0).to_string(), "1");
    }

    #[test]
    fn small_values_are_zero_padded() {
        assert_eq!(Decimal::round(&rat(1, 1000), 4).to_string(), "0.0010");
        assert_eq!(Decimal::round(&rat(0, 1), 3).to_string(), "0.000");
    }

    #[test]
    fn sqrt_two_is_correctly_rounded() {
        assert_eq!(Decimal::sqrt(&rat(2, 1), 12).to_string(), "1.414213562373");
        assert_eq!(Decimal::sqrt(&rat(9, 4), 3).to_string(), "1.500");
        // sqrt(0.1225) = 0.35 exactly; sqrt(0.12) = 0.3464101...
        assert_eq!(Decimal::sqrt(&rat(12, 100), 3).to_string(), "0.346");
    }
}
