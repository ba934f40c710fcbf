use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Embedding, Place, Prime, Ring, Scalar};
use crate::error::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i8 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// `v_p(x) = v_p(num) − v_p(den)`.
    pub fn valuation(&self, p: Prime) -> Result<i64> {
        if self.0.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(int_valuation(self.numer(), p) - int_valuation(self.denom(), p))
    }

    pub fn to_f64(&self) -> f64 {
        // Scale down very large operands so the quotient stays finite.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(900);
                let n = (self.numer() >> shift).to_f64().unwrap_or(0.0);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }

    /// Always `num/den`, including integers (`3/1`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn int_valuation(n: &BigInt, p: Prime) -> i64 {
    let p = BigInt::from(p.get());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() || n.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

/// Integer operands skip the gcd normalisation of `BigRational`.
fn integer_op(a: &BigRational, b: &BigRational, op: fn(&BigInt, &BigInt) -> BigInt) -> Option<Rational> {
    (a.is_integer() && b.is_integer()).then(|| Rational(BigRational::from_integer(op(a.numer(), b.numer()))))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident $(, $fast:expr)?) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $tr::$method(&self, rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $tr::$method(self, &rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                $(if let Some(r) = integer_op(&self.0, &rhs.0, $fast) {
                    return r;
                })?
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add, |x, y| x + y);
forward_binop!(Sub, sub, |x, y| x - y);
forward_binop!(Mul, mul, |x, y| x * y);
// Panics on a zero divisor, like integer division; use `Scalar::div` for a
// checked quotient.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Scalar for Rational {
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn components(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }

    fn extension(&self) -> Option<i64> {
        None
    }

    fn embed(&self, _embedding: Embedding) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    fn abs_at(&self, place: &Place) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        match place {
            Place::Archimedean { .. } => self.to_f64().abs(),
            Place::Finite { p, .. } => {
                let v = self.valuation(*p).expect("nonzero");
                libm::pow(p.get() as f64, -(v as f64))
            }
        }
    }

    fn is_p_integral(&self, p: Prime) -> bool {
        int_valuation(self.denom(), p) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        let x = Rational::new(6, -4).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_fraction_string(), "-3/2");
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("8/3").to_string(), "8/3");
        assert_eq!(q(" 4 / 2 ").to_string(), "2");
        assert_eq!(q("-7").to_fraction_string(), "-7/1");
        assert!("x/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn valuation_examples() {
        let two = Prime::new(2).unwrap();
        let five = Prime::new(5).unwrap();
        assert_eq!(Rational::one().valuation(five), Ok(0));
        assert_eq!(q("8/3").valuation(two), Ok(3));
        assert_eq!(q("5/50").valuation(five), Ok(-1));
        assert_eq!(Rational::zero().valuation(two), Err(Error::ValuationOfZero));
    }

    #[test]
    fn valuation_of_factorial_matches_factor_count() {
        let seven = Prime::new(7).unwrap();
        let mut fact = BigInt::one();
        let mut count = 0;
        for k in 1..=100u32 {
            fact *= k;
            let mut m = k;
            while m % 7 == 0 {
                m /= 7;
                count += 1;
            }
        }
        assert_eq!(count, 16);
        assert_eq!(Rational::from_integer(fact).valuation(seven), Ok(16));
    }

    #[test]
    fn absolute_values() {
        assert_eq!(q("-3/2").abs_at(&Place::arch()), 1.5);
        assert_eq!(q("8/3").abs_at(&Place::finite(2).unwrap()), 0.125);
        assert_eq!(q("8/3").abs_at(&Place::finite(3).unwrap()), 3.0);
        assert_eq!(Rational::zero().abs_at(&Place::finite(3).unwrap()), 0.0);
    }

    #[test]
    fn huge_values_convert_to_finite_floats() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        let x = big.clone() / (big * Rational::from(4));
        assert_eq!(x.to_f64(), 0.25);
    }
}
