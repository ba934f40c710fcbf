use alloc::format;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::int_valuation;
use super::{Embedding, Place, Prime, Rational, Ring, Scalar};
use crate::error::{Error, Result};

/// `a + b√d` in a quadratic field ℚ(√d).
///
/// `d` is fixed per computation. Values with `b = 0` built without a field
/// (`QuadScalar::rational`, [`Ring::zero`], [`Ring::one`]) adopt the `d` of
/// whatever they are combined with. Combining two different `d` panics in
/// the operator impls and returns [`Error::MixedExtensions`] from the
/// `try_*` methods.
#[derive(Clone)]
pub struct QuadScalar {
    d: Option<i64>,
    a: Rational,
    b: Rational,
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadScalar {
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidDiscriminant(d));
        }
        Ok(QuadScalar { d: Some(d), a, b })
    }

    /// A rational number not yet tied to a field.
    pub fn rational(a: Rational) -> Self {
        QuadScalar { d: None, a, b: Rational::zero() }
    }

    /// `√d`.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        QuadScalar::new(d, Rational::zero(), Rational::one())
    }

    pub fn d(&self) -> Option<i64> {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn d_or_zero(&self) -> Rational {
        Rational::from(self.d.unwrap_or(0))
    }

    /// `a + b√d ↦ a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadScalar { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    /// `x · conj(x) = a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d_or_zero() * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    fn merge_d(&self, other: &Self) -> Result<Option<i64>> {
        match (self.d, other.d) {
            (Some(x), Some(y)) if x != y => Err(Error::MixedExtensions(x, y)),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(QuadScalar { d: self.merge_d(other)?, a: &self.a + &other.a, b: &self.b + &other.b })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(QuadScalar { d: self.merge_d(other)?, a: &self.a - &other.a, b: &self.b - &other.b })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.merge_d(other)?;
        let dq = Rational::from(d.unwrap_or(0));
        Ok(QuadScalar {
            d,
            a: &self.a * &other.a + dq * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
        })
    }

    /// Exact valuation at the prime above `p` selected by `embedding`,
    /// normalized so that it extends `v_p` (half-integers at ramified primes).
    pub fn valuation_at(&self, p: Prime, embedding: Embedding) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let d = match self.d {
            Some(d) if !self.b.is_zero() => d,
            _ => return self.a.valuation(p).map(Rational::from),
        };
        match splitting(d, p.get()) {
            Splitting::Inert | Splitting::Ramified => {
                let v = self.norm().valuation(p)?;
                Ok(Rational::new(v, 2).expect("nonzero denominator"))
            }
            Splitting::Split => Ok(Rational::from(split_valuation(self, d, p, embedding))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Splitting {
    Split,
    Inert,
    Ramified,
}

fn splitting(d: i64, p: u64) -> Splitting {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 => Splitting::Split,
            5 => Splitting::Inert,
            _ => Splitting::Ramified,
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        Splitting::Ramified
    } else if pow_mod(r, (p - 1) / 2, p) == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Tonelli–Shanks square root of a quadratic residue `n` modulo odd `p`.
fn sqrt_mod_odd(n: u64, p: u64) -> u64 {
    let n = n % p;
    if p % 4 == 3 {
        return pow_mod(n, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Principal `p`-adic square root of `d` modulo `p^k` at a split prime.
fn padic_sqrt(d: i64, p: u64, k: u32) -> BigInt {
    let bp = BigInt::from(p);
    let dd = BigInt::from(d);
    if p == 2 {
        let mut r = BigInt::one();
        for j in 3..=k + 1 {
            let m = BigInt::one() << (j + 1);
            if !(&r * &r - &dd).mod_floor(&m).is_zero() {
                r += BigInt::one() << (j - 1);
            }
        }
        return r.mod_floor(&(BigInt::one() << k));
    }
    let r0 = sqrt_mod_odd(d.rem_euclid(p as i64) as u64, p);
    let mut r = BigInt::from(r0.min(p - r0));
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = bp.pow(prec);
        let two_r = (&r + &r).mod_floor(&m);
        let inv = two_r.extended_gcd(&m).x.mod_floor(&m);
        r = (&r - (&r * &r - &dd) * inv).mod_floor(&m);
    }
    r.mod_floor(&bp.pow(k))
}

fn split_valuation(x: &QuadScalar, d: i64, p: Prime, embedding: Embedding) -> i64 {
    let c = x.a.denom().lcm(x.b.denom());
    let big_a = x.a.numer() * (&c / x.a.denom());
    let big_b = x.b.numer() * (&c / x.b.denom());
    let norm = &big_a * &big_a - BigInt::from(d) * &big_b * &big_b;
    let n = int_valuation(&norm, p);
    let vc = int_valuation(&c, p);
    if n == 0 {
        return -vc;
    }
    let k = n as u32 + 1;
    let modulus = BigInt::from(p.get()).pow(k);
    let mut r = padic_sqrt(d, p.get(), k);
    if embedding == Embedding::Tau {
        r = (-r).mod_floor(&modulus);
    }
    let residue = (big_a + big_b * r).mod_floor(&modulus);
    let v = if residue.is_zero() { n } else { int_valuation(&residue, p) };
    v - vc
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadScalar {}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) if !self.b.is_zero() => {
                if self.a.is_zero() {
                    write!(f, "{}*sqrt({d})", self.b)
                } else if self.b.signum() < 0 {
                    write!(f, "{} - {}*sqrt({d})", self.a, self.b.abs())
                } else {
                    write!(f, "{} + {}*sqrt({d})", self.a, self.b)
                }
            }
            _ => write!(f, "{}", self.a),
        }
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! quad_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'b QuadScalar) -> QuadScalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                $tr::$method(self, &rhs)
            }
        }
    };
}

quad_binop!(Add, add, try_add);
quad_binop!(Sub, sub, try_sub);
quad_binop!(Mul, mul, try_mul);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { d: self.d, a: -self.a, b: -self.b }
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { d: self.d, a: -&self.a, b: -&self.b }
    }
}

impl Ring for QuadScalar {
    fn zero() -> Self {
        QuadScalar::rational(Rational::zero())
    }

    fn one() -> Self {
        QuadScalar::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Scalar for QuadScalar {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let n_inv = n.inv()?;
        let c = self.conjugate();
        Some(QuadScalar { d: self.d, a: &c.a * &n_inv, b: &c.b * &n_inv })
    }

    fn from_rational(q: Rational) -> Self {
        QuadScalar::rational(q)
    }

    fn components(&self) -> (Rational, Rational) {
        (self.a.clone(), self.b.clone())
    }

    fn extension(&self) -> Option<i64> {
        self.d
    }

    fn embed(&self, embedding: Embedding) -> Complex64 {
        let a = self.a.to_f64();
        let d = match self.d {
            Some(d) if !self.b.is_zero() => d,
            _ => return Complex64::new(a, 0.0),
        };
        let b = self.b.to_f64() * f64::from(embedding.sign());
        let root = libm::sqrt(d.unsigned_abs() as f64);
        if d > 0 {
            Complex64::new(a + b * root, 0.0)
        } else {
            Complex64::new(a, b * root)
        }
    }

    fn abs_at(&self, place: &Place) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        match place {
            Place::Archimedean { .. } => self.embed(place.embedding()).norm(),
            Place::Finite { p, .. } => {
                let w = self.valuation_at(*p, place.embedding()).expect("nonzero");
                libm::pow(p.get() as f64, -w.to_f64())
            }
        }
    }

    fn is_p_integral(&self, p: Prime) -> bool {
        self.trace().is_p_integral(p) && self.norm().is_p_integral(p)
    }
}

impl From<Rational> for QuadScalar {
    fn from(q: Rational) -> Self {
        QuadScalar::rational(q)
    }
}

impl TryFrom<&QuadScalar> for Rational {
    type Error = Error;

    fn try_from(x: &QuadScalar) -> Result<Rational> {
        if x.b.is_zero() {
            Ok(x.a.clone())
        } else {
            Err(Error::InvalidArgument(format!("{x} is not rational")))
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn qs(d: i64, a: i64, b: i64) -> QuadScalar {
        QuadScalar::new(d, Rational::from(a), Rational::from(b)).unwrap()
    }

    #[test]
    fn rejects_bad_discriminants() {
        for d in [0, 1, 4, -8, 12] {
            assert_eq!(
                QuadScalar::new(d, Rational::one(), Rational::one()),
                Err(Error::InvalidDiscriminant(d))
            );
        }
        assert!(QuadScalar::new(-1, Rational::one(), Rational::one()).is_ok());
    }

    #[test]
    fn conjugate_and_norm() {
        assert_eq!(qs(5, 3, 0).conjugate(), qs(5, 3, 0));
        assert_eq!(qs(5, 1, 2).conjugate(), qs(5, 1, -2));
        assert_eq!(qs(5, 1, 2).norm(), Rational::from(-19));
        let x = qs(5, 1, 2);
        assert_eq!(x.conjugate().conjugate(), x);
        let prod = &x * &x.conjugate();
        assert!(prod.is_rational());
        assert_eq!(prod.a(), &Rational::from(-19));
    }

    #[test]
    fn arithmetic_and_inverse() {
        let x = qs(2, 1, 1);
        let y = qs(2, 3, -2);
        assert_eq!(&x * &y, qs(2, -1, 1));
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, QuadScalar::one());
        assert_eq!(QuadScalar::zero().inv(), None);
        // rationals adopt the extension of their partner
        let r = QuadScalar::rational(Rational::from(2));
        assert_eq!((&r + &x).d(), Some(2));
    }

    #[test]
    fn mixing_extensions_is_an_error() {
        let x = qs(2, 0, 1);
        let y = qs(3, 0, 1);
        assert_eq!(x.try_add(&y), Err(Error::MixedExtensions(2, 3)));
        assert_eq!(x.try_mul(&y), Err(Error::MixedExtensions(2, 3)));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixing_extensions_panics_in_operators() {
        let _ = qs(2, 0, 1) + qs(3, 0, 1);
    }

    #[test]
    fn archimedean_embeddings() {
        let x = qs(2, 1, 1);
        let tau = Place::arch().with_embedding(Embedding::Tau);
        let expected = (1.0 - 2f64.sqrt()).abs();
        assert!((x.abs_at(&tau) - expected).abs() < 1e-15);
        assert!((x.abs_at(&Place::arch()) - (1.0 + 2f64.sqrt())).abs() < 1e-15);
        // imaginary quadratic: |1 + 2i| = √5 in both embeddings
        let z = qs(-1, 1, 2);
        assert!((z.abs_at(&tau) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn finite_valuations_inert_and_ramified() {
        let two = Prime::new(2).unwrap();
        let three = Prime::new(3).unwrap();
        // 2 is inert in Q(√5): v(2) = 1, v(1 + √5) = v(norm −4)/2 = 1
        assert_eq!(qs(5, 1, 1).valuation_at(two, Embedding::Sigma), Ok(Rational::from(1)));
        // 3 ramifies in Q(√3): v(√3) = 1/2
        assert_eq!(
            qs(3, 0, 1).valuation_at(three, Embedding::Sigma),
            Ok(Rational::new(1, 2).unwrap())
        );
        let p3 = Place::finite(3).unwrap();
        assert!((qs(3, 0, 1).abs_at(&p3) - 3f64.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn finite_valuations_split() {
        // 7 splits in Q(√2) (3² ≡ 2 mod 7); 3 + √2 has norm 7.
        let seven = Prime::new(7).unwrap();
        let x = qs(2, 3, 1);
        let vs = x.valuation_at(seven, Embedding::Sigma).unwrap();
        let vt = x.valuation_at(seven, Embedding::Tau).unwrap();
        assert_eq!(&vs + &vt, Rational::one());
        // principal root of 2 mod 7 is 3, and 3 + 1·(−3) ≡ 0 under tau
        assert_eq!(vt, Rational::one());
        assert_eq!(vs, Rational::zero());
        // 2 splits in Q(√17); (1 + √17)/2 ... use 1 + √17, norm −16
        let two = Prime::new(2).unwrap();
        let y = qs(17, 1, 1);
        let s = y.valuation_at(two, Embedding::Sigma).unwrap();
        let t = y.valuation_at(two, Embedding::Tau).unwrap();
        assert_eq!(s + t, Rational::from(4));
    }

    #[test]
    fn p_integrality() {
        let two = Prime::new(2).unwrap();
        let half = Rational::new(1, 2).unwrap();
        let golden = QuadScalar::new(5, half.clone(), half.clone()).unwrap();
        assert!(golden.is_p_integral(two));
        let not_int = QuadScalar::new(5, half.clone(), Rational::zero()).unwrap();
        assert!(!not_int.is_p_integral(two));
        assert!(not_int.is_p_integral(Prime::new(3).unwrap()));
    }
}
