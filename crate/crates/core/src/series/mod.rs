//! Truncated power series `Σ_{n ≤ N} a_n Xⁿ` with an explicit truncation
//! order `N`.
//!
//! Binary operations truncate to the smaller order of their operands. A
//! series may carry an integrality assertion (all coefficients in ℤ or
//! ℤ[√d]); only asserted series get certified `p`-adic radii.

mod places;

use alloc::vec::Vec;
use core::fmt;

pub use places::{
    eval_with_tail_bound, globally_bounded_scan, radius_lower_bound, BadPrime, EvalResult,
    EvalValue, GbVerdict, GloballyBoundedReport, RadiusReport,
};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<F> {
    coeffs: Vec<F>,
    integral: bool,
}

impl<F: Scalar> fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(O(X^{}), ", self.order() + 1)?;
        f.debug_list().entries(self.coeffs.iter()).finish()?;
        write!(f, ")")
    }
}

impl<F: Scalar> TruncatedSeries<F> {
    /// Coefficients `a_0..=a_N`. Panics on an empty vector.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least a_0");
        TruncatedSeries { coeffs, integral: false }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> F) -> Self {
        TruncatedSeries::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::from_fn(order, |_| F::zero())
    }

    pub fn constant(c: F, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `X`.
    pub fn x(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = F::one();
        }
        s.integral = true;
        s
    }

    /// `1/(1 − X) = Σ Xⁿ`.
    pub fn geometric(order: usize) -> Self {
        TruncatedSeries::from_fn(order, |_| F::one()).with_integrality_unchecked(true)
    }

    /// Assert that every coefficient (including the unseen tail) is
    /// integral. Fails if a computed coefficient is not.
    pub fn assert_integral(mut self) -> Result<Self> {
        if !self.coeffs.iter().all(Scalar::is_integral) {
            return Err(Error::NotIntegral);
        }
        self.integral = true;
        Ok(self)
    }

    fn with_integrality_unchecked(mut self, integral: bool) -> Self {
        self.integral = integral;
        self
    }

    pub fn is_integral_asserted(&self) -> bool {
        self.integral
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &F {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec(), integral: self.integral }
    }

    /// Extend with zeros up to `order`; the result is the polynomial part
    /// known exactly, so only use this for polynomials.
    fn pad(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order()) + 1, F::zero());
        TruncatedSeries { coeffs, integral: self.integral }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() + &other.coeffs[i]).collect(),
            integral: self.integral && other.integral,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() - &other.coeffs[i]).collect(),
            integral: self.integral && other.integral,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = alloc::vec![F::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
                }
            }
        }
        TruncatedSeries { coeffs, integral: self.integral && other.integral }
    }

    pub fn scale(&self, k: &F) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k).collect(),
            integral: self.integral && k.is_integral(),
        }
    }

    /// `d/dX`; the order drops by one (an order-0 series maps to `0 + O(X)`).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncatedSeries::zero(0).with_integrality_unchecked(true);
        }
        TruncatedSeries {
            coeffs: (1..=self.order())
                .map(|n| self.coeffs[n].clone() * &F::from_i64(n as i64))
                .collect(),
            integral: self.integral,
        }
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |s, _| s.derivative())
    }

    /// `1/f`, requires `f(0) ≠ 0`.
    pub fn recip(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inv().ok_or(Error::DivisionByZero)?;
        let n = self.order();
        let mut out: Vec<F> = Vec::with_capacity(n + 1);
        out.push(a0_inv.clone());
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + &(self.coeffs[j].clone() * &out[k - j]);
                }
            }
            out.push(-(acc * &a0_inv));
        }
        let unit = a0_inv.is_integral();
        Ok(TruncatedSeries { coeffs: out, integral: self.integral && unit })
    }

    /// `f ∘ g`, requires `g(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InnerSeriesNonzeroConstant);
        }
        let n = self.order().min(inner.order());
        let g = inner.truncate(n);
        let mut acc = TruncatedSeries::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[k];
        }
        acc.integral = self.integral && inner.integral;
        Ok(acc)
    }

    /// Compositional inverse `g` with `f(g(X)) = g(f(X)) = X`, computed by
    /// Newton iteration with doubling precision.
    ///
    /// If `f` is asserted integral with `f'(0) = ±1`, the inverse is integral
    /// too and carries the assertion.
    pub fn compositional_inverse(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertibleSeries);
        }
        let a1_inv = self.coeffs[1].inv().ok_or(Error::NotInvertibleSeries)?;
        let fprime = self.derivative();
        let mut g = TruncatedSeries::x(1).scale(&a1_inv);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            g = g.pad(prec);
            let f_of_g = self.truncate(prec).compose(&g)?;
            let residual = f_of_g.sub(&TruncatedSeries::x(prec));
            // f' has order n − 1; pad so the composition keeps precision prec.
            let fp = fprime.truncate(prec).pad(prec);
            let denom = fp.compose(&g)?.recip()?;
            g = g.sub(&residual.mul(&denom));
        }
        let g = g.truncate(n).pad(n);
        let unit = self.coeffs[1] == F::one() || self.coeffs[1] == -F::one();
        Ok(g.with_integrality_unchecked(self.integral && unit))
    }

    /// Evaluate the partial sum exactly.
    pub fn partial_sum(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x + c)
    }
}

impl TruncatedSeries<Rational> {
    /// Lift rational coefficients into another scalar type.
    pub fn lift<G: Scalar>(&self) -> TruncatedSeries<G> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| G::from_rational(c.clone())).collect(),
            integral: self.integral,
        }
    }
}
