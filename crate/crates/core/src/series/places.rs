//! Radius bounds, globally-bounded scans and evaluation with tail bounds.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::scalar::{Place, Scalar};

/// Lower bound for the radius of convergence at one place.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    pub place: Place,
    /// May be `f64::INFINITY` when no computed coefficient beyond `a_0` is
    /// nonzero (heuristic only).
    pub lower_bound: f64,
    pub certified: bool,
}

/// `R_v(f)` from the computed coefficients.
///
/// At a finite place where every computed coefficient has `|a_n|_p ≤ 1` the
/// bound is 1, and it is certified when the series carries an integrality
/// assertion. Otherwise the heuristic `min_{n ≥ 1} |a_n|_v^{−1/n}` is
/// returned uncertified.
pub fn radius_lower_bound<F: Scalar>(f: &TruncatedSeries<F>, v: &Place) -> RadiusReport {
    if let Some(p) = v.prime() {
        if f.coeffs().iter().all(|c| c.is_p_integral(p)) {
            return RadiusReport {
                place: *v,
                lower_bound: 1.0,
                certified: f.is_integral_asserted(),
            };
        }
    }
    RadiusReport { place: *v, lower_bound: heuristic_radius(f, v), certified: false }
}

fn heuristic_radius<F: Scalar>(f: &TruncatedSeries<F>, v: &Place) -> f64 {
    f.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| libm::exp(-libm::log(c.abs_at(v)) / n as f64))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbVerdict {
    Bounded,
    UnboundedEvidence,
    Inconclusive,
}

/// A prime dividing a coefficient denominator, with the first index where
/// it appears.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadPrime {
    pub p: u64,
    pub first_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GloballyBoundedReport {
    /// True only with a `Bounded` verdict: a common denominator bounds every
    /// computed coefficient, so each finite radius is at least 1/|D|_p.
    pub positive_radius_everywhere: bool,
    /// Primes with some `|a_n|_p > 1`, in order of first appearance.
    pub bad_primes: Vec<BadPrime>,
    pub verdict: GbVerdict,
    /// `(n, p)`: coefficient `a_n` has `p > prime_bound` in its denominator
    /// and no earlier coefficient does.
    pub witness: Option<(usize, u64)>,
    /// Denominators that kept a factor too large to split by trial division.
    pub unfactored: usize,
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Scan coefficient denominators for growth of the prime support.
///
/// The verdict is `UnboundedEvidence` when a prime beyond `prime_bound`
/// enters the denominators at some `n ≥ 1`, `Bounded` when the lcm of all
/// denominators is already reached on the first half of the coefficients,
/// and `Inconclusive` otherwise.
pub fn globally_bounded_scan<F: Scalar>(
    f: &TruncatedSeries<F>,
    prime_bound: u64,
) -> GloballyBoundedReport {
    let mut bad_primes: Vec<BadPrime> = Vec::new();
    let mut witness = None;
    let mut unfactored = 0;
    let mut lcm = BigUint::one();
    let mut half_lcm = BigUint::one();
    let half = f.order() / 2;
    for (n, c) in f.coeffs().iter().enumerate() {
        let (a, b) = c.components();
        let den = a.denom().lcm(b.denom()).magnitude().clone();
        lcm = lcm.lcm(&den);
        if n <= half {
            half_lcm = half_lcm.clone().lcm(&den);
        }
        let (primes, rest) = factor(&den);
        if !rest.is_one() {
            unfactored += 1;
        }
        for p in primes {
            if bad_primes.iter().all(|b| b.p != p) {
                bad_primes.push(BadPrime { p, first_index: n });
                if witness.is_none() && n >= 1 && p > prime_bound {
                    witness = Some((n, p));
                }
            }
        }
    }
    let verdict = if witness.is_some() {
        GbVerdict::UnboundedEvidence
    } else if lcm == half_lcm && unfactored == 0 {
        GbVerdict::Bounded
    } else {
        GbVerdict::Inconclusive
    };
    GloballyBoundedReport {
        positive_radius_everywhere: verdict == GbVerdict::Bounded,
        bad_primes,
        verdict,
        witness,
        unfactored,
    }
}

/// Distinct prime factors found by trial division, and the unsplit cofactor.
fn factor(n: &BigUint) -> (Vec<u64>, BigUint) {
    let mut n = n.clone();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        if BigUint::from(d) * BigUint::from(d) > n {
            break;
        }
        let bd = BigUint::from(d);
        if (&n % &bd).is_zero() {
            primes.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return (primes, n);
    }
    // No factor up to √n: n is prime.
    if BigUint::from(d) * BigUint::from(d) > n {
        if let Some(p) = n.to_u64() {
            primes.push(p);
            return (primes, BigUint::one());
        }
    }
    (primes, n)
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue<F> {
    Exact(F),
    Float(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<F> {
    pub value: EvalValue<F>,
    /// Bound on `|f(x) − partial sum|_v`.
    pub tail_bound: f64,
    /// False only when the bound rests on an integrality assertion.
    pub heuristic: bool,
}

/// Evaluate `f` at `x` in the completion at `v`.
///
/// At a finite place the partial sum is exact. With `integral_tail` (or an
/// asserted-integral series) the tail is bounded by `|x|_p^{N+1}`, which
/// needs `|x|_p < 1`. At the archimedean place the value is a float and the
/// tail is a geometric estimate from the last coefficient ratios.
pub fn eval_with_tail_bound<F: Scalar>(
    f: &TruncatedSeries<F>,
    x: &F,
    v: &Place,
    integral_tail: bool,
) -> Result<EvalResult<F>> {
    let n = f.order();
    if x.is_zero() {
        let value = match v {
            Place::Finite { .. } => EvalValue::Exact(f.coeff(0).clone()),
            Place::Archimedean { .. } => EvalValue::Float(f.coeff(0).embed(v.embedding())),
        };
        return Ok(EvalResult { value, tail_bound: 0.0, heuristic: false });
    }
    let ax = x.abs_at(v);
    match v.prime() {
        Some(p) => {
            let value = EvalValue::Exact(f.partial_sum(x));
            if integral_tail || f.is_integral_asserted() {
                if !f.coeffs().iter().all(|c| c.is_p_integral(p)) {
                    return Err(Error::NotIntegral);
                }
                if ax >= 1.0 {
                    return Err(Error::OutsideDisc);
                }
                let tail_bound = libm::pow(ax, (n + 1) as f64);
                return Ok(EvalResult { value, tail_bound, heuristic: false });
            }
            let tail_bound = cauchy_tail(f, v, ax)?;
            Ok(EvalResult { value, tail_bound, heuristic: true })
        }
        None => {
            let z = x.embed(v.embedding());
            let emb = v.embedding();
            let mut sum = Complex64::new(0.0, 0.0);
            let mut abs_sum = 0.0;
            for c in f.coeffs().iter().rev() {
                sum = sum * z + c.embed(emb);
            }
            let mut last_term = 0.0;
            let mut power = 1.0;
            for c in f.coeffs() {
                let t = c.embed(emb).norm() * power;
                abs_sum += t;
                last_term = t;
                power *= ax;
            }
            let q = ratio_estimate(f, v) * ax;
            if q >= 1.0 {
                return Err(Error::OutsideDisc);
            }
            let rounding = (n + 1) as f64 * f64::EPSILON * abs_sum;
            let tail_bound = last_term * q / (1.0 - q) + rounding;
            Ok(EvalResult { value: EvalValue::Float(sum), tail_bound, heuristic: true })
        }
    }
}

/// Largest `|a_{n+1}/a_n|_v` over the last few nonzero consecutive pairs.
fn ratio_estimate<F: Scalar>(f: &TruncatedSeries<F>, v: &Place) -> f64 {
    let abs: Vec<f64> = f.coeffs().iter().map(|c| c.abs_at(v)).collect();
    let pairs: Vec<f64> = abs
        .windows(2)
        .filter(|w| w[0] > 0.0 && w[1] > 0.0)
        .map(|w| w[1] / w[0])
        .collect();
    if pairs.is_empty() {
        return if abs.iter().skip(1).any(|&a| a > 0.0) { 1.0 } else { 0.0 };
    }
    let k = pairs.len().min(4);
    pairs[pairs.len() - k..].iter().copied().fold(0.0, f64::max)
}

/// Ultrametric tail estimate `C·(|x|/r)^{N+1}` with `r` the heuristic
/// radius and `C = max |a_n| rⁿ`.
fn cauchy_tail<F: Scalar>(f: &TruncatedSeries<F>, v: &Place, ax: f64) -> Result<f64> {
    let r = heuristic_radius(f, v);
    if r.is_infinite() {
        return Ok(0.0);
    }
    let rho = ax / r;
    if rho >= 1.0 {
        return Err(Error::OutsideDisc);
    }
    let c = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a.abs_at(v) * libm::pow(r, n as f64))
        .fold(0.0, f64::max);
    Ok(c * libm::pow(rho, (f.order() + 1) as f64))
}
