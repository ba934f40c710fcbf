//! Period G-functions: deriving the `G_ij` series from the `F_ij` series
//! and Gauss–Manin coefficients, place radii, and checks against period
//! data.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::relations::SyntheticPeriodData;
use crate::scalar::{Place, Scalar};
use crate::series::{eval_with_tail_bound, radius_lower_bound, EvalValue, TruncatedSeries};

/// A `g × g` grid of series with a common truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct GFunMatrix<F: Scalar> {
    g: usize,
    entries: Vec<TruncatedSeries<F>>,
}

impl<F: Scalar> GFunMatrix<F> {
    /// `entries` in row-major order.
    pub fn new(g: usize, entries: Vec<TruncatedSeries<F>>) -> Result<Self> {
        if g == 0 || entries.len() != g * g {
            return Err(Error::DimensionMismatch("expected g² series".into()));
        }
        let order = entries[0].order();
        if entries.iter().any(|s| s.order() != order) {
            return Err(Error::DimensionMismatch("truncation orders differ".into()));
        }
        Ok(GFunMatrix { g, entries })
    }

    pub fn from_fn(g: usize, mut f: impl FnMut(usize, usize) -> TruncatedSeries<F>) -> Result<Self> {
        GFunMatrix::new(g, (0..g * g).map(|k| f(k / g + 1, k % g + 1)).collect())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    /// 1-based entry.
    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries<F> {
        &self.entries[(i - 1) * self.g + (j - 1)]
    }

    pub fn entries(&self) -> &[TruncatedSeries<F>] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch("g differs".into()));
        }
        GFunMatrix::new(self.g, self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect())
    }
}

/// `a[i][k][ℓ]` for `1 ≤ i, ℓ ≤ g` and `0 ≤ k ≤ N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussManinCoefficients<F: Scalar> {
    g: usize,
    n: usize,
    a: Vec<TruncatedSeries<F>>,
}

impl<F: Scalar> GaussManinCoefficients<F> {
    pub fn from_fn(
        g: usize,
        n: usize,
        mut f: impl FnMut(usize, usize, usize) -> TruncatedSeries<F>,
    ) -> Self {
        let mut a = Vec::with_capacity(g * (n + 1) * g);
        for i in 1..=g {
            for k in 0..=n {
                for l in 1..=g {
                    a.push(f(i, k, l));
                }
            }
        }
        GaussManinCoefficients { g, n, a }
    }

    /// `a_{i0ℓ} = δ_iℓ`, every other coefficient zero.
    pub fn identity(g: usize, n: usize, order: usize) -> Self {
        GaussManinCoefficients::from_fn(g, n, |i, k, l| {
            let c = if k == 0 && i == l { F::one() } else { F::zero() };
            TruncatedSeries::constant(c, order)
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// The derivative order bound `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize, l: usize) -> &TruncatedSeries<F> {
        &self.a[((i - 1) * (self.n + 1) + k) * self.g + (l - 1)]
    }

    pub fn iter(&self) -> impl Iterator<Item = &TruncatedSeries<F>> {
        self.a.iter()
    }
}

/// `G_ij = Σ_{k ≤ N} Σ_ℓ a_ikℓ · (d/dX)^k F_ℓj`; the order drops by `N`.
pub fn derive_g<F: Scalar>(
    f: &GFunMatrix<F>,
    a: &GaussManinCoefficients<F>,
) -> Result<GFunMatrix<F>> {
    if f.g != a.g {
        return Err(Error::DimensionMismatch("F and a disagree on g".into()));
    }
    if f.order() < a.n {
        return Err(Error::InsufficientPrecision { order: f.order(), needed: a.n });
    }
    let g = f.g;
    let out_order = f.order() - a.n;
    let derivs: Vec<Vec<TruncatedSeries<F>>> = f
        .entries
        .iter()
        .map(|s| {
            let mut ds = Vec::with_capacity(a.n + 1);
            let mut cur = s.clone();
            for _ in 0..=a.n {
                ds.push(cur.truncate(out_order));
                cur = cur.derivative();
            }
            ds
        })
        .collect();
    GFunMatrix::from_fn(g, |i, j| {
        let mut acc = TruncatedSeries::zero(out_order);
        for l in 1..=g {
            for (k, d) in derivs[(l - 1) * g + (j - 1)].iter().enumerate() {
                let coeff = a.get(i, k, l);
                if coeff.coeffs().iter().all(|c| c.is_zero()) {
                    continue;
                }
                let term = coeff.mul(d);
                acc = acc.add(&term);
            }
        }
        acc.truncate(out_order)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaceRadius {
    pub place: Place,
    pub r: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaceRadii {
    pub radii: Vec<PlaceRadius>,
}

impl PlaceRadii {
    pub fn get(&self, place: &Place) -> Option<&PlaceRadius> {
        self.radii.iter().find(|r| &r.place == place)
    }
}

/// `r_v = min({1} ∪ {R_v(a_ikℓ)} ∪ {|x|_v : x excluded})` at each place.
///
/// Certified when every coefficient radius is; the constant 1 and the
/// absolute values of excluded points are exact.
pub fn compute_radii<F: Scalar>(
    f: &GFunMatrix<F>,
    g_mat: &GFunMatrix<F>,
    a: &GaussManinCoefficients<F>,
    excluded: &[F],
    places: &[Place],
) -> Result<PlaceRadii> {
    if f.g != a.g || g_mat.g != a.g {
        return Err(Error::DimensionMismatch("F, G and a disagree on g".into()));
    }
    if excluded.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidArgument("excluded values must be nonzero".into()));
    }
    let radii = places
        .iter()
        .map(|v| {
            let mut r = 1.0f64;
            let mut certified = true;
            for s in a.iter() {
                let rep = radius_lower_bound(s, v);
                r = r.min(rep.lower_bound);
                certified &= rep.certified;
            }
            for x in excluded {
                r = r.min(x.abs_at(v));
            }
            PlaceRadius { place: *v, r, certified }
        })
        .collect();
    Ok(PlaceRadii { radii })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodBlock {
    F,
    G,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryCheck {
    pub block: PeriodBlock,
    pub i: usize,
    pub j: usize,
    /// `|series(x) − period|_v`.
    pub discrepancy: f64,
    pub tail_bound: f64,
    pub heuristic: bool,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodCheckReport {
    pub place: Place,
    pub entries: Vec<EntryCheck>,
    pub all_within: bool,
}

/// Compare `F_ij(x)`, `G_ij(x)` with the period matrices of `data`:
/// an entry passes when its discrepancy is at most `tail_bound + tolerance`.
pub fn check_period_equation<F: Scalar>(
    f: &GFunMatrix<F>,
    g_mat: &GFunMatrix<F>,
    data: &SyntheticPeriodData<F>,
    x: &F,
    v: &Place,
    tolerance: f64,
) -> Result<PeriodCheckReport> {
    if f.g != data.g || g_mat.g != data.g {
        return Err(Error::DimensionMismatch("series and data disagree on g".into()));
    }
    let mut entries = Vec::new();
    for (block, series, target) in [(PeriodBlock::F, f, &data.f), (PeriodBlock::G, g_mat, &data.gp)] {
        for i in 1..=data.g {
            for j in 1..=data.g {
                let s = series.get(i, j);
                let r = eval_with_tail_bound(s, x, v, s.is_integral_asserted())?;
                let expected = &target[(i - 1, j - 1)];
                let discrepancy = match &r.value {
                    EvalValue::Exact(val) => (val.clone() - expected).abs_at(v),
                    EvalValue::Float(z) => (z - expected.embed(v.embedding())).norm(),
                };
                // p-adic values are powers of p, so a relative slack of 1e-12
                // only absorbs float rounding of the same power
                let within = discrepancy <= r.tail_bound * (1.0 + 1e-12) + tolerance;
                entries.push(EntryCheck {
                    block,
                    i,
                    j,
                    discrepancy,
                    tail_bound: r.tail_bound,
                    heuristic: r.heuristic,
                    within,
                });
            }
        }
    }
    let all_within = entries.iter().all(|e| e.within);
    Ok(PeriodCheckReport { place: *v, entries, all_within })
}

/// Float value of an evaluation, for reporting.
pub fn eval_value_to_complex<F: Scalar>(v: &EvalValue<F>, place: &Place) -> Complex64 {
    match v {
        EvalValue::Exact(x) => x.embed(place.embedding()),
        EvalValue::Float(z) => *z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::{Rational, Ring};

    fn series(c: &[i64]) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn identity_family_returns_f() {
        let f = GFunMatrix::from_fn(2, |i, j| series(&[i as i64, j as i64, 3, 4])).unwrap();
        let a = GaussManinCoefficients::identity(2, 0, 3);
        assert_eq!(derive_g(&f, &a).unwrap(), f);
    }

    #[test]
    fn single_derivative() {
        let f = GFunMatrix::new(1, alloc::vec![series(&[1, 1, 1, 1, 1])]).unwrap();
        let a = GaussManinCoefficients::from_fn(1, 1, |_, k, _| {
            TruncatedSeries::constant(Rational::from(k as i64), 4)
        });
        let g = derive_g(&f, &a).unwrap();
        assert_eq!(g.get(1, 1), &series(&[1, 2, 3, 4]));
        let short = GFunMatrix::new(1, alloc::vec![series(&[1])]).unwrap();
        assert_eq!(
            derive_g(&short, &a),
            Err(Error::InsufficientPrecision { order: 0, needed: 1 })
        );
    }

    #[test]
    fn radii_examples() {
        let f = GFunMatrix::new(1, alloc::vec![series(&[1, 1])]).unwrap();
        let a = GaussManinCoefficients::from_fn(1, 0, |_, _, _| {
            series(&[1, 3, 9]).assert_integral().unwrap()
        });
        let seven = Place::finite(7).unwrap();
        let r = compute_radii(&f, &f, &a, &[], &[seven]).unwrap();
        assert_eq!(r.get(&seven).unwrap(), &PlaceRadius { place: seven, r: 1.0, certified: true });
        let r = compute_radii(&f, &f, &a, &[Rational::from(7)], &[seven]).unwrap();
        assert_eq!(r.radii[0].r, 1.0 / 7.0);
        // |1/7|_7 = 7 leaves the minimum at 1
        let r = compute_radii(&f, &f, &a, &[Rational::new(1, 7).unwrap()], &[seven]).unwrap();
        assert_eq!(r.radii[0].r, 1.0);
        let half = GaussManinCoefficients::from_fn(1, 0, |_, _, _| series(&[1, 2, 4, 8]));
        let r = compute_radii(&f, &f, &half, &[], &[Place::arch()]).unwrap();
        assert_eq!((r.radii[0].r, r.radii[0].certified), (0.5, false));
    }

    #[test]
    fn period_check_detects_corruption() {
        let g = 1;
        let data = SyntheticPeriodData {
            g,
            m: Matrix::identity(1),
            f: Matrix::from_fn(1, 1, |_, _| Rational::from(2)),
            gp: Matrix::from_fn(1, 1, |_, _| Rational::from(5)),
            seed: 0,
            singular_fallback: false,
        };
        let const_f = GFunMatrix::new(g, alloc::vec![TruncatedSeries::constant(Rational::from(2), 5)]).unwrap();
        let const_g = GFunMatrix::new(g, alloc::vec![TruncatedSeries::constant(Rational::from(5), 5)]).unwrap();
        let x = Rational::new(1, 4).unwrap();
        let rep = check_period_equation(&const_f, &const_g, &data, &x, &Place::arch(), 0.0).unwrap();
        assert!(rep.all_within);
        assert!(rep.entries.iter().all(|e| e.discrepancy == 0.0));
        let bad_g = GFunMatrix::new(g, alloc::vec![TruncatedSeries::constant(Rational::from(6), 5)]).unwrap();
        let rep = check_period_equation(&const_f, &bad_g, &data, &x, &Place::arch(), 1e-9).unwrap();
        assert!(!rep.all_within);
        assert!(!rep.entries[1].within && rep.entries[0].within);
        let _ = Rational::zero();
    }
}
