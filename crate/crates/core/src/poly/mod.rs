//! Sparse multivariate polynomials in the period variables.
//!
//! Variables are `Y_ij`, `Z_ij` (and the primed blocks `Y'`, `Z'` plus an
//! auxiliary block `X`), totally ordered by `(copy, block, row, col)` with
//! `Y < Z < Y' < Z' < X`. Monomials are compared in degree reverse
//! lexicographic order over that variable order.

mod groebner;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

pub use groebner::{buchberger_reduce, groebner_basis, reduce, GroebnerLimits};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Y,
    Z,
    YPrime,
    ZPrime,
    X,
}

impl Block {
    pub fn name(self) -> &'static str {
        match self {
            Block::Y => "Y",
            Block::Z => "Z",
            Block::YPrime => "Y'",
            Block::ZPrime => "Z'",
            Block::X => "X",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "Y" => Block::Y,
            "Z" => Block::Z,
            "Y'" | "Yprime" => Block::YPrime,
            "Z'" | "Zprime" => Block::ZPrime,
            "X" => Block::X,
            _ => return None,
        })
    }
}

/// A variable `Block_{row,col}` in copy `copy`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarId {
    pub block: Block,
    pub row: u16,
    pub col: u16,
    pub copy: u16,
}

impl VarId {
    pub fn new(block: Block, row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "variable indices are 1-based");
        VarId { block, row: row as u16, col: col as u16, copy: 1 }
    }

    pub fn y(row: usize, col: usize) -> Self {
        VarId::new(Block::Y, row, col)
    }

    pub fn z(row: usize, col: usize) -> Self {
        VarId::new(Block::Z, row, col)
    }

    pub fn x(row: usize, col: usize) -> Self {
        VarId::new(Block::X, row, col)
    }

    pub fn with_copy(mut self, copy: u16) -> Self {
        self.copy = copy;
        self
    }

    fn key(&self) -> (u16, Block, u16, u16) {
        (self.copy, self.block, self.row, self.col)
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "{}_{}{}", self.block.name(), self.row, self.col)?;
        } else {
            write!(f, "{}_{{{},{}}}", self.block.name(), self.row, self.col)?;
        }
        if self.copy != 1 {
            write!(f, "[{}]", self.copy)?;
        }
        Ok(())
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    /// Build from arbitrary pairs; merges repeats and drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.0.iter().copied()
    }

    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> Option<u32>) -> Option<Self> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, ea, eb) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = f(ea, eb)?;
            if e > 0 {
                out.push((v, e));
            }
        }
        Some(Monomial(out))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, |a, b| Some(a + b)).expect("total")
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.merge(other, |a, b| a.checked_sub(b))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, |a, b| Some(a.max(b))).expect("total")
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().all(|&(v, _)| other.exponent(v) == 0)
    }

    fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Self {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Degree reverse lexicographic: higher total degree is larger; on ties the
/// monomial with the smaller exponent at the smallest differing variable is
/// larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // self has a positive exponent where other has zero
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal if ea != eb => return eb.cmp(&ea),
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

pub type PolyMatrix<F> = Matrix<MultiPoly<F>>;

impl<F: Scalar> MultiPoly<F> {
    pub fn constant(c: F) -> Self {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        MultiPoly::term(Monomial::var(v), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = MultiPoly { terms: BTreeMap::new() };
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &F) -> Self {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone() * k)).collect(),
        }
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluate with every variable bound by `assign`.
    pub fn eval(&self, assign: impl Fn(VarId) -> Option<F>) -> Result<F> {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = assign(v).ok_or_else(|| Error::UnboundVariable(alloc::format!("{v}")))?;
                for _ in 0..e {
                    t = t * &x;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Evaluate at `Y = y`, `Z = z` (copy 1, 1-based indices).
    pub fn eval_yz(&self, y: &Matrix<F>, z: &Matrix<F>) -> Result<F> {
        self.eval(|v| matrix_binding(v, y, z))
    }

    /// Replace each variable `v` by `sub(v)`, keeping it when `None`.
    pub fn substitute(&self, sub: impl Fn(VarId) -> Option<MultiPoly<F>>) -> Self {
        let mut cache: BTreeMap<VarId, MultiPoly<F>> = BTreeMap::new();
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (v, e) in m.iter() {
                let image = cache
                    .entry(v)
                    .or_insert_with(|| sub(v).unwrap_or_else(|| MultiPoly::var(v)))
                    .clone();
                for _ in 0..e {
                    t = t * &image;
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, v: VarId) -> Self {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| {
                let reduced = m.div(&Monomial::var(v)).expect("v divides m");
                (reduced, c.clone() * &F::from_i64(e as i64))
            })
        }))
    }

    /// Rename variables; `f` must be injective on the variables present.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Apply the row permutation `row ↦ perm[row − 1] + 1` to the `Y` and
    /// `Z` variables simultaneously.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        self.rename(|v| match v.block {
            Block::Y | Block::Z => {
                VarId { row: perm[v.row as usize - 1] as u16 + 1, ..v }
            }
            _ => v,
        })
    }

    /// Split `Σ (a + b√d) m` into the rational polynomials `Σ a m` and
    /// `Σ b m`.
    pub fn rational_components(&self) -> (MultiPoly<Rational>, MultiPoly<Rational>) {
        let a = MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.components().0)));
        let b = MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.components().1)));
        (a, b)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MultiPoly::one(), |acc, _| acc * self)
    }
}

fn matrix_binding<F: Scalar>(v: VarId, y: &Matrix<F>, z: &Matrix<F>) -> Option<F> {
    let m = match (v.block, v.copy) {
        (Block::Y, 1) => y,
        (Block::Z, 1) => z,
        _ => return None,
    };
    let (r, c) = (v.row as usize - 1, v.col as usize - 1);
    (r < m.rows() && c < m.cols()).then(|| m[(r, c)].clone())
}

impl<F: fmt::Debug> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (DisplayAsDebug(m), c))).finish()
    }
}

struct DisplayAsDebug<'a, T>(&'a T);

impl<T: fmt::Display> fmt::Debug for DisplayAsDebug<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self.0, f)
    }
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> Ring for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        MultiPoly::constant(F::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<'a, F: Scalar> Add<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(mut self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl<F: Scalar> Add for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        if self.terms.len() < rhs.terms.len() {
            rhs + &self
        } else {
            self + &rhs
        }
    }
}

impl<'a, F: Scalar> Sub<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(mut self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl<F: Scalar> Sub for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        self - &rhs
    }
}

impl<'a, F: Scalar> Mul<&'a MultiPoly<F>> for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &'a MultiPoly<F>) -> MultiPoly<F> {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }
}

impl<F: Scalar> Mul for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        self * &rhs
    }
}

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

/// The `rows × cols` matrix of variables `block_ij`.
pub fn symbolic_matrix<F: Scalar>(block: Block, rows: usize, cols: usize) -> PolyMatrix<F> {
    Matrix::from_fn(rows, cols, |r, c| MultiPoly::var(VarId::new(block, r + 1, c + 1)))
}

/// Embed a scalar matrix as constant polynomials.
pub fn constant_matrix<F: Scalar>(m: &Matrix<F>) -> PolyMatrix<F> {
    m.map(|c| MultiPoly::constant(c.clone()))
}

/// Evaluate every entry at `Y = y`, `Z = z`.
pub fn eval_matrix_yz<F: Scalar>(
    p: &PolyMatrix<F>,
    y: &Matrix<F>,
    z: &Matrix<F>,
) -> Result<Matrix<F>> {
    let rows: Result<Vec<Vec<F>>> = (0..p.rows())
        .map(|r| (0..p.cols()).map(|c| p[(r, c)].eval_yz(y, z)).collect())
        .collect();
    Matrix::from_rows(rows?)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Rational>;

    fn y(i: usize, j: usize) -> P {
        P::var(VarId::y(i, j))
    }
    fn z(i: usize, j: usize) -> P {
        P::var(VarId::z(i, j))
    }
    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn variable_order() {
        assert!(VarId::y(1, 1) < VarId::y(1, 2));
        assert!(VarId::y(2, 2) < VarId::z(1, 1));
        assert!(VarId::z(3, 3) < VarId::new(Block::YPrime, 1, 1));
        assert!(VarId::y(3, 3).with_copy(1) < VarId::y(1, 1).with_copy(2));
    }

    #[test]
    fn degrevlex_examples() {
        let m = |p: &[(VarId, u32)]| Monomial::from_pairs(p.iter().copied());
        let (a, b, c) = (VarId::y(1, 1), VarId::y(1, 2), VarId::y(2, 1));
        // degree dominates
        assert!(m(&[(a, 3)]) > m(&[(c, 2)]));
        // among degree 2: fewer powers of the smallest variable is larger
        assert!(m(&[(c, 2)]) > m(&[(a, 1), (b, 1)]));
        assert!(m(&[(a, 1), (c, 1)]) > m(&[(a, 2)]));
        assert_eq!(m(&[(a, 1), (b, 1)]).cmp(&m(&[(b, 1), (a, 1)])), Ordering::Equal);
    }

    #[test]
    fn monomial_division() {
        let m = Monomial::from_pairs([(VarId::y(1, 1), 2), (VarId::z(1, 2), 1)]);
        let d = Monomial::var(VarId::y(1, 1));
        assert!(d.divides(&m));
        assert_eq!(m.div(&d).unwrap().degree(), 2);
        assert!(m.div(&Monomial::var(VarId::z(2, 2))).is_none());
        assert_eq!(m.lcm(&Monomial::var(VarId::z(2, 2))).degree(), 4);
    }

    #[test]
    fn arithmetic_cancels() {
        let p = y(1, 1) * z(1, 2) - z(1, 1) * y(1, 2);
        assert!((p.clone() - p.clone()).is_zero());
        let sq = (y(1, 1) + z(1, 1)) * (y(1, 1) - z(1, 1));
        assert_eq!(sq, y(1, 1) * y(1, 1) - z(1, 1) * z(1, 1));
        assert_eq!(sq.num_terms(), 2);
        assert!(sq.is_homogeneous());
        assert!(!(sq + P::one()).is_homogeneous());
    }

    #[test]
    fn symbolic_transpose_product_entry() {
        let ym = symbolic_matrix::<Rational>(Block::Y, 2, 2);
        let zm = symbolic_matrix::<Rational>(Block::Z, 2, 2);
        let prod = ym.transpose().mul(&zm);
        assert_eq!(prod[(0, 0)], y(1, 1) * z(1, 1) + y(2, 1) * z(2, 1));
        assert_eq!(ym.transpose().transpose(), ym);
        assert_eq!(ym.mul(&PolyMatrix::identity(2)), ym);
    }

    #[test]
    fn symbolic_adjugate() {
        let m = symbolic_matrix::<Rational>(Block::X, 2, 2);
        let adj = m.adjugate().unwrap();
        let x = |i, j| P::var(VarId::x(i, j));
        assert_eq!(adj[(0, 0)], x(2, 2));
        assert_eq!(adj[(0, 1)], -x(1, 2));
        assert_eq!(adj[(1, 0)], -x(2, 1));
        assert_eq!(adj[(1, 1)], x(1, 1));
        assert_eq!(PolyMatrix::<Rational>::identity(3).cofactor_det().unwrap(), P::one());
    }

    #[test]
    fn adjugate_identity_g3() {
        let yt = symbolic_matrix::<Rational>(Block::Y, 3, 3).transpose();
        let det = yt.cofactor_det().unwrap();
        let lhs = yt.mul(&yt.adjugate().unwrap());
        assert_eq!(lhs, PolyMatrix::scalar(3, det.clone()));
        assert_eq!(det.num_terms(), 6);
    }

    #[test]
    fn eval_substitute_partial() {
        let p = y(1, 1) * y(1, 1) * z(2, 1) + P::constant(q(3));
        let ym = Matrix::from_fn(2, 2, |r, c| q((r * 2 + c) as i64 + 1));
        let zm = Matrix::from_fn(2, 2, |r, c| q(r as i64 - c as i64));
        // y11 = 1, z21 = 1
        assert_eq!(p.eval_yz(&ym, &zm).unwrap(), q(4));
        assert!(matches!(
            P::var(VarId::x(1, 1)).eval_yz(&ym, &zm),
            Err(Error::UnboundVariable(_))
        ));
        let s = p.substitute(|v| (v == VarId::y(1, 1)).then(|| y(1, 1) + z(1, 1)));
        assert_eq!(s.eval_yz(&ym, &zm).unwrap(), q(4));
        assert_eq!(p.partial(VarId::y(1, 1)), y(1, 1) * z(2, 1) * P::constant(q(2)));
        assert!(p.partial(VarId::z(2, 2)).is_zero());
    }

    #[test]
    fn row_permutation() {
        let p = y(1, 1) * z(1, 2);
        let swapped = p.permute_rows(&[3, 1, 2, 0]);
        assert_eq!(swapped, y(4, 1) * z(4, 2));
    }
}
