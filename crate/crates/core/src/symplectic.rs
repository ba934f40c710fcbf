//! Exact symplectic similitudes `MᵗJM = μJ` with `J = [[0, I], [−I, 0]]`,
//! isotropic frames and symplectic basis completion.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::{self, SeededRng};
use crate::scalar::{Rational, Ring, Scalar};

/// `J = [[0, I_n], [−I_n, 0]]` of size `2n`.
pub fn standard_j<F: Scalar>(n: usize) -> Matrix<F> {
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if c == r + n {
            F::one()
        } else if r == c + n {
            -F::one()
        } else {
            F::zero()
        }
    })
}

/// Does `MᵗJM = μJ` hold exactly?
pub fn is_similitude<F: Scalar>(m: &Matrix<F>, mu: &F) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let j = standard_j::<F>(m.rows() / 2);
    m.transpose().mul(&j).mul(m) == j.scale(mu)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSample {
    matrix: Matrix<Rational>,
    multiplier: Rational,
}

impl SymplecticSample {
    /// Checks `MᵗJM = μJ` with `μ ≠ 0`.
    pub fn new(matrix: Matrix<Rational>, multiplier: Rational) -> Result<Self> {
        if multiplier.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        if !is_similitude(&matrix, &multiplier) {
            return Err(Error::InvariantViolation("MᵗJM ≠ μJ".into()));
        }
        Ok(SymplecticSample { matrix, multiplier })
    }

    pub fn identity(g: usize) -> Self {
        SymplecticSample { matrix: Matrix::identity(2 * g), multiplier: Rational::one() }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }

    pub fn g(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn verify(&self) -> bool {
        !self.multiplier.is_zero() && is_similitude(&self.matrix, &self.multiplier)
    }
}

/// Random element of `Sp_{2g}(ℤ)`: a product of `word_length` generators
/// `diag(A, A⁻ᵗ)`, `[[I, B], [0, I]]` (`B` symmetric) and `J`, with small
/// integer entries.
pub fn sample_symplectic(g: usize, seed: u64, word_length: usize) -> SymplecticSample {
    sample_symplectic_with(&mut rng::seeded(seed), g, word_length)
}

pub fn sample_symplectic_with(
    rng: &mut SeededRng,
    g: usize,
    word_length: usize,
) -> SymplecticSample {
    assert!(g >= 1, "g must be positive");
    let mut m = Matrix::<Rational>::identity(2 * g);
    for _ in 0..word_length {
        let gen = match rng::small_int(rng, 0, 2) {
            0 => {
                let a = random_unimodular(rng, g);
                let a_inv_t = a.inverse().expect("unimodular").transpose();
                Matrix::block(&a, &Matrix::zeros(g, g), &Matrix::zeros(g, g), &a_inv_t)
                    .expect("square blocks")
            }
            1 => {
                let b = random_symmetric(rng, g);
                Matrix::block(&Matrix::identity(g), &b, &Matrix::zeros(g, g), &Matrix::identity(g))
                    .expect("square blocks")
            }
            _ => standard_j(g),
        };
        m = m.mul(&gen);
    }
    let sample = SymplecticSample { matrix: m, multiplier: Rational::one() };
    assert!(sample.verify(), "generator product left Sp_2g");
    sample
}

/// Product of `g` elementary transvections `I + cE_ij`, `c ∈ {−2..2}`.
fn random_unimodular(rng: &mut SeededRng, g: usize) -> Matrix<Rational> {
    let mut a = Matrix::<Rational>::identity(g);
    if g == 1 {
        return if rng::small_int(rng, 0, 1) == 0 { a } else { a.neg() };
    }
    for _ in 0..g {
        let i = rng::small_int(rng, 0, g as i64 - 1) as usize;
        let mut j = rng::small_int(rng, 0, g as i64 - 2) as usize;
        if j >= i {
            j += 1;
        }
        let mut e = Matrix::<Rational>::identity(g);
        e[(i, j)] = rng::small_rational(rng, 2);
        a = a.mul(&e);
    }
    a
}

fn random_symmetric(rng: &mut SeededRng, g: usize) -> Matrix<Rational> {
    let mut b = Matrix::<Rational>::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = rng::small_rational(rng, 2);
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    b
}

/// Right-multiply by `diag(I, μI)`; the multiplier is multiplied by `μ`.
pub fn with_multiplier(s: &SymplecticSample, mu: &Rational) -> Result<SymplecticSample> {
    if mu.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let g = s.g();
    let d = Matrix::block(
        &Matrix::identity(g),
        &Matrix::zeros(g, g),
        &Matrix::zeros(g, g),
        &Matrix::scalar(g, mu.clone()),
    )
    .expect("square blocks");
    SymplecticSample::new(s.matrix.mul(&d), s.multiplier.clone() * mu)
}

/// A `2g × g` matrix `(Y; Z)` with `YᵗZ = ZᵗY`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicFrame {
    columns: Matrix<Rational>,
}

impl IsotropicFrame {
    pub fn new(columns: Matrix<Rational>) -> Result<Self> {
        if columns.rows() != 2 * columns.cols() {
            return Err(Error::DimensionMismatch("frame must be 2g × g".into()));
        }
        let frame = IsotropicFrame { columns };
        if !frame.defect().is_zero() {
            return Err(Error::InvariantViolation("YᵗZ − ZᵗY ≠ 0".into()));
        }
        Ok(frame)
    }

    pub fn from_blocks(y: &Matrix<Rational>, z: &Matrix<Rational>) -> Result<Self> {
        let g = y.cols();
        IsotropicFrame::new(Matrix::block(y, &Matrix::zeros(g, 0), z, &Matrix::zeros(g, 0))?)
    }

    pub fn g(&self) -> usize {
        self.columns.cols()
    }

    pub fn columns(&self) -> &Matrix<Rational> {
        &self.columns
    }

    pub fn y(&self) -> Matrix<Rational> {
        let g = self.g();
        self.columns.submatrix(0, g, 0, g)
    }

    pub fn z(&self) -> Matrix<Rational> {
        let g = self.g();
        self.columns.submatrix(g, 2 * g, 0, g)
    }

    /// `YᵗZ − ZᵗY`.
    pub fn defect(&self) -> Matrix<Rational> {
        let (y, z) = (self.y(), self.z());
        y.transpose().mul(&z).sub(&z.transpose().mul(&y))
    }
}

/// The first `g` columns of a sample.
pub fn project_to_v(s: &SymplecticSample) -> IsotropicFrame {
    let g = s.g();
    IsotropicFrame::new(s.matrix.submatrix(0, 2 * g, 0, g))
        .expect("the first g columns of a similitude are isotropic")
}

/// Extend an isotropic frame `W` to `M = [W | U]` with `MᵗJM = J`.
///
/// `U₀` solves `WᵗJU₀ = I` on the first standard basis vectors (in index
/// order) whose images under `WᵗJ` are independent; then
/// `U = U₀ + W·(U₀ᵗJU₀)/2` makes the complement Lagrangian.
pub fn complete_to_symplectic_basis(frame: &IsotropicFrame) -> Result<SymplecticSample> {
    let g = frame.g();
    let w = frame.columns();
    if w.rank() < g {
        return Err(Error::FrameNotFullRank);
    }
    let wtj = w.transpose().mul(&standard_j(g));
    let mut chosen: Vec<usize> = Vec::with_capacity(g);
    for c in 0..2 * g {
        let mut cols = chosen.clone();
        cols.push(c);
        let sub = Matrix::from_fn(g, cols.len(), |r, k| wtj[(r, cols[k])].clone());
        if sub.rank() == cols.len() {
            chosen = cols;
            if chosen.len() == g {
                break;
            }
        }
    }
    let square = Matrix::from_fn(g, g, |r, k| wtj[(r, chosen[k])].clone());
    let inv = square.inverse()?;
    let mut u0 = Matrix::<Rational>::zeros(2 * g, g);
    for (k, &row) in chosen.iter().enumerate() {
        for c in 0..g {
            u0[(row, c)] = inv[(k, c)].clone();
        }
    }
    let s0 = u0.transpose().mul(&standard_j(g)).mul(&u0);
    let half = Rational::new(1, 2).expect("nonzero");
    let u = u0.add(&w.mul(&s0.scale(&half)));
    let m = Matrix::block(w, &u, &Matrix::zeros(0, g), &Matrix::zeros(0, g))?;
    SymplecticSample::new(m, Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_words() {
        let s = sample_symplectic(3, 1, 0);
        assert_eq!(s, SymplecticSample::identity(3));
        let j = standard_j::<Rational>(2);
        assert!(is_similitude(&j, &Rational::one()));
        let f = project_to_v(&SymplecticSample::new(j, Rational::one()).unwrap());
        assert!(f.y().is_zero());
        assert_eq!(f.z(), Matrix::identity(2).neg());
    }

    #[test]
    fn seeded_sample_is_reproducible() {
        let a = sample_symplectic(2, 42, 6);
        assert!(a.verify());
        assert_eq!(a, sample_symplectic(2, 42, 6));
    }

    #[test]
    fn multiplier_scaling() {
        let id = with_multiplier(&SymplecticSample::identity(2), &Rational::from(3)).unwrap();
        assert_eq!(id.multiplier(), &Rational::from(3));
        assert_eq!(id.matrix()[(3, 3)], Rational::from(3));
        assert_eq!(id.matrix()[(1, 1)], Rational::one());
        let mu = Rational::new(-2, 5).unwrap();
        let s = with_multiplier(&sample_symplectic(3, 9, 8), &mu).unwrap();
        assert!(is_similitude(s.matrix(), &mu));
        assert_eq!(
            with_multiplier(&s, &Rational::zero()),
            Err(Error::ZeroMultiplier)
        );
    }

    #[test]
    fn completion_of_standard_frame() {
        let f = IsotropicFrame::from_blocks(&Matrix::identity(2), &Matrix::zeros(2, 2)).unwrap();
        let s = complete_to_symplectic_basis(&f).unwrap();
        assert_eq!(s.matrix(), &Matrix::identity(4));
    }

    #[test]
    fn completion_rejects_degenerate_frames() {
        let y = Matrix::from_fn(2, 2, |_, _| Rational::one());
        let f = IsotropicFrame::from_blocks(&y, &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(complete_to_symplectic_basis(&f), Err(Error::FrameNotFullRank));
        let z = Matrix::from_fn(2, 2, |r, c| Rational::from((r == 0 && c == 1) as i64));
        assert!(matches!(
            IsotropicFrame::from_blocks(&Matrix::identity(2), &z),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn completion_keeps_frame_columns() {
        for seed in 0..10 {
            let frame = project_to_v(&sample_symplectic(3, seed, 8));
            let s = complete_to_symplectic_basis(&frame).unwrap();
            assert_eq!(&s.matrix().submatrix(0, 6, 0, 3), frame.columns());
        }
    }
}
