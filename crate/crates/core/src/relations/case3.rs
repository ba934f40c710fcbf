//! The real-quadratic construction: a degree-2 relation `Q` on a synthetic
//! period matrix `H`, transported to the `Y`, `Z` variables through a
//! change of basis `N = [[A, B], [C, D]]` with `√e·N` symplectic.

use alloc::vec::Vec;

use super::{ConstructionKind, RelationCertificate, StructuralEvidence, VanishingRecord};
use crate::error::{Error, Result};
use crate::ideal::{self, TrivialIdeal};
use crate::matrix::Matrix;
use crate::poly::{self, Block, MultiPoly, VarId};
use crate::rng;
use crate::scalar::{QuadScalar, Rational, Ring, Scalar};
use crate::symplectic::{is_similitude, sample_symplectic_with, standard_j};

fn check_genus(g: usize) -> Result<()> {
    if g <= 2 || !g.is_multiple_of(2) {
        return Err(Error::Case3Genus);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case3Input {
    g: usize,
    h: Matrix<Rational>,
    change: Matrix<QuadScalar>,
    sqrt_e: QuadScalar,
}

impl Case3Input {
    /// Validates `g` even and `> 2`, `H` invertible, and
    /// `(√e N)ᵗ J (√e N) = J` exactly.
    pub fn new(h: Matrix<Rational>, change: Matrix<QuadScalar>, sqrt_e: QuadScalar) -> Result<Self> {
        let g = h.rows();
        check_genus(g)?;
        if !h.is_square() || change.rows() != 2 * g || change.cols() != 2 * g {
            return Err(Error::DimensionMismatch("H is g × g and N is 2g × 2g".into()));
        }
        if h.det()?.is_zero() {
            return Err(Error::DegeneratePeriodMatrix);
        }
        if sqrt_e.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        let scaled = change.scale(&sqrt_e);
        if !is_similitude(&scaled, &QuadScalar::one()) {
            return Err(Error::InvariantViolation("√e·N is not symplectic".into()));
        }
        Ok(Case3Input { g, h, change, sqrt_e })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn h(&self) -> &Matrix<Rational> {
        &self.h
    }

    pub fn change(&self) -> &Matrix<QuadScalar> {
        &self.change
    }

    pub fn sqrt_e(&self) -> &QuadScalar {
        &self.sqrt_e
    }

    pub fn e(&self) -> QuadScalar {
        self.sqrt_e.clone() * &self.sqrt_e
    }

    /// `(A, B, C, D)`.
    pub fn blocks(&self) -> [Matrix<QuadScalar>; 4] {
        let g = self.g;
        [
            self.change.submatrix(0, g, 0, g),
            self.change.submatrix(0, g, g, 2 * g),
            self.change.submatrix(g, 2 * g, 0, g),
            self.change.submatrix(g, 2 * g, g, 2 * g),
        ]
    }
}

/// Random input over `ℚ(√d)`: invertible `H` with entries in `{−3..3}`,
/// `√e = a + b√d` with small nonzero `a, b`, and `N = S·T/√e` where `S` is
/// a rational symplectic word and `T = [[I, √d·B], [0, I]]` with `B`
/// symmetric.
pub fn sample_case3_input(g: usize, seed: u64, d: i64) -> Result<Case3Input> {
    check_genus(g)?;
    let mut rng = rng::seeded(seed);
    let h = loop {
        let h = Matrix::from_fn(g, g, |_, _| rng::small_rational(&mut rng, 3));
        if !h.det()?.is_zero() {
            break h;
        }
    };
    let nonzero = |rng: &mut rng::SeededRng| loop {
        let x = rng::small_int(rng, -2, 2);
        if x != 0 {
            return Rational::from(x);
        }
    };
    let sqrt_e = QuadScalar::new(d, nonzero(&mut rng), nonzero(&mut rng))?;
    let root = QuadScalar::sqrt_d(d)?;
    let s = sample_symplectic_with(&mut rng, g, 4).matrix().map(|x| QuadScalar::rational(x.clone()));
    let mut b = Matrix::<QuadScalar>::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = root.clone() * QuadScalar::rational(rng::small_rational(&mut rng, 2));
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    let t = Matrix::block(&Matrix::identity(g), &b, &Matrix::zeros(g, g), &Matrix::identity(g))?;
    let inv = sqrt_e.inv().ok_or(Error::DivisionByZero)?;
    Case3Input::new(h, s.mul(&t).scale(&inv), sqrt_e)
}

/// `R` and `S`: the `(1, 2)` and `(1, g/2 + 2)` entries of `XᵗJX`.
pub fn r_and_s(g: usize) -> Result<(MultiPoly<Rational>, MultiPoly<Rational>)> {
    check_genus(g)?;
    let x = poly::symbolic_matrix::<Rational>(Block::X, g, g);
    let j = poly::constant_matrix(&standard_j::<Rational>(g / 2));
    let form = x.transpose().mul(&j).mul(&x);
    Ok((form[(0, 1)].clone(), form[(0, g / 2 + 1)].clone()))
}

/// `(λ, μ) ≠ 0` with `λ m12 + μ m1s = 0`.
pub fn choose_coefficients(m12: &Rational, m1s: &Rational) -> (Rational, Rational) {
    match (m12.is_zero(), m1s.is_zero()) {
        (true, true) | (true, false) => (Rational::one(), Rational::zero()),
        (false, true) => (Rational::zero(), Rational::one()),
        (false, false) => (m1s.clone(), -m12.clone()),
    }
}

/// `X_{i,j} ↦ Y_ij` and `X_{g/2+i,j} ↦ Z_ij` for `i ≤ g/2`.
pub fn lift_to_yz<F: Scalar>(q: &MultiPoly<F>, g: usize) -> MultiPoly<F> {
    let half = g / 2;
    q.rename(|v| {
        if v.block != Block::X {
            return v;
        }
        let (r, c) = (v.row as usize, v.col as usize);
        if r <= half {
            VarId::y(r, c)
        } else {
            VarId::z(r - half, c)
        }
    })
}

/// `Φ: Y ↦ AᵗY + CᵗZ, Z ↦ BᵗY + DᵗZ`.
pub fn phi(p: &MultiPoly<QuadScalar>, input: &Case3Input) -> MultiPoly<QuadScalar> {
    let g = input.g;
    let [a, b, c, d] = input.blocks();
    let linear = |m1: &Matrix<QuadScalar>, m2: &Matrix<QuadScalar>, i: usize, j: usize| {
        (0..g).fold(MultiPoly::zero(), |acc, k| {
            acc + MultiPoly::var(VarId::y(k + 1, j)).scale(&m1[(k, i - 1)])
                + MultiPoly::var(VarId::z(k + 1, j)).scale(&m2[(k, i - 1)])
        })
    };
    p.substitute(|v| match (v.block, v.copy) {
        (Block::Y, 1) => Some(linear(&a, &c, v.row as usize, v.col as usize)),
        (Block::Z, 1) => Some(linear(&b, &d, v.row as usize, v.col as usize)),
        _ => None,
    })
}

/// Does `Φ(YᵗZ − ZᵗY) = scale·(YᵗZ − ZᵗY)` hold entrywise?
pub fn phi_rescales_generators(input: &Case3Input, scale: &QuadScalar) -> bool {
    let gens = ideal::generator_matrix::<QuadScalar>(input.g);
    let image = gens.map(|p| phi(p, input));
    image == gens.scale(&MultiPoly::constant(scale.clone()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case3Relation {
    /// `M' = HᵗJH`.
    pub m_prime: Matrix<Rational>,
    pub lambda: Rational,
    pub mu: Rational,
    /// `Q = λR + μS` in the `X` variables.
    pub q: MultiPoly<Rational>,
    /// `Q` lifted to `Y`, `Z`.
    pub p_hat: MultiPoly<Rational>,
    pub certificate: RelationCertificate<QuadScalar>,
}

/// Build `Q`, `P̂` and `P = P̂ ∘ Φ` with evidence.
///
/// Evidence: `Q(H) = 0`; `P` vanishes on period data `(F; G) = (Nᵗ)⁻¹(F̂; Ĝ)`
/// where `(F̂; Ĝ)` carries `H` in the rows read by `P̂`; swapping rows 1
/// and `g` changes `P̂`; `Φ` rescales the generators of `I` by `1/e`; and a
/// point of `V` where `P ≠ 0`.
pub fn build_case3_relation(input: &Case3Input, budget: usize, seed: u64) -> Result<Case3Relation> {
    let g = input.g;
    let half = g / 2;
    let h = &input.h;
    let m_prime = h.transpose().mul(&standard_j(half)).mul(h);
    let (m12, m1s) = (&m_prime[(0, 1)], &m_prime[(0, half + 1)]);
    let (lambda, mu) = choose_coefficients(m12, m1s);
    let (r, s) = r_and_s(g)?;
    let q = r.scale(&lambda) + s.scale(&mu);
    if q.is_zero() {
        return Err(Error::InvariantViolation("Q vanishes identically".into()));
    }
    let q_at_h = q.eval(|v| {
        (v.block == Block::X).then(|| h[(v.row as usize - 1, v.col as usize - 1)].clone())
    })?;
    let p_hat = lift_to_yz(&q, g);
    let p = phi(&p_hat.map_coeffs(|c| QuadScalar::rational(c.clone())), input);

    // synthetic data: top halves of F̂, Ĝ are the halves of H
    let mut rng = rng::seeded(seed);
    let stacked = Matrix::from_fn(2 * g, g, |r, c| {
        if r < half {
            QuadScalar::rational(h[(r, c)].clone())
        } else if (g..g + half).contains(&r) {
            QuadScalar::rational(h[(r - g + half, c)].clone())
        } else {
            QuadScalar::rational(rng::small_rational(&mut rng, 3))
        }
    });
    let fg = input.change.transpose().solve(&stacked)?;
    let (f, gp) = (fg.submatrix(0, g, 0, g), fg.submatrix(g, 2 * g, 0, g));
    let on_data = p.eval_yz(&f, &gp)?.is_zero();

    let swap = ideal::transposition(g, 0, g - 1);
    let changed = ideal::row_permutation_test(&p_hat, &swap);
    let e_inv = input.e().inv().ok_or(Error::DivisionByZero)?;
    let rescaled = phi_rescales_generators(input, &e_inv);
    if !(changed && rescaled) {
        return Err(Error::InvariantViolation("structural non-triviality check failed".into()));
    }
    let structural = alloc::vec![
        StructuralEvidence::RowPermutationChanges { polynomial: "P_hat", perm: swap },
        StructuralEvidence::GeneratorsRescaled { scale: e_inv },
    ];
    let nontriviality = ideal::membership(&p, &TrivialIdeal::new(g), budget, seed);
    let certificate = RelationCertificate {
        g,
        degree: p.degree().unwrap_or(0),
        polynomial: p,
        vanishing_evidence: alloc::vec![
            VanishingRecord { data_id: "Q(H)".into(), is_zero: q_at_h.is_zero() },
            VanishingRecord { data_id: alloc::format!("transported:seed={seed}"), is_zero: on_data },
        ],
        nontriviality,
        structural,
        kind: ConstructionKind::Case3,
        factors: Vec::new(),
    };
    Ok(Case3Relation { m_prime, lambda, mu, q, p_hat, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_restrictions() {
        for g in [1, 2, 3, 5] {
            assert_eq!(r_and_s(g), Err(Error::Case3Genus));
            assert_eq!(sample_case3_input(g, 0, 5).map(|_| ()), Err(Error::Case3Genus));
        }
    }

    #[test]
    fn identity_h_uses_r() {
        let g = 4;
        let change = Matrix::<QuadScalar>::identity(2 * g);
        let input = Case3Input::new(Matrix::identity(g), change, QuadScalar::one()).unwrap();
        let rel = build_case3_relation(&input, 10, 0).unwrap();
        assert_eq!(rel.m_prime, standard_j(2));
        assert_eq!((rel.lambda.clone(), rel.mu.clone()), (Rational::one(), Rational::zero()));
        assert_eq!(rel.q, r_and_s(4).unwrap().0);
        assert!(rel.certificate.is_certified());
        assert_eq!(rel.certificate.degree, 2);
    }

    #[test]
    fn r_and_s_supports_disjoint() {
        let (r, s) = r_and_s(6).unwrap();
        assert_eq!(r.num_terms(), 6);
        assert!(r.terms().all(|(m, _)| s.coeff(m).is_zero()));
    }

    #[test]
    fn coefficient_rule() {
        let (z, one, two) = (Rational::zero(), Rational::one(), Rational::from(2));
        assert_eq!(choose_coefficients(&z, &z), (one.clone(), z.clone()));
        assert_eq!(choose_coefficients(&z, &two), (one.clone(), z.clone()));
        assert_eq!(choose_coefficients(&two, &z), (z.clone(), one.clone()));
        assert_eq!(choose_coefficients(&two, &one), (one, -two));
    }

    #[test]
    fn random_input_relation() {
        let input = sample_case3_input(4, 3, 5).unwrap();
        let rel = build_case3_relation(&input, 20, 3).unwrap();
        assert!(rel.certificate.is_certified());
        assert!(rel.certificate.vanishing_evidence.iter().all(|r| r.is_zero));
        assert!(rel.certificate.polynomial.is_homogeneous());
    }

    #[test]
    fn rescaling_is_inverse_e_not_inverse_sqrt_e() {
        let input = sample_case3_input(4, 11, 2).unwrap();
        assert_ne!(input.e(), QuadScalar::one());
        assert!(phi_rescales_generators(&input, &input.e().inv().unwrap()));
        assert!(!phi_rescales_generators(&input, &input.sqrt_e().inv().unwrap()));
    }

    #[test]
    fn unnormalized_change_rejected() {
        let g = 4;
        let two = QuadScalar::rational(Rational::from(2));
        let change = Matrix::<QuadScalar>::identity(2 * g).scale(&two);
        assert!(matches!(
            Case3Input::new(Matrix::identity(g), change, QuadScalar::one()),
            Err(Error::InvariantViolation(_))
        ));
        let singular = Matrix::<Rational>::zeros(g, g);
        assert_eq!(
            Case3Input::new(singular, Matrix::identity(2 * g), QuadScalar::one()),
            Err(Error::DegeneratePeriodMatrix)
        );
    }
}
