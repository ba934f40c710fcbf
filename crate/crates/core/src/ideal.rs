//! The ideal `I` of trivial period relations, generated by the entries of
//! `YᵗZ − ZᵗY`, with a Jacobian radicality certificate and exact or
//! sampled membership.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::poly::{self, Block, GroebnerLimits, MultiPoly, PolyMatrix, VarId};
use crate::rng::{self, SeededRng};
use crate::scalar::{Rational, Ring, Scalar};
use crate::symplectic::{project_to_v, sample_symplectic_with, IsotropicFrame};

/// The standing justification for primality, reported alongside radicality.
pub const PRIMALITY_NOTE: &str =
    "primality of I is assumed from the irreducibility of V (image of the GSp torsor); \
     only radicality is certified here";

/// The symbolic matrix `YᵗZ − ZᵗY`.
pub fn generator_matrix<F: Scalar>(g: usize) -> PolyMatrix<F> {
    let y = poly::symbolic_matrix::<F>(Block::Y, g, g);
    let z = poly::symbolic_matrix::<F>(Block::Z, g, g);
    y.transpose().mul(&z).sub(&z.transpose().mul(&y))
}

/// `f_ij = Σ_k (Y_ki Z_kj − Z_ki Y_kj)`, 1-based, for any `i, j`.
pub fn f<F: Scalar>(g: usize, i: usize, j: usize) -> MultiPoly<F> {
    (1..=g).fold(MultiPoly::zero(), |acc, k| {
        acc + MultiPoly::var(VarId::y(k, i)) * MultiPoly::var(VarId::z(k, j))
            - MultiPoly::var(VarId::z(k, i)) * MultiPoly::var(VarId::y(k, j))
    })
}

/// The `Y` then `Z` variables, each block in row-major order.
pub fn yz_variables(g: usize) -> Vec<VarId> {
    let mut vars = Vec::with_capacity(2 * g * g);
    for block in [Block::Y, Block::Z] {
        for r in 1..=g {
            for c in 1..=g {
                vars.push(VarId::new(block, r, c));
            }
        }
    }
    vars
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrivialIdeal {
    g: usize,
    generators: Vec<((usize, usize), MultiPoly<Rational>)>,
}

impl TrivialIdeal {
    /// The `g(g−1)/2` generators `f_ij`, `i < j`.
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "g must be positive");
        let mut generators = Vec::new();
        for i in 1..=g {
            for j in i + 1..=g {
                generators.push(((i, j), f(g, i, j)));
            }
        }
        TrivialIdeal { g, generators }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `((i, j), f_ij)` for `i < j`.
    pub fn generators(&self) -> &[((usize, usize), MultiPoly<Rational>)] {
        &self.generators
    }

    pub fn polys(&self) -> Vec<MultiPoly<Rational>> {
        self.generators.iter().map(|(_, p)| p.clone()).collect()
    }

    /// True when every generator vanishes at `(y, z)`.
    pub fn vanishes_at(&self, y: &Matrix<Rational>, z: &Matrix<Rational>) -> bool {
        self.generators.iter().all(|(_, p)| p.eval_yz(y, z).is_ok_and(|v| v.is_zero()))
    }

    /// The `m × 2g²` matrix `∂f_ij/∂(Y, Z)` at `(y, z)`.
    pub fn jacobian_at(&self, y: &Matrix<Rational>, z: &Matrix<Rational>) -> Matrix<Rational> {
        let vars = yz_variables(self.g);
        let rows: Vec<Vec<Rational>> = self
            .generators
            .iter()
            .map(|(_, p)| {
                vars.iter()
                    .map(|&v| p.partial(v).eval_yz(y, z).expect("only Y and Z occur"))
                    .collect()
            })
            .collect();
        Matrix::from_fn(rows.len(), vars.len(), |r, c| rows[r][c].clone())
    }

    pub fn jacobian_rank_at(&self, y: &Matrix<Rational>, z: &Matrix<Rational>) -> usize {
        if self.generators.is_empty() {
            return 0;
        }
        self.jacobian_at(y, z).rank()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalityVerdict {
    Radical,
    WitnessInsufficient,
}

/// Where a witness point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// `(Y, Z) = (I, 0)`.
    Identity,
    /// `(I, I)`.
    IdentityPair,
    /// `(I, S)` with the fixed symmetric `S_ij = (i + j − 1)²`.
    IdentitySymmetric,
    /// The `k`-th projected random frame.
    Sampled(usize),
    /// Supplied by a construction (a case of the non-triviality table).
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadicalityReport {
    pub g: usize,
    /// Number of generators.
    pub m: usize,
    pub witness_y: Matrix<Rational>,
    pub witness_z: Matrix<Rational>,
    pub witness_source: WitnessSource,
    pub witness_on_v: bool,
    pub rank: usize,
    pub verdict: RadicalityVerdict,
    pub primality: &'static str,
}

/// Jacobian criterion: `I` is radical if its `m` generators have Jacobian
/// rank `m` at some point of `V`. Tries `(I, 0)` first, then up to 50
/// sampled frames.
pub fn radicality_certificate(ideal: &TrivialIdeal, seed: u64) -> RadicalityReport {
    let g = ideal.g();
    let m = ideal.len();
    let (y0, z0) = (Matrix::identity(g), Matrix::zeros(g, g));
    let mut best = (y0.clone(), z0.clone(), WitnessSource::Identity, ideal.jacobian_rank_at(&y0, &z0));
    if best.3 < m {
        let mut rng = rng::seeded(seed);
        for k in 0..50 {
            let frame = project_to_v(&sample_symplectic_with(&mut rng, g, 8));
            let (y, z) = (frame.y(), frame.z());
            let rank = ideal.jacobian_rank_at(&y, &z);
            if rank > best.3 {
                best = (y, z, WitnessSource::Sampled(k), rank);
            }
            if best.3 == m {
                break;
            }
        }
    }
    let (witness_y, witness_z, witness_source, rank) = best;
    let witness_on_v = ideal.vanishes_at(&witness_y, &witness_z);
    let verdict = if rank == m && witness_on_v {
        RadicalityVerdict::Radical
    } else {
        RadicalityVerdict::WitnessInsufficient
    };
    RadicalityReport {
        g,
        m,
        witness_y,
        witness_z,
        witness_source,
        witness_on_v,
        rank,
        verdict,
        primality: PRIMALITY_NOTE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipStatus {
    InIdealCertified,
    NotInIdealCertified,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MembershipEvidence<F> {
    /// Normal forms of the rational components of `P` modulo a Gröbner basis
    /// (one entry for rational `P`, two for `a + b√d` coefficients).
    Remainder(Vec<MultiPoly<Rational>>),
    /// A point of `V` where `P` does not vanish.
    Witness { y: Matrix<Rational>, z: Matrix<Rational>, value: F, source: WitnessSource },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVerdict<F> {
    pub status: MembershipStatus,
    pub evidence: MembershipEvidence<F>,
    /// Points of `V` at which `P` was evaluated.
    pub points_tested: usize,
}

/// The fixed symmetric matrix `S_ij = (i + j − 1)²` (1-based).
pub fn structured_symmetric(g: usize) -> Matrix<Rational> {
    Matrix::from_fn(g, g, |r, c| Rational::from(((r + c + 1) * (r + c + 1)) as i64))
}

/// `(I, 0)`, `(I, I)` and `(I, S)`.
pub fn structured_witnesses(g: usize) -> Vec<(IsotropicFrame, WitnessSource)> {
    let id = Matrix::<Rational>::identity(g);
    [
        (Matrix::zeros(g, g), WitnessSource::Identity),
        (id.clone(), WitnessSource::IdentityPair),
        (structured_symmetric(g), WitnessSource::IdentitySymmetric),
    ]
    .into_iter()
    .map(|(z, src)| (IsotropicFrame::from_blocks(&id, &z).expect("symmetric Z is isotropic"), src))
    .collect()
}

/// A random point of `V`: a projected symplectic frame times a random
/// integer matrix (possibly singular, so degenerate frames occur too).
pub fn sample_v_point(rng: &mut SeededRng, g: usize) -> IsotropicFrame {
    let frame = project_to_v(&sample_symplectic_with(rng, g, 8));
    let r = Matrix::from_fn(g, g, |_, _| rng::small_rational(rng, 3));
    let cols = frame.columns().mul(&r);
    IsotropicFrame::new(cols).expect("right factors preserve isotropy")
}

/// Decide `P ∈ I`.
///
/// Evaluates `P` at the structured witnesses and `budget` sampled points of
/// `V`; a nonzero value certifies non-membership. If every value vanishes
/// and `g ≤ 3`, a Gröbner basis decides exactly (both rational components
/// are reduced for quadratic coefficients).
pub fn membership<F: Scalar>(
    p: &MultiPoly<F>,
    ideal: &TrivialIdeal,
    budget: usize,
    seed: u64,
) -> MembershipVerdict<F> {
    let g = ideal.g();
    let mut rng = rng::seeded(seed);
    let mut points_tested = 0;
    let mut candidates = structured_witnesses(g);
    for k in 0..budget {
        candidates.push((sample_v_point(&mut rng, g), WitnessSource::Sampled(k)));
    }
    match find_witness(p, candidates, &mut points_tested) {
        Search::Found(evidence) => return verdict(MembershipStatus::NotInIdealCertified, evidence, points_tested),
        Search::Unbound => return verdict(MembershipStatus::Undecided, MembershipEvidence::None, points_tested),
        Search::AllZero => {}
    }
    if g > 3 {
        return verdict(MembershipStatus::Undecided, MembershipEvidence::None, points_tested);
    }
    let (a, b) = p.rational_components();
    let quadratic = p.terms().any(|(_, c)| c.extension().is_some());
    let parts = if quadratic { alloc::vec![a, b] } else { alloc::vec![a] };
    let gens = ideal.polys();
    let mut remainders = Vec::new();
    for part in &parts {
        match poly::buchberger_reduce(part, &gens, GroebnerLimits::default()) {
            Ok((r, _)) => remainders.push(r),
            Err(_) => {
                return verdict(MembershipStatus::Undecided, MembershipEvidence::None, points_tested)
            }
        }
    }
    if remainders.iter().all(Ring::is_zero) {
        return verdict(
            MembershipStatus::InIdealCertified,
            MembershipEvidence::Remainder(remainders),
            points_tested,
        );
    }
    // Nonzero normal form: P is off I, so it is nonzero somewhere on the
    // irreducible V. Search harder for a witness point.
    let extra = (budget.max(10) * 10..budget.max(10) * 20)
        .map(|k| (sample_v_point(&mut rng, g), WitnessSource::Sampled(k)))
        .collect();
    match find_witness(p, extra, &mut points_tested) {
        Search::Found(evidence) => verdict(MembershipStatus::NotInIdealCertified, evidence, points_tested),
        _ => verdict(MembershipStatus::Undecided, MembershipEvidence::Remainder(remainders), points_tested),
    }
}

/// [`membership`] for `P = ∏ factors`, evaluating the factors rather than
/// the expanded product during the witness search.
pub fn membership_of_product<F: Scalar>(
    factors: &[MultiPoly<F>],
    product: &MultiPoly<F>,
    ideal: &TrivialIdeal,
    budget: usize,
    seed: u64,
) -> MembershipVerdict<F> {
    let g = ideal.g();
    let mut rng = rng::seeded(seed);
    let mut candidates = structured_witnesses(g);
    for k in 0..budget {
        candidates.push((sample_v_point(&mut rng, g), WitnessSource::Sampled(k)));
    }
    let lift = |m: &Matrix<Rational>| m.map(|x| F::from_rational(x.clone()));
    let mut points_tested = 0;
    for (frame, source) in candidates {
        let (y, z) = (frame.y(), frame.z());
        points_tested += 1;
        let (yf, zf) = (lift(&y), lift(&z));
        let mut value = F::one();
        for f in factors {
            match f.eval_yz(&yf, &zf) {
                Ok(v) => value = value * v,
                Err(_) => return verdict(MembershipStatus::Undecided, MembershipEvidence::None, points_tested),
            }
            if value.is_zero() {
                break;
            }
        }
        if !value.is_zero() {
            let evidence = MembershipEvidence::Witness { y, z, value, source };
            return verdict(MembershipStatus::NotInIdealCertified, evidence, points_tested);
        }
    }
    let mut rest = membership(product, ideal, budget, seed.wrapping_add(1));
    rest.points_tested += points_tested;
    rest
}

fn verdict<F>(
    status: MembershipStatus,
    evidence: MembershipEvidence<F>,
    points_tested: usize,
) -> MembershipVerdict<F> {
    MembershipVerdict { status, evidence, points_tested }
}

enum Search<F> {
    Found(MembershipEvidence<F>),
    AllZero,
    /// `P` has variables outside the `Y`, `Z` blocks.
    Unbound,
}

fn find_witness<F: Scalar>(
    p: &MultiPoly<F>,
    candidates: Vec<(IsotropicFrame, WitnessSource)>,
    points_tested: &mut usize,
) -> Search<F> {
    let lift = |m: &Matrix<Rational>| m.map(|x| F::from_rational(x.clone()));
    for (frame, source) in candidates {
        let (y, z) = (frame.y(), frame.z());
        *points_tested += 1;
        match p.eval_yz(&lift(&y), &lift(&z)) {
            Ok(value) if !value.is_zero() => {
                return Search::Found(MembershipEvidence::Witness { y, z, value, source })
            }
            Ok(_) => {}
            Err(_) => return Search::Unbound,
        }
    }
    Search::AllZero
}

/// Apply the simultaneous row permutation to `Y` and `Z` (0-based
/// `perm[i]` is the image of row `i`); true if `P` changes.
pub fn row_permutation_test<F: Scalar>(p: &MultiPoly<F>, perm: &[usize]) -> bool {
    p.permute_rows(perm) != *p
}

/// The transposition of rows `a` and `b` (0-based) in `S_g`.
pub fn transposition(g: usize, a: usize, b: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..g).collect();
    perm.swap(a, b);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Rational>;

    #[test]
    fn generator_counts() {
        assert!(TrivialIdeal::new(1).is_empty());
        let i2 = TrivialIdeal::new(2);
        assert_eq!(i2.len(), 1);
        let y = |i, j| P::var(VarId::y(i, j));
        let z = |i, j| P::var(VarId::z(i, j));
        let expected = y(1, 1) * z(1, 2) - z(1, 1) * y(1, 2) + y(2, 1) * z(2, 2) - z(2, 1) * y(2, 2);
        assert_eq!(i2.generators()[0].1, expected);
        let i3 = TrivialIdeal::new(3);
        assert_eq!(i3.len(), 3);
        assert!(i3.generators().iter().all(|(_, p)| p.num_terms() == 6 && p.is_homogeneous()));
    }

    #[test]
    fn antisymmetric_family_matches_matrix() {
        let g = 3;
        let m = generator_matrix::<Rational>(g);
        for i in 1..=g {
            assert!(f::<Rational>(g, i, i).is_zero());
            for j in 1..=g {
                assert_eq!(m[(i - 1, j - 1)], f(g, i, j));
                assert_eq!(f::<Rational>(g, j, i), -f::<Rational>(g, i, j));
            }
        }
    }

    #[test]
    fn jacobian_ranks() {
        for g in 2..=4 {
            let ideal = TrivialIdeal::new(g);
            assert_eq!(
                ideal.jacobian_rank_at(&Matrix::identity(g), &Matrix::zeros(g, g)),
                g * (g - 1) / 2
            );
        }
        let i2 = TrivialIdeal::new(2);
        assert_eq!(i2.jacobian_rank_at(&Matrix::zeros(2, 2), &Matrix::zeros(2, 2)), 0);
    }

    #[test]
    fn radicality_reports() {
        let r = radicality_certificate(&TrivialIdeal::new(4), 0);
        assert_eq!((r.m, r.rank, r.verdict), (6, 6, RadicalityVerdict::Radical));
        assert_eq!(r.witness_source, WitnessSource::Identity);
        let r1 = radicality_certificate(&TrivialIdeal::new(1), 0);
        assert_eq!((r1.m, r1.verdict), (0, RadicalityVerdict::Radical));
    }

    #[test]
    fn membership_examples() {
        let ideal = TrivialIdeal::new(2);
        let v = membership(&f::<Rational>(2, 1, 2), &ideal, 5, 1);
        assert_eq!(v.status, MembershipStatus::InIdealCertified);
        let v = membership(&P::var(VarId::y(1, 1)), &ideal, 5, 1);
        assert_eq!(v.status, MembershipStatus::NotInIdealCertified);
        match v.evidence {
            MembershipEvidence::Witness { value, source, .. } => {
                assert_eq!(value, Rational::one());
                assert_eq!(source, WitnessSource::Identity);
            }
            other => panic!("{other:?}"),
        }
        let det = poly::symbolic_matrix::<Rational>(Block::Y, 2, 2).cofactor_det().unwrap();
        let v = membership(&det, &ideal, 5, 1);
        assert_eq!(v.status, MembershipStatus::NotInIdealCertified);
    }

    #[test]
    fn combination_is_member_g3() {
        let ideal = TrivialIdeal::new(3);
        let p = P::var(VarId::y(1, 1)) * f(3, 1, 2) + P::var(VarId::z(2, 2)) * f(3, 1, 3);
        assert_eq!(membership(&p, &ideal, 3, 2).status, MembershipStatus::InIdealCertified);
    }

    #[test]
    fn permutation_examples() {
        let swap = transposition(4, 0, 3);
        assert!(!row_permutation_test(&f::<Rational>(4, 1, 2), &swap));
        let p = P::var(VarId::y(1, 1)) * P::var(VarId::z(1, 2));
        assert!(row_permutation_test(&p, &swap));
        let det = poly::symbolic_matrix::<Rational>(Block::Y, 2, 2).cofactor_det().unwrap();
        let swapped = det.permute_rows(&transposition(2, 0, 1));
        assert_eq!(swapped, -det.clone());
        assert!(row_permutation_test(&det, &transposition(2, 0, 1)));
    }
}
