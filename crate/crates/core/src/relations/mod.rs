//! Period-relation polynomials: the non-archimedean adjugate construction,
//! the real-quadratic construction in [`case3`], synthetic period data
//! satisfying the defining functional equations, and certificates.

pub mod case3;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::{self, MembershipEvidence, MembershipStatus, MembershipVerdict, TrivialIdeal, WitnessSource};
use crate::matrix::Matrix;
use crate::poly::{self, Block, MultiPoly, PolyMatrix};
use crate::rng;
use crate::scalar::{Rational, Ring, Scalar};

/// The block matrix `[[A, B], [0, D]]` of an endomorphism acting on de Rham
/// cohomology.
#[derive(Debug, Clone, PartialEq)]
pub struct EndomorphismAction<F> {
    g: usize,
    a: Matrix<F>,
    b: Matrix<F>,
    d: Matrix<F>,
}

impl<F: Scalar> EndomorphismAction<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>, d: Matrix<F>) -> Result<Self> {
        let g = a.rows();
        for m in [&a, &b, &d] {
            if m.rows() != g || m.cols() != g {
                return Err(Error::DimensionMismatch("A, B, D must all be g × g".into()));
            }
        }
        if g == 0 {
            return Err(Error::DimensionMismatch("g must be positive".into()));
        }
        Ok(EndomorphismAction { g, a, b, d })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn d(&self) -> &Matrix<F> {
        &self.d
    }

    /// True for `λ·I_{2g}`.
    pub fn is_scalar(&self) -> bool {
        let lambda = self.a[(0, 0)].clone();
        self.b.is_zero()
            && self.a == Matrix::scalar(self.g, lambda.clone())
            && self.d == Matrix::scalar(self.g, lambda)
    }

    /// A random non-scalar action with entries in `{−2..2}`. The draw cycles
    /// through the three shapes of the non-triviality table (`B ≠ 0`;
    /// `B = 0, A ≠ D`; `B = 0, A = D` non-scalar) by `seed mod 3`.
    ///
    /// For `B ≠ 0` the draw is `B = AY − YD` for a random `Y`, so that the
    /// Sylvester system behind [`synthesize_period_data`] is consistent even
    /// when `A` and `D` share an eigenvalue.
    pub fn random(g: usize, seed: u64) -> Self {
        let mut rng = rng::seeded(seed);
        let rand = |rng: &mut rng::SeededRng| {
            Matrix::from_fn(g, g, |_, _| F::from_rational(rng::small_rational(rng, 2)))
        };
        loop {
            let a = rand(&mut rng);
            let (b, d) = match seed % 3 {
                0 => {
                    let (d, y) = (rand(&mut rng), rand(&mut rng));
                    (a.mul(&y).sub(&y.mul(&d)), d)
                }
                1 => (Matrix::zeros(g, g), rand(&mut rng)),
                _ => (Matrix::zeros(g, g), a.clone()),
            };
            let act = EndomorphismAction { g, a, b, d };
            let shape_ok = match seed % 3 {
                0 => !act.b.is_zero(),
                1 => act.a != act.d,
                _ => true,
            };
            if shape_ok && !act.is_scalar() {
                return act;
            }
        }
    }
}

/// `P = YᵗA adj(Yᵗ) Zᵗ − det(Y) YᵗB − det(Y) ZᵗD`.
///
/// Every nonzero entry is homogeneous of degree `g + 1`.
pub fn build_nonarch_relation<F: Scalar>(act: &EndomorphismAction<F>) -> PolyMatrix<F> {
    let g = act.g;
    let yt = poly::symbolic_matrix::<F>(Block::Y, g, g).transpose();
    let zt = poly::symbolic_matrix::<F>(Block::Z, g, g).transpose();
    let det = yt.cofactor_det().expect("square");
    let adj = yt.adjugate().expect("square");
    let (a, b, d) = (
        poly::constant_matrix(&act.a),
        poly::constant_matrix(&act.b),
        poly::constant_matrix(&act.d),
    );
    let main = yt.mul(&a).mul(&adj).mul(&zt);
    let by = yt.mul(&b).scale(&det);
    let dz = zt.mul(&d).scale(&det);
    main.sub(&by).sub(&dz)
}

/// Which row of the non-triviality table produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// `B ≠ 0`: `(y, z) = (I, 0)`, value `−B`.
    BNonzero,
    /// `B = 0, A ≠ D`: `(I, I)`, value `A − D`.
    ADiffersFromD,
    /// `B = 0, A = D` non-scalar: `(I, z)` with symmetric `z`, value
    /// `Az − zD`.
    ANotScalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NontrivialEntry<F> {
    /// 1-based entry index.
    pub i: usize,
    pub j: usize,
    pub y: Matrix<Rational>,
    pub z: Matrix<Rational>,
    pub case: WitnessCase,
    /// `P(y, z)` as a matrix; entry `(i, j)` is nonzero.
    pub value: Matrix<F>,
    /// The value predicted by the table (`−B`, `A − D` or `Az − zD`).
    pub expected: Matrix<F>,
}

fn unit_matrix(g: usize, i: usize, j: usize) -> Matrix<Rational> {
    Matrix::from_fn(g, g, |r, c| {
        if (r, c) == (i, j) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// The symmetric `z` not commuting with a non-scalar `A`: `E_ii` when
/// column `i` of `A` has a nonzero off-diagonal entry, else `E_ij + E_ji`
/// for the first `A_ii ≠ A_jj`.
fn noncommuting_symmetric<F: Scalar>(a: &Matrix<F>) -> Matrix<Rational> {
    let g = a.rows();
    for col in 0..g {
        if (0..g).any(|r| r != col && !a[(r, col)].is_zero()) {
            return unit_matrix(g, col, col);
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            if a[(i, i)] != a[(j, j)] {
                return unit_matrix(g, i, j).add(&unit_matrix(g, j, i));
            }
        }
    }
    unreachable!("a diagonal matrix with equal diagonal entries is scalar")
}

/// Pick a point `(y, z)` of `V` and an entry `(i, j)` with `P_ij(y, z) ≠ 0`
/// following the case table.
pub fn select_nontrivial_entry<F: Scalar>(
    p: &PolyMatrix<F>,
    act: &EndomorphismAction<F>,
) -> Result<NontrivialEntry<F>> {
    if act.is_scalar() {
        return Err(Error::ScalarEndomorphism);
    }
    let g = act.g;
    let lift = |m: &Matrix<Rational>| m.map(|x| F::from_rational(x.clone()));
    let id = Matrix::<Rational>::identity(g);
    let (z, case, expected) = if !act.b.is_zero() {
        (Matrix::zeros(g, g), WitnessCase::BNonzero, act.b.neg())
    } else if act.a != act.d {
        (id.clone(), WitnessCase::ADiffersFromD, act.a.sub(&act.d))
    } else {
        let z = noncommuting_symmetric(&act.a);
        let zf = lift(&z);
        let expected = act.a.mul(&zf).sub(&zf.mul(&act.d));
        (z, WitnessCase::ANotScalar, expected)
    };
    let value = poly::eval_matrix_yz(p, &lift(&id), &lift(&z))?;
    let (i, j) = (0..g * g)
        .map(|k| (k / g, k % g))
        .find(|&(r, c)| !value[(r, c)].is_zero())
        .ok_or_else(|| Error::InvariantViolation("witness value vanishes".into()))?;
    Ok(NontrivialEntry { i: i + 1, j: j + 1, y: id, z, case, value, expected })
}

/// Period matrices with `M Fᵗ = Fᵗ A` and `M Gᵗ = Fᵗ B + Gᵗ D`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticPeriodData<F> {
    pub g: usize,
    pub m: Matrix<F>,
    pub f: Matrix<F>,
    pub gp: Matrix<F>,
    /// Seed used to draw `F`.
    pub seed: u64,
    /// True when the Sylvester operator was singular for every draw and a
    /// consistent solution of the singular system was used.
    pub singular_fallback: bool,
}

impl<F: Scalar> SyntheticPeriodData<F> {
    pub fn satisfies(&self, act: &EndomorphismAction<F>) -> bool {
        let ft = self.f.transpose();
        let gt = self.gp.transpose();
        self.m.mul(&ft) == ft.mul(&act.a)
            && self.m.mul(&gt) == ft.mul(&act.b).add(&gt.mul(&act.d))
    }
}

const SYLVESTER_ATTEMPTS: usize = 50;

/// Column-major vectorisation.
fn vec_col<F: Scalar>(m: &Matrix<F>) -> Vec<F> {
    (0..m.cols()).flat_map(|c| (0..m.rows()).map(move |r| (r, c))).map(|(r, c)| m[(r, c)].clone()).collect()
}

fn unvec_col<F: Scalar>(v: &[F], n: usize) -> Matrix<F> {
    Matrix::from_fn(n, n, |r, c| v[c * n + r].clone())
}

/// Draw `F`, set `M = FᵗA(Fᵗ)⁻¹` and solve `M Gᵗ − Gᵗ D = Fᵗ B` through the
/// linearisation `(I ⊗ M − Dᵗ ⊗ I) vec(Gᵗ) = vec(Fᵗ B)`.
///
/// `F` is redrawn while the linearisation is singular. Since `M` is
/// similar to `A` the singularity only depends on the spectra of `A` and
/// `D`; after 50 singular draws a consistent solution of the singular
/// system is used if one exists.
pub fn synthesize_period_data<F: Scalar>(
    act: &EndomorphismAction<F>,
    seed: u64,
) -> Result<SyntheticPeriodData<F>> {
    if act.is_scalar() {
        return Err(Error::ScalarEndomorphism);
    }
    let g = act.g;
    let mut rng = rng::seeded(seed);
    let id = Matrix::<F>::identity(g);
    let mut fallback: Option<SyntheticPeriodData<F>> = None;
    for _ in 0..SYLVESTER_ATTEMPTS {
        let f = Matrix::from_fn(g, g, |_, _| F::from_rational(rng::small_rational(&mut rng, 3)));
        let ft = f.transpose();
        let Ok(ft_inv) = ft.inverse() else { continue };
        let m = ft.mul(&act.a).mul(&ft_inv);
        let op = id.kronecker(&m).sub(&act.d.transpose().kronecker(&id));
        let rhs = vec_col(&ft.mul(&act.b));
        if !op.det()?.is_zero() {
            let sol = op.solve(&Matrix::from_fn(g * g, 1, |r, _| rhs[r].clone()))?;
            let gt = unvec_col(&vec_col(&sol), g);
            return Ok(SyntheticPeriodData { g, m, f, gp: gt.transpose(), seed, singular_fallback: false });
        }
        if fallback.is_none() {
            if let Ok(aff) = op.solve_affine(&rhs) {
                let mut v = aff.particular.clone();
                for k in &aff.kernel {
                    let c = F::from_rational(rng::small_rational(&mut rng, 2));
                    for (x, kx) in v.iter_mut().zip(k) {
                        *x = x.clone() + c.clone() * kx;
                    }
                }
                let gt = unvec_col(&v, g);
                fallback = Some(SyntheticPeriodData {
                    g,
                    m,
                    f,
                    gp: gt.transpose(),
                    seed,
                    singular_fallback: true,
                });
            }
        }
    }
    fallback.ok_or(Error::SpectraCoupling)
}

/// Every entry of `P(F, G)` vanishes exactly.
pub fn verify_relation_on_data<F: Scalar>(p: &PolyMatrix<F>, data: &SyntheticPeriodData<F>) -> bool {
    poly::eval_matrix_yz(p, &data.f, &data.gp).is_ok_and(|m| m.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    NonArch,
    Case3,
    /// A product of certified factors.
    Global,
}

/// One exact evaluation of a relation on period data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingRecord {
    pub data_id: String,
    pub is_zero: bool,
}

/// Structural non-triviality evidence beyond the membership verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum StructuralEvidence<F> {
    /// The simultaneous row permutation (0-based images) changes the
    /// polynomial, while it fixes every element of `I`.
    RowPermutationChanges { polynomial: &'static str, perm: Vec<usize> },
    /// The change of basis maps `YᵗZ − ZᵗY` to `scale·(YᵗZ − ZᵗY)`.
    GeneratorsRescaled { scale: F },
    /// Non-triviality of a product follows from that of each factor because
    /// `I` is prime.
    PrimeIdeal { note: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCertificate<F> {
    pub g: usize,
    pub polynomial: MultiPoly<F>,
    pub degree: u32,
    pub vanishing_evidence: Vec<VanishingRecord>,
    pub nontriviality: MembershipVerdict<F>,
    pub structural: Vec<StructuralEvidence<F>>,
    pub kind: ConstructionKind,
    pub factors: Vec<RelationCertificate<F>>,
}

impl<F: Scalar> RelationCertificate<F> {
    pub fn is_certified(&self) -> bool {
        self.nontriviality.status == MembershipStatus::NotInIdealCertified
            && self.vanishing_evidence.iter().all(|r| r.is_zero)
    }
}

impl RelationCertificate<Rational> {
    /// Lift rational coefficients into `G` (e.g. to combine with a
    /// quadratic certificate).
    pub fn lift<G: Scalar>(&self) -> RelationCertificate<G> {
        let up = |c: &Rational| G::from_rational(c.clone());
        RelationCertificate {
            g: self.g,
            polynomial: self.polynomial.map_coeffs(up),
            degree: self.degree,
            vanishing_evidence: self.vanishing_evidence.clone(),
            nontriviality: MembershipVerdict {
                status: self.nontriviality.status,
                evidence: match &self.nontriviality.evidence {
                    MembershipEvidence::Witness { y, z, value, source } => MembershipEvidence::Witness {
                        y: y.clone(),
                        z: z.clone(),
                        value: up(value),
                        source: *source,
                    },
                    MembershipEvidence::Remainder(r) => MembershipEvidence::Remainder(r.clone()),
                    MembershipEvidence::None => MembershipEvidence::None,
                },
                points_tested: self.nontriviality.points_tested,
            },
            structural: self
                .structural
                .iter()
                .map(|s| match s {
                    StructuralEvidence::RowPermutationChanges { polynomial, perm } => {
                        StructuralEvidence::RowPermutationChanges { polynomial, perm: perm.clone() }
                    }
                    StructuralEvidence::GeneratorsRescaled { scale } => {
                        StructuralEvidence::GeneratorsRescaled { scale: up(scale) }
                    }
                    StructuralEvidence::PrimeIdeal { note } => StructuralEvidence::PrimeIdeal { note },
                })
                .collect(),
            kind: self.kind,
            factors: self.factors.iter().map(RelationCertificate::lift).collect(),
        }
    }
}

/// Certify the nonzero entry chosen by [`select_nontrivial_entry`]: it must
/// vanish on synthetic period data for every seed in `data_seeds`.
pub fn certify_nonarch<F: Scalar>(
    act: &EndomorphismAction<F>,
    data_seeds: &[u64],
) -> Result<RelationCertificate<F>> {
    let p = build_nonarch_relation(act);
    let entry = select_nontrivial_entry(&p, act)?;
    let poly = p[(entry.i - 1, entry.j - 1)].clone();
    let mut vanishing_evidence = Vec::new();
    for &seed in data_seeds {
        let data = synthesize_period_data(act, seed)?;
        vanishing_evidence.push(VanishingRecord {
            data_id: alloc::format!("synthetic:seed={seed}"),
            is_zero: poly.eval_yz(&data.f, &data.gp)?.is_zero(),
        });
    }
    let value = entry.value[(entry.i - 1, entry.j - 1)].clone();
    Ok(RelationCertificate {
        g: act.g,
        degree: poly.degree().unwrap_or(0),
        polynomial: poly,
        vanishing_evidence,
        nontriviality: MembershipVerdict {
            status: MembershipStatus::NotInIdealCertified,
            evidence: MembershipEvidence::Witness {
                y: entry.y,
                z: entry.z,
                value,
                source: WitnessSource::Explicit,
            },
            points_tested: 1,
        },
        structural: Vec::new(),
        kind: ConstructionKind::NonArch,
        factors: Vec::new(),
    })
}

/// Multiply certified relations. The product is non-trivial because `I` is
/// prime; a common witness point is also searched for and attached.
pub fn assemble_global_relation<F: Scalar>(
    parts: &[RelationCertificate<F>],
    budget: usize,
    seed: u64,
) -> Result<RelationCertificate<F>> {
    let first = parts.first().ok_or(Error::MissingCertificate)?;
    if parts.iter().any(|p| !p.is_certified()) {
        return Err(Error::MissingCertificate);
    }
    if parts.iter().any(|p| p.g != first.g) {
        return Err(Error::DimensionMismatch("factors use different g".into()));
    }
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    let polynomial = parts.iter().fold(MultiPoly::one(), |acc, p| acc * &p.polynomial);
    let degree = parts.iter().map(|p| p.degree).sum();
    let factors: Vec<MultiPoly<F>> = parts.iter().map(|p| p.polynomial.clone()).collect();
    let nontriviality =
        ideal::membership_of_product(&factors, &polynomial, &TrivialIdeal::new(first.g), budget, seed);
    Ok(RelationCertificate {
        g: first.g,
        polynomial,
        degree,
        vanishing_evidence: parts.iter().flat_map(|p| p.vanishing_evidence.clone()).collect(),
        nontriviality,
        structural: alloc::vec![StructuralEvidence::PrimeIdeal { note: ideal::PRIMALITY_NOTE }],
        kind: ConstructionKind::Global,
        factors: parts.to_vec(),
    })
}
