//! The standard split space `W`, operator representatives for `∧²W` and
//! `Sym²W`, the twisted forms `⟨λ,μ⟩_α`, and orbit comparison.
//!
//! Rational orbits use `α` in the numerator of the pairing (`tc(αλμ)`); the
//! integral lattice code uses `α⁻¹`. Over a field the two differ by the
//! square `α²` and define the same class.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::etale::{is_norm_from_e, EtaleAlgebra, EtaleElement, NormCertificate, NormClassResult, SquareCertificate, SquareResult};
use crate::exact::int::squarefree_part;
use crate::exact::{ExactRat, Matrix, Poly};
use crate::quad::{hyperbolic_completion, is_split_odd, maximal_isotropic, standard_gram, QuadSpace};

/// Bound on coordinates used by isotropic-vector searches.
pub const ISOTROPIC_SEARCH_BOUND: i64 = 400;

/// `W` of dimension `2n+1` with basis `e_1..e_n, u, f_n..f_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSpace {
    n: usize,
    gram: Matrix,
}

pub fn standard_space(n: usize) -> Result<StandardSpace> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(StandardSpace { n, gram: standard_gram(n) })
}

impl StandardSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn quad_space(&self) -> QuadSpace {
        QuadSpace::new(self.gram.clone()).expect("nondegenerate")
    }

    /// `q₂(w) = ⟨w, w⟩`.
    pub fn q2(&self, w: &[ExactRat]) -> ExactRat {
        self.gram.bilinear(w, w)
    }

    /// `e_1 + (d/2) f_1`, a vector with `q₂ = d`.
    pub fn vector_with_value(&self, d: &ExactRat) -> Vec<ExactRat> {
        let mut w = vec![ExactRat::zero(); self.dim()];
        w[0] = ExactRat::one();
        w[self.dim() - 1] = d / ExactRat::from_integer(BigInt::from(2));
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepTag {
    Standard,
    Adjoint,
    Sym2,
}

impl fmt::Display for RepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepTag::Standard => "standard",
            RepTag::Adjoint => "adjoint",
            RepTag::Sym2 => "sym2",
        })
    }
}

/// `T*` with `⟨Tv, w⟩ = ⟨v, T*w⟩`: the reflection of `T` in the anti-diagonal.
pub fn adjoint_op(t: &Matrix, space: &StandardSpace) -> Result<Matrix> {
    let d = space.dim();
    if t.rows() != d || t.cols() != d {
        return Err(Error::DimensionMismatch(format!("expected {d}x{d}, got {}x{}", t.rows(), t.cols())));
    }
    Ok(Matrix::from_fn(d, d, |i, j| t[(d - 1 - j, d - 1 - i)].clone()))
}

/// An element of one of the three representations.
///
/// For `Standard` the operator slot holds the column vector `w` and
/// `charpoly` is the constant polynomial `q₂(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRepresentative {
    pub space: StandardSpace,
    pub rep: RepTag,
    pub t: Matrix,
    pub charpoly: Poly,
}

impl OrbitRepresentative {
    /// Validate an operator against its representation.
    pub fn new(t: Matrix, rep: RepTag) -> Result<Self> {
        if rep == RepTag::Standard {
            if t.cols() != 1 || t.rows() % 2 == 0 || t.rows() < 3 {
                return Err(Error::DimensionMismatch("expected a column vector of odd length >= 3".into()));
            }
            let space = standard_space(t.rows() / 2)?;
            let q = space.q2(&t.column(0));
            return Ok(OrbitRepresentative { space, rep, t, charpoly: Poly::constant(q) });
        }
        if !t.is_square() {
            return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
        }
        if t.rows() % 2 == 0 || t.rows() < 3 {
            return Err(Error::WrongDegree(t.rows()));
        }
        let space = standard_space(t.rows() / 2)?;
        let adj = adjoint_op(&t, &space)?;
        let ok = match rep {
            RepTag::Sym2 => adj == t,
            RepTag::Adjoint => adj == -&t,
            RepTag::Standard => unreachable!(),
        };
        if !ok {
            return Err(Error::WrongSymmetry);
        }
        let charpoly = t.charpoly()?;
        Ok(OrbitRepresentative { space, rep, t, charpoly })
    }

    /// `g T g⁻¹` (or `g w` for vectors).
    pub fn conjugate(&self, g: &Matrix) -> Result<OrbitRepresentative> {
        let t = if self.rep == RepTag::Standard { g * &self.t } else { &(g * &self.t) * &g.inverse()? };
        OrbitRepresentative::new(t, self.rep)
    }
}

fn check_poly(f: &Poly, rep: RepTag) -> Result<Arc<EtaleAlgebra>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let alg = EtaleAlgebra::new(f.clone())?;
    if rep == RepTag::Adjoint && !f.is_odd() {
        return Err(Error::NotOddPolynomial);
    }
    if rep == RepTag::Standard {
        return Err(Error::RepMismatch);
    }
    Ok(alg)
}

/// The twisted Gram matrix on the basis `1, β, …, β^{2n}`:
/// `tc(αβ^{i+j})` for `Sym2`, `(-1)^{n+j} tc(αβ^{i+j})` for `Adjoint`.
pub fn gram_alpha(f: &Poly, alpha: &EtaleElement, rep: RepTag) -> Result<QuadSpace> {
    let alg = check_poly(f, rep)?;
    if alpha.algebra().modulus() != f {
        return Err(Error::AlgebraMismatch);
    }
    if !alpha.is_unit() {
        return Err(Error::NonUnit);
    }
    if rep == RepTag::Adjoint && !alpha.is_tau_fixed() {
        return Err(Error::NotTauFixed);
    }
    let norm = alpha.norm();
    if !crate::exact::int::is_rat_square(&norm) {
        return Err(Error::NormNotSquare(norm.to_string()));
    }
    Ok(QuadSpace::new(pairing_matrix(&alg, alpha, rep))?)
}

fn pairing_matrix(alg: &Arc<EtaleAlgebra>, alpha: &EtaleElement, rep: RepTag) -> Matrix {
    let d = alg.degree();
    let n = alg.n();
    let tcs: Vec<ExactRat> = (0..2 * d - 1)
        .map(|k| alpha.mul(&alg.beta_pow(k)).expect("same algebra").top_coeff())
        .collect();
    Matrix::from_fn(d, d, |i, j| {
        let v = tcs[i + j].clone();
        if rep == RepTag::Adjoint && (n + j) % 2 == 1 {
            -v
        } else {
            v
        }
    })
}

/// Distinguished representative with characteristic polynomial `f`.
pub fn construct_representative(f: &Poly, rep: RepTag) -> Result<OrbitRepresentative> {
    let alg = check_poly(f, rep)?;
    construct_for_alpha(f, &alg.one(), rep)
}

/// Representative of the orbit attached to `α`, provided the twisted space
/// is split. For `α = 1` the isotropic subspace `span{1, …, β^{n-1}}` is used;
/// otherwise one is searched for.
pub fn construct_for_alpha(f: &Poly, alpha: &EtaleElement, rep: RepTag) -> Result<OrbitRepresentative> {
    let alg = check_poly(f, rep)?;
    let s = gram_alpha(f, alpha, rep)?;
    let n = alg.n();
    let d = alg.degree();
    let m: Vec<Vec<ExactRat>> = if alpha.is_one() {
        (0..n)
            .map(|i| (0..d).map(|j| if i == j { ExactRat::one() } else { ExactRat::zero() }).collect())
            .collect()
    } else {
        if !is_split_odd(&s)? {
            return Err(Error::NotInKernel);
        }
        maximal_isotropic(&s, ISOTROPIC_SEARCH_BOUND)?
    };
    let u = hyperbolic_completion(&s, &m)?;
    let t = &(&u.inverse()? * &Matrix::companion(f)?) * &u;
    let r = OrbitRepresentative::new(t, rep)?;
    if &r.charpoly != f {
        return Err(Error::Internal("constructed operator has the wrong characteristic polynomial".into()));
    }
    Ok(r)
}

/// Whether the class of `α` lies in the kernel of `γ`: the twisted space is split.
pub fn in_kernel_gamma(f: &Poly, alpha: &EtaleElement, rep: RepTag) -> Result<bool> {
    is_split_odd(&gram_alpha(f, alpha, rep)?)
}

/// Candidate cyclic vectors: standard basis first, then seeded random ones.
fn cyclic_vector(t: &Matrix, seed: u64) -> Result<(Vec<ExactRat>, Matrix)> {
    let d = t.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..d + 200 {
        let w: Vec<ExactRat> = if k < d {
            (0..d).map(|j| if j == k { ExactRat::one() } else { ExactRat::zero() }).collect()
        } else {
            (0..d).map(|_| ExactRat::from_integer(BigInt::from(rng.gen_range(-5i64..=5)))).collect()
        };
        let mut cols = vec![w.clone()];
        for i in 1..d {
            let next = t.mul_vec(&cols[i - 1]);
            cols.push(next);
        }
        let kry = Matrix::from_columns(&cols);
        if kry.rank() == d {
            return Ok((w, kry));
        }
    }
    Err(Error::NoCyclicVector)
}

/// Recover `α` from an operator: pull the form of `W` back along
/// `λ ↦ λ(T)w` for a cyclic vector `w` and read off the twisting element.
pub fn recover_alpha(r: &OrbitRepresentative) -> Result<EtaleElement> {
    recover_alpha_seeded(r, crate::seed())
}

pub fn recover_alpha_seeded(r: &OrbitRepresentative, seed: u64) -> Result<EtaleElement> {
    if r.rep == RepTag::Standard {
        return Err(Error::RepMismatch);
    }
    let f = &r.charpoly;
    if f.discriminant()?.is_zero() {
        return Err(Error::NonSeparable);
    }
    let alg = check_poly(f, r.rep)?;
    let (_, kry) = cyclic_vector(&r.t, seed)?;
    let b = r.space.gram().congruent(&kry);
    let d = alg.degree();
    let n = alg.n();
    let h = pairing_matrix(&alg, &alg.one(), RepTag::Sym2);
    let rhs: Vec<ExactRat> = (0..d)
        .map(|j| {
            let v = b[(0, j)].clone();
            if r.rep == RepTag::Adjoint && (n + j) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let coeffs = h.solve(&rhs)?.particular;
    let alpha = alg.from_coeffs(coeffs);
    if pairing_matrix(&alg, &alpha, r.rep) != b {
        return Err(Error::Internal("recovered α does not reproduce the pulled-back form".into()));
    }
    Ok(alpha)
}

/// Witness that two operators lie in one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitWitness {
    /// `r` with `r² = α₁α₂` in `L`.
    SquareRoot(EtaleElement),
    /// `α₁α₂` restricted to `K` is a norm from `E`; carries `s` with the class
    /// trivial (a square root in `K` when available, else `1`).
    Norm(EtaleElement),
    /// Both vectors have this label.
    Label(VectorLabel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctReason {
    Charpoly,
    Square(SquareCertificate),
    Norm(NormCertificate),
    Label,
}

impl fmt::Display for DistinctReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinctReason::Charpoly => write!(f, "characteristic polynomials differ"),
            DistinctReason::Square(c) => write!(f, "{c}"),
            DistinctReason::Norm(NormCertificate::Real { root_index }) => {
                write!(f, "negative at negative real root #{root_index} of g")
            }
            DistinctReason::Norm(NormCertificate::Hilbert { root, value, place }) => {
                write!(f, "Hilbert symbol ({value}, {root}) at {place} is -1")
            }
            DistinctReason::Label => write!(f, "vector labels differ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitComparison {
    Equal(OrbitWitness),
    Distinct(DistinctReason),
    Unknown,
}

/// Compare the `SO(W)(Q)`-orbits of two representatives.
///
/// For `Sym2` the orbit class is `α` in `L*/L*²`. For `Adjoint` it is the
/// image of `α` in `K*/N(E*)`, where `K = Q[x]/(g)` and `E = K(√x)`.
pub fn same_orbit(a: &OrbitRepresentative, b: &OrbitRepresentative) -> Result<OrbitComparison> {
    if a.rep != b.rep || a.space != b.space {
        return Err(Error::RepMismatch);
    }
    if a.rep == RepTag::Standard {
        let (la, lb) = (classify_vector(&a.t.column(0), &a.space), classify_vector(&b.t.column(0), &b.space));
        return Ok(if la == lb {
            OrbitComparison::Equal(OrbitWitness::Label(la))
        } else {
            OrbitComparison::Distinct(DistinctReason::Label)
        });
    }
    if a.charpoly != b.charpoly {
        return Ok(OrbitComparison::Distinct(DistinctReason::Charpoly));
    }
    let prod = recover_alpha(a)?.mul(&recover_alpha(b)?)?;
    match a.rep {
        RepTag::Sym2 => Ok(match prod.is_square()? {
            SquareResult::True(r) => OrbitComparison::Equal(OrbitWitness::SquareRoot(r)),
            SquareResult::False(c) => OrbitComparison::Distinct(DistinctReason::Square(c)),
            SquareResult::Unknown => OrbitComparison::Unknown,
        }),
        RepTag::Adjoint => {
            let skew = prod.algebra().skew_data()?;
            let kappa = skew.kappa(&prod)?;
            Ok(match is_norm_from_e(&kappa)? {
                NormClassResult::Norm(s) => OrbitComparison::Equal(OrbitWitness::Norm(s)),
                NormClassResult::NotNorm(c) => OrbitComparison::Distinct(DistinctReason::Norm(c)),
                NormClassResult::Unknown => OrbitComparison::Unknown,
            })
        }
        RepTag::Standard => unreachable!(),
    }
}

/// Orbit label of a vector in the standard representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorLabel {
    Zero,
    NullNonzero,
    Value(ExactRat),
}

impl fmt::Display for VectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorLabel::Zero => write!(f, "zero"),
            VectorLabel::NullNonzero => write!(f, "null"),
            VectorLabel::Value(d) => write!(f, "{d}"),
        }
    }
}

pub fn classify_vector(w: &[ExactRat], space: &StandardSpace) -> VectorLabel {
    if w.iter().all(|x| x.is_zero()) {
        return VectorLabel::Zero;
    }
    let q = space.q2(w);
    if q.is_zero() {
        VectorLabel::NullNonzero
    } else {
        VectorLabel::Value(q)
    }
}

/// Description of the stabilizer of a regular element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerInfo {
    /// `SO(U)` for the orthogonal complement `U` of `w`.
    Standard { dim_u: usize, disc_class: BigInt },
    /// The torus `Res_{K/Q} U₁(E/K)`.
    Adjoint { g: Poly, k_modulus: Poly, e_modulus: Poly, dimension: usize },
    /// The finite group scheme `(Res_{L/Q} μ₂)_{N=1}`.
    Sym2 { l_modulus: Poly, order: BigInt },
}

pub fn stabilizer_info(f: &Poly, rep: RepTag) -> Result<StabilizerInfo> {
    let alg = check_poly(f, rep)?;
    match rep {
        RepTag::Sym2 => Ok(StabilizerInfo::Sym2 {
            l_modulus: f.clone(),
            order: BigInt::one() << (2 * alg.n()),
        }),
        RepTag::Adjoint => {
            let s = alg.skew_data()?;
            Ok(StabilizerInfo::Adjoint {
                k_modulus: s.k.modulus().clone(),
                e_modulus: s.e.modulus().clone(),
                dimension: s.n(),
                g: s.g,
            })
        }
        RepTag::Standard => unreachable!(),
    }
}

/// Stabilizer of a vector with `q₂ = d ≠ 0` in `W` of dimension `2n+1`.
///
/// The complement `U` has determinant `(-1)^n / d`; its discriminant
/// `(-1)^n det U` has the class of `d`.
pub fn stabilizer_info_standard(n: usize, d: &ExactRat) -> Result<StabilizerInfo> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if d.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    Ok(StabilizerInfo::Standard { dim_u: 2 * n, disc_class: squarefree_part(d)? })
}

/// Product of the reflections in two anisotropic vectors: an element of `SO(W)(Q)`.
pub fn reflection_pair(space: &StandardSpace, a: &[ExactRat], b: &[ExactRat]) -> Result<Matrix> {
    Ok(&reflection(space, a)? * &reflection(space, b)?)
}

pub fn reflection(space: &StandardSpace, a: &[ExactRat]) -> Result<Matrix> {
    let q = space.q2(a);
    if q.is_zero() {
        return Err(Error::NullVector);
    }
    let d = space.dim();
    let ga = space.gram().mul_vec(a);
    let two = ExactRat::from_integer(BigInt::from(2));
    Ok(Matrix::from_fn(d, d, |i, j| {
        let id = if i == j { ExactRat::one() } else { ExactRat::zero() };
        id - &two * &a[i] * &ga[j] / &q
    }))
}

/// `e_i ↦ c e_i`, `f_i ↦ c⁻¹ f_i` (1-based `i`), fixing the rest.
pub fn hyperbolic_rotation(space: &StandardSpace, i: usize, c: &ExactRat) -> Result<Matrix> {
    if i == 0 || i > space.n() || c.is_zero() {
        return Err(Error::DimensionMismatch(format!("bad rotation index {i} or zero scale")));
    }
    let d = space.dim();
    let mut diag = vec![ExactRat::one(); d];
    diag[i - 1] = c.clone();
    diag[d - i] = ExactRat::one() / c;
    Ok(Matrix::diagonal(&diag))
}

/// A pseudo-random element of `SO(W)(Q)` built from reflection pairs and
/// hyperbolic rotations with small entries.
pub fn random_so_element(space: &StandardSpace, rng: &mut impl Rng, factors: usize) -> Matrix {
    let d = space.dim();
    let mut g = Matrix::identity(d);
    for _ in 0..factors {
        let mut vecs = Vec::new();
        while vecs.len() < 2 {
            let v: Vec<ExactRat> = (0..d).map(|_| ExactRat::from_integer(BigInt::from(rng.gen_range(-2i64..=2)))).collect();
            if !space.q2(&v).is_zero() {
                vecs.push(v);
            }
        }
        g = &g * &reflection_pair(space, &vecs[0], &vecs[1]).expect("anisotropic");
        let c = ExactRat::from_integer(BigInt::from(rng.gen_range(1i64..=3)));
        let i = rng.gen_range(1..=space.n());
        g = &g * &hyperbolic_rotation(space, i, &c).expect("valid index");
    }
    g
}
