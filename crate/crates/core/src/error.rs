use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped loosely by the module that raises them; callers
/// usually only care whether an error is a domain error (bad input for the
/// mathematics) or an internal consistency failure, see [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("zero input")]
    ZeroInput,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix has non-integral entries")]
    NonIntegral,
    #[error("matrix is singular")]
    Singular,
    #[error("integer factorization gave up on {0}")]
    FactorizationTimeout(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),

    // etale algebra
    #[error("element is a zero divisor in the algebra")]
    ZeroDivisor,
    #[error("element is not a unit")]
    NonUnit,
    #[error("modulus is not an odd polynomial x*g(x^2)")]
    NotOddPolynomial,
    #[error("polynomial is not separable (zero discriminant)")]
    NonSeparable,
    #[error("expected a polynomial of odd degree >= 3, got degree {0}")]
    WrongDegree(usize),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    // quadratic forms
    #[error("quadratic space is degenerate")]
    Degenerate,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Hilbert symbol argument is zero")]
    ZeroArgument,
    #[error("subspace is not totally isotropic")]
    NotIsotropic,
    #[error("wrong dimension: {0}")]
    WrongDimension(String),
    #[error("orthogonal complement has non-square norm {0}")]
    NonSquareComplement(String),
    #[error("product formula violated for Hasse invariants")]
    ProductFormulaViolated,

    // orbits
    #[error("n must be at least 1")]
    ZeroRank,
    #[error("norm {0} is not a rational square")]
    NormNotSquare(String),
    #[error("element is not fixed by the involution x -> -x")]
    NotTauFixed,
    #[error("no cyclic vector found")]
    NoCyclicVector,
    #[error("operator does not satisfy the representation's symmetry")]
    WrongSymmetry,
    #[error("operators belong to different representations or dimensions")]
    RepMismatch,
    #[error("discriminant value is zero")]
    ZeroDiscriminant,
    #[error("twisted space is not split, so the class is not in the kernel")]
    NotInKernel,
    #[error("bounded search found nothing: {0}")]
    SearchExhausted(String),

    // descent
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("Weierstrass points (y = 0) are not supported")]
    WeierstrassPoint,
    #[error("group law needs a genus one curve y^2 = cubic")]
    NotGenusOne,

    // census
    #[error("q must be odd")]
    EvenQ,
    #[error("even prime not supported")]
    EvenPrime,
    #[error("polynomial is not separable modulo {0}")]
    NonSeparableModP(u64),
    #[error("prime {0} divides 2*disc(f) or a coefficient denominator")]
    BadPrime(String),
    #[error("search space exceeds budget: {0}")]
    BudgetExceeded(String),
    #[error("input is outside the maximal-rank regime: {0}")]
    MaximalRankHypothesisFails(String),

    // lattices
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("vector is null (q2 = 0)")]
    NullVector,
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("lattice is not stable under multiplication by x")]
    NotIdeal,
    #[error("discriminant must be negative")]
    NotNegativeDiscriminant,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid discriminant {0}: must be negative and 0 or 1 mod 4")]
    InvalidDiscriminant(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::ProductFormulaViolated)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
