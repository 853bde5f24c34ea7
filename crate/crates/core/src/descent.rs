//! Hyperelliptic curves `d y² = f(x)`, descent classes of rational points,
//! the genus-one group law, and the pencil discriminant identity.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::exact::int::{rat_sqrt, squarefree_part};
use crate::exact::{ExactRat, Matrix, Poly};
use crate::orbit::{gram_alpha, in_kernel_gamma, RepTag};

/// `d y² = f(x)` with `f` monic separable of degree `2n+1`.
#[derive(Clone, Debug)]
pub struct HyperCurve {
    alg: Arc<EtaleAlgebra>,
    d: ExactRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: ExactRat, y: ExactRat },
}

impl CurvePoint {
    pub fn affine(x: ExactRat, y: ExactRat) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn neg(&self) -> CurvePoint {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "infinity"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl HyperCurve {
    pub fn new(f: Poly, d: ExactRat) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(HyperCurve { alg: EtaleAlgebra::new(f)?, d })
    }

    pub fn untwisted(f: Poly) -> Result<Self> {
        HyperCurve::new(f, ExactRat::one())
    }

    pub fn f(&self) -> &Poly {
        self.alg.modulus()
    }

    pub fn twist(&self) -> &ExactRat {
        &self.d
    }

    pub fn genus(&self) -> usize {
        self.alg.n()
    }

    pub fn algebra(&self) -> &Arc<EtaleAlgebra> {
        &self.alg
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => &self.d * y * y == self.f().eval(x),
        }
    }

    /// Rational points `(a/b, y)` with `|a| <= h`, `1 <= b <= h`, `y >= 0`.
    pub fn search_points(&self, h: i64) -> Vec<CurvePoint> {
        let mut out = Vec::new();
        for b in 1..=h {
            for a in -h..=h {
                let x = ExactRat::new(BigInt::from(a), BigInt::from(b));
                if x.denom() != &BigInt::from(b) {
                    continue;
                }
                if let Some(y) = rat_sqrt(&(self.f().eval(&x) / &self.d)) {
                    out.push(CurvePoint::affine(x, y));
                }
            }
        }
        out
    }
}

/// `α = d (x₀ - β)`, or `1` at infinity.
pub fn descent_class(c: &HyperCurve, pt: &CurvePoint) -> Result<EtaleElement> {
    let (x, y) = match pt {
        CurvePoint::Infinity => return Ok(c.alg.one()),
        CurvePoint::Affine { x, y } => (x, y),
    };
    if !c.contains(pt) {
        return Err(Error::NotOnCurve);
    }
    if y.is_zero() {
        return Err(Error::WeierstrassPoint);
    }
    let alpha = c.alg.from_coeffs(vec![&c.d * x, -c.d.clone()]);
    let expected = pow(&c.d, 2 * c.genus() + 2) * y * y;
    if alpha.norm() != expected {
        return Err(Error::Internal("descent class has the wrong norm".into()));
    }
    Ok(alpha)
}

fn pow(x: &ExactRat, e: usize) -> ExactRat {
    (0..e).fold(ExactRat::one(), |a, _| a * x)
}

/// Whether the descent class of `pt` lies in the kernel of `γ` for `Sym²W`.
pub fn kernel_check(c: &HyperCurve, pt: &CurvePoint) -> Result<bool> {
    in_kernel_gamma(c.f(), &descent_class(c, pt)?, RepTag::Sym2)
}

fn cubic_coeffs(c: &HyperCurve) -> Result<(ExactRat, ExactRat)> {
    if c.f().degree() != Some(3) || !c.d.is_one() {
        return Err(Error::NotGenusOne);
    }
    Ok((c.f().coeff(2), c.f().coeff(1)))
}

/// Chord-tangent addition on `y² = x³ + a₂x² + a₄x + a₆`.
pub fn ec_add(c: &HyperCurve, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    let (a2, a4) = cubic_coeffs(c)?;
    if !c.contains(p) || !c.contains(q) {
        return Err(Error::NotOnCurve);
    }
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return Ok(q.clone()),
        (_, CurvePoint::Infinity) => return Ok(p.clone()),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let three = ExactRat::from_integer(BigInt::from(3));
        let two = ExactRat::from_integer(BigInt::from(2));
        (three * x1 * x1 + &two * &a2 * x1 + &a4) / (two * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &lambda * &lambda - &a2 - x1 - x2;
    let y3 = -(&lambda * (&x3 - x1) + y1);
    Ok(CurvePoint::affine(x3, y3))
}

/// `k P` for `k >= 0`.
pub fn ec_mul(c: &HyperCurve, p: &CurvePoint, k: u32) -> Result<CurvePoint> {
    let mut acc = CurvePoint::Infinity;
    for _ in 0..k {
        acc = ec_add(c, &acc, p)?;
    }
    Ok(acc)
}

/// Outcome of the pencil discriminant test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilCheck {
    /// `det(u G_Q - v G_Q') = c · v^{2n+2} f(u/v)`.
    pub constant: ExactRat,
    pub constant_class: BigInt,
    /// `det(u G_Q - v G_Q')` at `v = 1`, ascending in `u`.
    pub determinant: Poly,
    pub pass: bool,
}

/// Checks that the pencil spanned by `Q(λ,a) = ⟨λ,λ⟩_α` and
/// `Q'(λ,a) = ⟨βλ,λ⟩_α + d a²` on `L ⊕ Q` has discriminant proportional
/// to `v^{2n+2} f(u/v)`.
pub fn pencil_discriminant_check(f: &Poly, alpha: &EtaleElement, d: &ExactRat) -> Result<PencilCheck> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let g_alpha = gram_alpha(f, alpha, RepTag::Sym2)?;
    let alg = alpha.algebra();
    let deg = alg.degree();
    let b_alpha = Matrix::from_fn(deg, deg, |i, j| {
        alpha.mul(&alg.beta_pow(i + j + 1)).expect("same algebra").top_coeff()
    });
    let gq = g_alpha.gram().block_diag(&Matrix::zero(1, 1));
    let gq2 = b_alpha.block_diag(&Matrix::diagonal(&[d.clone()]));
    // the determinant has degree <= deg + 1 in u; interpolate from deg + 2 values
    let pts: Vec<ExactRat> = (0..deg as i64 + 2).map(|k| ExactRat::from_integer(BigInt::from(k))).collect();
    let vals: Vec<ExactRat> = pts
        .iter()
        .map(|u| (&gq.scale(u) - &gq2).det())
        .collect::<Result<_>>()?;
    let det = lagrange(&pts, &vals);
    let constant = det.coeff(deg);
    let pass = !constant.is_zero() && det == f.scale(&constant);
    let constant_class = if constant.is_zero() { BigInt::zero() } else { squarefree_part(&constant)? };
    Ok(PencilCheck { constant, constant_class, determinant: det, pass })
}

fn lagrange(xs: &[ExactRat], ys: &[ExactRat]) -> Poly {
    let mut acc = Poly::zero();
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = Poly::constant(ys[i].clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = Poly::new(vec![-xj.clone(), ExactRat::one()]);
                basis = &basis * &lin.scale(&(ExactRat::one() / (xi - xj)));
            }
        }
        acc = &acc + &basis;
    }
    acc
}
