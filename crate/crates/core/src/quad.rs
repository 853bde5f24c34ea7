//! Quadratic spaces over Q: diagonalization, local invariants, isometry and
//! the split test, and hyperbolic bases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::int::{is_square_int, legendre, prime_divisors, rat_sqrt, squarefree_part, valuation};
use crate::exact::{ExactRat, Matrix};

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigInt::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Nondegenerate symmetric bilinear space given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace {
    gram: Matrix,
}

impl QuadSpace {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(QuadSpace { gram })
    }

    pub fn diagonal(d: &[ExactRat]) -> Result<Self> {
        QuadSpace::new(Matrix::diagonal(d))
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> ExactRat {
        self.gram.det().expect("square")
    }

    pub fn pair(&self, u: &[ExactRat], v: &[ExactRat]) -> ExactRat {
        self.gram.bilinear(u, v)
    }

    /// The space `UᵀSU`.
    pub fn transform(&self, u: &Matrix) -> Result<QuadSpace> {
        QuadSpace::new(self.gram.congruent(u))
    }
}

/// The anti-diagonal Gram matrix of the split space of dimension `2n+1`.
pub fn standard_gram(n: usize) -> Matrix {
    let d = 2 * n + 1;
    Matrix::from_fn(d, d, |i, j| if i + j == d - 1 { ExactRat::one() } else { ExactRat::zero() })
}

/// Orthogonal basis: returns `(D, U)` with `UᵀSU = diag(D)`.
///
/// Columns of `U` are primitive integer vectors with positive leading entry.
pub fn diagonalize(s: &QuadSpace) -> Result<(Vec<ExactRat>, Matrix)> {
    let g = s.gram();
    let n = s.dim();
    let mut basis: Vec<Vec<ExactRat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ExactRat::one() } else { ExactRat::zero() }).collect())
        .collect();
    for k in 0..n {
        if g.bilinear(&basis[k], &basis[k]).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g.bilinear(&basis[j], &basis[j]).is_zero()) {
                basis.swap(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !g.bilinear(&basis[k], &basis[j]).is_zero()) {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(bj) {
                    *x += y;
                }
            } else {
                return Err(Error::Degenerate);
            }
        }
        let vk = basis[k].clone();
        let nk = g.bilinear(&vk, &vk);
        for j in k + 1..n {
            let c = g.bilinear(&basis[j], &vk) / &nk;
            if !c.is_zero() {
                for (x, y) in basis[j].iter_mut().zip(&vk) {
                    *x -= &c * y;
                }
            }
        }
    }
    let mut d = Vec::with_capacity(n);
    for v in basis.iter_mut() {
        let lambda = primitive_scale(v);
        for x in v.iter_mut() {
            *x *= &lambda;
        }
        d.push(g.bilinear(v, v));
    }
    Ok((d, Matrix::from_columns(&basis)))
}

/// Scalar turning `v` into a primitive integer vector with positive leading entry.
fn primitive_scale(v: &[ExactRat]) -> ExactRat {
    let den = v.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * ExactRat::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    let lead = ints.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    let sign = if lead.is_negative() { -BigInt::one() } else { BigInt::one() };
    ExactRat::new(den * sign, g)
}

fn integer_representative(a: &ExactRat) -> BigInt {
    a.numer() * a.denom()
}

/// Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &ExactRat, b: &ExactRat, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (a, b) = (integer_representative(a), integer_representative(b));
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => hilbert_int(&a, &b, p),
    })
}

fn hilbert_int(a: &BigInt, b: &BigInt, p: &BigInt) -> i8 {
    let alpha = valuation(a, p);
    let beta = valuation(b, p);
    let u = a / p.pow(alpha);
    let v = b / p.pow(beta);
    if *p == BigInt::from(2) {
        let eps = |x: &BigInt| -> u32 { (x.mod_floor(&BigInt::from(4)) == BigInt::from(3)) as u32 };
        let omega = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            (r == 3 || r == 5) as u32
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s: i32 = 1;
        let ep = ((p - 1u32) / 2u32).is_odd();
        if alpha % 2 == 1 && beta % 2 == 1 && ep {
            s = -s;
        }
        if beta % 2 == 1 {
            s *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(&v, p);
        }
        s as i8
    }
}

/// Classical invariants of a rational quadratic space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub disc_class: BigInt,
    pub signature: (usize, usize),
    /// Places with Hasse invariant `-1`; `+1` everywhere else.
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn hasse_at(&self, v: &Place) -> i8 {
        self.hasse.get(v).copied().unwrap_or(1)
    }

    /// Places with a nontrivial Hasse invariant.
    pub fn ramified(&self) -> Vec<Place> {
        self.hasse.iter().filter(|(_, &s)| s < 0).map(|(p, _)| p.clone()).collect()
    }
}

pub fn invariants(s: &QuadSpace) -> Result<FormInvariants> {
    let (d, _) = diagonalize(s)?;
    let sq: Vec<BigInt> = d.iter().map(squarefree_part).collect::<Result<_>>()?;
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    for x in &sq {
        primes.extend(prime_divisors(x)?);
    }
    let mut places = vec![Place::Infinity];
    places.extend(primes.into_iter().map(Place::Prime));
    let mut hasse = BTreeMap::new();
    for v in places {
        let mut h = 1i8;
        for i in 0..sq.len() {
            for j in i + 1..sq.len() {
                h *= hilbert_symbol(&ExactRat::from_integer(sq[i].clone()), &ExactRat::from_integer(sq[j].clone()), &v)?;
            }
        }
        if h < 0 {
            hasse.insert(v, h);
        }
    }
    if hasse.len() % 2 == 1 {
        return Err(Error::ProductFormulaViolated);
    }
    Ok(FormInvariants {
        dim: s.dim(),
        disc_class: squarefree_part(&s.det())?,
        signature: (pos, d.len() - pos),
        hasse,
    })
}

fn same_invariants(a: &FormInvariants, b: &FormInvariants) -> bool {
    if a.dim != b.dim || a.disc_class != b.disc_class || a.signature != b.signature {
        return false;
    }
    a.hasse.keys().chain(b.hasse.keys()).all(|v| a.hasse_at(v) == b.hasse_at(v))
}

/// Isometry over Q, decided by the complete invariant set.
pub fn is_isometric(s1: &QuadSpace, s2: &QuadSpace) -> Result<bool> {
    Ok(same_invariants(&invariants(s1)?, &invariants(s2)?))
}

/// Whether an odd-dimensional space is isometric to the split space.
pub fn is_split_odd(s: &QuadSpace) -> Result<bool> {
    let d = s.dim();
    if d < 3 || d % 2 == 0 {
        return Err(Error::WrongDimension(format!("expected odd dimension >= 3, got {d}")));
    }
    let std = QuadSpace::new(standard_gram(d / 2))?;
    Ok(same_invariants(&invariants(s)?, &invariants(&std)?))
}

/// Completes a basis `m_1..m_n` of a totally isotropic subspace to `U` with
/// `UᵀSU = standard_gram(n)`; columns are `m_1..m_n, u, y_n..y_1`.
pub fn hyperbolic_completion(s: &QuadSpace, m: &[Vec<ExactRat>]) -> Result<Matrix> {
    let dim = s.dim();
    if dim % 2 == 0 || dim < 3 {
        return Err(Error::WrongDimension(format!("expected odd dimension >= 3, got {dim}")));
    }
    let n = dim / 2;
    if m.len() != n || m.iter().any(|v| v.len() != dim) {
        return Err(Error::WrongDimension(format!("expected {n} vectors of length {dim}")));
    }
    for i in 0..n {
        for j in i..n {
            if !s.pair(&m[i], &m[j]).is_zero() {
                return Err(Error::NotIsotropic);
            }
        }
    }
    if Matrix::from_columns(m).rank() != n {
        return Err(Error::WrongDimension("isotropic vectors are linearly dependent".into()));
    }
    let g = s.gram();
    // rows m_iᵀ S
    let ms: Vec<Vec<ExactRat>> = m.iter().map(|v| g.transpose().mul_vec(v)).collect();
    let a = Matrix::from_fn(n, dim, |i, j| ms[i][j].clone());
    let mut ys = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<ExactRat> = (0..n).map(|i| if i == j { ExactRat::one() } else { ExactRat::zero() }).collect();
        ys.push(a.solve(&e).map_err(|_| Error::Degenerate)?.particular);
    }
    let half = ExactRat::new(BigInt::one(), BigInt::from(2));
    let mut yp = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = ys[j].clone();
        for l in 0..n {
            let c = s.pair(&ys[j], &ys[l]) * &half;
            for (x, y) in v.iter_mut().zip(&m[l]) {
                *x -= &c * y;
            }
        }
        yp.push(v);
    }
    let mut rows: Vec<Vec<ExactRat>> = ms.clone();
    rows.extend(yp.iter().map(|v| g.transpose().mul_vec(v)));
    let b = Matrix::from_fn(2 * n, dim, |i, j| rows[i][j].clone());
    let ker = b.kernel();
    if ker.len() != 1 {
        return Err(Error::Degenerate);
    }
    let u0 = &ker[0];
    let c = s.pair(u0, u0);
    let root = rat_sqrt(&c).ok_or_else(|| Error::NonSquareComplement(c.to_string()))?;
    let u: Vec<ExactRat> = u0.iter().map(|x| x / &root).collect();
    let mut cols: Vec<Vec<ExactRat>> = m.to_vec();
    cols.push(u);
    cols.extend(yp.into_iter().rev());
    let um = Matrix::from_columns(&cols);
    if g.congruent(&um) != standard_gram(n) {
        return Err(Error::Internal("hyperbolic completion failed to verify".into()));
    }
    Ok(um)
}

/// A nonzero isotropic vector of a 3-dimensional space, by bounded search on
/// the diagonal conic `d1 x² + d2 y² + d3 z² = 0`.
pub fn isotropic_vector_dim3(s: &QuadSpace, bound: i64) -> Result<Option<Vec<ExactRat>>> {
    if s.dim() != 3 {
        return Err(Error::WrongDimension(format!("expected dimension 3, got {}", s.dim())));
    }
    let (d, u) = diagonalize(s)?;
    // clear denominators: multiply each d_i by den², still the same class
    let di: Vec<BigInt> = d.iter().map(integer_representative).collect();
    for x in 0..=bound {
        for y in 0..=bound {
            if x == 0 && y == 0 {
                continue;
            }
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let lhs = &di[0] * &bx * &bx + &di[1] * &by * &by;
            if !lhs.is_multiple_of(&di[2]) {
                continue;
            }
            let z2 = -(lhs / &di[2]);
            if is_square_int(&z2) {
                let z = crate::exact::int::isqrt(&z2);
                // undo the rescaling d_i -> d_i * den_i²
                let coords = [
                    ExactRat::from_integer(bx * d[0].denom()),
                    ExactRat::from_integer(by * d[1].denom()),
                    ExactRat::from_integer(z * d[2].denom()),
                ];
                let v = u.mul_vec(&coords);
                debug_assert!(s.pair(&v, &v).is_zero());
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Basis of an `n`-dimensional totally isotropic subspace of a split space
/// of dimension `2n+1`, found by splitting off hyperbolic planes one at a
/// time. Isotropic vectors come from ternary subforms and a bounded conic
/// search.
pub fn maximal_isotropic(s: &QuadSpace, bound: i64) -> Result<Vec<Vec<ExactRat>>> {
    let dim = s.dim();
    let g = s.gram();
    let mut sub: Vec<Vec<ExactRat>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { ExactRat::one() } else { ExactRat::zero() }).collect())
        .collect();
    let mut found = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1507);
    while sub.len() >= 3 {
        let b = Matrix::from_columns(&sub);
        let local = QuadSpace::new(g.congruent(&b))?;
        let v = isotropic_in(&local, bound, &mut rng)?
            .ok_or_else(|| Error::SearchExhausted(format!("no isotropic vector with height <= {bound}")))?;
        let v = b.mul_vec(&v);
        let w = sub
            .iter()
            .find(|w| !s.pair(&v, w).is_zero())
            .ok_or(Error::Degenerate)?
            .clone();
        // complement of span(v, w) inside the current subspace
        let rows = Matrix::from_fn(2, sub.len(), |i, j| {
            let x = if i == 0 { &v } else { &w };
            s.pair(x, &sub[j])
        });
        sub = rows.kernel().into_iter().map(|c| b.mul_vec(&c)).collect();
        found.push(v);
    }
    Ok(found)
}

fn isotropic_in(s: &QuadSpace, bound: i64, rng: &mut ChaCha8Rng) -> Result<Option<Vec<ExactRat>>> {
    if s.dim() == 3 {
        return isotropic_vector_dim3(s, bound);
    }
    let (d, u) = diagonalize(s)?;
    let m = d.len();
    let mut tries: Vec<Vec<Vec<ExactRat>>> = Vec::new();
    let unit = |i: usize| -> Vec<ExactRat> { (0..m).map(|j| if i == j { ExactRat::one() } else { ExactRat::zero() }).collect() };
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                tries.push(vec![unit(i), unit(j), unit(k)]);
            }
        }
    }
    for _ in 0..200 {
        tries.push(
            (0..3)
                .map(|_| (0..m).map(|_| ExactRat::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))).collect())
                .collect(),
        );
    }
    let diag = Matrix::diagonal(&d);
    for t in tries {
        let c = Matrix::from_columns(&t);
        let Ok(tern) = QuadSpace::new(diag.congruent(&c)) else { continue };
        let det = tern.det();
        let hyper = QuadSpace::diagonal(&[ExactRat::one(), -ExactRat::one(), -det])?;
        if is_isometric(&tern, &hyper)? {
            if let Some(v) = isotropic_vector_dim3(&tern, bound)? {
                return Ok(Some(u.mul_vec(&c.mul_vec(&v))));
            }
        }
    }
    Ok(None)
}
