//! The étale algebra `L = Q[x]/(f)` and its arithmetic.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::fp::{check_odd_prime, FpPoly};
use crate::exact::int::{is_rat_square, odd_primes, rat_mod, rat_mod_u64, rational_reconstruct};
use crate::exact::real::{isolate_real_roots, sign_at_root, RootInterval};
use crate::exact::{ExactRat, Matrix, Poly};

/// `Q[x]/(f)` for a monic separable `f`.
#[derive(Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    f: Poly,
    disc: ExactRat,
}

impl EtaleAlgebra {
    /// The algebra attached to a monic separable `f` of odd degree `2n+1 >= 3`.
    pub fn new(f: Poly) -> Result<Arc<Self>> {
        let d = f.degree().unwrap_or(0);
        if d < 3 || d % 2 == 0 {
            return Err(Error::WrongDegree(d));
        }
        Self::general(f)
    }

    /// Any monic separable modulus of degree at least 1.
    pub fn general(f: Poly) -> Result<Arc<Self>> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let disc = f.discriminant()?;
        if disc.is_zero() {
            return Err(Error::NonSeparable);
        }
        Ok(Arc::new(EtaleAlgebra { f, disc }))
    }

    pub fn modulus(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    /// `n` with `deg f = 2n + 1` (only meaningful for odd degree).
    pub fn n(&self) -> usize {
        self.degree() / 2
    }

    pub fn discriminant(&self) -> &ExactRat {
        &self.disc
    }

    pub fn is_odd(&self) -> bool {
        self.f.is_odd()
    }

    pub fn elem(self: &Arc<Self>, p: Poly) -> EtaleElement {
        EtaleElement { alg: Arc::clone(self), p: p.rem(&self.f) }
    }

    pub fn from_coeffs(self: &Arc<Self>, c: Vec<ExactRat>) -> EtaleElement {
        self.elem(Poly::new(c))
    }

    pub fn constant(self: &Arc<Self>, c: ExactRat) -> EtaleElement {
        self.elem(Poly::constant(c))
    }

    pub fn one(self: &Arc<Self>) -> EtaleElement {
        self.elem(Poly::one())
    }

    /// The image `β` of `x`.
    pub fn beta(self: &Arc<Self>) -> EtaleElement {
        self.elem(Poly::x())
    }

    /// `β^k`.
    pub fn beta_pow(self: &Arc<Self>, k: usize) -> EtaleElement {
        self.elem(Poly::monomial(ExactRat::one(), k))
    }

    /// Element with prescribed values at the rational roots of `f`, when `f`
    /// splits into linear factors over Q.
    pub fn from_root_values(self: &Arc<Self>, values: &[ExactRat]) -> Result<EtaleElement> {
        let roots = rational_roots(&self.f);
        if roots.len() != self.degree() {
            return Err(Error::DimensionMismatch("modulus does not split over Q".into()));
        }
        if values.len() != roots.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} component values, got {}",
                roots.len(),
                values.len()
            )));
        }
        let mut acc = Poly::zero();
        for (i, ri) in roots.iter().enumerate() {
            let mut basis = Poly::one();
            for (j, rj) in roots.iter().enumerate() {
                if i != j {
                    let lin = Poly::new(vec![-rj.clone(), ExactRat::one()]);
                    basis = &basis * &lin.scale(&(ExactRat::one() / (ri - rj)));
                }
            }
            acc = &acc + &basis.scale(&values[i]);
        }
        Ok(self.elem(acc))
    }

    /// Data for the involution `x -> -x` when `f(x) = x g(x^2)`.
    pub fn skew_data(&self) -> Result<SkewAlgebraData> {
        let g = self.f.odd_part_g()?;
        let h = g.compose_square();
        Ok(SkewAlgebraData {
            k: EtaleAlgebra::general(g.clone())?,
            e: EtaleAlgebra::general(h)?,
            g,
        })
    }
}

impl fmt::Debug for EtaleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.f)
    }
}

/// Sorted list of the rational roots of a monic polynomial.
pub fn rational_roots(f: &Poly) -> Vec<ExactRat> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    for iv in isolate_real_roots(f) {
        if let Some(r) = rational_root_in(&rest, &iv) {
            rest = rest.div_rem(&Poly::new(vec![-r.clone(), ExactRat::one()])).0;
            out.push(r);
        }
    }
    out
}

fn rational_root_in(f: &Poly, iv: &RootInterval) -> Option<ExactRat> {
    // any rational root of a monic integral-scaled polynomial has bounded
    // denominator, so try candidates p/q from the rational root theorem
    let den = f.denominator_lcm();
    let scaled = f.scale(&ExactRat::from_integer(den));
    let a0 = scaled.coeffs().iter().find(|c| !c.is_zero())?.to_integer();
    let lead = scaled.lead().to_integer();
    let low = scaled.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 && iv.lo < ExactRat::zero() && ExactRat::zero() <= iv.hi {
        return Some(ExactRat::zero());
    }
    let nums = divisors(&a0.abs())?;
    let dens = divisors(&lead.abs())?;
    for p in &nums {
        for q in &dens {
            for s in [1, -1] {
                let r = ExactRat::new(p * s, q.clone());
                if iv.lo < r && r <= iv.hi && f.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let fac = crate::exact::int::factor(n).ok()?;
    let mut out = vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
        if out.len() > 1 << 16 {
            return None;
        }
    }
    Some(out)
}

/// Element of an étale algebra, kept reduced modulo `f`.
#[derive(Clone)]
pub struct EtaleElement {
    alg: Arc<EtaleAlgebra>,
    p: Poly,
}

impl PartialEq for EtaleElement {
    fn eq(&self, o: &Self) -> bool {
        self.alg.f == o.alg.f && self.p == o.p
    }
}

impl Eq for EtaleElement {}

impl EtaleElement {
    pub fn algebra(&self) -> &Arc<EtaleAlgebra> {
        &self.alg
    }

    /// Reduced representative as a polynomial in `β`.
    pub fn poly(&self) -> &Poly {
        &self.p
    }

    /// Coefficients on the power basis, length exactly `deg f`.
    pub fn coeffs(&self) -> Vec<ExactRat> {
        (0..self.alg.degree()).map(|k| self.p.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p == Poly::one()
    }

    fn check(&self, o: &EtaleElement) -> Result<()> {
        if self.alg.f != o.alg.f {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, o: &EtaleElement) -> Result<EtaleElement> {
        self.check(o)?;
        Ok(self.alg.elem(&self.p * &o.p))
    }

    pub fn add(&self, o: &EtaleElement) -> Result<EtaleElement> {
        self.check(o)?;
        Ok(self.alg.elem(&self.p + &o.p))
    }

    pub fn sub(&self, o: &EtaleElement) -> Result<EtaleElement> {
        self.check(o)?;
        Ok(self.alg.elem(&self.p - &o.p))
    }

    pub fn neg(&self) -> EtaleElement {
        self.alg.elem(-&self.p)
    }

    pub fn scale(&self, c: &ExactRat) -> EtaleElement {
        self.alg.elem(self.p.scale(c))
    }

    pub fn square(&self) -> EtaleElement {
        self.alg.elem(&self.p * &self.p)
    }

    pub fn pow(&self, e: u32) -> EtaleElement {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = self.alg.elem(&acc.p * &self.p);
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        !self.p.is_zero() && self.p.gcd(&self.alg.f).degree() == Some(0)
    }

    pub fn inv(&self) -> Result<EtaleElement> {
        if self.p.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (g, s, _) = self.p.ext_gcd(&self.alg.f);
        if g.degree() != Some(0) {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.alg.elem(s.scale(&(ExactRat::one() / g.lead()))))
    }

    /// Matrix of multiplication by `self` on the power basis.
    pub fn mul_matrix(&self) -> Matrix {
        let n = self.alg.degree();
        let cols: Vec<Vec<ExactRat>> = (0..n)
            .map(|j| self.alg.elem(&self.p * &Poly::monomial(ExactRat::one(), j)).coeffs())
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn norm(&self) -> ExactRat {
        self.mul_matrix().det().expect("square")
    }

    pub fn trace(&self) -> ExactRat {
        self.mul_matrix().trace()
    }

    /// Coefficient of `β^{d-1}` in the reduced representative.
    pub fn top_coeff(&self) -> ExactRat {
        self.p.coeff(self.alg.degree() - 1)
    }

    /// The involution `β -> -β`; requires `f(-x) = -f(x)`.
    pub fn apply_tau(&self) -> Result<EtaleElement> {
        if !self.alg.is_odd() {
            return Err(Error::NotOddPolynomial);
        }
        Ok(self.alg.elem(self.p.reflect()))
    }

    pub fn is_tau_fixed(&self) -> bool {
        self.p.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Decide whether `self` is a square in `L`; see [`is_square_with`].
    pub fn is_square(&self) -> Result<SquareResult> {
        is_square_with(self, &SquareConfig::default())
    }
}

impl fmt::Display for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p.to_string().replace('x', "b"))
    }
}

impl fmt::Debug for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.alg)
    }
}

/// `K = Q[x]/(g)` and `E = Q[x]/(g(x^2))` for an odd modulus `f = x g(x^2)`.
#[derive(Clone, Debug)]
pub struct SkewAlgebraData {
    pub g: Poly,
    pub k: Arc<EtaleAlgebra>,
    pub e: Arc<EtaleAlgebra>,
}

impl SkewAlgebraData {
    pub fn n(&self) -> usize {
        self.g.degree().unwrap()
    }

    /// For a τ-fixed `α = A(β²)` in `L`, the polynomial `A`.
    pub fn even_part(alpha: &EtaleElement) -> Result<Poly> {
        if !alpha.is_tau_fixed() {
            return Err(Error::NotTauFixed);
        }
        Ok(Poly::new(alpha.poly().coeffs().iter().step_by(2).cloned().collect()))
    }

    /// Image of a τ-fixed `α = A(β²)` in `K`.
    pub fn kappa(&self, alpha: &EtaleElement) -> Result<EtaleElement> {
        Ok(self.k.elem(Self::even_part(alpha)?))
    }
}

/// Why an element is not a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareCertificate {
    /// The norm is not a rational square.
    Norm { norm: ExactRat },
    /// Negative at the real root isolated in `interval` (index in ascending order).
    Real { root_index: usize, interval: RootInterval },
    /// Non-square in the residue field `F_p[x]/(factor)` at a good prime.
    Local { p: u64, factor: FpPoly },
}

impl fmt::Display for SquareCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareCertificate::Norm { norm } => write!(f, "norm {norm} is not a square"),
            SquareCertificate::Real { root_index, .. } => {
                write!(f, "negative at real root #{root_index}")
            }
            SquareCertificate::Local { p, factor } => {
                write!(f, "non-square modulo {p} in residue factor {:?}", factor.coeffs())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareResult {
    /// `r` with `r² = a`, verified exactly.
    True(EtaleElement),
    False(SquareCertificate),
    Unknown,
}

impl SquareResult {
    pub fn is_true(&self) -> bool {
        matches!(self, SquareResult::True(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, SquareResult::False(_))
    }
}

#[derive(Clone, Debug)]
pub struct SquareConfig {
    /// Initial p-adic precision exponent.
    pub precision: u32,
    /// Number of precision doublings after a failed reconstruction.
    pub raises: u32,
    /// Good primes inspected for a local obstruction.
    pub local_primes: usize,
}

impl Default for SquareConfig {
    fn default() -> Self {
        SquareConfig { precision: 40, raises: 2, local_primes: 30 }
    }
}

/// Semi-decision for squareness of a unit of `L`.
///
/// Obstructions are tried in order: norm, real embeddings, residue fields at
/// good primes. Otherwise a square root is lifted p-adically, rationally
/// reconstructed under every choice of local signs, and checked exactly.
pub fn is_square_with(a: &EtaleElement, cfg: &SquareConfig) -> Result<SquareResult> {
    if !a.is_unit() {
        return Err(Error::NonUnit);
    }
    let f = a.alg.modulus();
    let norm = a.norm();
    if !is_rat_square(&norm) {
        return Ok(SquareResult::False(SquareCertificate::Norm { norm }));
    }
    for (i, iv) in isolate_real_roots(f).into_iter().enumerate() {
        if sign_at_root(f, &iv, a.poly()) < 0 {
            return Ok(SquareResult::False(SquareCertificate::Real { root_index: i, interval: iv }));
        }
    }
    let mut first: Option<(u64, Vec<FpPoly>)> = None;
    for (p, factors) in good_primes(a, &norm).take(cfg.local_primes) {
        for h in &factors {
            let q = BigUint::from(p).pow(h.degree().unwrap() as u32);
            let ap = FpPoly::from_poly(a.poly(), p).expect("good prime").rem(h);
            let e = (q - BigUint::one()) >> 1u32;
            if ap.pow_mod(&e, h) != FpPoly::one(p) {
                return Ok(SquareResult::False(SquareCertificate::Local { p, factor: h.clone() }));
            }
        }
        if first.is_none() {
            first = Some((p, factors));
        }
    }
    let Some((p, factors)) = first else {
        return Ok(SquareResult::Unknown);
    };
    let mut k = cfg.precision;
    for _ in 0..=cfg.raises {
        if let Some(r) = lift_and_reconstruct(a, p, &factors, k) {
            return Ok(SquareResult::True(r));
        }
        k *= 2;
    }
    Ok(SquareResult::Unknown)
}

/// Good odd primes for `a` with the factorization of `f mod p`.
fn good_primes<'a>(
    a: &'a EtaleElement,
    norm: &'a ExactRat,
) -> impl Iterator<Item = (u64, Vec<FpPoly>)> + 'a {
    let f = a.alg.modulus().clone();
    odd_primes().take(2000).filter_map(move |p| {
        if rat_mod_u64(norm, p).map_or(true, |v| v == 0) {
            return None;
        }
        let fp = FpPoly::from_poly(&f, p)?;
        FpPoly::from_poly(a.poly(), p)?;
        if fp.degree() != f.degree() || !fp.is_squarefree() {
            return None;
        }
        Some((p, fp.factor_squarefree().ok()?))
    })
}

/// Square root in `F_p[x]/(h)` for irreducible `h` (Tonelli-Shanks).
fn fq_sqrt(c: &FpPoly, h: &FpPoly, rng: &mut ChaCha8Rng) -> Option<FpPoly> {
    let p = h.prime();
    let one = FpPoly::one(p);
    if c.is_zero() {
        return Some(c.clone());
    }
    let d = h.degree().unwrap();
    let qm1 = BigUint::from(p).pow(d as u32) - BigUint::one();
    let half = &qm1 >> 1u32;
    if c.pow_mod(&half, h) != one {
        return None;
    }
    let s = qm1.trailing_zeros().unwrap();
    let t = &qm1 >> s;
    let minus_one = FpPoly::new(p, vec![p - 1]);
    let z = loop {
        let z = FpPoly::new(p, (0..d).map(|_| rng.gen_range(0..p)).collect());
        if !z.is_zero() && z.pow_mod(&half, h) == minus_one {
            break z;
        }
    };
    let mut m = s;
    let mut cc = z.pow_mod(&t, h);
    let mut tt = c.pow_mod(&t, h);
    let mut r = c.pow_mod(&((&t + BigUint::one()) >> 1u32), h);
    loop {
        if tt == one {
            return Some(r);
        }
        let mut i = 0;
        let mut x = tt.clone();
        while x != one {
            x = x.mul_mod(&x, h);
            i += 1;
        }
        let mut b = cc.clone();
        for _ in 0..m - i - 1 {
            b = b.mul_mod(&b, h);
        }
        m = i;
        cc = b.mul_mod(&b, h);
        tt = tt.mul_mod(&cc, h);
        r = r.mul_mod(&b, h);
    }
}

/// Arithmetic in `(Z/m)[x]/(f)` for monic `f`.
struct ResidueRing {
    m: BigInt,
    f: Vec<BigInt>,
}

impl ResidueRing {
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.f.len() - 1;
        while v.len() > d {
            let c = v.pop().unwrap();
            if !c.is_zero() {
                let k = v.len() - d;
                for j in 0..d {
                    v[k + j] -= &c * &self.f[j];
                }
            }
        }
        v.resize(d, BigInt::zero());
        v.into_iter().map(|c| c.mod_floor(&self.m)).collect()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.reduce(v)
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.m)).collect()
    }

    fn scalar(&self, c: i64) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.f.len() - 1];
        v[0] = BigInt::from(c).mod_floor(&self.m);
        v
    }
}

fn lift_and_reconstruct(a: &EtaleElement, p: u64, factors: &[FpPoly], k: u32) -> Option<EtaleElement> {
    let alg = a.algebra();
    let d = alg.degree();
    let fp = FpPoly::from_poly(alg.modulus(), p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x9e37_79b9);
    let ap = FpPoly::from_poly(a.poly(), p)?;
    // residue square roots and CRT idempotents mod p
    let mut roots = Vec::new();
    let mut idems = Vec::new();
    for h in factors {
        roots.push(fq_sqrt(&ap.rem(h), h, &mut rng)?);
        let cof = fp.div_rem(h).0;
        let inv = cof.inverse_mod(h)?;
        idems.push(cof.mul(&inv).rem(&fp));
    }
    let mut r0 = FpPoly::zero(p);
    for (e, r) in idems.iter().zip(&roots) {
        r0 = r0.add(&e.mul(r)).rem(&fp);
    }
    let m = BigInt::from(p).pow(k);
    let ring = ResidueRing {
        f: alg.modulus().coeffs().iter().map(|c| rat_mod(c, &m)).collect::<Option<Vec<_>>>()?,
        m: m.clone(),
    };
    let to_ring = |x: &FpPoly| -> Vec<BigInt> { (0..d).map(|i| BigInt::from(x.coeff(i))).collect() };
    let target: Vec<BigInt> = a.coeffs().iter().map(|c| rat_mod(c, &m)).collect::<Option<Vec<_>>>()?;
    let mut r = to_ring(&r0);
    let two_r0 = r0.scale(2);
    let mut s = to_ring(&two_r0.inverse_mod(&fp)?);
    let two = ring.scalar(2);
    let steps = 64 - (k as u64).leading_zeros() + 2;
    let mut es: Vec<Vec<BigInt>> = idems.iter().map(to_ring).collect();
    for _ in 0..steps {
        // r <- r - s (r^2 - a);  s <- s (2 - 2 r s)
        let err = ring.sub(&ring.mul(&r, &r), &target);
        r = ring.sub(&r, &ring.mul(&s, &err));
        let tr = ring.mul(&two, &r);
        s = ring.mul(&s, &ring.sub(&two, &ring.mul(&tr, &s)));
        // e <- 3e^2 - 2e^3
        for e in es.iter_mut() {
            let e2 = ring.mul(e, e);
            let e3 = ring.mul(&e2, e);
            *e = ring.sub(&ring.mul(&ring.scalar(3), &e2), &ring.mul(&two, &e3));
        }
    }
    let nf = es.len();
    for mask in 0..(1u64 << nf.saturating_sub(1)) {
        let mut sign = ring.scalar(0);
        for (i, e) in es.iter().enumerate() {
            let term = if mask >> i & 1 == 1 { ring.sub(&ring.scalar(0), e) } else { e.clone() };
            sign = sign.iter().zip(&term).map(|(x, y)| (x + y).mod_floor(&m)).collect();
        }
        let cand = ring.mul(&sign, &r);
        let coeffs: Option<Vec<ExactRat>> = cand.iter().map(|c| rational_reconstruct(c, &m)).collect();
        if let Some(c) = coeffs {
            let root = alg.from_coeffs(c);
            if root.square() == *a {
                return Some(root);
            }
        }
    }
    None
}

/// Class of `κ ∈ K*` modulo norms from `E = K(√x)`, decided where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormClassResult {
    /// `κ = s²`, hence the norm of `s ∈ K ⊂ E`.
    Norm(EtaleElement),
    NotNorm(NormCertificate),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormCertificate {
    /// `κ` is negative at a negative real root of `g`, where `E` is complex.
    Real { root_index: usize },
    /// Local Hilbert symbol `(κ_i, ρ_i)_v = -1` at a rational root `ρ_i` of `g`.
    Hilbert { root: ExactRat, value: ExactRat, place: crate::quad::Place },
}

/// Whether `κ ∈ K*` is a norm from `E*` where `E = K[y]/(y² - x)`.
///
/// Complete when `g` splits over Q (Hasse norm theorem for each quadratic
/// factor); otherwise only real obstructions and square witnesses are used.
pub fn is_norm_from_e(kappa: &EtaleElement) -> Result<NormClassResult> {
    if !kappa.is_unit() {
        return Err(Error::NonUnit);
    }
    let g = kappa.algebra().modulus();
    for (i, iv) in isolate_real_roots(g).into_iter().enumerate() {
        if iv.hi <= ExactRat::zero() && sign_at_root(g, &iv, kappa.poly()) < 0 {
            return Ok(NormClassResult::NotNorm(NormCertificate::Real { root_index: i }));
        }
    }
    let roots = rational_roots(g);
    for rho in &roots {
        let value = kappa.poly().eval(rho);
        let mut places = vec![crate::quad::Place::Infinity];
        let mut primes = crate::exact::int::prime_divisors(&(value.numer() * value.denom()))?;
        primes.extend(crate::exact::int::prime_divisors(&(rho.numer() * rho.denom()))?);
        primes.push(BigInt::from(2));
        primes.sort();
        primes.dedup();
        places.extend(primes.into_iter().map(crate::quad::Place::Prime));
        for place in places {
            if crate::quad::hilbert_symbol(&value, rho, &place)? < 0 {
                return Ok(NormClassResult::NotNorm(NormCertificate::Hilbert {
                    root: rho.clone(),
                    value,
                    place,
                }));
            }
        }
    }
    if roots.len() == g.degree().unwrap() {
        // every local symbol is trivial: a norm in each quadratic factor
        return Ok(NormClassResult::Norm(kappa.algebra().one()));
    }
    match kappa.is_square()? {
        SquareResult::True(s) => Ok(NormClassResult::Norm(s)),
        _ => Ok(NormClassResult::Unknown),
    }
}

/// Convenience check that `p` is usable as a residue prime.
pub fn residue_prime(p: u64) -> Result<()> {
    check_odd_prime(p)
}
