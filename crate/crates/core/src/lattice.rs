//! Integral structures: lattices in the standard space, fractional ideals of
//! `R = Z[x]/(f)`, the pairs `(I, α)` describing integral orbits, and
//! definite binary quadratic forms with their class groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::exact::hnf::{hnf_columns, integer_kernel, IntColumns};
use crate::exact::{ExactRat, Matrix};
use crate::orbit::RepTag;
use crate::quad::{diagonalize, standard_gram, QuadSpace};

/// Integral symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLattice {
    gram: Matrix,
}

impl ZLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !gram.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(ZLattice { gram })
    }

    /// The odd unimodular lattice `Z^{2n+1}` with the anti-diagonal form.
    pub fn standard(n: usize) -> Self {
        ZLattice { gram: standard_gram(n) }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square").to_integer()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        let (d, _) = diagonalize(&QuadSpace::new(self.gram.clone())?)?;
        let pos = d.iter().filter(|x| x.is_positive()).count();
        Ok((pos, d.len() - pos))
    }
}

/// Orthogonal complement of a primitive vector in the standard lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    /// `q₂(w) = ⟨w, w⟩`.
    pub q2: BigInt,
    /// HNF basis of `U = (Zw)^⊥`, as columns.
    pub basis: IntColumns,
    pub lattice: ZLattice,
    pub even: bool,
}

pub fn complement_lattice(w: &[BigInt], n: usize) -> Result<Complement> {
    let d = 2 * n + 1;
    if w.len() != d {
        return Err(Error::DimensionMismatch(format!("vector of length {} in rank {d}", w.len())));
    }
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_one() {
        return Err(Error::NotPrimitive);
    }
    let q2: BigInt = (0..d).map(|i| &w[i] * &w[d - 1 - i]).sum();
    if q2.is_zero() {
        return Err(Error::NullVector);
    }
    let gw: Vec<BigInt> = (0..d).map(|i| w[d - 1 - i].clone()).collect();
    let kernel = integer_kernel(&[gw], d);
    let basis = hnf_columns(&kernel, d);
    let k = crate::exact::hnf::int_columns_to_matrix(&basis);
    let lattice = ZLattice::new(standard_gram(n).congruent(&k))?;
    // Zw ⊕ U has index |q₂(w)| in the unimodular lattice
    let det_u = lattice.det();
    if det_u.abs() != q2.abs() {
        return Err(Error::Internal(format!("complement has det {det_u}, expected ±{q2}")));
    }
    let even = lattice.is_even();
    Ok(Complement { q2, basis, lattice, even })
}

/// Fractional ideal of `R = Z[β]`: the Z-span of `basis / den`, in power-basis
/// coordinates, basis in column HNF.
#[derive(Clone, Debug)]
pub struct FracIdeal {
    alg: Arc<EtaleAlgebra>,
    basis: IntColumns,
    den: BigInt,
}

impl PartialEq for FracIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.alg.modulus() == o.alg.modulus() && self.basis == o.basis && self.den == o.den
    }
}

impl Eq for FracIdeal {}

fn check_order(alg: &EtaleAlgebra) -> Result<()> {
    let f = alg.modulus();
    if !f.is_integral() {
        return Err(Error::NonIntegral);
    }
    Ok(())
}

fn common_den(v: &[Vec<ExactRat>]) -> BigInt {
    v.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl FracIdeal {
    /// Z-span of `gens`, which must be full rank and stable under `β`.
    pub fn new(alg: &Arc<EtaleAlgebra>, gens: &[EtaleElement]) -> Result<Self> {
        check_order(alg)?;
        let vecs: Vec<Vec<ExactRat>> = gens.iter().map(|g| g.coeffs()).collect();
        let den = common_den(&vecs);
        let cols: IntColumns = vecs
            .iter()
            .map(|v| v.iter().map(|x| (x * ExactRat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let basis = hnf_columns(&cols, alg.degree());
        if basis.len() != alg.degree() {
            return Err(Error::NotFullRank);
        }
        let ideal = FracIdeal { alg: alg.clone(), basis, den }.normalized();
        let beta = alg.beta();
        for x in ideal.elements() {
            if !ideal.contains(&beta.mul(&x)?)? {
                return Err(Error::NotIdeal);
            }
        }
        Ok(ideal)
    }

    /// The `R`-module generated by `gens`.
    pub fn generated(alg: &Arc<EtaleAlgebra>, gens: &[EtaleElement]) -> Result<Self> {
        let mut all = Vec::new();
        for g in gens {
            for k in 0..alg.degree() {
                all.push(g.mul(&alg.beta_pow(k))?);
            }
        }
        FracIdeal::new(alg, &all)
    }

    pub fn unit(alg: &Arc<EtaleAlgebra>) -> Result<Self> {
        FracIdeal::principal(&alg.one())
    }

    pub fn principal(c: &EtaleElement) -> Result<Self> {
        FracIdeal::generated(c.algebra(), std::slice::from_ref(c))
    }

    fn normalized(mut self) -> Self {
        let g = self.basis.iter().flatten().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for c in self.basis.iter_mut() {
                for x in c.iter_mut() {
                    *x = &*x / &g;
                }
            }
            self.den /= g;
        }
        self
    }

    pub fn algebra(&self) -> &Arc<EtaleAlgebra> {
        &self.alg
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerator_basis(&self) -> &IntColumns {
        &self.basis
    }

    /// The Z-basis as algebra elements.
    pub fn elements(&self) -> Vec<EtaleElement> {
        let den = ExactRat::from_integer(self.den.clone());
        self.basis
            .iter()
            .map(|c| self.alg.from_coeffs(c.iter().map(|x| ExactRat::from_integer(x.clone()) / &den).collect()))
            .collect()
    }

    fn basis_matrix(&self) -> Matrix {
        let den = ExactRat::from_integer(self.den.clone());
        Matrix::from_fn(self.alg.degree(), self.basis.len(), |i, j| ExactRat::from_integer(self.basis[j][i].clone()) / &den)
    }

    /// Coordinates of `x` in the Z-basis (rational in general).
    pub fn coordinates(&self, x: &EtaleElement) -> Result<Vec<ExactRat>> {
        let sol = self.basis_matrix().solve(&x.coeffs())?;
        Ok(sol.particular)
    }

    pub fn contains(&self, x: &EtaleElement) -> Result<bool> {
        Ok(self.coordinates(x)?.iter().all(|c| c.is_integer()))
    }

    pub fn is_subset_of(&self, o: &FracIdeal) -> Result<bool> {
        same_ring(self, o)?;
        for x in self.elements() {
            if !o.contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `c · I`.
    pub fn scale_by(&self, c: &EtaleElement) -> Result<FracIdeal> {
        let gens = self.elements().iter().map(|x| x.mul(c)).collect::<Result<Vec<_>>>()?;
        FracIdeal::new(&self.alg, &gens)
    }

    /// Image under `τ`.
    pub fn tau(&self) -> Result<FracIdeal> {
        let gens = self.elements().iter().map(|x| x.apply_tau()).collect::<Result<Vec<_>>>()?;
        FracIdeal::new(&self.alg, &gens)
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .basis
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "(1/{}) <{}>", self.den, cols.join(", "))
    }
}

fn same_ring(a: &FracIdeal, b: &FracIdeal) -> Result<()> {
    if a.alg.modulus() != b.alg.modulus() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

pub fn ideal_mul(a: &FracIdeal, b: &FracIdeal) -> Result<FracIdeal> {
    same_ring(a, b)?;
    let mut gens = Vec::new();
    for x in a.elements() {
        for y in b.elements() {
            gens.push(x.mul(&y)?);
        }
    }
    FracIdeal::new(&a.alg, &gens)
}

/// Generalized index `[R : I]`.
pub fn ideal_norm(a: &FracIdeal) -> ExactRat {
    a.basis_matrix().det().expect("square").abs()
}

/// `(I, α)` for one of the operator representations.
#[derive(Clone, Debug)]
pub struct IdealPair {
    pub ideal: FracIdeal,
    pub alpha: EtaleElement,
    pub rep: RepTag,
}

impl IdealPair {
    pub fn new(ideal: FracIdeal, alpha: EtaleElement, rep: RepTag) -> Result<Self> {
        if ideal.alg.modulus() != alpha.algebra().modulus() {
            return Err(Error::RingMismatch);
        }
        if rep == RepTag::Standard {
            return Err(Error::RepMismatch);
        }
        if alpha.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(IdealPair { ideal, alpha, rep })
    }

    /// `(R, 1)`.
    pub fn trivial(alg: &Arc<EtaleAlgebra>, rep: RepTag) -> Result<Self> {
        IdealPair::new(FracIdeal::unit(alg)?, alg.one(), rep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    NotTauFixed,
    NormMismatch { ideal_side: ExactRat, alpha_norm: ExactRat },
    NonIntegralGram,
    NotContained,
    WrongDeterminant(ExactRat),
    WrongSignature(usize, usize),
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::NotTauFixed => write!(f, "alpha is not tau-fixed"),
            InvalidReason::NormMismatch { ideal_side, alpha_norm } => {
                write!(f, "norm: ideal side {ideal_side} != N(alpha) = {alpha_norm}")
            }
            InvalidReason::NonIntegralGram => write!(f, "Gram matrix is not integral"),
            InvalidReason::NotContained => write!(f, "ideal product is not contained in (alpha)"),
            InvalidReason::WrongDeterminant(d) => write!(f, "determinant {d}"),
            InvalidReason::WrongSignature(p, q) => write!(f, "signature ({p}, {q})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    Valid {
        gram: Matrix,
        /// Multiplication by `β` on the Z-basis of `I`.
        beta_operator: Matrix,
    },
    Invalid {
        reason: InvalidReason,
        gram: Option<Matrix>,
    },
}

impl PairVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PairVerdict::Valid { .. })
    }
}

/// Gram matrix of the pairing attached to `(I, α)` on the Z-basis of `I`.
pub fn pair_gram(p: &IdealPair) -> Result<Matrix> {
    let inv = p.alpha.inv()?;
    let xs = p.ideal.elements();
    let alg = p.ideal.algebra();
    let sign = if alg.n() % 2 == 0 { ExactRat::one() } else { -ExactRat::one() };
    let m = xs.len();
    let mut entries = vec![ExactRat::zero(); m * m];
    for i in 0..m {
        for j in 0..m {
            let v = match p.rep {
                RepTag::Sym2 => inv.mul(&xs[i])?.mul(&xs[j])?.top_coeff(),
                _ => &sign * inv.mul(&xs[i])?.mul(&xs[j].apply_tau()?)?.top_coeff(),
            };
            entries[i * m + j] = v;
        }
    }
    Ok(Matrix::from_fn(m, m, |i, j| entries[i * m + j].clone()))
}

pub fn verify_pair(p: &IdealPair) -> Result<PairVerdict> {
    let alg = p.ideal.algebra().clone();
    let n = alg.n();
    let invalid = |reason, gram| Ok(PairVerdict::Invalid { reason, gram });
    let alpha_norm = p.alpha.norm();
    let ideal_norm_i = ideal_norm(&p.ideal);
    let (ideal_side, product) = match p.rep {
        RepTag::Sym2 => (&ideal_norm_i * &ideal_norm_i, ideal_mul(&p.ideal, &p.ideal)?),
        _ => {
            if !p.alpha.is_tau_fixed() {
                return invalid(InvalidReason::NotTauFixed, None);
            }
            let t = p.ideal.tau()?;
            (&ideal_norm_i * ideal_norm(&t), ideal_mul(&p.ideal, &t)?)
        }
    };
    if ideal_side != alpha_norm {
        return invalid(InvalidReason::NormMismatch { ideal_side, alpha_norm }, None);
    }
    let gram = pair_gram(p)?;
    if !gram.is_integral() {
        return invalid(InvalidReason::NonIntegralGram, Some(gram));
    }
    if !product.is_subset_of(&FracIdeal::principal(&p.alpha)?)? {
        return invalid(InvalidReason::NotContained, Some(gram));
    }
    let det = gram.det()?;
    let expected = if n % 2 == 0 { ExactRat::one() } else { -ExactRat::one() };
    if det != expected {
        return invalid(InvalidReason::WrongDeterminant(det), Some(gram));
    }
    let sig = ZLattice::new(gram.clone())?.signature()?;
    if sig != (n + 1, n) {
        return invalid(InvalidReason::WrongSignature(sig.0, sig.1), Some(gram));
    }
    let beta = alg.beta();
    let cols = p
        .ideal
        .elements()
        .iter()
        .map(|x| p.ideal.coordinates(&beta.mul(x)?))
        .collect::<Result<Vec<_>>>()?;
    let beta_operator = Matrix::from_columns(&cols);
    Ok(PairVerdict::Valid { gram, beta_operator })
}

/// Whether `I' = cI` and `α' = c²α` (or `c τ(c) α` for the skew representation).
pub fn pair_equivalence_check(p: &IdealPair, q: &IdealPair, c: &EtaleElement) -> Result<bool> {
    same_ring(&p.ideal, &q.ideal)?;
    if c.algebra().modulus() != p.ideal.alg.modulus() {
        return Err(Error::RingMismatch);
    }
    if p.rep != q.rep {
        return Err(Error::RepMismatch);
    }
    if c.is_zero() {
        return Ok(false);
    }
    let factor = match p.rep {
        RepTag::Sym2 => c.square(),
        _ => c.mul(&c.apply_tau()?)?,
    };
    if factor.mul(&p.alpha)? != q.alpha {
        return Ok(false);
    }
    Ok(p.ideal.scale_by(c)? == q.ideal)
}

/// `a x² + b xy + c y²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BQForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BQForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BQForm { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        ab <= self.a && self.a <= self.c && (!(ab == self.a || self.a == self.c) || !self.b.is_negative())
    }

    /// `(a, -b, c)`.
    pub fn opposite(&self) -> BQForm {
        BQForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }
}

impl fmt::Display for BQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_disc(d: &BigInt) -> Result<()> {
    let r = d.mod_floor(&BigInt::from(4));
    if !d.is_negative() || !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidDiscriminant(d.to_string()));
    }
    Ok(())
}

/// Reduced representative of the proper equivalence class of a positive
/// definite form.
pub fn bqf_reduce(f: &BQForm) -> Result<BQForm> {
    if !f.disc().is_negative() {
        return Err(Error::NotNegativeDiscriminant);
    }
    if !f.a.is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    let (mut a, mut b, mut c) = (f.a.clone(), f.b.clone(), f.c.clone());
    loop {
        // normalize: -a < b <= a
        if b > a || b <= -&a {
            let two_a = BigInt::from(2) * &a;
            let k = (&a - &b).div_floor(&two_a);
            let nb = &b + &two_a * &k;
            c = (&nb * &nb - f.disc()) / (BigInt::from(4) * &a);
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
        }
        return Ok(BQForm { a, b, c });
    }
}

/// Dirichlet composition of two primitive forms of the same discriminant,
/// reduced.
pub fn bqf_compose(f1: &BQForm, f2: &BQForm) -> Result<BQForm> {
    let d = f1.disc();
    if f2.disc() != d {
        return Err(Error::InvalidDiscriminant(format!("{} vs {}", d, f2.disc())));
    }
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let s: BigInt = (&f1.b + &f2.b) / 2;
    let n = &f2.b - &s;
    let (y1, dd) = if (&f2.a % &f1.a).is_zero() {
        (BigInt::zero(), f1.a.clone())
    } else {
        let e = f2.a.extended_gcd(&f1.a);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if Zero::is_zero(&(&s % &dd)) {
        (BigInt::zero(), -BigInt::one(), dd.clone())
    } else {
        let e = s.extended_gcd(&dd);
        (e.x, -e.y, e.gcd)
    };
    let v1 = &f1.a / &d1;
    let v2 = &f2.a / &d1;
    let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
    let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
    let a3 = &v1 * &v2;
    let num = &b3 * &b3 - &d;
    let four_a = BigInt::from(4) * &a3;
    if !(&num % &four_a).is_zero() {
        return Err(Error::Internal("composition produced a non-integral form".into()));
    }
    bqf_reduce(&BQForm { a: a3, b: b3, c: num / four_a })
}

/// Reduced primitive forms of a negative discriminant.
pub fn reduced_forms(d: &BigInt) -> Result<Vec<BQForm>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let mut a = BigInt::one();
    while BigInt::from(3) * &a * &a <= -d {
        let mut b: BigInt = -&a + 1;
        while b <= a {
            let num = &b * &b - d;
            let four_a = BigInt::from(4) * &a;
            if Zero::is_zero(&(&num % &four_a)) {
                let f = BQForm { a: a.clone(), b: b.clone(), c: num / four_a };
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub disc: BigInt,
    pub forms: Vec<BQForm>,
    /// `table[i][j]` is the index of `forms[i] ∘ forms[j]`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl ClassGroup {
    pub fn order(&self) -> usize {
        self.forms.len()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.table[x][i];
            k += 1;
        }
        k
    }
}

pub fn bqf_class_group(d: &BigInt) -> Result<ClassGroup> {
    let forms = reduced_forms(d)?;
    let index: HashMap<BQForm, usize> = forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let h = forms.len();
    let mut table = vec![vec![0; h]; h];
    for i in 0..h {
        for j in 0..h {
            let c = bqf_compose(&forms[i], &forms[j])?;
            table[i][j] = *index.get(&c).ok_or_else(|| Error::Internal(format!("{c} is not a reduced form of disc {d}")))?;
        }
    }
    let principal = bqf_reduce(&principal_form(d))?;
    let identity = index[&principal];
    for i in 0..h {
        if table[i][identity] != i || table[identity][i] != i {
            return Err(Error::Internal("principal form is not an identity".into()));
        }
        let inv = index
            .get(&bqf_reduce(&forms[i].opposite())?)
            .ok_or_else(|| Error::Internal("inverse missing".into()))?;
        if table[i][*inv] != identity {
            return Err(Error::Internal(format!("{} has no inverse", forms[i])));
        }
        for j in 0..h {
            if table[i][j] != table[j][i] {
                return Err(Error::Internal("composition is not commutative".into()));
            }
            for k in 0..h {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(Error::Internal("composition is not associative".into()));
                }
            }
        }
    }
    Ok(ClassGroup { disc: d.clone(), forms, table, identity })
}

/// `x² + (d mod 2) xy + ...`.
pub fn principal_form(d: &BigInt) -> BQForm {
    let b = if d.is_odd() { BigInt::one() } else { BigInt::zero() };
    let c = (&b * &b - d) / 4;
    BQForm { a: BigInt::one(), b, c }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BqfCensus {
    pub disc: BigInt,
    pub bound: i64,
    /// Primitive forms of both signs within the bound.
    pub forms_considered: usize,
    /// Classes under `SL₂(Z)` generators plus `det(g)`-twisted reflection.
    pub twisted_orbits: usize,
    /// Classes of positive forms under `GL₂(Z)` acting without the twist.
    pub untwisted_orbits: usize,
    pub class_number: usize,
    /// Classes that merge under the untwisted action: pairs of distinct
    /// reduced forms.
    pub discrepancies: Vec<(BQForm, BQForm)>,
    /// Components of the truncated graph containing no reduced form.
    pub truncated_components: usize,
}

impl BqfCensus {
    pub fn agrees(&self) -> bool {
        self.twisted_orbits == self.class_number && self.truncated_components == 0
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Brute-force orbit count of primitive forms of discriminant `d` with all
/// coefficients bounded by `bound`, compared with the class number.
pub fn bqf_orbit_census(d: i64, bound: i64) -> Result<BqfCensus> {
    let db = BigInt::from(d);
    let group = bqf_class_group(&db)?;
    let mut forms = Vec::new();
    for a in -bound..=bound {
        if a == 0 {
            continue;
        }
        for b in -bound..=bound {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c.abs() <= bound && a.gcd(&b).gcd(&c) == 1 {
                forms.push((a, b, c));
            }
        }
    }
    let index: HashMap<(i64, i64, i64), usize> = forms.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let s = |(a, b, c): (i64, i64, i64)| (c, -b, a);
    let t = |(a, b, c): (i64, i64, i64)| (a, 2 * a + b, a + b + c);
    let t_inv = |(a, b, c): (i64, i64, i64)| (a, b - 2 * a, a - b + c);
    let twisted_r = |(a, b, c): (i64, i64, i64)| (-a, b, -c);
    let plain_r = |(a, b, c): (i64, i64, i64)| (a, -b, c);
    let count = |moves: &[&dyn Fn((i64, i64, i64)) -> (i64, i64, i64)], positive_only: bool| {
        let mut uf = UnionFind((0..forms.len()).collect());
        for (i, &f) in forms.iter().enumerate() {
            for m in moves {
                if let Some(&j) = index.get(&m(f)) {
                    uf.union(i, j);
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, f) in forms.iter().enumerate() {
            if !positive_only || f.0 > 0 {
                comps.entry(uf.find(i)).or_default().push(i);
            }
        }
        comps
    };
    let is_reduced = |f: (i64, i64, i64)| BQForm::new(f.0, f.1, f.2).is_reduced();
    let tw = count(&[&s, &t, &t_inv, &twisted_r], false);
    let truncated = tw.values().filter(|c| !c.iter().any(|&i| forms[i].0 > 0 && is_reduced(forms[i]))).count();
    let un = count(&[&s, &t, &t_inv, &plain_r], true);
    let mut discrepancies = Vec::new();
    for comp in un.values() {
        let reduced: Vec<BQForm> = comp
            .iter()
            .map(|&i| forms[i])
            .filter(|&f| is_reduced(f))
            .map(|f| BQForm::new(f.0, f.1, f.2))
            .collect();
        for w in reduced.windows(2) {
            discrepancies.push((w[0].clone(), w[1].clone()));
        }
    }
    Ok(BqfCensus {
        disc: db,
        bound,
        forms_considered: forms.len(),
        twisted_orbits: tw.len(),
        untwisted_orbits: un.len(),
        class_number: group.order(),
        discrepancies,
        truncated_components: truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int::{int, rat, rat_int};
    use crate::exact::Poly;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn complements() {
        let c = complement_lattice(&v(&[2, 1, 2]), 1).unwrap();
        assert_eq!(c.q2, int(9));
        assert!(c.even);
        let c = complement_lattice(&v(&[1, 0, 1]), 1).unwrap();
        assert_eq!(c.q2, int(2));
        assert!(!c.even);
        assert_eq!(complement_lattice(&v(&[1, 0, 0]), 1), Err(Error::NullVector));
        assert_eq!(complement_lattice(&v(&[2, 0, 2]), 1), Err(Error::NotPrimitive));
    }

    fn cubic2() -> Arc<EtaleAlgebra> {
        EtaleAlgebra::new(Poly::from_ints(&[-2, 0, 0, 1])).unwrap()
    }

    #[test]
    fn ideal_norms() {
        let alg = cubic2();
        let r = FracIdeal::unit(&alg).unwrap();
        assert_eq!(ideal_mul(&r, &r).unwrap(), r);
        assert_eq!(ideal_norm(&r), rat_int(1));
        let i = FracIdeal::generated(&alg, &[alg.constant(rat_int(2)), alg.beta()]).unwrap();
        assert_eq!(ideal_norm(&i), rat_int(2));
        assert_eq!(ideal_norm(&FracIdeal::principal(&alg.beta()).unwrap()), rat_int(2));
        let half = FracIdeal::principal(&alg.constant(rat(1, 2))).unwrap();
        assert_eq!(ideal_norm(&half), rat(1, 8));
        let not_ideal = FracIdeal::new(&alg, &[alg.one(), alg.beta(), alg.beta_pow(2).scale(&rat_int(2))]);
        assert_eq!(not_ideal, Err(Error::NotIdeal));
    }

    #[test]
    fn trivial_pairs() {
        let alg = cubic2();
        let p = IdealPair::trivial(&alg, RepTag::Sym2).unwrap();
        match verify_pair(&p).unwrap() {
            PairVerdict::Valid { gram, .. } => assert_eq!(gram, Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            other => panic!("{other:?}"),
        }
        let odd = EtaleAlgebra::new(Poly::from_ints(&[0, -1, 0, 1])).unwrap();
        match verify_pair(&IdealPair::trivial(&odd, RepTag::Adjoint).unwrap()).unwrap() {
            PairVerdict::Valid { gram, beta_operator } => {
                assert_eq!(gram, Matrix::from_ints(&[&[0, 0, -1], &[0, 1, 0], &[-1, 0, -1]]));
                assert_eq!(beta_operator.charpoly().unwrap(), *odd.modulus());
            }
            other => panic!("{other:?}"),
        }
        let bad = IdealPair::new(FracIdeal::unit(&alg).unwrap(), alg.beta(), RepTag::Sym2).unwrap();
        assert!(matches!(
            verify_pair(&bad).unwrap(),
            PairVerdict::Invalid { reason: InvalidReason::NormMismatch { .. }, .. }
        ));
    }

    #[test]
    fn equivalences() {
        let alg = cubic2();
        let r = IdealPair::trivial(&alg, RepTag::Sym2).unwrap();
        let c = alg.from_coeffs(vec![rat_int(1), rat_int(1)]);
        let q = IdealPair::new(FracIdeal::principal(&c).unwrap(), c.square(), RepTag::Sym2).unwrap();
        assert!(pair_equivalence_check(&r, &q, &c).unwrap());
        let two = alg.constant(rat_int(2));
        let q4 = IdealPair::new(FracIdeal::unit(&alg).unwrap(), alg.constant(rat_int(4)), RepTag::Sym2).unwrap();
        assert!(!pair_equivalence_check(&r, &q4, &two).unwrap());
        let q4 = IdealPair::new(FracIdeal::principal(&two).unwrap(), alg.constant(rat_int(4)), RepTag::Sym2).unwrap();
        assert!(pair_equivalence_check(&r, &q4, &two).unwrap());
        let qb = IdealPair::new(FracIdeal::unit(&alg).unwrap(), alg.beta_pow(2), RepTag::Sym2).unwrap();
        assert!(!pair_equivalence_check(&r, &qb, &alg.beta()).unwrap());
    }

    #[test]
    fn reduction_and_class_groups() {
        assert_eq!(bqf_reduce(&BQForm::new(1, 1, 6)).unwrap(), BQForm::new(1, 1, 6));
        assert_eq!(bqf_reduce(&BQForm::new(3, 1, 2)).unwrap(), BQForm::new(2, -1, 3));
        assert_eq!(bqf_reduce(&BQForm::new(2, 2, 3)).unwrap(), BQForm::new(2, 2, 3));
        assert_eq!(bqf_reduce(&BQForm::new(-1, 1, -6)), Err(Error::NotPositiveDefinite));
        let g = bqf_class_group(&int(-23)).unwrap();
        assert_eq!(g.order(), 3);
        assert!((0..3).filter(|&i| i != g.identity).all(|i| g.element_order(i) == 3));
        assert_eq!(bqf_class_group(&int(-4)).unwrap().forms, vec![BQForm::new(1, 0, 1)]);
        assert_eq!(bqf_class_group(&int(-20)).unwrap().forms, vec![BQForm::new(1, 0, 5), BQForm::new(2, 2, 3)]);
        assert!(matches!(bqf_class_group(&int(-5)), Err(Error::InvalidDiscriminant(_))));
    }

    #[test]
    fn census_matches_class_number() {
        for (d, bound, h) in [(-23, 50, 3), (-4, 20, 1), (-3, 20, 1)] {
            let c = bqf_orbit_census(d, bound).unwrap();
            assert_eq!(c.twisted_orbits, h, "d = {d}");
            assert!(c.agrees());
        }
        let c = bqf_orbit_census(-23, 50).unwrap();
        assert_eq!(c.untwisted_orbits, 2);
        assert_eq!(c.discrepancies.len(), 1);
    }
}
