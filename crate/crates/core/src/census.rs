//! Orbit censuses over prime fields, group orders, and the local and real
//! orbit-count formulas.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::exact::fp::{check_odd_prime, inv_u64, FpPoly};
use crate::exact::int::{binomial, is_prime_u64, rat_mod_u64};
use crate::exact::real::{count_real_roots, count_roots_in, root_bound};
use crate::exact::{ExactRat, Poly};
use crate::orbit::{construct_representative, RepTag};

/// `#SO(2n+1)(F_q) = q^{n²} ∏_{i=1}^{n} (q^{2i} - 1)`.
pub fn so_order(n: u32, q: u64) -> Result<BigInt> {
    if q % 2 == 0 {
        return Err(Error::EvenQ);
    }
    if n == 0 || q < 3 {
        return Err(Error::ZeroRank);
    }
    let qb = BigInt::from(q);
    let mut acc = qb.pow(n * n);
    for i in 1..=n {
        acc *= qb.pow(2 * i) - 1u32;
    }
    Ok(acc)
}

/// Square matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMat {
    d: usize,
    p: u64,
    a: Vec<u64>,
}

impl FpMat {
    pub fn new(d: usize, p: u64, a: Vec<u64>) -> Self {
        FpMat { d, p, a: a.into_iter().map(|x| x % p).collect() }
    }

    pub fn identity(d: usize, p: u64) -> Self {
        let mut a = vec![0; d * d];
        for i in 0..d {
            a[i * d + i] = 1;
        }
        FpMat { d, p, a }
    }

    /// Reduction of a rational matrix; `None` if a denominator is divisible by `p`.
    pub fn from_matrix(m: &crate::exact::Matrix, p: u64) -> Option<Self> {
        let a = m.entries().iter().map(|x| rat_mod_u64(x, p)).collect::<Option<Vec<_>>>()?;
        Some(FpMat { d: m.rows(), p, a })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.d + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.a
    }

    pub fn mul(&self, o: &FpMat) -> FpMat {
        let (d, p) = (self.d, self.p);
        let mut a = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        for x in a.iter_mut() {
            *x %= p;
        }
        FpMat { d, p, a }
    }

    /// Reflection in the anti-diagonal: the adjoint for the standard form.
    pub fn adjoint(&self) -> FpMat {
        let d = self.d;
        let mut a = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                a[i * d + j] = self.a[(d - 1 - j) * d + (d - 1 - i)];
            }
        }
        FpMat { d, p: self.p, a }
    }

    pub fn neg(&self) -> FpMat {
        let p = self.p;
        FpMat { d: self.d, p, a: self.a.iter().map(|&x| (p - x) % p).collect() }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let d = self.d;
        (0..d).map(|i| (0..d).map(|k| self.a[i * d + k] * v[k]).sum::<u64>() % self.p).collect()
    }

    pub fn det(&self) -> u64 {
        let (d, p) = (self.d, self.p);
        let mut m = self.a.clone();
        let mut det = 1u64;
        for c in 0..d {
            let Some(r) = (c..d).find(|&r| m[r * d + c] != 0) else { return 0 };
            if r != c {
                for j in 0..d {
                    m.swap(r * d + j, c * d + j);
                }
                det = (p - det) % p;
            }
            let piv = m[c * d + c];
            det = det * piv % p;
            let inv = inv_u64(piv, p);
            for r in c + 1..d {
                let f = m[r * d + c] * inv % p;
                if f != 0 {
                    for j in c..d {
                        m[r * d + j] = (m[r * d + j] + p * p - f * m[c * d + j]) % p;
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial via Hessenberg reduction over `F_p`.
    pub fn charpoly(&self) -> FpPoly {
        let (d, p) = (self.d, self.p);
        let mut h = self.a.clone();
        let idx = |i: usize, j: usize| i * d + j;
        for c in 0..d.saturating_sub(2) {
            let Some(r) = (c + 1..d).find(|&r| h[idx(r, c)] != 0) else { continue };
            if r != c + 1 {
                for j in 0..d {
                    h.swap(idx(r, j), idx(c + 1, j));
                }
                for i in 0..d {
                    h.swap(idx(i, r), idx(i, c + 1));
                }
            }
            let inv = inv_u64(h[idx(c + 1, c)], p);
            for r in c + 2..d {
                let f = h[idx(r, c)] * inv % p;
                if f == 0 {
                    continue;
                }
                for j in 0..d {
                    h[idx(r, j)] = (h[idx(r, j)] + p * p - f * h[idx(c + 1, j)]) % p;
                }
                for i in 0..d {
                    h[idx(i, c + 1)] = (h[idx(i, c + 1)] + f * h[idx(i, r)]) % p;
                }
            }
        }
        let mut polys = vec![FpPoly::one(p)];
        for m in 0..d {
            let lin = FpPoly::new(p, vec![(p - h[idx(m, m)]) % p, 1]);
            let mut pm = lin.mul(&polys[m]);
            let mut t = 1u64;
            for i in (0..m).rev() {
                t = t * h[idx(i + 1, i)] % p;
                let c = t * h[idx(i, m)] % p;
                pm = pm.sub(&polys[i].scale(c));
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    fn key(&self) -> u64 {
        self.a.iter().rev().fold(0u64, |acc, &x| acc * self.p + x)
    }
}

fn q_form(v: &[u64], w: &[u64], p: u64) -> u64 {
    let d = v.len();
    (0..d).map(|i| v[i] * w[d - 1 - i]).sum::<u64>() % p
}

fn all_vectors(d: usize, p: u64) -> Vec<Vec<u64>> {
    let total = p.pow(d as u32);
    (0..total)
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let x = k % p;
                    k /= p;
                    x
                })
                .collect()
        })
        .collect()
}

fn from_columns(cols: &[Vec<u64>], p: u64) -> FpMat {
    let d = cols.len();
    let mut a = vec![0; d * d];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..d {
            a[i * d + j] = c[i];
        }
    }
    FpMat { d, p, a }
}

const GROUP_BUDGET: u64 = 500_000;

/// All elements of `SO(W)(F_p)`, by column-by-column backtracking on the
/// pairing conditions.
pub fn so_elements(n: usize, p: u64) -> Result<Vec<FpMat>> {
    check_odd_prime(p)?;
    let order = so_order(n as u32, p)?;
    if order > BigInt::from(GROUP_BUDGET) {
        return Err(Error::BudgetExceeded(format!("#SO({})(F_{p}) = {order}", 2 * n + 1)));
    }
    let d = 2 * n + 1;
    let vecs = all_vectors(d, p);
    let gram = |i: usize, j: usize| u64::from(i + j == d - 1);
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    fn rec(
        cols: &mut Vec<usize>,
        vecs: &[Vec<u64>],
        d: usize,
        p: u64,
        gram: &dyn Fn(usize, usize) -> u64,
        out: &mut Vec<FpMat>,
    ) {
        let j = cols.len();
        if j == d {
            let m = from_columns(&cols.iter().map(|&k| vecs[k].clone()).collect::<Vec<_>>(), p);
            if m.det() == 1 {
                out.push(m);
            }
            return;
        }
        for (k, v) in vecs.iter().enumerate() {
            if q_form(v, v, p) != gram(j, j) {
                continue;
            }
            if cols.iter().enumerate().all(|(i, &c)| q_form(&vecs[c], v, p) == gram(i, j)) {
                cols.push(k);
                rec(cols, vecs, d, p, gram, out);
                cols.pop();
            }
        }
    }
    rec(&mut cols, &vecs, d, p, &gram, &mut out);
    Ok(out)
}

/// Reflection in an anisotropic vector over `F_p`.
fn reflection_fp(a: &[u64], p: u64) -> FpMat {
    let d = a.len();
    let q = q_form(a, a, p);
    let c = 2 * inv_u64(q, p) % p;
    let ga: Vec<u64> = (0..d).map(|j| a[d - 1 - j]).collect();
    let mut m = FpMat::identity(d, p);
    for i in 0..d {
        for j in 0..d {
            let t = c * a[i] % p * ga[j] % p;
            m.a[i * d + j] = (m.a[i * d + j] + p - t) % p;
        }
    }
    m
}

/// Random generators of `SO(W)(F_p)`: products of two reflections.
pub fn so_generators(n: usize, p: u64, count: usize, seed: u64) -> Vec<FpMat> {
    let d = 2 * n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut anis = || loop {
        let v: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        if q_form(&v, &v, p) != 0 {
            return v;
        }
    };
    (0..count).map(|_| reflection_fp(&anis(), p).mul(&reflection_fp(&anis(), p))).collect()
}

/// Order of the group generated by random reflection pairs (BFS closure).
pub fn so_order_bfs(n: usize, p: u64, seed: u64) -> Result<u64> {
    check_odd_prime(p)?;
    if so_order(n as u32, p)? > BigInt::from(GROUP_BUDGET) {
        return Err(Error::BudgetExceeded("group closure".into()));
    }
    let gens = so_generators(n, p, 6, seed);
    let id = FpMat::identity(2 * n + 1, p);
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    seen.insert(id.key());
    let mut queue = vec![id];
    while let Some(g) = queue.pop() {
        for h in &gens {
            let x = g.mul(h);
            if seen.insert(x.key()) {
                queue.push(x);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Enumeration mode of a census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Every element of the representation was visited.
    Full,
    /// Only the orbit of the distinguished representative for each invariant.
    SingleOrbit,
}

/// One invariant value (characteristic polynomial, or `q₂` for vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    /// Ascending coefficients mod p; for vectors the single value `q₂ mod p`.
    pub invariant: Vec<u64>,
    pub separable: bool,
    /// Number of irreducible factors when separable.
    pub factor_count: Option<usize>,
    /// Elements with this invariant (`None` in single-orbit mode).
    pub operator_count: Option<u64>,
    pub orbit_sizes: Vec<u64>,
    pub stabilizer_orders: Vec<u64>,
}

impl CensusRow {
    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCensusReport {
    pub p: u64,
    pub n: usize,
    pub rep: RepTag,
    pub mode: CensusMode,
    /// `so_order(n, p)`.
    pub group_order: u64,
    /// Size of the group actually enumerated or generated.
    pub group_order_computed: u64,
    pub total_elements: u64,
    pub rows: Vec<CensusRow>,
}

/// Parameter matrices spanning `{T : T* = ±T}` (or vectors for `Standard`).
fn representation_space(n: usize, p: u64, rep: RepTag) -> Vec<FpMat> {
    let d = 2 * n + 1;
    if rep == RepTag::Standard {
        return all_vectors(d, p).into_iter().map(|v| FpMat { d: 1, p, a: v }).collect();
    }
    let mut slots: Vec<Vec<(usize, u64)>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (mi, mj) = (d - 1 - j, d - 1 - i);
            if (mi, mj) < (i, j) {
                continue;
            }
            if (mi, mj) == (i, j) {
                if rep == RepTag::Sym2 {
                    slots.push(vec![(i * d + j, 1)]);
                }
            } else {
                let sign = if rep == RepTag::Sym2 { 1 } else { p - 1 };
                slots.push(vec![(i * d + j, 1), (mi * d + mj, sign)]);
            }
        }
    }
    let total = p.pow(slots.len() as u32);
    (0..total)
        .map(|mut k| {
            let mut a = vec![0u64; d * d];
            for s in &slots {
                let x = k % p;
                k /= p;
                for &(pos, c) in s {
                    a[pos] = x * c % p;
                }
            }
            FpMat { d, p, a }
        })
        .collect()
}

fn invariant_of(x: &FpMat, rep: RepTag) -> Vec<u64> {
    if rep == RepTag::Standard {
        vec![q_form(&x.a, &x.a, x.p)]
    } else {
        (0..x.d + 1).map(|k| x.charpoly().coeff(k)).collect()
    }
}

fn act(g: &FpMat, ginv: &FpMat, x: &FpMat, rep: RepTag) -> FpMat {
    if rep == RepTag::Standard {
        FpMat { d: 1, p: x.p, a: g.mul_vec(&x.a) }
    } else {
        g.mul(x).mul(ginv)
    }
}

fn factor_info(inv: &[u64], p: u64, rep: RepTag) -> (bool, Option<usize>) {
    if rep == RepTag::Standard {
        return (inv[0] != 0, None);
    }
    let f = FpPoly::new(p, inv.to_vec());
    if f.is_squarefree() {
        (true, f.count_factors().ok())
    } else {
        (false, None)
    }
}

/// Orbit census of `SO(W)(F_p)` on one representation.
///
/// Dimension 3 enumerates the whole representation and applies every group
/// element. Dimension 5 (only `p = 3`) enumerates vectors fully and, for
/// operators, generates the orbit of the distinguished representative for
/// every separable invariant. `jobs` splits invariants between threads.
pub fn finite_census(p: u64, n: usize, rep: RepTag, jobs: usize) -> Result<FiniteCensusReport> {
    check_odd_prime(p)?;
    let group_order: u64 = so_order(n as u32, p)?.try_into().map_err(|_| Error::BudgetExceeded("group order".into()))?;
    match n {
        1 => {
            if p.pow(6) > 5_000_000 {
                return Err(Error::BudgetExceeded(format!("p^6 = {} operators", p.pow(6))));
            }
            full_census(p, n, rep, jobs.max(1), group_order)
        }
        2 if p == 3 => {
            if rep == RepTag::Standard {
                full_census(p, n, rep, jobs.max(1), group_order)
            } else {
                single_orbit_census(p, n, rep, jobs.max(1), group_order)
            }
        }
        _ => Err(Error::BudgetExceeded(format!("census for n = {n}, p = {p}"))),
    }
}

fn full_census(p: u64, n: usize, rep: RepTag, jobs: usize, group_order: u64) -> Result<FiniteCensusReport> {
    let d = 2 * n + 1;
    let space = representation_space(n, p, rep);
    let total = space.len() as u64;
    let mut buckets: BTreeMap<Vec<u64>, Vec<FpMat>> = BTreeMap::new();
    for x in space {
        buckets.entry(invariant_of(&x, rep)).or_default().push(x);
    }
    let (group, computed) = if n == 1 {
        let g = so_elements(n, p)?;
        let len = g.len() as u64;
        (Some(g.into_iter().map(|g| { let gi = g.adjoint(); (g, gi) }).collect::<Vec<_>>()), len)
    } else {
        (None, so_order_bfs(n, p, crate::seed())?)
    };
    let gens: Vec<(FpMat, FpMat)> = so_generators(n, p, 4, crate::seed())
        .into_iter()
        .map(|g| {
            let gi = g.adjoint();
            (g, gi)
        })
        .collect();
    let keys: Vec<&Vec<u64>> = buckets.keys().collect();
    let work = |part: usize| -> Result<Vec<CensusRow>> {
        let mut rows = Vec::new();
        for (idx, key) in keys.iter().enumerate() {
            if idx % jobs != part {
                continue;
            }
            let elems = &buckets[*key];
            let mut seen: FxHashSet<u64> = FxHashSet::default();
            let mut sizes = Vec::new();
            let mut stabs = Vec::new();
            for x in elems {
                if seen.contains(&x.key()) {
                    continue;
                }
                let (orbit, stab) = match &group {
                    Some(g) => {
                        let mut orbit = FxHashSet::default();
                        let mut stab = 0u64;
                        for (gg, gi) in g {
                            let y = act(gg, gi, x, rep);
                            if &y == x {
                                stab += 1;
                            }
                            orbit.insert(y.key());
                        }
                        (orbit, stab)
                    }
                    None => {
                        let orbit = bfs_orbit(x, &gens, rep);
                        let size = orbit.len() as u64;
                        if computed % size != 0 {
                            return Err(Error::Internal("orbit size does not divide the group order".into()));
                        }
                        (orbit, computed / size)
                    }
                };
                if orbit.len() as u64 * stab != group_order {
                    return Err(Error::Internal(format!("orbit-stabilizer fails for invariant {key:?}")));
                }
                sizes.push(orbit.len() as u64);
                stabs.push(stab);
                seen.extend(orbit);
            }
            if sizes.iter().sum::<u64>() != elems.len() as u64 {
                return Err(Error::Internal("orbits do not partition the invariant fiber".into()));
            }
            let (separable, factor_count) = factor_info(key, p, rep);
            let mut order: Vec<usize> = (0..sizes.len()).collect();
            order.sort_by_key(|&i| (sizes[i], stabs[i]));
            rows.push(CensusRow {
                invariant: (*key).clone(),
                separable,
                factor_count,
                operator_count: Some(elems.len() as u64),
                orbit_sizes: order.iter().map(|&i| sizes[i]).collect(),
                stabilizer_orders: order.iter().map(|&i| stabs[i]).collect(),
            });
        }
        Ok(rows)
    };
    let rows = run_parts(jobs, work)?;
    let _ = d;
    Ok(FiniteCensusReport { p, n, rep, mode: CensusMode::Full, group_order, group_order_computed: computed, total_elements: total, rows })
}

fn run_parts<F>(jobs: usize, work: F) -> Result<Vec<CensusRow>>
where
    F: Fn(usize) -> Result<Vec<CensusRow>> + Sync,
{
    let parts: Vec<Result<Vec<CensusRow>>> = if jobs == 1 {
        vec![work(0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs).map(|j| { let w = &work; s.spawn(move || w(j)) }).collect();
            handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
        })
    };
    let mut rows = Vec::new();
    for part in parts {
        rows.extend(part?);
    }
    rows.sort_by(|a, b| a.invariant.iter().rev().cmp(b.invariant.iter().rev()));
    Ok(rows)
}

fn bfs_orbit(x: &FpMat, gens: &[(FpMat, FpMat)], rep: RepTag) -> FxHashSet<u64> {
    let mut seen = FxHashSet::default();
    seen.insert(x.key());
    if rep == RepTag::Standard {
        let mut queue = vec![x.clone()];
        while let Some(y) = queue.pop() {
            for (g, gi) in gens {
                let z = act(g, gi, &y, rep);
                if seen.insert(z.key()) {
                    queue.push(z);
                }
            }
        }
        return seen;
    }
    let (d, p) = (x.d, x.p);
    let len = d * d;
    let mut start = [0u64; 25];
    start[..len].copy_from_slice(&x.a);
    let mut queue = vec![start];
    let mut t = [0u64; 25];
    let mut z = [0u64; 25];
    while let Some(y) = queue.pop() {
        for (g, gi) in gens {
            small_mul(&g.a, &y, &mut t, d, 0);
            small_mul(&t, &gi.a, &mut z, d, p);
            let key = z[..len].iter().rev().fold(0u64, |acc, &v| acc * p + v);
            if seen.insert(key) {
                queue.push(z);
            }
        }
    }
    seen
}

/// `p = 0` skips the reduction.
fn small_mul(a: &[u64], b: &[u64], out: &mut [u64; 25], d: usize, p: u64) {
    for i in 0..d {
        for j in 0..d {
            let mut s = 0u64;
            for k in 0..d {
                s += a[i * d + k] * b[k * d + j];
            }
            out[i * d + j] = if p == 0 { s } else { s % p };
        }
    }
}

/// Lift of a polynomial mod p with coefficients in `(-p/2, p/2)`.
fn centered_lift(f: &FpPoly) -> Poly {
    let p = f.prime();
    Poly::new(
        f.coeffs()
            .iter()
            .map(|&c| {
                let c = c as i64;
                let c = if c > (p / 2) as i64 { c - p as i64 } else { c };
                ExactRat::from_integer(BigInt::from(c))
            })
            .collect(),
    )
}

/// Distinguished representative modulo `p` for a separable `f̄`.
pub fn representative_mod_p(f: &FpPoly, rep: RepTag) -> Result<FpMat> {
    let lift = centered_lift(f);
    let r = construct_representative(&lift, rep)?;
    FpMat::from_matrix(&r.t, f.prime()).ok_or_else(|| Error::BadPrime(f.prime().to_string()))
}

/// Stabilizer order of a regular `T`: elements of `F_p[T]` lying in `SO(W)`.
pub fn stabilizer_order_fp(t: &FpMat) -> u64 {
    let (d, p) = (t.d, t.p);
    let mut powers = vec![FpMat::identity(d, p)];
    for k in 1..d {
        let next = powers[k - 1].mul(t);
        powers.push(next);
    }
    let id = FpMat::identity(d, p);
    let mut count = 0;
    for coeffs in all_vectors(d, p) {
        let mut a = vec![0u64; d * d];
        for (c, pw) in coeffs.iter().zip(&powers) {
            if *c != 0 {
                for (x, y) in a.iter_mut().zip(&pw.a) {
                    *x = (*x + c * y) % p;
                }
            }
        }
        let g = FpMat { d, p, a };
        if g.adjoint().mul(&g) == id && g.det() == 1 {
            count += 1;
        }
    }
    count
}

fn single_orbit_census(p: u64, n: usize, rep: RepTag, jobs: usize, group_order: u64) -> Result<FiniteCensusReport> {
    let d = 2 * n + 1;
    let mut polys = Vec::new();
    for c in all_vectors(d, p) {
        let mut coeffs = c;
        coeffs.push(1);
        let f = FpPoly::new(p, coeffs);
        if rep == RepTag::Adjoint && (0..=d).step_by(2).any(|k| f.coeff(k) != 0) {
            continue;
        }
        if f.is_squarefree() {
            polys.push(f);
        }
    }
    let gens: Vec<(FpMat, FpMat)> = so_generators(n, p, 4, crate::seed())
        .into_iter()
        .map(|g| {
            let gi = g.adjoint();
            (g, gi)
        })
        .collect();
    let work = |part: usize| -> Result<Vec<CensusRow>> {
        let mut rows = Vec::new();
        for (idx, f) in polys.iter().enumerate() {
            if idx % jobs != part {
                continue;
            }
            let t = representative_mod_p(f, rep)?;
            if t.charpoly() != *f {
                return Err(Error::Internal("reduced representative has the wrong charpoly".into()));
            }
            let orbit = bfs_orbit(&t, &gens, rep).len() as u64;
            let stab = stabilizer_order_fp(&t);
            if orbit * stab != group_order {
                return Err(Error::Internal(format!("orbit-stabilizer fails for {:?}", f.coeffs())));
            }
            rows.push(CensusRow {
                invariant: (0..=d).map(|k| f.coeff(k)).collect(),
                separable: true,
                factor_count: f.count_factors().ok(),
                operator_count: None,
                orbit_sizes: vec![orbit],
                stabilizer_orders: vec![stab],
            });
        }
        Ok(rows)
    };
    let rows = run_parts(jobs, work)?;
    Ok(FiniteCensusReport {
        p,
        n,
        rep,
        mode: CensusMode::SingleOrbit,
        group_order,
        group_order_computed: group_order,
        total_elements: rows.iter().map(|r| r.orbit_sizes[0]).sum(),
        rows,
    })
}

fn reduce_good(f: &Poly, p: u64) -> Result<FpPoly> {
    if p == 2 {
        return Err(Error::BadPrime("2".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let fp = FpPoly::from_poly(f, p).ok_or_else(|| Error::BadPrime(p.to_string()))?;
    if fp.degree() != f.degree() || !fp.is_squarefree() {
        return Err(Error::BadPrime(p.to_string()));
    }
    Ok(fp)
}

/// Number of `SO(W)(Q_p)`-orbits with characteristic polynomial `f` at a
/// good prime `p`.
pub fn orbit_count_local(f: &Poly, p: u64, rep: RepTag) -> Result<BigInt> {
    let alg = crate::etale::EtaleAlgebra::new(f.clone())?;
    let fp = reduce_good(f, p)?;
    match rep {
        RepTag::Sym2 => {
            let m = fp.count_factors()? - 1;
            Ok(if m == 0 {
                BigInt::one()
            } else {
                (BigInt::one() << (2 * m - 1)) + (BigInt::one() << (m - 1))
            })
        }
        RepTag::Adjoint => {
            let g = alg.skew_data()?.g;
            let gp = FpPoly::from_poly(&g, p).ok_or_else(|| Error::BadPrime(p.to_string()))?;
            let mut m = 0;
            for gi in gp.factor_squarefree()? {
                let mut sq = vec![0u64; 2 * gi.coeffs().len() - 1];
                for (k, &c) in gi.coeffs().iter().enumerate() {
                    sq[2 * k] = c;
                }
                if FpPoly::new(p, sq).count_factors()? == 1 {
                    m += 1;
                }
            }
            Ok(if m == 0 { BigInt::one() } else { BigInt::one() << (m - 1) })
        }
        RepTag::Standard => Err(Error::RepMismatch),
    }
}

/// Real orbit counts in the maximal-rank case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCount {
    /// Elements in the kernel of `γ`, i.e. real orbits with this polynomial.
    pub kernel_count: BigInt,
    /// `(k, size)` fiber sizes of `γ`.
    pub fibers: Vec<(usize, BigInt)>,
}

pub fn orbit_count_real(f: &Poly, rep: RepTag) -> Result<RealCount> {
    let alg = crate::etale::EtaleAlgebra::new(f.clone())?;
    let n = alg.n();
    match rep {
        RepTag::Sym2 => {
            if count_real_roots(f) != 2 * n + 1 {
                return Err(Error::MaximalRankHypothesisFails(format!(
                    "{} of {} roots are real",
                    count_real_roots(f),
                    2 * n + 1
                )));
            }
            let d = (2 * n + 1) as u64;
            Ok(RealCount {
                kernel_count: binomial(d, n as u64),
                fibers: (0..=2 * n + 1).filter(|k| k % 2 == n % 2).map(|k| (k, binomial(d, k as u64))).collect(),
            })
        }
        RepTag::Adjoint => {
            let g = alg.skew_data()?.g;
            let b = root_bound(&g);
            let negative = count_roots_in(&g, &-b, &-ExactRat::from_integer(BigInt::zero()));
            if count_real_roots(&g) != n || negative != n || g.eval(&ExactRat::zero()).is_zero() {
                return Err(Error::MaximalRankHypothesisFails("g is not totally real with negative roots".into()));
            }
            Ok(RealCount {
                kernel_count: binomial(n as u64, (n / 2) as u64),
                fibers: (0..=n).map(|k| (k, binomial(n as u64, k as u64))).collect(),
            })
        }
        RepTag::Standard => Err(Error::RepMismatch),
    }
}

/// Group reports from several censuses by invariant (used for merging
/// partitioned runs).
pub fn merge_rows(parts: Vec<Vec<CensusRow>>) -> Vec<CensusRow> {
    let mut map: HashMap<Vec<u64>, CensusRow> = HashMap::new();
    for row in parts.into_iter().flatten() {
        map.entry(row.invariant.clone())
            .and_modify(|r| {
                r.orbit_sizes.extend(row.orbit_sizes.iter().copied());
                r.stabilizer_orders.extend(row.stabilizer_orders.iter().copied());
                r.operator_count = match (r.operator_count, row.operator_count) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
            })
            .or_insert(row);
    }
    let mut rows: Vec<CensusRow> = map.into_values().collect();
    rows.sort_by(|a, b| a.invariant.iter().rev().cmp(b.invariant.iter().rev()));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(so_order(1, 3).unwrap(), BigInt::from(24));
        assert_eq!(so_order(1, 5).unwrap(), BigInt::from(120));
        assert_eq!(so_order(2, 3).unwrap(), BigInt::from(51840));
        assert_eq!(so_order(1, 4), Err(Error::EvenQ));
        assert_eq!(so_elements(1, 3).unwrap().len(), 24);
        assert_eq!(so_order_bfs(1, 5, 1).unwrap(), 120);
    }

    #[test]
    fn fp_charpoly_matches_rational() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let vals: Vec<i64> = (0..16).map(|_| rng.gen_range(-4..=4)).collect();
            let m = crate::exact::Matrix::from_fn(4, 4, |i, j| ExactRat::from_integer(BigInt::from(vals[4 * i + j])));
            let cq = m.charpoly().unwrap();
            let fm = FpMat::from_matrix(&m, 7).unwrap();
            assert_eq!(fm.charpoly(), FpPoly::from_poly(&cq, 7).unwrap());
            assert_eq!(fm.det(), rat_mod_u64(&m.det().unwrap(), 7).unwrap());
        }
    }

    #[test]
    fn adjoint_census_at_three() {
        let r = finite_census(3, 1, RepTag::Adjoint, 1).unwrap();
        let row = |c: &[u64]| r.rows.iter().find(|row| row.invariant == c).unwrap().clone();
        assert_eq!(row(&[0, 1, 0, 1]).orbit_sizes, vec![6]);
        assert_eq!(row(&[0, 2, 0, 1]).orbit_sizes, vec![12]);
        assert_eq!(r.total_elements, 27);
    }

    #[test]
    fn local_count_examples() {
        let f = Poly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(orbit_count_local(&f, 5, RepTag::Sym2).unwrap(), BigInt::from(10));
        assert!(matches!(orbit_count_local(&f, 2, RepTag::Sym2), Err(Error::BadPrime(_))));
        let g = Poly::from_ints(&[0, 1, 0, 1]);
        assert_eq!(orbit_count_local(&g, 3, RepTag::Adjoint).unwrap(), BigInt::from(1));
    }

    #[test]
    fn real_count_examples() {
        // (x^2-1)(x^2-4)x
        let f = Poly::from_ints(&[0, 4, 0, -5, 0, 1]);
        assert_eq!(orbit_count_real(&f, RepTag::Sym2).unwrap().kernel_count, BigInt::from(10));
        // x (x^2+1)(x^2+2)
        let a = Poly::from_ints(&[0, 2, 0, 3, 0, 1]);
        assert_eq!(orbit_count_real(&a, RepTag::Adjoint).unwrap().kernel_count, BigInt::from(2));
        assert!(matches!(
            orbit_count_real(&Poly::from_ints(&[-2, 0, 0, 1]), RepTag::Sym2),
            Err(Error::MaximalRankHypothesisFails(_))
        ));
    }
}
