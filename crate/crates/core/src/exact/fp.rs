//! Polynomials over a prime field F_p (p odd, below 2^31).

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::{is_prime_u64, pow_mod_u64, rat_mod_u64};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime_u64(p) || p >= 1 << 31 {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    Ok(())
}

pub fn inv_u64(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod_u64(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().map(|&c| c.rem_euclid(pi) as u64).collect())
    }

    /// Reduction of a rational polynomial; `None` when a denominator is
    /// divisible by `p`.
    pub fn from_poly(f: &Poly, p: u64) -> Option<Self> {
        let coeffs = f.coeffs().iter().map(|c| rat_mod_u64(c, p)).collect::<Option<Vec<_>>>()?;
        Some(FpPoly::new(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_u64(self.lead(), self.p))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| mulm(a, c, p)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|k| (self.coeff(k) + o.coeff(k)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|k| (self.coeff(k) + self.p - o.coeff(k)) % self.p).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulm(a, b, p)) % p;
            }
        }
        FpPoly::new(p, v)
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let li = inv_u64(d.lead(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulm(r[k + dd], li, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulm(c, dc, p)) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `(g, s, t)` with `s self + t o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = inv_u64(r0.lead(), p);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inverse_mod(&self, m: &FpPoly) -> Option<FpPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| mulm(c, k as u64 % p, p)).collect(),
        )
    }

    pub fn mul_mod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p).rem(m);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
        }
        result
    }

    pub fn pow_mod_u64(&self, e: u64, m: &FpPoly) -> FpPoly {
        self.pow_mod(&BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(i, g_i)` where `g_i` is the product of all irreducible factors of
    /// degree `i`.
    pub fn distinct_degree(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut out = Vec::new();
        let mut h = x.clone();
        let mut i = 0;
        while f.degree().unwrap_or(0) > 0 {
            i += 1;
            if 2 * i > f.degree().unwrap() {
                out.push((f.degree().unwrap(), f.clone()));
                break;
            }
            h = h.pow_mod_u64(p, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree().unwrap_or(0) > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((i, g));
            }
        }
        out
    }

    /// Number of irreducible factors of a squarefree polynomial.
    pub fn count_factors(&self) -> Result<usize> {
        if !self.is_squarefree() {
            return Err(Error::NonSeparableModP(self.p));
        }
        Ok(self.distinct_degree().iter().map(|(i, g)| g.degree().unwrap() / i).sum())
    }

    /// Complete factorization of a squarefree polynomial into monic
    /// irreducibles (Cantor-Zassenhaus equal-degree splitting with a fixed
    /// seed, so results are reproducible).
    pub fn factor_squarefree(&self) -> Result<Vec<FpPoly>> {
        if !self.is_squarefree() {
            return Err(Error::NonSeparableModP(self.p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_f1e1d);
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree() {
            equal_degree_split(&g, d, &mut rng, &mut out);
        }
        out.sort_by(|a, b| (a.degree(), &a.coeffs).cmp(&(b.degree(), &b.coeffs)));
        Ok(out)
    }
}

fn equal_degree_split(g: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1u32;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(&e, g).sub(&FpPoly::one(p));
        let h = b.gcd(g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.div_rem(&h).0;
            equal_degree_split(&h, d, rng, out);
            equal_degree_split(&other, d, rng, out);
            return;
        }
    }
}

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(p={}, {:?})", self.p, self.coeffs)
    }
}

/// Number of irreducible factors of `f mod p` for a rational polynomial.
pub fn count_factors_fp(f: &FpPoly) -> Result<usize> {
    check_odd_prime(f.p)?;
    f.count_factors()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Berlekamp oracle: the number of irreducible factors of a squarefree f
    /// equals dim ker(Q - I), Q the Frobenius matrix on F_p[x]/(f).
    fn berlekamp_count(f: &FpPoly) -> usize {
        let p = f.p;
        let n = f.degree().unwrap();
        let xp = FpPoly::x(p).pow_mod_u64(p, f);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut cur = FpPoly::one(p);
        for i in 0..n {
            let mut row: Vec<u64> = (0..n).map(|k| cur.coeff(k)).collect();
            row[i] = (row[i] + p - 1) % p;
            rows.push(row);
            cur = cur.mul_mod(&xp, f);
        }
        n - rank_mod(rows, p)
    }

    fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
        let (r, c) = (m.len(), m[0].len());
        let mut rank = 0;
        for col in 0..c {
            let Some(piv) = (rank..r).find(|&i| m[i][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = inv_u64(m[rank][col], p);
            for i in 0..r {
                if i != rank && m[i][col] != 0 {
                    let f = mulm(m[i][col], inv, p);
                    for j in 0..c {
                        m[i][j] = (m[i][j] + p - mulm(f, m[rank][j], p)) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(count_factors_fp(&FpPoly::from_i64(5, &[0, -1, 0, 1])).unwrap(), 3);
        assert_eq!(count_factors_fp(&FpPoly::from_i64(3, &[1, 0, 1])).unwrap(), 1);
        assert_eq!(
            count_factors_fp(&FpPoly::from_i64(3, &[0, 0, 0, 1])),
            Err(Error::NonSeparableModP(3))
        );
        assert_eq!(count_factors_fp(&FpPoly::from_i64(2, &[1, 1])), Err(Error::EvenPrime));
    }

    #[test]
    fn factor_count_matches_berlekamp() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 0..p.min(6) {
                for b in 0..p.min(6) {
                    let f = FpPoly::new(p, vec![b, a, 0, 1, 0, 1]);
                    if !f.is_squarefree() {
                        continue;
                    }
                    assert_eq!(f.count_factors().unwrap(), berlekamp_count(&f), "{f:?}");
                    let fac = f.factor_squarefree().unwrap();
                    assert_eq!(fac.len(), berlekamp_count(&f));
                    let prod = fac.iter().fold(FpPoly::one(p), |acc, g| acc.mul(g));
                    assert_eq!(prod, f.monic());
                }
            }
        }
    }
}
