//! Integer and rational helpers: factorization, square classes, modular
//! arithmetic and rational reconstruction.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = num_rational::BigRational;

const TRIAL_LIMIT: u64 = 1_000_000;
const RHO_ITERATIONS: u64 = 2_000_000;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    ExactRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> ExactRat {
    ExactRat::from_integer(BigInt::from(v))
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = isqrt(n);
    &r * &r == *n
}

/// Exact square root of a rational, if it is a square.
pub fn rat_sqrt(q: &ExactRat) -> Option<ExactRat> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let rn = isqrt(n);
    let rd = isqrt(d);
    if &rn * &rn == *n && &rd * &rd == *d {
        Some(ExactRat::new(rn, rd))
    } else {
        None
    }
}

pub fn is_rat_square(q: &ExactRat) -> bool {
    rat_sqrt(q).is_some()
}

/// Squarefree integer `s` with `n / s` a nonzero rational square; the sign of
/// `n` is preserved.
pub fn squarefree_part(n: &ExactRat) -> Result<ExactInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut s = BigInt::one();
    for part in [n.numer().abs(), n.denom().clone()] {
        for (p, e) in factor(&part)? {
            if e % 2 == 1 {
                s *= p;
            }
        }
    }
    // the factorizations of numerator and denominator are disjoint, so the
    // product of odd-exponent primes is already squarefree
    if n.is_negative() {
        s = -s;
    }
    Ok(s)
}

pub fn squarefree_part_int(n: &BigInt) -> Result<ExactInt> {
    squarefree_part(&ExactRat::from_integer(n.clone()))
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

fn miller_rabin_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic witness set for 64-bit integers
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return miller_rabin_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Probabilistic primality (deterministic below 2^64).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    miller_rabin_big(n)
}

pub fn is_prime_u64(n: u64) -> bool {
    miller_rabin_u64(n)
}

fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u64..20 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut steps = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            steps += 1;
            if steps > RHO_ITERATIONS {
                return None;
            }
        }
        if &d != n {
            return Some(d);
        }
    }
    None
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    match pollard_rho(&n) {
        Some(d) => {
            let q = &n / &d;
            factor_into(d, out)?;
            factor_into(q, out)
        }
        None => Err(Error::FactorizationTimeout(n.to_string())),
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
///
/// Trial division up to 10^6, then Miller-Rabin and Pollard rho on what is
/// left. Gives up with `FactorizationTimeout` instead of returning a partial
/// answer.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        while (&m % &pb).is_zero() {
            m /= &pb;
            primes.push(pb.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            primes.push(m);
        } else {
            factor_into(m, &mut primes)?;
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factor(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Odd primes in increasing order, starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

/// Legendre symbol (a | p) for an odd prime p, via Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduce a rational into Z/m, failing when the denominator is not invertible.
pub fn rat_mod(q: &ExactRat, m: &BigInt) -> Option<BigInt> {
    let d = inv_mod(q.denom(), m)?;
    Some((q.numer() * d).mod_floor(m))
}

pub fn rat_mod_u64(q: &ExactRat, p: u64) -> Option<u64> {
    rat_mod(q, &BigInt::from(p)).map(|v| v.to_u64().expect("residue fits"))
}

/// Rational reconstruction: find `r/s` with `r = s*u mod m` and
/// `|r|, s <= sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<ExactRat> {
    let bound = isqrt(&(m >> 1u32));
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    if !r1.clone().gcd(&s1).is_one() {
        return None;
    }
    Some(ExactRat::new(r1, s1))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn to_biguint(n: &BigInt) -> BigUint {
    assert!(n.sign() != Sign::Minus);
    n.magnitude().clone()
}
