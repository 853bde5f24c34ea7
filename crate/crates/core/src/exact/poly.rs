//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::{ExactInt, ExactRat};
use crate::error::{Error, Result};

/// Polynomial with ascending rational coefficients; never carries trailing
/// zeros, so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| ExactRat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ExactRat::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: ExactRat, k: usize) -> Self {
        let mut v = vec![ExactRat::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x() -> Self {
        Poly::monomial(ExactRat::one(), 1)
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> ExactRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> ExactRat {
        self.coeffs.last().cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &ExactRat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        let mut acc = ExactRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ExactRat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Substitute `x -> x^2`.
    pub fn compose_square(&self) -> Poly {
        let mut v = vec![ExactRat::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        Poly::new(v)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![ExactRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = r0.lead().recip();
        (r0.scale(&c), s0.scale(&c), t0.scale(&c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> ExactInt {
        self.coeffs
            .iter()
            .fold(ExactInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `f(-x) = -f(x)`.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    /// For an odd `f = x*g(x^2)`, return `g`.
    pub fn odd_part_g(&self) -> Result<Poly> {
        if self.is_zero() || !self.is_odd() {
            return Err(Error::NotOddPolynomial);
        }
        Ok(Poly::new(self.coeffs.iter().skip(1).step_by(2).cloned().collect()))
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &Poly) -> ExactRat {
        subresultant(self, other)
    }

    /// `(-1)^{d(d-1)/2} Res(f, f')` for monic `f`.
    pub fn discriminant(&self) -> Result<ExactRat> {
        poly_discriminant(self)
    }
}

/// Subresultant PRS resultant; fraction-free in the sense that the only
/// divisions are the exact subresultant corrections.
fn subresultant(a: &Poly, b: &Poly) -> ExactRat {
    if a.is_zero() || b.is_zero() {
        return ExactRat::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = ExactRat::one();
    let (mut da, mut db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    if db == 0 {
        return sign * b.lead().pow(da as i32);
    }
    let mut g = ExactRat::one();
    let mut h = ExactRat::one();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        // pseudo-remainder: lc(b)^(delta+1) * a mod b
        let lb = b.lead();
        let r = a.scale(&lb.pow(delta as i32 + 1)).rem(&b);
        if r.is_zero() {
            return ExactRat::zero();
        }
        let dr = r.degree().unwrap();
        let divisor = &g * h.pow(delta as i32);
        a = b;
        b = r.scale(&divisor.recip());
        g = a.lead();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as i32) / h.pow(delta as i32 - 1)
        };
        da = a.degree().unwrap();
        db = dr;
        if db == 0 {
            let lb = b.lead();
            let h_new = if da == 0 {
                h.clone()
            } else {
                lb.pow(da as i32) / h.pow(da as i32 - 1)
            };
            return sign * h_new;
        }
    }
}

/// Discriminant of a monic polynomial of degree at least one.
pub fn poly_discriminant(f: &Poly) -> Result<ExactRat> {
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    let d = f.degree().unwrap();
    let res = f.resultant(&f.derivative());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -res } else { res })
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![ExactRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Human-readable form such as `x^3 - 2*x + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int::{rat, rat_int};

    #[test]
    fn discriminant_examples() {
        assert_eq!(Poly::from_ints(&[0, -1, 0, 1]).discriminant().unwrap(), rat_int(4));
        assert_eq!(Poly::from_ints(&[-2, 0, 0, 1]).discriminant().unwrap(), rat_int(-108));
        assert_eq!(Poly::from_ints(&[0, 0, 1]).discriminant().unwrap(), rat_int(0));
        assert_eq!(Poly::from_ints(&[1, 2]).discriminant(), Err(Error::NotMonic));
    }

    #[test]
    fn cubic_discriminant_matches_closed_form() {
        // -4p^3 - 27q^2 for x^3 + p x + q
        for p in -4i64..=4 {
            for q in -4i64..=4 {
                let f = Poly::from_ints(&[q, p, 0, 1]);
                assert_eq!(f.discriminant().unwrap(), rat_int(-4 * p * p * p - 27 * q * q));
            }
        }
    }

    #[test]
    fn quadratic_discriminant_with_rational_coefficients() {
        // x^2 + b x + c: b^2 - 4c
        let f = Poly::new(vec![rat(1, 3), rat(-1, 2), rat_int(1)]);
        assert_eq!(f.discriminant().unwrap(), rat(1, 4) - rat(4, 3));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - a, g) = g(a)
        let g = Poly::from_ints(&[5, -3, 0, 2, 1]);
        let lin = Poly::from_ints(&[-7, 1]);
        assert_eq!(lin.resultant(&g), g.eval(&rat_int(7)));
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::from_ints(&[0, -1, 0, 1]).gcd(&Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(g, Poly::from_ints(&[-1, 0, 1]));
        let (g, s, t) = Poly::from_ints(&[-2, 0, 0, 1]).ext_gcd(&Poly::from_ints(&[1, 1]));
        assert!(g.is_one_poly());
        let lhs = &(&s * &Poly::from_ints(&[-2, 0, 0, 1])) + &(&t * &Poly::from_ints(&[1, 1]));
        assert_eq!(lhs, Poly::one());
    }

    #[test]
    fn display_round_trip_text() {
        assert_eq!(Poly::from_ints(&[-2, 0, 0, 1]).to_string(), "x^3 - 2");
        assert_eq!(Poly::new(vec![rat(1, 2), rat_int(-3), rat_int(1)]).to_string(), "x^2 - 3*x + 1/2");
    }

    impl Poly {
        fn is_one_poly(&self) -> bool {
            *self == Poly::one()
        }
    }
}
