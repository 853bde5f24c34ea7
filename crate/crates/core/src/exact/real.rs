//! Real root counting and isolation with Sturm sequences.

use num_traits::{One, Signed, Zero};

use super::int::ExactRat;
use super::poly::Poly;

/// An isolating interval `(lo, hi]` containing exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: ExactRat,
    pub hi: ExactRat,
}

fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(values: impl Iterator<Item = ExactRat>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn changes_at(chain: &[Poly], x: &ExactRat) -> usize {
    sign_changes(chain.iter().map(|p| p.eval(x)))
}

fn changes_at_infinity(chain: &[Poly], positive: bool) -> usize {
    sign_changes(chain.iter().map(|p| {
        let l = p.lead();
        let d = p.degree().unwrap_or(0);
        if !positive && d % 2 == 1 { -l } else { l }
    }))
}

/// Cauchy bound: every real root lies in `(-B, B)`.
pub fn root_bound(f: &Poly) -> ExactRat {
    let lead = f.lead().abs();
    let m = f.coeffs()[..f.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(ExactRat::zero(), |a, b| if b > a { b } else { a });
    m + ExactRat::one()
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(f: &Poly) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    changes_at_infinity(&chain, false) - changes_at_infinity(&chain, true)
}

/// Distinct roots in the half-open interval `(a, b]`.
pub fn count_roots_in(f: &Poly, a: &ExactRat, b: &ExactRat) -> usize {
    let chain = sturm_chain(f);
    changes_at(&chain, a).saturating_sub(changes_at(&chain, b))
}

/// Isolating intervals for all real roots, sorted ascending.
pub fn isolate_real_roots(f: &Poly) -> Vec<RootInterval> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = changes_at(&chain, &lo) - changes_at(&chain, &hi);
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / ExactRat::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Sign of `g` at the unique root of `f` in `iv`, assuming `g` does not
/// vanish there (i.e. `gcd(f, g)` has no root in `iv`).
pub fn sign_at_root(f: &Poly, iv: &RootInterval, g: &Poly) -> i8 {
    let fchain = sturm_chain(f);
    let two = ExactRat::from_integer(2.into());
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    loop {
        // no root of g in (lo, hi]: g has constant sign there
        if count_roots_in(g, &lo, &hi) == 0 {
            let v = g.eval(&hi);
            if !v.is_zero() {
                return if v.is_positive() { 1 } else { -1 };
            }
        }
        let mid = (&lo + &hi) / &two;
        if f.eval(&mid).is_zero() {
            let v = g.eval(&mid);
            assert!(!v.is_zero(), "g vanishes at the root");
            return if v.is_positive() { 1 } else { -1 };
        }
        if changes_at(&fchain, &lo) - changes_at(&fchain, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int::rat_int;

    #[test]
    fn counts_roots() {
        assert_eq!(count_real_roots(&Poly::from_ints(&[0, -1, 0, 1])), 3);
        assert_eq!(count_real_roots(&Poly::from_ints(&[-2, 0, 0, 1])), 1);
        assert_eq!(count_real_roots(&Poly::from_ints(&[1, 0, 1])), 0);
        // (x^2 - 1)(x^2 - 4)x
        let f = Poly::from_ints(&[0, 4, 0, -5, 0, 1]);
        assert_eq!(count_real_roots(&f), 5);
        let ivs = isolate_real_roots(&f);
        assert_eq!(ivs.len(), 5);
        for (iv, r) in ivs.iter().zip([-2, -1, 0, 1, 2]) {
            assert!(iv.lo < rat_int(r) && rat_int(r) <= iv.hi);
        }
    }

    #[test]
    fn sign_of_polynomial_at_root() {
        let f = Poly::from_ints(&[0, -1, 0, 1]);
        let ivs = isolate_real_roots(&f);
        // g = x - 1/2 is negative at -1, 0 and positive at 1
        let g = Poly::new(vec![crate::exact::int::rat(-1, 2), rat_int(1)]);
        let signs: Vec<i8> = ivs.iter().map(|iv| sign_at_root(&f, iv, &g)).collect();
        assert_eq!(signs, vec![-1, -1, 1]);
    }
}
