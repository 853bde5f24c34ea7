use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use orbitforge::etale::EtaleAlgebra;
use orbitforge::exact::hnf::hnf;
use orbitforge::exact::int::{rat, rat_int, squarefree_part};
use orbitforge::exact::{ExactRat, FpPoly, Matrix, Poly};
use orbitforge::lattice::{bqf_reduce, ideal_norm, BQForm, FracIdeal};
use orbitforge::quad::{invariants, QuadSpace};
use orbitforge::SquareResult;

fn cubic() -> std::sync::Arc<EtaleAlgebra> {
    EtaleAlgebra::new(Poly::from_ints(&[1, -4, 0, 1])).unwrap()
}

fn odd_quintic() -> std::sync::Arc<EtaleAlgebra> {
    EtaleAlgebra::new(Poly::from_ints(&[0, 6, 0, -5, 0, 1])).unwrap()
}

fn small_elem() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 3)
}

fn invertible(m: &Matrix) -> bool {
    !m.det().unwrap().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn squarefree_part_ignores_squares(n in 1i64..5000, d in 1i64..50, s in 1i64..30, neg in any::<bool>()) {
        let q = rat(if neg { -n } else { n }, d);
        let scaled = &q * rat(s * s, 1);
        prop_assert_eq!(squarefree_part(&q).unwrap(), squarefree_part(&scaled).unwrap());
    }

    #[test]
    fn charpoly_is_conjugation_invariant(m in prop::collection::vec(-5i64..=5, 9), p in prop::collection::vec(-3i64..=3, 9)) {
        let m = Matrix::from_fn(3, 3, |i, j| rat_int(m[3 * i + j]));
        let p = Matrix::from_fn(3, 3, |i, j| rat_int(p[3 * i + j]));
        prop_assume!(invertible(&p));
        let conj = &(&p.inverse().unwrap() * &m) * &p;
        prop_assert_eq!(m.charpoly().unwrap(), conj.charpoly().unwrap());
    }

    #[test]
    fn hnf_ignores_generator_order(cols in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 4), shift in 0usize..4) {
        let a = Matrix::from_fn(3, 4, |i, j| rat_int(cols[j][i]));
        let b = Matrix::from_fn(3, 4, |i, j| rat_int(cols[(j + shift) % 4][i]));
        let b_neg = Matrix::from_fn(3, 4, |i, j| rat_int(if j == 0 { -cols[(j + shift) % 4][i] } else { cols[(j + shift) % 4][i] }));
        prop_assert_eq!(hnf(&a).unwrap(), hnf(&b).unwrap());
        prop_assert_eq!(hnf(&a).unwrap(), hnf(&b_neg).unwrap());
    }

    #[test]
    fn norm_is_multiplicative(a in small_elem(), b in small_elem()) {
        let alg = cubic();
        let x = alg.from_coeffs(a.iter().map(|&v| rat_int(v)).collect());
        let y = alg.from_coeffs(b.iter().map(|&v| rat_int(v)).collect());
        prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn squares_are_recognized(a in small_elem()) {
        let alg = cubic();
        let x = alg.from_coeffs(a.iter().map(|&v| rat_int(v)).collect());
        prop_assume!(!x.norm().is_zero());
        match x.square().is_square().unwrap() {
            SquareResult::True(r) => prop_assert_eq!(r.square(), x.square()),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn tau_is_an_involutive_automorphism(a in prop::collection::vec(-5i64..=5, 5), b in prop::collection::vec(-5i64..=5, 5)) {
        let alg = odd_quintic();
        let x = alg.from_coeffs(a.iter().map(|&v| rat_int(v)).collect());
        let y = alg.from_coeffs(b.iter().map(|&v| rat_int(v)).collect());
        prop_assert_eq!(x.apply_tau().unwrap().apply_tau().unwrap(), x.clone());
        prop_assert_eq!(
            x.mul(&y).unwrap().apply_tau().unwrap(),
            x.apply_tau().unwrap().mul(&y.apply_tau().unwrap()).unwrap()
        );
        prop_assert!(x.mul(&x.apply_tau().unwrap()).unwrap().is_tau_fixed());
    }

    #[test]
    fn invariants_survive_change_of_basis(d in prop::collection::vec((1i64..20, any::<bool>()), 3), p in prop::collection::vec(-3i64..=3, 9)) {
        let diag: Vec<ExactRat> = d.iter().map(|&(v, s)| rat_int(if s { -v } else { v })).collect();
        let s = QuadSpace::diagonal(&diag).unwrap();
        let p = Matrix::from_fn(3, 3, |i, j| rat_int(p[3 * i + j]));
        prop_assume!(invertible(&p));
        prop_assert_eq!(invariants(&s).unwrap(), invariants(&s.transform(&p).unwrap()).unwrap());
    }

    #[test]
    fn ideal_norm_scales_by_element_norm(a in small_elem()) {
        let alg = cubic();
        let c = alg.from_coeffs(a.iter().map(|&v| rat_int(v)).collect());
        prop_assume!(!c.norm().is_zero());
        let i = FracIdeal::generated(&alg, &[alg.constant(rat_int(3)), alg.beta()]).unwrap();
        let ci = i.scale_by(&c).unwrap();
        prop_assert_eq!(ideal_norm(&ci), ideal_norm(&i) * c.norm().abs());
    }

    #[test]
    fn reduction_is_idempotent_and_keeps_disc(a in 1i64..40, b in -40i64..40, c in 1i64..40) {
        let f = BQForm::new(a, b, c);
        prop_assume!(f.disc() < BigInt::zero());
        let r = bqf_reduce(&f).unwrap();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.disc(), f.disc());
        prop_assert_eq!(bqf_reduce(&r).unwrap(), r);
    }

    #[test]
    fn factor_counts_agree(c in prop::collection::vec(0u64..7, 5)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = FpPoly::new(7, coeffs);
        prop_assume!(f.is_squarefree());
        let factors = f.factor_squarefree().unwrap();
        prop_assert_eq!(factors.len(), f.count_factors().unwrap());
        let prod = factors.iter().fold(FpPoly::one(7), |acc, g| acc.mul(g));
        prop_assert_eq!(prod, f);
    }
}
