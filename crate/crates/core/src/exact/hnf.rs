//! Column-style Hermite normal form over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::ExactRat;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Integer column vectors, the working representation for lattice code.
pub type IntColumns = Vec<Vec<BigInt>>;

/// Column HNF of a set of integer generators.
///
/// Returns `(h, u)` where `h` holds the nonzero HNF columns and `u` is a
/// unimodular matrix (as columns) with `A u = [h | 0]`. The HNF is lower
/// triangular in echelon sense: each column has a positive pivot strictly
/// below the previous pivot, and entries to the left of a pivot lie in
/// `[0, pivot)`.
pub fn hnf_with_transform(gens: &IntColumns, rows: usize) -> (IntColumns, IntColumns) {
    let ncols = gens.len();
    let mut a: IntColumns = gens.clone();
    let mut u: IntColumns = (0..ncols)
        .map(|j| (0..ncols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut k = 0; // next pivot column
    let mut pivot_rows = Vec::new();
    for r in 0..rows {
        if k == ncols {
            break;
        }
        // gcd-combine columns k.. so that only column k is nonzero in row r
        for j in k + 1..ncols {
            if a[j][r].is_zero() {
                continue;
            }
            if a[k][r].is_zero() {
                a.swap(k, j);
                u.swap(k, j);
                continue;
            }
            let (x, y) = (a[k][r].clone(), a[j][r].clone());
            let e = x.extended_gcd(&y);
            let (p, q) = (&x / &e.gcd, &y / &e.gcd);
            // [col_k, col_j] <- [s col_k + t col_j, -q col_k + p col_j]
            combine(&mut a, k, j, &e.x, &e.y, &q, &p);
            combine(&mut u, k, j, &e.x, &e.y, &q, &p);
        }
        if a[k][r].is_zero() {
            continue;
        }
        if a[k][r].is_negative() {
            for v in a[k].iter_mut().chain(u[k].iter_mut()) {
                *v = -v.clone();
            }
        }
        pivot_rows.push(r);
        // reduce earlier columns modulo this pivot
        let piv = a[k][r].clone();
        for j in 0..k {
            let q = a[j][r].div_floor(&piv);
            if !q.is_zero() {
                for i in 0..rows {
                    let v = &q * &a[k][i];
                    a[j][i] -= v;
                }
                for i in 0..ncols {
                    let v = &q * &u[k][i];
                    u[j][i] -= v;
                }
            }
        }
        k += 1;
    }
    let h = a.into_iter().take(k).collect();
    (h, u)
}

fn combine(m: &mut IntColumns, k: usize, j: usize, s: &BigInt, t: &BigInt, q: &BigInt, p: &BigInt) {
    let ck = m[k].clone();
    let cj = m[j].clone();
    for i in 0..ck.len() {
        m[k][i] = s * &ck[i] + t * &cj[i];
        m[j][i] = p * &cj[i] - q * &ck[i];
    }
}

/// Column HNF of the integer generators given by the columns of `m`.
pub fn hnf_columns(gens: &IntColumns, rows: usize) -> IntColumns {
    hnf_with_transform(gens, rows).0
}

/// HNF of the lattice spanned by the columns of an integer matrix.
pub fn hnf(m: &Matrix) -> Result<Matrix> {
    if !m.is_integral() {
        return Err(Error::NonIntegral);
    }
    let gens: IntColumns = (0..m.cols())
        .map(|j| m.column(j).into_iter().map(|c| c.to_integer()).collect())
        .collect();
    let h = hnf_columns(&gens, m.rows());
    if h.is_empty() {
        return Ok(Matrix::zero(m.rows(), 1));
    }
    Ok(int_columns_to_matrix(&h))
}

/// Z-basis of `{x in Z^n : A x = 0}` for an integer matrix given by rows.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> IntColumns {
    let gens: IntColumns = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    let (h, u) = hnf_with_transform(&gens, rows.len());
    u.into_iter().skip(h.len()).collect()
}

pub fn int_columns_to_matrix(cols: &IntColumns) -> Matrix {
    Matrix::from_fn(cols[0].len(), cols.len(), |i, j| ExactRat::from_integer(cols[j][i].clone()))
}

/// Absolute determinant of a square set of integer columns.
pub fn abs_det(cols: &IntColumns) -> BigInt {
    int_columns_to_matrix(cols).det().expect("square").abs().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int::int;

    fn cols(v: &[&[i64]]) -> IntColumns {
        v.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let m = Matrix::identity(3);
        assert_eq!(hnf(&m).unwrap(), m);
    }

    #[test]
    fn index_two_lattice() {
        let g = cols(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = hnf_columns(&g, 2);
        assert_eq!(h, cols(&[&[1, 1], &[0, 2]]));
        assert_eq!(abs_det(&h), int(2));
    }

    #[test]
    fn non_integral_rejected() {
        let m = Matrix::new(1, 1, vec![ExactRat::new(int(1), int(2))]);
        assert_eq!(hnf(&m), Err(Error::NonIntegral));
    }

    #[test]
    fn transform_is_consistent() {
        let g = cols(&[&[4, 6, 2], &[3, 9, 12], &[5, 1, 7], &[2, 2, 2]]);
        let (h, u) = hnf_with_transform(&g, 3);
        let a = int_columns_to_matrix(&g);
        let uu = int_columns_to_matrix(&u);
        let au = &a * &uu;
        for (j, c) in h.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                assert_eq!(au[(i, j)], ExactRat::from_integer(v.clone()));
            }
        }
        for j in h.len()..g.len() {
            assert!(au.column(j).iter().all(|v| v.is_zero()));
        }
        assert_eq!(uu.det().unwrap().abs(), ExactRat::one());
    }

    #[test]
    fn kernel_of_a_row() {
        let k = integer_kernel(&[vec![int(1), int(0), int(1)]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[2]).is_zero());
        }
    }
}
