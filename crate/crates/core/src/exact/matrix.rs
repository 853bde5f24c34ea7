//! Dense matrices over Q.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::int::ExactRat;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactRat>,
}

/// Result of [`Matrix::solve`]: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<ExactRat>,
    pub kernel: Vec<Vec<ExactRat>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactRat>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![ExactRat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = ExactRat::one();
        }
        m
    }

    pub fn diagonal(d: &[ExactRat]) -> Self {
        let mut m = Matrix::zero(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Matrix::from_fn(r, c, |i, j| ExactRat::from_integer(rows[i][j].into()))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<ExactRat>]) -> Self {
        let r = cols[0].len();
        Matrix::from_fn(r, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ExactRat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<ExactRat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<ExactRat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &ExactRat) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    pub fn mul_vec(&self, v: &[ExactRat]) -> Vec<ExactRat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = ExactRat::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|c| c.is_integer())
    }

    pub fn trace(&self) -> ExactRat {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Bilinear value `u^T self v`.
    pub fn bilinear(&self, u: &[ExactRat], v: &[ExactRat]) -> ExactRat {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }

    /// `P^T self P`.
    pub fn congruent(&self, p: &Matrix) -> Matrix {
        &(&p.transpose() * self) * p
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows.start + i, cols.start + j)].clone())
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                ExactRat::zero()
            }
        })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right kernel `{v : self v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<ExactRat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![ExactRat::zero(); self.cols];
                v[fc] = ExactRat::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(i, fc)].clone();
                }
                v
            })
            .collect()
    }

    /// Solve `self x = b` exactly: a particular solution (free variables set
    /// to zero) and a basis of the kernel.
    pub fn solve(&self, b: &[ExactRat]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { b[i].clone() }
        });
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![ExactRat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)].clone();
        }
        Ok(Solution { particular: x, kernel: self.kernel() })
    }

    pub fn det(&self) -> Result<ExactRat> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = ExactRat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(ExactRat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                ExactRat::one()
            } else {
                ExactRat::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Characteristic polynomial `det(xI - M)`.
    ///
    /// Reduces to upper Hessenberg form by elementary similarity transforms
    /// and then runs the standard Hessenberg recurrence.
    pub fn charpoly(&self) -> Result<Poly> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h[(i, c)].is_zero()) else {
                continue;
            };
            if p != c + 1 {
                h.swap_rows(p, c + 1);
                h.swap_cols(p, c + 1);
            }
            let inv = h[(c + 1, c)].recip();
            for i in c + 2..n {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let f = &h[(i, c)] * &inv;
                // row_i -= f row_{c+1}; col_{c+1} += f col_i
                for j in 0..n {
                    let v = &h[(c + 1, j)] * &f;
                    h[(i, j)] -= v;
                }
                for k in 0..n {
                    let v = &h[(k, i)] * &f;
                    h[(k, c + 1)] += v;
                }
            }
        }
        // p_0 = 1, p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik prod_{j=i+1}^{k} h_{j,j-1} p_{i-1}
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for k in 0..n {
            let lin = Poly::new(vec![-h[(k, k)].clone(), ExactRat::one()]);
            let mut pk = &lin * &ps[k];
            let mut prod = ExactRat::one();
            for i in (0..k).rev() {
                prod *= &h[(i + 1, i)];
                if prod.is_zero() {
                    break;
                }
                let c = &h[(i, k)] * &prod;
                if !c.is_zero() {
                    pk = &pk - &ps[i].scale(&c);
                }
            }
            ps.push(pk);
        }
        Ok(ps.pop().unwrap())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Companion matrix of a monic polynomial: multiplication by x on the
    /// basis `1, x, ..., x^{d-1}` of `Q[x]/(f)`.
    pub fn companion(f: &Poly) -> Result<Matrix> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = f.degree().unwrap();
        if d == 0 {
            return Err(Error::WrongDegree(0));
        }
        let mut m = Matrix::zero(d, d);
        for i in 1..d {
            m[(i, i - 1)] = ExactRat::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -f.coeff(i);
        }
        Ok(m)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Charpoly wrapper matching the free-function style used elsewhere.
pub fn charpoly(m: &Matrix) -> Result<Poly> {
    m.charpoly()
}

impl Index<(usize, usize)> for Matrix {
    type Output = ExactRat;
    fn index(&self, (i, j): (usize, usize)) -> &ExactRat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactRat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int::rat_int;

    #[test]
    fn charpoly_examples() {
        let f = Poly::from_ints(&[3, -1, 4, 0, 1]);
        assert_eq!(Matrix::companion(&f).unwrap().charpoly().unwrap(), f);
        assert_eq!(Matrix::zero(2, 2).charpoly().unwrap(), Poly::from_ints(&[0, 0, 1]));
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.charpoly().unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(
            Matrix::zero(2, 3).charpoly(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn charpoly_matches_cofactor_expansion_3x3() {
        // oracle: c0 = -det, c1 = sum of principal 2x2 minors, c2 = -trace
        let m = Matrix::from_ints(&[&[2, -1, 0], &[0, 0, 3], &[1, 5, -2]]);
        let tr = m.trace();
        let minors = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| &m[(a, a)] * &m[(b, b)] - &m[(a, b)] * &m[(b, a)])
            .sum::<ExactRat>();
        let expected = Poly::new(vec![-m.det().unwrap(), minors, -tr, rat_int(1)]);
        assert_eq!(m.charpoly().unwrap(), expected);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = vec![rat_int(3), rat_int(-2)];
        let s = Matrix::identity(2).solve(&b).unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[rat_int(1), rat_int(3)]), Err(Error::Inconsistent));
        let s = m.solve(&[rat_int(1), rat_int(2)]).unwrap();
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), rat_int(1));
        assert_eq!(&m * &m.inverse().unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }
}
