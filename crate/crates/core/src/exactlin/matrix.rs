//! Dense matrices and exact rank computations.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use super::field::PrimeField;
use super::poly::{Rational, SparsePolynomial};
use crate::error::{arg_err, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return arg_err("ragged matrix rows");
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Matrix<T>]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return arg_err("column count mismatch in vertical stack");
        }
        Ok(Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        })
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub type RationalMatrix = Matrix<Rational>;
pub type PolyMatrix = Matrix<SparsePolynomial>;

/// A matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    inner: Matrix<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {} ", self.field.modulus())?;
        self.inner.fmt(f)
    }
}

impl FpMatrix {
    /// Wraps a matrix whose entries are already reduced.
    pub fn new(field: PrimeField, inner: Matrix<u64>) -> Self {
        debug_assert!(inner.data.iter().all(|&v| v < field.modulus()));
        FpMatrix { field, inner }
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix::new(field, Matrix::from_fn(rows, cols, |_, _| 0))
    }

    pub fn from_i64_rows(field: PrimeField, rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        Ok(FpMatrix::new(field, m.map(|&v| field.reduce_i64(v))))
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        FpMatrix::new(field, Matrix::from_fn(n, n, |i, j| u64::from(i == j)))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn matrix(&self) -> &Matrix<u64> {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.rows
    }

    pub fn cols(&self) -> usize {
        self.inner.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        *self.inner.get(i, j)
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols() != rhs.rows() {
            return arg_err("matrix product dimension mismatch");
        }
        let f = self.field;
        let m = Matrix::from_fn(self.rows(), rhs.cols(), |i, j| {
            (0..self.cols()).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), rhs.get(k, j))))
        });
        Ok(FpMatrix::new(f, m))
    }

    pub fn vstack(blocks: &[FpMatrix]) -> Result<FpMatrix> {
        let field = blocks.first().map_or_else(PrimeField::default, |b| b.field);
        let inner: Vec<Matrix<u64>> = blocks.iter().map(|b| b.inner.clone()).collect();
        Ok(FpMatrix::new(field, Matrix::vstack(&inner)?))
    }

    pub fn rank(&self) -> usize {
        rank_mod_p(self)
    }

    /// Rank of the submatrix on the given column indices.
    pub fn column_rank(&self, cols: impl IntoIterator<Item = usize>) -> usize {
        let cols: Vec<usize> = cols.into_iter().collect();
        let mut work: Vec<u64> = Vec::with_capacity(self.rows() * cols.len());
        for i in 0..self.rows() {
            for &j in &cols {
                work.push(self.get(i, j));
            }
        }
        eliminate_mod_p(self.field, &mut work, self.rows(), cols.len())
    }
}

/// A matrix tagged with its scalar kind.
#[derive(Clone, Debug)]
pub enum ExactMatrix {
    PrimeField(FpMatrix),
    Rational(RationalMatrix),
    Polynomial(PolyMatrix),
}

impl ExactMatrix {
    pub fn rank(&self) -> usize {
        match self {
            ExactMatrix::PrimeField(m) => rank_mod_p(m),
            ExactMatrix::Rational(m) => rank_rational(m),
            ExactMatrix::Polynomial(m) => rank_symbolic(m),
        }
    }
}

/// Row rank over `F_p` by Gaussian elimination on a copy.
pub fn rank_mod_p(m: &FpMatrix) -> usize {
    let mut work = m.inner.data.clone();
    eliminate_mod_p(m.field, &mut work, m.rows(), m.cols())
}

fn eliminate_mod_p(f: PrimeField, a: &mut [u64], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(a[rank * cols + c]).expect("nonzero pivot");
        for r in rank + 1..rows {
            let factor = a[r * cols + c];
            if factor == 0 {
                continue;
            }
            let scale = f.mul(factor, inv);
            for j in c..cols {
                let v = f.mul(scale, a[rank * cols + j]);
                a[r * cols + j] = f.sub(a[r * cols + j], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Rings in which fraction-free elimination can divide exactly.
pub trait BareissRing: Clone {
    fn vanishes(&self) -> bool;
    fn one_like(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Quotient known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero());
        self / rhs
    }
}

impl BareissRing for SparsePolynomial {
    fn vanishes(&self) -> bool {
        SparsePolynomial::is_zero(self)
    }
    fn one_like(&self) -> Self {
        SparsePolynomial::one(self.nvars())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        SparsePolynomial::exact_div(self, rhs).expect("Bareiss division must be exact")
    }
}

/// Rank by fraction-free (Bareiss) elimination. Every intermediate entry is
/// a minor of the input, so each division is exact.
pub fn bareiss_rank<T: BareissRing>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = m.data.clone();
    let mut prev: Option<T> = None;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + c].vanishes()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + c].clone();
            for j in c + 1..cols {
                let t = pivot
                    .mul(&a[r * cols + j])
                    .sub(&lead.mul(&a[rank * cols + j]));
                a[r * cols + j] = match &prev {
                    Some(d) => t.exact_div(d),
                    None => t,
                };
            }
            a[r * cols + c] = lead.sub(&lead);
        }
        prev = Some(pivot);
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix: rows are cleared of denominators, then
/// eliminated fraction-free over the integers.
pub fn rank_rational(m: &RationalMatrix) -> usize {
    let int_rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    bareiss_rank(&Matrix::from_rows(int_rows).expect("rectangular input"))
}

/// Rank over the field of rational functions.
pub fn rank_symbolic(m: &PolyMatrix) -> usize {
    bareiss_rank(m)
}

/// Converts an integer matrix into rationals.
pub fn rational_from_i64(rows: &[Vec<i64>]) -> Result<RationalMatrix> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect(),
    )
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert_rational(m: &RationalMatrix) -> Result<RationalMatrix> {
    let n = m.rows;
    if m.cols != n {
        return arg_err("only square matrices are invertible");
    }
    let mut a = m.to_rows();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return arg_err("matrix is singular");
        };
        a.swap(c, piv);
        inv.swap(c, piv);
        let p = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &p;
            inv[c][j] = &inv[c][j] / &p;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let (ac, ic) = (a[c][j].clone(), inv[c][j].clone());
                a[r][j] -= &f * ac;
                inv[r][j] -= &f * ic;
            }
        }
    }
    Matrix::from_rows(inv)
}

/// Determinant of a square integer matrix via Bareiss elimination.
pub fn determinant_i64(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 {
        BigInt::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    if sign.is_negative() {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::parse::parse_poly;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(FpMatrix::identity(fp(), 2).rank(), 2);
        assert_eq!(FpMatrix::zeros(fp(), 0, 0).rank(), 0);
        assert_eq!(FpMatrix::zeros(fp(), 3, 3).rank(), 0);
    }

    #[test]
    fn column_rank_matches_submatrix() {
        let m = FpMatrix::from_i64_rows(fp(), vec![vec![1, 2, 3], vec![2, 4, 7]]).unwrap();
        assert_eq!(m.column_rank([0, 1]), 1);
        assert_eq!(m.column_rank([0, 2]), 2);
        assert_eq!(m.column_rank([]), 0);
    }

    #[test]
    fn rank_mod_p_leaves_input() {
        let m = FpMatrix::from_i64_rows(fp(), vec![vec![1, 1], vec![1, 1]]).unwrap();
        let before = m.clone();
        assert_eq!(m.rank(), 1);
        assert_eq!(m, before);
    }

    #[test]
    fn monomial_map_differential_at_special_point() {
        // rows u,0,s,0 / v,0,0,s / 0,u,t,0 / 0,v,0,t at (s,t,u,v) = (1,0,1,0)
        let m = FpMatrix::from_i64_rows(
            fp(),
            vec![
                vec![1, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 3);
        assert!((0..4).all(|j| m.get(3, j) == 0));
    }

    #[test]
    fn laface_stack_has_rank_six() {
        let rows = vec![
            vec![0, 1, 8, 48, 0, 2, 16, 96, 0, 4, 32, 192],
            vec![0, 0, 0, 0, 1, 4, 16, 64, 4, 16, 64, 256],
            vec![1, 4, 16, 64, 2, 8, 32, 128, 4, 16, 64, 256],
            vec![0, 1, 4, 12, 0, 2, 8, 24, 0, 4, 16, 48],
            vec![0, 0, 0, 0, 1, 2, 4, 8, 4, 8, 16, 32],
            vec![1, 2, 4, 8, 2, 4, 8, 16, 4, 8, 16, 32],
        ];
        let m = FpMatrix::from_i64_rows(fp(), rows).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn threefold_column_blocks() {
        let rows = vec![
            vec![1, 1, 1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 2, 1, 1, 1, 0],
            vec![0, 0, 2, 2, 1, 1, 2, 1],
            vec![1, 2, 1, 1, 0, 1, 1, 1],
        ];
        let q = rational_from_i64(&rows).unwrap();
        assert_eq!(rank_rational(&q.select_columns(&[0, 1, 2, 3])), 4);
        assert_eq!(rank_rational(&q.select_columns(&[4, 5, 6, 7])), 4);
        assert_eq!(rank_rational(&q.select_columns(&[2, 2])), 1);
    }

    #[test]
    fn rational_rank_with_fractions() {
        let half = Rational::new(1.into(), 2.into());
        let m = Matrix::from_rows(vec![
            vec![half.clone(), Rational::one()],
            vec![Rational::one(), Rational::from_integer(2.into())],
        ])
        .unwrap();
        assert_eq!(rank_rational(&m), 1);
    }

    #[test]
    fn symbolic_rank_examples() {
        let vars: Vec<String> = ["s", "t", "u", "v"].iter().map(|s| s.to_string()).collect();
        let p = |t: &str| parse_poly(t, &vars).unwrap();
        let z = || SparsePolynomial::zero(4);
        let jac = Matrix::from_rows(vec![
            vec![p("u"), z(), p("s"), z()],
            vec![p("v"), z(), z(), p("s")],
            vec![z(), p("u"), p("t"), z()],
            vec![z(), p("v"), z(), p("t")],
        ])
        .unwrap();
        assert_eq!(rank_symbolic(&jac), 3);
        let single = Matrix::from_rows(vec![vec![p("s^2*t")]]).unwrap();
        assert_eq!(rank_symbolic(&single), 1);
        let zero = Matrix::from_fn(3, 3, |_, _| z());
        assert_eq!(rank_symbolic(&zero), 0);
    }

    #[test]
    fn inverse_and_determinant() {
        let rows = vec![vec![2, 1], vec![5, 3]];
        assert_eq!(determinant_i64(&rows), BigInt::from(1));
        assert_eq!(determinant_i64(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        let q = rational_from_i64(&rows).unwrap();
        let inv = invert_rational(&q).unwrap();
        assert_eq!(inv, rational_from_i64(&[vec![3, -1], vec![-5, 2]]).unwrap());
        assert!(invert_rational(&rational_from_i64(&[vec![1, 2], vec![2, 4]]).unwrap()).is_err());
    }
}
