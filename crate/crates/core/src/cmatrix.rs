//! Dense complex matrices and a cyclic Jacobi solver for Hermitian eigenproblems.
//!
//! Storage is row-major. In `kron(a, b)` the left factor is the slow index:
//! entry `(ia * b.rows + ib, ja * b.cols + jb)` equals `a[(ia, ja)] * b[(ib, jb)]`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

pub const HERMITIAN_TOL: f64 = 1e-12;
const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not Hermitian (max |M - M*| = {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("ragged matrix literal: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

/// Eigenvalues in descending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row,
                    len: r.len(),
                    expected: cols,
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = C64::new(v, 0.0);
        }
        m
    }

    /// A single column holding `v`.
    pub fn column(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            data: self.data.iter().map(|a| a * c).collect(),
            ..*self
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>, MatrixError> {
        if self.cols != v.len() {
            return Err(MatrixError::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.data[j * self.cols + i].conj())
    }

    pub fn trace(&self) -> Result<C64, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.data[ia * self.cols + ja];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for ib in 0..other.rows {
                    let r = ia * other.rows + ib;
                    for jb in 0..other.cols {
                        out.data[r * cols + ja * other.cols + jb] = a * other.data[ib * other.cols + jb];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal matrix `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, MatrixError> {
        self.check_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry of `|M - M*|`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.data[i * n + j] - self.data[j * n + i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    /// Largest entry of `|M* M - I|`; infinite for non-square input.
    pub fn unitary_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().mul(self).expect("square");
        gram.max_abs_diff(&Self::identity(self.rows)).expect("same shape")
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_residual() <= tol
    }

    fn require_hermitian(&self) -> Result<(), MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let r = self.hermitian_residual();
        if r > HERMITIAN_TOL {
            return Err(MatrixError::NotHermitian(r));
        }
        Ok(())
    }

    /// Cyclic Jacobi diagonalization of a Hermitian matrix.
    ///
    /// Eigenvalues come back in descending order. Each eigenvector is scaled so
    /// its first component of modulus above `1e-12` is real and positive.
    pub fn hermitian_eig(&self) -> Result<Eigen, MatrixError> {
        self.require_hermitian()?;
        let n = self.rows;
        // symmetrize exactly so rounding in the input cannot bias the rotations
        let mut a = Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let mut v = Self::identity(n);
        let scale = a.frobenius_norm();
        let threshold = JACOBI_REL_TOL * scale;
        let mut converged = scale == 0.0;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if converged || off_diagonal_norm(&a) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > threshold {
            return Err(MatrixError::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vectors = Self::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col = v.col(src);
            normalize_phase(&mut col);
            for (i, c) in col.into_iter().enumerate() {
                vectors[(i, dst)] = c;
            }
        }
        Ok(Eigen { values, vectors })
    }

    /// `|M| = V diag(|λ|) V*`.
    pub fn abs_op(&self) -> Result<Self, MatrixError> {
        let eig = self.hermitian_eig()?;
        let abs: Vec<f64> = eig.values.iter().map(|l| l.abs()).collect();
        Ok(eig.reconstruct_with(&abs))
    }

    pub fn min_eigenvalue(&self) -> Result<f64, MatrixError> {
        let eig = self.hermitian_eig()?;
        Ok(eig.values.last().copied().unwrap_or(0.0))
    }

    pub fn is_psd(&self, tol: f64) -> Result<bool, MatrixError> {
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// Orthonormal basis (as columns) of the column space, keeping directions
    /// whose squared singular value exceeds `tol·max(1, σ_max²)`.
    pub fn column_space(&self, tol: f64) -> Self {
        let gram = self.mul(&self.adjoint()).expect("compatible");
        let eig = gram.hermitian_eig().expect("Gram matrices are Hermitian");
        let top = eig.values.first().copied().unwrap_or(0.0).max(1.0);
        let keep: Vec<usize> = (0..eig.values.len()).filter(|&i| eig.values[i] > tol * top).collect();
        Self::from_fn(self.rows, keep.len(), |i, j| eig.vectors[(i, keep[j])])
    }

    pub fn rank(&self, tol: f64) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.column_space(tol).cols
    }
}

impl Eigen {
    /// `V diag(f) V*` for replacement eigenvalues `f`.
    pub fn reconstruct_with(&self, f: &[f64]) -> ComplexMatrix {
        let v = &self.vectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..f.len()).map(|k| v[(i, k)] * f[k] * v[(j, k)].conj()).sum()
        })
    }

    /// Orthogonal projection onto the span of eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        let f: Vec<f64> = self.values.iter().map(|&l| if keep(l) { 1.0 } else { 0.0 }).collect();
        self.reconstruct_with(&f)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[(p, q)]` with `W = [[c, s], [-ū s, ū c]]`, `u` the phase of `a[(p, q)]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let u = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();
    let ub = u.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * ub * s;
        a[(k, q)] = akp * s + akq * ub * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * u * s;
        a[(q, k)] = apk * s + aqk * u * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * ub * s;
        v[(k, q)] = vkp * s + vkq * ub * c;
    }
}

fn normalize_phase(col: &mut [C64]) {
    if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12) {
        let phase = lead.conj() / lead.norm();
        for z in col.iter_mut() {
            *z *= phase;
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on mismatched shapes; use [`ComplexMatrix::mul`] for a checked product.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `⟨x, y⟩ = Σ x_i conj(y_i)`, linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let x = random_matrix(rng, n, n);
        (&x + &x.adjoint()).scale_real(0.5)
    }

    #[test]
    fn kron_and_trace_examples() {
        assert_eq!(ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
        assert_eq!(ComplexMatrix::diag_real(&[0.5, -0.5]).trace().unwrap(), c(0.0, 0.0));
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let k = a.kron(&b);
        // left factor is the slow index
        assert_eq!(k[(0, 1)], c(1.0, 0.0));
        assert_eq!(k[(1, 2)], c(2.0, 0.0));
        assert_eq!(k[(2, 1)], c(3.0, 0.0));
        assert_eq!(k[(3, 2)], c(4.0, 0.0));
    }

    #[test]
    fn dimension_errors() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(MatrixError::DimensionMismatch { .. })));
        assert!(matches!(a.trace(), Err(MatrixError::NotSquare(2, 3))));
        assert!(a.add(&ComplexMatrix::zeros(3, 2)).is_err());
        assert!(ComplexMatrix::from_real_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn product_with_adjoint_is_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = random_matrix(&mut rng, 4, 3);
            assert!((&x * &x.adjoint()).is_hermitian(1e-12));
        }
    }

    #[test]
    fn eig_examples() {
        let swap = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = swap.hermitian_eig().unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] + 1.0).abs() < 1e-14);

        let d = ComplexMatrix::diag_real(&[0.3, 0.3]);
        let e = d.hermitian_eig().unwrap();
        assert!(e.reconstruct_with(&e.values).max_abs_diff(&d).unwrap() < 1e-14);

        let non_herm = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(non_herm.hermitian_eig(), Err(MatrixError::NotHermitian(_))));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 8] {
            let m = random_hermitian(&mut rng, n);
            let e = m.hermitian_eig().unwrap();
            let lambda = ComplexMatrix::diag_real(&e.values);
            let lhs = &m * &e.vectors;
            let rhs = &e.vectors * &lambda;
            assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-10);
            assert!(e.vectors.is_unitary(1e-10));
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eig_handles_complex_phases() {
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]]).unwrap();
        let e = m.hermitian_eig().unwrap();
        assert!((e.values[0] - 2.0).abs() < 1e-13 && e.values[1].abs() < 1e-13);
        // first nonzero component real positive
        assert!(e.vectors[(0, 0)].im.abs() < 1e-14 && e.vectors[(0, 0)].re > 0.0);
    }

    #[test]
    fn abs_and_psd_examples() {
        let a = ComplexMatrix::diag_real(&[0.5, -0.5]).abs_op().unwrap();
        assert!(a.max_abs_diff(&ComplexMatrix::diag_real(&[0.5, 0.5])).unwrap() < 1e-14);
        let ones = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(ones.is_psd(1e-9).unwrap());
        assert!(!ComplexMatrix::diag_real(&[1.0, -1e-3]).is_psd(1e-9).unwrap());
    }

    #[test]
    fn rank_and_column_space() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0, 0.0], vec![2.0, 4.0, 0.0]]).unwrap();
        assert_eq!(m.rank(1e-10), 1);
        assert_eq!(ComplexMatrix::identity(3).rank(1e-10), 3);
        let basis = ComplexMatrix::identity(3).submatrix(0, 3, 0, 2).column_space(1e-10);
        assert_eq!(basis.cols(), 2);
        assert!((&basis.adjoint() * &basis).max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-12);
    }

    #[test]
    fn direct_sum_and_submatrix() {
        let a = ComplexMatrix::diag_real(&[1.0]);
        let b = ComplexMatrix::diag_real(&[2.0, 3.0]);
        let s = a.direct_sum(&b);
        assert_eq!(s, ComplexMatrix::diag_real(&[1.0, 2.0, 3.0]));
        assert_eq!(s.submatrix(1, 3, 1, 3), b);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn kron_trace_factorizes(seed in any::<u64>(), n in 2usize..4, m in 2usize..4) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_matrix(&mut rng, n, n);
                let b = random_matrix(&mut rng, m, m);
                let lhs = a.kron(&b).trace().unwrap();
                let rhs = a.trace().unwrap() * b.trace().unwrap();
                prop_assert!((lhs - rhs).norm() <= 1e-12);
            }

            #[test]
            fn abs_squared_is_square(seed in any::<u64>(), n in 1usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = random_hermitian(&mut rng, n);
                let a = m.abs_op().unwrap();
                prop_assert!((&a * &a).max_abs_diff(&(&m * &m)).unwrap() <= 1e-10);
            }

            #[test]
            fn spectrum_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = random_hermitian(&mut rng, n);
                let u = random_hermitian(&mut rng, n).hermitian_eig().unwrap().vectors;
                let conj = &(&u * &m) * &u.adjoint();
                let e1 = m.hermitian_eig().unwrap().values;
                let e2 = conj.hermitian_eig().unwrap().values;
                for (x, y) in e1.iter().zip(&e2) {
                    prop_assert!((x - y).abs() <= 1e-10);
                }
            }
        }
    }
}
