use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Dense square complex matrix.
///
/// Storage is column-major: entry `(i, j)` lives at `data[j * dim + i]`, so a
/// column is a contiguous slice. This is the natural layout for an operator
/// matrix whose column `k` holds the image of basis vector `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self { dim, data: vec![Complex::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn diag(values: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds from row-major nested rows.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n, "matrix must be square");
            m.data[j * n..(j + 1) * n].copy_from_slice(col);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[Complex<T>] {
        &self.data[j * self.dim..(j + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self[(i, j)]).collect()).collect()
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |s, i| s + self[(i, i)])
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn norm_max(&self) -> T {
        self.data.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex::zero(); self.dim];
        for (j, &vj) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.column(j)) {
                *o = *o + a * vj;
            }
        }
        out
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for j in 0..self.dim {
            let col = self.mul_vec(other.column(j));
            out.data[j * self.dim..(j + 1) * self.dim].copy_from_slice(&col);
        }
        out
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&c| c * s).collect() }
    }

    /// Largest `|a_ij|` strictly below the diagonal.
    pub fn max_below_diagonal(&self) -> T {
        let mut m = T::zero();
        for j in 0..self.dim {
            for i in j + 1..self.dim {
                m = m.max(self[(i, j)].norm());
            }
        }
        m
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[j * self.dim + i]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[j * self.dim + i]
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting and returns
/// `(x, condition estimate)`, where the estimate is `‖A‖₁‖A⁻¹‖₁` from the
/// explicit inverse (systems here are small).
pub fn solve_linear<T: Real>(a: &CMatrix<T>, b: &[Complex<T>]) -> Option<(Vec<Complex<T>>, T)> {
    let n = a.dim();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, pmax) =
            (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax.is_zero() || !pmax.is_finite() {
            return None;
        }
        if p != k {
            perm.swap(p, k);
            for j in 0..n {
                let t = lu[(p, j)];
                lu[(p, j)] = lu[(k, j)];
                lu[(k, j)] = t;
            }
        }
        let piv = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / piv;
            lu[(i, k)] = f;
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - f * t;
            }
        }
    }
    let lu_solve = |rhs: &[Complex<T>]| -> Vec<Complex<T>> {
        let mut y: Vec<Complex<T>> = perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = lu[(i, j)] * y[j];
                y[i] = y[i] - t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = lu[(i, j)] * y[j];
                y[i] = y[i] - t;
            }
            y[i] = y[i] / lu[(i, i)];
        }
        y
    };
    let x = lu_solve(b);
    let norm1 = |cols: &dyn Fn(usize) -> T| (0..n).map(cols).fold(T::zero(), T::max);
    let a_norm = norm1(&|j| a.column(j).iter().map(|c| c.norm()).sum::<T>());
    let mut inv_norm = T::zero();
    for j in 0..n {
        let mut e = vec![Complex::zero(); n];
        e[j] = Complex::one();
        let col = lu_solve(&e);
        inv_norm = inv_norm.max(col.iter().map(|c| c.norm()).sum::<T>());
    }
    Some((x, a_norm * inv_norm))
}
