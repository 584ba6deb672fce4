//! Dense and tridiagonal symmetric positive definite linear algebra.
//!
//! Matrices are stored row-major in flat buffers. The Cholesky factor keeps
//! the lower triangle `L` with `A = L Lᵀ`; its strict upper triangle is zero.

use crate::error::{check_len, Result, ShrinkageError};
use crate::scalar::{axpy, dot, Real};

/// Dense symmetric matrix with full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> SymMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated on the lower triangle and mirrored.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Wraps a row-major buffer. Symmetry is checked to a relative tolerance.
    pub fn from_row_major(dim: usize, data: Vec<T>) -> Result<Self> {
        check_len("symmetric matrix buffer", dim * dim, data.len())?;
        let tol = T::lit(1e-10);
        for i in 0..dim {
            for j in 0..i {
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                if (a - b).abs() > tol * (T::one() + a.abs().max(b.abs())) {
                    return Err(ShrinkageError::InvalidConfig(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    /// Sets entry `(i, j)` and its mirror.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    #[inline]
    pub fn add_to_diag(&mut self, i: usize, v: T) {
        self.data[i * self.dim + i] += v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn copy_from(&mut self, other: &SymMatrix<T>) {
        debug_assert_eq!(self.dim, other.dim);
        self.data.copy_from_slice(&other.data);
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.dim).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn quad_form(&self, x: &[T]) -> T {
        (0..self.dim).map(|i| x[i] * dot(self.row(i), x)).sum()
    }

    pub fn max_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Cholesky factor `A = L Lᵀ` of a dense symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<T> {
    dim: usize,
    lower: Vec<T>,
}

impl<T: Real> Cholesky<T> {
    pub fn factor(a: &SymMatrix<T>, name: &'static str) -> Result<Self> {
        let mut chol = Self {
            dim: a.dim,
            lower: vec![T::zero(); a.dim * a.dim],
        };
        chol.refactor(a, name)?;
        Ok(chol)
    }

    /// Factors `a` reusing this factor's storage.
    pub fn refactor(&mut self, a: &SymMatrix<T>, name: &'static str) -> Result<()> {
        let n = a.dim;
        if self.dim != n {
            self.dim = n;
            self.lower = vec![T::zero(); n * n];
        }
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("avx2") && std::arch::is_x86_feature_detected!("fma") {
                // SAFETY: the required CPU features were detected above.
                return unsafe { factor_rows_avx2(&mut self.lower, a, name) };
            }
        }
        factor_rows(&mut self.lower, a, name)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn l(&self, i: usize, j: usize) -> T {
        self.lower[i * self.dim + j]
    }

    /// Solves `L z = b` in place.
    pub fn solve_lower_in_place(&self, b: &mut [T]) {
        let n = self.dim;
        for i in 0..n {
            let row = &self.lower[i * n..i * n + i];
            let s = b[i] - dot(row, &b[..i]);
            b[i] = s / self.lower[i * n + i];
        }
    }

    /// Solves `Lᵀ x = z` in place.
    pub fn solve_upper_in_place(&self, z: &mut [T]) {
        let n = self.dim;
        for i in (0..n).rev() {
            let xi = z[i] / self.lower[i * n + i];
            z[i] = xi;
            axpy(-xi, &self.lower[i * n..i * n + i], &mut z[..i]);
        }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        self.solve_lower_in_place(&mut x);
        self.solve_upper_in_place(&mut x);
        x
    }

    pub fn inverse(&self) -> SymMatrix<T> {
        let n = self.dim;
        let mut inv = SymMatrix::zeros(n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.solve(&e);
            for (i, v) in col.into_iter().enumerate().skip(j) {
                inv.set(i, j, v);
            }
        }
        inv
    }

    pub fn log_det(&self) -> T {
        (0..self.dim)
            .map(|i| self.l(i, i).ln())
            .sum::<T>()
            * T::lit(2.0)
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2,fma")]
unsafe fn factor_rows_avx2<T: Real>(lower: &mut [T], a: &SymMatrix<T>, name: &'static str) -> Result<()> {
    factor_rows(lower, a, name)
}

#[inline(always)]
fn factor_rows<T: Real>(lower: &mut [T], a: &SymMatrix<T>, name: &'static str) -> Result<()> {
    let n = a.dim;
    let mut i0 = 0;
    while i0 < n {
        let rows = (n - i0).min(4);
        let (done, rest) = lower.split_at_mut(i0 * n);
        let block = &mut rest[..rows * n];
        // Columns left of the block: four rows share every load of row j.
        if rows == 4 {
            for j in 0..i0 {
                let row_j = &done[j * n..j * n + j];
                let (b0, b123) = block.split_at_mut(n);
                let (b1, b23) = b123.split_at_mut(n);
                let (b2, b3) = b23.split_at_mut(n);
                let s = dot4([&b0[..j], &b1[..j], &b2[..j], &b3[..j]], row_j);
                let djj = done[j * n + j];
                b0[j] = (a.get(i0, j) - s[0]) / djj;
                b1[j] = (a.get(i0 + 1, j) - s[1]) / djj;
                b2[j] = (a.get(i0 + 2, j) - s[2]) / djj;
                b3[j] = (a.get(i0 + 3, j) - s[3]) / djj;
            }
        } else {
            for r in 0..rows {
                let row_i = &mut block[r * n..(r + 1) * n];
                for j in 0..i0 {
                    let s = dot(&row_i[..j], &done[j * n..j * n + j]);
                    row_i[j] = (a.get(i0 + r, j) - s) / done[j * n + j];
                }
            }
        }
        // Triangle inside the block.
        for r in 0..rows {
            let i = i0 + r;
            let (prev, cur) = block.split_at_mut(r * n);
            let row_i = &mut cur[..n];
            for c in 0..r {
                let j = i0 + c;
                let row_j = &prev[c * n..c * n + j];
                let s = a.get(i, j) - dot(&row_i[..j], row_j);
                row_i[j] = s / prev[c * n + j];
            }
            let d = a.get(i, i) - dot(&row_i[..i], &row_i[..i]);
            if !(d > T::zero()) || !d.is_finite() {
                return Err(ShrinkageError::NotPositiveDefinite {
                    matrix: name,
                    pivot: i,
                    value: d.as_f64(),
                });
            }
            row_i[i] = d.sqrt();
            for v in &mut row_i[i + 1..] {
                *v = T::zero();
            }
        }
        i0 += rows;
    }
    Ok(())
}

#[inline(always)]
fn dot4<T: Real>(rows: [&[T]; 4], q: &[T]) -> [T; 4] {
    let n = q.len();
    let whole = n - n % 8;
    let mut acc = [[T::zero(); 8]; 4];
    let qc = q[..whole].chunks_exact(8);
    let r0 = rows[0][..whole].chunks_exact(8);
    let r1 = rows[1][..whole].chunks_exact(8);
    let r2 = rows[2][..whole].chunks_exact(8);
    let r3 = rows[3][..whole].chunks_exact(8);
    for ((((qv, a0), a1), a2), a3) in qc.zip(r0).zip(r1).zip(r2).zip(r3) {
        for l in 0..8 {
            acc[0][l] += a0[l] * qv[l];
            acc[1][l] += a1[l] * qv[l];
            acc[2][l] += a2[l] * qv[l];
            acc[3][l] += a3[l] * qv[l];
        }
    }
    let mut out = [T::zero(); 4];
    for r in 0..4 {
        let a = &acc[r];
        let mut s = ((a[0] + a[4]) + (a[1] + a[5])) + ((a[2] + a[6]) + (a[3] + a[7]));
        for k in whole..n {
            s += rows[r][k] * q[k];
        }
        out[r] = s;
    }
    out
}

/// Symmetric tridiagonal matrix stored as its main and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> SymMatrix<T> {
        let n = self.dim();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.diag[i]);
        }
        for (i, &v) in self.off.iter().enumerate() {
            m.set(i + 1, i, v);
        }
        m
    }

    pub fn quad_form(&self, x: &[T]) -> T {
        let mut s: T = self.diag.iter().zip(x).map(|(d, v)| *d * *v * *v).sum();
        for (i, &o) in self.off.iter().enumerate() {
            s += T::lit(2.0) * o * x[i] * x[i + 1];
        }
        s
    }

    pub fn row_sums(&self) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i];
                if i > 0 {
                    s += self.off[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i];
                }
                s
            })
            .collect()
    }
}

/// Bidiagonal Cholesky factor of a symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagCholesky<T> {
    diag: Vec<T>,
    sub: Vec<T>,
}

impl<T: Real> TridiagCholesky<T> {
    pub fn factor(a: &SymTridiagonal<T>, name: &'static str) -> Result<Self> {
        let n = a.dim();
        check_len("tridiagonal off-diagonal", n.saturating_sub(1), a.off.len())?;
        let mut diag = Vec::with_capacity(n);
        let mut sub = Vec::with_capacity(n.saturating_sub(1));
        let mut carry = T::zero();
        for i in 0..n {
            let d = a.diag[i] - carry;
            if !(d > T::zero()) || !d.is_finite() {
                return Err(ShrinkageError::NotPositiveDefinite {
                    matrix: name,
                    pivot: i,
                    value: d.as_f64(),
                });
            }
            let li = d.sqrt();
            diag.push(li);
            if i + 1 < n {
                let e = a.off[i] / li;
                sub.push(e);
                carry = e * e;
            }
        }
        Ok(Self { diag, sub })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn solve_lower_in_place(&self, b: &mut [T]) {
        for i in 0..self.dim() {
            if i > 0 {
                let prev = b[i - 1];
                b[i] -= self.sub[i - 1] * prev;
            }
            b[i] /= self.diag[i];
        }
    }

    pub fn solve_upper_in_place(&self, z: &mut [T]) {
        let n = self.dim();
        for i in (0..n).rev() {
            if i + 1 < n {
                let next = z[i + 1];
                z[i] -= self.sub[i] * next;
            }
            z[i] /= self.diag[i];
        }
    }
}

/// Factor of a posterior precision matrix, dense or tridiagonal.
#[derive(Debug, Clone)]
pub enum PrecisionFactor<T> {
    Dense(Cholesky<T>),
    Tridiagonal(TridiagCholesky<T>),
}

impl<T: Real> PrecisionFactor<T> {
    pub fn dim(&self) -> usize {
        match self {
            PrecisionFactor::Dense(c) => c.dim(),
            PrecisionFactor::Tridiagonal(c) => c.dim(),
        }
    }

    pub fn solve_lower_in_place(&self, b: &mut [T]) {
        match self {
            PrecisionFactor::Dense(c) => c.solve_lower_in_place(b),
            PrecisionFactor::Tridiagonal(c) => c.solve_lower_in_place(b),
        }
    }

    pub fn solve_upper_in_place(&self, z: &mut [T]) {
        match self {
            PrecisionFactor::Dense(c) => c.solve_upper_in_place(z),
            PrecisionFactor::Tridiagonal(c) => c.solve_upper_in_place(z),
        }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let mut x = b.to_vec();
        self.solve_lower_in_place(&mut x);
        self.solve_upper_in_place(&mut x);
        x
    }
}
