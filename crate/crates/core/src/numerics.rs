//! Dense linear algebra used by the discretization and the spectral tools.
//!
//! Everything here works on small to medium dense matrices (a few hundred
//! rows). The symmetric eigensolver is cyclic Jacobi: each sweep costs
//! O(n³) and the iteration is capped at [`MAX_SWEEPS`] sweeps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Hard cap on Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 50;

/// Relative symmetry tolerance accepted by [`sym_eig`] and [`gen_eig`].
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix from row slices. All rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!("ragged rows: expected {cols} columns, found {}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Result<Self> {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!("column {j} has length {} instead of {rows}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[f64]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `selfᵀ · other` without forming the transpose.
    pub fn tr_matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "tr_matmul dimension mismatch");
        let mut out = Mat::zeros(self.cols, other.cols);
        for k in 0..self.rows {
            let arow = self.row(k);
            let brow = other.row(k);
            for (i, &a) in arow.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "mul_vec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `selfᵀ · x`.
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len(), "tr_mul_vec dimension mismatch");
        let mut out = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * xi;
            }
        }
        out
    }

    /// Congruence `Zᵀ · self · Z`.
    pub fn congruence(&self, z: &Mat) -> Mat {
        z.tr_matmul(&self.matmul(z))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|a| a * a).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// ‖A − Aᵀ‖_F / ‖A‖_F (zero for the zero matrix).
    pub fn relative_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let norm = self.frobenius();
        if norm == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)];
                acc += d * d;
            }
        }
        libm::sqrt(acc) / norm
    }

    /// (A + Aᵀ)/2.
    pub fn symmetric_part(&self) -> Mat {
        let mut s = self.clone();
        for i in 0..self.rows {
            for j in 0..i {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                s[(i, j)] = v;
                s[(j, i)] = v;
            }
        }
        s
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Lower-triangular Cholesky factor `L` with `L·Lᵀ = a`.
pub fn cholesky(a: &Mat) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("cholesky of {}x{} matrix", a.rows, a.cols)));
    }
    let n = a.rows;
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        // pivots at roundoff level relative to the original diagonal are treated as zero
        if !(d > 1e-14 * a[(j, j)].abs()) {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let d = libm::sqrt(d);
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            let (ri, rj) = (l.row(i), l.row(j));
            s -= dot(&ri[..j], &rj[..j]);
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves a general square system by Gaussian elimination with partial pivoting.
pub fn lu_solve(a: &Mat, b: &[f64]) -> Result<Vec<f64>> {
    let rhs = Mat::from_columns(b.len(), &[b.to_vec()])?;
    Ok(lu_solve_many(a, &rhs, 1e-14)?.column(0))
}

/// Solves `a·X = b` for every column of `b`. Pivots below `pivot_tol·max|a|`
/// are reported as singular.
pub fn lu_solve_many(a: &Mat, b: &Mat, pivot_tol: f64) -> Result<Mat> {
    if !a.is_square() || a.rows != b.rows {
        return Err(Error::Dimension(format!("system of {}x{} with rhs {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let n = a.rows;
    let r = b.cols;
    let mut m = a.clone();
    let mut x = b.clone();
    let scale = a.max_abs();
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs())).unwrap();
        if !(m[(piv, k)].abs() > pivot_tol * scale) {
            return Err(Error::InvalidArgument("singular linear system".into()));
        }
        if piv != k {
            for c in 0..n {
                let t = m[(k, c)];
                m[(k, c)] = m[(piv, c)];
                m[(piv, c)] = t;
            }
            for c in 0..r {
                let t = x[(k, c)];
                x[(k, c)] = x[(piv, c)];
                x[(piv, c)] = t;
            }
        }
        let pivot = m[(k, k)];
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            if f == 0.0 {
                continue;
            }
            for c in k..n {
                m[(i, c)] -= f * m[(k, c)];
            }
            for c in 0..r {
                x[(i, c)] -= f * x[(k, c)];
            }
        }
    }
    for k in (0..n).rev() {
        for c in 0..r {
            let s: f64 = (k + 1..n).map(|q| m[(k, q)] * x[(q, c)]).sum();
            x[(k, c)] = (x[(k, c)] - s) / m[(k, k)];
        }
    }
    Ok(x)
}

/// Solves `L·x = b` for lower-triangular `L`.
pub fn solve_lower(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut x = b.to_vec();
    for i in 0..n {
        let s = dot(&l.row(i)[..i], &x[..i]);
        x[i] = (x[i] - s) / l[(i, i)];
    }
    x
}

/// Solves `Lᵀ·x = b` for lower-triangular `L`.
pub fn solve_lower_transposed(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        x[i] /= l[(i, i)];
        let xi = x[i];
        for k in 0..i {
            x[k] -= l[(i, k)] * xi;
        }
    }
    x
}

/// Solves `(L·Lᵀ)·x = b`.
pub fn cholesky_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    solve_lower_transposed(l, &solve_lower(l, b))
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// symmetric matrix, computed by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius mass drops below
/// `1e-14·‖A‖_F`. Eigenvectors are normalised so that their first
/// non-negligible component is positive.
pub fn sym_eig(a: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("sym_eig of {}x{} matrix", a.rows, a.cols)));
    }
    let asym = a.relative_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let n = a.rows;
    let mut w = a.symmetric_part().data;
    // rows of `vt` are the eigenvectors
    let mut vt = Mat::identity(n).data;
    let norm = libm::sqrt(w.iter().map(|x| x * x).sum::<f64>());
    let target = 1e-14 * norm;

    let mut sweep = 0;
    while n > 1 && off_diagonal_norm(&w, n) > target {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, &mut vt, n, p, q, sweep);
            }
        }
        sweep += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let mut v = vt[k * n..(k + 1) * n].to_vec();
            fix_sign(&mut v);
            v
        })
        .collect();
    order.sort_by(|&i, &j| match w[i * n + i].total_cmp(&w[j * n + j]) {
        Ordering::Equal => lexicographic(&vectors[j], &vectors[i]),
        o => o,
    });
    let values = order.iter().map(|&k| w[k * n + k]).collect();
    let mut q = Mat::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        q.set_column(col, &vectors[k]);
    }
    Ok((values, q))
}

fn off_diagonal_norm(w: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[i * n + j] * w[i * n + j];
            }
        }
    }
    libm::sqrt(acc)
}

#[inline]
fn rotate(w: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize, sweep: usize) {
    let apq = w[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = w[p * n + p];
    let aqq = w[q * n + q];
    let g = 100.0 * apq.abs();
    if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        w[p * n + q] = 0.0;
        w[q * n + p] = 0.0;
        return;
    }
    let theta = (aqq - app) / (2.0 * apq);
    let t = if libm::fabs(theta) > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = w[p * n + k];
        let akq = w[q * n + k];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        w[p * n + k] = np;
        w[k * n + p] = np;
        w[q * n + k] = nq;
        w[k * n + q] = nq;
    }
    w[p * n + p] = app - t * apq;
    w[q * n + q] = aqq + t * apq;
    w[p * n + q] = 0.0;
    w[q * n + p] = 0.0;
    let (head, tail) = vt.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (a, b) in vp.iter_mut().zip(vq.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

fn fix_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Eigenpairs of a symmetric-definite pencil `(A, M)`: ascending eigenvalues
/// and an `M`-orthonormal eigenvector matrix (columns).
#[derive(Debug, Clone)]
pub struct EigenBasis {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, l| m.max(l.abs()))
    }

    /// ‖AΦ − MΦΛ‖_F / ‖A‖_F.
    pub fn residual(&self, a: &Mat, m: &Mat) -> f64 {
        let lhs = a.matmul(&self.vectors);
        let mut rhs = m.matmul(&self.vectors);
        for i in 0..rhs.rows() {
            for (j, l) in self.values.iter().enumerate() {
                rhs[(i, j)] *= l;
            }
        }
        let scale = a.frobenius().max(f64::MIN_POSITIVE);
        lhs.sub(&rhs).frobenius() / scale
    }

    /// ‖ΦᵀMΦ − I‖_F.
    pub fn orthonormality_defect(&self, m: &Mat) -> f64 {
        let g = self.vectors.tr_matmul(&m.matmul(&self.vectors));
        g.sub(&Mat::identity(g.rows())).frobenius()
    }
}

/// Generalized symmetric-definite eigenproblem `A·φ = λ·B·φ` by Cholesky
/// reduction `L⁻¹AL⁻ᵀ` followed by [`sym_eig`].
pub fn gen_eig(a: &Mat, b: &Mat) -> Result<EigenBasis> {
    if !a.is_square() || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::Dimension(format!("pencil of {}x{} and {}x{} matrices", a.rows, a.cols, b.rows, b.cols)));
    }
    let asym = a.relative_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let n = a.rows;
    let l = cholesky(b)?;
    // W = L⁻¹A, then C = L⁻¹Wᵀ = L⁻¹AL⁻ᵀ
    let mut w = Mat::zeros(n, n);
    for j in 0..n {
        w.set_column(j, &solve_lower(&l, &a.column(j)));
    }
    let wt = w.transpose();
    let mut c = Mat::zeros(n, n);
    for j in 0..n {
        c.set_column(j, &solve_lower(&l, &wt.column(j)));
    }
    let c = c.symmetric_part();
    let (mut values, q) = sym_eig(&c)?;
    let mut vectors = Mat::zeros(n, n);
    for (j, value) in values.iter_mut().enumerate() {
        let mut v = solve_lower_transposed(&l, &q.column(j));
        fix_sign(&mut v);
        // Rayleigh quotient against the unreduced pencil: the Jacobi values
        // carry absolute error ~ε‖L⁻¹AL⁻ᵀ‖, which swamps small eigenvalues
        let den = dot(&v, &b.mul_vec(&v));
        if den > 0.0 {
            *value = dot(&v, &a.mul_vec(&v)) / den;
        }
        vectors.set_column(j, &v);
    }
    Ok(EigenBasis { values, vectors })
}

/// Orthonormal basis (columns) of the kernel of `c`, from a column-pivoted
/// Householder QR of `cᵀ`. Ranks are decided with tolerance `1e-12·‖c‖_F`.
pub fn nullspace(c: &Mat) -> Mat {
    let n = c.cols();
    let m = c.rows();
    let tol = 1e-12 * c.frobenius();
    // work on cᵀ (n × m), column-pivoted
    let mut r = c.transpose();
    let mut norms: Vec<f64> = (0..m).map(|j| norm2(&r.column(j))).collect();
    let mut reflectors: Vec<Vec<f64>> = Vec::new();
    let steps = m.min(n);
    for k in 0..steps {
        // pivot: remaining column of largest norm
        let (piv, &best) =
            norms[k..].iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|(i, v)| (i + k, v)).unwrap();
        if best <= tol {
            break;
        }
        if piv != k {
            norms.swap(k, piv);
            for i in 0..n {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, piv)];
                r[(i, piv)] = t;
            }
        }
        let mut v: Vec<f64> = (k..n).map(|i| r[(i, k)]).collect();
        let alpha = norm2(&v);
        if alpha <= tol {
            break;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vn = norm2(&v);
        v.iter_mut().for_each(|x| *x /= vn);
        for j in k..m {
            let s: f64 = (k..n).map(|i| v[i - k] * r[(i, j)]).sum();
            for i in k..n {
                r[(i, j)] -= 2.0 * s * v[i - k];
            }
        }
        for (j, nj) in norms.iter_mut().enumerate().skip(k + 1) {
            *nj = libm::sqrt((k + 1..n).map(|i| r[(i, j)] * r[(i, j)]).sum());
        }
        reflectors.push(v);
    }
    let rank = reflectors.len();
    // Q = H_0 H_1 ... H_{rank-1}; kernel = Q[:, rank..]
    let mut z = Mat::zeros(n, n - rank);
    for col in 0..n - rank {
        z[(rank + col, col)] = 1.0;
    }
    for (k, v) in reflectors.iter().enumerate().rev() {
        for j in 0..z.cols() {
            let s: f64 = (k..n).map(|i| v[i - k] * z[(i, j)]).sum();
            if s != 0.0 {
                for i in k..n {
                    z[(i, j)] -= 2.0 * s * v[i - k];
                }
            }
        }
    }
    z
}

/// Least-squares fit of `y ≈ prefactor · t^exponent` in log–log coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub exponent: f64,
    pub prefactor: f64,
}

pub fn power_fit(samples: &[(f64, f64)]) -> Result<PowerFit> {
    if samples.iter().any(|&(t, y)| !(t > 0.0) || !(y > 0.0)) {
        return Err(Error::InvalidArgument("power fit needs positive data".into()));
    }
    let first = samples.first().map(|s| s.0);
    if samples.len() < 2 || samples.iter().all(|s| Some(s.0) == first) {
        return Err(Error::InvalidArgument("power fit needs two distinct abscissae".into()));
    }
    let n = samples.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = samples.iter().map(|&(t, y)| (libm::log(t), libm::log(y))).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let exponent = sxy / sxx;
    Ok(PowerFit { exponent, prefactor: libm::exp(my - exponent * mx) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn cholesky_examples() {
        let l = cholesky(&Mat::from_rows(&[[4.0, 0.0], [0.0, 9.0]]).unwrap()).unwrap();
        assert_eq!(l, Mat::from_rows(&[[2.0, 0.0], [0.0, 3.0]]).unwrap());

        let err = cholesky(&Mat::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotPositiveDefinite { pivot: 1 });

        // hand elimination: l00 = √2, l10 = 1/√2, l11 = √(2 − 1/2)
        let l = cholesky(&Mat::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap()).unwrap();
        assert!(close(l[(0, 0)], 2f64.sqrt(), 1e-15));
        assert!(close(l[(1, 0)], 1.0 / 2f64.sqrt(), 1e-15));
        assert!(close(l[(1, 1)], 1.5f64.sqrt(), 1e-15));
        assert_eq!(l[(0, 1)], 0.0);
    }

    #[test]
    fn sym_eig_small_cases() {
        let (vals, _) = sym_eig(&Mat::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap()).unwrap();
        assert!(close(vals[0], 1.0, 1e-14) && close(vals[1], 3.0, 1e-14));

        let (vals, vecs) = sym_eig(&Mat::identity(5)).unwrap();
        assert!(vals.iter().all(|&v| v == 1.0));
        assert_eq!(vecs, Mat::identity(5));

        let err = sym_eig(&Mat::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
    }

    #[test]
    fn lu_solve_needs_pivoting() {
        let a = Mat::from_rows(&[[0.0, 1.0], [2.0, 3.0]]).unwrap();
        let x = lu_solve(&a, &[1.0, 5.0]).unwrap();
        assert!(close(x[0], 1.0, 1e-15) && close(x[1], 1.0, 1e-15));
        assert!(lu_solve(&Mat::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap(), &[1.0, 1.0]).is_err());
    }

    #[test]
    fn gen_eig_examples() {
        let e = gen_eig(&Mat::from_diag(&[2.0, 8.0]), &Mat::from_diag(&[1.0, 4.0])).unwrap();
        assert!(close(e.values[0], 2.0, 1e-14) && close(e.values[1], 2.0, 1e-14));

        let b = Mat::from_rows(&[[3.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 5.0]]).unwrap();
        let e = gen_eig(&b, &b).unwrap();
        assert!(e.values.iter().all(|v| close(*v, 1.0, 1e-13)));
        assert!(e.orthonormality_defect(&b) < 1e-12);
    }

    #[test]
    fn gen_eig_rejects_indefinite_mass() {
        let err = gen_eig(&Mat::identity(2), &Mat::from_diag(&[1.0, -1.0])).unwrap_err();
        assert_eq!(err, Error::NotPositiveDefinite { pivot: 1 });
    }

    #[test]
    fn nullspace_examples() {
        let z = nullspace(&Mat::from_rows(&[[1.0, 0.0]]).unwrap());
        assert_eq!(z.cols(), 1);
        assert!(close(z[(0, 0)], 0.0, 1e-15) && close(z[(1, 0)].abs(), 1.0, 1e-15));

        let z = nullspace(&Mat::zeros(1, 3));
        assert_eq!(z, Mat::identity(3));

        let z = nullspace(&Mat::from_rows(&[[2.0, 1.0], [1.0, 3.0]]).unwrap());
        assert_eq!(z.cols(), 0);
    }

    #[test]
    fn power_fit_examples() {
        let pts: Vec<(f64, f64)> = [1e-4, 1e-3, 1e-2].iter().map(|&t| (t, 1.0 / libm::sqrt(t))).collect();
        assert!(close(power_fit(&pts).unwrap().exponent, -0.5, 1e-12));

        let pts = [(1.0, 2.0), (2.0, 2.0), (5.0, 2.0)];
        assert!(close(power_fit(&pts).unwrap().exponent, 0.0, 1e-14));

        let pts: Vec<(f64, f64)> = [0.1, 0.5, 2.0, 7.0].iter().map(|&t| (t, 3.0 * libm::pow(t, -0.125))).collect();
        let fit = power_fit(&pts).unwrap();
        assert!(close(fit.exponent, -0.125, 1e-12));
        assert!(close(fit.prefactor, 3.0, 1e-12));

        assert!(power_fit(&[(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(power_fit(&[(1.0, -1.0), (2.0, 2.0)]).is_err());
    }
}
