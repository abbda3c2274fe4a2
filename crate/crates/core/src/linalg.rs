//! Dense complex matrices and the Hermitian eigensolvers used everywhere else.
//!
//! Two solvers live here:
//!
//! * [`hermitian_eigen`]: full decomposition of a dense Hermitian matrix
//!   (Householder reduction to a real tridiagonal, then implicit QL).
//! * [`SymTridiagonal`]: Sturm-sequence bisection plus inverse iteration for
//!   single eigenpairs of a real symmetric tridiagonal matrix. Every parity
//!   sector of the model Hamiltonians is tridiagonal, so large ground-state
//!   sweeps go through this path.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

const MAX_QL_SWEEPS: u32 = 64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
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

    /// Builds a matrix from row-major data.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`; `self` carries the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `max |a_ij − conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rotates `v` so that its largest-magnitude component is real and positive.
///
/// Ties are broken towards the lowest index.
pub fn fix_phase(v: &mut [C64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns. Only the lower triangle is trusted; callers are
/// responsible for checking Hermiticity.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }

    let (diag, offdiag, q) = householder_tridiagonal(a);

    // Diagonal unitary D making the off-diagonal real and non-negative.
    let mut phases = vec![C64::new(1.0, 0.0); n];
    let mut e = vec![0.0; n];
    for k in 0..n - 1 {
        let mag = offdiag[k].norm();
        phases[k + 1] = if mag > 0.0 {
            phases[k] * offdiag[k] / mag
        } else {
            phases[k]
        };
        e[k] = mag;
    }

    let mut d = diag;
    // Rows of `z` are eigenvectors of the real tridiagonal.
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z, n)?;

    let mut qd = q;
    for r in 0..n {
        for c in 0..n {
            let p = phases[c];
            qd[(r, c)] *= p;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));

    let mut vectors = CMatrix::zeros(n, n);
    let mut column = vec![C64::zero(); n];
    for (out_col, &src) in order.iter().enumerate() {
        let zrow = &z[src * n..(src + 1) * n];
        for (r, slot) in column.iter_mut().enumerate() {
            *slot = qd
                .row(r)
                .iter()
                .zip(zrow)
                .map(|(&a, &b)| a * b)
                .sum::<C64>();
        }
        fix_phase(&mut column);
        for (r, &val) in column.iter().enumerate() {
            vectors[(r, out_col)] = val;
        }
    }
    let values = order.iter().map(|&i| d[i]).collect();
    Ok((values, vectors))
}

/// Householder reduction `A = Q T Q†`; returns (diag T, subdiag T, Q).
fn householder_tridiagonal(input: &CMatrix) -> (Vec<f64>, Vec<C64>, CMatrix) {
    let n = input.rows();
    let mut a = input.clone();
    let mut q = CMatrix::identity(n);
    let mut offdiag = vec![C64::zero(); n.saturating_sub(1)];
    let mut v = vec![C64::zero(); n];
    let mut p = vec![C64::zero(); n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x = &mut v[..m];
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = a[(k + 1 + i, k)];
        }
        let sigma = norm(x);
        if sigma == 0.0 {
            offdiag[k] = C64::zero();
            continue;
        }
        let x0 = x[0];
        let ax0 = x0.norm();
        let phase = if ax0 > 0.0 {
            x0 / ax0
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * sigma;
        x[0] -= alpha;
        let vnorm = (2.0 * sigma * (sigma + ax0)).sqrt();
        for xi in x.iter_mut() {
            *xi /= vnorm;
        }
        let v = &v[..m];

        // p = A22 v, K = v† p, w = p − K v
        let p = &mut p[..m];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a.row(k + 1 + i)[k + 1..];
            *pi = row.iter().zip(v).map(|(&aij, &vj)| aij * vj).sum();
        }
        let kk: C64 = inner(v, p);
        for (pi, &vi) in p.iter_mut().zip(v) {
            *pi -= kk * vi;
        }
        for i in 0..m {
            let vi = v[i];
            let wi = p[i];
            for j in 0..m {
                let upd = vi * p[j].conj() + wi * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= upd * 2.0;
            }
        }
        for i in 0..m {
            a[(k + 1 + i, k)] = C64::zero();
            a[(k, k + 1 + i)] = C64::zero();
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        offdiag[k] = alpha;

        // Q ← Q H
        for r in 0..n {
            let qrow = &mut q.data[r * n + k + 1..(r + 1) * n];
            let w: C64 = qrow.iter().zip(v).map(|(&qv, &vj)| qv * vj).sum();
            for (qv, &vj) in qrow.iter_mut().zip(v) {
                *qv -= w * vj.conj() * 2.0;
            }
        }
    }
    if n >= 2 {
        offdiag[n - 2] = a[(n - 1, n - 2)];
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    (diag, offdiag, q)
}

/// Implicit QL on a real symmetric tridiagonal matrix.
///
/// `e[k]` couples `k` and `k + 1` (the last entry is scratch). Rows of `z`
/// are rotated along with the iteration, so starting from the identity they
/// end up holding the eigenvectors.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::NonConvergence { halvings: iter });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hb = *b;
                        *b = s * *a + c * hb;
                        *a = c * *a - s * hb;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// `exp(S)` for an anti-Hermitian `S`, through the spectrum of `iS`.
pub fn expm_antihermitian(s: &CMatrix) -> Result<CMatrix> {
    let k = s.scale(C64::new(0.0, 1.0));
    let (vals, vecs) = hermitian_eigen(&k)?;
    let n = vals.len();
    let mut scaled = vecs.clone();
    for r in 0..n {
        for (c, &lam) in vals.iter().enumerate() {
            scaled[(r, c)] *= C64::new(0.0, -lam).exp();
        }
    }
    Ok(scaled.matmul(&vecs.adjoint()))
}

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        let expected = diag.len().saturating_sub(1);
        if off.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: off.len(),
            });
        }
        if diag.is_empty() {
            return Err(Error::EmptySector);
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn to_dense(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::from_real_diagonal(&self.diag);
        for k in 0..n - 1 {
            m[(k + 1, k)] = C64::new(self.off[k], 0.0);
            m[(k, k + 1)] = C64::new(self.off[k], 0.0);
        }
        m
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> f64 {
        let emax = self.off.iter().fold(1.0f64, |m, &e| m.max(e * e));
        emax * f64::MIN_POSITIVE / f64::EPSILON
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0) * 4.0;
        lo -= pad;
        hi += pad;
        let pivmin = self.pivmin();
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + pivmin || mid == lo || mid == hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Lowest eigenvalue and its normalized eigenvector.
    ///
    /// The eigenvector comes from inverse iteration with a shift just below
    /// the bisected eigenvalue, which keeps `T − μ` positive definite so the
    /// factorization needs no pivoting.
    pub fn lowest_pair(&self) -> Result<(f64, Vec<f64>)> {
        let n = self.dim();
        if n == 1 {
            return Ok((self.diag[0], vec![1.0]));
        }
        let lambda = self.eigenvalue(0);
        let (glo, ghi) = self.gershgorin();
        let scale = glo.abs().max(ghi.abs()).max(1.0);
        let mut shift = 1e-11 * scale;

        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        let mut solved = false;
        for _ in 0..8 {
            let mu = lambda - shift;
            match self.solve_shifted_spd(mu, &x) {
                Some(mut y) => {
                    let mut converged = false;
                    for _ in 0..32 {
                        normalize_real(&mut y);
                        let diff = x
                            .iter()
                            .zip(&y)
                            .map(|(a, b)| {
                                let d = a - b;
                                d * d
                            })
                            .sum::<f64>()
                            .sqrt();
                        x.copy_from_slice(&y);
                        if diff < 1e-14 {
                            converged = true;
                            break;
                        }
                        match self.solve_shifted_spd(mu, &x) {
                            Some(next) => y = next,
                            None => break,
                        }
                    }
                    if converged {
                        solved = true;
                        break;
                    }
                    shift *= 10.0;
                }
                None => shift *= 10.0,
            }
        }
        if !solved {
            return Err(Error::NonConvergence { halvings: 0 });
        }
        fix_sign(&mut x);
        let tx = self.matvec(&x);
        let energy = x.iter().zip(&tx).map(|(a, b)| a * b).sum();
        Ok((energy, x))
    }

    /// Solves `(T − μ) y = b`; `None` when a pivot is not positive.
    fn solve_shifted_spd(&self, mu: f64, b: &[f64]) -> Option<Vec<f64>> {
        let n = self.dim();
        let mut piv = vec![0.0; n];
        let mut y = b.to_vec();
        piv[0] = self.diag[0] - mu;
        if piv[0] <= 0.0 {
            return None;
        }
        for i in 1..n {
            let l = self.off[i - 1] / piv[i - 1];
            piv[i] = self.diag[i] - mu - l * self.off[i - 1];
            if piv[i] <= 0.0 {
                return None;
            }
            y[i] -= l * y[i - 1];
        }
        y[n - 1] /= piv[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = (y[i] - self.off[i] * y[i + 1]) / piv[i];
        }
        if y.iter().all(|v| v.is_finite()) {
            Some(y)
        } else {
            None
        }
    }

    /// Full spectrum and eigenvectors (columns of a real-valued [`CMatrix`]).
    pub fn eigen(&self) -> Result<(Vec<f64>, CMatrix)> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        tql2(&mut d, &mut e, &mut z, n)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
        let mut vecs = CMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            let mut v: Vec<f64> = z[src * n..(src + 1) * n].to_vec();
            fix_sign(&mut v);
            for (r, &x) in v.iter().enumerate() {
                vecs[(r, col)] = C64::new(x, 0.0);
            }
        }
        Ok((order.iter().map(|&i| d[i]).collect(), vecs))
    }
}

fn normalize_real(v: &mut [f64]) {
    let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= nrm;
    }
}

fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(p) = v.iter().position(|x| x.abs() >= max * (1.0 - 1e-12)) {
        if v[p] < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Cyclic complex Jacobi sweeps; slow but structurally unrelated to the
    /// Householder/QL path.
    fn jacobi_eigenvalues(a: &CMatrix) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        for _ in 0..100 {
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += m[(p, q)].norm_sqr();
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = m[(p, q)];
                    if apq.norm() < 1e-300 {
                        continue;
                    }
                    let app = m[(p, p)].re;
                    let aqq = m[(q, q)].re;
                    let phase = apq / apq.norm();
                    let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                    let (s, co) = theta.sin_cos();
                    // Columns p, q rotated by the unitary [[co, s·phase], [−s·conj(phase), co]].
                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = mkp * co - mkq * phase.conj() * s;
                        m[(k, q)] = mkp * phase * s + mkq * co;
                    }
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = mpk * co - mqk * phase * s;
                        m[(q, k)] = mpk * phase.conj() * s + mqk * co;
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    fn pseudo_random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(next(), 0.0);
            for j in 0..i {
                let z = c(next(), next());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_sorted() {
        let m = CMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let (vals, _) = hermitian_eigen(&m).unwrap();
        assert_eq!(vals, [1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_eigenvectors() {
        let sx = CMatrix::from_rows(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let (vals, vecs) = hermitian_eigen(&sx).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((vecs[(0, 0)] - c(r, 0.)).norm() < 1e-14);
        assert!((vecs[(1, 0)] - c(-r, 0.)).norm() < 1e-14);
        assert!((vecs[(0, 1)] - c(r, 0.)).norm() < 1e-14);
        assert!((vecs[(1, 1)] - c(r, 0.)).norm() < 1e-14);
    }

    #[test]
    fn random_hermitian_matches_jacobi_and_residuals() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (17, 4), (40, 5)] {
            let a = pseudo_random_hermitian(n, seed);
            let (vals, vecs) = hermitian_eigen(&a).unwrap();
            let oracle = jacobi_eigenvalues(&a);
            for (x, y) in vals.iter().zip(&oracle) {
                assert!((x - y).abs() < 1e-12, "n={n}: {x} vs {y}");
            }
            let scale = a.frobenius_norm();
            for (k, &lam) in vals.iter().enumerate() {
                let v = vecs.column(k);
                let av = a.matvec(&v);
                let res: f64 = av
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - y * lam).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res < 1e-12 * scale.max(1.0));
            }
            let gram = vecs.adjoint().matmul(&vecs);
            assert!((&gram - &CMatrix::identity(n)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn tridiagonal_bisection_and_inverse_iteration() {
        let diag: Vec<f64> = (0..60).map(|i| (i as f64 * 0.37).sin() * 3.0).collect();
        let off: Vec<f64> = (0..59).map(|i| 1.0 + (i as f64 * 0.11).cos()).collect();
        let t = SymTridiagonal::new(diag, off).unwrap();
        let (full, _) = t.eigen().unwrap();
        for k in [0, 1, 7, 59] {
            assert!((t.eigenvalue(k) - full[k]).abs() < 1e-12);
        }
        let (e0, v0) = t.lowest_pair().unwrap();
        assert!((e0 - full[0]).abs() < 1e-12);
        let tv = t.matvec(&v0);
        let res: f64 = tv.iter().zip(&v0).map(|(a, b)| (a - e0 * b).powi(2)).sum::<f64>().sqrt();
        assert!(res < 1e-12);
    }

    #[test]
    fn expm_of_antihermitian_is_unitary() {
        let h = pseudo_random_hermitian(6, 9);
        let s = h.scale(c(0.0, 1.0));
        let u = expm_antihermitian(&s).unwrap();
        let gram = u.adjoint().matmul(&u);
        assert!((&gram - &CMatrix::identity(6)).max_abs() < 1e-12);
        // A tiny generator reduces to 1 + S.
        let small = s.scale_real(1e-7);
        let u = expm_antihermitian(&small).unwrap();
        let lin = &CMatrix::identity(6) + &small;
        assert!((&u - &lin).max_abs() < 1e-12);
    }

    #[test]
    fn kron_ordering() {
        let a = CMatrix::from_real_diagonal(&[-1.0, 1.0]);
        let b = CMatrix::from_real_diagonal(&[-0.5, 0.5]);
        let k = a.kron(&b);
        let d: Vec<f64> = (0..4).map(|i| k[(i, i)].re).collect();
        assert_eq!(d, [0.5, -0.5, -0.5, 0.5]);
    }
}
