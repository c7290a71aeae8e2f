//! Dense complex matrices and Hermitian eigensolvers.
//!
//! Two independent eigensolvers are provided: Householder reduction to a real
//! tridiagonal matrix followed by implicit QL ([`hermitian_eigen`]), and cyclic
//! complex Jacobi rotations ([`jacobi_eigen`]). The first is the production
//! path; the second is slower and serves as a cross-check.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(cols: &[Vec<Complex64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        CMatrix::from_fn(r, c, |i, j| cols[j][i])
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

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in orow.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self* · self`, filled from its upper triangle.
    pub fn gram(&self) -> CMatrix {
        let n = self.cols;
        let mut out = CMatrix::zeros(n, n);
        for k in 0..self.rows {
            let row = self.row(k);
            for (i, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let a = a.conj();
                let orow = &mut out.data[i * n + i..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(&row[i..]) {
                    *o += a * b;
                }
            }
        }
        for i in 0..n {
            out.data[i * n + i].im = 0.0;
            for j in 0..i {
                out.data[i * n + j] = out.data[j * n + i].conj();
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij − conj(A_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|z| **z != ZERO).count()
    }

    /// Row-major CSV with cells formatted as `re+imj`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|z| format_cell(*z)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// `{"rows": N, "data": [[re, im], ...]}` in row-major order.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            data: Vec<[f64; 2]>,
        }
        serde_json::to_string(&Raw {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        })
        .expect("matrix serialization")
    }
}

fn format_cell(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    // ⟨x, y⟩ linear in x
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues in ascending order and, optionally, orthonormal eigenvectors
/// stored as the columns of `vectors` in the same order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Option<CMatrix>,
}

/// Hermitian eigendecomposition via tridiagonalization and implicit QL.
pub fn hermitian_eigen(a: &CMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: vec![],
            vectors: want_vectors.then(|| CMatrix::zeros(0, 0)),
        });
    }
    let tri = tridiagonalize(a);
    let mut d = tri.diag.clone();
    let mut e = tri.offdiag_abs.clone();
    e.push(0.0);
    // rows of zt are the columns of the tridiagonal eigenvector matrix
    let mut zt = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });
    implicit_ql(&mut d, &mut e, zt.as_deref_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| d[i]).collect();

    let vectors = zt.map(|zt| {
        // eigenvector j of A is Q·D·z_j
        let mut out = CMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            let z = &zt[src * n..(src + 1) * n];
            let mut v: Vec<Complex64> = z
                .iter()
                .zip(&tri.phases)
                .map(|(&zi, &p)| p * zi)
                .collect();
            tri.apply_q(&mut v);
            for (i, x) in v.into_iter().enumerate() {
                out[(i, col)] = x;
            }
        }
        out
    });
    Ok(HermitianEigen { values, vectors })
}

struct Tridiagonal {
    diag: Vec<f64>,
    offdiag_abs: Vec<f64>,
    /// Diagonal unitary making the complex subdiagonal real and nonnegative.
    phases: Vec<Complex64>,
    /// Householder vectors `(k, v, tau)` acting on indices `k+1..n`.
    reflectors: Vec<(usize, Vec<Complex64>, f64)>,
}

impl Tridiagonal {
    /// `x ← Q x` with `Q = H_0 H_1 ⋯ H_{n−3}`.
    fn apply_q(&self, x: &mut [Complex64]) {
        for (k, v, tau) in self.reflectors.iter().rev() {
            let tail = &mut x[k + 1..];
            let s: Complex64 = v.iter().zip(tail.iter()).map(|(vi, xi)| vi.conj() * xi).sum();
            let s = s * *tau;
            for (xi, vi) in tail.iter_mut().zip(v) {
                *xi -= vi * s;
            }
        }
    }
}

fn tridiagonalize(a: &CMatrix) -> Tridiagonal {
    let n = a.rows();
    let mut m = a.clone();
    let mut sub = vec![ZERO; n.saturating_sub(1)];
    let mut reflectors = Vec::new();
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let len = n - k - 1;
        let x: Vec<Complex64> = (k + 1..n).map(|i| m[(i, k)]).collect();
        let alpha = norm(&x);
        let tail_norm = norm(&x[1..]);
        if len == 1 || tail_norm == 0.0 {
            sub[k] = x[0];
            continue;
        }
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;
        sub[k] = -phase * alpha;

        // p = tau·A22·v, w = p − (tau/2)(v*p)·v, A22 ← A22 − v w* − w v*;
        // only the lower triangle of A22 is read or written
        p[..len].iter_mut().for_each(|x| *x = ZERO);
        for r in 0..len {
            let row = &m.row(k + 1 + r)[k + 1..k + 2 + r];
            let vr = v[r];
            let mut acc = ZERO;
            for (c, a) in row[..r].iter().enumerate() {
                acc += a * v[c];
                p[c] += a.conj() * vr;
            }
            p[r] += acc + row[r] * vr;
        }
        p[..len].iter_mut().for_each(|x| *x *= tau);
        let vp: Complex64 = v.iter().zip(&p[..len]).map(|(a, b)| a.conj() * b).sum();
        let kfac = 0.5 * tau * vp;
        let w: Vec<Complex64> = p[..len].iter().zip(&v).map(|(pi, vi)| pi - kfac * vi).collect();
        for (r, i) in (k + 1..n).enumerate() {
            let (vi, wi) = (v[r], w[r]);
            let row = &mut m.row_mut(i)[k + 1..k + 2 + r];
            for ((a, vj), wj) in row.iter_mut().zip(&v).zip(&w) {
                *a -= vi * wj.conj() + wi * vj.conj();
            }
        }
        reflectors.push((k, v, tau));
    }
    let diag = (0..n).map(|i| m[(i, i)].re).collect();
    let mut phases = vec![ONE; n];
    let mut offdiag_abs = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let r = sub[k].norm();
        offdiag_abs.push(r);
        phases[k + 1] = if r == 0.0 { phases[k] } else { phases[k] * (sub[k] / r) };
    }
    Tridiagonal {
        diag,
        offdiag_abs,
        phases,
        reflectors,
    }
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `e[i]` couples `i` and `i+1`; `e[n−1]` is workspace. Rows of `zt` are rotated
/// along with the basis.
fn implicit_ql(d: &mut [f64], e: &mut [f64], mut zt: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    // absolute floor so that blocks of (numerically) zero diagonal still split
    let scale = d.iter().zip(e.iter()).map(|(a, b)| a.abs() + b.abs()).fold(0.0, f64::max);
    let floor = f64::EPSILON * scale;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = zt.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let t = *b;
                        *b = s * *a + c * t;
                        *a = c * *a - s * t;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
pub fn jacobi_eigen(a: &CMatrix, max_sweeps: usize) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [−s, c]] on (p, q)
                let j00 = Complex64::new(c, 0.0);
                let j01 = Complex64::new(s, 0.0);
                let j10 = -phase.conj() * s;
                let j11 = phase.conj() * c;
                for r in 0..n {
                    let (x, y) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = x * j00 + y * j10;
                    m[(r, q)] = x * j01 + y * j11;
                    let (x, y) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = x * j00 + y * j10;
                    v[(r, q)] = x * j01 + y * j11;
                }
                for col in 0..n {
                    let (x, y) = (m[(p, col)], m[(q, col)]);
                    m[(p, col)] = j00.conj() * x + j10.conj() * y;
                    m[(q, col)] = j01.conj() * x + j11.conj() * y;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        values,
        vectors: Some(vectors),
    })
}

/// Spectral norm via the largest eigenvalue of `G*G`.
pub fn spectral_norm(g: &CMatrix) -> Result<f64> {
    if g.rows() == 0 || g.cols() == 0 {
        return Ok(0.0);
    }
    let gram = if g.cols() <= g.rows() {
        g.gram()
    } else {
        g.matmul(&g.adjoint())
    };
    let eig = hermitian_eigen(&gram, false)?;
    Ok(eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// All singular values in descending order.
///
/// Computed from the eigenvalues of the Hermitian dilation `[[0, G], [G*, 0]]`,
/// whose spectrum is `±σ_i` plus `|rows − cols|` zeros.
pub fn singular_values(g: &CMatrix) -> Result<Vec<f64>> {
    let (r, c) = (g.rows(), g.cols());
    let n = r + c;
    let mut dil = CMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..c {
            dil[(i, r + j)] = g[(i, j)];
            dil[(r + j, i)] = g[(i, j)].conj();
        }
    }
    let eig = hermitian_eigen(&dil, false)?;
    let k = r.min(c);
    Ok(eig.values.iter().rev().take(k).map(|&s| s.max(0.0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn check_decomposition(a: &CMatrix, eig: &HermitianEigen, tol: f64) {
        let v = eig.vectors.as_ref().unwrap();
        let n = a.rows();
        let vh_v = v.adjoint().matmul(v);
        assert!(vh_v.max_abs_diff(&CMatrix::identity(n)) < tol);
        let av = a.matmul(v);
        for j in 0..n {
            for i in 0..n {
                assert!((av[(i, j)] - v[(i, j)] * eig.values[j]).norm() < tol);
            }
        }
    }

    #[test]
    fn tridiagonal_ql_decomposes_random_hermitian() {
        for (n, seed) in [(1, 1), (2, 2), (3, 3), (7, 4), (40, 5)] {
            let a = random_hermitian(n, seed);
            let eig = hermitian_eigen(&a, true).unwrap();
            check_decomposition(&a, &eig, 1e-11);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn jacobi_decomposes_random_hermitian() {
        for (n, seed) in [(1, 11), (2, 12), (5, 13), (25, 14)] {
            let a = random_hermitian(n, seed);
            let eig = jacobi_eigen(&a, 50).unwrap();
            check_decomposition(&a, &eig, 1e-11);
        }
    }

    #[test]
    fn solvers_agree() {
        for seed in 0..5 {
            let a = random_hermitian(30, 100 + seed);
            let x = hermitian_eigen(&a, false).unwrap().values;
            let y = jacobi_eigen(&a, 50).unwrap().values;
            for (p, q) in x.iter().zip(&y) {
                assert!((p - q).abs() < 1e-12, "{p} vs {q}");
            }
        }
    }

    #[test]
    fn degenerate_and_diagonal_inputs() {
        let eig = hermitian_eigen(&CMatrix::identity(6), true).unwrap();
        assert!(eig.values.iter().all(|&x| x == 1.0));
        assert_eq!(eig.vectors.unwrap(), CMatrix::identity(6));
        let z = hermitian_eigen(&CMatrix::zeros(4, 4), true).unwrap();
        assert!(z.values.iter().all(|&x| x == 0.0));
        // known spectrum: tridiagonal Toeplitz with 0 diagonal and unit off-diagonals
        let n = 9;
        let t = CMatrix::from_fn(n, n, |i, j| {
            if i.abs_diff(j) == 1 { ONE } else { ZERO }
        });
        let vals = hermitian_eigen(&t, false).unwrap().values;
        for (j, v) in vals.iter().rev().enumerate() {
            let exact = 2.0 * (std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn singular_values_of_rectangular_and_rank_deficient() {
        // diag(3, 0, 1) padded with a zero row
        let mut g = CMatrix::zeros(4, 3);
        g[(0, 0)] = Complex64::new(0.0, 3.0);
        g[(2, 2)] = Complex64::new(-1.0, 0.0);
        let sv = singular_values(&g).unwrap();
        assert_eq!(sv.len(), 3);
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 1.0).abs() < 1e-14 && sv[2].abs() < 1e-14);
        assert!((spectral_norm(&g).unwrap() - 3.0).abs() < 1e-14);
        assert!((spectral_norm(&g.adjoint()).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn csv_and_json_exports() {
        let m = CMatrix::from_rows(&[vec![Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.0)]]);
        assert_eq!(m.to_csv(), "1-2j,0.5+0j\n");
        assert_eq!(m.to_json(), r#"{"rows":1,"cols":2,"data":[[1.0,-2.0],[0.5,0.0]]}"#);
    }
}
