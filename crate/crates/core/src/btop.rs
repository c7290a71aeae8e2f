//! Truncated branching-Toeplitz operators.
//!
//! For a weight vector `a` on the unit sphere of `ℂ^q` and a symbol `f`, the
//! kernel on `B_n(T_q)` is
//!
//! ```text
//! Γ_a[f](u, v) = ĥ(m)·[w](a)          if u descends from v by the path w (|w| = m)
//!              = ĥ(−m)·conj([w](a))   if v descends from u by the path w
//!              = 0                    otherwise
//! ```
//!
//! where `[w](a)` is the product of `a_j` over the child indices on the path.
//! Uniform weights `a_j = 1/√q` give `q^{−m/2}·ĥ(|u|−|v|)` on comparable pairs,
//! and `q = 1` gives the classical Toeplitz matrix `T_n(f)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::symbol::Symbol;
use crate::tree::{Comparability, TreeShape, Vertex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default bound on the row count of any dense materialization.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Dense cap, overridable through `BTOEP_DENSE_CAP`.
pub fn dense_cap() -> usize {
    std::env::var("BTOEP_DENSE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
}

fn check_cap(rows: usize, cap: usize) -> Result<()> {
    if rows > cap {
        Err(Error::CapExceeded { rows, cap })
    } else {
        Ok(())
    }
}

/// A point of the unit sphere in `ℂ^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    entries: Vec<Complex64>,
    uniform: bool,
}

impl WeightVector {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        let norm2: f64 = entries.iter().map(|z| z.norm_sqr()).sum();
        if (norm2.sqrt() - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidWeights(format!(
                "Euclidean norm {} is not 1",
                norm2.sqrt()
            )));
        }
        Ok(WeightVector {
            entries,
            uniform: false,
        })
    }

    /// `(1/√q, …, 1/√q)`.
    pub fn uniform(q: usize) -> Self {
        let w = Complex64::new(1.0 / (q as f64).sqrt(), 0.0);
        WeightVector {
            entries: vec![w; q],
            uniform: true,
        }
    }

    /// Rescales an arbitrary nonzero vector onto the sphere.
    pub fn normalized(entries: Vec<Complex64>) -> Result<Self> {
        let norm = crate::linalg::norm(&entries);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidWeights("cannot normalize".into()));
        }
        WeightVector::new(entries.into_iter().map(|z| z / norm).collect())
    }

    pub fn q(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// `[w](a)` for a descent path.
    pub fn path_product(&self, digits: &[usize]) -> Complex64 {
        digits.iter().fold(ONE, |p, &d| p * self.entries[d])
    }
}

/// Matrix-free handle on `Γ_a^(n)[f]`.
#[derive(Clone, Debug)]
pub struct BranchingOperator {
    shape: TreeShape,
    weights: WeightVector,
    symbol: Symbol,
}

impl BranchingOperator {
    pub fn new(shape: TreeShape, weights: WeightVector, symbol: Symbol) -> Result<Self> {
        if weights.q() != shape.q() {
            return Err(Error::DimensionMismatch {
                expected: shape.q(),
                got: weights.q(),
            });
        }
        Ok(BranchingOperator {
            shape,
            weights,
            symbol,
        })
    }

    /// `Γ_q^(n)[f]`.
    pub fn uniform(q: usize, depth: usize, symbol: Symbol) -> Result<Self> {
        let shape = TreeShape::new(q, depth)?;
        BranchingOperator::new(shape, WeightVector::uniform(q), symbol)
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn dim(&self) -> usize {
        self.shape.vertex_count()
    }

    pub fn with_symbol(&self, symbol: Symbol) -> BranchingOperator {
        BranchingOperator {
            shape: self.shape,
            weights: self.weights.clone(),
            symbol,
        }
    }

    /// The adjoint `Γ_a[f̄]`.
    pub fn adjoint(&self) -> BranchingOperator {
        self.with_symbol(self.symbol.conjugate())
    }

    /// Gauge transform: the operator with symbol `f_t`, equal entrywise to
    /// `e^{−it|u|}·Γ(u, v)·e^{it|v|}`.
    pub fn gauge_transform(&self, t: f64) -> BranchingOperator {
        self.with_symbol(self.symbol.rotate(t))
    }

    pub fn entry(&self, u: Vertex, v: Vertex) -> Result<Complex64> {
        for w in [u, v] {
            if !self.shape.contains(w) {
                return Err(Error::VertexOutOfRange {
                    generation: w.generation,
                    offset: w.offset,
                });
            }
        }
        Ok(match self.shape.comparability(u, v) {
            Comparability::Equal => self.symbol.coeff(0),
            Comparability::VAncestorOfU { distance, path } => {
                self.symbol.coeff(distance as i64) * self.weights.path_product(path.digits())
            }
            Comparability::UAncestorOfV { distance, path } => {
                self.symbol.coeff(-(distance as i64)) * self.weights.path_product(path.digits()).conj()
            }
            Comparability::Incomparable => ZERO,
        })
    }

    /// `y = Γ x` without forming the matrix.
    ///
    /// Ancestor terms come from an upward walk per vertex accumulating the
    /// path product; descendant terms from the table
    /// `D_m(σ) = Σ_j conj(a_j)·D_{m−1}(child_j σ)` built bottom-up.
    pub fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.len(),
            });
        }
        let q = self.shape.q();
        let n = self.shape.depth();
        let reach = self.symbol.support_radius().min(n);
        let a = self.weights.entries();
        let c0 = self.symbol.coeff(0);
        let mut y: Vec<Complex64> = x.iter().map(|&xi| c0 * xi).collect();

        let up: Vec<Complex64> = (1..=reach).map(|m| self.symbol.coeff(m as i64)).collect();
        if up.iter().any(|&c| c != ZERO) {
            for g in 1..=n {
                let start = self.shape.generation_start(g);
                for k in 0..self.shape.generation_size(g) {
                    let mut acc = ZERO;
                    let mut prod = ONE;
                    let mut off = k;
                    for (m, &c) in up.iter().enumerate().take(g) {
                        prod *= a[off % q];
                        off /= q;
                        let anc = self.shape.generation_start(g - m - 1) + off;
                        acc += c * prod * x[anc];
                    }
                    y[start + k] += acc;
                }
            }
        }

        let down: Vec<Complex64> = (1..=reach).map(|m| self.symbol.coeff(-(m as i64))).collect();
        if down.iter().any(|&c| c != ZERO) {
            let abar: Vec<Complex64> = a.iter().map(|z| z.conj()).collect();
            let mut table = x.to_vec();
            for (m, &c) in down.iter().enumerate() {
                // table holds D_m on generations 0..=n−m; refresh to D_{m+1}
                let top = n - m - 1;
                let mut next = vec![ZERO; self.shape.generation_start(top + 1)];
                for g in 0..=top {
                    let start = self.shape.generation_start(g);
                    let child_start = self.shape.generation_start(g + 1);
                    for k in 0..self.shape.generation_size(g) {
                        let children = &table[child_start + q * k..child_start + q * (k + 1)];
                        let s: Complex64 = children.iter().zip(&abar).map(|(d, w)| d * w).sum();
                        next[start + k] = s;
                        y[start + k] += c * s;
                    }
                }
                table = next;
            }
        }
        Ok(y)
    }

    pub fn apply_adjoint(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.adjoint().apply(x)
    }

    /// Dense matrix indexed by linear vertex index, subject to `cap` rows.
    pub fn materialize_capped(&self, cap: usize) -> Result<CMatrix> {
        let dim = self.dim();
        check_cap(dim, cap)?;
        let q = self.shape.q();
        let a = self.weights.entries();
        let n = self.shape.depth();
        let reach = self.symbol.support_radius().min(n);
        let mut m = CMatrix::zeros(dim, dim);
        let c0 = self.symbol.coeff(0);
        for (idx, v) in self.shape.vertices().enumerate() {
            m[(idx, idx)] = c0;
            let mut prod = ONE;
            let mut off = v.offset;
            for d in 1..=reach.min(v.generation) {
                prod *= a[off % q];
                off /= q;
                let anc = self.shape.generation_start(v.generation - d) + off;
                m[(idx, anc)] = self.symbol.coeff(d as i64) * prod;
                m[(anc, idx)] = self.symbol.coeff(-(d as i64)) * prod.conj();
            }
        }
        Ok(m)
    }

    pub fn materialize(&self) -> Result<CMatrix> {
        self.materialize_capped(dense_cap())
    }
}

/// The classical Toeplitz matrix `T_n(f) = [ĥ(k − l)]_{0 ≤ k, l ≤ n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzMatrix {
    order: usize,
    symbol: Symbol,
}

impl ToeplitzMatrix {
    pub fn new(symbol: Symbol, n: usize) -> Self {
        ToeplitzMatrix {
            order: n + 1,
            symbol,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn entry(&self, k: usize, l: usize) -> Complex64 {
        self.symbol.coeff(k as i64 - l as i64)
    }

    pub fn to_dense(&self) -> CMatrix {
        CMatrix::from_fn(self.order, self.order, |k, l| self.entry(k, l))
    }
}

pub fn toeplitz(symbol: &Symbol, n: usize) -> ToeplitzMatrix {
    ToeplitzMatrix::new(symbol.clone(), n)
}

/// A `q`-tuple of `d×d` matrices `A_1, …, A_q`.
#[derive(Clone, Debug)]
pub struct OperatorTuple {
    mats: Vec<CMatrix>,
    dim: usize,
}

impl OperatorTuple {
    pub fn new(mats: Vec<CMatrix>) -> Result<Self> {
        let dim = mats
            .first()
            .map(CMatrix::rows)
            .ok_or_else(|| Error::InvalidParameter("empty operator tuple".into()))?;
        for m in &mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(OperatorTuple { mats, dim })
    }

    /// The `1×1` tuple built from scalar weights.
    pub fn from_weights(a: &WeightVector) -> Self {
        OperatorTuple {
            mats: a
                .entries()
                .iter()
                .map(|&z| CMatrix::from_rows(&[vec![z]]))
                .collect(),
            dim: 1,
        }
    }

    pub fn q(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn scaled(&self, s: f64) -> OperatorTuple {
        OperatorTuple {
            mats: self.mats.iter().map(|m| m.scale(Complex64::new(s, 0.0))).collect(),
            dim: self.dim,
        }
    }

    /// `‖Σ A_k* A_k‖`.
    pub fn row_contraction_norm(&self) -> Result<f64> {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for m in &self.mats {
            let g = m.gram();
            sum = CMatrix::from_fn(self.dim, self.dim, |i, j| sum[(i, j)] + g[(i, j)]);
        }
        let eig = crate::linalg::hermitian_eigen(&sum, false)?;
        Ok(eig.values.last().copied().unwrap_or(0.0))
    }

    /// `[w](A)` for a descent path `j_1, …, j_m`: `A_{j_m} ⋯ A_{j_1}`.
    pub fn path_product(&self, digits: &[usize]) -> CMatrix {
        digits
            .iter()
            .fold(CMatrix::identity(self.dim), |p, &d| self.mats[d].matmul(&p))
    }
}

/// Block `(u, v)` of `Γ_A^(n)[f]`.
pub fn op_valued_entry(
    a: &OperatorTuple,
    f: &Symbol,
    shape: &TreeShape,
    u: Vertex,
    v: Vertex,
) -> Result<CMatrix> {
    if a.q() != shape.q() {
        return Err(Error::DimensionMismatch {
            expected: shape.q(),
            got: a.q(),
        });
    }
    for w in [u, v] {
        if !shape.contains(w) {
            return Err(Error::VertexOutOfRange {
                generation: w.generation,
                offset: w.offset,
            });
        }
    }
    let d = a.dim();
    Ok(match shape.comparability(u, v) {
        Comparability::Equal => CMatrix::identity(d).scale(f.coeff(0)),
        Comparability::VAncestorOfU { distance, path } => {
            a.path_product(path.digits()).scale(f.coeff(distance as i64))
        }
        Comparability::UAncestorOfV { distance, path } => a
            .path_product(path.digits())
            .adjoint()
            .scale(f.coeff(-(distance as i64))),
        Comparability::Incomparable => CMatrix::zeros(d, d),
    })
}

/// Dense `(|B_n|·d) × (|B_n|·d)` block matrix of `Γ_A^(n)[f]`.
pub fn op_valued_materialize(
    a: &OperatorTuple,
    f: &Symbol,
    shape: &TreeShape,
    cap: usize,
) -> Result<CMatrix> {
    if a.q() != shape.q() {
        return Err(Error::DimensionMismatch {
            expected: shape.q(),
            got: a.q(),
        });
    }
    let d = a.dim();
    let q = shape.q();
    let rows = shape.vertex_count() * d;
    check_cap(rows, cap)?;
    let mut out = CMatrix::zeros(rows, rows);
    let put = |out: &mut CMatrix, bi: usize, bj: usize, blk: &CMatrix| {
        for i in 0..d {
            for j in 0..d {
                out[(bi * d + i, bj * d + j)] = blk[(i, j)];
            }
        }
    };
    let diag = CMatrix::identity(d).scale(f.coeff(0));
    for (idx, v) in shape.vertices().enumerate() {
        put(&mut out, idx, idx, &diag);
        // walking up reads the descent digits last-first, so [w](A) grows on the right
        let mut prod = CMatrix::identity(d);
        let mut off = v.offset;
        for m in 1..=v.generation {
            prod = prod.matmul(&a.mats[off % q]);
            off /= q;
            let anc = shape.generation_start(v.generation - m) + off;
            let down = prod.scale(f.coeff(m as i64));
            let up = prod.adjoint().scale(f.coeff(-(m as i64)));
            put(&mut out, idx, anc, &down);
            put(&mut out, anc, idx, &up);
        }
    }
    Ok(out)
}
