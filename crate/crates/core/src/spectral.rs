//! Norms, singular values, radial compression and positivity checks.
//!
//! The radial subspace of `ℂ^{B_n}` consists of vectors constant on every
//! generation; `h_k = 𝟙_{S_k}/√(q^k)` is its orthonormal basis. For uniform
//! weights it is invariant under `Γ_q^(n)[f]`, and the compression onto it is
//! the classical Toeplitz matrix `T_n(f)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::btop::{dense_cap, toeplitz, BranchingOperator};
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigen, CMatrix};
use crate::symbol::Symbol;
use crate::tree::TreeShape;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Hermitian tolerance for [`certify_positive`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Largest dimension for which [`cn_sandwich`] uses a dense SVD.
pub const SANDWICH_DENSE_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormMethod {
    PowerIteration,
    DenseEig,
    DenseSvd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub norm: f64,
    pub method: NormMethod,
    pub iterations: usize,
    pub residual: f64,
    #[serde(skip)]
    pub converged: bool,
}

impl SpectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PowerIteration {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            seed: DEFAULT_SEED,
        }
    }
}

/// Power iteration on `x ↦ Γ*Γx`.
///
/// Stops once the relative change of the Rayleigh quotient stays below `tol`
/// for three consecutive steps. A report with `converged = false` is returned
/// when `max_iter` is exhausted.
pub fn operator_norm(op: &BranchingOperator, cfg: &PowerIteration) -> Result<SpectralReport> {
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    let adj = op.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x: Vec<Complex64> = (0..op.dim())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalize(&mut x);

    let mut prev = f64::NAN;
    let mut calm = 0;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        let y = op.apply(&x)?;
        lambda = linalg::norm(&y).powi(2);
        let z = adj.apply(&y)?;
        if lambda == 0.0 {
            return Ok(SpectralReport {
                norm: 0.0,
                method: NormMethod::PowerIteration,
                iterations: it,
                residual: 0.0,
                converged: true,
            });
        }
        residual = z
            .iter()
            .zip(&x)
            .map(|(zi, xi)| (zi - xi * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / lambda;
        if (lambda - prev).abs() < cfg.tol * lambda {
            calm += 1;
        } else {
            calm = 0;
        }
        prev = lambda;
        if calm >= 3 {
            return Ok(SpectralReport {
                norm: lambda.sqrt(),
                method: NormMethod::PowerIteration,
                iterations: it,
                residual,
                converged: true,
            });
        }
        x = z;
        normalize(&mut x);
    }
    Ok(SpectralReport {
        norm: lambda.sqrt(),
        method: NormMethod::PowerIteration,
        iterations: cfg.max_iter,
        residual,
        converged: false,
    })
}

fn normalize(x: &mut [Complex64]) {
    let n = linalg::norm(x);
    if n > 0.0 {
        x.iter_mut().for_each(|z| *z /= n);
    }
}

/// Spectral norm from a dense eigensolve of `Γ*Γ`.
pub fn dense_norm(op: &BranchingOperator) -> Result<SpectralReport> {
    let m = op.materialize()?;
    Ok(SpectralReport {
        norm: linalg::spectral_norm(&m)?,
        method: NormMethod::DenseSvd,
        iterations: 0,
        residual: 0.0,
        converged: true,
    })
}

/// `‖T_n(f)‖`.
pub fn toeplitz_norm(f: &Symbol, n: usize) -> Result<f64> {
    linalg::spectral_norm(&toeplitz(f, n).to_dense())
}

/// Orthonormal basis `h_0, …, h_n` of the radial vectors.
#[derive(Clone, Copy, Debug)]
pub struct RadialBasis {
    shape: TreeShape,
}

impl RadialBasis {
    pub fn new(shape: TreeShape) -> Self {
        RadialBasis { shape }
    }

    pub fn len(&self) -> usize {
        self.shape.depth() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry value of `h_k` on generation `k`.
    pub fn level_value(&self, k: usize) -> f64 {
        1.0 / (self.shape.generation_size(k) as f64).sqrt()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let mut v = vec![ZERO; self.shape.vertex_count()];
        let w = Complex64::new(self.level_value(k), 0.0);
        for i in self.shape.generation_range(k) {
            v[i] = w;
        }
        v
    }

    /// Coordinates `⟨x, h_k⟩`.
    pub fn coordinates(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.len())
            .map(|k| x[self.shape.generation_range(k)].iter().sum::<Complex64>() * self.level_value(k))
            .collect()
    }

    /// `Σ_k c_k h_k`.
    pub fn lift(&self, coords: &[Complex64]) -> Vec<Complex64> {
        let mut v = vec![ZERO; self.shape.vertex_count()];
        for (k, &c) in coords.iter().enumerate() {
            let w = c * self.level_value(k);
            for i in self.shape.generation_range(k) {
                v[i] = w;
            }
        }
        v
    }

    /// Orthogonal projection onto the radial subspace.
    pub fn project(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.lift(&self.coordinates(x))
    }

    /// `‖(I − P_rad) x‖`.
    pub fn complement_norm(&self, x: &[Complex64]) -> f64 {
        let p = self.project(x);
        x.iter().zip(&p).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// `(I − P_rad)·M·(I − P_rad)` for a dense `M` on `B_n`.
    pub fn compress_complement(&self, m: &CMatrix) -> CMatrix {
        let mut out = m.clone();
        let dim = self.shape.vertex_count();
        for i in 0..dim {
            let row = out.row_mut(i);
            for g in 0..self.len() {
                let r = self.shape.generation_range(g);
                let mean = row[r.clone()].iter().sum::<Complex64>() / r.len() as f64;
                row[r].iter_mut().for_each(|z| *z -= mean);
            }
        }
        for g in 0..self.len() {
            let r = self.shape.generation_range(g);
            let len = r.len() as f64;
            for j in 0..dim {
                let mean = r.clone().map(|i| out[(i, j)]).sum::<Complex64>() / len;
                for i in r.clone() {
                    out[(i, j)] -= mean;
                }
            }
        }
        out
    }
}

fn require_uniform(op: &BranchingOperator) -> Result<()> {
    if op.weights().is_uniform() {
        Ok(())
    } else {
        Err(Error::NonUniformWeights)
    }
}

/// Matrix `[⟨Γ h_l, h_k⟩]_{k,l}` of the compression onto the radial subspace.
pub fn radial_compress(op: &BranchingOperator) -> Result<CMatrix> {
    require_uniform(op)?;
    let basis = RadialBasis::new(op.shape());
    let cols: Vec<Vec<Complex64>> = (0..basis.len())
        .map(|l| op.apply(&basis.vector(l)).map(|y| basis.coordinates(&y)))
        .collect::<Result<_>>()?;
    Ok(CMatrix::from_columns(&cols))
}

/// Norms of `Γ` on the radial subspace, on its orthogonal complement, and overall.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockNorms {
    pub radial: f64,
    pub complement: f64,
    pub total: f64,
    /// Largest entry of `P·Γ·(I − P)` and `(I − P)·Γ·P`.
    pub cross_block: f64,
}

impl BlockNorms {
    /// `|total − max(radial, complement)|`.
    pub fn decomposition_gap(&self) -> f64 {
        (self.total - self.radial.max(self.complement)).abs()
    }
}

pub fn block_norms(op: &BranchingOperator) -> Result<BlockNorms> {
    require_uniform(op)?;
    let m = op.materialize()?;
    let shape = op.shape();
    let basis = RadialBasis::new(shape);
    let r = radial_compress(op)?;
    let gens = shape.generations();

    // (I − P)ΓP = (ΓH − HR)H*, PΓ(I − P) = H(H*Γ − RH*)
    let mut cross: f64 = 0.0;
    for l in 0..basis.len() {
        let y = op.apply(&basis.vector(l))?;
        let z = op.apply_adjoint(&basis.vector(l))?;
        for (u, (&yu, &zu)) in y.iter().zip(&z).enumerate() {
            let g = gens[u];
            let hu = basis.level_value(g);
            let lower = (yu - r[(g, l)] * hu).norm() * basis.level_value(l);
            let upper = (zu.conj() - r[(l, g)] * hu).norm() * basis.level_value(l);
            cross = cross.max(lower).max(upper);
        }
    }

    let radial = linalg::spectral_norm(&r)?;
    let complement = linalg::spectral_norm(&basis.compress_complement(&m))?;
    let total = linalg::spectral_norm(&m)?;
    Ok(BlockNorms {
        radial,
        complement,
        total,
        cross_block: cross,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
}

/// Dense Hermitian eigensolve; PSD iff the least eigenvalue is `≥ −tol`.
pub fn certify_positive(m: &CMatrix, tol: f64) -> Result<PositivityCertificate> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = hermitian_eigen(m, false)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    Ok(PositivityCertificate {
        is_psd: min >= -tol,
        min_eigenvalue: min,
    })
}

pub fn certify_operator(op: &BranchingOperator, tol: f64) -> Result<PositivityCertificate> {
    certify_positive(&op.materialize()?, tol)
}

/// Full singular value list, descending.
pub fn singular_values(op: &BranchingOperator) -> Result<Vec<f64>> {
    linalg::singular_values(&op.materialize()?)
}

#[derive(Clone, Debug)]
pub struct NormingVector {
    pub vector: Vec<Complex64>,
    pub achieved_norm: f64,
    pub is_radial: bool,
}

/// Tolerance on `‖(I − P_rad)v‖` for calling a vector radial.
pub const RADIAL_TOL: f64 = 1e-8;

/// A unit vector attaining `‖Γ‖`, radial whenever the radial block attains it.
pub fn norming_vector(op: &BranchingOperator) -> Result<NormingVector> {
    let m = op.materialize()?;
    let basis = RadialBasis::new(op.shape());
    let finish = |v: Vec<Complex64>| -> NormingVector {
        let achieved = linalg::norm(&m.matvec(&v));
        let is_radial = basis.complement_norm(&v) <= RADIAL_TOL;
        NormingVector {
            vector: v,
            achieved_norm: achieved,
            is_radial,
        }
    };

    let gram = m.gram();
    let eig = hermitian_eigen(&gram, true)?;
    let top = eig.values.last().copied().unwrap_or(0.0).max(0.0);

    if op.weights().is_uniform() {
        let r = radial_compress(op)?;
        let reig = hermitian_eigen(&r.gram(), true)?;
        let rtop = reig.values.last().copied().unwrap_or(0.0).max(0.0);
        if rtop.sqrt() >= top.sqrt() - 1e-10 {
            let coords = top_cluster_vector(&reig, 1e-10 * rtop.max(1.0));
            return Ok(finish(basis.lift(&coords)));
        }
    }
    let v = top_cluster_vector(&eig, 1e-10 * top.max(1.0));
    Ok(finish(v))
}

/// Unit vector in the top eigenspace (within `tol`), preferring the direction of `e_0`.
fn top_cluster_vector(eig: &linalg::HermitianEigen, tol: f64) -> Vec<Complex64> {
    let vecs = eig.vectors.as_ref().expect("eigenvectors requested");
    let n = eig.values.len();
    let top = eig.values[n - 1];
    let cluster: Vec<usize> = (0..n).filter(|&j| eig.values[j] >= top - tol).collect();
    // project e_0 onto the cluster
    let mut v = vec![ZERO; n];
    for &j in &cluster {
        let c = vecs[(0, j)].conj();
        for (i, vi) in v.iter_mut().enumerate() {
            *vi += vecs[(i, j)] * c;
        }
    }
    if linalg::norm(&v) < 1e-8 {
        v = vecs.column(n - 1);
    }
    normalize(&mut v);
    v
}

/// Result of comparing `‖T_n(f)‖` with `sup_{2 ≤ q ≤ q_max} ‖Γ_q^(n)[f]‖`.
#[derive(Clone, Debug, Serialize)]
pub struct CnSandwich {
    pub toeplitz_norm: f64,
    pub sup_branching_norm: f64,
    pub ratio: f64,
    /// `(q, ‖Γ_q^(n)[f]‖, method)` for each arity.
    pub per_q: Vec<(usize, f64, NormMethod)>,
}

impl CnSandwich {
    /// `‖T_n‖ − 1e−9 ≤ sup ≤ 3‖T_n‖ + 1e−9`.
    pub fn holds(&self) -> bool {
        self.toeplitz_norm - 1e-9 <= self.sup_branching_norm
            && self.sup_branching_norm <= 3.0 * self.toeplitz_norm + 1e-9
    }
}

pub fn cn_sandwich(f: &Symbol, n: usize, q_max: usize) -> Result<CnSandwich> {
    if q_max < 2 {
        return Err(Error::InvalidParameter(format!("q_max must be at least 2, got {q_max}")));
    }
    let t = toeplitz_norm(f, n)?;
    let mut per_q = Vec::with_capacity(q_max - 1);
    for q in 2..=q_max {
        let op = BranchingOperator::uniform(q, n, f.clone())?;
        let report = if op.dim() <= SANDWICH_DENSE_LIMIT.min(dense_cap()) {
            dense_norm(&op)?
        } else {
            operator_norm(
                &op,
                &PowerIteration {
                    tol: 1e-13,
                    ..PowerIteration::default()
                },
            )?
        };
        per_q.push((q, report.norm, report.method));
    }
    let sup = per_q.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(CnSandwich {
        toeplitz_norm: t,
        sup_branching_norm: sup,
        ratio: if t > 0.0 { sup / t } else { 1.0 },
        per_q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btop::WeightVector;
    use crate::random;
    use crate::symbol::SymbolClass;
    use std::f64::consts::PI;

    fn ex_counter(a: f64) -> Symbol {
        let b = (1.0 - a * a).sqrt();
        Symbol::real(&[(-1, -a), (0, b), (1, a)])
    }

    #[test]
    fn power_iteration_examples() {
        let cfg = PowerIteration::default();
        let id = BranchingOperator::uniform(2, 3, Symbol::constant(1.0)).unwrap();
        let r = operator_norm(&id, &cfg).unwrap();
        assert!(r.converged && (r.norm - 1.0).abs() < 1e-12);

        // the 3×3 counterexample matrix is normal with eigenvalues b ± ia, b
        let op = BranchingOperator::uniform(2, 1, ex_counter(0.6)).unwrap();
        let r = operator_norm(&op, &cfg).unwrap();
        assert!((r.norm - 1.0).abs() < 1e-9, "{}", r.norm);

        let cos = Symbol::real(&[(-1, 1.0), (1, 1.0)]);
        let op = BranchingOperator::uniform(2, 10, cos).unwrap();
        let r = operator_norm(&op, &PowerIteration { tol: 1e-13, ..cfg }).unwrap();
        let oracle = 2.0 * (PI / 12.0).cos();
        assert!((r.norm - oracle).abs() < 1e-8, "{} vs {}", r.norm, oracle);
        assert!(r.converged);

        let stubborn = operator_norm(&op, &PowerIteration { tol: 1e-15, max_iter: 3, ..cfg }).unwrap();
        assert!(!stubborn.converged);
        assert!(operator_norm(&op, &PowerIteration { tol: 0.0, ..cfg }).is_err());

        let zero = BranchingOperator::uniform(2, 3, Symbol::zero()).unwrap();
        assert_eq!(operator_norm(&zero, &cfg).unwrap().norm, 0.0);
    }

    #[test]
    fn report_json_schema() {
        let r = SpectralReport {
            norm: 1.5,
            method: NormMethod::DenseSvd,
            iterations: 0,
            residual: 0.0,
            converged: true,
        };
        assert_eq!(
            r.to_json(),
            r#"{"norm":1.5,"method":"DenseSvd","iterations":0,"residual":0.0}"#
        );
    }

    #[test]
    fn power_iteration_agrees_with_dense() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3] {
            for n in 1..=4 {
                let f = random::symbol(&mut rng, 2, SymbolClass::General);
                let op = BranchingOperator::uniform(q, n, f).unwrap();
                let p = operator_norm(&op, &PowerIteration::default()).unwrap();
                let d = dense_norm(&op).unwrap();
                assert!(p.converged);
                assert!((p.norm - d.norm).abs() <= 1e-7_f64.max(DEFAULT_TOL) * d.norm.max(1.0));
            }
        }
    }

    #[test]
    fn radial_compress_examples() {
        let shift = BranchingOperator::uniform(2, 2, Symbol::monomial(1, 1.0)).unwrap();
        let r = radial_compress(&shift).unwrap();
        let expect = CMatrix::from_fn(3, 3, |k, l| {
            if k == l + 1 { Complex64::new(1.0, 0.0) } else { ZERO }
        });
        assert!(r.max_abs_diff(&expect) < 1e-15);

        let c = Complex64::new(0.3, -1.2);
        let r = radial_compress(&BranchingOperator::uniform(3, 3, Symbol::constant(c)).unwrap()).unwrap();
        assert!(r.max_abs_diff(&CMatrix::identity(4).scale(c)) < 1e-15);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let f = random::symbol(&mut rng, 5, SymbolClass::General);
        let r = radial_compress(&BranchingOperator::uniform(3, 5, f.clone()).unwrap()).unwrap();
        assert!(r.max_abs_diff(&toeplitz(&f, 5).to_dense()) < 1e-12);

        let weighted = BranchingOperator::new(
            TreeShape::new(2, 2).unwrap(),
            WeightVector::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)]).unwrap(),
            f,
        )
        .unwrap();
        assert!(matches!(radial_compress(&weighted), Err(Error::NonUniformWeights)));
    }

    #[test]
    fn block_norm_examples() {
        let b = block_norms(&BranchingOperator::uniform(2, 3, Symbol::constant(1.0)).unwrap()).unwrap();
        assert!((b.radial - 1.0).abs() < 1e-12 && (b.complement - 1.0).abs() < 1e-12);
        assert!((b.total - 1.0).abs() < 1e-12);

        // counterexample configuration: radial block T_1(f) has norm 1, the
        // complement is spanned by δ_(1,0) − δ_(1,1) with eigenvalue b
        let b = block_norms(&BranchingOperator::uniform(2, 1, ex_counter(0.6)).unwrap()).unwrap();
        assert!((b.radial - 1.0).abs() < 1e-12);
        assert!((b.complement - 0.8).abs() < 1e-12);
        assert!((b.total - 1.0).abs() < 1e-12);
        assert!(b.cross_block < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for class in [SymbolClass::NonNegativeCoeffs, SymbolClass::Hermitian, SymbolClass::Analytic, SymbolClass::General] {
            for q in [2, 3] {
                let f = random::symbol(&mut rng, 3, class);
                let b = block_norms(&BranchingOperator::uniform(q, 4, f).unwrap()).unwrap();
                assert!(b.complement <= b.radial + 1e-9, "{class:?}: {b:?}");
                assert!(b.decomposition_gap() < 1e-9 && b.cross_block < 1e-12);
            }
        }
    }

    #[test]
    fn positivity_examples() {
        let fejer = Symbol::real(&[(-1, 0.5), (0, 1.0), (1, 0.5)]);
        for n in 1..=5 {
            let op = BranchingOperator::uniform(2, n, fejer.clone()).unwrap();
            assert!(certify_operator(&op, 1e-9).unwrap().is_psd);
        }
        let cos = Symbol::real(&[(-1, 1.0), (1, 1.0)]);
        let c = certify_operator(&BranchingOperator::uniform(2, 1, cos).unwrap(), 1e-9).unwrap();
        assert!(!c.is_psd && (c.min_eigenvalue + 1.0).abs() < 1e-12);
        let c = certify_operator(&BranchingOperator::uniform(3, 2, Symbol::constant(1.0)).unwrap(), 1e-9).unwrap();
        assert!((c.min_eigenvalue - 1.0).abs() < 1e-14);

        let skew = BranchingOperator::uniform(2, 1, Symbol::monomial(1, 1.0)).unwrap();
        assert!(matches!(certify_operator(&skew, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn singular_value_examples() {
        let sv = singular_values(&BranchingOperator::uniform(2, 3, Symbol::constant(1.0)).unwrap()).unwrap();
        assert!(sv.iter().all(|s| (s - 1.0).abs() < 1e-13));

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        for q in [2, 3] {
            let f = random::symbol(&mut rng, 3, SymbolClass::General);
            let shape = TreeShape::new(q, 3).unwrap();
            let plain = singular_values(&BranchingOperator::uniform(q, 3, f.clone()).unwrap()).unwrap();
            let weighted = BranchingOperator::new(shape, random::weights(&mut rng, q), f).unwrap();
            let sw = singular_values(&weighted).unwrap();
            let sg = singular_values(&weighted.gauge_transform(1.3)).unwrap();
            for ((a, b), c) in plain.iter().zip(&sw).zip(&sg) {
                assert!((a - b).abs() < 1e-9 && (b - c).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn norming_vector_examples() {
        let id = BranchingOperator::uniform(2, 3, Symbol::constant(1.0)).unwrap();
        let nv = norming_vector(&id).unwrap();
        assert!(nv.is_radial);
        let h0 = RadialBasis::new(id.shape()).vector(0);
        assert!(linalg::inner(&nv.vector, &h0).norm() > 1.0 - 1e-12);

        let cos = Symbol::real(&[(-1, 1.0), (1, 1.0)]);
        let op = BranchingOperator::uniform(2, 4, cos).unwrap();
        let nv = norming_vector(&op).unwrap();
        assert!(nv.is_radial);
        assert!((nv.achieved_norm - 2.0 * (PI / 6.0).cos()).abs() < 1e-10);

        // the radial block carries the norm of the counterexample too
        let op = BranchingOperator::uniform(2, 1, ex_counter(0.6)).unwrap();
        let nv = norming_vector(&op).unwrap();
        assert!(nv.is_radial && (nv.achieved_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sandwich_examples() {
        let s = cn_sandwich(&ex_counter(0.6), 1, 8).unwrap();
        assert!((s.toeplitz_norm - 1.0).abs() < 1e-12);
        assert!((s.sup_branching_norm - 1.0).abs() < 1e-9);
        assert!(s.holds());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(15);
        let f = random::symbol(&mut rng, 3, SymbolClass::Analytic);
        let s = cn_sandwich(&f, 3, 5).unwrap();
        assert!((s.ratio - 1.0).abs() < 1e-9);

        let s = cn_sandwich(&Symbol::constant(2.5), 2, 4).unwrap();
        assert!((s.toeplitz_norm - 2.5).abs() < 1e-12 && (s.ratio - 1.0).abs() < 1e-12);
        assert!(cn_sandwich(&Symbol::constant(1.0), 2, 1).is_err());
    }

    #[test]
    fn truncation_norms_grow_monotonically_below_sup_norm() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(16);
        for class in [SymbolClass::General, SymbolClass::Hermitian] {
            let f = random::symbol(&mut rng, 2, class);
            let sup = f.sup_norm(crate::symbol::DEFAULT_SUP_GRID).unwrap();
            let mut prev = 0.0;
            for n in 0..=5 {
                let norm = dense_norm(&BranchingOperator::uniform(2, n, f.clone()).unwrap()).unwrap().norm;
                assert!(norm >= prev - 1e-12);
                assert!(norm <= sup.value + sup.error_bound + 1e-12);
                prev = norm;
            }
        }
    }
}
