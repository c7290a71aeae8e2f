//! Determinantal point processes on `B_n(T_q)` and their stationarity
//! diagnostics.
//!
//! Samples are drawn by the spectral method: every eigenvector of `K` is
//! kept independently with probability equal to its eigenvalue, and the
//! resulting projection process is sampled one point at a time.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::btop::BranchingOperator;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::symbol::Symbol;
use crate::tree::{TreeShape, Vertex};

/// Name of the generator behind [`sample`].
pub const GENERATOR: &str = "ChaCha20Rng";

/// Eigenvalues this far outside `[0, 1]` are clamped; anything further is rejected.
pub const CLAMP_WINDOW: f64 = 1e-8;

pub const HERMITIAN_TOL: f64 = 1e-10;

pub const MIN_SAMPLES: usize = 1000;

#[derive(Clone, Debug)]
pub struct DppKernel {
    shape: TreeShape,
    matrix: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl DppKernel {
    /// Eigendecompose a Hermitian contraction on `ℂ^{B_n}`.
    pub fn from_matrix(shape: TreeShape, matrix: CMatrix) -> Result<Self> {
        let dim = shape.vertex_count();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.rows(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let eig = hermitian_eigen(&matrix, true)?;
        let mut eigenvalues = eig.values;
        for l in eigenvalues.iter_mut() {
            if *l < -CLAMP_WINDOW || *l > 1.0 + CLAMP_WINDOW {
                return Err(Error::KernelRejected { eigenvalue: *l });
            }
            *l = l.clamp(0.0, 1.0);
        }
        Ok(DppKernel {
            shape,
            matrix,
            eigenvalues,
            eigenvectors: eig.vectors.expect("requested eigenvectors"),
        })
    }

    pub fn shape(&self) -> TreeShape {
        self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Expected number of points, `tr K`.
    pub fn expected_cardinality(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Principal minor of `K` on the given linear indices.
    pub fn correlation(&self, idx: &[usize]) -> f64 {
        determinant(&self.matrix.principal(idx)).re
    }

    /// `K` restricted to the ray from the root to `leaf`, in generation order.
    pub fn ray_restriction(&self, leaf: Vertex) -> Result<CMatrix> {
        Ok(self.matrix.principal(&ray(&self.shape, leaf)?))
    }
}

/// Linear indices of the ancestors of `leaf` (root first, `leaf` last).
fn ray(shape: &TreeShape, leaf: Vertex) -> Result<Vec<usize>> {
    let mut path = Vec::with_capacity(leaf.generation + 1);
    let mut v = Some(leaf);
    while let Some(u) = v {
        path.push(shape.linear_index(u)?);
        v = u.parent(shape.q());
    }
    path.reverse();
    Ok(path)
}

/// Kernel `Γ_q^(n)[f]` of the point process induced by a `[0,1]`-valued symbol.
pub fn build_kernel(f: &Symbol, q: usize, n: usize) -> Result<DppKernel> {
    if !f.is_hermitian() {
        return Err(Error::InvalidSymbol("kernel symbol must be Hermitian".into()));
    }
    let op = BranchingOperator::uniform(q, n, f.clone())?;
    DppKernel::from_matrix(op.shape(), op.materialize()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DppSample {
    /// Occupied vertices as ascending linear indices.
    pub occupied: Vec<usize>,
    pub rng_seed: u64,
    pub generator: &'static str,
}

#[derive(Serialize)]
struct SampleLine<'a> {
    seed: u64,
    occupied: &'a [usize],
}

impl DppSample {
    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn vertices(&self, shape: &TreeShape) -> Vec<Vertex> {
        self.occupied
            .iter()
            .map(|&i| shape.vertex_at(i).expect("sample inside the tree"))
            .collect()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&SampleLine {
            seed: self.rng_seed,
            occupied: &self.occupied,
        })
        .expect("sample serialization")
    }
}

/// One draw; the same seed always yields the same sample.
pub fn sample(kernel: &DppKernel, seed: u64) -> DppSample {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dim = kernel.shape.vertex_count();

    let mut basis: Vec<Vec<Complex64>> = kernel
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(_, &l)| rng.gen::<f64>() < l)
        .map(|(i, _)| kernel.eigenvectors.column(i))
        .collect();

    let mut occupied = Vec::with_capacity(basis.len());
    while !basis.is_empty() {
        let k = basis.len() as f64;
        let weights: Vec<f64> = (0..dim)
            .map(|j| basis.iter().map(|v| v[j].norm_sqr()).sum::<f64>() / k)
            .collect();
        let total: f64 = weights.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut point = dim - 1;
        for (j, &w) in weights.iter().enumerate() {
            if w > 0.0 && u < w {
                point = j;
                break;
            }
            u -= w;
        }
        // guard against landing on a zero-weight tail through rounding
        while weights[point] == 0.0 && point > 0 {
            point -= 1;
        }
        occupied.push(point);

        let mut pivot = 0;
        for (c, v) in basis.iter().enumerate() {
            if v[point].norm() > basis[pivot][point].norm() {
                pivot = c;
            }
        }
        let p = basis.swap_remove(pivot);
        let pp = p[point];
        for v in basis.iter_mut() {
            let s = v[point] / pp;
            v.iter_mut().zip(&p).for_each(|(x, y)| *x -= y * s);
            v[point] = Complex64::new(0.0, 0.0);
        }
        gram_schmidt(&mut basis);
    }
    occupied.sort_unstable();
    DppSample {
        occupied,
        rng_seed: seed,
        generator: GENERATOR,
    }
}

fn gram_schmidt(basis: &mut [Vec<Complex64>]) {
    for i in 0..basis.len() {
        let (done, rest) = basis.split_at_mut(i);
        let v = &mut rest[0];
        for u in done.iter() {
            let c = crate::linalg::inner(v, u);
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= y * c);
        }
        let n = crate::linalg::norm(v);
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &CMatrix) -> Complex64 {
    let n = m.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))
            .expect("nonempty range");
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let s = a[r][c] / a[c][c];
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= t * s;
            }
        }
    }
    det
}

/// Largest `|det K_T − Π K(σ,σ)|` over all pairwise incomparable `T` of the given size.
pub fn factorization_defect(kernel: &DppKernel, size: usize) -> f64 {
    let shape = kernel.shape;
    let verts: Vec<Vertex> = shape.vertices().collect();
    let mut worst = 0.0_f64;
    let mut chosen = Vec::with_capacity(size);
    fn walk(
        kernel: &DppKernel,
        verts: &[Vertex],
        start: usize,
        size: usize,
        chosen: &mut Vec<usize>,
        worst: &mut f64,
    ) {
        if chosen.len() == size {
            let diag: Complex64 = chosen.iter().map(|&i| kernel.matrix[(i, i)]).product();
            let det = determinant(&kernel.matrix.principal(chosen));
            *worst = worst.max((det - diag).norm());
            return;
        }
        for i in start..verts.len() {
            let ok = chosen
                .iter()
                .all(|&j| !kernel.shape.comparability(verts[i], verts[j]).is_comparable());
            if ok {
                chosen.push(i);
                walk(kernel, verts, i + 1, size, chosen, worst);
                chosen.pop();
            }
        }
    }
    walk(kernel, &verts, 0, size, &mut chosen, &mut worst);
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: f64,
}

impl Estimate {
    /// `|empirical − analytic| / stderr`; zero when both agree exactly.
    pub fn z_score(&self) -> f64 {
        let diff = (self.empirical - self.analytic).abs();
        if diff == 0.0 {
            0.0
        } else if self.stderr == 0.0 {
            f64::INFINITY
        } else {
            diff / self.stderr
        }
    }

    pub fn within(&self, k: f64) -> bool {
        self.z_score() <= k
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SsspReport {
    pub samples: usize,
    pub seed: u64,
    pub generator: &'static str,
    /// Per-generation mean occupation.
    pub one_point: Vec<Estimate>,
    /// Comparable pairs at distance `d`.
    pub ray_pair_corr: BTreeMap<usize, Estimate>,
    pub incomparable_pair_corr: Estimate,
    /// Largest z-score of a single ray's pair statistic, per distance.
    pub across_ray_max_z: BTreeMap<usize, f64>,
    /// Largest z-score of a single vertex's occupation frequency.
    pub vertex_max_z: f64,
    pub cardinality: Estimate,
}

impl SsspReport {
    pub fn max_z(&self) -> f64 {
        self.rows().iter().map(|(_, e)| e.z_score()).fold(0.0, f64::max)
    }

    fn rows(&self) -> Vec<(String, Estimate)> {
        let mut rows: Vec<(String, Estimate)> = self
            .one_point
            .iter()
            .enumerate()
            .map(|(g, e)| (format!("one_point_g{g}"), *e))
            .collect();
        rows.extend(self.ray_pair_corr.iter().map(|(d, e)| (format!("ray_pair_d{d}"), *e)));
        rows.push(("incomparable_pair".into(), self.incomparable_pair_corr));
        rows.push(("cardinality".into(), self.cardinality));
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic,analytic,empirical,stderr\n");
        for (name, e) in self.rows() {
            writeln!(out, "{name},{},{},{}", e.analytic, e.empirical, e.stderr).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}

/// Running mean and standard error of i.i.d. per-sample values.
#[derive(Default, Clone, Copy)]
struct Moments {
    n: usize,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn estimate(&self, analytic: f64) -> Estimate {
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        Estimate {
            analytic,
            empirical: mean,
            stderr: (var / n).sqrt(),
        }
    }
}

fn pair_intensity(k: &CMatrix, i: usize, j: usize) -> f64 {
    k[(i, i)].re * k[(j, j)].re - k[(i, j)].norm_sqr()
}

/// Monte Carlo check of the stationarity signatures of the process.
///
/// Sample `s` is drawn with seed `seed + s`. Each
/// statistic is averaged over its vertex or pair class within a sample,
/// and these per-sample averages are the i.i.d. units for the standard error.
pub fn sssp_diagnostics(kernel: &DppKernel, samples: usize, seed: u64) -> Result<SsspReport> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: samples,
            min: MIN_SAMPLES,
        });
    }
    let shape = kernel.shape;
    let q = shape.q();
    let n = shape.depth();
    let dim = shape.vertex_count();
    let k = &kernel.matrix;
    let gens = shape.generations();
    let verts: Vec<Vertex> = shape.vertices().collect();

    // ancestor at distance d of every vertex, by linear index
    let anc: Vec<Vec<usize>> = (0..=n)
        .map(|d| {
            verts
                .iter()
                .map(|v| match v.ancestor(q, d) {
                    Some(a) if d > 0 => shape.linear_index(a).unwrap(),
                    _ => usize::MAX,
                })
                .collect()
        })
        .collect();

    let mut gen_analytic = vec![0.0; n + 1];
    for i in 0..dim {
        gen_analytic[gens[i]] += k[(i, i)].re;
    }
    for (g, a) in gen_analytic.iter_mut().enumerate() {
        *a /= shape.generation_size(g) as f64;
    }

    let mut ray_analytic = vec![0.0; n + 1];
    let mut ray_count = vec![0usize; n + 1];
    for d in 1..=n {
        for i in 0..dim {
            let a = anc[d][i];
            if a != usize::MAX {
                ray_analytic[d] += pair_intensity(k, a, i);
                ray_count[d] += 1;
            }
        }
        ray_analytic[d] /= ray_count[d] as f64;
    }

    let comparable: usize = ray_count.iter().sum();
    let incomparable = dim * (dim - 1) / 2 - comparable;
    let mut inc_analytic = 0.0;
    if incomparable > 0 {
        for i in 0..dim {
            for j in i + 1..dim {
                if !shape.comparability(verts[i], verts[j]).is_comparable() {
                    inc_analytic += pair_intensity(k, i, j);
                }
            }
        }
        inc_analytic /= incomparable as f64;
    }

    // per-ray statistics: rays are indexed by their leaf
    let leaves = shape.generation_range(n);
    let ray_of = |leaf: usize| -> Vec<usize> {
        let mut path = vec![leaf];
        let mut v = leaf;
        while let Some(a) = anc.get(1).map(|r| r[v]).filter(|&a| a != usize::MAX) {
            path.push(a);
            v = a;
        }
        path.reverse();
        path
    };
    let rays: Vec<Vec<usize>> = leaves.clone().map(ray_of).collect();
    let per_ray_analytic: Vec<Vec<f64>> = rays
        .iter()
        .map(|p| {
            (0..=n)
                .map(|d| {
                    if d == 0 {
                        return 0.0;
                    }
                    let m = p.len() - d;
                    (0..m).map(|t| pair_intensity(k, p[t], p[t + d])).sum::<f64>() / m as f64
                })
                .collect()
        })
        .collect();

    let mut one = vec![Moments::default(); n + 1];
    let mut pair = vec![Moments::default(); n + 1];
    let mut inc = Moments::default();
    let mut card = Moments::default();
    let mut per_ray = vec![vec![Moments::default(); n + 1]; rays.len()];
    let mut hits = vec![0usize; dim];

    let mut occ = vec![false; dim];
    for s in 0..samples {
        let draw = sample(kernel, seed.wrapping_add(s as u64));
        occ.iter_mut().for_each(|o| *o = false);
        for &i in &draw.occupied {
            occ[i] = true;
            hits[i] += 1;
        }
        let mut per_gen = vec![0usize; n + 1];
        for &i in &draw.occupied {
            per_gen[gens[i]] += 1;
        }
        for g in 0..=n {
            one[g].push(per_gen[g] as f64 / shape.generation_size(g) as f64);
        }
        let mut comparable_hits = 0usize;
        for d in 1..=n {
            let c = draw
                .occupied
                .iter()
                .filter(|&&i| anc[d][i] != usize::MAX && occ[anc[d][i]])
                .count();
            comparable_hits += c;
            pair[d].push(c as f64 / ray_count[d] as f64);
        }
        let kk = draw.len();
        if incomparable > 0 {
            let c = kk * kk.saturating_sub(1) / 2 - comparable_hits;
            inc.push(c as f64 / incomparable as f64);
        }
        card.push(kk as f64);
        for (r, p) in rays.iter().enumerate() {
            for d in 1..=n {
                let m = p.len() - d;
                let c = (0..m).filter(|&t| occ[p[t]] && occ[p[t + d]]).count();
                per_ray[r][d].push(c as f64 / m as f64);
            }
        }
    }

    let mut across_ray_max_z = BTreeMap::new();
    for d in 1..=n {
        let z = per_ray
            .iter()
            .zip(&per_ray_analytic)
            .map(|(m, a)| m[d].estimate(a[d]).z_score())
            .fold(0.0, f64::max);
        across_ray_max_z.insert(d, z);
    }

    let ns = samples as f64;
    let vertex_max_z = (0..dim)
        .map(|i| {
            let p = k[(i, i)].re;
            Estimate {
                analytic: p,
                empirical: hits[i] as f64 / ns,
                stderr: (p * (1.0 - p) / ns).sqrt(),
            }
            .z_score()
        })
        .fold(0.0, f64::max);

    Ok(SsspReport {
        samples,
        seed,
        generator: GENERATOR,
        one_point: (0..=n).map(|g| one[g].estimate(gen_analytic[g])).collect(),
        ray_pair_corr: (1..=n).map(|d| (d, pair[d].estimate(ray_analytic[d]))).collect(),
        incomparable_pair_corr: if incomparable > 0 {
            inc.estimate(inc_analytic)
        } else {
            Estimate {
                analytic: 0.0,
                empirical: 0.0,
                stderr: 0.0,
            }
        },
        across_ray_max_z,
        vertex_max_z,
        cardinality: card.estimate(kernel.expected_cardinality()),
    })
}

/// Samples as JSON lines `{"seed": s, "occupied": [...]}`.
pub fn samples_jsonl(samples: &[DppSample]) -> String {
    let mut out = String::new();
    for s in samples {
        out.push_str(&s.to_json_line());
        out.push('\n');
    }
    out
}
