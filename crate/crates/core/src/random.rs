//! Seeded generators for test symbols, weights and vectors.

use num_complex::Complex64;
use rand::Rng;

use crate::btop::{OperatorTuple, WeightVector};
use crate::linalg::CMatrix;
use crate::symbol::{Symbol, SymbolClass};

fn gauss_pair<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random complex vector with entries uniform in the unit square.
pub fn vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim).map(|_| gauss_pair(rng)).collect()
}

/// Random symbol supported in `[−radius, radius]` that satisfies `class`.
///
/// `General` draws unconstrained complex coefficients.
pub fn symbol<R: Rng + ?Sized>(rng: &mut R, radius: usize, class: SymbolClass) -> Symbol {
    let r = radius as i64;
    let pairs: Vec<(i64, Complex64)> = match class {
        SymbolClass::General => (-r..=r).map(|k| (k, gauss_pair(rng))).collect(),
        SymbolClass::NonNegativeCoeffs => (-r..=r)
            .map(|k| (k, Complex64::new(rng.gen_range(0.0..1.0), 0.0)))
            .collect(),
        SymbolClass::Analytic => (0..=r).map(|k| (k, gauss_pair(rng))).collect(),
        SymbolClass::Hermitian => {
            let mut out = vec![(0, Complex64::new(rng.gen_range(-1.0..1.0), 0.0))];
            for k in 1..=r {
                let c = gauss_pair(rng);
                out.push((k, c));
                out.push((-k, c.conj()));
            }
            out
        }
    };
    Symbol::from_coeffs(pairs).expect("distinct indices")
}

/// Random point of the unit sphere in `ℂ^q`.
pub fn weights<R: Rng + ?Sized>(rng: &mut R, q: usize) -> WeightVector {
    loop {
        let v = vector(rng, q);
        if crate::linalg::norm(&v) > 1e-3 {
            return WeightVector::normalized(v).expect("nonzero vector");
        }
    }
}

/// Random `q`-tuple of `d×d` matrices rescaled so that `‖Σ A_k* A_k‖ = target`.
pub fn operator_tuple<R: Rng + ?Sized>(rng: &mut R, q: usize, d: usize, target: f64) -> OperatorTuple {
    let mats: Vec<CMatrix> = (0..q)
        .map(|_| CMatrix::from_fn(d, d, |_, _| gauss_pair(rng)))
        .collect();
    let raw = OperatorTuple::new(mats).expect("square matrices");
    let norm = raw.row_contraction_norm().expect("small eigenproblem");
    raw.scaled((target / norm).sqrt())
}
