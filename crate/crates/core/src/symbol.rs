//! Finitely supported Fourier symbols `f ~ Σ ĥ(k) e^{ikθ}`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid size used by [`Symbol::sup_norm`] callers that have no preference.
pub const DEFAULT_SUP_GRID: usize = 4096;

/// A trigonometric polynomial given by its nonzero Fourier coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Symbol {
    coeffs: BTreeMap<i64, Complex64>,
}

/// Structural classes relevant to finite-section norm equalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymbolClass {
    /// Every coefficient is real and nonnegative.
    NonNegativeCoeffs,
    /// `ĥ(−k) = conj(ĥ(k))`.
    Hermitian,
    /// No negative frequencies.
    Analytic,
    General,
}

/// Grid estimate of `‖f‖_∞` together with an a priori bound on its deficit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNorm {
    /// Largest modulus found on the grid; never exceeds the true sup norm.
    pub value: f64,
    /// `‖f‖_∞ − value ≤ error_bound`.
    pub error_bound: f64,
}

#[derive(Serialize, Deserialize)]
struct SymbolJson {
    coeffs: Vec<(i64, f64, f64)>,
}

impl Symbol {
    pub fn zero() -> Self {
        Symbol::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Symbol::monomial(0, c)
    }

    pub fn monomial(k: i64, c: impl Into<Complex64>) -> Self {
        let mut s = Symbol::zero();
        s.insert(k, c.into());
        s
    }

    /// Builds a symbol from `(k, ĥ(k))` pairs; a repeated `k` is an error.
    pub fn from_coeffs<I, C>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<Complex64>,
    {
        let mut seen = BTreeSet::new();
        let mut s = Symbol::zero();
        for (k, c) in pairs {
            let c = c.into();
            if !seen.insert(k) {
                return Err(Error::InvalidSymbol(format!("duplicate coefficient index {k}")));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidSymbol(format!("non-finite coefficient at {k}")));
            }
            s.insert(k, c);
        }
        Ok(s)
    }

    /// Real coefficients `(k, ĥ(k))`; panics on duplicates, for literals in code.
    pub fn real(pairs: &[(i64, f64)]) -> Self {
        Symbol::from_coeffs(pairs.iter().copied()).expect("valid literal symbol")
    }

    fn insert(&mut self, k: i64, c: Complex64) {
        if c != Complex64::new(0.0, 0.0) {
            self.coeffs.insert(k, c);
        } else {
            self.coeffs.remove(&k);
        }
    }

    /// `ĥ(k)`, zero off the support.
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    /// Largest `|k|` with a nonzero coefficient (0 for the zero symbol).
    pub fn support_radius(&self) -> usize {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Highest frequency present (0 if none is positive).
    pub fn degree(&self) -> usize {
        self.coeffs
            .keys()
            .next_back()
            .map(|&k| k.max(0) as usize)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in increasing order of frequency.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Dense coefficient window `ĥ(−n..=n)`, index `k + n`.
    pub fn window(&self, n: usize) -> Vec<Complex64> {
        let n = n as i64;
        (-n..=n).map(|k| self.coeff(k)).collect()
    }

    /// Symbol of `f̄`: coefficient at `k` is `conj(ĥ(−k))`.
    pub fn conjugate(&self) -> Symbol {
        Symbol {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c.conj())).collect(),
        }
    }

    /// Cauchy product of coefficient sequences.
    pub fn product(&self, other: &Symbol) -> Symbol {
        let mut acc: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&j, &a) in &self.coeffs {
            for (&l, &b) in &other.coeffs {
                *acc.entry(j + l).or_default() += a * b;
            }
        }
        let mut s = Symbol::zero();
        for (k, c) in acc {
            s.insert(k, c);
        }
        s
    }

    /// Convolution with the `N`-th Fejér kernel: `ĥ(k)·(1 − |k|/(N+1))` for `|k| ≤ N`.
    pub fn fejer_smooth(&self, order: usize) -> Symbol {
        let width = order as f64 + 1.0;
        let mut s = Symbol::zero();
        for (&k, &c) in &self.coeffs {
            let a = k.unsigned_abs() as usize;
            if a <= order {
                s.insert(k, c * (1.0 - a as f64 / width));
            }
        }
        s
    }

    /// Coefficient window of the `N`-th Fejér kernel itself (the smoothed Dirac mass).
    pub fn fejer_kernel(order: usize) -> Symbol {
        let n = order as i64;
        let width = order as f64 + 1.0;
        let mut s = Symbol::zero();
        for k in -n..=n {
            s.insert(k, Complex64::new(1.0 - k.unsigned_abs() as f64 / width, 0.0));
        }
        s
    }

    /// The symbol `f_t` with coefficients `ĥ(k)·e^{−ikt}`.
    pub fn rotate(&self, t: f64) -> Symbol {
        let mut s = Symbol::zero();
        for (&k, &c) in &self.coeffs {
            s.insert(k, c * Complex64::from_polar(1.0, -(k as f64) * t));
        }
        s
    }

    /// `f(θ) = Σ ĥ(k) e^{ikθ}`.
    pub fn evaluate(&self, theta: f64) -> Complex64 {
        self.iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * theta))
            .sum()
    }

    /// Grid estimate of `‖f‖_∞` over `grid_points` equispaced angles.
    ///
    /// With `x = π·m/G` (`m` the support radius, `G` the grid size) and the
    /// Bernstein bound on `|f|²`, the nearest grid point to a maximiser
    /// satisfies `|f(θ_j)| ≥ ‖f‖_∞ (1 − 2x²)`. The reported `error_bound` is
    /// `value · 2x² / (1 − 2x²)`, or infinity when `2x² ≥ 1`.
    pub fn sup_norm(&self, grid_points: usize) -> Result<SupNorm> {
        let m = self.support_radius();
        let required = 4 * m + 16;
        if grid_points < required {
            return Err(Error::GridTooCoarse {
                grid: grid_points,
                required,
            });
        }
        let step = 2.0 * PI / grid_points as f64;
        let value = (0..grid_points)
            .map(|j| self.evaluate(j as f64 * step).norm())
            .fold(0.0, f64::max);
        let x = PI * m as f64 / grid_points as f64;
        let c = 2.0 * x * x;
        let error_bound = if c < 1.0 {
            value * c / (1.0 - c)
        } else {
            f64::INFINITY
        };
        Ok(SupNorm { value, error_bound })
    }

    /// Every class whose defining property holds (exact comparisons).
    pub fn classify(&self) -> BTreeSet<SymbolClass> {
        let mut out = BTreeSet::new();
        if self.iter().all(|(_, c)| c.im == 0.0 && c.re >= 0.0) {
            out.insert(SymbolClass::NonNegativeCoeffs);
        }
        if self.is_hermitian() {
            out.insert(SymbolClass::Hermitian);
        }
        if self.coeffs.keys().all(|&k| k >= 0) {
            out.insert(SymbolClass::Analytic);
        }
        out.insert(SymbolClass::General);
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.iter().all(|(k, c)| self.coeff(-k) == c.conj())
    }

    pub fn from_json(text: &str) -> Result<Symbol> {
        let raw: SymbolJson = serde_json::from_str(text)?;
        Symbol::from_coeffs(
            raw.coeffs
                .into_iter()
                .map(|(k, re, im)| (k, Complex64::new(re, im))),
        )
    }

    pub fn to_json(&self) -> String {
        let raw = SymbolJson {
            coeffs: self.iter().map(|(k, c)| (k, c.re, c.im)).collect(),
        };
        serde_json::to_string(&raw).expect("symbol serialization")
    }
}
