//! Invariant suites behind `btoep verify`.

use std::fmt::Write as _;

use btoep::btop::dense_cap;
use btoep::linalg::{self, hermitian_eigen};
use btoep::random;
use btoep::spectral::{cn_sandwich, RadialBasis};
use btoep::{toeplitz, BranchingOperator, CMatrix, Complex64, Symbol, SymbolClass, TreeShape, WeightVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Case, Format, VerifyArgs};
use crate::output::{emit, with_newline, Failure, Outcome};

const FUZZ: f64 = 1e-6;

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    residual: f64,
    tolerance: f64,
    trials: usize,
    failures: usize,
}

#[derive(Serialize)]
struct Report {
    suite: &'static str,
    seed: u64,
    q_max: usize,
    n_max: usize,
    fuzz_entry: bool,
    passed: bool,
    checks: Vec<Check>,
}

/// Accumulates a residual over trials; a trial fails when its residual exceeds the tolerance.
struct Tally {
    name: String,
    tolerance: f64,
    residual: f64,
    trials: usize,
    failures: usize,
}

impl Tally {
    fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Tally {
            name: name.into(),
            tolerance,
            residual: 0.0,
            trials: 0,
            failures: 0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.trials += 1;
        self.residual = self.residual.max(residual);
        if !(residual <= self.tolerance) {
            self.failures += 1;
        }
    }

    fn finish(self) -> Check {
        Check {
            passed: self.failures == 0 && self.trials > 0,
            name: self.name,
            residual: self.residual,
            tolerance: self.tolerance,
            trials: self.trials,
            failures: self.failures,
        }
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    q_max: usize,
    n_max: usize,
    trials: usize,
    fuzz: bool,
}

impl Ctx {
    /// Dense operator, with the last diagonal entry nudged under `--fuzz-entry`.
    fn dense(&self, op: &BranchingOperator) -> Outcome<CMatrix> {
        let mut m = op.materialize()?;
        if self.fuzz {
            let k = m.rows() - 1;
            m[(k, k)] += Complex64::new(FUZZ, 0.0);
        }
        Ok(m)
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> {
        let (q_max, n_max) = (self.q_max, self.n_max);
        (2..=q_max).flat_map(move |q| (1..=n_max).map(move |n| (q, n)))
    }

    fn symbol(&mut self, class: SymbolClass) -> Symbol {
        random::symbol(&mut self.rng, 3, class)
    }
}

fn radial_compression(ctx: &mut Ctx) -> Outcome<Check> {
    let mut t = Tally::new("radial_compression", 1e-12);
    for _ in 0..ctx.trials {
        let f = ctx.symbol(SymbolClass::General);
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            let op = BranchingOperator::uniform(q, n, f.clone())?;
            let m = ctx.dense(&op)?;
            let basis = RadialBasis::new(op.shape());
            let cols: Vec<Vec<Complex64>> = (0..=n).map(|l| basis.coordinates(&m.matvec(&basis.vector(l)))).collect();
            t.record(CMatrix::from_columns(&cols).max_abs_diff(&toeplitz(&f, n).to_dense()));
        }
    }
    Ok(t.finish())
}

fn block_decomposition(ctx: &mut Ctx) -> Outcome<Vec<Check>> {
    let mut cross = Tally::new("block_cross_terms", 1e-12);
    let mut gap = Tally::new("block_norm_max", 1e-9);
    for _ in 0..ctx.trials {
        let f = ctx.symbol(SymbolClass::General);
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            let op = BranchingOperator::uniform(q, n, f.clone())?;
            let m = ctx.dense(&op)?;
            let ma = m.adjoint();
            let basis = RadialBasis::new(op.shape());
            let leak = (0..=n)
                .map(|l| {
                    let h = basis.vector(l);
                    basis.complement_norm(&m.matvec(&h)).max(basis.complement_norm(&ma.matvec(&h)))
                })
                .fold(0.0, f64::max);
            cross.record(leak);
            let cols: Vec<Vec<Complex64>> = (0..=n).map(|l| basis.coordinates(&m.matvec(&basis.vector(l)))).collect();
            let radial = linalg::spectral_norm(&CMatrix::from_columns(&cols))?;
            let complement = linalg::spectral_norm(&basis.compress_complement(&m))?;
            let total = linalg::spectral_norm(&m)?;
            gap.record((total - radial.max(complement)).abs());
        }
    }
    Ok(vec![cross.finish(), gap.finish()])
}

fn class_of(case: Case) -> SymbolClass {
    match case {
        Case::A1 => SymbolClass::NonNegativeCoeffs,
        Case::A2 => SymbolClass::Hermitian,
        Case::A3 => SymbolClass::Analytic,
    }
}

/// One trial per symbol; it passes when the equality holds on every (q, n) cell.
fn case_equality(ctx: &mut Ctx, case: Case) -> Outcome<Check> {
    let mut t = Tally::new(format!("norm_equality_{case:?}"), 1e-8);
    for _ in 0..ctx.trials {
        let f = ctx.symbol(class_of(case));
        let mut worst: f64 = 0.0;
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            let g = linalg::spectral_norm(&ctx.dense(&BranchingOperator::uniform(q, n, f.clone())?)?)?;
            let tn = linalg::spectral_norm(&toeplitz(&f, n).to_dense())?;
            worst = worst.max((g - tn).abs() / (1.0 + tn));
        }
        t.record(worst);
    }
    Ok(t.finish())
}

fn multiplicativity(ctx: &mut Ctx) -> Outcome<Check> {
    let mut t = Tally::new("interior_multiplicativity", 1e-10);
    for trial in 0..ctx.trials {
        let dq = 1 + trial % 3;
        let p = random::symbol(&mut ctx.rng, trial % (4 - dq), SymbolClass::General);
        let qs = random::symbol(&mut ctx.rng, dq, SymbolClass::Analytic);
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            if n < dq {
                continue;
            }
            let a = random::weights(&mut ctx.rng, q);
            let shape = TreeShape::new(q, n)?;
            let mk = |f: &Symbol| BranchingOperator::new(shape, a.clone(), f.clone());
            let lhs = ctx.dense(&mk(&p)?)?.matmul(&ctx.dense(&mk(&qs)?)?);
            let rhs = ctx.dense(&mk(&p.product(&qs))?)?;
            let gens = shape.generations();
            let mut worst: f64 = 0.0;
            for u in 0..lhs.rows() {
                for v in (0..lhs.cols()).filter(|&v| gens[v] + qs.degree() <= n) {
                    worst = worst.max((lhs[(u, v)] - rhs[(u, v)]).norm());
                }
            }
            t.record(worst);
        }
    }
    Ok(t.finish())
}

fn isometry(ctx: &mut Ctx) -> Outcome<Check> {
    let mut t = Tally::new("truncated_isometry", 1e-14);
    for (q, n) in ctx.cells().collect::<Vec<_>>() {
        let op = BranchingOperator::uniform(q, n, Symbol::monomial(1, 1.0))?;
        let g = ctx.dense(&op)?.gram();
        let inner = op.dim() - op.shape().generation_size(n);
        let oracle = CMatrix::from_fn(g.rows(), g.cols(), |i, j| {
            Complex64::new(if i == j && i < inner { 1.0 } else { 0.0 }, 0.0)
        });
        t.record(g.max_abs_diff(&oracle));
    }
    Ok(t.finish())
}

fn positivity(ctx: &mut Ctx) -> Outcome<Vec<Check>> {
    let mut psd = Tally::new("fejer_positivity", 1e-9);
    for order in 1..=ctx.n_max.max(1) {
        let f = Symbol::fejer_kernel(order);
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            let m = ctx.dense(&BranchingOperator::uniform(q, n, f.clone())?)?;
            let min = hermitian_eigen(&m, false)?.values[0];
            psd.record((-min).max(0.0));
        }
    }
    // the sign-changing symbol must be caught; residual is how far it stays from failing
    let mut neg = Tally::new("sign_changing_rejected", 0.0);
    for q in 2..=ctx.q_max {
        let m = ctx.dense(&BranchingOperator::uniform(q, 1, Symbol::real(&[(-1, 1.0), (1, 1.0)]))?)?;
        let min = hermitian_eigen(&m, false)?.values[0];
        neg.record(if min < -1e-9 { 0.0 } else { min + 1e-9 });
    }
    Ok(vec![psd.finish(), neg.finish()])
}

fn weighted_equivalence(ctx: &mut Ctx) -> Outcome<Check> {
    let mut t = Tally::new("weighted_singular_values", 1e-9);
    for _ in 0..ctx.trials {
        let f = ctx.symbol(SymbolClass::General);
        for (q, n) in ctx.cells().collect::<Vec<_>>() {
            let a = random::weights(&mut ctx.rng, q);
            let shape = TreeShape::new(q, n)?;
            let sa = linalg::singular_values(&ctx.dense(&BranchingOperator::new(shape, a, f.clone())?)?)?;
            let sq = linalg::singular_values(&ctx.dense(&BranchingOperator::new(shape, WeightVector::uniform(q), f.clone())?)?)?;
            t.record(sa.iter().zip(&sq).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        }
    }
    Ok(t.finish())
}

fn sandwich(ctx: &mut Ctx) -> Outcome<Check> {
    let mut t = Tally::new("cn_sandwich", 1e-9);
    for _ in 0..ctx.trials {
        let f = ctx.symbol(SymbolClass::General);
        for n in 1..=ctx.n_max {
            let s = cn_sandwich(&f, n, ctx.q_max.max(2))?;
            let below = (s.toeplitz_norm - s.sup_branching_norm).max(0.0);
            let above = (s.sup_branching_norm - 3.0 * s.toeplitz_norm).max(0.0);
            t.record(below.max(above));
        }
    }
    Ok(t.finish())
}

pub fn verify(args: &VerifyArgs) -> Outcome<()> {
    if args.q_max < 2 {
        return Err(Failure::Input("--q-max must be at least 2".into()));
    }
    if args.n_max == 0 {
        return Err(Failure::Input("--n-max must be at least 1".into()));
    }
    if args.trials == Some(0) {
        return Err(Failure::Input("--trials must be positive".into()));
    }
    let largest = TreeShape::new(args.q_max, args.n_max).map_err(|e| Failure::CapExceeded(e.to_string()))?;
    // the singular-value check works on a dilation of twice the size
    let needed = 2 * largest.vertex_count();
    if needed > dense_cap() {
        return Err(Failure::CapExceeded(format!(
            "dense size {needed} for q = {}, n = {} exceeds cap {}",
            args.q_max,
            args.n_max,
            dense_cap()
        )));
    }
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(args.seed),
        q_max: args.q_max,
        n_max: args.n_max,
        trials: args.trials.unwrap_or(if args.case.is_some() { 50 } else { 3 }),
        fuzz: args.fuzz_entry,
    };
    let (suite, checks) = match args.case {
        Some(case) => (
            match case {
                Case::A1 => "A1",
                Case::A2 => "A2",
                Case::A3 => "A3",
            },
            vec![case_equality(&mut ctx, case)?],
        ),
        None => {
            let mut checks = vec![radial_compression(&mut ctx)?];
            checks.extend(block_decomposition(&mut ctx)?);
            for case in [Case::A1, Case::A2, Case::A3] {
                checks.push(case_equality(&mut ctx, case)?);
            }
            checks.push(multiplicativity(&mut ctx)?);
            checks.push(isometry(&mut ctx)?);
            checks.extend(positivity(&mut ctx)?);
            checks.push(weighted_equivalence(&mut ctx)?);
            checks.push(sandwich(&mut ctx)?);
            ("default", checks)
        }
    };
    let passed = checks.iter().all(|c| c.passed);
    let report = Report {
        suite,
        seed: args.seed,
        q_max: args.q_max,
        n_max: args.n_max,
        fuzz_entry: args.fuzz_entry,
        passed,
        checks,
    };
    let text = match args.format {
        Format::Json => with_newline(serde_json::to_string(&report).expect("report serialization")),
        Format::Csv => {
            let mut out = String::from("check,passed,residual,tolerance,trials,failures\n");
            for c in &report.checks {
                writeln!(out, "{},{},{},{},{},{}", c.name, c.passed, c.residual, c.tolerance, c.trials, c.failures).unwrap();
            }
            out
        }
    };
    emit(args.out.as_deref(), &text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::VerifyFailed)
    }
}
