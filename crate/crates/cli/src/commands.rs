use std::fmt::Write as _;
use std::fs;

use btoep::btop::dense_cap;
use btoep::dpp::{build_kernel, samples_jsonl, sample, sssp_diagnostics, MIN_SAMPLES};
use btoep::spectral::{dense_norm, operator_norm, toeplitz_norm, PowerIteration};
use btoep::{BranchingOperator, Symbol, TreeShape};
use serde::Serialize;

use crate::args::{DppArgs, Format, NormArgs, SymbolSource, TableArgs};
use crate::output::{emit, with_newline, write_all_or_nothing, Failure, Outcome};

pub fn load_symbol(src: &SymbolSource) -> Outcome<Symbol> {
    let text = match (&src.symbol, &src.symbol_file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?,
        (None, None) => return Err(Failure::Input("one of --symbol or --symbol-file is required".into())),
        (Some(_), Some(_)) => return Err(Failure::Input("--symbol and --symbol-file are exclusive".into())),
    };
    Ok(Symbol::from_json(&text)?)
}

fn shape(q: usize, n: usize) -> Outcome<TreeShape> {
    if q == 0 {
        return Err(Failure::Input("--q must be at least 1".into()));
    }
    Ok(TreeShape::new(q, n)?)
}

pub fn norm(args: &NormArgs) -> Outcome<()> {
    let f = load_symbol(&args.symbol)?;
    shape(args.q, args.n)?;
    if !(args.tol > 0.0) || !args.tol.is_finite() {
        return Err(Failure::Input(format!("--tol must be positive, got {}", args.tol)));
    }
    if args.max_iter == 0 {
        return Err(Failure::Input("--max-iter must be positive".into()));
    }
    let op = BranchingOperator::uniform(args.q, args.n, f)?;
    let cfg = PowerIteration {
        tol: args.tol,
        max_iter: args.max_iter,
        seed: args.seed,
    };
    let report = operator_norm(&op, &cfg)?;
    let text = match args.format {
        Format::Json => with_newline(report.to_json()),
        Format::Csv => format!(
            "norm,method,iterations,residual\n{},{:?},{},{}\n",
            report.norm, report.method, report.iterations, report.residual
        ),
    };
    if !report.converged {
        // a non-converged estimate is shown but never saved
        print!("{text}");
        return Err(Failure::NoConvergence);
    }
    emit(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct DppSummary<'a> {
    q: usize,
    n: usize,
    samples: usize,
    seed: u64,
    generator: &'a str,
    passed: bool,
    max_z: f64,
    report: &'a btoep::dpp::SsspReport,
}

/// Diagnostics pass when every statistic lies within this many standard errors.
const DPP_Z_LIMIT: f64 = 4.0;

pub fn dpp(args: &DppArgs) -> Outcome<()> {
    let f = load_symbol(&args.symbol)?;
    let shape = shape(args.q, args.n)?;
    if args.samples < MIN_SAMPLES {
        return Err(Failure::Input(format!("--samples must be at least {MIN_SAMPLES}")));
    }
    if shape.vertex_count() > dense_cap() {
        return Err(Failure::CapExceeded(format!(
            "|B_n| = {} exceeds dense cap {}",
            shape.vertex_count(),
            dense_cap()
        )));
    }
    if !f.is_hermitian() {
        return Err(Failure::KernelRejected("kernel symbol must be Hermitian".into()));
    }
    let kernel = build_kernel(&f, args.q, args.n)?;
    let report = sssp_diagnostics(&kernel, args.samples, args.seed)?;
    let max_z = report.max_z();
    let summary = DppSummary {
        q: args.q,
        n: args.n,
        samples: args.samples,
        seed: args.seed,
        generator: report.generator,
        passed: max_z <= DPP_Z_LIMIT,
        max_z,
        report: &report,
    };
    let text = match args.format {
        Format::Json => with_newline(serde_json::to_string(&summary).expect("summary serialization")),
        Format::Csv => report.to_csv(),
    };
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        // the diagnostics ran on seeds seed, seed+1, …; replaying them is deterministic
        let draws: Vec<_> = (0..args.samples)
            .map(|s| sample(&kernel, args.seed.wrapping_add(s as u64)))
            .collect();
        write_all_or_nothing(&[
            (dir.join("samples.jsonl"), samples_jsonl(&draws)),
            (dir.join("diagnostics.csv"), report.to_csv()),
        ])?;
    }
    print!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    q: usize,
    n: usize,
    branching_norm: f64,
    toeplitz_norm: f64,
    gap: f64,
}

pub fn table(args: &TableArgs) -> Outcome<()> {
    let f = load_symbol(&args.symbol)?;
    if args.q_max == 0 {
        return Err(Failure::Input("--q-max must be at least 1".into()));
    }
    let cap = dense_cap();
    let n_max = match args.n_max {
        Some(n) => n,
        None => {
            let mut n = 0;
            while TreeShape::new(args.q_max, n + 1).is_ok_and(|s| s.vertex_count() <= cap) {
                n += 1;
            }
            n
        }
    };
    // every cell is validated before any norm is computed
    for q in 1..=args.q_max {
        let s = TreeShape::new(q, n_max).map_err(|e| Failure::CapExceeded(e.to_string()))?;
        if s.vertex_count() > cap {
            return Err(Failure::CapExceeded(format!(
                "|B_{n_max}(T_{q})| = {} exceeds dense cap {cap}",
                s.vertex_count()
            )));
        }
    }
    let mut rows = Vec::new();
    for q in 1..=args.q_max {
        for n in 0..=n_max {
            let b = dense_norm(&BranchingOperator::uniform(q, n, f.clone())?)?.norm;
            let t = toeplitz_norm(&f, n)?;
            rows.push(TableRow {
                q,
                n,
                branching_norm: b,
                toeplitz_norm: t,
                gap: b - t,
            });
        }
    }
    let text = match args.format {
        Format::Csv => {
            let mut out = String::from("q,n,branching_norm,toeplitz_norm,gap\n");
            for r in &rows {
                writeln!(out, "{},{},{},{},{}", r.q, r.n, r.branching_norm, r.toeplitz_norm, r.gap).unwrap();
            }
            out
        }
        Format::Json => with_newline(serde_json::to_string(&rows).expect("table serialization")),
    };
    emit(args.out.as_deref(), &text)
}
