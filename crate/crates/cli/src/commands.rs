use std::fmt::Write as _;
use std::io::Write as _;

use qes_core::bethe::{solve_with, BetheSolution, SolveOptions, Tolerances};
use qes_core::limits::{limit_report, reduced_bae_check, LimitCase, LimitTag};
use qes_core::models::ModelDocument;
use qes_core::operator::build_matrix;
use qes_core::wavefun::{
    evaluate_grid, is_positive, phi0_squared, schrodinger_residual, zero_mode_residual, GridSpec, SCHRODINGER_TOL,
    ZERO_MODE_TOL,
};
use qes_core::Spec;
use serde::Serialize;

use crate::args::{Command, Format, OutputArgs};
use crate::report::{
    pair, GridDoc, LimitsDoc, Meta, SolutionOut, SolveDoc, VerifiedSolution, VerifyDoc, WavefunctionChecks, VERSION,
};
use crate::CliError;

/// Whether every check of a command passed.
pub enum Outcome {
    Pass,
    Fail,
}

impl From<bool> for Outcome {
    fn from(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn build_spec(doc: &ModelDocument) -> Result<Spec, CliError> {
    doc.to_spec().map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("writing stdout: {e}")))
        }
    }
}

fn emit_json<D: Serialize>(out: &OutputArgs, doc: &D) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn json_only(out: &OutputArgs, command: &str) -> Result<(), CliError> {
    match out.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{command} has no CSV output"))),
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Solve { model, tol, seed, out } => {
            let doc = model.document(None, &[])?;
            let spec = build_spec(&doc)?;
            let opts = SolveOptions { tolerances: tol.resolve()?, seed: (*seed).into() };
            let sols = solve_with(&spec, &opts)?;
            let solutions: Vec<SolutionOut> =
                sols.iter().enumerate().map(|(i, s)| SolutionOut::new(i, s, &opts.tolerances)).collect();
            let pass = solutions.iter().all(|s| s.pass);
            match out.format {
                Format::Json => {
                    let meta = Meta { version: VERSION, tolerances: Some(opts.tolerances), seed: Some(opts.seed) };
                    emit_json(out, &SolveDoc { spec: ModelDocument::from_spec(&spec), solutions, pass, meta })?;
                }
                Format::Csv => emit(out, &solutions_csv(&solutions))?,
            }
            Ok(pass.into())
        }
        Command::Verify { model, tol, points, out } => {
            json_only(out, "verify")?;
            let doc = model.document(None, &[])?;
            let spec = build_spec(&doc)?;
            let tolerances = tol.resolve()?;
            let sols = solve_with(&spec, &SolveOptions { tolerances, ..SolveOptions::default() })?;
            let vdoc = verify(&spec, &sols, &tolerances, *points)?;
            let pass = vdoc.pass;
            emit_json(out, &vdoc)?;
            Ok(pass.into())
        }
        Command::Limits { case, model, large, out } => {
            json_only(out, "limits")?;
            let tag: LimitTag = case.parse().map_err(|e: qes_core::Error| CliError::Usage(e.to_string()))?;
            let doc = model.document(Some(tag.base_family()), &limit_defaults(tag, *large))?;
            let spec = build_spec(&doc)?;
            let case = LimitCase::new(tag, spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = limit_report(&case, *large).map_err(|e| match e {
                qes_core::Error::InvalidParameter(m) => CliError::Usage(m),
                other => other.into(),
            })?;
            let reduced = case.restricted_spec().ok().map(|_| reduced_bae_check(&case)).transpose()?;
            let pass = report.pass && reduced.as_ref().is_none_or(|r| r.pass);
            let ldoc = LimitsDoc {
                case: tag.name(),
                spec: ModelDocument::from_spec(&spec),
                report,
                reduced_bae: reduced,
                pass,
                meta: Meta { version: VERSION, tolerances: None, seed: None },
            };
            emit_json(out, &ldoc)?;
            Ok(pass.into())
        }
        Command::Grid { model, tol, points, solution, out } => {
            let doc = model.document(None, &[])?;
            let spec = build_spec(&doc)?;
            let tolerances = tol.resolve()?;
            let sols = solve_with(&spec, &SolveOptions { tolerances, ..SolveOptions::default() })?;
            let sol = sols.get(*solution).ok_or_else(|| {
                CliError::Usage(format!("--solution {solution} out of range, {} solutions", sols.len()))
            })?;
            let grid = GridSpec::uniform(&spec, *points)?;
            let rows = evaluate_grid(sol, &grid)?;
            let pass = rows.iter().all(|r| r.residual <= SCHRODINGER_TOL);
            match out.format {
                Format::Json => {
                    let gdoc = GridDoc {
                        spec: ModelDocument::from_spec(&spec),
                        solution: *solution,
                        eigenvalue: pair(sol.e_formula),
                        rows,
                        pass,
                        meta: Meta { version: VERSION, tolerances: Some(tolerances), seed: None },
                    };
                    emit_json(out, &gdoc)?;
                }
                Format::Csv => {
                    let mut text = String::from("x_re,x_im,phi0sq_re,phi0sq_im,psi_re,psi_im,residual\n");
                    for r in &rows {
                        let _ = writeln!(
                            text,
                            "{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                            r.x[0], r.x[1], r.phi0sq[0], r.phi0sq[1], r.psi[0], r.psi[1], r.residual
                        );
                    }
                    emit(out, &text)?;
                }
            }
            Ok(pass.into())
        }
        Command::DumpMatrix { model, out } => {
            json_only(out, "dump-matrix")?;
            let doc = model.document(None, &[])?;
            let spec = build_spec(&doc)?;
            emit_json(out, &build_matrix(&spec)?.dump())?;
            Ok(Outcome::Pass)
        }
    }
}

fn solutions_csv(solutions: &[SolutionOut]) -> String {
    let mut text = String::from("index,e_re,e_im,e_oracle_re,e_oracle_im,discrepancy,residual_max,pass\n");
    for s in solutions {
        let _ = writeln!(
            text,
            "{},{:?},{:?},{:?},{:?},{:?},{:?},{}",
            s.index,
            s.eigenvalue[0],
            s.eigenvalue[1],
            s.eigenvalue_oracle[0],
            s.eigenvalue_oracle[1],
            s.discrepancy,
            s.residual_max,
            s.pass
        );
    }
    text
}

/// Parameters a limit case fixes by itself: the zeros of exact cases and the
/// divergent parameters of asymptotic ones.
fn limit_defaults(tag: LimitTag, large: f64) -> Vec<(&'static str, f64)> {
    match tag {
        LimitTag::ChFromMp => vec![("beta", 0.0)],
        LimitTag::MpFromMp => vec![("a2", large)],
        LimitTag::ChFromSextic => vec![("a", large)],
        LimitTag::MpFromSextic => vec![("a", large), ("b", large)],
        LimitTag::Wilson => vec![("f", large)],
        LimitTag::Cdh => vec![("e", large), ("f", large)],
        LimitTag::Aw => vec![("e", 0.0)],
        LimitTag::QUniversal => vec![("d", 0.0), ("e", 0.0)],
    }
}

fn verify(spec: &Spec, sols: &[BetheSolution<f64>], tol: &Tolerances, points: usize) -> Result<VerifyDoc, CliError> {
    let grid = GridSpec::uniform(spec, points)?;
    let mut zero_mode: f64 = 0.0;
    let mut positive = true;
    for &x in &grid.points {
        zero_mode = zero_mode.max(zero_mode_residual(spec, x)?);
        positive &= is_positive(phi0_squared(spec, x)?);
    }
    let mut solutions = Vec::with_capacity(sols.len());
    let mut schrodinger: f64 = 0.0;
    for (i, s) in sols.iter().enumerate() {
        let mut worst: f64 = 0.0;
        for &x in &grid.points {
            worst = worst.max(schrodinger_residual(spec, s, x)?);
        }
        schrodinger = schrodinger.max(worst);
        solutions.push(VerifiedSolution { solution: SolutionOut::new(i, s, tol), schrodinger_residual_max: worst });
    }
    let pass = solutions.iter().all(|s| s.solution.pass)
        && zero_mode <= ZERO_MODE_TOL
        && positive
        && schrodinger <= SCHRODINGER_TOL;
    Ok(VerifyDoc {
        spec: ModelDocument::from_spec(spec),
        solutions,
        checks: WavefunctionChecks {
            points: grid.points.len(),
            zero_mode_residual_max: zero_mode,
            phi0_positive: positive,
            schrodinger_residual_max: schrodinger,
        },
        pass,
        meta: Meta { version: VERSION, tolerances: Some(*tol), seed: None },
    })
}
