//! `spectra`: differential spectra of power functions from the shell.
//!
//! Exit codes: 0 success, 1 a computed identity or method comparison
//! disagreed, 2 invalid input.

mod report;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use spectra_core::c_diff::{
    c_spectrum_bruteforce, c_uniformity_bound, cddt_row, minus1_spectrum_closed_form_from,
};
use spectra_core::char_sums::{lambda_report, CharSumError, CharSumReport, Method};
use spectra_core::field::{FieldCtx, FieldOptions, DEFAULT_CHI_TABLE_THRESHOLD};
use spectra_core::power_diff::{
    default_exponent, spectrum_bruteforce, spectrum_closed_form_from, ClosedFormInputs,
};
use spectra_core::verify::{sweep_fields, verify_field, VerifyOptions, VerifyReport};

use report::{
    csv_rows, text, CSpectrumSection, CharSumSection, FieldRecord, Format, SpectrumSection,
    SweepSummary, CSV_HEADER,
};

const AFTER_HELP: &str = "\
CSV output uses long format with the fixed columns
    p,n,q,d,section,key,value,detail
where section is one of field, char_sums, spectrum, c_spectrum, check.

Elements (--c) are written as comma-separated coefficients c0,c1,...,c(n-1)
or as a bare, possibly negative, integer in the prime subfield.";

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field characteristic (odd prime).
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    /// Exponent; defaults to (q-3)/2.
    #[arg(long, global = true)]
    d: Option<u64>,
    /// Multiplier c for the c-differential row; defaults to -1.
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    /// Largest field order visited by `sweep`.
    #[arg(long, global = true, default_value_t = 2000)]
    qmax: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, global = true, env = "SPECTRA_THREADS", default_value_t = 0)]
    threads: usize,
    /// Precompute a square table when q is at most this value.
    #[arg(long, global = true, default_value_t = DEFAULT_CHI_TABLE_THRESHOLD)]
    chi_table_threshold: u64,
    /// Character-sum method for `charsum`.
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Also check c = 0 in the all-c uniformity bound.
    #[arg(long, global = true)]
    include_c_zero: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Differential spectrum, brute force and closed form.
    Spectrum,
    /// c-differential spectrum (default c = -1).
    Cspectrum,
    /// The character sums lambda1, lambda2 and lambda.
    Charsum,
    /// Run every identity and closed-form check for one field.
    Verify,
    /// Verify every field q = p^n <= qmax with q = 3 (mod 4).
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Recurrence,
    Both,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Invalid(String),
    Disagreement(String),
}

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Spectrum => cmd_spectrum(&cli, &mut out),
        Command::Cspectrum => cmd_cspectrum(&cli, &mut out),
        Command::Charsum => cmd_charsum(&cli, &mut out),
        Command::Verify => cmd_verify(&cli, &mut out),
        Command::Sweep => cmd_sweep(&cli, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn field(cli: &Cli) -> Result<FieldCtx, Failure> {
    let p = cli.p.ok_or_else(|| Failure::invalid("--p is required"))?;
    build_field(cli, p, cli.n)
}

fn build_field(cli: &Cli, p: u64, n: usize) -> Result<FieldCtx, Failure> {
    let options = FieldOptions {
        chi_table_threshold: cli.chi_table_threshold,
    };
    FieldCtx::with_options(p, n, None, options).map_err(Failure::invalid)
}

fn exponent(cli: &Cli, ctx: &FieldCtx) -> Result<u64, Failure> {
    let d = cli.d.unwrap_or_else(|| default_exponent(ctx.q()));
    if d == 0 {
        return Err(Failure::invalid(format!(
            "exponent must be at least 1 (q = {})",
            ctx.q()
        )));
    }
    Ok(d)
}

fn direct_lambdas(ctx: &FieldCtx) -> Result<CharSumReport, Failure> {
    lambda_report(ctx, Method::Direct).map_err(Failure::invalid)
}

fn base_record(ctx: &FieldCtx, d: u64, lambdas: &CharSumReport) -> FieldRecord {
    FieldRecord {
        p: ctx.p(),
        n: ctx.n(),
        q: ctx.q(),
        d,
        chi5: ctx.chi(&ctx.embed(5)).map(|c| c.value()).unwrap_or(0),
        lambda1: lambdas.lambda1,
        lambda2: lambdas.lambda2,
        lambda: lambdas.lambda,
        char_sums: None,
        spectrum: None,
        c_spectrum: None,
        uniformity: None,
        checks: None,
        passed: None,
    }
}

fn emit(out: &mut impl Write, format: Format, rec: &FieldRecord, header: bool) -> Outcome {
    let io_err = |e: io::Error| Failure::Invalid(e.to_string());
    match format {
        Format::Json => {
            let line = serde_json::to_string(rec).map_err(Failure::invalid)?;
            writeln!(out, "{line}").map_err(io_err)
        }
        Format::Csv => {
            if header {
                writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
            }
            for row in csv_rows(rec) {
                writeln!(out, "{row}").map_err(io_err)?;
            }
            Ok(())
        }
        Format::Text => write!(out, "{}", text(rec)).map_err(io_err),
    }
}

fn cmd_spectrum(cli: &Cli, out: &mut impl Write) -> Outcome {
    let ctx = field(cli)?;
    let d = exponent(cli, &ctx)?;
    let lambdas = direct_lambdas(&ctx)?;
    let brute = spectrum_bruteforce(&ctx, d).map_err(|e| Failure::Disagreement(e.to_string()))?;
    let inputs = ClosedFormInputs::with_lambda(&ctx, lambdas.lambda);
    let closed = (d == default_exponent(ctx.q()))
        .then(|| spectrum_closed_form_from(&inputs).ok())
        .flatten();
    let agreement = closed.as_ref().is_none_or(|c| c.same_values(&brute));
    let mut rec = base_record(&ctx, d, &lambdas);
    rec.uniformity = Some(brute.uniformity);
    rec.spectrum = Some(SpectrumSection {
        classification: brute.classification(),
        omega: brute.omegas,
        closed_form: closed.map(|c| c.omegas),
        agreement,
    });
    emit(out, cli.format, &rec, true)?;
    if agreement {
        Ok(())
    } else {
        Err(Failure::Disagreement(
            "closed-form spectrum disagrees with brute force".into(),
        ))
    }
}

fn cmd_cspectrum(cli: &Cli, out: &mut impl Write) -> Outcome {
    let ctx = field(cli)?;
    let d = exponent(cli, &ctx)?;
    let c = match &cli.c {
        Some(s) => ctx.parse_elem(s).map_err(Failure::invalid)?,
        None => ctx.embed(-1),
    };
    let lambdas = direct_lambdas(&ctx)?;
    let row = cddt_row(&ctx, d, &c).map_err(Failure::invalid)?;
    let brute = c_spectrum_bruteforce(&ctx, d, &c).map_err(Failure::invalid)?;
    let q = ctx.q();
    let default_d = d == default_exponent(q);
    let closed = if default_d && c == ctx.embed(-1) && q % 4 == 3 && q > 3 {
        let inputs = ClosedFormInputs::with_lambda(&ctx, lambdas.lambda);
        minus1_spectrum_closed_form_from(&ctx, &inputs).ok()
    } else {
        None
    };
    let agreement = closed.as_ref().is_none_or(|cf| cf.same_values(&brute));
    let special = c == ctx.one() || c == ctx.embed(-1);
    let bound = (default_d && !special).then(|| c_uniformity_bound(q));
    let bound_ok = bound.map(|b| row.uniformity <= b);
    let mut rec = base_record(&ctx, d, &lambdas);
    rec.uniformity = Some(row.uniformity);
    rec.c_spectrum = Some(CSpectrumSection {
        c: c.to_string(),
        omega: brute.omegas,
        closed_form: closed.map(|cf| cf.omegas),
        agreement,
        row_max: row.row_max,
        gcd_floor: row.gcd_floor,
        bound,
        bound_ok,
    });
    emit(out, cli.format, &rec, true)?;
    if !agreement {
        return Err(Failure::Disagreement(
            "closed-form (-1)-spectrum disagrees with brute force".into(),
        ));
    }
    if bound_ok == Some(false) {
        return Err(Failure::Disagreement(format!(
            "c-differential uniformity {} exceeds the bound {}",
            row.uniformity,
            bound.unwrap_or_default()
        )));
    }
    Ok(())
}

fn cmd_charsum(cli: &Cli, out: &mut impl Write) -> Outcome {
    let ctx = field(cli)?;
    let d = cli.d.unwrap_or_else(|| default_exponent(ctx.q()));
    let run = |m: Method| -> Result<CharSumReport, Failure> {
        lambda_report(&ctx, m).map_err(|e| match e {
            CharSumError::HasseViolation { .. } | CharSumError::RecurrenceOverflow { .. } => {
                Failure::Disagreement(e.to_string())
            }
            other => Failure::invalid(other),
        })
    };
    let (primary, agreement) = match cli.method {
        MethodArg::Direct => (run(Method::Direct)?, None),
        MethodArg::Recurrence => (run(Method::Recurrence)?, None),
        MethodArg::Both => {
            let direct = run(Method::Direct)?;
            let rec = run(Method::Recurrence)?;
            let agree = direct.same_values(&rec);
            (direct, Some(agree))
        }
    };
    let hasse_ok = primary.hasse_holds(ctx.q());
    let mut rec = base_record(&ctx, d, &primary);
    rec.char_sums = Some(CharSumSection {
        method: match cli.method {
            MethodArg::Direct => "direct",
            MethodArg::Recurrence => "recurrence",
            MethodArg::Both => "both",
        }
        .to_string(),
        hasse_margin1: primary.hasse_margin1,
        hasse_margin2: primary.hasse_margin2,
        hasse_ok,
        agreement,
    });
    emit(out, cli.format, &rec, true)?;
    if agreement == Some(false) {
        return Err(Failure::Disagreement(
            "direct summation and recurrence disagree".into(),
        ));
    }
    if !hasse_ok {
        return Err(Failure::Disagreement("Hasse bound violated".into()));
    }
    Ok(())
}

fn verify_options(cli: &Cli) -> VerifyOptions {
    VerifyOptions {
        include_c_zero: cli.include_c_zero,
        ..VerifyOptions::default()
    }
}

fn verify_record(ctx: &FieldCtx, report: &VerifyReport) -> Result<FieldRecord, Failure> {
    let lambdas = direct_lambdas(ctx)?;
    let mut rec = base_record(ctx, report.d, &lambdas);
    rec.attach_verify(report);
    Ok(rec)
}

fn log_timings(report: &VerifyReport) {
    for c in &report.checks {
        log_line(&format!(
            "q={} {} {:.3}s",
            report.q,
            c.name,
            c.elapsed.as_secs_f64()
        ));
    }
}

fn log_line(msg: &str) {
    if std::env::var_os("SPECTRA_TIMINGS").is_some() {
        eprintln!("{msg}");
    }
}

fn cmd_verify(cli: &Cli, out: &mut impl Write) -> Outcome {
    let ctx = field(cli)?;
    let report = verify_field(&ctx, &verify_options(cli)).map_err(Failure::invalid)?;
    log_timings(&report);
    emit(out, cli.format, &verify_record(&ctx, &report)?, true)?;
    match report.first_failure() {
        None => Ok(()),
        Some(check) => Err(Failure::Disagreement(format!(
            "check {} failed: {} vs {}",
            check.name, check.lhs, check.rhs
        ))),
    }
}

fn cmd_sweep(cli: &Cli, out: &mut impl Write) -> Outcome {
    if cli.qmax < 7 {
        return Err(Failure::invalid("--qmax must be at least 7"));
    }
    let options = verify_options(cli);
    let mut failed = Vec::new();
    let fields = sweep_fields(cli.qmax);
    let io_err = |e: io::Error| Failure::Invalid(e.to_string());
    let run = |p: u64, n: usize| -> Result<(FieldCtx, VerifyReport), Failure> {
        let started = Instant::now();
        let ctx = build_field(cli, p, n)?;
        let report = verify_field(&ctx, &options).map_err(Failure::invalid)?;
        log_line(&format!(
            "q={} {:.3}s",
            ctx.q(),
            started.elapsed().as_secs_f64()
        ));
        Ok((ctx, report))
    };
    // Fields are verified in parallel; results are buffered and emitted in
    // order of q as soon as every smaller field has been written.
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| -> Outcome {
        scope.spawn(|| {
            fields
                .par_iter()
                .enumerate()
                .for_each_with(tx, |tx, (i, &(p, n))| {
                    let _ = tx.send((i, run(p, n)));
                });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some(result) = pending.remove(&next) {
                emit_sweep_line(cli, out, &mut failed, next == 0, result?)?;
                next += 1;
            }
        }
        Ok(())
    })?;
    let summary = SweepSummary {
        summary: true,
        qmax: cli.qmax,
        fields: fields.len(),
        passed: failed.is_empty(),
        failed: failed.clone(),
    };
    match cli.format {
        Format::Json => {
            let line = serde_json::to_string(&summary).map_err(Failure::invalid)?;
            writeln!(out, "{line}").map_err(io_err)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "0,0,0,0,summary,passed,{},fields={} failed={:?}",
                summary.passed, summary.fields, summary.failed
            )
            .map_err(io_err)?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} fields, {} failed{}",
                summary.fields,
                failed.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(": {failed:?}")
                }
            )
            .map_err(io_err)?;
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("fields failed: {failed:?}")))
    }
}

fn emit_sweep_line(
    cli: &Cli,
    out: &mut impl Write,
    failed: &mut Vec<u64>,
    first: bool,
    (ctx, report): (FieldCtx, VerifyReport),
) -> Outcome {
    let io_err = |e: io::Error| Failure::Invalid(e.to_string());
    if !report.passed() {
        failed.push(ctx.q());
    }
    let rec = verify_record(&ctx, &report)?;
    let (p, n) = (ctx.p(), ctx.n());
    match cli.format {
        Format::Text => {
            let status = if report.passed() { "pass" } else { "FAIL" };
            let detail = report
                .first_failure()
                .map(|c| format!("  first failure: {}", c.name))
                .unwrap_or_default();
            writeln!(
                out,
                "q={:<6} p={:<5} n={:<2} lambda={:<6} {status} ({} checks){detail}",
                ctx.q(),
                p,
                n,
                rec.lambda,
                report.checks.len()
            )
            .map_err(io_err)?;
        }
        format => emit(out, format, &rec, first)?,
    }
    out.flush().map_err(io_err)
}
