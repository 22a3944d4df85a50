//! Subcommand definitions and dispatch.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ehrhart_core::arith::int;
use ehrhart_core::dedekind::dedekind_sum_from_fourier;
use ehrhart_core::singularity::sections;
use ehrhart_core::{
    count_simplex_eq, dedekind_sum_fast, dedekind_sum_naive, delta_at_projective_vertex,
    delta_table_for_local_type, ehrhart_quasipolynomial, fourier_dedekind_sum, h0_from_genus,
    ledger_check, numerical_adjunction, popoviciu_2d, popoviciu_3d, DedekindArgs,
    FourierDedekindArgs, OracleCount, PartitionPolyInputs, QuotientType, Rational, WeightVector,
};
use serde::Serialize;
use thiserror::Error;

use crate::formats::{
    parse_rational_string, rational_string, verdict_parts, LedgerFile, LedgerReportJson,
    PeriodicJson, QuasiPolynomialJson,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// What a successful run concluded; maps onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Mismatch,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Mismatch => 1,
        }
    }
}

pub const EXIT_INVALID_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// Exact Ehrhart quasi-polynomials of weighted projective triangles.
#[derive(Debug, Parser)]
#[command(name = "ehrhart", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_weights(s: &str) -> Result<WeightVector, String> {
    let parts = parse_int_list(s)?;
    let [w0, w1, w2] = parts[..] else {
        return Err(format!("expected three comma-separated weights, got {s:?}"));
    };
    WeightVector::new(w0, w1, w2).map_err(|e| e.to_string())
}

fn parse_type(s: &str) -> Result<QuotientType, String> {
    let parts = parse_int_list(s)?;
    let [d, a, b] = parts[..] else {
        return Err(format!("expected d,a,b, got {s:?}"));
    };
    QuotientType::new(d, a, b).map_err(|e| e.to_string())
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| format!("{p:?} is not an integer"))
        })
        .collect()
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational_string(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form Ehrhart quasi-polynomial of the triangle with the given weights.
    Quasipoly {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
    },
    /// Lattice-point count at one dilation via the quasi-polynomial.
    Eval {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        /// Also enumerate and compare.
        #[arg(long)]
        check: bool,
    },
    /// Lattice-point count by enumeration only.
    Count {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Compare formula and enumeration for every degree in [0, dmax].
    Verify {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
        #[arg(long)]
        dmax: u32,
    },
    /// Classical Dedekind sum s(a, b).
    Dedekind {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Cross-check against the direct sum and the root-of-unity form.
        #[arg(long)]
        check: bool,
    },
    /// Fourier-Dedekind sum s_n(a_1, ..., a_m; b).
    Fourier {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(
            long = "a-list",
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        a_list: Vec<i64>,
        #[arg(long)]
        b: i64,
    },
    /// Popoviciu-type closed form p_{a,b,1}(t), or p_{a,b,c}(t) with --c.
    Popoviciu {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        c: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// Correction table k -> Delta(k) of a quotient type X(d; a, b).
    DeltaTable {
        #[arg(long = "type", value_parser = parse_type)]
        local_type: QuotientType,
    },
    /// Correction at one vertex of P^2_w for curves of the given degree.
    Delta {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        vertex: u8,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Check Delta = delta - kappa on a local-invariant ledger file.
    LedgerCheck {
        #[arg(long)]
        file: PathBuf,
    },
    /// Genus from h^0 and the sum of the kappa invariants.
    Adjunction {
        #[arg(long, value_parser = parse_weights)]
        weights: WeightVector,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long = "kappa-sum", value_parser = parse_rational_arg, allow_hyphen_values = true)]
        kappa_sum: Rational,
    },
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::from)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn csv_rows<I, R>(out: &mut impl Write, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(header).map_err(std::io::Error::from)?;
    for row in rows {
        writer.write_record(row).map_err(std::io::Error::from)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ValueJson<'a> {
    command: &'a str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<String>,
}

/// Prints a single exact value in the requested format.
fn emit_value(
    out: &mut impl Write,
    format: OutputFormat,
    command: &str,
    value: &Rational,
    check: Option<&Rational>,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Text => {
            writeln!(out, "{value}")?;
            if let Some(c) = check {
                writeln!(out, "check: {c}")?;
            }
        }
        OutputFormat::Json => json_line(
            out,
            &ValueJson {
                command,
                value: rational_string(value),
                check: check.map(rational_string),
            },
        )?,
        OutputFormat::Csv => {
            let mut row = vec![command.to_string(), rational_string(value)];
            row.extend(check.map(rational_string));
            let header: &[&str] = if check.is_some() {
                &["command", "value", "check"]
            } else {
                &["command", "value"]
            };
            csv_rows(out, header, [row])?;
        }
    }
    Ok(())
}

fn oracle(w: &WeightVector, degree: i64) -> OracleCount {
    let [a, b, c] = w.weights();
    count_simplex_eq(a, b, c, degree)
}

/// Executes one command. Results go to `out`; the caller reports errors.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Quasipoly { weights } => {
            let qp = ehrhart_quasipolynomial(weights);
            match format {
                OutputFormat::Json => json_line(out, &QuasiPolynomialJson::new(weights, &qp))?,
                OutputFormat::Text => {
                    let c = qp.coefficients();
                    writeln!(out, "weights: {weights}")?;
                    writeln!(out, "period: {}", qp.period())?;
                    writeln!(out, "c2: {}", c[2])?;
                    writeln!(out, "c1: {}", c[1])?;
                    writeln!(out, "c0: {}", c[0])?;
                }
                OutputFormat::Csv => {
                    let c = qp.coefficients();
                    let rows = (0..qp.period() as i64).map(|r| {
                        vec![
                            r.to_string(),
                            rational_string(c[0].evaluate(r)),
                            rational_string(c[1].evaluate(r)),
                            rational_string(c[2].evaluate(r)),
                        ]
                    });
                    csv_rows(out, &["residue", "c0", "c1", "c2"], rows)?;
                }
            }
            Ok(Outcome::Success)
        }
        Command::Eval {
            weights,
            degree,
            check,
        } => {
            let value = ehrhart_quasipolynomial(weights).evaluate(*degree);
            let counted = check.then(|| oracle(weights, *degree));
            let counted_rat = counted.map(|c| int(c.value() as i64));
            emit_value(out, format, "eval", &value, counted_rat.as_ref())?;
            match counted {
                Some(OracleCount::Points(n)) if value != int(n as i64) => {
                    writeln!(
                        err,
                        "mismatch at degree {degree}: formula {value}, enumeration {n}"
                    )?;
                    Ok(Outcome::Mismatch)
                }
                Some(OracleCount::NegativeDilation) => {
                    writeln!(
                        err,
                        "note: degree {degree} is negative; enumeration not compared"
                    )?;
                    Ok(Outcome::Success)
                }
                _ => Ok(Outcome::Success),
            }
        }
        Command::Count { weights, degree } => {
            let counted = oracle(weights, *degree);
            if counted.is_negative_dilation() {
                writeln!(err, "note: negative dilation {degree}; no points counted")?;
            }
            emit_value(out, format, "count", &int(counted.value() as i64), None)?;
            Ok(Outcome::Success)
        }
        Command::Verify { weights, dmax } => verify(weights, i64::from(*dmax), format, out, err),
        Command::Dedekind { a, b, check } => {
            let args = DedekindArgs::new(*a, *b).map_err(CliError::invalid)?;
            let value = dedekind_sum_fast(args);
            if !check {
                emit_value(out, format, "dedekind", &value, None)?;
                return Ok(Outcome::Success);
            }
            let naive = dedekind_sum_naive(args);
            emit_value(out, format, "dedekind", &value, Some(&naive))?;
            let roots = dedekind_sum_from_fourier(args).map_err(CliError::invalid)?;
            if naive != value || roots != value {
                writeln!(
                    err,
                    "mismatch: descent {value}, direct {naive}, root-of-unity {roots}"
                )?;
                return Ok(Outcome::Mismatch);
            }
            Ok(Outcome::Success)
        }
        Command::Fourier { n, a_list, b } => {
            let args =
                FourierDedekindArgs::new(*n, a_list.clone(), *b).map_err(CliError::invalid)?;
            let value = fourier_dedekind_sum(&args).map_err(CliError::invalid)?;
            emit_value(out, format, "fourier", &value, None)?;
            Ok(Outcome::Success)
        }
        Command::Popoviciu { a, b, c, t } => {
            let value = match c {
                None => popoviciu_2d(*a, *b, *t).map_err(CliError::invalid)?,
                Some(c) => {
                    let inputs =
                        PartitionPolyInputs::new(*a, *b, *c, *t).map_err(CliError::invalid)?;
                    popoviciu_3d(&inputs)
                }
            };
            emit_value(out, format, "popoviciu", &value, None)?;
            Ok(Outcome::Success)
        }
        Command::DeltaTable { local_type } => {
            let table = delta_table_for_local_type(local_type).map_err(CliError::invalid)?;
            match format {
                OutputFormat::Text => writeln!(out, "{table}")?,
                OutputFormat::Json => json_line(out, &PeriodicJson::from_periodic(&table))?,
                OutputFormat::Csv => csv_rows(
                    out,
                    &["k", "Delta"],
                    table
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(k, v)| vec![k.to_string(), rational_string(v)]),
                )?,
            }
            Ok(Outcome::Success)
        }
        Command::Delta {
            weights,
            vertex,
            degree,
        } => {
            let value = delta_at_projective_vertex(weights, usize::from(*vertex), *degree);
            emit_value(out, format, "delta", &value, None)?;
            Ok(Outcome::Success)
        }
        Command::LedgerCheck { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", file.display())))?;
            let ledger = LedgerFile::parse(&text).map_err(CliError::invalid)?;
            let local_type = ledger.quotient_type().map_err(CliError::invalid)?;
            let entries = ledger.entries().map_err(CliError::invalid)?;
            let report = ledger_check(&entries, &local_type).map_err(CliError::invalid)?;
            let summary = LedgerReportJson::new(&report);
            match format {
                OutputFormat::Json => json_line(out, &summary)?,
                OutputFormat::Text => {
                    writeln!(out, "{local_type}: Delta = {}", report.table)?;
                    for row in &summary.rows {
                        let mut line = format!("{}: Delta {}", row.label, row.correction);
                        if let Some(d) = &row.delta {
                            write!(line, ", delta {d}").unwrap();
                        }
                        if let Some(kp) = &row.kappa {
                            write!(line, ", kappa {kp}").unwrap();
                        }
                        write!(line, " -> {}", row.status).unwrap();
                        if let Some(reason) = &row.reason {
                            write!(line, " ({reason})").unwrap();
                        }
                        writeln!(out, "{line}")?;
                    }
                    writeln!(
                        out,
                        "{} of {} entries failed",
                        report.failures(),
                        report.rows.len()
                    )?;
                }
                OutputFormat::Csv => csv_rows(
                    out,
                    &["k", "label", "Delta", "delta", "kappa", "status"],
                    report.rows.iter().map(|r| {
                        vec![
                            r.k.to_string(),
                            r.label.clone(),
                            rational_string(&r.computed_correction),
                            r.delta.as_ref().map(rational_string).unwrap_or_default(),
                            r.kappa.as_ref().map(rational_string).unwrap_or_default(),
                            verdict_parts(&r.verdict).0.to_string(),
                        ]
                    }),
                )?,
            }
            Ok(if report.all_passed() {
                Outcome::Success
            } else {
                Outcome::Mismatch
            })
        }
        Command::Adjunction {
            weights,
            degree,
            kappa_sum,
        } => adjunction(weights, *degree, kappa_sum, format, out, err),
    }
}

#[derive(Serialize)]
struct AdjunctionJson {
    weights: [i64; 3],
    degree: i64,
    kappa_sum: String,
    h0: String,
    genus: String,
}

fn adjunction(
    weights: &WeightVector,
    degree: i64,
    kappa_sum: &Rational,
    format: OutputFormat,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<Outcome, CliError> {
    let genus = numerical_adjunction(weights, degree, kappa_sum);
    let h0 = sections(weights, degree);
    let report = AdjunctionJson {
        weights: weights.weights(),
        degree,
        kappa_sum: rational_string(kappa_sum),
        h0: rational_string(&h0),
        genus: rational_string(&genus),
    };
    match format {
        OutputFormat::Text => {
            writeln!(out, "h0: {}", report.h0)?;
            writeln!(out, "genus: {}", report.genus)?;
        }
        OutputFormat::Json => json_line(out, &report)?,
        OutputFormat::Csv => csv_rows(
            out,
            &["degree", "kappa_sum", "h0", "genus"],
            [vec![
                degree.to_string(),
                report.kappa_sum.clone(),
                report.h0.clone(),
                report.genus.clone(),
            ]],
        )?,
    }
    if h0_from_genus(weights, degree, &genus, kappa_sum) != h0 {
        writeln!(err, "inconsistent adjunction bookkeeping")?;
        return Ok(Outcome::Mismatch);
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct VerifyJson {
    weights: [i64; 3],
    dmax: i64,
    checked: usize,
    mismatches: Vec<MismatchJson>,
}

#[derive(Serialize)]
struct MismatchJson {
    degree: i64,
    formula: String,
    enumeration: u64,
}

fn verify(
    weights: &WeightVector,
    dmax: i64,
    format: OutputFormat,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<Outcome, CliError> {
    let qp = ehrhart_quasipolynomial(weights);
    let rows: Vec<(i64, Rational, u64)> = (0..=dmax)
        .map(|d| (d, qp.evaluate(d), oracle(weights, d).value()))
        .collect();
    let mismatches: Vec<_> = rows
        .iter()
        .filter(|(_, f, n)| *f != int(*n as i64))
        .collect();
    match format {
        OutputFormat::Text => {
            for (d, f, n) in &mismatches {
                writeln!(out, "mismatch at d = {d}: formula {f}, enumeration {n}")?;
            }
            writeln!(
                out,
                "{weights}: checked d = 0..={dmax}, {} mismatches",
                mismatches.len()
            )?;
        }
        OutputFormat::Json => json_line(
            out,
            &VerifyJson {
                weights: weights.weights(),
                dmax,
                checked: rows.len(),
                mismatches: mismatches
                    .iter()
                    .map(|(d, f, n)| MismatchJson {
                        degree: *d,
                        formula: rational_string(f),
                        enumeration: *n,
                    })
                    .collect(),
            },
        )?,
        OutputFormat::Csv => csv_rows(
            out,
            &["d", "formula", "enumeration"],
            rows.iter()
                .map(|(d, f, n)| vec![d.to_string(), rational_string(f), n.to_string()]),
        )?,
    }
    if mismatches.is_empty() {
        Ok(Outcome::Success)
    } else {
        writeln!(
            err,
            "{} mismatches between formula and enumeration",
            mismatches.len()
        )?;
        Ok(Outcome::Mismatch)
    }
}
