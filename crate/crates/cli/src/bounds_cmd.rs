use std::io::Write;

use anyhow::Result;
use clap::Subcommand;
use isobar_core::bounds::{bounds_row, threshold_scan, BoundsRow, Case, ThresholdReport};
use serde::Serialize;
use serde_json::json;

use crate::{check_format, Ctx, Format, Status};

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// Bounds at a single k
    Row {
        #[arg(long)]
        case: Case,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Bounds for every k up to k-max, checked against the headline claims
    Scan {
        #[arg(long)]
        case: Case,
        #[arg(long)]
        k_max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Serialize)]
struct CsvRow {
    k: u64,
    degree: u64,
    generic_denom: Option<u64>,
    enhanced_denom: Option<u64>,
    generic: Option<u64>,
    enhanced: Option<u64>,
    effective: u64,
    source: String,
}

impl From<&BoundsRow> for CsvRow {
    fn from(r: &BoundsRow) -> Self {
        CsvRow {
            k: r.k,
            degree: r.degree,
            generic_denom: r.generic_denominator,
            enhanced_denom: r.enhanced_denominator,
            generic: r.generic_bound,
            enhanced: r.enhanced_bound,
            effective: r.effective_bound,
            source: r.source.to_string(),
        }
    }
}

fn cell(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn report_claims(report: &ThresholdReport, w: &mut dyn Write) -> Result<()> {
    for (i, claim) in report.claims.iter().enumerate() {
        let bad: Vec<u64> = report.violations.iter().filter(|v| v.claim == i).map(|v| v.k).collect();
        if claim.from_k > report.k_max {
            writeln!(w, "SKIP {} {claim}: k-max {} is below the threshold", report.case, report.k_max)?;
        } else if bad.is_empty() {
            writeln!(w, "PASS {} {claim}", report.case)?;
        } else {
            writeln!(w, "FAIL {} {claim}: violated at k = {bad:?}", report.case)?;
        }
    }
    Ok(())
}

pub fn run(cmd: BoundsCommand, ctx: &mut Ctx) -> Result<Status> {
    match cmd {
        BoundsCommand::Row { case, k, format } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let row = bounds_row(case, k)?;
            if format == Format::Json {
                ctx.json(serde_json::to_value(&row)?)?;
            } else {
                writeln!(
                    ctx.out,
                    "{case} k={k}: degree {}, generic {}, enhanced {}, proposition {}, effective {} ({})",
                    row.degree,
                    cell(row.generic_bound),
                    cell(row.enhanced_bound),
                    cell(row.proposition_constant),
                    row.effective_bound,
                    row.source
                )?;
            }
            Ok(Status::Passed)
        }
        BoundsCommand::Scan { case, k_max, format } => {
            check_format(format, &[Format::Csv, Format::Json, Format::Md])?;
            let report = ctx.pool.install(|| threshold_scan(case, k_max));
            match format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *ctx.out);
                    for row in &report.rows {
                        w.serialize(CsvRow::from(row))?;
                    }
                    w.flush()?;
                    drop(w);
                    report_claims(&report, ctx.err)?;
                }
                Format::Md => {
                    writeln!(ctx.out, "| k | degree | generic denom | enhanced denom | generic | enhanced | effective | source |")?;
                    writeln!(ctx.out, "|---:|---:|---:|---:|---:|---:|---:|---|")?;
                    for r in &report.rows {
                        writeln!(
                            ctx.out,
                            "| {} | {} | {} | {} | {} | {} | {} | {} |",
                            r.k,
                            r.degree,
                            cell(r.generic_denominator),
                            cell(r.enhanced_denominator),
                            cell(r.generic_bound),
                            cell(r.enhanced_bound),
                            r.effective_bound,
                            r.source
                        )?;
                    }
                    report_claims(&report, ctx.err)?;
                }
                _ => {
                    let claims: Vec<_> = report
                        .claims
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            json!({
                                "claim": c.to_string(),
                                "scanned": c.from_k <= report.k_max,
                                "holds": report.violations.iter().all(|v| v.claim != i),
                            })
                        })
                        .collect();
                    ctx.json(json!({
                        "case": report.case,
                        "k_max": report.k_max,
                        "all_claims_hold": report.all_claims_hold(),
                        "claims": claims,
                        "violations": report.violations,
                        "first_effective": report.first_effective,
                        "first_formula": report.first_formula,
                        "rows": report.rows,
                    }))?;
                }
            }
            Ok(Status::from_bool(report.all_claims_hold()))
        }
    }
}
