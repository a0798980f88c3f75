use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use isobar_core::group::CharacterTable;
use isobar_core::plethysm::ClassFunction;
use isobar_core::schur::IdentityFamily;
use rayon::prelude::*;
use serde_json::json;

use crate::{check_format, Ctx, Format, Status};

#[derive(Debug, Args)]
pub struct CharArgs {
    /// Character table file or fixture name
    #[arg(long)]
    group: PathBuf,
    /// Character number, 1-based as in the table
    #[arg(long = "char")]
    character: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Subcommand)]
pub enum SympowCommand {
    /// Decompose Sym^k (or Λ^k) of a character into irreducibles
    Decompose {
        #[command(flatten)]
        target: CharArgs,
        #[arg(long)]
        k: usize,
        /// Use the exterior power instead
        #[arg(long)]
        exterior: bool,
    },
    /// Evaluate an identity family on a character
    Identity {
        #[command(flatten)]
        target: CharArgs,
        #[arg(long)]
        case: IdentityFamily,
        #[arg(long, default_value_t = 3)]
        m_from: usize,
        #[arg(long, default_value_t = 12)]
        m_to: usize,
    },
    /// Linear characters μ with χμ = χ or χμ = conj(χ)
    Selftwists {
        #[command(flatten)]
        target: CharArgs,
    },
    /// Compare irreducibility of Sym² and the adjoint
    Adjoint {
        #[command(flatten)]
        target: CharArgs,
    },
}

fn load(ctx: &Ctx, target: &CharArgs) -> Result<(Arc<CharacterTable>, ClassFunction)> {
    check_format(target.format, &[Format::Text, Format::Json])?;
    let table = Arc::new(CharacterTable::load(&ctx.resolve(&target.group)?)?);
    let n = table.irreducibles.len();
    if target.character == 0 || target.character > n {
        bail!("--char must be between 1 and {n}");
    }
    let chi = ClassFunction::irreducible(&table, target.character - 1)?;
    Ok((table, chi))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn run(cmd: SympowCommand, ctx: &mut Ctx) -> Result<Status> {
    match cmd {
        SympowCommand::Decompose { target, k, exterior } => {
            let (table, chi) = load(ctx, &target)?;
            let power = if exterior { chi.ext_power(k)? } else { chi.sym_power(k)? };
            let d = power.decompose()?;
            let name = if exterior { "ext" } else { "sym" };
            if target.format == Format::Json {
                let constituents: Vec<_> = d
                    .multiplicities
                    .iter()
                    .map(|(i, m)| json!({ "character": i + 1, "multiplicity": m, "degree": d.degrees[i] }))
                    .collect();
                ctx.json(json!({
                    "group": table.group_name,
                    "character": target.character,
                    "power": name,
                    "k": k,
                    "degree": d.total_degree(),
                    "values": power.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "multiplicities": d.vector(table.irreducibles.len()),
                    "constituents": constituents,
                    "n": d.count(),
                    "decomposition": d.to_string(),
                }))?;
            } else {
                let op = if exterior { "Λ" } else { "Sym" };
                writeln!(
                    ctx.out,
                    "{}: {op}^{k}(χ{}) = {}  (degree {}, N = {})",
                    table.group_name,
                    target.character,
                    d,
                    d.total_degree(),
                    d.count()
                )?;
            }
            Ok(Status::Passed)
        }
        SympowCommand::Identity { target, case, m_from, m_to } => {
            let (table, chi) = load(ctx, &target)?;
            let ms: Vec<usize> = match case {
                IdentityFamily::Gl3Adjoint => vec![0],
                _ if m_from < 3 || m_from > m_to => bail!("need 3 ≤ --m-from ≤ --m-to"),
                _ => (m_from..=m_to).collect(),
            };
            let reports = ctx.pool.install(|| {
                ms.par_iter().map(|&m| chi.verify_character_identity(case, m)).collect::<Result<Vec<_>, _>>()
            })?;
            let passed = reports.iter().all(|r| r.equal);
            if target.format == Format::Json {
                let rows: Vec<_> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "m": r.m,
                            "equal": r.equal,
                            "mismatched_classes": r.mismatched_classes.iter().map(|c| table.classes[*c].label.clone()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                ctx.json(json!({
                    "group": table.group_name,
                    "character": target.character,
                    "case": case,
                    "passed": passed,
                    "results": rows,
                }))?;
            } else {
                for r in &reports {
                    let m = r.m.map_or_else(|| "-".into(), |m| m.to_string());
                    writeln!(ctx.out, "{:<4} {case} m={m} on χ{}", if r.equal { "PASS" } else { "FAIL" }, target.character)?;
                }
            }
            Ok(Status::from_bool(passed))
        }
        SympowCommand::Selftwists { target } => {
            let (table, chi) = load(ctx, &target)?;
            let tw = chi.self_twists()?;
            if target.format == Format::Json {
                ctx.json(json!({
                    "group": table.group_name,
                    "character": target.character,
                    "s": one_based(&tw.s),
                    "t": one_based(&tw.t),
                }))?;
            } else {
                let show = |v: &[usize]| v.iter().map(|i| format!("χ{}", i + 1)).collect::<Vec<_>>().join(", ");
                writeln!(ctx.out, "S = {{{}}}", show(&tw.s))?;
                writeln!(ctx.out, "T = {{{}}}", show(&tw.t))?;
            }
            Ok(Status::Passed)
        }
        SympowCommand::Adjoint { target } => {
            let (table, chi) = load(ctx, &target)?;
            let link = chi.adjoint_link_check()?;
            if target.format == Format::Json {
                ctx.json(json!({
                    "group": table.group_name,
                    "character": target.character,
                    "link": link,
                }))?;
            } else {
                writeln!(
                    ctx.out,
                    "{:<4} ⟨Sym²χ,Sym²χ⟩ = {}, ⟨Adχ,Adχ⟩ = {}",
                    if link.holds { "PASS" } else { "FAIL" },
                    link.sym2_norm,
                    link.adjoint_norm
                )?;
            }
            Ok(Status::from_bool(link.holds))
        }
    }
}
