use anyhow::{bail, Result};
use clap::Subcommand;
use isobar_core::schur::{
    verify_gl3_adjoint_identity, verify_gl3_identity, verify_gl4_identity, IdentityFamily, IdentityReport,
};
use rayon::prelude::*;
use serde_json::json;

use crate::{check_format, Ctx, Format, Status};

#[derive(Debug, Subcommand)]
pub enum IdentityCommand {
    /// Check an identity family by exact polynomial comparison
    Verify {
        #[arg(long)]
        family: IdentityFamily,
        #[arg(long, default_value_t = 3)]
        m_from: usize,
        #[arg(long, default_value_t = 40)]
        m_to: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

pub fn run(cmd: IdentityCommand, ctx: &mut Ctx) -> Result<Status> {
    let IdentityCommand::Verify { family, m_from, m_to, format } = cmd;
    check_format(format, &[Format::Text, Format::Json])?;
    let reports: Vec<IdentityReport> = match family {
        IdentityFamily::Gl3Adjoint => vec![verify_gl3_adjoint_identity()],
        _ => {
            if m_from < 3 || m_from > m_to {
                bail!("need 3 ≤ --m-from ≤ --m-to");
            }
            let verify = match family {
                IdentityFamily::Gl3 => verify_gl3_identity,
                _ => verify_gl4_identity,
            };
            ctx.pool.install(|| (m_from..=m_to).into_par_iter().map(verify).collect())
        }
    };
    let passed = reports.iter().all(IdentityReport::passed);
    if format == Format::Json {
        ctx.json(json!({
            "family": family,
            "passed": passed,
            "reports": reports.iter().map(|r| {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["passed"] = json!(r.passed());
                v
            }).collect::<Vec<_>>(),
        }))?;
    } else {
        for r in &reports {
            let m = r.m.map_or_else(|| "-".to_string(), |m| m.to_string());
            let vanish = r.expected_vanishing.as_deref().map_or(String::new(), |p| format!(", S({p}) vanishes"));
            writeln!(
                ctx.out,
                "{:<4} {family} m={m}: {} = {} terms in {} variables{vanish}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.lhs_terms,
                r.rhs_terms,
                r.nvars,
            )?;
        }
        writeln!(ctx.out, "{} of {} passed", reports.iter().filter(|r| r.passed()).count(), reports.len())?;
    }
    if !passed {
        writeln!(ctx.err, "{family}: identity check failed")?;
    }
    Ok(Status::from_bool(passed))
}
