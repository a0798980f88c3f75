
use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use isobar_core::schur::{dimension, lr_expand, schur_poly_bialternant, schur_poly_tableau};
use isobar_core::Partition;
use serde_json::json;

use crate::{check_format, Ctx, Format, Status};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algorithm {
    Bialternant,
    Tableau,
}

#[derive(Debug, Subcommand)]
pub enum SchurCommand {
    /// Expand s_λ(x1..xn) into monomials
    Expand {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bialternant")]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand s_λ·s_μ in the Schur basis
    Product {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        /// Drop terms with more than n rows
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

pub fn run(cmd: SchurCommand, ctx: &mut Ctx) -> Result<Status> {
    match cmd {
        SchurCommand::Expand { lambda, n, algorithm, format } => {
            check_format(format, &[Format::Text, Format::Json])?;
            if n == 0 || n > 12 {
                bail!("--n must be between 1 and 12");
            }
            let poly = match algorithm {
                Algorithm::Bialternant => schur_poly_bialternant(&lambda, n),
                Algorithm::Tableau => schur_poly_tableau(&lambda, n),
            };
            let dim = dimension(&lambda, n);
            if format == Format::Json {
                let terms: Vec<_> = poly
                    .terms()
                    .rev()
                    .map(|(m, c)| json!({ "exponents": m.exponents(), "coefficient": c.to_string() }))
                    .collect();
                ctx.json(json!({
                    "lambda": lambda.to_string(),
                    "n": n,
                    "dimension": dim.to_string(),
                    "num_terms": poly.num_terms(),
                    "polynomial": poly.to_string(),
                    "terms": terms,
                }))?;
            } else {
                writeln!(ctx.out, "s({lambda}) in {n} variables, dimension {dim}, {} terms", poly.num_terms())?;
                writeln!(ctx.out, "{poly}")?;
            }
        }
        SchurCommand::Product { lambda, mu, n, format } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let mut product = lr_expand(&lambda, &mu);
            if let Some(n) = n {
                product = product.restrict(n).0;
            }
            if format == Format::Json {
                ctx.json(json!({
                    "lambda": lambda.to_string(),
                    "mu": mu.to_string(),
                    "n": n,
                    "terms": product,
                    "num_terms": product.len(),
                }))?;
            } else {
                writeln!(ctx.out, "S({lambda}) * S({mu}) = {product}")?;
            }
        }
    }
    Ok(Status::Passed)
}
