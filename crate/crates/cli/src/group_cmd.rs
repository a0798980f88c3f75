use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Subcommand;
use isobar_core::group::{
    compute_character_table, CharacterTable, Classes, FiniteGroup, GroupSpec, DEFAULT_MAX_ORDER,
};
use serde_json::json;

use crate::{check_format, Ctx, Format, Status};

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Print a character table, computing it when given a generator file
    Table {
        /// Generator file (.toml) or character table (.tbl)
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the table in .tbl form to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Note stored with a computed table
        #[arg(long)]
        note: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// List conjugacy classes
    Classes {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Validate a character table file
    Check {
        #[arg(long)]
        table: PathBuf,
        /// Generator file whose computed table must match up to relabelling
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
}

fn is_generator_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "toml")
}

fn build(path: &Path, max_order: usize) -> Result<(FiniteGroup, Classes)> {
    let spec = GroupSpec::load(path)?;
    let g = spec.build(max_order).with_context(|| format!("building {}", path.display()))?;
    let c = g.conjugacy_classes();
    Ok((g, c))
}

fn compute(ctx: &Ctx, path: &Path, max_order: usize) -> Result<CharacterTable> {
    let (g, c) = build(path, max_order)?;
    Ok(ctx.pool.install(|| compute_character_table(&g, &c))?)
}

fn table_json(t: &CharacterTable) -> serde_json::Value {
    json!({
        "group_name": t.group_name,
        "order": t.order,
        "provenance": t.provenance,
        "note": t.note,
        "classes": t.classes,
        "power_maps": t.power_maps.iter().map(|(p, m)| (p.to_string(), json!(m))).collect::<serde_json::Map<_, _>>(),
        "irreducibles": t.irreducibles.iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn run(cmd: GroupCommand, ctx: &mut Ctx) -> Result<Status> {
    match cmd {
        GroupCommand::Table { group, format, out, note, max_order } => {
            check_format(format, &[Format::Text, Format::Json, Format::Toml])?;
            let path = ctx.resolve(&group)?;
            let table = if is_generator_file(&path) {
                let mut t = compute(ctx, &path, max_order)?;
                t.note = Some(note.unwrap_or_else(|| format!("Computed from the generators in {}.", group.display())));
                t
            } else {
                CharacterTable::load(&path)?
            };
            if let Some(out) = out {
                table.save(&out)?;
                writeln!(ctx.err, "wrote {}", out.display())?;
            }
            match format {
                Format::Json => ctx.json(table_json(&table))?,
                Format::Toml => write!(ctx.out, "{}", table.to_toml_string())?,
                _ => write!(ctx.out, "{}", table.render())?,
            }
        }
        GroupCommand::Classes { group, format, max_order } => {
            check_format(format, &[Format::Text, Format::Json])?;
            let path = ctx.resolve(&group)?;
            let rows: Vec<(String, u32, u64, Option<String>)> = if is_generator_file(&path) {
                let (g, c) = build(&path, max_order)?;
                (0..c.len())
                    .map(|i| {
                        let rep = g.ambient().format(g.element(c.representatives[i]));
                        (c.labels[i].clone(), c.orders[i], c.members[i].len() as u64, Some(rep))
                    })
                    .collect()
            } else {
                let t = CharacterTable::load(&path)?;
                t.classes.iter().map(|c| (c.label.clone(), c.element_order, c.size, None)).collect()
            };
            if format == Format::Json {
                let classes: Vec<_> = rows
                    .iter()
                    .map(|(l, o, s, r)| json!({ "label": l, "element_order": o, "size": s, "representative": r }))
                    .collect();
                ctx.json(json!({ "classes": classes }))?;
            } else {
                for (l, o, s, r) in &rows {
                    match r {
                        Some(r) => writeln!(ctx.out, "{l}\torder {o}\tsize {s}\t{r}")?,
                        None => writeln!(ctx.out, "{l}\torder {o}\tsize {s}")?,
                    }
                }
            }
        }
        GroupCommand::Check { table, against, max_order } => {
            let path = ctx.resolve(&table)?;
            let text =
                std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let t = CharacterTable::from_toml_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Err(e) = t.validate() {
                writeln!(ctx.out, "FAIL {}: {e}", path.display())?;
                return Ok(Status::Failed);
            }
            writeln!(
                ctx.out,
                "PASS {}: {} classes, orthogonality and power maps consistent",
                path.display(),
                t.num_classes()
            )?;
            if let Some(spec) = against {
                let spec = ctx.resolve(&spec)?;
                let computed = compute(ctx, &spec, max_order)?;
                match computed.class_bijection(&t) {
                    Some(_) => writeln!(ctx.out, "PASS matches the table computed from {}", spec.display())?,
                    None => {
                        writeln!(ctx.out, "FAIL differs from the table computed from {}", spec.display())?;
                        return Ok(Status::Failed);
                    }
                }
            }
        }
    }
    Ok(Status::Passed)
}
