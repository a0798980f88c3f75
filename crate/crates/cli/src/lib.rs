//! Command-line front end for `isobar-core`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

mod bounds_cmd;
mod group_cmd;
mod identity_cmd;
pub mod reproduce;
mod schur_cmd;
mod sympow_cmd;

/// Environment variable naming the fixture directory.
pub const FIXTURES_ENV: &str = "ISOBAR_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "isobar", version, about = "Symmetric-power decompositions, Schur identities and summand bounds")]
pub struct Cli {
    /// Worker threads (defaults to the number of logical cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Fixture directory (overrides $ISOBAR_FIXTURES)
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Report wall-clock time on stderr and in JSON output
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schur polynomials and Littlewood–Richardson products
    #[command(subcommand)]
    Schur(schur_cmd::SchurCommand),
    /// Schur-polynomial identity families
    #[command(subcommand)]
    Identity(identity_cmd::IdentityCommand),
    /// Groups, conjugacy classes and character tables
    #[command(subcommand)]
    Group(group_cmd::GroupCommand),
    /// Symmetric powers of characters
    #[command(subcommand)]
    Sympow(sympow_cmd::SympowCommand),
    /// Summand-count bounds
    #[command(subcommand)]
    Bounds(bounds_cmd::BoundsCommand),
    /// Check every example decomposition against the bundled fixtures
    #[command(name = "reproduce-section4")]
    Reproduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
    Toml,
}

/// Whether a command's checks passed. Errors are reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

pub struct Ctx<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub fixtures: PathBuf,
    pub timing: bool,
    pub started: Instant,
    pub pool: rayon::ThreadPool,
}

impl Ctx<'_> {
    /// Looks for `name` as given, then under the fixture directory, then
    /// with a `.tbl` extension there.
    pub fn resolve(&self, name: &Path) -> Result<PathBuf> {
        if name.exists() {
            return Ok(name.to_path_buf());
        }
        let candidates = [self.fixtures.join(name), self.fixtures.join(name).with_extension("tbl")];
        candidates
            .into_iter()
            .find(|p| p.exists())
            .with_context(|| format!("no such file: {} (also looked in {})", name.display(), self.fixtures.display()))
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.started.elapsed().as_millis()
    }

    pub fn json(&mut self, mut value: serde_json::Value) -> Result<()> {
        if self.timing {
            if let Some(obj) = value.as_object_mut() {
                obj.insert("elapsed_ms".into(), serde_json::json!(self.elapsed_ms()));
            }
        }
        serde_json::to_writer_pretty(&mut *self.out, &value)?;
        writeln!(self.out)?;
        Ok(())
    }
}

fn default_fixtures() -> PathBuf {
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn dispatch(cli: Cli, ctx: &mut Ctx) -> Result<Status> {
    match cli.command {
        Command::Schur(c) => schur_cmd::run(c, ctx),
        Command::Identity(c) => identity_cmd::run(c, ctx),
        Command::Group(c) => group_cmd::run(c, ctx),
        Command::Sympow(c) => sympow_cmd::run(c, ctx),
        Command::Bounds(c) => bounds_cmd::run(c, ctx),
        Command::Reproduce => reproduce::run(ctx),
    }
}

/// Runs the CLI and returns the process exit code: 0 success, 1 failed
/// verification, 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = match jobs {
        0 => Err(anyhow::anyhow!("--jobs must be at least 1")),
        n => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(anyhow::Error::from),
    };
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return 2;
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        fixtures: cli.fixtures.clone().unwrap_or_else(default_fixtures),
        timing: cli.timing,
        started: Instant::now(),
        pool,
    };
    let result = dispatch(cli, &mut ctx);
    if ctx.timing {
        let _ = writeln!(ctx.err, "elapsed: {} ms", ctx.elapsed_ms());
    }
    match result {
        Ok(Status::Passed) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e:#}");
            2
        }
    }
}

pub(crate) fn check_format(format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        let names: Vec<String> =
            allowed.iter().map(|f| f.to_possible_value().unwrap().get_name().to_string()).collect();
        bail!("unsupported --format for this command; expected one of {}", names.join(", "));
    }
    Ok(())
}
