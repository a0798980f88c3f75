//! Checks the worked symmetric-power examples against the fixture tables.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Result};
use isobar_core::group::CharacterTable;
use isobar_core::plethysm::ClassFunction;
use isobar_core::Cyclotomic;

use crate::{Ctx, Status};

pub const REQUIRED: [&str; 5] = ["a4", "s4", "psl27", "sl29", "v1080"];

/// Optional fixtures: file stem, display name, dimension of the faithful
/// characters, how many there are, and the expected constituent degrees
/// of Sym^2, Sym^3, ...
pub const OPTIONAL: [(&str, &str, u32, usize, &[&[u64]]); 8] = [
    ("g648_531", "[648,531]", 3, 6, &[&[6], &[2, 8]]),
    ("g648_532", "[648,532]", 3, 6, &[&[6], &[2, 8]]),
    ("g648_533", "[648,533]", 3, 6, &[&[6], &[2, 8]]),
    ("g216_88", "[216,88]", 3, 8, &[&[6], &[2, 8]]),
    ("g432_239", "[432,239]", 3, 8, &[&[6], &[2, 8]]),
    ("g640_21454", "[640,21454]", 4, 4, &[&[10], &[4, 16]]),
    ("g640_21455", "[640,21455]", 4, 4, &[&[10], &[4, 16]]),
    ("g1440_4591", "[1440,4591]", 4, 4, &[&[10], &[20], &[5, 5, 9, 16]]),
];

/// Published rows of the order-1080 table, in its class order
/// 1a 3a 3b 2a 6a 6b 3c 3d 12a 12b 4a 5a 15a 15b 15c 5b 15d.
/// `a = (1+√-3)/2`, `b = (1-√5)/2`, `b* = (1+√5)/2`,
/// `g = -e(7/15)-e(13/15)`, `d = -e(1/15)-e(4/15)`; a trailing `'` is
/// complex conjugation and `.` is zero.
pub const V1080_PRINTED: [(usize, &str); 12] = [
    (2, "3 -3a -3a' -1 a a' . . -a -a' 1 b g g' d' b* d"),
    (3, "3 -3a -3a' -1 a a' . . -a -a' 1 b* d d' g' b g"),
    (4, "3 -3a' -3a -1 a' a . . -a' -a 1 b g' g d b* d'"),
    (5, "3 -3a' -3a -1 a' a . . -a' -a 1 b* d' d g b g'"),
    (8, "6 -6a -6a' 2 -2a -2a' . . . . . 1 -a -a' -a' 1 -a"),
    (9, "6 -6a' -6a 2 -2a' -2a . . . . . 1 -a' -a -a 1 -a'"),
    (12, "9 9 9 1 1 1 . . 1 1 1 -1 -1 -1 -1 -1 -1"),
    (13, "9 -9a -9a' 1 -a -a' . . -a -a' 1 -1 a a' a' -1 a"),
    (14, "9 -9a' -9a 1 -a' -a . . -a' -a 1 -1 a' a a -1 a'"),
    (15, "10 10 10 -2 -2 -2 1 1 . . . . . . . . ."),
    (16, "15 -15a -15a' -1 a a' . . a a' -1 . . . . . ."),
    (17, "15 -15a' -15a -1 a' a . . a' a -1 . . . . . ."),
];

pub const V1080_LABELS: [&str; 17] =
    ["1a", "3a", "3b", "2a", "6a", "6b", "3c", "3d", "12a", "12b", "4a", "5a", "15a", "15b", "15c", "5b", "15d"];

fn symbol(s: &str) -> Option<&'static str> {
    Some(match s {
        "a" => "1+E(3)",
        "a'" => "-E(3)",
        "b" => "-E(5)-E(5)^4",
        "b*" => "-E(5)^2-E(5)^3",
        "g" => "-E(15)^7-E(15)^13",
        "g'" => "-E(15)^2-E(15)^8",
        "d" => "-E(15)-E(15)^4",
        "d'" => "-E(15)^11-E(15)^14",
        _ => return None,
    })
}

/// Parses one entry of a printed row, e.g. `-3a'`, `b*`, `.` or `-1`.
pub fn parse_printed(token: &str) -> Result<Cyclotomic> {
    if token == "." {
        return Ok(Cyclotomic::zero());
    }
    let (sign, rest) = match token.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, token),
    };
    let digits = rest.chars().take_while(char::is_ascii_digit).count();
    let (num, sym) = rest.split_at(digits);
    let coeff = if num.is_empty() { 1 } else { num.parse::<i64>()? } * sign;
    let base = if sym.is_empty() {
        if num.is_empty() {
            bail!("empty entry {token:?}");
        }
        Cyclotomic::one()
    } else {
        let Some(s) = symbol(sym) else { bail!("unknown symbol in {token:?}") };
        s.parse::<Cyclotomic>()?
    };
    Ok(&Cyclotomic::from_integer(coeff) * &base)
}

pub fn printed_row(row: &str) -> Result<Vec<Cyclotomic>> {
    row.split_whitespace().map(parse_printed).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct Line {
    pub group: String,
    pub claim: String,
    pub outcome: Outcome,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS    {}: {}", self.group, self.claim),
            Outcome::Fail(why) => write!(f, "FAIL    {}: {} ({why})", self.group, self.claim),
            Outcome::Skipped(why) => write!(f, "SKIPPED {}: {} ({why})", self.group, self.claim),
        }
    }
}

struct Checker {
    group: String,
    lines: Vec<Line>,
}

impl Checker {
    fn new(group: &str) -> Self {
        Checker { group: group.to_string(), lines: Vec::new() }
    }

    fn check(&mut self, claim: impl Into<String>, result: Result<bool>) {
        let outcome = match result {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail("does not hold".into()),
            Err(e) => Outcome::Fail(format!("{e:#}")),
        };
        self.lines.push(Line { group: self.group.clone(), claim: claim.into(), outcome });
    }
}

fn is_faithful(chi: &[Cyclotomic]) -> bool {
    chi.iter().skip(1).all(|v| v != &chi[0])
}

/// 0-based indices of the faithful irreducibles of degree `d`.
fn faithful_of_degree(table: &CharacterTable, d: u32) -> Vec<usize> {
    (0..table.irreducibles.len())
        .filter(|&i| {
            let row = &table.irreducibles[i];
            row[0] == Cyclotomic::from_integer(i64::from(d)) && is_faithful(row)
        })
        .collect()
}

/// Sorted constituent degrees of `Sym^k χ`, with multiplicity.
fn sym_degrees(table: &Arc<CharacterTable>, i: usize, k: usize) -> Result<Vec<u64>> {
    let d = ClassFunction::irreducible(table, i)?.sym_power(k)?.decompose()?;
    let mut out: Vec<u64> = d.multiplicities.iter().flat_map(|(j, m)| std::iter::repeat(d.degrees[j]).take(*m as usize)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Frobenius–Schur indicator ⟨ψ²χ, 1⟩.
fn indicator(table: &Arc<CharacterTable>, i: usize) -> Result<i64> {
    let v = ClassFunction::irreducible(table, i)?.adams(2)?.inner_product(&ClassFunction::trivial(table))?;
    if !v.is_integer() {
        bail!("non-integral indicator");
    }
    Ok(v.to_integer().try_into()?)
}

fn chi(table: &Arc<CharacterTable>, one_based: usize) -> Result<ClassFunction> {
    Ok(ClassFunction::irreducible(table, one_based - 1)?)
}

fn load(dir: &Path, stem: &str) -> Result<Arc<CharacterTable>> {
    Ok(Arc::new(CharacterTable::load(&dir.join(format!("{stem}.tbl")))?))
}

fn all_of(table: &Arc<CharacterTable>, idx: &[usize], k: usize, expected: &[u64]) -> Result<bool> {
    for &i in idx {
        if sym_degrees(table, i, k)? != expected {
            return Ok(false);
        }
    }
    Ok(!idx.is_empty())
}

fn a4(c: &mut Checker, t: &Arc<CharacterTable>) {
    let f = faithful_of_degree(t, 3);
    c.check("exactly one faithful 3-dimensional character", Ok(f.len() == 1));
    c.check("N(Sym² ρ) = 4 with constituent degrees {1,1,1,3}", all_of(t, &f, 2, &[1, 1, 1, 3]));
}

fn s4(c: &mut Checker, t: &Arc<CharacterTable>) {
    let f = faithful_of_degree(t, 3);
    c.check("exactly two faithful 3-dimensional characters", Ok(f.len() == 2));
    c.check(
        "the two are twist-equivalent by a quadratic character",
        (|| {
            if f.len() != 2 {
                return Ok(false);
            }
            let (r1, r2) = (ClassFunction::irreducible(t, f[0])?, ClassFunction::irreducible(t, f[1])?);
            for (mu, row) in t.irreducibles.iter().enumerate() {
                if row[0].is_one() && mu != 0 && r1.mul(&ClassFunction::irreducible(t, mu)?)? == r2 {
                    return Ok(true);
                }
            }
            Ok(false)
        })(),
    );
    c.check("N(Sym² ρ_j) = 3 with constituent degrees {1,2,3}", all_of(t, &f, 2, &[1, 2, 3]));
}

fn psl27(c: &mut Checker, t: &Arc<CharacterTable>) {
    let f = faithful_of_degree(t, 3);
    c.check("exactly two faithful 3-dimensional characters", Ok(f.len() == 2));
    c.check(
        "Sym² ρ is irreducible and the same for both",
        (|| {
            let squares = f
                .iter()
                .map(|&i| ClassFunction::irreducible(t, i)?.sym_power(2))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(all_of(t, &f, 2, &[6])? && squares.windows(2).all(|w| w[0] == w[1]))
        })(),
    );
    c.check("Sym³ ρ = 3-dimensional + 7-dimensional, N = 2", all_of(t, &f, 3, &[3, 7]));
}

fn sl29(c: &mut Checker, t: &Arc<CharacterTable>) {
    let f = faithful_of_degree(t, 4);
    c.check("exactly two faithful 4-dimensional characters", Ok(f.len() == 2));
    c.check(
        "Sym² ρ is the unique orthogonally self-dual 10-dimensional irreducible, for both",
        (|| {
            let ten = Cyclotomic::from_integer(10);
            let mut orthogonal = Vec::new();
            for (i, row) in t.irreducibles.iter().enumerate() {
                if row[0] == ten && indicator(t, i)? == 1 {
                    orthogonal.push(i);
                }
            }
            if orthogonal.len() != 1 || f.is_empty() {
                return Ok(false);
            }
            for &i in &f {
                if ClassFunction::irreducible(t, i)?.sym_power(2)? != ClassFunction::irreducible(t, orthogonal[0])? {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    c.check("Sym³ ρ = two 10-dimensional irreducibles, N = 2", all_of(t, &f, 3, &[10, 10]));
}

fn v1080(c: &mut Checker, t: &Arc<CharacterTable>) {
    c.check("17 irreducibles, four of them faithful of degree 3", Ok(t.irreducibles.len() == 17 && faithful_of_degree(t, 3) == [1, 2, 3, 4]));
    c.check(
        "class labels follow the published order",
        Ok(t.classes.iter().map(|c| c.label.as_str()).eq(V1080_LABELS)),
    );
    for (n, row) in V1080_PRINTED {
        c.check(
            format!("row χ{n} equals the published values"),
            printed_row(row).map(|p| t.irreducibles.get(n - 1) == Some(&p)),
        );
    }
    let sym = |j: usize, k: usize| -> Result<ClassFunction> { Ok(chi(t, j)?.sym_power(k)?) };
    c.check(
        "Sym²χ2 = Sym²χ3 = χ9 and Sym²χ4 = Sym²χ5 = χ8",
        (|| {
            Ok(sym(2, 2)? == chi(t, 9)? && sym(3, 2)? == chi(t, 9)? && sym(4, 2)? == chi(t, 8)? && sym(5, 2)? == chi(t, 8)?)
        })(),
    );
    c.check(
        "Sym³χj = χ15 for j = 2,3,4,5",
        (|| {
            let target = chi(t, 15)?;
            for j in 2..=5 {
                if sym(j, 3)? != target {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    c.check(
        "Sym⁴χ2 = Sym⁴χ3 = χ8 + χ13 and Sym⁴χ4 = Sym⁴χ5 = χ9 + χ14",
        (|| {
            let a = chi(t, 8)?.add(&chi(t, 13)?)?;
            let b = chi(t, 9)?.add(&chi(t, 14)?)?;
            Ok(sym(2, 4)? == a && sym(3, 4)? == a && sym(4, 4)? == b && sym(5, 4)? == b)
        })(),
    );
    c.check(
        "N(Sym⁴χj) = 2 for j = 2,3,4,5",
        (|| {
            for j in 2..=5 {
                if sym(j, 4)?.decompose()?.count() != 2 {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
}

fn optional(c: &mut Checker, t: &Arc<CharacterTable>, dim: u32, count: usize, pattern: &[&[u64]]) {
    let f = faithful_of_degree(t, dim);
    c.check(format!("{count} faithful {dim}-dimensional characters"), Ok(f.len() == count));
    for (i, degrees) in pattern.iter().enumerate() {
        let k = i + 2;
        let text: Vec<String> = degrees.iter().map(u64::to_string).collect();
        c.check(format!("Sym^{k} ρ has constituent degrees {{{}}}", text.join(",")), all_of(t, &f, k, degrees));
    }
}

fn failed_load(group: &str, e: anyhow::Error) -> Line {
    Line { group: group.to_string(), claim: "fixture loads and validates".into(), outcome: Outcome::Fail(format!("{e:#}")) }
}

/// Runs every check. Fails only when a required fixture file is missing;
/// anything wrong inside a fixture becomes a FAIL line.
pub fn check(dir: &Path) -> Result<Vec<Line>> {
    let missing: Vec<&str> = REQUIRED.iter().copied().filter(|s| !dir.join(format!("{s}.tbl")).exists()).collect();
    if !missing.is_empty() {
        bail!("missing required fixtures in {}: {}", dir.display(), missing.join(", "));
    }
    let mut lines = Vec::new();
    let required: [(&str, &str, fn(&mut Checker, &Arc<CharacterTable>)); 5] = [
        ("a4", "A4", a4),
        ("s4", "S4", s4),
        ("psl27", "PSL(2,7)", psl27),
        ("sl29", "SL(2,9)", sl29),
        ("v1080", "V1080", v1080),
    ];
    for (stem, name, f) in required {
        match load(dir, stem) {
            Ok(t) => {
                let mut c = Checker::new(name);
                f(&mut c, &t);
                lines.extend(c.lines);
            }
            Err(e) => lines.push(failed_load(name, e)),
        }
    }
    for (stem, name, dim, count, pattern) in OPTIONAL {
        if !dir.join(format!("{stem}.tbl")).exists() {
            lines.push(Line {
                group: name.to_string(),
                claim: format!("Sym² and Sym³ of its faithful {dim}-dimensional characters"),
                outcome: Outcome::Skipped(format!("no {stem}.tbl")),
            });
            continue;
        }
        match load(dir, stem) {
            Ok(t) => {
                let mut c = Checker::new(name);
                optional(&mut c, &t, dim, count, pattern);
                lines.extend(c.lines);
            }
            Err(e) => lines.push(failed_load(name, e)),
        }
    }
    Ok(lines)
}

pub fn run(ctx: &mut Ctx) -> Result<Status> {
    let dir = ctx.fixtures.clone();
    let lines = ctx.pool.install(|| check(&dir))?;
    for line in &lines {
        writeln!(ctx.out, "{line}")?;
    }
    let failed = lines.iter().filter(|l| matches!(l.outcome, Outcome::Fail(_))).count();
    let skipped = lines.iter().filter(|l| matches!(l.outcome, Outcome::Skipped(_))).count();
    writeln!(ctx.out, "{} passed, {failed} failed, {skipped} skipped", lines.len() - failed - skipped)?;
    Ok(Status::from_bool(failed == 0))
}
