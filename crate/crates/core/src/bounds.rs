//! Closed-form upper bounds on the number of irreducible summands of a
//! k-th symmetric power, for 3- and 4-dimensional inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("unknown case {0:?}, expected gl3 or gl4")]
    UnknownCase(String),
    #[error("no bound is available for {case} at k = {k}")]
    OutOfRange { case: Case, k: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Gl3,
    Gl4,
}

impl Case {
    pub fn dimension(self) -> u64 {
        match self {
            Case::Gl3 => 3,
            Case::Gl4 => 4,
        }
    }

    /// Smallest k with any bound at all.
    pub fn minimum_k(self) -> u64 {
        match self {
            Case::Gl3 => 2,
            Case::Gl4 => 3,
        }
    }

    /// The headline piecewise claims.
    pub fn claims(self) -> Vec<Claim> {
        match self {
            Case::Gl3 => vec![
                Claim { bound: 4, from_k: 2, modulus: None, also: vec![] },
                Claim { bound: 3, from_k: 7, modulus: None, also: vec![3, 4] },
                Claim { bound: 2, from_k: 19, modulus: Some((3, vec![1])), also: vec![] },
            ],
            Case::Gl4 => vec![
                Claim { bound: 6, from_k: 15, modulus: None, also: vec![] },
                Claim { bound: 5, from_k: 21, modulus: None, also: vec![] },
                Claim { bound: 4, from_k: 39, modulus: None, also: vec![] },
                Claim { bound: 3, from_k: 139, modulus: Some((8, vec![3, 5, 7])), also: vec![] },
            ],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Gl3 => "gl3",
            Case::Gl4 => "gl4",
        })
    }
}

impl FromStr for Case {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gl3" | "3" => Ok(Case::Gl3),
            "gl4" | "4" => Ok(Case::Gl4),
            _ => Err(BoundsError::UnknownCase(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Formula,
    PropositionConstant,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Formula => "formula",
            Source::PropositionConstant => "proposition-constant",
        })
    }
}

/// Bounds at a single k. The formula fields are absent below k = 4, where
/// only a proposition constant applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub case: Case,
    pub k: u64,
    pub degree: u64,
    pub generic_denominator: Option<u64>,
    pub enhanced_denominator: Option<u64>,
    pub generic_bound: Option<u64>,
    pub enhanced_bound: Option<u64>,
    pub proposition_constant: Option<u64>,
    pub effective_bound: u64,
    pub source: Source,
}

impl BoundsRow {
    /// Best value from the displayed formulas alone.
    pub fn formula_bound(&self) -> Option<u64> {
        match (self.generic_bound, self.enhanced_bound) {
            (Some(g), Some(e)) => Some(g.min(e)),
            (g, e) => g.or(e),
        }
    }
}

/// A claim "effective ≤ bound for k ≥ from_k (with k mod m in residues),
/// and also at the listed k".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub bound: u64,
    pub from_k: u64,
    pub modulus: Option<(u64, Vec<u64>)>,
    pub also: Vec<u64>,
}

impl Claim {
    pub fn applies(&self, k: u64) -> bool {
        if self.also.contains(&k) {
            return true;
        }
        k >= self.from_k && self.modulus.as_ref().map_or(true, |(m, r)| r.contains(&(k % m)))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "≤ {} for k ≥ {}", self.bound, self.from_k)?;
        if let Some((m, r)) = &self.modulus {
            let r: Vec<String> = r.iter().map(u64::to_string).collect();
            write!(f, " with k ≡ {} (mod {m})", r.join(","))?;
        }
        if !self.also.is_empty() {
            let a: Vec<String> = self.also.iter().map(u64::to_string).collect();
            write!(f, " or k ∈ {{{}}}", a.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub claim: usize,
    pub k: u64,
    pub effective: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub case: Case,
    pub k_max: u64,
    pub rows: Vec<BoundsRow>,
    pub claims: Vec<Claim>,
    pub violations: Vec<Violation>,
    /// Smallest k whose effective bound equals each value.
    pub first_effective: BTreeMap<u64, u64>,
    /// Same, using the displayed formulas only.
    pub first_formula: BTreeMap<u64, u64>,
}

impl ThresholdReport {
    pub fn all_claims_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Dimension of the k-th symmetric power of an n-dimensional space.
pub fn sym_degree(n: u64, k: u64) -> u64 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..n {
        num *= u128::from(k + i);
        den *= u128::from(i);
    }
    (num / den) as u64
}

pub fn proposition_constant(case: Case, k: u64) -> Option<u64> {
    match (case, k) {
        (Case::Gl3, 2) => Some(4),
        (Case::Gl3, 3) => Some(3),
        (Case::Gl4, 3) => Some(6),
        (Case::Gl4, 4) => Some(7),
        _ => None,
    }
}

fn assemble(case: Case, k: u64, degree: u64, generic_den: Option<u64>, enhanced_den: Option<u64>) -> BoundsRow {
    let generic_bound = generic_den.map(|d| degree / d);
    let enhanced_bound = enhanced_den.map(|d| degree / d);
    let proposition = proposition_constant(case, k);
    let mut row = BoundsRow {
        case,
        k,
        degree,
        generic_denominator: generic_den,
        enhanced_denominator: enhanced_den,
        generic_bound,
        enhanced_bound,
        proposition_constant: proposition,
        effective_bound: 0,
        source: Source::Formula,
    };
    let formula = row.formula_bound();
    (row.effective_bound, row.source) = match (formula, proposition) {
        (Some(f), Some(p)) if p < f => (p, Source::PropositionConstant),
        (Some(f), _) => (f, Source::Formula),
        (None, Some(p)) => (p, Source::PropositionConstant),
        (None, None) => unreachable!("rows are only built where some bound applies"),
    };
    row
}

/// Generic bound ⌊deg/⌈k(k+1)/6⌉⌋, and ⌊deg/⌈3k(k+1)/16⌉⌋ when k ≡ 1 (mod 3).
pub fn gl3_bounds(k: u64) -> Result<BoundsRow, BoundsError> {
    if k < 4 {
        return Err(BoundsError::OutOfRange { case: Case::Gl3, k });
    }
    let degree = sym_degree(3, k);
    let generic = ceil_div(k * (k + 1), 6);
    let enhanced = (k % 3 == 1).then(|| ceil_div(3 * k * (k + 1), 16));
    Ok(assemble(Case::Gl3, k, degree, Some(generic), enhanced))
}

/// Generic bound ⌊deg/⌈(k−2)(k−1)k/24⌉⌋, and ⌊deg/⌈2(k−2)(k−1)k/45⌉⌋ when
/// k ≡ 3, 5, 7 (mod 8).
pub fn gl4_bounds(k: u64) -> Result<BoundsRow, BoundsError> {
    if k < 4 {
        return Err(BoundsError::OutOfRange { case: Case::Gl4, k });
    }
    let degree = sym_degree(4, k);
    let p = (k - 2) * (k - 1) * k;
    let generic = ceil_div(p, 24);
    let enhanced = matches!(k % 8, 3 | 5 | 7).then(|| ceil_div(2 * p, 45));
    Ok(assemble(Case::Gl4, k, degree, Some(generic), enhanced))
}

/// The row for any k at which some bound applies.
pub fn bounds_row(case: Case, k: u64) -> Result<BoundsRow, BoundsError> {
    if k >= 4 {
        return match case {
            Case::Gl3 => gl3_bounds(k),
            Case::Gl4 => gl4_bounds(k),
        };
    }
    if proposition_constant(case, k).is_none() {
        return Err(BoundsError::OutOfRange { case, k });
    }
    Ok(assemble(case, k, sym_degree(case.dimension(), k), None, None))
}

/// Evaluates every k from the case minimum to `k_max` and checks the claims.
pub fn threshold_scan(case: Case, k_max: u64) -> ThresholdReport {
    let rows: Vec<BoundsRow> = (case.minimum_k()..=k_max)
        .into_par_iter()
        .map(|k| bounds_row(case, k).expect("every k from the case minimum has a bound"))
        .collect();
    let claims = case.claims();
    let mut violations = Vec::new();
    let mut first_effective = BTreeMap::new();
    let mut first_formula = BTreeMap::new();
    for row in &rows {
        for (i, c) in claims.iter().enumerate() {
            if c.applies(row.k) && row.effective_bound > c.bound {
                violations.push(Violation { claim: i, k: row.k, effective: row.effective_bound });
            }
        }
        first_effective.entry(row.effective_bound).or_insert(row.k);
        if let Some(f) = row.formula_bound() {
            first_formula.entry(f).or_insert(row.k);
        }
    }
    ThresholdReport { case, k_max, rows, claims, violations, first_effective, first_formula }
}
