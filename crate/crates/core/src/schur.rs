//! Schur polynomials, Littlewood–Richardson products and the symmetric-power
//! identity families for three and four variables.
//!
//! Every Schur polynomial handed out by [`schur_poly`] is built twice, once as
//! a bialternant quotient and once as a sum over semistandard tableaux, and
//! the two must agree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::partition::Partition;
use crate::poly::{Monomial, SparsePoly};

/// Determinant `|x_j^(λ_i + n - i)|` expanded over permutations.
pub fn alternant(lambda: &Partition, n: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(n);
    if lambda.len() > n {
        return out;
    }
    let shifted: Vec<u32> = (0..n).map(|i| (lambda.part(i) + n - 1 - i) as u32).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i32;
    // Heap's algorithm; each swap flips the sign.
    let mut c = vec![0usize; n];
    let emit = |perm: &[usize], sign: i32, out: &mut SparsePoly| {
        let mut e = vec![0u32; n];
        for (i, &j) in perm.iter().enumerate() {
            e[j] = shifted[i];
        }
        out.add_term(Monomial::new(e), BigInt::from(sign));
    };
    emit(&perm, sign, &mut out);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            emit(&perm, sign, &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `S_λ` as the bialternant quotient `a_{λ+δ} / a_δ`.
pub fn schur_poly_bialternant(lambda: &Partition, n: usize) -> SparsePoly {
    assert!(n >= 1, "need at least one variable");
    if lambda.len() > n {
        return SparsePoly::zero(n);
    }
    let num = alternant(lambda, n);
    let vandermonde = alternant(&Partition::empty(), n);
    num.divide_exact(&vandermonde)
        .expect("alternant is divisible by the Vandermonde determinant")
}

/// Visits every semistandard tableau of shape `lambda` with entries in
/// `1..=n`, filling cells row by row, left to right, smallest entry first.
/// The callback receives the filling (row-major) and its content.
pub fn for_each_ssyt<F>(lambda: &Partition, n: usize, mut f: F)
where
    F: FnMut(&[Vec<usize>], &[u32]),
{
    let shape = lambda.parts().to_vec();
    let heights = lambda.conjugate().parts().to_vec();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut content = vec![0u32; n];
    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[Vec<usize>], &[u32])>(
        shape: &[usize],
        heights: &[usize],
        r: usize,
        c: usize,
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        f: &mut F,
    ) {
        if r == shape.len() {
            f(rows, content);
            return;
        }
        let (nr, nc) = if c + 1 == shape[r] { (r + 1, 0) } else { (r, c + 1) };
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        // leave room for the strictly larger entries below in this column
        let lo = left.max(above);
        let hi = n - (heights[c] - 1 - r);
        for v in lo..=hi {
            rows[r][c] = v;
            content[v - 1] += 1;
            rec(shape, heights, nr, nc, n, rows, content, f);
            content[v - 1] -= 1;
        }
    }
    if shape.len() > n {
        return;
    }
    if shape.is_empty() {
        f(&rows, &content);
        return;
    }
    rec(&shape, &heights, 0, 0, n, &mut rows, &mut content, &mut f);
}

/// `S_λ` as the generating sum over semistandard Young tableaux.
pub fn schur_poly_tableau(lambda: &Partition, n: usize) -> SparsePoly {
    assert!(n >= 1, "need at least one variable");
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for_each_ssyt(lambda, n, |_, content| {
        *counts.entry(content.to_vec()).or_default() += 1;
    });
    SparsePoly::from_terms(n, counts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// The Schur polynomial `S_λ(x_1, …, x_n)`; zero when `λ` has more than `n`
/// parts.
///
/// Panics if the bialternant and tableau constructions disagree.
pub fn schur_poly(lambda: &Partition, n: usize) -> SparsePoly {
    let a = schur_poly_bialternant(lambda, n);
    let b = schur_poly_tableau(lambda, n);
    assert_eq!(a, b, "Schur constructions disagree for λ={lambda}, n={n}");
    a
}

/// A formal nonnegative combination `Σ c_ν S_ν`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurExpansion {
    terms: BTreeMap<Partition, u64>,
}

impl SchurExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(p: Partition) -> Self {
        let mut e = Self::new();
        e.add_term(p, 1);
        e
    }

    pub fn add_term(&mut self, p: Partition, c: u64) {
        if c > 0 {
            *self.terms.entry(p).or_default() += c;
        }
    }

    pub fn coefficient(&self, p: &Partition) -> u64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &u64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SchurExpansion) -> SchurExpansion {
        let mut out = self.clone();
        for (p, &c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: u64) -> SchurExpansion {
        let mut out = SchurExpansion::new();
        for (p, &c) in &self.terms {
            out.add_term(p.clone(), c * k);
        }
        out
    }

    /// Product of two expansions through Littlewood–Richardson.
    pub fn mul(&self, other: &SchurExpansion) -> SchurExpansion {
        let mut out = SchurExpansion::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                for (nu, &c) in &lr_expand(a, b).terms {
                    out.add_term(nu.clone(), c * ca * cb);
                }
            }
        }
        out
    }

    /// Splits into the part that survives in `n` variables and the dropped
    /// terms of length greater than `n`.
    pub fn restrict(&self, n: usize) -> (SchurExpansion, SchurExpansion) {
        let mut kept = SchurExpansion::new();
        let mut dropped = SchurExpansion::new();
        for (p, &c) in &self.terms {
            if p.len() <= n {
                kept.add_term(p.clone(), c);
            } else {
                dropped.add_term(p.clone(), c);
            }
        }
        (kept, dropped)
    }

    /// `Σ c_ν S_ν(x_1..x_n)` as a polynomial.
    pub fn to_poly(&self, n: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(n);
        for (p, &c) in &self.terms {
            out = &out + &schur_poly(p, n).scale(&BigInt::from(c));
        }
        out
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == 1 {
                write!(f, "S({p})")?;
            } else {
                write!(f, "{c}*S({p})")?;
            }
        }
        Ok(())
    }
}

impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (p, c) in self.terms.iter().rev() {
            map.serialize_entry(&p.to_string(), c)?;
        }
        map.end()
    }
}

/// Enumerates Littlewood–Richardson tableaux of shape `ν/λ` and content `μ`
/// row by row. `counts[r][k]` is the number of entries `k+1` placed in row
/// `r`; a row is admissible when the filling stays column-strict and the
/// reverse reading word stays a lattice word. With `target` set only that
/// outer shape is counted.
fn lr_enumerate(lambda: &Partition, mu: &Partition, target: Option<&Partition>) -> SchurExpansion {
    let labels = mu.len();
    let rows = lambda.len() + labels;
    let mut out = SchurExpansion::new();
    if labels == 0 {
        if target.map_or(true, |t| t == lambda) {
            out.add_term(lambda.clone(), 1);
        }
        return out;
    }

    struct State<'a> {
        lambda: &'a Partition,
        mu: &'a Partition,
        target: Option<&'a Partition>,
        rows: usize,
        labels: usize,
        // counts[r][k]
        counts: Vec<Vec<usize>>,
        // used[k] = entries k+1 placed so far (rows above the current one)
        used: Vec<usize>,
        shape: Vec<usize>,
    }

    fn rec(st: &mut State, r: usize, out: &mut SchurExpansion) {
        let remaining: usize = (0..st.labels).map(|k| st.mu.part(k) - st.used[k]).sum();
        if remaining == 0 {
            let mut full = st.shape[..r].to_vec();
            // rows below r keep their λ parts
            for i in r..st.rows {
                full.push(st.lambda.part(i));
            }
            let nu = Partition::new(full).expect("rows stay decreasing");
            if st.target.map_or(true, |t| *t == nu) {
                out.add_term(nu, 1);
            }
            return;
        }
        if r == st.rows {
            return;
        }
        let mut row = vec![0usize; st.labels];
        place(st, r, 0, &mut row, out);
    }

    // Choose counts for label k in row r, then recurse on label k+1.
    fn place(st: &mut State, r: usize, k: usize, row: &mut Vec<usize>, out: &mut SchurExpansion) {
        let base = st.lambda.part(r);
        if k == st.labels || k > r {
            let len = base + row.iter().sum::<usize>();
            if r > 0 && len > st.shape[r - 1] {
                return;
            }
            if let Some(t) = st.target {
                if len != t.part(r) {
                    return;
                }
            }
            st.shape[r] = len;
            for (kk, &c) in row.iter().enumerate() {
                st.used[kk] += c;
            }
            st.counts[r].clone_from(row);
            rec(st, r + 1, out);
            for (kk, &c) in row.iter().enumerate() {
                st.used[kk] -= c;
            }
            return;
        }
        let left = st.mu.part(k) - st.used[k];
        // lattice: entries k+1 through row r may not exceed entries k above row r
        let lattice_cap = if k == 0 {
            usize::MAX
        } else {
            st.used[k - 1] - st.used[k]
        };
        // column strictness: cells holding labels <= k in row r must sit
        // under cells of row r-1 holding labels < k (or under λ)
        let col_cap = if r == 0 {
            usize::MAX
        } else {
            let above = st.lambda.part(r - 1) + (0..k).map(|j| st.counts[r - 1][j]).sum::<usize>();
            let here = base + row[..k].iter().sum::<usize>();
            above.saturating_sub(here)
        };
        let cap = left.min(lattice_cap).min(col_cap);
        for c in (0..=cap).rev() {
            row[k] = c;
            place(st, r, k + 1, row, out);
        }
        row[k] = 0;
    }

    let mut st = State {
        lambda,
        mu,
        target,
        rows,
        labels,
        counts: vec![vec![0; labels]; rows],
        used: vec![0; labels],
        shape: vec![0; rows],
    };
    rec(&mut st, 0, &mut out);
    out
}

/// `S_λ · S_μ = Σ_ν C_{λ,μ,ν} S_ν`.
pub fn lr_expand(lambda: &Partition, mu: &Partition) -> SchurExpansion {
    lr_enumerate(lambda, mu, None)
}

/// The single coefficient `C_{λ,μ,ν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.weight() != lambda.weight() + mu.weight() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    lr_enumerate(lambda, mu, Some(nu)).coefficient(nu)
}

/// A sum of products of Schur polynomials, `Σ c · S_{a}·S_{b}·…`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurSide {
    pub terms: Vec<(u64, Vec<Partition>)>,
}

impl SchurSide {
    fn product(factors: &[Partition]) -> SchurExpansion {
        factors
            .iter()
            .fold(SchurExpansion::single(Partition::empty()), |acc, p| {
                acc.mul(&SchurExpansion::single(p.clone()))
            })
    }

    pub fn expansion(&self) -> SchurExpansion {
        self.terms
            .iter()
            .fold(SchurExpansion::new(), |acc, (c, fs)| acc.add(&Self::product(fs).scale(*c)))
    }

    pub fn poly(&self, n: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(n);
        for (c, fs) in &self.terms {
            let prod = fs
                .iter()
                .fold(SparsePoly::one(n), |acc, p| &acc * &schur_poly(p, n));
            out = &out + &prod.scale(&BigInt::from(*c));
        }
        out
    }
}

impl fmt::Display for SchurSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, fs)| {
                let prod = fs
                    .iter()
                    .map(|p| format!("S({p})"))
                    .collect::<Vec<_>>()
                    .join("*");
                if *c == 1 {
                    prod
                } else {
                    format!("{c}*{prod}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityFamily {
    Gl3,
    Gl3Adjoint,
    Gl4,
}

impl std::str::FromStr for IdentityFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gl3" => Ok(Self::Gl3),
            "gl3-adjoint" => Ok(Self::Gl3Adjoint),
            "gl4" => Ok(Self::Gl4),
            _ => Err(format!("unknown identity family {s:?}")),
        }
    }
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gl3 => "gl3",
            Self::Gl3Adjoint => "gl3-adjoint",
            Self::Gl4 => "gl4",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingCheck {
    pub partition: String,
    pub vanishes: bool,
}

/// Outcome of checking one Schur identity in `nvars` variables. Carries
/// both sides so a failure can be inspected.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub family: IdentityFamily,
    pub m: Option<usize>,
    pub nvars: usize,
    pub statement: String,
    #[serde(skip)]
    pub lhs: SparsePoly,
    #[serde(skip)]
    pub rhs: SparsePoly,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub polynomial_equal: bool,
    pub lhs_expansion: SchurExpansion,
    pub rhs_expansion: SchurExpansion,
    pub expansion_equal: bool,
    /// Terms of length greater than `nvars` discarded from either side, each
    /// confirmed to be the zero polynomial.
    pub vanishing: Vec<VanishingCheck>,
    /// The term the identity relies on vanishing, when there is one.
    pub expected_vanishing: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.polynomial_equal
            && self.expansion_equal
            && self.vanishing.iter().all(|v| v.vanishes)
            && self
                .expected_vanishing
                .as_ref()
                .map_or(true, |p| self.vanishing.iter().any(|v| &v.partition == p))
    }
}

fn verify(
    family: IdentityFamily,
    m: Option<usize>,
    n: usize,
    lhs: SchurSide,
    rhs: SchurSide,
    expected_vanishing: Option<Partition>,
) -> IdentityReport {
    let lp = lhs.poly(n);
    let rp = rhs.poly(n);
    let (le, ld) = lhs.expansion().restrict(n);
    let (re, rd) = rhs.expansion().restrict(n);
    let vanishing = ld
        .terms()
        .chain(rd.terms())
        .map(|(p, _)| p.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|p| VanishingCheck {
            vanishes: schur_poly(&p, n).is_zero(),
            partition: p.to_string(),
        })
        .collect();
    IdentityReport {
        family,
        m,
        nvars: n,
        statement: format!("{lhs} = {rhs}"),
        lhs_terms: lp.num_terms(),
        rhs_terms: rp.num_terms(),
        polynomial_equal: lp == rp,
        expansion_equal: le == re,
        lhs: lp,
        rhs: rp,
        lhs_expansion: le,
        rhs_expansion: re,
        vanishing,
        expected_vanishing: expected_vanishing.map(|p| p.to_string()),
    }
}

fn row(r: usize) -> Partition {
    Partition::row(r)
}

fn col(r: usize) -> Partition {
    Partition::column(r)
}

/// `S_(m-1)·S_(1) + S_(m-3)·S_(1,1,1) = S_(m) + S_(m-2)·S_(1,1)` in three
/// variables, `m ≥ 3`.
pub fn verify_gl3_identity(m: usize) -> IdentityReport {
    assert!(m >= 3, "the GL(3) family starts at m = 3");
    let lhs = SchurSide {
        terms: vec![(1, vec![row(m - 1), col(1)]), (1, vec![row(m - 3), col(3)])],
    };
    let rhs = SchurSide {
        terms: vec![(1, vec![row(m)]), (1, vec![row(m - 2), col(2)])],
    };
    let expected = (m >= 4).then(|| Partition::hook(m - 3, 3));
    verify(IdentityFamily::Gl3, Some(m), 3, lhs, rhs, expected)
}

/// The degree-six identity behind the adjoint/symmetric-square comparison:
/// `S_(2)S_(2,2) + S_(2)S_(1)S_(1,1,1) + S_(2,2)S_(1,1) + S_(1,1)S_(1)S_(1,1,1)
///  = S_(2,1)² + 2·S_(2,1)S_(1,1,1) + S_(1,1,1)²` in three variables.
pub fn verify_gl3_adjoint_identity() -> IdentityReport {
    let (lhs, rhs) = gl3_adjoint_sides();
    verify(IdentityFamily::Gl3Adjoint, None, 3, lhs, rhs, None)
}

/// The two sides of the adjoint identity, for evaluation elsewhere.
pub fn gl3_adjoint_sides() -> (SchurSide, SchurSide) {
    let p = |s: &str| s.parse::<Partition>().expect("literal");
    let lhs = SchurSide {
        terms: vec![
            (1, vec![p("2"), p("2,2")]),
            (1, vec![p("2"), p("1"), p("1,1,1")]),
            (1, vec![p("2,2"), p("1,1")]),
            (1, vec![p("1,1"), p("1"), p("1,1,1")]),
        ],
    };
    let rhs = SchurSide {
        terms: vec![
            (1, vec![p("2,1"), p("2,1")]),
            (2, vec![p("2,1"), p("1,1,1")]),
            (1, vec![p("1,1,1"), p("1,1,1")]),
        ],
    };
    (lhs, rhs)
}

/// `S_(m) + S_(1,1)·S_(m-2) + S_(1,1,1,1)·S_(m-4) = S_(m-1)·S_(1) + S_(1,1,1)·S_(m-3)`
/// in four variables for `m ≥ 4`; for `m = 3` the variant without the
/// `S_(1,1,1,1)` term.
pub fn verify_gl4_identity(m: usize) -> IdentityReport {
    assert!(m >= 3, "the GL(4) family starts at m = 3");
    let mut lhs = vec![(1, vec![row(m)]), (1, vec![col(2), row(m - 2)])];
    if m >= 4 {
        lhs.push((1, vec![col(4), row(m - 4)]));
    }
    let rhs = vec![(1, vec![row(m - 1), col(1)]), (1, vec![col(3), row(m - 3)])];
    let expected = (m >= 5).then(|| Partition::hook(m - 4, 4));
    verify(
        IdentityFamily::Gl4,
        Some(m),
        4,
        SchurSide { terms: lhs },
        SchurSide { terms: rhs },
        expected,
    )
}

/// Value of `S_λ` at the all-ones point, i.e. the dimension of the
/// corresponding `GL_n` representation (hook-content formula).
pub fn dimension(lambda: &Partition, n: usize) -> BigInt {
    if lambda.len() > n {
        return BigInt::from(0);
    }
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row_len) in lambda.parts().iter().enumerate() {
        for j in 0..row_len {
            num *= (n + j) as i64 - i as i64;
            let hook = (row_len - j) + (conj.part(j) - i) - 1;
            den *= hook;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn s21_in_three_variables() {
        let expect = poly(
            3,
            &[
                (&[2, 1, 0], 1),
                (&[1, 2, 0], 1),
                (&[2, 0, 1], 1),
                (&[0, 2, 1], 1),
                (&[1, 0, 2], 1),
                (&[0, 1, 2], 1),
                (&[1, 1, 1], 2),
            ],
        );
        let s = schur_poly(&p("2,1"), 3);
        assert_eq!(s, expect);
        assert!(s.is_symmetric());
    }

    #[test]
    fn small_schur_examples() {
        assert!(schur_poly(&p("1,1,1,1"), 3).is_zero());
        assert_eq!(
            schur_poly(&p("1"), 3),
            poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)])
        );
        assert_eq!(schur_poly(&p("1,1,1"), 3), poly(3, &[(&[1, 1, 1], 1)]));
        assert_eq!(
            schur_poly(&p("2,2"), 3),
            poly(
                3,
                &[
                    (&[2, 2, 0], 1),
                    (&[2, 0, 2], 1),
                    (&[0, 2, 2], 1),
                    (&[2, 1, 1], 1),
                    (&[1, 2, 1], 1),
                    (&[1, 1, 2], 1)
                ]
            )
        );
        assert_eq!(schur_poly(&Partition::empty(), 2), SparsePoly::one(2));
    }

    #[test]
    fn alternant_over_vandermonde() {
        let a = alternant(&p("1,1,1"), 3);
        let d = alternant(&Partition::empty(), 3);
        assert_eq!(a.divide_exact(&d).unwrap(), poly(3, &[(&[1, 1, 1], 1)]));
    }

    #[test]
    fn ssyt_order_is_row_major_lexicographic() {
        let mut seen = Vec::new();
        for_each_ssyt(&p("2,1"), 2, |rows, _| seen.push(rows.to_vec()));
        assert_eq!(seen, vec![vec![vec![1, 1], vec![2]], vec![vec![1, 2], vec![2]]]);
    }

    #[test]
    fn lr_examples() {
        let e = lr_expand(&p("3"), &p("1,1"));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&p("4,1")), 1);
        assert_eq!(e.coefficient(&p("3,1,1")), 1);
        assert_eq!(lr_expand(&Partition::empty(), &p("2,1")), SchurExpansion::single(p("2,1")));
        assert_eq!(lr_coefficient(&p("3"), &p("1,1"), &p("4,1")), 1);
        assert_eq!(lr_coefficient(&p("3,1"), &Partition::empty(), &p("3,1")), 1);
        assert_eq!(lr_coefficient(&p("3"), &p("1,1"), &p("2,2,1")), 0);
        assert_eq!(lr_coefficient(&p("3"), &p("1,1"), &p("4,2")), 0);
    }

    #[test]
    fn lr_21_squared() {
        // (2,1)^2 expansion; the value 2 at (3,2,1) is frozen from the
        // polynomial-peeling oracle in the oracle crate.
        let e = lr_expand(&p("2,1"), &p("2,1"));
        let expect: Vec<(&str, u64)> = vec![
            ("4,2", 1),
            ("4,1,1", 1),
            ("3,3", 1),
            ("3,2,1", 2),
            ("3,1,1,1", 1),
            ("2,2,2", 1),
            ("2,2,1,1", 1),
        ];
        assert_eq!(e.len(), expect.len());
        for (s, c) in expect {
            assert_eq!(e.coefficient(&p(s)), c, "{s}");
        }
        assert_eq!(lr_coefficient(&p("2,1"), &p("2,1"), &p("3,2,1")), 2);
    }

    #[test]
    fn lr_matches_pieri() {
        for n in 0..=5 {
            for lam in Partition::all_of(n) {
                for r in 0..=3 {
                    let e = lr_expand(&lam, &Partition::row(r));
                    let strips = lam.pieri_row(r);
                    assert_eq!(e.len(), strips.len());
                    for nu in strips {
                        assert_eq!(e.coefficient(&nu), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn lr_symmetric_and_dimension_consistent() {
        for a in 0..=4 {
            for b in 0..=4 {
                for lam in Partition::all_of(a) {
                    for mu in Partition::all_of(b) {
                        let e = lr_expand(&lam, &mu);
                        assert_eq!(e, lr_expand(&mu, &lam));
                        for n in [3usize, 4] {
                            let lhs = dimension(&lam, n) * dimension(&mu, n);
                            let rhs: BigInt = e
                                .terms()
                                .map(|(nu, &c)| dimension(nu, n) * BigInt::from(c))
                                .sum();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_is_value_at_ones() {
        for w in 0..=6 {
            for lam in Partition::all_of(w) {
                for n in 1..=4 {
                    assert_eq!(dimension(&lam, n), schur_poly(&lam, n).eval_i64(&vec![1; n]));
                }
            }
        }
    }

    #[test]
    fn identity_small_cases() {
        let r = verify_gl3_identity(3);
        assert!(r.passed(), "{r:?}");
        assert!(r.vanishing.is_empty());
        let r = verify_gl3_identity(4);
        assert!(r.passed());
        assert_eq!(r.expected_vanishing.as_deref(), Some("1,1,1,1"));
        assert_eq!(r.vanishing, vec![VanishingCheck { partition: "1,1,1,1".into(), vanishes: true }]);
        assert!(verify_gl4_identity(3).passed());
        let r = verify_gl4_identity(5);
        assert!(r.passed());
        assert!(r.vanishing.iter().any(|v| v.partition == "1,1,1,1,1"));
        assert!(verify_gl3_adjoint_identity().passed());
    }

    #[test]
    fn adjoint_identity_evaluations() {
        let r = verify_gl3_adjoint_identity();
        let at = |pt: &[i64]| (r.lhs.eval_i64(pt), r.rhs.eval_i64(pt));
        let (l, rr) = at(&[1, 1, 1]);
        assert_eq!(l, rr);
        // LHS at ones: 6*6 + 6*3*1 + 6*3 + 3*3*1 = 81; RHS 8*8 + 2*8 + 1 = 81
        assert_eq!(l, BigInt::from(81));
        let (l, rr) = at(&[1, 0, 0]);
        assert_eq!(l, BigInt::from(0));
        assert_eq!(rr, BigInt::from(0));
    }

    #[test]
    fn broken_identity_is_reported() {
        let lhs = SchurSide { terms: vec![(1, vec![p("2"), p("1")])] };
        let rhs = SchurSide { terms: vec![(1, vec![p("3")])] };
        let r = verify(IdentityFamily::Gl3, None, 3, lhs, rhs, None);
        assert!(!r.polynomial_equal);
        assert!(!r.expansion_equal);
        assert!(!r.passed());
    }
}
