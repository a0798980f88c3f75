//! Class functions on a character table: Adams operations, symmetric and
//! exterior powers, adjoints, inner products and decompositions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::group::{CharacterTable, TableError};
use crate::partition::Partition;
use crate::schur::{gl3_adjoint_sides, IdentityFamily, SchurSide};

#[derive(Debug, Error)]
pub enum PlethysmError {
    #[error("class functions belong to different tables")]
    TableMismatch,
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("inner product {0} is not rational")]
    NotRational(Cyclotomic),
    #[error("multiplicity of χ{index} is {value}, not an integer")]
    NonIntegral { index: usize, value: Rational },
    #[error("multiplicity of χ{index} is negative ({value})")]
    Negative { index: usize, value: BigInt },
    #[error("irreducibles do not reconstruct the class function; the table is incomplete")]
    Reconstruction,
    #[error("character index {0} out of range")]
    NoSuchCharacter(usize),
    #[error("expected a character of degree {expected}, got {got}")]
    Degree { expected: u32, got: String },
}

/// A function on the classes of a character table.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    table: Arc<CharacterTable>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Cyclotomic>) -> Result<Self, PlethysmError> {
        if values.len() != table.num_classes() {
            return Err(PlethysmError::Length { expected: table.num_classes(), got: values.len() });
        }
        Ok(ClassFunction { table, values })
    }

    /// The irreducible character with 0-based index `i`.
    pub fn irreducible(table: &Arc<CharacterTable>, i: usize) -> Result<Self, PlethysmError> {
        let values = table.irreducibles.get(i).ok_or(PlethysmError::NoSuchCharacter(i))?.clone();
        Ok(ClassFunction { table: table.clone(), values })
    }

    pub fn constant(table: &Arc<CharacterTable>, c: Cyclotomic) -> Self {
        ClassFunction { table: table.clone(), values: vec![c; table.num_classes()] }
    }

    pub fn trivial(table: &Arc<CharacterTable>) -> Self {
        Self::constant(table, Cyclotomic::one())
    }

    pub fn zero(table: &Arc<CharacterTable>) -> Self {
        Self::constant(table, Cyclotomic::zero())
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// The degree as a nonnegative integer, if it is one.
    pub fn degree_u32(&self) -> Option<u32> {
        self.values[0].to_integer().and_then(|d| d.to_u32())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn same_table(&self, other: &ClassFunction) -> Result<(), PlethysmError> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(PlethysmError::TableMismatch)
        }
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self, PlethysmError> {
        self.same_table(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { table: self.table.clone(), values })
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction { table: self.table.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self, PlethysmError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<Self, PlethysmError> {
        self.zip(other, |a, b| a - b)
    }

    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &ClassFunction) -> Result<Self, PlethysmError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|v| v.scale(q))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Complex conjugate (the dual character).
    pub fn conj(&self) -> Self {
        self.map(Cyclotomic::conj)
    }

    /// `g ↦ χ(g^m)`.
    pub fn adams(&self, m: u64) -> Result<Self, PlethysmError> {
        let map = self.table.power_map(m)?;
        Ok(ClassFunction { table: self.table.clone(), values: map.iter().map(|&c| self.values[c].clone()).collect() })
    }

    /// `[Sym^0 χ, …, Sym^k χ]` by `j·Sym^j = Σ_{i=1..j} ψ^i(χ)·Sym^(j-i)`.
    pub fn sym_powers(&self, k: usize) -> Result<Vec<Self>, PlethysmError> {
        self.newton(k, false)
    }

    /// `[Λ^0 χ, …, Λ^k χ]` by `j·Λ^j = Σ_{i=1..j} (-1)^(i-1) ψ^i(χ)·Λ^(j-i)`.
    pub fn ext_powers(&self, k: usize) -> Result<Vec<Self>, PlethysmError> {
        self.newton(k, true)
    }

    fn newton(&self, k: usize, alternating: bool) -> Result<Vec<Self>, PlethysmError> {
        let adams: Vec<ClassFunction> = (1..=k as u64).map(|i| self.adams(i)).collect::<Result<_, _>>()?;
        let mut out = vec![ClassFunction::trivial(&self.table)];
        for j in 1..=k {
            let mut acc = vec![Cyclotomic::zero(); self.values.len()];
            for i in 1..=j {
                let negate = alternating && i % 2 == 0;
                for (c, slot) in acc.iter_mut().enumerate() {
                    let t = &adams[i - 1].values[c] * &out[j - i].values[c];
                    *slot = if negate { &*slot - &t } else { &*slot + &t };
                }
            }
            let inv = Rational::new(BigInt::one(), BigInt::from(j));
            out.push(ClassFunction { table: self.table.clone(), values: acc.iter().map(|v| v.scale(&inv)).collect() });
        }
        Ok(out)
    }

    pub fn sym_power(&self, k: usize) -> Result<Self, PlethysmError> {
        Ok(self.sym_powers(k)?.pop().expect("k + 1 entries"))
    }

    pub fn ext_power(&self, k: usize) -> Result<Self, PlethysmError> {
        Ok(self.ext_powers(k)?.pop().expect("k + 1 entries"))
    }

    /// `Λ^n χ` for `n = χ(1)`.
    pub fn determinant(&self) -> Result<Self, PlethysmError> {
        let n = self.degree_u32().ok_or_else(|| PlethysmError::Degree { expected: 0, got: self.degree().to_string() })?;
        self.ext_power(n as usize)
    }

    /// `χ·conj(χ) − 1`.
    pub fn adjoint(&self) -> Self {
        self.map(|v| &(v * &v.conj()) - &Cyclotomic::one())
    }

    /// The Schur functor `S_λ(χ)`, via the Jacobi–Trudi determinant in the
    /// symmetric powers.
    pub fn schur_functor(&self, lambda: &Partition) -> Result<Self, PlethysmError> {
        let l = lambda.len();
        if l == 0 {
            return Ok(ClassFunction::trivial(&self.table));
        }
        let sym = self.sym_powers(lambda.part(0) + l - 1)?;
        let h = |idx: i64| -> Option<&ClassFunction> { (idx >= 0).then(|| &sym[idx as usize]) };
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..self.values.len() {
            let m: Vec<Vec<Cyclotomic>> = (0..l)
                .map(|i| {
                    (0..l)
                        .map(|j| {
                            let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                            h(idx).map_or_else(Cyclotomic::zero, |f| f.values[c].clone())
                        })
                        .collect()
                })
                .collect();
            values.push(determinant(m));
        }
        Ok(ClassFunction { table: self.table.clone(), values })
    }

    /// `(1/|G|) Σ_c |c|·φ(c)·conj(ψ(c))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Rational, PlethysmError> {
        self.same_table(other)?;
        let mut acc = Cyclotomic::zero();
        for (c, info) in self.table.classes.iter().enumerate() {
            let t = &self.values[c] * &other.values[c].conj();
            acc = &acc + &t.scale(&Rational::from_integer(BigInt::from(info.size)));
        }
        let acc = acc.scale(&Rational::new(BigInt::one(), BigInt::from(self.table.order)));
        acc.to_rational().ok_or(PlethysmError::NotRational(acc))
    }

    pub fn norm(&self) -> Result<Rational, PlethysmError> {
        self.inner_product(self)
    }

    /// Signed multiplicities of every irreducible; the irreducibles must
    /// reconstruct `self`.
    pub fn decompose_virtual(&self) -> Result<VirtualDecomposition, PlethysmError> {
        let table = self.table.clone();
        let mut coefficients = Vec::with_capacity(table.irreducibles.len());
        let mut rebuilt = ClassFunction::zero(&table);
        for i in 0..table.irreducibles.len() {
            let chi = ClassFunction::irreducible(&table, i)?;
            let m = self.inner_product(&chi)?;
            if !m.is_integer() {
                return Err(PlethysmError::NonIntegral { index: i + 1, value: m });
            }
            let m = m.to_integer();
            if !m.is_zero() {
                rebuilt = rebuilt.add(&chi.scale(&Rational::from_integer(m.clone())))?;
            }
            coefficients.push(m);
        }
        if rebuilt != *self {
            return Err(PlethysmError::Reconstruction);
        }
        Ok(VirtualDecomposition { coefficients })
    }

    /// Multiplicities of the irreducible constituents of an actual character.
    pub fn decompose(&self) -> Result<Decomposition, PlethysmError> {
        let v = self.decompose_virtual()?;
        let mut multiplicities = BTreeMap::new();
        for (i, m) in v.coefficients.iter().enumerate() {
            if m.is_negative() {
                return Err(PlethysmError::Negative { index: i + 1, value: m.clone() });
            }
            if let Some(m) = m.to_u64().filter(|&m| m > 0) {
                multiplicities.insert(i, m);
            }
        }
        let degrees = multiplicities
            .keys()
            .map(|&i| (i, self.table.irreducibles[i][0].to_integer().and_then(|d| d.to_u64()).unwrap_or(0)))
            .collect();
        Ok(Decomposition { multiplicities, degrees })
    }

    /// One-dimensional characters `μ` with `χ·μ = χ` and with `χ·μ = conj(χ)`.
    pub fn self_twists(&self) -> Result<SelfTwists, PlethysmError> {
        let table = self.table.clone();
        let dual = self.conj();
        let mut s = Vec::new();
        let mut t = Vec::new();
        for (i, row) in table.irreducibles.iter().enumerate() {
            if !row[0].is_one() {
                continue;
            }
            let mu = ClassFunction::irreducible(&table, i)?;
            let twisted = self.mul(&mu)?;
            if twisted == *self {
                s.push(i);
            }
            if twisted == dual {
                t.push(i);
            }
        }
        Ok(SelfTwists { s, t })
    }

    /// Pointwise comparison of the two sides of an identity family evaluated
    /// at `self`, with each Schur function read as a Schur functor. For
    /// `gl3` and `gl4` the sides are built from `Sym^j` and `Λ^j` directly.
    pub fn verify_character_identity(
        &self,
        family: IdentityFamily,
        m: usize,
    ) -> Result<CharacterIdentityReport, PlethysmError> {
        let n = self.degree_u32().unwrap_or(0);
        let expected = match family {
            IdentityFamily::Gl3 | IdentityFamily::Gl3Adjoint => 3,
            IdentityFamily::Gl4 => 4,
        };
        if n != expected {
            return Err(PlethysmError::Degree { expected, got: self.degree().to_string() });
        }
        let (lhs, rhs) = match family {
            IdentityFamily::Gl3 => {
                assert!(m >= 3, "the GL(3) family starts at m = 3");
                let sym = self.sym_powers(m)?;
                let ext = self.ext_powers(3)?;
                let lhs = sym[m - 1].mul(self)?.add(&sym[m - 3].mul(&ext[3])?)?;
                let rhs = sym[m].add(&sym[m - 2].mul(&ext[2])?)?;
                (lhs, rhs)
            }
            IdentityFamily::Gl4 => {
                assert!(m >= 3, "the GL(4) family starts at m = 3");
                let sym = self.sym_powers(m)?;
                let ext = self.ext_powers(4)?;
                let mut lhs = sym[m].add(&ext[2].mul(&sym[m - 2])?)?;
                if m >= 4 {
                    lhs = lhs.add(&ext[4].mul(&sym[m - 4])?)?;
                }
                let rhs = sym[m - 1].mul(self)?.add(&ext[3].mul(&sym[m - 3])?)?;
                (lhs, rhs)
            }
            IdentityFamily::Gl3Adjoint => {
                let (lhs, rhs) = gl3_adjoint_sides();
                (self.evaluate_side(&lhs)?, self.evaluate_side(&rhs)?)
            }
        };
        let mismatched: Vec<usize> = (0..lhs.values.len()).filter(|&c| lhs.values[c] != rhs.values[c]).collect();
        Ok(CharacterIdentityReport {
            family,
            m: (family != IdentityFamily::Gl3Adjoint).then_some(m),
            degree: n,
            equal: mismatched.is_empty(),
            mismatched_classes: mismatched,
            lhs,
            rhs,
        })
    }

    /// `Σ coeff·Π S_λ(χ)` over the terms of a Schur-polynomial side.
    pub fn evaluate_side(&self, side: &SchurSide) -> Result<Self, PlethysmError> {
        let mut acc = ClassFunction::zero(&self.table);
        for (coeff, factors) in &side.terms {
            let mut term = ClassFunction::trivial(&self.table);
            for lambda in factors {
                term = term.mul(&self.schur_functor(lambda)?)?;
            }
            acc = acc.add(&term.scale_int(*coeff as i64))?;
        }
        Ok(acc)
    }

    /// Compares `⟨Sym²χ, Sym²χ⟩ = 1` with `⟨Ad χ, Ad χ⟩ = 1` for a
    /// three-dimensional character.
    pub fn adjoint_link_check(&self) -> Result<AdjointLink, PlethysmError> {
        if self.degree_u32() != Some(3) {
            return Err(PlethysmError::Degree { expected: 3, got: self.degree().to_string() });
        }
        let sym2 = self.sym_power(2)?.norm()?;
        let ad = self.adjoint().norm()?;
        let sym2_irreducible = sym2.is_one();
        let adjoint_irreducible = ad.is_one();
        Ok(AdjointLink {
            sym2_norm: sym2.to_string(),
            adjoint_norm: ad.to_string(),
            sym2_irreducible,
            adjoint_irreducible,
            holds: sym2_irreducible == adjoint_irreducible,
        })
    }

    /// `Σ_{i+j=k} (-1)^i Λ^i χ · Sym^j χ`, which vanishes for `k ≥ 1`.
    pub fn koszul_sum(&self, k: usize) -> Result<Self, PlethysmError> {
        let sym = self.sym_powers(k)?;
        let ext = self.ext_powers(k)?;
        let mut acc = ClassFunction::zero(&self.table);
        for i in 0..=k {
            let t = ext[i].mul(&sym[k - i])?;
            acc = if i % 2 == 0 { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }
}

fn determinant(mut m: Vec<Vec<Cyclotomic>>) -> Cyclotomic {
    let n = m.len();
    let mut det = Cyclotomic::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Cyclotomic::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for k in col..n {
                let t = &f * &m[col][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
    }
    det
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", cells.join(", "))
    }
}

/// Constituents of an actual character, keyed by 0-based irreducible index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub multiplicities: BTreeMap<usize, u64>,
    pub degrees: BTreeMap<usize, u64>,
}

impl Decomposition {
    /// Number of constituents counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn total_degree(&self) -> u64 {
        self.multiplicities.iter().map(|(i, m)| m * self.degrees[i]).sum()
    }

    /// Multiplicity of every irreducible in table order.
    pub fn vector(&self, num_irreducibles: usize) -> Vec<u64> {
        (0..num_irreducibles).map(|i| self.multiplicities.get(&i).copied().unwrap_or(0)).collect()
    }
}

/// `χ3 + 2·χ5`-style rendering with 1-based indices.
impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(i, m)| if *m == 1 { format!("χ{}", i + 1) } else { format!("{m}·χ{}", i + 1) })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualDecomposition {
    pub coefficients: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfTwists {
    /// 0-based indices of linear characters with `χ·μ = χ`.
    pub s: Vec<usize>,
    /// 0-based indices of linear characters with `χ·μ = conj(χ)`.
    pub t: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointLink {
    pub sym2_norm: String,
    pub adjoint_norm: String,
    pub sym2_irreducible: bool,
    pub adjoint_irreducible: bool,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct CharacterIdentityReport {
    pub family: IdentityFamily,
    pub m: Option<usize>,
    pub degree: u32,
    pub equal: bool,
    pub mismatched_classes: Vec<usize>,
    pub lhs: ClassFunction,
    pub rhs: ClassFunction,
}
