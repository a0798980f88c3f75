//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored over its minimal conductor `N` as coordinates in the
//! power basis `1, ζ_N, …, ζ_N^(φ(N)-1)`, so structural equality is field
//! equality. Mixed-conductor operations go through `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("cannot parse cyclotomic {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer coefficients of `Φ_n`, lowest degree first, via
/// `Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Per-conductor data: `reduce[e]` holds `ζ^e` in the power basis.
struct Basis {
    phi: usize,
    reduce: Vec<Vec<i64>>,
}

impl Basis {
    fn build(n: u32) -> Basis {
        let phi = euler_phi(n) as usize;
        let cp = cyclotomic_polynomial(n);
        let mut reduce = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            reduce.push(cur.clone());
            // multiply by x and reduce the degree-phi overflow
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * cp[i];
                }
            }
        }
        Basis { phi, reduce }
    }

    /// Reduce a length-`n` vector over all powers of `ζ_n`.
    fn from_expanded(&self, expanded: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        for (e, c) in expanded.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in self.reduce[e].iter().enumerate() {
                if r != 0 {
                    out[i] += c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        out
    }
}

/// Left inverse of the embedding `Q(ζ_m) → Q(ζ_n)`, used to test membership
/// and pull coordinates back.
struct Embedding {
    rows: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
    columns: Vec<Vec<i64>>,
}

impl Embedding {
    fn build(n: u32, m: u32) -> Embedding {
        let big = basis(n);
        let small_phi = euler_phi(m) as usize;
        let step = (n / m) as usize;
        let columns: Vec<Vec<i64>> = (0..small_phi)
            .map(|i| big.reduce[(i * step) % n as usize].clone())
            .collect();
        // choose phi(m) independent rows of the phi(n) x phi(m) matrix
        let mut rows = Vec::new();
        let mut echelon: Vec<Vec<Rational>> = Vec::new();
        for r in 0..big.phi {
            let mut v: Vec<Rational> = columns
                .iter()
                .map(|col| Rational::from_integer(BigInt::from(col[r])))
                .collect();
            for (e, piv) in echelon.iter().zip(pivots_of(&echelon)) {
                if !v[piv].is_zero() {
                    let f = &v[piv] / &e[piv];
                    for k in 0..small_phi {
                        let d = &f * &e[k];
                        v[k] -= d;
                    }
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                echelon.push(v);
                rows.push(r);
                if rows.len() == small_phi {
                    break;
                }
            }
        }
        let square: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&r| {
                columns
                    .iter()
                    .map(|col| Rational::from_integer(BigInt::from(col[r])))
                    .collect()
            })
            .collect();
        Embedding { rows, inverse: invert(square), columns }
    }

    fn pull_back(&self, z: &[Rational]) -> Option<Vec<Rational>> {
        let picked: Vec<&Rational> = self.rows.iter().map(|&r| &z[r]).collect();
        let c: Vec<Rational> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&picked).map(|(a, b)| a * *b).sum())
            .collect();
        for (r, zr) in z.iter().enumerate() {
            let mut acc = Rational::zero();
            for (ci, col) in c.iter().zip(&self.columns) {
                if col[r] != 0 {
                    acc += ci * Rational::from_integer(BigInt::from(col[r]));
                }
            }
            if &acc != zr {
                return None;
            }
        }
        Some(c)
    }
}

fn pivots_of(echelon: &[Vec<Rational>]) -> Vec<usize> {
    echelon
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect()
}

fn invert(mut a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].clone();
        for k in 0..n {
            a[col][k] = &a[col][k] / &f;
            inv[col][k] = &inv[col][k] / &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for k in 0..n {
                    let d = &g * &a[col][k];
                    a[r][k] -= d;
                    let d = &g * &inv[col][k];
                    inv[r][k] -= d;
                }
            }
        }
    }
    inv
}

fn basis(n: u32) -> Arc<Basis> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().expect("basis cache").get(&n) {
        return b.clone();
    }
    let b = Arc::new(Basis::build(n));
    cache.write().expect("basis cache").entry(n).or_insert(b).clone()
}

fn embedding(n: u32, m: u32) -> Arc<Embedding> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), Arc<Embedding>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.read().expect("embedding cache").get(&(n, m)) {
        return e.clone();
    }
    let e = Arc::new(Embedding::build(n, m));
    cache.write().expect("embedding cache").entry((n, m)).or_insert(e).clone()
}

/// Integer arithmetic in `Z[ζ_n]` at a fixed conductor, for bulk sums where
/// canonicalising every intermediate value would dominate.
#[derive(Clone)]
pub struct DenseRing {
    n: u32,
    basis: Arc<Basis>,
}

impl DenseRing {
    pub fn new(n: u32) -> DenseRing {
        DenseRing { n, basis: basis(n) }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.basis.phi]
    }

    /// Coordinates of `z`, or `None` if `z` is not an algebraic integer
    /// expressible here.
    pub fn embed(&self, z: &Cyclotomic) -> Option<Vec<i64>> {
        if self.n % z.n != 0 {
            return None;
        }
        z.embed(self.n)
            .coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    fn reduce(&self, expanded: &[i64]) -> Vec<i64> {
        let mut out = self.zero();
        for (e, &c) in expanded.iter().enumerate() {
            if c != 0 {
                for (o, &r) in out.iter_mut().zip(&self.basis.reduce[e]) {
                    *o += c * r;
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.n as usize;
        let mut prod = vec![0i64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[(i + j) % n] += x * y;
            }
        }
        self.reduce(&prod)
    }

    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let n = self.n as usize;
        let mut expanded = vec![0i64; n];
        for (i, &x) in a.iter().enumerate() {
            expanded[(n - i) % n] += x;
        }
        self.reduce(&expanded)
    }

    pub fn to_cyclotomic(&self, a: &[i64]) -> Cyclotomic {
        CycloVec {
            conductor: self.n,
            coeffs: a.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect(),
        }
        .reduce_conductor()
    }
}

/// An element written over a particular conductor, not necessarily minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloVec {
    pub conductor: u32,
    pub coeffs: Vec<Rational>,
}

impl CycloVec {
    /// From coefficients of `ζ_n^0 … ζ_n^(n-1)`; any linear relations among
    /// the powers are resolved here.
    pub fn from_expanded(n: u32, expanded: &[Rational]) -> CycloVec {
        assert!(n >= 1);
        assert_eq!(expanded.len(), n as usize);
        CycloVec { conductor: n, coeffs: basis(n).from_expanded(expanded) }
    }

    /// Rewrites over the smallest conductor whose field contains the element.
    pub fn reduce_conductor(&self) -> Cyclotomic {
        let mut n = self.conductor;
        let mut c = self.coeffs.clone();
        if c.iter().skip(1).all(Zero::is_zero) {
            return Cyclotomic::from_rational(c.swap_remove(0));
        }
        'outer: loop {
            if n == 1 {
                break;
            }
            for q in prime_factors(n) {
                let m = n / q;
                if let Some(small) = embedding(n, m).pull_back(&c) {
                    n = m;
                    c = small;
                    continue 'outer;
                }
            }
            break;
        }
        Cyclotomic { n, coeffs: c }
    }
}

/// An element of `Q(ζ_∞)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(k))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![q] }
    }

    /// `ζ_n^a` with `ζ_n = e^(2πi/n)`.
    pub fn root_of_unity(n: u32, a: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut expanded = vec![Rational::zero(); n as usize];
        expanded[a.rem_euclid(n as i64) as usize] = Rational::one();
        CycloVec::from_expanded(n, &expanded).reduce_conductor()
    }

    /// Builds `Σ c_k ζ_n^k` from `(k, c_k)` pairs.
    pub fn from_terms(n: u32, terms: &[(i64, Rational)]) -> Self {
        let mut expanded = vec![Rational::zero(); n as usize];
        for (k, c) in terms {
            expanded[k.rem_euclid(n as i64) as usize] += c;
        }
        CycloVec::from_expanded(n, &expanded).reduce_conductor()
    }

    /// Builds `Σ c_k ζ_n^k` from integer multiplicities indexed by `k`.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        let expanded: Vec<Rational> = (0..n as usize)
            .map(|k| Rational::from_integer(BigInt::from(counts.get(k).copied().unwrap_or(0))))
            .collect();
        CycloVec::from_expanded(n, &expanded).reduce_conductor()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_one()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.n == 1).then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// The same element over conductor `m` (a multiple of the conductor).
    pub fn embed(&self, m: u32) -> CycloVec {
        assert_eq!(m % self.n, 0, "conductor {} does not divide {m}", self.n);
        let step = (m / self.n) as usize;
        let mut expanded = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            expanded[i * step] = c.clone();
        }
        CycloVec::from_expanded(m, &expanded)
    }

    fn expanded_in(&self, m: u32) -> Vec<Rational> {
        let step = (m / self.n) as usize;
        let mut expanded = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            expanded[i * step] = c.clone();
        }
        expanded
    }

    fn common(&self, other: &Cyclotomic) -> u32 {
        self.n.lcm(&other.n)
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn add_impl(&self, other: &Cyclotomic, sign: i32) -> Cyclotomic {
        if self.n == other.n && self.n == 1 {
            let v = if sign > 0 {
                &self.coeffs[0] + &other.coeffs[0]
            } else {
                &self.coeffs[0] - &other.coeffs[0]
            };
            return Cyclotomic::from_rational(v);
        }
        let m = self.common(other);
        let a = self.embed(m);
        let b = other.embed(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| if sign > 0 { x + y } else { x - y })
            .collect();
        CycloVec { conductor: m, coeffs }.reduce_conductor()
    }

    fn mul_impl(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.n == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let m = self.common(other);
        let mu = m as usize;
        let a = self.expanded_in(m);
        let b = other.expanded_in(m);
        let mut prod = vec![Rational::zero(); mu];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % mu] += x * y;
                }
            }
        }
        CycloVec::from_expanded(m, &prod).reduce_conductor()
    }

    /// The Galois automorphism `ζ ↦ ζ^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "Galois exponent must be a unit");
        let mut expanded = vec![Rational::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            expanded[(i as i64 * k).rem_euclid(n) as usize] += c;
        }
        CycloVec::from_expanded(self.n, &expanded).reduce_conductor()
    }

    /// Complex conjugation, `ζ ↦ ζ^(-1)`.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// The field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        let n = self.n as i64;
        let mut acc = Cyclotomic::one();
        for k in 1..=n {
            if k.gcd(&n) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Cyclotomic, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::InverseOfZero);
        }
        if self.n == 1 {
            return Ok(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        let n = self.n as i64;
        let mut others = Cyclotomic::one();
        for k in 2..=n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (&others * self).to_rational().expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn pow(&self, e: u32) -> Cyclotomic {
        let mut out = Cyclotomic::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Floating-point value at `ζ_N = e^(2πi/N)`. Diagnostics only.
    pub fn approx(&self) -> ComplexApprox {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        ComplexApprox { re, im }
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_integer(k)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, 1)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, -1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text: power-basis terms over the minimal conductor, constant
/// first, e.g. `1+2*E(3)` or `-E(5)-E(5)^2`. Zero prints as `0`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if k == 0 {
                fmt_rational(&c.abs())
            } else {
                let root = if k == 1 {
                    format!("E({})", self.n)
                } else {
                    format!("E({})^{}", self.n, k)
                };
                if c.abs().is_one() {
                    root
                } else {
                    format!("{}*{}", fmt_rational(&c.abs()), root)
                }
            };
            match (first, c.is_negative()) {
                (true, true) | (false, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> CyclotomicError {
        CyclotomicError::Parse { input: self.src.to_string(), reason: reason.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, CyclotomicError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn rational(&mut self) -> Result<Rational, CyclotomicError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn root(&mut self) -> Result<Cyclotomic, CyclotomicError> {
        if !(self.eat(b'E') && self.eat(b'(')) {
            return Err(self.err("expected E(N)"));
        }
        let n = self.integer()?.to_u32().filter(|&n| n >= 1).ok_or_else(|| self.err("bad conductor"))?;
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let k = if self.eat(b'^') {
            let neg = self.eat(b'-');
            let k = self.integer()?.to_i64().ok_or_else(|| self.err("bad exponent"))?;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok(Cyclotomic::root_of_unity(n, k))
    }

    // factor := rational | E(N)[^k] ; term := factor ('*' factor)*
    fn term(&mut self) -> Result<Cyclotomic, CyclotomicError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclotomic, CyclotomicError> {
        match self.peek() {
            Some(b'E') => self.root(),
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from_rational(self.rational()?)),
            _ => Err(self.err("expected a number or E(N)")),
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, CyclotomicError> {
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }
}

impl FromStr for Cyclotomic {
    type Err = CyclotomicError;

    /// Accepts integers, fractions `a/b` and sums of terms `c*E(N)^k`;
    /// `.` is read as zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "." {
            return Ok(Cyclotomic::zero());
        }
        if t.is_empty() {
            return Err(CyclotomicError::Parse { input: s.to_string(), reason: "empty".into() });
        }
        Parser { src: t, bytes: t.as_bytes(), pos: 0 }.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cyclotomic {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn zeta6_is_one_plus_zeta3() {
        let z6 = Cyclotomic::root_of_unity(6, 1);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(z6, &Cyclotomic::one() + &z3);
        assert!((&z6 * &z6.conj()).is_one());
        // ζ6² - ζ6 + 1 = 0
        assert!((&(&z6 * &z6) - &z6 + Cyclotomic::one()).is_zero());
        let a = z6.approx();
        assert!((a.re - 0.5).abs() < 1e-12 && (a.im - 0.75f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_conjugate() {
        let z5 = |k| Cyclotomic::root_of_unity(5, k);
        let x = -(&z5(1) + &z5(4));
        assert!((&(&(&x * &x) - &x) - &Cyclotomic::one()).is_zero());
        assert!((x.approx().re + 0.618_033_988_749_895).abs() < 1e-12);
        assert!(x.approx().im.abs() < 1e-12);
    }

    #[test]
    fn conjugation_fixes_rationals() {
        let r = Cyclotomic::from_rational(q(-7, 3));
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn conductor_reduction() {
        let mut e = vec![Rational::zero(); 6];
        e[2] = Rational::one();
        let over6 = CycloVec::from_expanded(6, &e);
        assert_eq!(over6.conductor, 6);
        let red = over6.reduce_conductor();
        assert_eq!(red.conductor(), 3);
        assert_eq!(red, Cyclotomic::root_of_unity(3, 1));
        // cross-embedding check
        assert_eq!(red.embed(6), over6);
        assert_eq!(red.embed(6).reduce_conductor(), red);

        assert_eq!(Cyclotomic::one().embed(12).reduce_conductor().conductor(), 1);

        let z8 = Cyclotomic::root_of_unity(8, 1);
        let sqrt2 = &z8 + &z8.conj();
        assert_eq!(sqrt2.conductor(), 8);
        assert_eq!(&sqrt2 * &sqrt2, Cyclotomic::from_integer(2));
        // √-3 lives in Q(ζ3), √5 in Q(ζ5)
        let s3 = &Cyclotomic::root_of_unity(3, 1) - &Cyclotomic::root_of_unity(3, 2);
        assert_eq!(s3.conductor(), 3);
        assert_eq!(Cyclotomic::root_of_unity(10, 2).conductor(), 5);
        assert_eq!(Cyclotomic::root_of_unity(10, 1).conductor(), 5);
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-3", "5/2", "E(3)", "-E(4)", "1+2*E(3)", "-1/2*E(5)-E(5)^3", "E(9)^2+E(9)^5"] {
            assert_eq!(c(s).to_string(), s, "{s}");
        }
        assert_eq!(c("E(9)^4+E(9)^7"), -&Cyclotomic::root_of_unity(9, 1));
        assert_eq!(c("E(9)^4+E(9)^7").to_string(), "-E(9)");
        assert_eq!(c("."), Cyclotomic::zero());
        assert_eq!(c("E(6)"), c("1+E(3)"));
        assert_eq!(c("3*E(4)^-1"), c("-3*E(4)"));
        assert_eq!(c(" 2 * E(5) ^ 2 "), c("2*E(5)^2"));
        assert!("E(0)".parse::<Cyclotomic>().is_err());
        assert!("1/0".parse::<Cyclotomic>().is_err());
        assert!("x".parse::<Cyclotomic>().is_err());
        assert!("1+".parse::<Cyclotomic>().is_err());
        assert!("".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn inverse() {
        let z = c("1+2*E(5)-E(5)^3");
        assert!((&z * &z.inverse().unwrap()).is_one());
        assert_eq!(Cyclotomic::zero().inverse(), Err(CyclotomicError::InverseOfZero));
        assert_eq!(Cyclotomic::from_integer(4).inverse().unwrap(), Cyclotomic::from_rational(q(1, 4)));
    }

    #[test]
    fn approx_of_i() {
        let i = Cyclotomic::root_of_unity(4, 1).approx();
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
    }
}
