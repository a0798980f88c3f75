//! Finite groups given by generators, their conjugacy classes, and character
//! tables computed with the Dixon–Schneider method.

mod dixon;
pub mod field;
pub mod generators;
pub mod table;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
pub use dixon::compute_character_table;
pub use field::FiniteField;
pub use generators::GroupSpec;
pub use table::{CharacterTable, ClassInfo, Provenance, TableError};

pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("{0} is not a supported prime power")]
    BadField(u32),
    #[error("cannot parse field entry {0:?}")]
    BadEntry(String),
    #[error("invalid permutation {0:?}")]
    BadPermutation(String),
    #[error("invalid generator: {0}")]
    BadGenerator(String),
    #[error("group order exceeds the limit of {limit} elements")]
    TooLarge { limit: usize },
    #[error("invalid group description: {0}")]
    Spec(String),
    #[error("character table computation failed: {0}")]
    Dixon(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Where group elements live and how they multiply.
#[derive(Debug, Clone)]
pub enum Ambient {
    /// Permutations of `{1, …, degree}`.
    Perm { degree: usize },
    /// Invertible `dim × dim` matrices over a finite field.
    FiniteFieldMatrix { dim: usize, field: Arc<FiniteField> },
    /// Invertible `dim × dim` matrices over a cyclotomic field.
    CyclotomicMatrix { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Images of `0..degree`, 0-based.
    Perm(Vec<u16>),
    /// Row-major entries.
    FiniteField(Vec<u32>),
    Cyclotomic(Vec<Cyclotomic>),
}

impl Ambient {
    pub fn identity(&self) -> Element {
        match self {
            Ambient::Perm { degree } => Element::Perm((0..*degree as u16).collect()),
            Ambient::FiniteFieldMatrix { dim, .. } => {
                let mut m = vec![0; dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = 1;
                }
                Element::FiniteField(m)
            }
            Ambient::CyclotomicMatrix { dim } => {
                let mut m = vec![Cyclotomic::zero(); dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = Cyclotomic::one();
                }
                Element::Cyclotomic(m)
            }
        }
    }

    /// Product `a·b`; permutations act on the right, so `a·b` applies `a`
    /// first.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Ambient::Perm { .. }, Element::Perm(x), Element::Perm(y)) => {
                Element::Perm(x.iter().map(|&i| y[i as usize]).collect())
            }
            (Ambient::FiniteFieldMatrix { dim, field }, Element::FiniteField(x), Element::FiniteField(y)) => {
                let n = *dim;
                let mut out = vec![0; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let xik = x[i * n + k];
                        if xik == 0 {
                            continue;
                        }
                        for j in 0..n {
                            let t = field.mul(xik, y[k * n + j]);
                            out[i * n + j] = field.add(out[i * n + j], t);
                        }
                    }
                }
                Element::FiniteField(out)
            }
            (Ambient::CyclotomicMatrix { dim }, Element::Cyclotomic(x), Element::Cyclotomic(y)) => {
                let n = *dim;
                let mut out = vec![Cyclotomic::zero(); n * n];
                for i in 0..n {
                    for k in 0..n {
                        if x[i * n + k].is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let t = &x[i * n + k] * &y[k * n + j];
                            out[i * n + j] = &out[i * n + j] + &t;
                        }
                    }
                }
                Element::Cyclotomic(out)
            }
            _ => panic!("element does not belong to this ambient group"),
        }
    }

    /// True iff `e` is an element of the ambient group (right size,
    /// invertible).
    pub fn check(&self, e: &Element) -> Result<(), GroupError> {
        match (self, e) {
            (Ambient::Perm { degree }, Element::Perm(x)) => {
                let mut seen = vec![false; *degree];
                if x.len() != *degree {
                    return Err(GroupError::BadGenerator("permutation degree mismatch".into()));
                }
                for &i in x {
                    if i as usize >= *degree || std::mem::replace(&mut seen[i as usize], true) {
                        return Err(GroupError::BadGenerator("not a bijection".into()));
                    }
                }
                Ok(())
            }
            (Ambient::FiniteFieldMatrix { dim, field }, Element::FiniteField(x)) => {
                if x.len() != dim * dim {
                    return Err(GroupError::BadGenerator("matrix size mismatch".into()));
                }
                if ff_rank(field, *dim, x) < *dim {
                    return Err(GroupError::BadGenerator("matrix is singular".into()));
                }
                Ok(())
            }
            (Ambient::CyclotomicMatrix { dim }, Element::Cyclotomic(x)) => {
                if x.len() != dim * dim {
                    return Err(GroupError::BadGenerator("matrix size mismatch".into()));
                }
                if cyc_rank(*dim, x) < *dim {
                    return Err(GroupError::BadGenerator("matrix is singular".into()));
                }
                Ok(())
            }
            _ => Err(GroupError::BadGenerator("element kind does not match the group".into())),
        }
    }

    pub fn format(&self, e: &Element) -> String {
        match (self, e) {
            (_, Element::Perm(x)) => format_cycles(x),
            (Ambient::FiniteFieldMatrix { dim, field }, Element::FiniteField(x)) => x
                .chunks(*dim)
                .map(|row| row.iter().map(|&a| field.format(a)).collect::<Vec<_>>().join(", "))
                .collect::<Vec<_>>()
                .join("; "),
            (_, Element::Cyclotomic(x)) => {
                let dim = (x.len() as f64).sqrt() as usize;
                x.chunks(dim.max(1))
                    .map(|row| row.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))
                    .collect::<Vec<_>>()
                    .join("; ")
            }
            _ => format!("{e:?}"),
        }
    }
}

fn ff_rank(field: &FiniteField, n: usize, m: &[u32]) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else { continue };
        for j in 0..n {
            a.swap(rank * n + j, piv * n + j);
        }
        let inv = field.inv(a[rank * n + col]);
        for r in 0..n {
            if r != rank && a[r * n + col] != 0 {
                let f = field.neg(field.mul(a[r * n + col], inv));
                for j in 0..n {
                    let t = field.mul(f, a[rank * n + j]);
                    a[r * n + j] = field.add(a[r * n + j], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn cyc_rank(n: usize, m: &[Cyclotomic]) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else { continue };
        for j in 0..n {
            a.swap(rank * n + j, piv * n + j);
        }
        let inv = a[rank * n + col].inverse().expect("nonzero pivot");
        for r in 0..n {
            if r != rank && !a[r * n + col].is_zero() {
                let f = &a[r * n + col] * &inv;
                for j in 0..n {
                    let t = &f * &a[rank * n + j];
                    a[r * n + j] = &a[r * n + j] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Cycle notation with 1-based points; the identity prints as `()`.
pub fn format_cycles(x: &[u16]) -> String {
    let mut seen = vec![false; x.len()];
    let mut out = String::new();
    for start in 0..x.len() {
        if seen[start] || x[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(',');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = x[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A finite group stored as its full element list in breadth-first order
/// from the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    ambient: Ambient,
    generators: Vec<Element>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl FiniteGroup {
    /// Closes `generators` under multiplication, failing once more than
    /// `max_order` elements have been found.
    pub fn generate(
        name: impl Into<String>,
        ambient: Ambient,
        generators: Vec<Element>,
        max_order: usize,
    ) -> Result<FiniteGroup, GroupError> {
        for g in &generators {
            ambient.check(g)?;
        }
        let id = ambient.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let y = ambient.mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() >= max_order {
                        return Err(GroupError::TooLarge { limit: max_order });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), ambient, generators, elements, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let e = self.ambient.mul(&self.elements[i], &self.elements[j]);
        self.index[&e]
    }

    /// Element orders and inverses, indexed like the element list.
    fn orders_and_inverses(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.order();
        let mut order = vec![0u32; n];
        let mut inverse = vec![usize::MAX; n];
        order[0] = 1;
        inverse[0] = 0;
        for i in 1..n {
            if order[i] != 0 {
                continue;
            }
            let mut powers = vec![0usize, i];
            let mut cur = i;
            loop {
                cur = self.mul(cur, i);
                if cur == 0 {
                    break;
                }
                powers.push(cur);
            }
            let o = powers.len();
            for (k, &x) in powers.iter().enumerate().skip(1) {
                if order[x] == 0 {
                    order[x] = (o / gcd(o, k)) as u32;
                    inverse[x] = powers[o - k];
                }
            }
        }
        (order, inverse)
    }

    /// Conjugacy classes, ordered by element order, then class size, then
    /// discovery; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Classes {
        let n = self.order();
        let (order, inverse) = self.orders_and_inverses();
        let gens: Vec<usize> = self.generators.iter().map(|g| self.index[g]).collect();
        let gen_inv: Vec<usize> = gens.iter().map(|&g| inverse[g]).collect();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            raw_class[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for (&g, &gi) in gens.iter().zip(&gen_inv) {
                    let y = self.mul(self.mul(gi, x), g);
                    if raw_class[y] == usize::MAX {
                        raw_class[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&c| (order[raw[c][0]], raw[c].len(), raw[c][0]));
        let mut rank = vec![0; raw.len()];
        for (new, &old) in perm.iter().enumerate() {
            rank[old] = new;
        }
        let members: Vec<Vec<usize>> = perm.iter().map(|&c| raw[c].clone()).collect();
        let class_of: Vec<usize> = raw_class.iter().map(|&c| rank[c]).collect();
        let representatives: Vec<usize> = members.iter().map(|m| m[0]).collect();
        let orders: Vec<u32> = representatives.iter().map(|&r| order[r]).collect();
        let max_order = orders.iter().copied().max().unwrap_or(1);
        let mut power_maps = BTreeMap::new();
        for p in (2..=max_order.max(2)).filter(|&p| is_prime(p)) {
            let map = representatives
                .iter()
                .map(|&r| {
                    let mut x = 0;
                    for _ in 0..p {
                        x = self.mul(x, r);
                    }
                    class_of[x]
                })
                .collect();
            power_maps.insert(p, map);
        }
        let mut labels = Vec::with_capacity(members.len());
        let mut used: BTreeMap<u32, usize> = BTreeMap::new();
        for &o in &orders {
            let k = used.entry(o).or_insert(0);
            labels.push(format!("{o}{}", class_letter(*k)));
            *k += 1;
        }
        Classes { class_of, members, representatives, orders, labels, inverse, power_maps }
    }

    /// Structure constants `a[i][j][k] = #{(x, y) ∈ C_i × C_j : x·y = g_k}`
    /// for fixed representatives `g_k`, flattened as `(i * r + j) * r + k`.
    pub fn class_coefficients(&self, classes: &Classes) -> Vec<u64> {
        let r = classes.len();
        let columns: Vec<Vec<u64>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let g = classes.representatives[k];
                let mut col = vec![0u64; r * r];
                for x in 0..self.order() {
                    let y = self.mul(classes.inverse[x], g);
                    col[classes.class_of[x] * r + classes.class_of[y]] += 1;
                }
                col
            })
            .collect();
        let mut out = vec![0u64; r * r * r];
        for (k, col) in columns.iter().enumerate() {
            for (ij, &v) in col.iter().enumerate() {
                out[ij * r + k] = v;
            }
        }
        out
    }
}

fn class_letter(k: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if k < 26 {
        (letters[k] as char).to_string()
    } else {
        format!("{}{}", class_letter(k / 26 - 1), letters[k % 26] as char)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Conjugacy classes of a [`FiniteGroup`].
#[derive(Debug, Clone)]
pub struct Classes {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub orders: Vec<u32>,
    pub labels: Vec<String>,
    /// Inverse of each element, by element index.
    pub inverse: Vec<usize>,
    /// Prime `p` to the class of `g^p`, for every prime up to the largest
    /// element order.
    pub power_maps: BTreeMap<u32, Vec<usize>>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|m| m.len() as u64).collect()
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| acc / gcd(acc as usize, o as usize) as u64 * o as u64)
    }
}

impl fmt::Display for Classes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(f, "{label}\torder {}\tsize {}", self.orders[i], self.members[i].len())?;
        }
        Ok(())
    }
}
