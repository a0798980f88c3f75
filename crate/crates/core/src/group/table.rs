//! Character tables: storage, validation, power maps, and the `.tbl` text
//! format.
//!
//! A `.tbl` file is TOML:
//!
//! ```toml
//! group_name = "A4"
//! order = 12
//! provenance = "computed"
//! irreducibles = [
//!   ["1", "1", "1", "1"],
//!   ...
//! ]
//!
//! [[classes]]
//! label = "1a"
//! element_order = 1
//! size = 1
//!
//! [power_maps]
//! 2 = [1, 1, 4, 3]
//! ```
//!
//! Power maps list 1-based class positions. Character values use the
//! `E(N)` syntax of [`Cyclotomic`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::is_prime;
use crate::cyclotomic::{Cyclotomic, DenseRing};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot parse table: {0}")]
    Parse(String),
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("first class must be the identity (order 1, size 1)")]
    IdentityClass,
    #[error("class sizes sum to {sum}, group order is {order}")]
    ClassSizes { sum: u64, order: u64 },
    #[error("first character must be trivial")]
    TrivialNotFirst,
    #[error("value of character {character} at class {class} is not an algebraic integer of the expected field")]
    NonIntegral { character: usize, class: usize },
    #[error("squared degrees sum to {sum}, group order is {order}")]
    DegreeSum { sum: BigInt, order: u64 },
    #[error("rows {0} and {1} violate first orthogonality")]
    RowOrthogonality(usize, usize),
    #[error("columns {0} and {1} violate second orthogonality")]
    ColumnOrthogonality(usize, usize),
    #[error("{prime}-power map gives the wrong element order at class {class}")]
    PowerMapOrder { prime: u32, class: usize },
    #[error("{prime}-power map is not Galois-consistent for character {character} at class {class}")]
    PowerMapGalois { prime: u32, class: usize, character: usize },
    #[error("no {0}-power map stored")]
    MissingPowerMap(u32),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Produced by this crate from generators.
    Computed,
    /// Transcribed from an outside source.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub label: String,
    pub element_order: u32,
    pub size: u64,
}

/// An ordinary character table with classes in a fixed order; the first class
/// is the identity and the first character is trivial.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub group_name: String,
    pub order: u64,
    pub classes: Vec<ClassInfo>,
    /// Prime `p` to the 0-based class of `g^p`.
    pub power_maps: BTreeMap<u32, Vec<usize>>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
    pub provenance: Provenance,
    pub note: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    group_name: String,
    order: u64,
    provenance: Provenance,
    #[serde(default)]
    note: Option<String>,
    irreducibles: Vec<Vec<String>>,
    classes: Vec<ClassInfo>,
    #[serde(default)]
    power_maps: BTreeMap<String, Vec<usize>>,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / super::gcd(a as usize, b as usize) as u64 * b
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degrees(&self) -> Vec<&Cyclotomic> {
        self.irreducibles.iter().map(|row| &row[0]).collect()
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order / self.classes[class].size
    }

    /// Lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |acc, c| lcm(acc, c.element_order as u64))
    }

    /// Class of `g^m` for `g` in `class`, composing stored prime power maps.
    pub fn power_class(&self, class: usize, m: u64) -> Result<usize, TableError> {
        let mut c = class;
        let mut r = m;
        loop {
            let o = self.classes[c].element_order as u64;
            r %= o;
            if r == 0 {
                return Ok(0);
            }
            if r == 1 {
                return Ok(c);
            }
            let p = (2..=r).find(|d| r % d == 0).expect("r > 1") as u32;
            let map = self.power_maps.get(&p).ok_or(TableError::MissingPowerMap(p))?;
            c = map[c];
            r /= p as u64;
        }
    }

    /// The `m`-th power map on classes.
    pub fn power_map(&self, m: u64) -> Result<Vec<usize>, TableError> {
        (0..self.num_classes()).map(|c| self.power_class(c, m)).collect()
    }

    /// Class of inverses.
    pub fn inverse_class(&self, class: usize) -> usize {
        let o = self.classes[class].element_order as u64;
        self.power_class(class, o - 1).expect("power maps cover element orders")
    }

    /// Checks shape, class data, orthogonality relations and power maps.
    pub fn validate(&self) -> Result<(), TableError> {
        let r = self.classes.len();
        if r == 0 {
            return Err(TableError::Shape("no classes".into()));
        }
        if self.irreducibles.len() != r {
            return Err(TableError::Shape(format!("{} characters for {r} classes", self.irreducibles.len())));
        }
        if let Some(i) = self.irreducibles.iter().position(|row| row.len() != r) {
            return Err(TableError::Shape(format!("character {} has {} values", i + 1, self.irreducibles[i].len())));
        }
        if self.classes[0].element_order != 1 || self.classes[0].size != 1 {
            return Err(TableError::IdentityClass);
        }
        if self.classes.iter().any(|c| c.size == 0 || c.element_order == 0 || self.order % c.size != 0) {
            return Err(TableError::Shape("class sizes must be positive divisors of the order".into()));
        }
        let sum: u64 = self.classes.iter().map(|c| c.size).sum();
        if sum != self.order {
            return Err(TableError::ClassSizes { sum, order: self.order });
        }
        for (p, map) in &self.power_maps {
            if map.len() != r || map.iter().any(|&c| c >= r) {
                return Err(TableError::Shape(format!("{p}-power map has wrong length or range")));
            }
        }
        if self.irreducibles[0].iter().any(|v| !v.is_one()) {
            return Err(TableError::TrivialNotFirst);
        }

        let ring = DenseRing::new(self.exponent() as u32);
        let mut dense = Vec::with_capacity(r);
        for (i, row) in self.irreducibles.iter().enumerate() {
            let mut out = Vec::with_capacity(r);
            for (c, v) in row.iter().enumerate() {
                out.push(ring.embed(v).ok_or(TableError::NonIntegral { character: i, class: c })?);
            }
            dense.push(out);
        }
        let conj: Vec<Vec<Vec<i64>>> =
            dense.iter().map(|row| row.iter().map(|v| ring.conj(v)).collect()).collect();

        let mut deg_sum = BigInt::from(0);
        for (i, row) in self.irreducibles.iter().enumerate() {
            let d = row[0].to_integer().ok_or(TableError::NonIntegral { character: i, class: 0 })?;
            deg_sum += &d * &d;
        }
        if deg_sum != BigInt::from(self.order) {
            return Err(TableError::DegreeSum { sum: deg_sum, order: self.order });
        }

        let sizes = self.class_sizes();
        for i in 0..r {
            for j in i..r {
                let mut acc = ring.zero();
                for c in 0..r {
                    let t = ring.mul(&dense[i][c], &conj[j][c]);
                    for (a, x) in acc.iter_mut().zip(t) {
                        *a += x * sizes[c] as i64;
                    }
                }
                let expect = if i == j { self.order as i64 } else { 0 };
                if acc[0] != expect || acc[1..].iter().any(|&x| x != 0) {
                    return Err(TableError::RowOrthogonality(i, j));
                }
            }
        }
        for c in 0..r {
            for d in c..r {
                let mut acc = ring.zero();
                for i in 0..r {
                    let t = ring.mul(&dense[i][c], &conj[i][d]);
                    for (a, x) in acc.iter_mut().zip(t) {
                        *a += x;
                    }
                }
                let expect = if c == d { self.centralizer_order(c) as i64 } else { 0 };
                if acc[0] != expect || acc[1..].iter().any(|&x| x != 0) {
                    return Err(TableError::ColumnOrthogonality(c, d));
                }
            }
        }

        let max_order = self.classes.iter().map(|c| c.element_order).max().unwrap_or(1);
        for p in (2..=max_order).filter(|&p| is_prime(p)) {
            if !self.power_maps.contains_key(&p) {
                return Err(TableError::MissingPowerMap(p));
            }
        }
        for (&p, map) in &self.power_maps {
            for c in 0..r {
                let o = self.classes[c].element_order;
                let expect = o / super::gcd(o as usize, p as usize) as u32;
                if self.classes[map[c]].element_order != expect {
                    return Err(TableError::PowerMapOrder { prime: p, class: c });
                }
                if o % p != 0 {
                    for (i, row) in self.irreducibles.iter().enumerate() {
                        if row[map[c]] != row[c].galois(p as i64) {
                            return Err(TableError::PowerMapGalois { prime: p, class: c, character: i });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<CharacterTable, TableError> {
        let file: TableFile = toml::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        let mut power_maps = BTreeMap::new();
        for (key, map) in file.power_maps {
            let p: u32 = key.trim().parse().map_err(|_| TableError::Parse(format!("bad power map key {key:?}")))?;
            if !is_prime(p) {
                return Err(TableError::Parse(format!("power map key {p} is not prime")));
            }
            let map = map
                .into_iter()
                .map(|c| c.checked_sub(1).ok_or_else(|| TableError::Parse("power maps are 1-based".into())))
                .collect::<Result<Vec<_>, _>>()?;
            power_maps.insert(p, map);
        }
        let irreducibles = file
            .irreducibles
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.parse::<Cyclotomic>().map_err(|e| TableError::Parse(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharacterTable {
            group_name: file.group_name,
            order: file.order,
            classes: file.classes,
            power_maps,
            irreducibles,
            provenance: file.provenance,
            note: file.note,
        })
    }

    /// Parses and validates.
    pub fn load(path: &Path) -> Result<CharacterTable, TableError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| TableError::Io { path: path.display().to_string(), source })?;
        let table = Self::from_toml_str(&text)?;
        table.validate()?;
        Ok(table)
    }

    pub fn to_toml_string(&self) -> String {
        let quote = |s: &str| toml::Value::String(s.to_string()).to_string();
        let mut out = String::new();
        writeln!(out, "group_name = {}", quote(&self.group_name)).unwrap();
        writeln!(out, "order = {}", self.order).unwrap();
        let prov = match self.provenance {
            Provenance::Computed => "computed",
            Provenance::External => "external",
        };
        writeln!(out, "provenance = \"{prov}\"").unwrap();
        if let Some(note) = &self.note {
            writeln!(out, "note = {}", quote(note)).unwrap();
        }
        writeln!(out, "irreducibles = [").unwrap();
        for row in &self.irreducibles {
            let cells: Vec<String> = row.iter().map(|v| quote(&v.to_string())).collect();
            writeln!(out, "  [{}],", cells.join(", ")).unwrap();
        }
        writeln!(out, "]").unwrap();
        for c in &self.classes {
            writeln!(out, "\n[[classes]]").unwrap();
            writeln!(out, "label = {}", quote(&c.label)).unwrap();
            writeln!(out, "element_order = {}", c.element_order).unwrap();
            writeln!(out, "size = {}", c.size).unwrap();
        }
        writeln!(out, "\n[power_maps]").unwrap();
        for (p, map) in &self.power_maps {
            let cells: Vec<String> = map.iter().map(|c| (c + 1).to_string()).collect();
            writeln!(out, "{p} = [{}]", cells.join(", ")).unwrap();
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<(), TableError> {
        std::fs::write(path, self.to_toml_string())
            .map_err(|source| TableError::Io { path: path.display().to_string(), source })
    }

    /// A bijection `f` from the classes of `self` to those of `other` that
    /// preserves element orders, class sizes and power maps and carries the
    /// set of irreducibles onto that of `other`, if one exists.
    pub fn class_bijection(&self, other: &CharacterTable) -> Option<Vec<usize>> {
        let r = self.num_classes();
        if r != other.num_classes() || self.order != other.order {
            return None;
        }
        let text = |t: &CharacterTable| -> Vec<Vec<String>> {
            t.irreducibles.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect()
        };
        let mine = text(self);
        let theirs = text(other);
        let mut assign = vec![usize::MAX; r];
        let mut used = vec![false; r];

        fn rec(
            i: usize,
            a: &CharacterTable,
            b: &CharacterTable,
            mine: &[Vec<String>],
            theirs: &[Vec<String>],
            assign: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let r = assign.len();
            if i == r {
                let mut x: Vec<Vec<&String>> = mine.iter().map(|row| assign.iter().map(|&c| &row[c]).collect()).collect();
                let mut y: Vec<Vec<&String>> = theirs.iter().map(|row| row.iter().collect()).collect();
                // `assign` maps positions of `b` to classes of `a`
                x.sort();
                y.sort();
                return x == y;
            }
            for c in 0..r {
                let (ca, cb) = (&a.classes[c], &b.classes[i]);
                if used[c] || ca.element_order != cb.element_order || ca.size != cb.size {
                    continue;
                }
                assign[i] = c;
                used[c] = true;
                let maps_ok = (0..=i).all(|k| {
                    b.power_maps.iter().all(|(p, mb)| {
                        let target = mb[k];
                        target > i || a.power_maps.get(p).is_some_and(|ma| ma[assign[k]] == assign[target])
                    })
                });
                let rows_ok = maps_ok
                    && theirs.iter().all(|row| mine.iter().any(|m| (0..=i).all(|k| m[assign[k]] == row[k])));
                if rows_ok && rec(i + 1, a, b, mine, theirs, assign, used) {
                    return true;
                }
                used[c] = false;
            }
            assign[i] = usize::MAX;
            false
        }

        if !rec(0, self, other, &mine, &theirs, &mut assign, &mut used) {
            return None;
        }
        let mut f = vec![0; r];
        for (i, &c) in assign.iter().enumerate() {
            f[c] = i;
        }
        Some(f)
    }

    /// Tab-separated human-readable rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (order {})", self.group_name, self.order).unwrap();
        let labels: Vec<&str> = self.classes.iter().map(|c| c.label.as_str()).collect();
        writeln!(out, "\t{}", labels.join("\t")).unwrap();
        let sizes: Vec<String> = self.classes.iter().map(|c| c.size.to_string()).collect();
        writeln!(out, "size\t{}", sizes.join("\t")).unwrap();
        for (i, row) in self.irreducibles.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "X.{}\t{}", i + 1, cells.join("\t")).unwrap();
        }
        out
    }
}
