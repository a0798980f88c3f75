//! Group descriptions read from TOML generator files.
//!
//! ```toml
//! name = "SL2(F9)"
//! kind = "matrix"
//! field = "gf 9"        # or "cyc 12" for matrices over Q(ζ_12)
//! dim = 2
//! generators = ["1, 1; 0, 1", "1, t; 0, 1", "0, 1; -1, 0"]
//! ```
//!
//! Permutation groups use `kind = "perm"`, an optional `degree`, and
//! generators in 1-based cycle notation such as `"(1,2,3)(4,5)"`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Ambient, Element, FiniteField, FiniteGroup, GroupError};
use crate::cyclotomic::Cyclotomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Perm,
    Matrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub kind: GroupKind,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub dim: Option<usize>,
    pub generators: Vec<String>,
}

/// Parses 1-based cycle notation; `()` is the identity.
pub fn parse_permutation(s: &str, degree: usize) -> Result<Element, GroupError> {
    let bad = || GroupError::BadPermutation(s.to_string());
    let mut image: Vec<u16> = (0..degree as u16).collect();
    let mut seen = vec![false; degree];
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let inner_end = rest.find(')').ok_or_else(bad)?;
        let cycle = rest[..inner_end].strip_prefix('(').ok_or_else(bad)?;
        rest = &rest[inner_end + 1..];
        if cycle.is_empty() {
            continue;
        }
        let points = cycle
            .split(',')
            .map(|p| p.parse::<usize>().ok().filter(|&p| p >= 1 && p <= degree).map(|p| p - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        for &p in &points {
            if std::mem::replace(&mut seen[p], true) {
                return Err(bad());
            }
        }
        for (i, &p) in points.iter().enumerate() {
            image[p] = points[(i + 1) % points.len()] as u16;
        }
    }
    Ok(Element::Perm(image))
}

fn largest_point(s: &str) -> usize {
    s.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
}

fn split_matrix(s: &str) -> Vec<Vec<&str>> {
    s.split(';').map(|row| row.split(',').map(str::trim).collect()).collect()
}

impl GroupSpec {
    pub fn from_toml(text: &str) -> Result<GroupSpec, GroupError> {
        toml::from_str(text).map_err(|e| GroupError::Spec(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<GroupSpec, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| GroupError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    pub fn ambient(&self) -> Result<Ambient, GroupError> {
        match self.kind {
            GroupKind::Perm => {
                let degree = self
                    .degree
                    .unwrap_or_else(|| self.generators.iter().map(|g| largest_point(g)).max().unwrap_or(1))
                    .max(1);
                if degree > u16::MAX as usize {
                    return Err(GroupError::Spec("permutation degree too large".into()));
                }
                Ok(Ambient::Perm { degree })
            }
            GroupKind::Matrix => {
                let dim = self.dim.ok_or_else(|| GroupError::Spec("matrix groups need `dim`".into()))?;
                if dim == 0 {
                    return Err(GroupError::Spec("`dim` must be positive".into()));
                }
                let field = self.field.as_deref().ok_or_else(|| GroupError::Spec("matrix groups need `field`".into()))?;
                let mut words = field.split_whitespace();
                let (kind, size) = (words.next(), words.next().and_then(|w| w.parse::<u32>().ok()));
                match (kind, size, words.next()) {
                    (Some("gf"), Some(q), None) => {
                        Ok(Ambient::FiniteFieldMatrix { dim, field: Arc::new(FiniteField::new(q)?) })
                    }
                    (Some("cyc"), Some(n), None) if n >= 1 => Ok(Ambient::CyclotomicMatrix { dim }),
                    _ => Err(GroupError::Spec(format!("unknown field {field:?}"))),
                }
            }
        }
    }

    pub fn parse_generators(&self, ambient: &Ambient) -> Result<Vec<Element>, GroupError> {
        self.generators
            .iter()
            .map(|g| match ambient {
                Ambient::Perm { degree } => parse_permutation(g, *degree),
                Ambient::FiniteFieldMatrix { dim, field } => {
                    let rows = split_matrix(g);
                    if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                        return Err(GroupError::BadGenerator(format!("{g:?} is not {dim}x{dim}")));
                    }
                    let entries = rows.iter().flatten().map(|e| field.parse(e)).collect::<Result<_, _>>()?;
                    Ok(Element::FiniteField(entries))
                }
                Ambient::CyclotomicMatrix { dim } => {
                    let rows = split_matrix(g);
                    if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                        return Err(GroupError::BadGenerator(format!("{g:?} is not {dim}x{dim}")));
                    }
                    let entries = rows
                        .iter()
                        .flatten()
                        .map(|e| e.parse::<Cyclotomic>().map_err(|_| GroupError::BadEntry(e.to_string())))
                        .collect::<Result<_, _>>()?;
                    Ok(Element::Cyclotomic(entries))
                }
            })
            .collect()
    }

    pub fn build(&self, max_order: usize) -> Result<FiniteGroup, GroupError> {
        let ambient = self.ambient()?;
        let gens = self.parse_generators(&ambient)?;
        FiniteGroup::generate(self.name.clone(), ambient, gens, max_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation("(1,2,3)", 4).unwrap(), Element::Perm(vec![1, 2, 0, 3]));
        assert_eq!(parse_permutation("()", 2).unwrap(), Element::Perm(vec![0, 1]));
        assert_eq!(parse_permutation("(1, 2)(3,4)", 4).unwrap(), Element::Perm(vec![1, 0, 3, 2]));
        assert!(parse_permutation("(1,1)", 3).is_err());
        assert!(parse_permutation("(1,5)", 3).is_err());
        assert!(parse_permutation("(1,2", 3).is_err());
        assert!(parse_permutation("(1,2)(2,3)", 3).is_err());
    }

    #[test]
    fn spec_files() {
        let spec = GroupSpec::from_toml(
            "name = \"A4\"\nkind = \"perm\"\ngenerators = [\"(1,2,3)\", \"(1,2)(3,4)\"]\n",
        )
        .unwrap();
        assert_eq!(spec.build(100).unwrap().order(), 12);

        let spec = GroupSpec::from_toml(
            "name = \"SL2(F9)\"\nkind = \"matrix\"\nfield = \"gf 9\"\ndim = 2\n\
             generators = [\"1, 1; 0, 1\", \"1, t; 0, 1\", \"0, 1; -1, 0\"]\n",
        )
        .unwrap();
        assert_eq!(spec.build(10_000).unwrap().order(), 720);

        let bad = GroupSpec::from_toml("name = \"x\"\nkind = \"matrix\"\ngenerators = []\n").unwrap();
        assert!(bad.build(10).is_err());
        assert!(GroupSpec::from_toml("name = 1").is_err());
    }
}
