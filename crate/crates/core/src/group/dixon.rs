//! Dixon–Schneider: irreducible characters as common eigenvectors of the
//! class-multiplication matrices over a prime field, lifted to cyclotomic
//! values through eigenvalue multiplicities.

use super::table::{CharacterTable, ClassInfo, Provenance};
use super::{is_prime, Classes, FiniteGroup, GroupError};
use crate::cyclotomic::Cyclotomic;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert_ne!(a % p, 0, "no inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·sqrt(order)`.
pub(crate) fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order && is_prime(p as u32) {
            return p;
        }
        p += exponent;
    }
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("prime has a primitive root")
}

/// Row-reduces in place; returns pivot columns. Rows left zero are dropped.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for k in 0..ncols {
                    let t = mul_mod(f, rows[rank][k], p);
                    rows[r][k] = (rows[r][k] + p - t) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of the kernel of the square matrix `m`.
fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Splits `space` into eigenspaces of the class matrix for class `j`.
fn split(space: &Subspace, coeffs: &[u64], r: usize, j: usize, p: u64) -> Option<Vec<Subspace>> {
    let t = space.basis.len();
    // image of each basis vector, read off at the pivot positions
    let mut restricted = vec![vec![0u64; t]; t];
    for (s, b) in space.basis.iter().enumerate() {
        for (row, &piv) in space.pivots.iter().enumerate() {
            let mut acc = 0u64;
            for (k, &bk) in b.iter().enumerate() {
                if bk != 0 {
                    acc = (acc + mul_mod(coeffs[(piv * r + j) * r + k], bk, p)) % p;
                }
            }
            restricted[row][s] = acc;
        }
    }
    let mut found = 0;
    let mut parts = Vec::new();
    for lambda in 0..p {
        let mut m = restricted.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let kernel = nullspace(&m, p);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let mut vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|u| {
                let mut v = vec![0u64; r];
                for (us, b) in u.iter().zip(&space.basis) {
                    if *us != 0 {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = (*vi + mul_mod(*us, *bi, p)) % p;
                        }
                    }
                }
                v
            })
            .collect();
        let pivots = rref(&mut vectors, p);
        parts.push(Subspace { basis: vectors, pivots });
        if found == t {
            break;
        }
    }
    (found == t).then_some(parts)
}

/// Computes the character table of `group` with classes in the order of
/// `classes`. Characters are ordered trivial first, then by degree, then by
/// their printed values.
pub fn compute_character_table(group: &FiniteGroup, classes: &Classes) -> Result<CharacterTable, GroupError> {
    let r = classes.len();
    let order = group.order() as u64;
    let exponent = classes.exponent();
    let p = dixon_prime(exponent, order);
    let sizes = classes.sizes();
    let coeffs: Vec<u64> = group.class_coefficients(classes).iter().map(|&c| c % p).collect();

    let mut spaces = vec![Subspace {
        basis: (0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect(),
        pivots: (0..r).collect(),
    }];
    for j in 1..r {
        if spaces.len() == r {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.basis.len() == 1 {
                next.push(s);
                continue;
            }
            let parts = split(&s, &coeffs, r, j, p)
                .ok_or_else(|| GroupError::Dixon(format!("class matrix {j} does not split mod {p}")))?;
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(GroupError::Dixon(format!("only {} of {r} characters separated", spaces.len())));
    }

    let inverse_class: Vec<usize> = classes
        .representatives
        .iter()
        .map(|&g| classes.class_of[classes.inverse[g]])
        .collect();
    let z = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    let class_powers: Vec<Vec<usize>> = classes
        .representatives
        .iter()
        .map(|&g| {
            let mut out = vec![0usize];
            let mut x = g;
            while x != 0 {
                out.push(classes.class_of[x]);
                x = group.mul(x, g);
            }
            out
        })
        .collect();

    let mut rows = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(GroupError::Dixon("eigenvector vanishes at the identity".into()));
        }
        let inv0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, p)).collect();
        let mut sum = 0u64;
        for i in 0..r {
            let t = mul_mod(mul_mod(w[i], w[inverse_class[i]], p), inv_mod(sizes[i] % p, p), p);
            sum = (sum + t) % p;
        }
        if sum == 0 {
            return Err(GroupError::Dixon("degenerate norm".into()));
        }
        let target = mul_mod(order % p, inv_mod(sum, p), p);
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|&d| mul_mod(d, d, p) == target)
            .ok_or_else(|| GroupError::Dixon("no valid degree".into()))?;
        let modp: Vec<u64> =
            (0..r).map(|i| mul_mod(mul_mod(w[i], degree, p), inv_mod(sizes[i] % p, p), p)).collect();

        let mut row = Vec::with_capacity(r);
        for c in 0..r {
            let o = classes.orders[c] as u64;
            let zo = pow_mod(z, exponent / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut counts = vec![0i64; o as usize];
            let mut total = 0u64;
            for (k, count) in counts.iter_mut().enumerate() {
                let mut acc = 0u64;
                for l in 0..o {
                    let root = pow_mod(zo, (p - 1 - (k as u64 * l) % (p - 1)) % (p - 1), p);
                    acc = (acc + mul_mod(modp[class_powers[c][l as usize]], root, p)) % p;
                }
                let a = mul_mod(acc, inv_o, p);
                if a > degree {
                    return Err(GroupError::Dixon(format!("eigenvalue multiplicity out of range at class {c}")));
                }
                total += a;
                *count = a as i64;
            }
            if total != degree {
                return Err(GroupError::Dixon(format!("multiplicities do not sum to the degree at class {c}")));
            }
            row.push(Cyclotomic::from_exponent_counts(o as u32, &counts));
        }
        rows.push(row);
    }

    let keyed: Vec<(bool, u64, Vec<String>, Vec<Cyclotomic>)> = rows
        .into_iter()
        .map(|row| {
            let trivial = row.iter().all(Cyclotomic::is_one);
            let deg = row[0].to_integer().and_then(|d| u64::try_from(d).ok()).unwrap_or(0);
            let text = row.iter().map(|v| v.to_string()).collect();
            (!trivial, deg, text, row)
        })
        .collect();
    let mut keyed = keyed;
    keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

    let table = CharacterTable {
        group_name: group.name().to_string(),
        order,
        classes: (0..r)
            .map(|c| ClassInfo { label: classes.labels[c].clone(), element_order: classes.orders[c], size: sizes[c] })
            .collect(),
        power_maps: classes.power_maps.clone(),
        irreducibles: keyed.into_iter().map(|k| k.3).collect(),
        provenance: Provenance::Computed,
        note: None,
    };
    table.validate()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(dixon_prime(12, 24), 13);
        assert_eq!(dixon_prime(6, 12), 7);
        assert_eq!(dixon_prime(120, 720), 241);
        assert_eq!(dixon_prime(60, 1080), 181);
        assert_eq!(primitive_root(13), 2);
    }

    #[test]
    fn kernel_mod_p() {
        let m = vec![vec![1, 2], vec![2, 4]];
        let k = nullspace(&m, 7);
        assert_eq!(k, vec![vec![5, 1]]);
    }
}
