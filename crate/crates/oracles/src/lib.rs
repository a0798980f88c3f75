//! Slow, direct reference computations. Test-only: nothing in the library
//! or CLI depends on this crate.

use std::collections::{BTreeMap, HashMap};

use isobar_core::partition::Partition;
use isobar_core::poly::SparsePoly;
use isobar_core::schur::{schur_poly_tableau, SchurExpansion};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Number of semistandard fillings of `shape` whose content is the
/// composition `content` (entry `i+1` used `content[i]` times), counted by
/// plain backtracking over cells.
pub fn kostka(shape: &Partition, content: &[usize]) -> u64 {
    if shape.weight() != content.iter().sum::<usize>() {
        return 0;
    }
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l).map(move |c| (r, c)))
        .collect();
    let mut grid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut left = content.to_vec();
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut HashMap<(usize, usize), usize>,
        left: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=left.len() {
            if left[v - 1] == 0 {
                continue;
            }
            if c > 0 && grid[&(r, c - 1)] > v {
                continue;
            }
            if r > 0 && grid[&(r - 1, c)] >= v {
                continue;
            }
            left[v - 1] -= 1;
            grid.insert((r, c), v);
            total += rec(idx + 1, cells, grid, left);
            grid.remove(&(r, c));
            left[v - 1] += 1;
        }
        total
    }
    rec(0, &cells, &mut grid, &mut left)
}

fn padded(p: &Partition, n: usize) -> Vec<u32> {
    (0..n).map(|i| p.part(i) as u32).collect()
}

/// Expands `S_λ·S_μ` by multiplying polynomials in `n = ℓ(λ)+ℓ(μ)`
/// variables and repeatedly peeling off the lexicographically largest
/// partition-shaped monomial `x^ν` as a Schur term `c·S_ν`, using Kostka
/// numbers for the monomial coefficients of `S_ν`.
pub fn lr_expand_by_peeling(lambda: &Partition, mu: &Partition) -> SchurExpansion {
    let n = (lambda.len() + mu.len()).max(1);
    let w = lambda.weight() + mu.weight();
    let a = schur_poly_tableau(lambda, n);
    let b = schur_poly_tableau(mu, n);
    let shapes: Vec<Partition> = Partition::all_of(w).into_iter().filter(|p| p.len() <= n).collect();

    // coefficient of x^κ in the product, for every partition κ
    let mut coeff: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for kappa in &shapes {
        let target = padded(kappa, n);
        let mut total = BigInt::zero();
        for (m, ca) in a.terms() {
            let rest: Option<Vec<u32>> = target
                .iter()
                .zip(m.exponents())
                .map(|(t, e)| t.checked_sub(*e))
                .collect();
            if let Some(rest) = rest {
                total += ca * b.coefficient(&rest);
            }
        }
        if !total.is_zero() {
            coeff.insert(kappa.clone(), total);
        }
    }

    let mut out = SchurExpansion::new();
    // BTreeMap order on partitions is lexicographic; the largest nonzero
    // entry is always a leading Schur term.
    while let Some((nu, c)) = coeff.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        assert!(c.is_positive(), "negative leading coefficient at {nu}");
        out.add_term(nu.clone(), c.to_u64().expect("small coefficient"));
        for kappa in &shapes {
            let k = kostka(&nu, kappa.parts());
            if k == 0 {
                continue;
            }
            let e = coeff.entry(kappa.clone()).or_insert_with(BigInt::zero);
            *e -= &c * BigInt::from(k);
            if e.is_zero() {
                coeff.remove(kappa);
            }
        }
    }
    out
}

/// Product of two polynomials restricted to a target variable count, via
/// the library's polynomial arithmetic (no Littlewood–Richardson).
pub fn schur_product_poly(lambda: &Partition, mu: &Partition, n: usize) -> SparsePoly {
    &schur_poly_tableau(lambda, n) * &schur_poly_tableau(mu, n)
}

/// Characters of `Sym^k` of a permutation representation: the number of
/// degree-`k` monomials in `points` variables fixed by the permutation.
pub fn sym_power_of_permutation(perm: &[usize], k: usize) -> u64 {
    // a monomial is fixed iff its exponent is constant on cycles; count
    // solutions of Σ len(c)·e_c = k
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        cycles.push(len);
    }
    let mut ways = vec![0u64; k + 1];
    ways[0] = 1;
    for len in cycles {
        for t in len..=k {
            ways[t] += ways[t - len];
        }
    }
    ways[k]
}

/// Characters of `Λ^k` of a permutation representation via the
/// determinant of the permutation on each fixed k-subset.
pub fn ext_power_of_permutation(perm: &[usize], k: usize) -> i64 {
    let n = perm.len();
    let mut total = 0i64;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let image = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(0u32, |acc, i| acc | (1 << perm[i]));
        if image != mask {
            continue;
        }
        // sign of the permutation restricted to the subset (wedge ordering)
        let elems: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let images: Vec<usize> = elems.iter().map(|&i| perm[i]).collect();
        let mut inversions = 0;
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i] > images[j] {
                    inversions += 1;
                }
            }
        }
        total += if inversions % 2 == 0 { 1 } else { -1 };
    }
    total
}
