//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so every line always prints.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use isobar_core::bounds::{bounds_row, threshold_scan, Case};
use isobar_core::group::{compute_character_table, CharacterTable, GroupSpec};
use isobar_core::partition::Partition;
use isobar_core::plethysm::ClassFunction;
use isobar_core::schur::{
    lr_expand, schur_poly_bialternant, schur_poly_tableau, verify_gl3_adjoint_identity, verify_gl3_identity,
    verify_gl4_identity, IdentityFamily,
};
use isobar_core::{Cyclotomic, Rational};
use isobar_oracles::lr_expand_by_peeling;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const FIXTURES: [&str; 5] = ["a4", "s4", "psl27", "sl29", "v1080"];

type Outcome = Result<String, String>;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn table(name: &str) -> Arc<CharacterTable> {
    Arc::new(CharacterTable::load(&fixtures().join(format!("{name}.tbl"))).expect("fixture loads"))
}

fn chi(t: &Arc<CharacterTable>, i: usize) -> ClassFunction {
    ClassFunction::irreducible(t, i - 1).expect("character index")
}

fn of_degree(t: &Arc<CharacterTable>, n: u32) -> Vec<(usize, ClassFunction)> {
    (0..t.irreducibles.len())
        .map(|i| (i + 1, ClassFunction::irreducible(t, i).unwrap()))
        .filter(|(_, c)| c.degree_u32() == Some(n))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn sorted_degrees(f: &ClassFunction) -> Result<(Vec<u64>, u64), String> {
    let d = f.decompose().map_err(|e| e.to_string())?;
    let mut degs = Vec::new();
    for (i, m) in &d.multiplicities {
        degs.extend(std::iter::repeat(d.degrees[i]).take(*m as usize));
    }
    degs.sort_unstable();
    Ok((degs, d.count()))
}

fn identity_suites() -> Outcome {
    let start = Instant::now();
    let gl3: Vec<_> = (3..=40usize).into_par_iter().map(verify_gl3_identity).collect();
    let gl4: Vec<_> = (3..=40usize).into_par_iter().map(verify_gl4_identity).collect();
    let adj = verify_gl3_adjoint_identity();
    for r in gl3.iter().chain(&gl4).chain(std::iter::once(&adj)) {
        ensure(r.passed(), || format!("{} m={:?} failed", r.family, r.m))?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(60))?;
    Ok(format!("{} identities exact, {t:.2?} < 60 s", gl3.len() + gl4.len() + 1))
}

fn lr_against_oracle() -> Outcome {
    let shapes: Vec<Partition> = (0..=6).flat_map(Partition::all_of).collect();
    let pairs: Vec<(&Partition, &Partition)> = shapes.iter().flat_map(|a| shapes.iter().map(move |b| (a, b))).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter(|(a, b)| lr_expand(a, b) != lr_expand_by_peeling(a, b))
        .map(|(a, b)| format!("{a} * {b}"))
        .collect();
    ensure(bad.is_empty(), || format!("mismatches: {bad:?}"))?;
    Ok(format!("{} pairs, 0 mismatches", pairs.len()))
}

fn schur_algorithms_agree() -> Outcome {
    let cases: Vec<(Partition, usize)> =
        (0..=8).flat_map(Partition::all_of).flat_map(|p| (2..=5).map(move |n| (p.clone(), n))).collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter(|(p, n)| schur_poly_bialternant(p, *n) != schur_poly_tableau(p, *n))
        .map(|(p, n)| format!("S({p}) in {n}"))
        .collect();
    ensure(bad.is_empty(), || format!("mismatches: {bad:?}"))?;
    Ok(format!("{} (λ, n) cases, 0 mismatches", cases.len()))
}

fn effective(case: Case, k: u64) -> Result<u64, String> {
    bounds_row(case, k).map(|r| r.effective_bound).map_err(|e| e.to_string())
}

fn gl3_thresholds() -> Outcome {
    let start = Instant::now();
    let report = threshold_scan(Case::Gl3, 500);
    let t = start.elapsed();
    ensure(report.all_claims_hold(), || format!("violations: {:?}", report.violations))?;
    for r in &report.rows {
        let k = r.k;
        ensure(r.effective_bound <= 4, || format!("k={k} exceeds 4"))?;
        if k >= 7 || k == 3 || k == 4 {
            ensure(r.effective_bound <= 3, || format!("k={k} exceeds 3"))?;
        }
        if k >= 19 && k % 3 == 1 {
            ensure(r.effective_bound <= 2, || format!("k={k} exceeds 2"))?;
        }
    }
    ensure(effective(Case::Gl3, 2)? == 4 && effective(Case::Gl3, 3)? == 3, || "proposition constants".into())?;
    ensure(effective(Case::Gl3, 7)? == 3, || "k=7 is not 3".into())?;
    ensure(effective(Case::Gl3, 19)? == 2, || "k=19 is not 2".into())?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("k ≤ 500, k=7 → 3, k=19 → 2, {t:.2?} < 1 s"))
}

fn gl4_thresholds() -> Outcome {
    let start = Instant::now();
    let report = threshold_scan(Case::Gl4, 1000);
    let t = start.elapsed();
    ensure(report.all_claims_hold(), || format!("violations: {:?}", report.violations))?;
    for r in &report.rows {
        let (k, e) = (r.k, r.effective_bound);
        let checks = [(15, 6, true), (21, 5, true), (39, 4, true), (139, 3, matches!(k % 8, 3 | 5 | 7))];
        for (from, bound, applies) in checks {
            if k >= from && applies {
                ensure(e <= bound, || format!("k={k}: {e} > {bound}"))?;
            }
        }
    }
    let r15 = bounds_row(Case::Gl4, 15).map_err(|e| e.to_string())?;
    ensure(r15.generic_bound == Some(7) && r15.enhanced_bound == Some(6), || format!("k=15: {r15:?}"))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("k ≤ 1000, k=15 generic 7 / enhanced 6, {t:.2?} < 1 s"))
}

fn computed_tables() -> Outcome {
    let cases: [(&str, usize, &[i64], u64); 4] = [
        ("s4", 24, &[1, 1, 2, 3, 3], 30),
        ("a4", 12, &[1, 1, 1, 3], 30),
        ("psl27", 168, &[1, 3, 3, 6, 7, 8], 30),
        ("sl29", 720, &[1, 4, 4, 5, 5, 8, 8, 8, 8, 9, 10, 10, 10], 300),
    ];
    let mut notes = Vec::new();
    for (name, order, expected, limit) in cases {
        let start = Instant::now();
        let spec = GroupSpec::load(&fixtures().join(format!("groups/{name}.toml"))).map_err(|e| e.to_string())?;
        let g = spec.build(10_000).map_err(|e| e.to_string())?;
        let classes = g.conjugacy_classes();
        let t = compute_character_table(&g, &classes).map_err(|e| format!("{name}: {e}"))?;
        let elapsed = start.elapsed();
        ensure(g.order() == order, || format!("{name}: order {}", g.order()))?;
        t.validate().map_err(|e| format!("{name}: {e}"))?;
        let mut degs: Vec<i64> =
            t.degrees().iter().map(|d| i64::try_from(d.to_integer().expect("integral degree")).unwrap()).collect();
        degs.sort_unstable();
        ensure(degs == expected, || format!("{name}: degrees {degs:?}"))?;
        let squares: i64 = degs.iter().map(|d| d * d).sum();
        ensure(squares == order as i64, || format!("{name}: Σdeg² = {squares}"))?;
        within(elapsed, Duration::from_secs(limit)).map_err(|e| format!("{name}: {e}"))?;
        notes.push(format!("{name} {elapsed:.2?}"));
    }
    Ok(format!("orthogonality and Σdeg² = |G| exact; {}", notes.join(", ")))
}

fn required_reproduction() -> Outcome {
    let sym = |t: &Arc<CharacterTable>, i: usize, k: usize| chi(t, i).sym_power(k).map_err(|e| e.to_string());

    let a4 = table("a4");
    let (degs, n) = sorted_degrees(&sym(&a4, 4, 2)?)?;
    ensure(n == 4 && degs == [1, 1, 1, 3], || format!("A4 Sym²: {degs:?}"))?;

    let s4 = table("s4");
    for (i, _) in of_degree(&s4, 3) {
        let (degs, n) = sorted_degrees(&sym(&s4, i, 2)?)?;
        ensure(n == 3 && degs == [1, 2, 3], || format!("S4 χ{i} Sym²: {degs:?}"))?;
    }

    let psl = table("psl27");
    for (i, _) in of_degree(&psl, 3) {
        let (d2, n2) = sorted_degrees(&sym(&psl, i, 2)?)?;
        let (d3, n3) = sorted_degrees(&sym(&psl, i, 3)?)?;
        ensure(n2 == 1 && d2 == [6], || format!("PSL27 χ{i} Sym²: {d2:?}"))?;
        ensure(n3 == 2 && d3 == [3, 7], || format!("PSL27 χ{i} Sym³: {d3:?}"))?;
    }

    // A6 has no 4-dimensional irreducible, so these are all faithful
    let sl = table("sl29");
    let mut checked = 0;
    for (i, _) in of_degree(&sl, 4) {
        checked += 1;
        let (d2, n2) = sorted_degrees(&sym(&sl, i, 2)?)?;
        let (d3, n3) = sorted_degrees(&sym(&sl, i, 3)?)?;
        ensure(n2 == 1 && d2 == [10], || format!("SL29 χ{i} Sym²: {d2:?}"))?;
        ensure(n3 == 2 && d3 == [10, 10], || format!("SL29 χ{i} Sym³: {d3:?}"))?;
    }
    ensure(checked > 0, || "no faithful 4-dimensional character of SL29".into())?;
    Ok(format!("A4 {{1,1,1,3}}, S4 {{1,2,3}}, PSL27 {{6}} / {{3,7}}, SL29 {{10}} / {{10,10}} on {checked} characters"))
}

// Printed rows χ2–χ5 in E(N) notation: α = -E(3)^2, β = -E(5)-E(5)^4,
// β* = -E(5)^2-E(5)^3, γ = -E(15)^7-E(15)^13, δ = -E(15)-E(15)^4.
const V1080_ROWS: [(usize, [&str; 17]); 4] = [
    (
        2,
        [
            "3", "3*E(3)^2", "3*E(3)", "-1", "-E(3)^2", "-E(3)", "0", "0", "E(3)^2", "E(3)", "1",
            "-E(5)-E(5)^4", "-E(15)^7-E(15)^13", "-E(15)^8-E(15)^2", "-E(15)^14-E(15)^11", "-E(5)^2-E(5)^3",
            "-E(15)-E(15)^4",
        ],
    ),
    (
        3,
        [
            "3", "3*E(3)^2", "3*E(3)", "-1", "-E(3)^2", "-E(3)", "0", "0", "E(3)^2", "E(3)", "1",
            "-E(5)^2-E(5)^3", "-E(15)-E(15)^4", "-E(15)^14-E(15)^11", "-E(15)^8-E(15)^2", "-E(5)-E(5)^4",
            "-E(15)^7-E(15)^13",
        ],
    ),
    (
        4,
        [
            "3", "3*E(3)", "3*E(3)^2", "-1", "-E(3)", "-E(3)^2", "0", "0", "E(3)", "E(3)^2", "1",
            "-E(5)-E(5)^4", "-E(15)^8-E(15)^2", "-E(15)^7-E(15)^13", "-E(15)-E(15)^4", "-E(5)^2-E(5)^3",
            "-E(15)^14-E(15)^11",
        ],
    ),
    (
        5,
        [
            "3", "3*E(3)", "3*E(3)^2", "-1", "-E(3)", "-E(3)^2", "0", "0", "E(3)", "E(3)^2", "1",
            "-E(5)^2-E(5)^3", "-E(15)^14-E(15)^11", "-E(15)-E(15)^4", "-E(15)^7-E(15)^13", "-E(5)-E(5)^4",
            "-E(15)^8-E(15)^2",
        ],
    ),
];

fn cyc(s: &str) -> Result<Cyclotomic, String> {
    s.parse().map_err(|e| format!("{s}: {e}"))
}

fn v1080_reproduction() -> Outcome {
    let t = table("v1080");
    t.validate().map_err(|e| e.to_string())?;

    // γ = -αβ and δ = -αβ*
    let alpha = cyc("-E(3)^2")?;
    let gamma = -(&alpha * &cyc("-E(5)-E(5)^4")?);
    let delta = -(&alpha * &cyc("-E(5)^2-E(5)^3")?);
    ensure(gamma == cyc("-E(15)^7-E(15)^13")? && delta == cyc("-E(15)-E(15)^4")?, || {
        "γ, δ relations".into()
    })?;

    for (i, row) in V1080_ROWS {
        let expected = row.iter().map(|s| cyc(s)).collect::<Result<Vec<_>, _>>()?;
        ensure(t.irreducibles[i - 1] == expected, || format!("row χ{i} differs"))?;
    }

    let sym = |k: usize| chi(&t, 2).sym_power(k).map_err(|e| e.to_string());
    ensure(sym(2)? == chi(&t, 9), || "Sym²χ2 ≠ χ9".into())?;
    ensure(sym(3)? == chi(&t, 15), || "Sym³χ2 ≠ χ15".into())?;
    let d = sym(4)?.decompose().map_err(|e| e.to_string())?;
    ensure(d.vector(17) == [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0], || format!("Sym⁴χ2 = {d}"))?;
    ensure(d.count() == 2, || "N ≠ 2".into())?;
    Ok("rows χ2–χ5 exact, Sym²χ2 = χ9, Sym³χ2 = χ15, Sym⁴χ2 = χ8 + χ13 with N = 2".into())
}

fn character_identities() -> Outcome {
    let mut counts = (0, 0);
    for name in FIXTURES {
        let t = table(name);
        let check = |f: &ClassFunction, family: IdentityFamily, m: usize, i: usize| -> Result<(), String> {
            let r = f.verify_character_identity(family, m).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("{name} χ{i} {family} m={m}"))
        };
        for (i, f) in of_degree(&t, 3) {
            counts.0 += 1;
            for m in 3..=12 {
                check(&f, IdentityFamily::Gl3, m, i)?;
            }
            check(&f, IdentityFamily::Gl3Adjoint, 0, i)?;
        }
        for (i, f) in of_degree(&t, 4) {
            counts.1 += 1;
            for m in 3..=12 {
                check(&f, IdentityFamily::Gl4, m, i)?;
            }
        }
    }
    ensure(counts.0 > 0 && counts.1 > 0, || format!("characters found: {counts:?}"))?;
    Ok(format!("{} three-dimensional and {} four-dimensional characters, m ≤ 12", counts.0, counts.1))
}

fn adjoint_link() -> Outcome {
    let mut n = 0;
    for name in FIXTURES {
        let t = table(name);
        let triv = ClassFunction::trivial(&t);
        for (i, f) in of_degree(&t, 3) {
            n += 1;
            let s2 = f.sym_power(2).map_err(|e| e.to_string())?;
            let ad = f.mul(&f.conj()).and_then(|p| p.sub(&triv)).map_err(|e| e.to_string())?;
            let s2_irr = s2.norm().map_err(|e| e.to_string())?.is_one();
            let ad_irr = ad.norm().map_err(|e| e.to_string())?.is_one();
            ensure(s2_irr == ad_irr, || format!("{name} χ{i}: Sym² {s2_irr}, Ad {ad_irr}"))?;
            let link = f.adjoint_link_check().map_err(|e| e.to_string())?;
            ensure(link.holds && link.sym2_irreducible == s2_irr, || format!("{name} χ{i}: library disagrees"))?;
        }
    }
    let a4 = table("a4");
    let d = chi(&a4, 4).sym_power(2).and_then(|s| s.decompose()).map_err(|e| e.to_string())?;
    ensure(d.count() == 4, || format!("A4 Sym² has N = {}", d.count()))?;
    Ok(format!("biconditional on {n} three-dimensional characters, A4 Sym² N = 4"))
}

fn property_suites() -> Outcome {
    let tables: Vec<Arc<CharacterTable>> = FIXTURES.iter().map(|n| table(n)).collect();
    for t in &tables {
        for i in 0..t.irreducibles.len() {
            let f = ClassFunction::irreducible(t, i).unwrap();
            for k in 1..=6 {
                let s = f.koszul_sum(k).map_err(|e| e.to_string())?;
                ensure(s.is_zero(), || format!("{} χ{} Koszul k={k}", t.group_name, i + 1))?;
            }
        }
        for (i, f) in of_degree(t, 3) {
            let tw = f.self_twists().map_err(|e| e.to_string())?;
            for &mu in &tw.s {
                let m = ClassFunction::irreducible(t, mu).unwrap();
                let cube = m.mul(&m).and_then(|c| c.mul(&m)).map_err(|e| e.to_string())?;
                ensure(cube == ClassFunction::trivial(t), || format!("{} χ{i}: μ³ ≠ 1", t.group_name))?;
            }
        }
    }

    const TRIALS: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..TRIALS {
        let t = &tables[rng.gen_range(0..tables.len())];
        let r = t.irreducibles.len();
        let mut mults = vec![0u64; r];
        while mults.iter().all(|&m| m == 0) {
            mults = (0..r).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..=6) } else { 0 }).collect();
        }
        let mut f = ClassFunction::zero(t);
        for (i, &m) in mults.iter().enumerate() {
            let term = ClassFunction::irreducible(t, i).unwrap().scale(&Rational::from_integer(m.into()));
            f = f.add(&term).map_err(|e| e.to_string())?;
        }
        let d = f.decompose().map_err(|e| e.to_string())?;
        ensure(d.vector(r) == mults, || format!("trial {trial} on {}", t.group_name))?;
    }
    Ok(format!("Koszul k ∈ [1,6] on {} fixtures, μ³ = 1, {TRIALS} random round trips", tables.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("identity suites gl3 / gl3-adjoint / gl4 for m in [3,40]", identity_suites),
        ("Littlewood–Richardson expansion vs polynomial oracle, |λ|,|μ| ≤ 6", lr_against_oracle),
        ("bialternant vs tableau Schur polynomials, |λ| ≤ 8, n ∈ 2..5", schur_algorithms_agree),
        ("GL3 bound thresholds", gl3_thresholds),
        ("GL4 bound thresholds", gl4_thresholds),
        ("character tables computed from generators", computed_tables),
        ("symmetric-power decompositions for A4, S4, PSL27, SL29", required_reproduction),
        ("Valentiner group table and its symmetric powers", v1080_reproduction),
        ("character-level identities on fixture characters", character_identities),
        ("Sym² / adjoint irreducibility link", adjoint_link),
        ("Koszul sums, self-twists and decomposition round trips", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS: {name} [tolerance: exact] ({detail}; {t:.2?})", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL: {name} [tolerance: exact] ({why}; {t:.2?})", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
