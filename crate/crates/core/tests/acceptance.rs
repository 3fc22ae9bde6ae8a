//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use qschubert::cauchon::{beta_lattice, is_cauchon_diagram, prefix_product, qyw_lattice, qyw_lattice_from_betas};
use qschubert::cli::config::CocycleConfig;
use qschubert::intlin::{kernel_basis, rank, smith_normal_form, IntLattice, IntMatrix};
use qschubert::qtorus::{build_torus, TorusMonomial};
use qschubert::rootsys::{RootVec, WeightVec};
use qschubert::strata::{
    catenarity_report, qyw_data, sandwich, stratification_report, stratum_dimension, uniparameter_dimension,
};
use qschubert::twist::{torsion_free_check, torsion_generators, torus_character, Bicharacter, ExponentScalar, RelationsLattice};
use qschubert::weyl::{ReducedWord, WeylElt, WeylGroup};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn group(t: &str) -> WeylGroup {
    WeylGroup::of_type(t).expect("known type")
}

fn trivial(g: &WeylGroup, w: &WeylElt) -> Bicharacter {
    Bicharacter::trivial(g.rank(), &g.support(w), 1)
}

fn name(g: &WeylGroup, x: &WeylElt) -> String {
    format!("({})", g.reduced_word(x))
}

/// Rank over Q by fraction-free elimination in i128.
fn rational_rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            let (a, b) = (m[r][c], m[i][c]);
            for j in 0..cols {
                m[i][j] = m[i][j] * a - m[r][j] * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

/// `dim ker(w + y)` on the weight lattice, computed from the weight action.
fn kernel_oracle(g: &WeylGroup, w: &WeylElt, y: &WeylElt) -> usize {
    let n = g.rank();
    let (a, b) = (g.weight_matrix(w), g.weight_matrix(y));
    let m = (0..n).map(|i| (0..n).map(|j| i128::from(a[i * n + j] + b[i * n + j])).collect()).collect();
    n - rational_rank(m)
}

/// Products of all subwords of `word`; equals the lower Bruhat interval.
fn subword_products(g: &WeylGroup, word: &ReducedWord) -> HashSet<WeylElt> {
    let l = word.letters();
    (0u32..1 << l.len())
        .map(|mask| {
            let sub: Vec<usize> = (0..l.len()).filter(|k| mask >> k & 1 == 1).map(|k| l[k]).collect();
            g.product(&sub).expect("letters in range")
        })
        .collect()
}

fn c1_formula_agreement() -> Outcome {
    let mut pairs = 0;
    let mut cases: Vec<(WeylGroup, WeylElt)> = Vec::new();
    for t in ["A2", "B2", "G2"] {
        let g = group(t);
        for w in g.elements().map_err(err)? {
            cases.push((g.clone(), w));
        }
    }
    for t in ["A3", "B3"] {
        let g = group(t);
        let w0 = g.longest_element();
        cases.push((g, w0));
    }
    for (g, w) in &cases {
        let r = trivial(g, w);
        let rel = RelationsLattice::generic(1);
        for y in g.lower_interval(w) {
            let a = stratum_dimension(g, w, &y, &r, &rel).map_err(err)?;
            let b = uniparameter_dimension(g, w, &y).map_err(err)?;
            ensure(a == b, || format!("{} w={} y={}: {a} vs {b}", g.lie_type(), name(g, w), name(g, &y)))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (y, w) pairs agree"))
}

fn c2_cauchon_uniqueness() -> Outcome {
    let mut total = 0;
    for t in ["A2", "B2", "G2", "A3"] {
        let g = group(t);
        let w0 = g.longest_element();
        let word = g.reduced_word(&w0);
        let l = word.len();
        let mut count: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for mask in 0u32..1 << l {
            let d: BTreeSet<usize> = (1..=l).filter(|j| mask >> (j - 1) & 1 == 1).collect();
            if is_cauchon_diagram(&g, &word, &d).map_err(err)? {
                let y = prefix_product(&g, &word, &d, l);
                *count.entry(y.matrix().row_vecs().concat().iter().map(|x| x.try_into().unwrap()).collect()).or_default() += 1;
            }
        }
        let below = g.lower_interval(&w0);
        ensure(count.len() == below.len(), || format!("{t}: {} distinct y from diagrams, {} below w0", count.len(), below.len()))?;
        for y in &below {
            let key: Vec<i64> = y.matrix().row_vecs().concat().iter().map(|x| x.try_into().unwrap()).collect();
            let c = count.get(&key).copied().unwrap_or(0);
            ensure(c == 1, || format!("{t} y={}: {c} diagrams", name(&g, y)))?;
        }
        total += below.len();
    }
    Ok(format!("exactly one diagram for each of {total} elements"))
}

fn c3_qyw_equality() -> Outcome {
    let mut n = 0;
    for t in ["A3", "B3"] {
        let g = group(t);
        let w0 = g.longest_element();
        for y in g.lower_interval(&w0) {
            let (d, _) = qyw_data(&g, &w0, &y).map_err(err)?;
            let (a, b) = (qyw_lattice(&g, &d).map_err(err)?, qyw_lattice_from_betas(&g, &d).map_err(err)?);
            ensure(a.basis() == b.basis(), || format!("{t} y={}: {} vs {}", name(&g, &y), a.basis(), b.basis()))?;
            n += 1;
        }
    }
    Ok(format!("identical Hermite forms for {n} pairs"))
}

fn c4_small_values() -> Outcome {
    let g = group("A1");
    let w = g.longest_element();
    let reports = stratification_report(&g, &w, &trivial(&g, &w), &RelationsLattice::generic(1)).map_err(err)?;
    let dims: Vec<usize> = reports.iter().map(|r| r.dim).collect();
    ensure(dims == [1, 0], || format!("A1 dims {dims:?}"))?;

    let g = group("A2");
    let w0 = g.longest_element();
    let reports = stratification_report(&g, &w0, &trivial(&g, &w0), &RelationsLattice::generic(1)).map_err(err)?;
    let dims: Vec<usize> = reports.iter().map(|r| r.dim).collect();
    let oracle: Vec<usize> = reports.iter().map(|r| kernel_oracle(&g, &w0, &r.y)).collect();
    ensure(dims == oracle, || format!("A2 dims {dims:?}, oracle {oracle:?}"))?;
    ensure(dims == [1, 0, 0, 1, 1, 0], || format!("A2 dims {dims:?}"))?;
    ensure(reports[0].y.is_identity() && reports[5].y == w0, || "A2 report order".into())?;
    Ok(format!("A1 {:?}, A2 {dims:?}", [1, 0]))
}

fn c5_torus_center() -> Outcome {
    let mut untwisted = 0;
    for t in ["A2", "B2", "A3"] {
        let g = group(t);
        let w0 = g.longest_element();
        let r = trivial(&g, &w0);
        for y in g.lower_interval(&w0) {
            let (d, _) = qyw_data(&g, &w0, &y).map_err(err)?;
            let c = build_torus(&g, &d, &r).map_err(err)?.center_lattice(&RelationsLattice::generic(1)).map_err(err)?;
            let u = uniparameter_dimension(&g, &w0, &y).map_err(err)?;
            ensure(c.rank() == u, || format!("{t} y={}: center rank {} vs {u}", name(&g, &y), c.rank()))?;
            untwisted += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut twisted = 0;
    let mut failures = Vec::new();
    for k in 0..30 {
        let t = if k % 2 == 0 { "A2" } else { "B2" };
        let g = group(t);
        let w0 = g.longest_element();
        let e: i64 = rng.gen_range(-4..=4);
        let r = Bicharacter::q_power(2, &g.support(&w0), 1, &[vec![0, e], vec![-e, 0]]).map_err(err)?;
        let rel = RelationsLattice::generic(1);
        for y in g.lower_interval(&w0) {
            let (d, _) = qyw_data(&g, &w0, &y).map_err(err)?;
            let c = build_torus(&g, &d, &r).map_err(err)?.center_lattice(&rel).map_err(err)?.rank();
            let s = stratum_dimension(&g, &w0, &y, &r, &rel).map_err(err)?;
            if c != s {
                failures.push(format!("{t} r12=q^{e} y={}: {c} vs {s}", name(&g, &y)));
            }
            twisted += 1;
        }
    }
    ensure(failures.is_empty(), || format!("{} twisted mismatches, first {}", failures.len(), failures[0]))?;
    Ok(format!("{untwisted} untwisted pairs, 30 random q-power twists ({twisted} pairs)"))
}

fn c6_poset() -> Outcome {
    let g = group("A3");
    let w0 = g.longest_element();
    let r = trivial(&g, &w0);
    let reports = stratification_report(&g, &w0, &r, &RelationsLattice::generic(1)).map_err(err)?;
    ensure(reports.len() == 24, || format!("{} reports", reports.len()))?;
    let below: Vec<HashSet<WeylElt>> = reports.iter().map(|rep| subword_products(&g, &rep.y_word)).collect();
    for (rep, set) in reports.iter().zip(&below) {
        ensure(rep.height + rep.gk_codim == 6, || format!("y={}: {} + {}", rep.y_word, rep.height, rep.gk_codim))?;
        let closure: HashSet<WeylElt> = rep
            .closure_down
            .iter()
            .map(|w| g.element_of(w))
            .collect();
        ensure(closure.len() == rep.closure_down.len() && &closure == set, || format!("closure of y=({})", rep.y_word))?;
    }
    // Gradedness: every cover of the closure order raises length by one.
    let len: Vec<usize> = reports.iter().map(|rep| rep.y_word.len()).collect();
    let lt = |a: usize, b: usize| a != b && below[b].contains(&reports[a].y);
    let mut covers = 0;
    for a in 0..24 {
        for b in 0..24 {
            if lt(a, b) && !(0..24).any(|c| lt(a, c) && lt(c, b)) {
                covers += 1;
                ensure(len[b] == len[a] + 1, || format!("cover ({}) < ({}) skips a rank", reports[a].y_word, reports[b].y_word))?;
            }
        }
    }
    let cat = catenarity_report(&g, &w0, &r).map_err(err)?;
    ensure(cat.passed(), || format!("catenarity failures: {:?}", cat.failures))?;
    Ok(format!("24 strata, {covers} covers, {} comparable pairs", cat.pairs_checked))
}

fn c7_sandwich() -> Outcome {
    let mut n = 0;
    for t in ["A2", "B2"] {
        let g = group(t);
        let w0 = g.longest_element();
        let supp = g.support(&w0);
        let twisted = Bicharacter::from_table(
            2,
            &supp,
            2,
            vec![
                vec![ExponentScalar(vec![0, 0]), ExponentScalar(vec![-1, 1])],
                vec![ExponentScalar(vec![1, -1]), ExponentScalar(vec![0, 0])],
            ],
        )
        .map_err(err)?;
        let cases = [
            (trivial(&g, &w0), RelationsLattice::generic(1)),
            (twisted, RelationsLattice::generic(2)),
        ];
        for (r, rel) in &cases {
            for y in g.lower_interval(&w0) {
                let c = sandwich(&g, &w0, &y, r, rel).map_err(err)?;
                ensure(c.a_subset_b && c.rank_a == c.rank_b, || {
                    format!("{t} y={}: rank L {} vs rank L' {}", name(&g, &y), c.rank_a, c.rank_b)
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("rank L = rank L' on {n} pairs"))
}

fn c8_support() -> Outcome {
    let g = group("A3");
    let rs = g.root_system();
    let all = g.elements().map_err(err)?;
    for w in &all {
        let word = g.reduced_word(w);
        let support: BTreeSet<usize> = word.letters().iter().copied().collect();
        ensure(support == g.support(w), || format!("w={}: support", name(&g, w)))?;
        let fixed: BTreeSet<usize> = (1..=3)
            .filter(|&i| {
                let om = rs.fundamental_weight(i);
                g.act_weight(w, &om).map(|x| x == om).unwrap_or(false)
            })
            .collect();
        let complement: BTreeSet<usize> = (1..=3).filter(|i| !support.contains(i)).collect();
        ensure(fixed == complement, || format!("w={}: fixed {fixed:?}, complement {complement:?}", name(&g, w)))?;
        let simple: Vec<Vec<i64>> = support.iter().map(|&i| rs.simple_root(i).0).collect();
        let expected = IntLattice::from_rows(3, &simple).map_err(err)?;
        let got = beta_lattice(&g, &word).map_err(err)?;
        ensure(got == expected, || format!("w={}: beta lattice {}", name(&g, w), got.basis()))?;
    }
    Ok(format!("{} elements of W(A3)", all.len()))
}

#[derive(Deserialize)]
struct Records {
    record: Vec<TorsionRecord>,
}

#[derive(Deserialize)]
struct TorsionRecord {
    config: String,
    generators: Vec<Vec<i64>>,
    relations: Vec<Vec<i64>>,
    invariants: Vec<i64>,
    torsion_free: bool,
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn c9_torsion() -> Outcome {
    let text = std::fs::read_to_string(fixture("torsion_records.toml")).map_err(err)?;
    let records: Records = toml::from_str(&text).map_err(err)?;
    let mut lines = Vec::new();
    for rec in &records.record {
        let res = CocycleConfig::load(&fixture(&rec.config)).map_err(err)?.resolve().map_err(err)?;
        let gens: Vec<Vec<i64>> = torsion_generators(&res.group, &res.word, &res.r)
            .map_err(err)?
            .into_iter()
            .map(|x| x.0)
            .collect();
        ensure(gens == rec.generators, || format!("{}: generators {gens:?}", rec.config))?;
        let rel_basis: Vec<Vec<i64>> = res
            .rel
            .lattice()
            .basis()
            .row_vecs()
            .iter()
            .map(|row| row.iter().map(|x| x.try_into().unwrap()).collect())
            .collect();
        ensure(rel_basis == rec.relations, || format!("{}: relations {rel_basis:?}", rec.config))?;

        // Smith invariants of R inside span(generators) + R.
        let m = res.r.m();
        let rows: Vec<Vec<i64>> = gens.iter().chain(&rel_basis).cloned().collect();
        let span = IntLattice::from_rows(m, &rows).map_err(err)?;
        let coords: Vec<Vec<BigInt>> = rel_basis
            .iter()
            .map(|v| span.coordinates(&big(v)).map_err(err)?.ok_or("relation outside span".to_string()))
            .collect::<Result<_, _>>()?;
        let invariants: Vec<i64> = if coords.is_empty() {
            Vec::new()
        } else {
            let snf = smith_normal_form(&IntMatrix::from_rows(span.rank(), &coords).map_err(err)?);
            snf.diag.iter().filter(|d| !d.is_zero()).map(|d| d.try_into().unwrap()).collect()
        };
        ensure(invariants == rec.invariants, || format!("{}: invariants {invariants:?}", rec.config))?;
        let by_hand = rec.invariants.iter().all(|&d| d == 1);
        ensure(by_hand == rec.torsion_free, || format!("{}: record is inconsistent", rec.config))?;
        let got = torsion_free_check(&res.group, &res.word, &res.r, &res.rel).map_err(err)?;
        ensure(got == rec.torsion_free, || format!("{}: torsion_free_check = {got}", rec.config))?;
        lines.push(format!("{} -> {got}", rec.config));
    }
    Ok(lines.join(", "))
}

const INSTANCES: usize = 1000;

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect()
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(0..8) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if rng.gen_bool(0.3) {
            m.swap(a, b);
        } else if a != b {
            let k = rng.gen_range(-2..=2);
            for j in 0..n {
                m[a][j] += k * m[b][j];
            }
        }
    }
    m
}

fn random_skew(rng: &mut ChaCha8Rng, s: usize, m: usize) -> Vec<Vec<ExponentScalar>> {
    let mut t = vec![vec![ExponentScalar::one(m); s]; s];
    for a in 0..s {
        for b in a + 1..s {
            let v = ExponentScalar((0..m).map(|_| rng.gen_range(-4..=4)).collect());
            t[b][a] = -&v;
            t[a][b] = v;
        }
    }
    t
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, support: &BTreeSet<usize>) -> Vec<i64> {
    (1..=n).map(|i| if support.contains(&i) { rng.gen_range(-3..=3) } else { 0 }).collect()
}

fn c10_hygiene() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let groups: Vec<WeylGroup> = ["A2", "B2", "G2", "A3"].into_iter().map(group).collect();

    for _ in 0..INSTANCES {
        let rows = random_matrix(&mut rng);
        let m = IntMatrix::from_i64_rows(&rows);
        let u = IntMatrix::from_i64_rows(&random_unimodular(&mut rng, m.rows()));
        let v = IntMatrix::from_i64_rows(&random_unimodular(&mut rng, m.cols()));
        let t = u.mul(&m).map_err(err)?.mul(&v).map_err(err)?;
        let (a, b) = (smith_normal_form(&m), smith_normal_form(&t));
        ensure(a.diag == b.diag, || format!("SNF changed under unimodular transform: {m}"))?;
        let d = a.left.mul(&m).map_err(err)?.mul(&a.right).map_err(err)?;
        ensure(d.is_diagonal(), || format!("SNF transforms: {m}"))?;
        let k = kernel_basis(&m);
        ensure(rank(&m) + k.rank() == m.cols() && a.rank() == rank(&m), || format!("rank identity: {m}"))?;
        ensure(m.mul(&k.basis().transpose()).map_err(err)?.is_zero(), || format!("kernel: {m}"))?;
    }

    for _ in 0..INSTANCES {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(1..=3);
        let supp: BTreeSet<usize> = (1..=n).collect();
        let r = Bicharacter::from_table(n, &supp, m, random_skew(&mut rng, n, m)).map_err(err)?;
        let (x, y, z) = (
            RootVec(random_vec(&mut rng, n, &supp)),
            RootVec(random_vec(&mut rng, n, &supp)),
            RootVec(random_vec(&mut rng, n, &supp)),
        );
        let e = |a: &RootVec, b: &RootVec| r.eval(a, b).map_err(err);
        ensure((&e(&x, &y)? + &e(&y, &x)?).is_one(), || "bicharacter not skew".into())?;
        ensure(e(&(&x + &y), &z)? == &e(&x, &z)? + &e(&y, &z)?, || "bicharacter not additive".into())?;
    }

    for _ in 0..INSTANCES {
        let g = &groups[rng.gen_range(0..groups.len())];
        let n = g.rank();
        let all = g.elements().map_err(err)?;
        let w = &all[rng.gen_range(1..all.len())];
        let supp = g.support(w);
        let r = Bicharacter::from_table(n, &supp, 2, random_skew(&mut rng, supp.len(), 2)).map_err(err)?;
        let (m1, m2) = (
            WeightVec::integral(&random_vec(&mut rng, n, &supp)),
            WeightVec::integral(&random_vec(&mut rng, n, &supp)),
        );
        let (t1, t2) = (RootVec(random_vec(&mut rng, n, &supp)), RootVec(random_vec(&mut rng, n, &supp)));
        let c = |m: &WeightVec, t: &RootVec| torus_character(g, w, m, t, &r).map_err(err);
        ensure(c(&(&m1 + &m2), &(&t1 + &t2))? == &c(&m1, &t1)? + &c(&m2, &t2)?, || {
            format!("torus_character not additive for w={}", name(g, w))
        })?;
    }

    for _ in 0..INSTANCES {
        let g = &groups[rng.gen_range(0..groups.len())];
        let w0 = g.longest_element();
        let below = g.lower_interval(&w0);
        let y = &below[rng.gen_range(0..below.len())];
        let (d, _) = qyw_data(g, &w0, y).map_err(err)?;
        let r = Bicharacter::from_table(g.rank(), &g.support(&w0), 2, random_skew(&mut rng, g.rank(), 2)).map_err(err)?;
        let tor = build_torus(g, &d, &r).map_err(err)?;
        let mut mono = || {
            TorusMonomial::new(
                (0..tor.len()).map(|_| rng.gen_range(-3..=3)).collect(),
                ExponentScalar(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]),
            )
        };
        let (x, y, z) = (mono(), mono(), mono());
        let xy_z = tor.multiply(&tor.multiply(&x, &y).map_err(err)?, &z).map_err(err)?;
        let x_yz = tor.multiply(&x, &tor.multiply(&y, &z).map_err(err)?).map_err(err)?;
        ensure(xy_z == x_yz, || format!("torus not associative: {x}; {y}; {z}"))?;
    }
    Ok(format!("{INSTANCES} instances each of SNF/kernel, bicharacter, torus_character, torus product"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("formula agreement", c1_formula_agreement),
        ("Cauchon uniqueness", c2_cauchon_uniqueness),
        ("Q_yw lattice equality", c3_qyw_equality),
        ("known small values", c4_small_values),
        ("quantum torus center", c5_torus_center),
        ("poset and catenarity", c6_poset),
        ("sandwich rank", c7_sandwich),
        ("support identity", c8_support),
        ("torsion freeness", c9_torsion),
        ("algebraic hygiene", c10_hygiene),
    ];
    let mut failed = 0;
    for (k, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}  {label}: {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {label}: {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
