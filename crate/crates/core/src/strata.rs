//! Stratum lattices and dimensions, the constant `n_{y,w}`, the Cayley
//! solve for diagonal normal elements, and the stratification report over
//! `W^{<= w}`.
//!
//! Weights `μ ∈ P_{S(w)}` are written in the basis `ω_i`, `i ∈ S(w)`;
//! lattices of roots are in simple-root coordinates.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cauchon::{cauchon_diagram_for, qyw_generators, CauchonDiagram};
use crate::error::{Error, Result};
use crate::intlin::rational::{self, RatRow};
use crate::intlin::{kernel_modulo, lattice_ops, rank, smith_normal_form, IntLattice, IntMatrix, LatticeComparison};
use crate::rootsys::{RootVec, WeightVec};
use crate::twist::{columns_matrix, commutation_character, Bicharacter, RelationsLattice};
use crate::weyl::{ReducedWord, WeylElt, WeylGroup};

fn require_below(g: &WeylGroup, y: &WeylElt, w: &WeylElt) -> Result<()> {
    if !g.bruhat_leq(y, w)? {
        return Err(Error::NotBelow {
            y: g.reduced_word(y).to_string(),
            w: g.reduced_word(w).to_string(),
        });
    }
    Ok(())
}

fn require_support(g: &WeylGroup, w: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<()> {
    if r.rank() != g.rank() {
        return Err(Error::MixedRootSystems(g.lie_type().to_string(), format!("bicharacter of rank {}", r.rank())));
    }
    if let Some(i) = g.support(w).into_iter().find(|i| !r.support().contains(i)) {
        return Err(Error::InvalidBicharacter(format!("bicharacter is not defined on α{i}")));
    }
    if rel.m() != r.m() {
        return Err(Error::InvalidRelations(format!(
            "relations live in Z^{}, scalars in Z^{}",
            rel.m(),
            r.m()
        )));
    }
    Ok(())
}

/// The Cauchon diagram of `y` for the canonical reduced word of `w`, and
/// the generators `w^D_{(j-1)}(α_{i_j})` of `Q_{y,w}`.
pub fn qyw_data(g: &WeylGroup, w: &WeylElt, y: &WeylElt) -> Result<(CauchonDiagram, Vec<RootVec>)> {
    let word = g.reduced_word(w);
    let d = cauchon_diagram_for(g, &word, y)?;
    let gens = qyw_generators(g, &d);
    Ok((d, gens))
}

/// `(w - y) ω_i` in simple-root coordinates for each `i ∈ S(w)`.
fn difference_images(g: &WeylGroup, w: &WeylElt, y: &WeylElt, support: &[usize]) -> Vec<RootVec> {
    let rs = g.root_system();
    support
        .iter()
        .map(|&i| {
            let om = rs.fundamental_weight(i);
            let d = &g.act_weight(w, &om).expect("same group") - &g.act_weight(y, &om).expect("same group");
            rs.weight_to_root(&d).expect("(w - y) P lies in Q")
        })
        .collect()
}

/// Integer combinations of `vecs` with coefficients from the rows of `k`.
fn combine(rank: usize, k: &IntLattice, vecs: &[RootVec]) -> IntLattice {
    let rows: Vec<Vec<BigInt>> = (0..k.rank())
        .map(|t| {
            let coeffs = k.basis().row(t);
            (0..rank)
                .map(|c| coeffs.iter().zip(vecs).map(|(a, v)| a * BigInt::from(v.0[c])).sum())
                .collect()
        })
        .collect();
    IntLattice::from_rows(rank, &rows).expect("rows have the ambient length")
}

/// The lattice `K ⊆ P_{S(w)}` of weights whose commutation character is
/// trivial on `Q_{y,w}` modulo `rel`, in the basis `ω_i, i ∈ S(w)`.
pub fn normal_weight_kernel(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<IntLattice> {
    require_below(g, y, w)?;
    require_support(g, w, r, rel)?;
    let support: Vec<usize> = g.support(w).into_iter().collect();
    let (_, gens) = qyw_data(g, w, y)?;
    let rs = g.root_system();
    let cols = support
        .iter()
        .map(|&i| {
            let chi = commutation_character(g, w, y, &rs.fundamental_weight(i), r)?;
            gens.iter().map(|gamma| chi.apply(gamma)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = r.m();
    let map = if gens.is_empty() {
        IntMatrix::zeros(0, support.len())
    } else {
        columns_matrix(m, &cols)
    };
    kernel_modulo(&map, &rel.power(gens.len()))
}

/// `L_{y,w,p} = (w - y) K`, the lattice whose rank is the stratum dimension.
pub fn stratum_lattice(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<IntLattice> {
    let k = normal_weight_kernel(g, w, y, r, rel)?;
    let support: Vec<usize> = g.support(w).into_iter().collect();
    Ok(combine(g.rank(), &k, &difference_images(g, w, y, &support)))
}

pub fn stratum_dimension(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<usize> {
    Ok(stratum_lattice(g, w, y, r, rel)?.rank())
}

/// `dim ker(w + y)` on the span of the simple roots.
pub fn uniparameter_dimension(g: &WeylGroup, w: &WeylElt, y: &WeylElt) -> Result<usize> {
    g.check_same(w)?;
    g.check_same(y)?;
    let n = g.rank();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| w.entry(i, j) + y.entry(i, j)).collect())
        .collect();
    Ok(n - rank(&IntMatrix::from_i64_rows(&rows)))
}

/// Smallest `n > 0` such that every homomorphism `Q_{y,w} -> Z` is
/// `γ ↦ <λ, γ>` for some `λ ∈ (1/n) P`; `1` when `Q_{y,w} = 0`.
pub fn n_yw(g: &WeylGroup, w: &WeylElt, y: &WeylElt) -> Result<BigInt> {
    require_below(g, y, w)?;
    let (_, gens) = qyw_data(g, w, y)?;
    let q = IntLattice::from_rows(g.rank(), &gens.iter().map(|v| v.0.clone()).collect::<Vec<_>>())?;
    if q.is_zero() {
        return Ok(BigInt::one());
    }
    // λ ↦ (<λ, b_t>)_t has matrix B diag(d); its image has finite index
    // and n is the exponent of the cokernel
    let pairing = pairing_matrix(g, q.basis());
    let s = smith_normal_form(&pairing);
    Ok(s.diag.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x)))
}

/// `B diag(d)`: row `t` gives `<ω_i, b_t>` for the basis rows `b_t`.
fn pairing_matrix(g: &WeylGroup, b: &IntMatrix) -> IntMatrix {
    let d = g.root_system().symmetrizers();
    let mut out = b.clone();
    for t in 0..b.rows() {
        for i in 0..b.cols() {
            out.set(t, i, b.get(t, i) * BigInt::from(d[i]));
        }
    }
    out
}

/// Outcome of solving the Cayley system for a character pair `(γ0, μ0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CayleySolution {
    Solved {
        mu: WeightVec,
        /// `μ ∈ (1/2n_{y,w}) P`
        in_scaled_lattice: bool,
        /// `<(w + y) μ, Q_{y,w}> ⊆ Z`
        integral_on_qyw: bool,
    },
    /// No `μ` has this character pair.
    Inconsistent,
}

/// Solves `(w - y) μ = γ0`, `(w + y) μ = -μ0` over the rationals.
pub fn diagonal_normal_solve(g: &WeylGroup, w: &WeylElt, y: &WeylElt, gamma0: &RootVec, mu0: &WeightVec) -> Result<CayleySolution> {
    require_below(g, y, w)?;
    let rs = g.root_system();
    rs.check_rank(gamma0.rank())?;
    rs.check_rank(mu0.rank())?;
    let n = g.rank();
    let (ww, wy) = (g.weight_matrix(w), g.weight_matrix(y));
    let mut a: Vec<RatRow> = Vec::with_capacity(2 * n);
    for sign in [-1i64, 1] {
        for i in 0..n {
            a.push(rational::from_i64(&(0..n).map(|j| ww[i * n + j] + sign * wy[i * n + j]).collect::<Vec<_>>()));
        }
    }
    let gw = rs.root_to_weight(gamma0);
    let b: Vec<BigRational> = gw.coords.iter().cloned().chain(mu0.coords.iter().map(|x| -x)).collect();
    let Some(mu) = rational::solve(&a, &b) else {
        return Ok(CayleySolution::Inconsistent);
    };
    let mu = WeightVec { coords: mu };
    let two_n = n_yw(g, w, y)? * 2;
    let (_, gens) = qyw_data(g, w, y)?;
    let plus = &g.act_weight(w, &mu)? + &g.act_weight(y, &mu)?;
    let integral_on_qyw = gens.iter().all(|gamma| rs.pair_weight_root(&plus, gamma).is_integer());
    Ok(CayleySolution::Solved {
        in_scaled_lattice: mu.in_scaled_lattice(&two_n),
        integral_on_qyw,
        mu,
    })
}

/// The relaxed lattice `L'_{y,w,p}`: all `(w - y) μ` with
/// `μ ∈ (1/2n_{y,w}) P_{S(w)}`, `(w - y) μ ∈ Q`, `<(w + y) μ, Q_{y,w}> ⊆ Z`
/// and trivial commutation character modulo `rel`.
pub fn relaxed_stratum_lattice(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<IntLattice> {
    require_below(g, y, w)?;
    require_support(g, w, r, rel)?;
    let rs = g.root_system();
    let n = g.rank();
    let m = r.m();
    let support: Vec<usize> = g.support(w).into_iter().collect();
    let s = support.len();
    let (_, gens) = qyw_data(g, w, y)?;
    let k = gens.len();
    let big_n = BigInt::from(2) * n_yw(g, w, y)?;

    // unknowns: ν (s), x (n), t (k), with μ = ν / N
    let cols = s + n + k;
    let rows = n + k + m * k;
    let mut a = IntMatrix::zeros(rows, cols);
    let diffs = difference_images(g, w, y, &support);
    for (c, v) in diffs.iter().enumerate() {
        for i in 0..n {
            a.set(i, c, BigInt::from(v.0[i]));
        }
    }
    for i in 0..n {
        a.set(i, s + i, -&big_n);
    }
    for (c, &i) in support.iter().enumerate() {
        let om = rs.fundamental_weight(i);
        let plus = &g.act_weight(w, &om)? + &g.act_weight(y, &om)?;
        for (t, gamma) in gens.iter().enumerate() {
            let v = rs.pair_weight_root(&plus, gamma);
            a.set(n + t, c, v.to_integer());
        }
    }
    for t in 0..k {
        a.set(n + t, s + n + t, -&big_n);
    }
    for (t, gamma) in gens.iter().enumerate() {
        let base = n + k + m * t;
        for i in 0..n {
            if !r.support().contains(&(i + 1)) {
                continue;
            }
            let val = r.eval(&rs.simple_root(i + 1), gamma)?;
            for (e, &x) in val.0.iter().enumerate() {
                a.set(base + e, s + i, BigInt::from(x));
            }
        }
        a.set(base, s + n + t, BigInt::from(-1));
    }
    let target = direct_sum(&IntLattice::zero(n + k), &rel.power(k));
    let kernel = kernel_modulo(&a, &target)?;
    let rows: Vec<Vec<BigInt>> = (0..kernel.rank())
        .map(|t| kernel.basis().row(t)[s..s + n].to_vec())
        .collect();
    IntLattice::from_rows(n, &rows)
}

fn direct_sum(a: &IntLattice, b: &IntLattice) -> IntLattice {
    let (na, nb) = (a.ambient(), b.ambient());
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for t in 0..a.rank() {
        let mut row = a.basis().row(t).to_vec();
        row.resize(na + nb, BigInt::zero());
        rows.push(row);
    }
    for t in 0..b.rank() {
        let mut row = vec![BigInt::zero(); na];
        row.extend(b.basis().row(t).iter().cloned());
        rows.push(row);
    }
    IntLattice::from_rows(na + nb, &rows).expect("rows have the ambient length")
}

/// `L ⊆ L'` with equal ranks and finite index.
pub fn sandwich(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<LatticeComparison> {
    let l = stratum_lattice(g, w, y, r, rel)?;
    let lp = relaxed_stratum_lattice(g, w, y, r, rel)?;
    lattice_ops(&l, &lp)
}

/// One torus-invariant prime `I_w(y)` of the stratification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub y: WeylElt,
    pub y_word: ReducedWord,
    pub diagram: CauchonDiagram,
    pub dim: usize,
    pub height: usize,
    pub gk_codim: usize,
    /// Canonical words of `W^{<= y}`, sorted by length then word.
    pub closure_down: Vec<ReducedWord>,
}

/// The report for a single `y <= w`.
pub fn stratum_report(g: &WeylGroup, w: &WeylElt, y: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<StratumReport> {
    let (diagram, _) = qyw_data(g, w, y)?;
    let y_word = g.reduced_word(y);
    let height = y_word.len();
    Ok(StratumReport {
        y: y.clone(),
        dim: stratum_dimension(g, w, y, r, rel)?,
        height,
        gk_codim: g.length(w) - height,
        closure_down: g.lower_interval(y).iter().map(|z| g.reduced_word(z)).collect(),
        diagram,
        y_word,
    })
}

/// One report per `y <= w`, sorted by length and then canonical word.
pub fn stratification_report(g: &WeylGroup, w: &WeylElt, r: &Bicharacter, rel: &RelationsLattice) -> Result<Vec<StratumReport>> {
    require_support(g, w, r, rel)?;
    g.lower_interval(w)
        .par_iter()
        .map(|y| stratum_report(g, w, y, r, rel))
        .collect()
}

/// Outcome of [`catenarity_check`]; `failures` lists each violated
/// condition with its witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatenarityReport {
    pub pairs_checked: usize,
    pub covers: usize,
    pub failures: Vec<String>,
}

impl CatenarityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks on `W^{<= w}`: every Bruhat cover raises the length by one (so
/// all saturated chains between `y1 <= y2` have length `ℓ(y2) - ℓ(y1)`),
/// and for `y1 < y2` and `λ = Σ_{i ∈ S(w)} ω_i` the separating element
/// satisfies `y1 λ > y2 λ` with a well-defined commutation character.
pub fn catenarity_report(g: &WeylGroup, w: &WeylElt, r: &Bicharacter) -> Result<CatenarityReport> {
    let elts = g.lower_interval(w);
    let rs = g.root_system();
    let lambda = g
        .support(w)
        .into_iter()
        .fold(WeightVec::zero(g.rank()), |acc, i| &acc + &rs.fundamental_weight(i));
    let images: Vec<WeightVec> = elts.iter().map(|y| g.act_weight(y, &lambda)).collect::<Result<_>>()?;
    let lens: Vec<usize> = elts.iter().map(|y| g.length(y)).collect();
    let n = elts.len();
    let leq: Vec<Vec<bool>> = elts
        .par_iter()
        .map(|a| elts.iter().map(|b| g.bruhat_leq(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut report = CatenarityReport::default();
    let name = |k: usize| g.reduced_word(&elts[k]).to_string();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a][b] {
                continue;
            }
            report.pairs_checked += 1;
            let is_cover = !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if is_cover {
                report.covers += 1;
                if lens[b] != lens[a] + 1 {
                    report.failures.push(format!(
                        "graded: cover ({}) < ({}) jumps {} -> {}",
                        name(a),
                        name(b),
                        lens[a],
                        lens[b]
                    ));
                }
            }
            if images[a] == images[b] || !rs.dominates(&images[a], &images[b]) {
                report.failures.push(format!("separation: y1 λ > y2 λ fails for ({}) < ({})", name(a), name(b)));
            }
        }
    }
    for (a, y) in elts.iter().enumerate() {
        if let Err(e) = commutation_character(g, w, y, &lambda, r) {
            report.failures.push(format!("separation: character of ({}) undefined: {e}", name(a)));
        }
    }
    Ok(report)
}

pub fn catenarity_check(g: &WeylGroup, w: &WeylElt, r: &Bicharacter) -> Result<bool> {
    Ok(catenarity_report(g, w, r)?.passed())
}

/// Map from elements of `W^{<= w}` to their reports' positions.
pub fn report_index(reports: &[StratumReport]) -> HashMap<WeylElt, usize> {
    reports.iter().enumerate().map(|(k, rep)| (rep.y.clone(), k)).collect()
}

/// Pairs `(y', y)` of report positions with `y'` covered by `y`.
pub fn cover_edges(g: &WeylGroup, reports: &[StratumReport]) -> Vec<(usize, usize)> {
    let idx = report_index(reports);
    let mut edges = BTreeSet::new();
    for (k, rep) in reports.iter().enumerate() {
        for u in g.lower_covers(&rep.y) {
            if let Some(&j) = idx.get(&u) {
                edges.insert((j, k));
            }
        }
    }
    edges.into_iter().collect()
}

/// `|S(w)|`, the bound on every stratum dimension.
pub fn support_size(g: &WeylGroup, w: &WeylElt) -> usize {
    g.support(w).len()
}
