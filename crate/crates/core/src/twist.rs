//! Scalars of `K*` as integer exponent vectors over formal generators
//! `q, p_1, ..., p_k`, bicharacters on `Q_{S(w)}`, and the characters
//! attached to normal elements and torus elements.
//!
//! Coordinate 0 of every exponent vector is the exponent of `q`. Adding
//! vectors multiplies scalars; the zero vector is `1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlin::{image_is_torsion_free, IntLattice, IntMatrix};
use crate::rootsys::{RootSystem, RootVec, WeightVec};
use crate::weyl::{ReducedWord, WeylElt, WeylGroup};

/// Names of the formal generators; `q` is always first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamSpace {
    names: Vec<String>,
}

impl ParamSpace {
    /// `q` followed by `params`.
    pub fn new<S: AsRef<str>>(params: &[S]) -> Result<Self> {
        let mut names = vec!["q".to_string()];
        for p in params {
            let p = p.as_ref().trim();
            let valid = !p.is_empty() && p.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid || names.iter().any(|n| n == p) {
                return Err(Error::InvalidBicharacter(format!("bad or repeated parameter name `{p}`")));
            }
            names.push(p.to_string());
        }
        Ok(ParamSpace { names })
    }

    /// Only `q`.
    pub fn generic() -> Self {
        ParamSpace { names: vec!["q".into()] }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn params(&self) -> &[String] {
        &self.names[1..]
    }

    /// Renders `[-1, 1]` as `q^-1*p`, and the zero vector as `1`.
    pub fn render(&self, x: &ExponentScalar) -> String {
        let parts: Vec<String> = x
            .0
            .iter()
            .zip(&self.names)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// An element of `K*` as an exponent vector `(q, p_1, ..., p_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentScalar(pub Vec<i64>);

impl ExponentScalar {
    pub fn one(m: usize) -> Self {
        ExponentScalar(vec![0; m])
    }

    /// `q^k`.
    pub fn q_power(m: usize, k: i64) -> Self {
        let mut v = vec![0; m];
        v[0] = k;
        ExponentScalar(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn q_exponent(&self) -> i64 {
        self.0[0]
    }

    /// `x^k`
    pub fn pow(&self, k: i64) -> Self {
        ExponentScalar(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl Add for &ExponentScalar {
    type Output = ExponentScalar;
    fn add(self, o: &ExponentScalar) -> ExponentScalar {
        ExponentScalar(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentScalar {
    type Output = ExponentScalar;
    fn sub(self, o: &ExponentScalar) -> ExponentScalar {
        ExponentScalar(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentScalar {
    type Output = ExponentScalar;
    fn neg(self) -> ExponentScalar {
        ExponentScalar(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for ExponentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A multiplicatively skew bicharacter on `Q_S`, stored by its values
/// `r(α_i, α_j)` for `i, j` in the support `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    rank: usize,
    m: usize,
    support: Vec<usize>,
    table: Vec<Vec<ExponentScalar>>,
}

impl Bicharacter {
    /// The trivial bicharacter `r = 1`.
    pub fn trivial(rank: usize, support: &BTreeSet<usize>, m: usize) -> Self {
        let s = support.len();
        Bicharacter {
            rank,
            m,
            support: support.iter().copied().collect(),
            table: vec![vec![ExponentScalar::one(m); s]; s],
        }
    }

    /// `table[a][b] = r(α_{S[a]}, α_{S[b]})`, required skew with zero diagonal.
    pub fn from_table(rank: usize, support: &BTreeSet<usize>, m: usize, table: Vec<Vec<ExponentScalar>>) -> Result<Self> {
        let b = Bicharacter {
            rank,
            m,
            support: support.iter().copied().collect(),
            table,
        };
        b.validate()?;
        Ok(b)
    }

    /// `r(α, β) = p(α, β) p(β, α)^{-1}` from a table of cocycle values.
    pub fn from_cocycle(rank: usize, support: &BTreeSet<usize>, m: usize, p: &[Vec<ExponentScalar>]) -> Result<Self> {
        let s = support.len();
        if p.len() != s || p.iter().any(|row| row.len() != s || row.iter().any(|x| x.len() != m)) {
            return Err(Error::InvalidBicharacter(format!("cocycle table must be {s}x{s} with entries of length {m}")));
        }
        let table = (0..s)
            .map(|a| (0..s).map(|b| &p[a][b] - &p[b][a]).collect())
            .collect();
        Self::from_table(rank, support, m, table)
    }

    /// A pure `q`-power bicharacter `r(α_a, α_b) = q^{k[a][b]}`.
    pub fn q_power(rank: usize, support: &BTreeSet<usize>, m: usize, k: &[Vec<i64>]) -> Result<Self> {
        let table = k
            .iter()
            .map(|row| row.iter().map(|&x| ExponentScalar::q_power(m, x)).collect())
            .collect();
        Self::from_table(rank, support, m, table)
    }

    fn validate(&self) -> Result<()> {
        let s = self.support.len();
        if self.support.iter().any(|&i| i == 0 || i > self.rank) {
            return Err(Error::InvalidBicharacter(format!("support {:?} outside 1..={}", self.support, self.rank)));
        }
        if self.m == 0 {
            return Err(Error::InvalidBicharacter("no room for the q coordinate".into()));
        }
        if self.table.len() != s || self.table.iter().any(|row| row.len() != s) {
            return Err(Error::InvalidBicharacter(format!("table must be {s}x{s}")));
        }
        for a in 0..s {
            for b in 0..s {
                let x = &self.table[a][b];
                if x.len() != self.m {
                    return Err(Error::InvalidBicharacter(format!("entry ({a},{b}) has length {}, expected {}", x.len(), self.m)));
                }
                if !(x + &self.table[b][a]).is_one() {
                    return Err(Error::InvalidBicharacter(format!(
                        "not skew at ({}, {})",
                        self.support[a], self.support[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of the exponent vectors.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn table(&self) -> &[Vec<ExponentScalar>] {
        &self.table
    }

    /// Coordinates of `γ` on the support, rejecting anything outside it.
    fn restrict(&self, gamma: &RootVec) -> Result<Vec<i64>> {
        if gamma.rank() != self.rank {
            return Err(Error::MixedRootSystems(format!("rank {}", self.rank), format!("rank {}", gamma.rank())));
        }
        for (k, &c) in gamma.0.iter().enumerate() {
            if c != 0 && !self.support.contains(&(k + 1)) {
                return Err(Error::OutsideSupport(k + 1));
            }
        }
        Ok(self.support.iter().map(|&i| gamma.0[i - 1]).collect())
    }

    /// `r(γ, δ)` by bilinear extension.
    pub fn eval(&self, gamma: &RootVec, delta: &RootVec) -> Result<ExponentScalar> {
        let x = self.restrict(gamma)?;
        let y = self.restrict(delta)?;
        let mut out = vec![0i64; self.m];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(&self.table[a][b].0) {
                    *o += xa * yb * t;
                }
            }
        }
        Ok(ExponentScalar(out))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(ExponentScalar::is_one)
    }
}

/// Exponent vectors declared equal to `1`. Generators must have zero
/// `q`-coordinate since `q` is not a root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationsLattice {
    lattice: IntLattice,
}

impl RelationsLattice {
    /// No relations.
    pub fn generic(m: usize) -> Self {
        RelationsLattice {
            lattice: IntLattice::zero(m),
        }
    }

    pub fn new(m: usize, gens: &[ExponentScalar]) -> Result<Self> {
        for g in gens {
            if g.len() != m {
                return Err(Error::InvalidRelations(format!("relation {g} should have length {m}")));
            }
            if g.q_exponent() != 0 {
                return Err(Error::InvalidRelations(format!("relation {g} involves q")));
            }
        }
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
        Ok(RelationsLattice {
            lattice: IntLattice::from_rows(m, &rows)?,
        })
    }

    pub fn m(&self) -> usize {
        self.lattice.ambient()
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn is_generic(&self) -> bool {
        self.lattice.is_zero()
    }

    /// Whether the scalar is `1` modulo the relations.
    pub fn is_one(&self, x: &ExponentScalar) -> bool {
        self.lattice.contains(&x.to_bigint()).unwrap_or(false)
    }

    /// `rel^k` inside `(Z^m)^k`.
    pub fn power(&self, k: usize) -> IntLattice {
        let m = self.m();
        let b = self.lattice.basis();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for block in 0..k {
            for i in 0..b.rows() {
                let mut row = vec![BigInt::from(0); m * k];
                row[block * m..(block + 1) * m].clone_from_slice(b.row(i));
                rows.push(row);
            }
        }
        IntLattice::from_rows(m * k, &rows).expect("rows have the ambient length")
    }
}

/// A homomorphism `Q_S -> K*`, stored by its values on `α_i`, `i ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    rank: usize,
    support: Vec<usize>,
    values: Vec<ExponentScalar>,
}

impl Character {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Values on the simple roots of the support, in support order.
    pub fn values(&self) -> &[ExponentScalar] {
        &self.values
    }

    pub fn apply(&self, gamma: &RootVec) -> Result<ExponentScalar> {
        let m = self.values.first().map_or(1, ExponentScalar::len);
        let mut out = ExponentScalar::one(m);
        for (k, &c) in gamma.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a = self
                .support
                .iter()
                .position(|&i| i == k + 1)
                .ok_or(Error::OutsideSupport(k + 1))?;
            out = &out + &self.values[a].pow(c);
        }
        Ok(out)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(ExponentScalar::is_one)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, o: &Character) -> Character {
        Character {
            rank: self.rank,
            support: self.support.clone(),
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        }
    }
}

fn integral(x: &num_rational::BigRational, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NonIntegral(format!("{what} = {x}")));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NonIntegral(format!("{what} = {x} overflows")))
}

fn root_of(rs: &RootSystem, lambda: &WeightVec, what: &str) -> Result<RootVec> {
    rs.weight_to_root(lambda)
        .ok_or_else(|| Error::NonIntegral(format!("{what} = {lambda} is not in the root lattice")))
}

/// Builds the character `γ ↦ r(θ, γ) q^{<ν, γ>}` on `Q_{S(r)}`.
fn character_from(rs: &RootSystem, theta: &RootVec, nu: &WeightVec, r: &Bicharacter) -> Result<Character> {
    let mut values = Vec::with_capacity(r.support.len());
    for &i in &r.support {
        let a = rs.simple_root(i);
        let mut v = r.eval(theta, &a)?;
        v.0[0] += integral(&rs.pair_weight_root(nu, &a), "q-exponent")?;
        values.push(v);
    }
    Ok(Character {
        rank: rs.rank(),
        support: r.support.clone(),
        values,
    })
}

/// `γ ↦ r((w-y)μ, γ) q^{-<(w+y)μ, γ>}`, the commutation character of the
/// normal element attached to `μ`.
pub fn commutation_character(g: &WeylGroup, w: &WeylElt, y: &WeylElt, mu: &WeightVec, r: &Bicharacter) -> Result<Character> {
    let rs = g.root_system();
    let (wm, ym) = (g.act_weight(w, mu)?, g.act_weight(y, mu)?);
    let theta = root_of(rs, &(&wm - &ym), "(w-y)μ")?;
    character_from(rs, &theta, &-&(&wm + &ym), r)
}

/// `γ ↦ r(θ, γ) q^{<θ - 2wμ, γ>}`, the character of `t_{μ,θ}`.
pub fn torus_character(g: &WeylGroup, w: &WeylElt, mu: &WeightVec, theta: &RootVec, r: &Bicharacter) -> Result<Character> {
    let rs = g.root_system();
    let supp = g.support(w);
    if !mu.is_integral() {
        return Err(Error::NonIntegral(format!("μ = {mu} is not integral")));
    }
    if let Some(k) = (1..=g.rank()).find(|k| !supp.contains(k) && !mu.coords[k - 1].is_zero()) {
        return Err(Error::OutsideSupport(k));
    }
    if let Some(k) = (1..=g.rank()).find(|k| !supp.contains(k) && theta.0[k - 1] != 0) {
        return Err(Error::OutsideSupport(k));
    }
    let wmu = g.act_weight(w, mu)?;
    let nu = &rs.root_to_weight(theta) - &(&wmu + &wmu);
    character_from(rs, theta, &nu, r)
}

/// The generators `r(β_i, β_j) q^{<β_i, β_j>}` for `i < j`.
pub fn torsion_generators(g: &WeylGroup, word: &ReducedWord, r: &Bicharacter) -> Result<Vec<ExponentScalar>> {
    let betas = crate::cauchon::beta_roots(g, word)?;
    let rs = g.root_system();
    let mut out = Vec::new();
    for i in 0..betas.len() {
        for j in i + 1..betas.len() {
            let mut v = r.eval(&betas[i], &betas[j])?;
            v.0[0] += rs.form(&betas[i], &betas[j]);
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether the subgroup of `K*` generated by `r(β_i, β_j) q^{<β_i, β_j>}`
/// is torsion free, computed in `Z^m / rel`.
pub fn torsion_free_check(g: &WeylGroup, word: &ReducedWord, r: &Bicharacter, rel: &RelationsLattice) -> Result<bool> {
    if rel.m() != r.m() {
        return Err(Error::InvalidRelations(format!(
            "relations live in Z^{}, scalars in Z^{}",
            rel.m(),
            r.m()
        )));
    }
    let gens = torsion_generators(g, word, r)?;
    let rows: Vec<Vec<i64>> = gens.into_iter().map(|v| v.0).collect();
    let span = IntLattice::from_rows(r.m(), &rows)?;
    image_is_torsion_free(&span, rel.lattice())
}

/// Stacks exponent vectors into the columns of an integer matrix.
pub(crate) fn columns_matrix(m: usize, cols: &[Vec<ExponentScalar>]) -> IntMatrix {
    // each column is a concatenation of scalars
    let height = cols.first().map_or(0, |c| c.len() * m);
    let mut out = IntMatrix::zeros(height, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (k, x) in col.iter().enumerate() {
            for (t, &e) in x.0.iter().enumerate() {
                out.set(k * m + t, j, BigInt::from(e));
            }
        }
    }
    out
}
