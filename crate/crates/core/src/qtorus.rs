//! The quantum torus of a Cauchon localization, with exact bookkeeping of
//! the reordering scalars.
//!
//! Generators `z_1, ..., z_g` correspond to the positions `j_1 < ... < j_g`
//! outside the diagram and have weights `β_{j_a}`. They satisfy
//! `z_a z_b = λ(a, b) z_b z_a` with
//! `λ(a, b) = r(β_a, β_b) q^{-<β_a, β_b>}` for `a > b`.
//! Monomials are kept in the normal order `z_g^{x_g} ... z_1^{x_1}`.

use std::fmt;

use num_bigint::BigInt;

use crate::cauchon::{beta_roots, CauchonDiagram};
use crate::error::{Error, Result};
use crate::intlin::{kernel_modulo, IntLattice, IntMatrix};
use crate::rootsys::RootVec;
use crate::twist::{Bicharacter, ExponentScalar, RelationsLattice};
use crate::weyl::WeylGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTorus {
    rank: usize,
    m: usize,
    positions: Vec<usize>,
    weights: Vec<RootVec>,
    forms: Vec<Vec<i64>>,
    comm: Vec<Vec<ExponentScalar>>,
}

/// `coeff · z_g^{exps_g} ... z_1^{exps_1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusMonomial {
    pub exps: Vec<i64>,
    pub coeff: ExponentScalar,
}

impl TorusMonomial {
    pub fn new(exps: Vec<i64>, coeff: ExponentScalar) -> Self {
        TorusMonomial { exps, coeff }
    }
}

/// `coeff-exps | gen-exps`, e.g. `-1 0 | 1 0 2`.
impl fmt::Display for TorusMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", join(&self.coeff.0), join(&self.exps))
    }
}

/// The torus attached to a Cauchon diagram and a bicharacter.
pub fn build_torus(g: &WeylGroup, d: &CauchonDiagram, r: &Bicharacter) -> Result<QTorus> {
    let d = CauchonDiagram::new(g, d.word(), d.positions().clone())?;
    let rs = g.root_system();
    let betas = beta_roots(g, d.word())?;
    let positions = d.complement();
    let weights: Vec<RootVec> = positions.iter().map(|&j| betas[j - 1].clone()).collect();
    let n = weights.len();
    let m = r.m();
    let mut comm = vec![vec![ExponentScalar::one(m); n]; n];
    let mut forms = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            forms[a][b] = rs.form(&weights[a], &weights[b]);
        }
        for b in 0..a {
            let mut x = r.eval(&weights[a], &weights[b])?;
            x.0[0] -= forms[a][b];
            comm[b][a] = -&x;
            comm[a][b] = x;
        }
    }
    Ok(QTorus {
        rank: g.rank(),
        m,
        positions,
        weights,
        forms,
        comm,
    })
}

impl QTorus {
    /// Number of generators.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Positions of the word that the generators come from.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn weights(&self) -> &[RootVec] {
        &self.weights
    }

    /// `λ(a, b)` with 0-based indices.
    pub fn entry(&self, a: usize, b: usize) -> &ExponentScalar {
        &self.comm[a][b]
    }

    pub fn comm_matrix(&self) -> &[Vec<ExponentScalar>] {
        &self.comm
    }

    /// Lattice spanned by the generator weights.
    pub fn weight_lattice(&self) -> IntLattice {
        let rows: Vec<&[i64]> = self.weights.iter().map(|v| v.0.as_slice()).collect();
        IntLattice::from_rows(self.rank, &rows).expect("weights have the ambient rank")
    }

    pub fn one(&self) -> TorusMonomial {
        TorusMonomial::new(vec![0; self.len()], ExponentScalar::one(self.m))
    }

    /// `z_a`, 0-based.
    pub fn generator(&self, a: usize) -> TorusMonomial {
        let mut x = self.one();
        x.exps[a] = 1;
        x
    }

    fn check(&self, x: &TorusMonomial) -> Result<()> {
        if x.exps.len() != self.len() || x.coeff.len() != self.m {
            return Err(Error::shape(format!(
                "monomial with {} exponents and {} scalar coordinates does not belong to a torus with {} generators over Z^{}",
                x.exps.len(),
                x.coeff.len(),
                self.len(),
                self.m
            )));
        }
        Ok(())
    }

    /// `Σ_{b < a} x_b y_a λ(b, a)`: the cost of moving `y` past `x`.
    fn reorder(&self, x: &[i64], y: &[i64]) -> ExponentScalar {
        let mut out = vec![0i64; self.m];
        for a in 0..self.len() {
            if y[a] == 0 {
                continue;
            }
            for b in 0..a {
                let k = x[b] * y[a];
                if k == 0 {
                    continue;
                }
                for (o, e) in out.iter_mut().zip(&self.comm[b][a].0) {
                    *o += k * e;
                }
            }
        }
        ExponentScalar(out)
    }

    pub fn multiply(&self, x: &TorusMonomial, y: &TorusMonomial) -> Result<TorusMonomial> {
        self.check(x)?;
        self.check(y)?;
        let exps = x.exps.iter().zip(&y.exps).map(|(a, b)| a + b).collect();
        let coeff = &(&x.coeff + &y.coeff) + &self.reorder(&x.exps, &y.exps);
        Ok(TorusMonomial::new(exps, coeff))
    }

    pub fn inverse(&self, x: &TorusMonomial) -> Result<TorusMonomial> {
        self.check(x)?;
        let neg: Vec<i64> = x.exps.iter().map(|a| -a).collect();
        let coeff = &self.reorder(&x.exps, &x.exps) - &x.coeff;
        Ok(TorusMonomial::new(neg, coeff))
    }

    /// `Σ x_a β_a`.
    pub fn weight(&self, x: &TorusMonomial) -> RootVec {
        let mut v = RootVec::zero(self.rank);
        for (a, &k) in x.exps.iter().enumerate() {
            v = &v + &self.weights[a].scale(k);
        }
        v
    }

    /// The scalar `s` with `x z_c = s z_c x`, read off the multiplication.
    pub fn commutation_scalar(&self, x: &TorusMonomial, c: usize) -> Result<ExponentScalar> {
        let z = self.generator(c);
        Ok(&self.multiply(x, &z)?.coeff - &self.multiply(&z, x)?.coeff)
    }

    /// Closed form of [`commutation_scalar`](Self::commutation_scalar):
    /// `r(wt(x), β_c) q^{<Σ_{b<c} x_b β_b - Σ_{b>c} x_b β_b, β_c>}`.
    pub fn predicted_scalar(&self, r: &Bicharacter, x: &TorusMonomial, c: usize) -> Result<ExponentScalar> {
        self.check(x)?;
        let mut s = r.eval(&self.weight(x), &self.weights[c])?;
        for (b, &k) in x.exps.iter().enumerate() {
            s.0[0] += match b.cmp(&c) {
                std::cmp::Ordering::Less => k * self.forms[b][c],
                std::cmp::Ordering::Greater => -k * self.forms[b][c],
                std::cmp::Ordering::Equal => 0,
            };
        }
        Ok(s)
    }

    /// Exponent vectors of central monomials: `Σ_b a_b λ(b, c) = 1` modulo
    /// `rel` for every generator `c`.
    pub fn center_lattice(&self, rel: &RelationsLattice) -> Result<IntLattice> {
        if rel.m() != self.m {
            return Err(Error::InvalidRelations(format!(
                "relations live in Z^{}, scalars in Z^{}",
                rel.m(),
                self.m
            )));
        }
        let n = self.len();
        let mut map = IntMatrix::zeros(n * self.m, n);
        for c in 0..n {
            for b in 0..n {
                for (t, &e) in self.comm[b][c].0.iter().enumerate() {
                    map.set(c * self.m + t, b, BigInt::from(e));
                }
            }
        }
        kernel_modulo(&map, &rel.power(n))
    }
}
