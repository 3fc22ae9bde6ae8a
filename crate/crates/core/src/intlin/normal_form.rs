use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::lattice::IntLattice;
use super::matrix::IntMatrix;

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Brings the first `limit` columns of `m` to row echelon form using
/// unimodular row operations. Returns the pivot columns in order; pivot
/// `k` sits in row `k` and is positive.
pub(crate) fn echelonize(m: &mut IntMatrix, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..limit.min(m.cols()) {
        if p == m.rows() {
            break;
        }
        for i in p + 1..m.rows() {
            if m.get(i, c).is_zero() {
                continue;
            }
            if m.get(p, c).is_zero() {
                m.swap_rows(p, i);
                continue;
            }
            let x = m.get(p, c).clone();
            let y = m.get(i, c).clone();
            let (g, s, t) = extended_gcd(&x, &y);
            let u = -(&y / &g);
            let v = &x / &g;
            m.combine_rows(p, i, [&s, &t, &u, &v]);
        }
        if m.get(p, c).is_zero() {
            continue;
        }
        if m.get(p, c).is_negative() {
            m.negate_row(p);
        }
        pivots.push(c);
        p += 1;
    }
    pivots
}

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let ncols = a.cols();
    let pivots = echelonize(&mut a, ncols);
    for (k, &c) in pivots.iter().enumerate() {
        let piv = a.get(k, c).clone();
        for r in 0..k {
            let q = a.get(r, c).div_floor(&piv);
            if !q.is_zero() {
                a.add_row_multiple(r, k, &-q);
            }
        }
    }
    let idx: Vec<usize> = (0..pivots.len()).collect();
    a.select_rows(&idx)
}

pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let ncols = a.cols();
    echelonize(&mut a, ncols).len()
}

/// Smith normal form with unimodular transforms: `left * m * right` is
/// diagonal with entries `diag[0] | diag[1] | ...`, all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nontrivial invariant factors, i.e. nonzero entries different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    'outer: for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let piv = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&piv);
                a.add_row_multiple(i, t, &-&q);
                left.add_row_multiple(i, t, &-&q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&piv);
                a.add_col_multiple(j, t, &-&q);
                right.add_col_multiple(j, t, &-&q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }

            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&piv))
            });
            if let Some(i) = offender {
                a.add_row_multiple(t, i, &BigInt::one());
                left.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diag, left, right }
}

/// Integer kernel `{v : m v = 0}` as a lattice in `Z^cols`. The result is
/// saturated since it is cut out by a unimodular transform.
pub fn kernel_basis(m: &IntMatrix) -> IntLattice {
    let n = m.cols();
    let aug = m
        .transpose()
        .hstack(&IntMatrix::identity(n))
        .expect("row counts agree by construction");
    let mut aug = aug;
    let r = m.rows();
    let pivots = echelonize(&mut aug, r);
    let idx: Vec<usize> = (pivots.len()..n).collect();
    let gens = aug.select_rows(&idx).select_cols(r..r + n);
    IntLattice::from_generators(n, &gens).expect("ambient matches by construction")
}
