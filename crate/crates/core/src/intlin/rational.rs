//! Gaussian elimination over the rationals. Kept separate from the
//! unimodular routines so that rank computations here can serve as an
//! independent check on the integer side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RatRow = Vec<BigRational>;

pub fn to_rational(v: &[BigInt]) -> RatRow {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn from_i64(v: &[i64]) -> RatRow {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [RatRow]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..ncols {
        let Some(i) = (p..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, i);
        let inv = rows[p][c].recip();
        for x in rows[p].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r == p || rows[r][c].is_zero() {
                continue;
            }
            let f = rows[r][c].clone();
            for j in 0..ncols {
                let d = &f * &rows[p][j];
                rows[r][j] -= d;
            }
        }
        pivots.push(c);
        p += 1;
        if p == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[RatRow]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Some solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &[RatRow], b: &[BigRational]) -> Option<RatRow> {
    assert_eq!(a.len(), b.len(), "row count of a and b differ");
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<RatRow> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = aug[k][n].clone();
    }
    Some(x)
}

pub fn identity(n: usize) -> Vec<RatRow> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[RatRow]) -> Option<Vec<RatRow>> {
    let n = a.len();
    let mut aug: Vec<RatRow> = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![from_i64(&[1, 2]), from_i64(&[2, 4])];
        assert_eq!(rank(&a), 1);
        assert!(solve(&a, &[q(1, 1), q(3, 1)]).is_none());
        let x = solve(&a, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(&x[0] + q(2, 1) * &x[1], q(1, 1));
    }

    #[test]
    fn inverse_of_cartan_a2() {
        let c = vec![from_i64(&[2, -1]), from_i64(&[-1, 2])];
        let inv = inverse(&c).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
        assert!(inverse(&[from_i64(&[1, 1]), from_i64(&[1, 1])]).is_none());
    }
}
