use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{hermite_normal_form, kernel_basis, smith_normal_form};
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, stored by the Hermite normal form of its
/// generators so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    ambient: usize,
    basis: IntMatrix,
}

impl IntLattice {
    pub fn from_generators(ambient: usize, gens: &IntMatrix) -> Result<Self> {
        if gens.rows() > 0 && gens.cols() != ambient {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: gens.cols(),
            });
        }
        let basis = if gens.rows() == 0 {
            IntMatrix::zeros(0, ambient)
        } else {
            hermite_normal_form(gens)
        };
        Ok(IntLattice { ambient, basis })
    }

    pub fn from_rows<T: Clone + Into<BigInt>, R: AsRef<[T]>>(ambient: usize, rows: &[R]) -> Result<Self> {
        Self::from_generators(ambient, &IntMatrix::from_rows(ambient, rows)?)
    }

    pub fn zero(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical (Hermite) basis, one generator per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for k in 0..self.rank() {
            let row = self.basis.row(k);
            let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
            // entries left of this pivot must already be cleared
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
            coords.push(q);
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subset_of(&self, other: &IntLattice) -> Result<bool> {
        self.check_ambient(other)?;
        for i in 0..self.rank() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check_ambient(other)?;
        IntLattice::from_generators(self.ambient, &self.basis.vstack(&other.basis)?)
    }

    /// `(Q self) ∩ Z^n`.
    pub fn saturation(&self) -> IntLattice {
        if self.is_zero() {
            return self.clone();
        }
        // orthogonal complement of the orthogonal complement
        let perp = kernel_basis(&self.basis);
        if perp.is_zero() {
            return IntLattice::full(self.ambient);
        }
        kernel_basis(perp.basis())
    }

    /// `[other : self]` when `self ⊆ other` with equal rank.
    pub fn index_in(&self, other: &IntLattice) -> Result<Option<BigInt>> {
        if self.rank() != other.rank() || !self.is_subset_of(other)? {
            return Ok(None);
        }
        if self.rank() == 0 {
            return Ok(Some(BigInt::one()));
        }
        let coords: Vec<Vec<BigInt>> = (0..self.rank())
            .map(|i| {
                other
                    .coordinates(self.basis.row(i))
                    .map(|c| c.expect("subset checked above"))
            })
            .collect::<Result<_>>()?;
        let m = IntMatrix::from_rows(self.rank(), &coords)?;
        let s = smith_normal_form(&m);
        Ok(Some(s.diag.iter().product::<BigInt>().abs()))
    }

    fn check_ambient(&self, other: &IntLattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

/// Result of comparing two lattices in the same ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComparison {
    pub rank_a: usize,
    pub rank_b: usize,
    pub equal: bool,
    pub a_subset_b: bool,
    /// `[b : a]`, present when `a ⊆ b` and the ranks agree.
    pub index_if_finite: Option<BigInt>,
    /// Whether the image of `a` in `Z^n / b` is torsion free.
    pub torsion_free_quotient: bool,
}

pub fn lattice_ops(a: &IntLattice, b: &IntLattice) -> Result<LatticeComparison> {
    a.check_ambient(b)?;
    let a_subset_b = a.is_subset_of(b)?;
    Ok(LatticeComparison {
        rank_a: a.rank(),
        rank_b: b.rank(),
        equal: a == b,
        a_subset_b,
        index_if_finite: a.index_in(b)?,
        torsion_free_quotient: image_is_torsion_free(a, b)?,
    })
}

/// Whether `(a + b) / b` is a free abelian group.
pub fn image_is_torsion_free(a: &IntLattice, b: &IntLattice) -> Result<bool> {
    let total = a.sum(b)?;
    if b.is_zero() {
        return Ok(true);
    }
    // express b in a basis of a + b; the quotient's torsion is read off the
    // invariant factors of that coordinate matrix
    let coords: Vec<Vec<BigInt>> = (0..b.rank())
        .map(|i| {
            total
                .coordinates(b.basis().row(i))
                .map(|c| c.expect("b lies in a + b"))
        })
        .collect::<Result<_>>()?;
    let m = IntMatrix::from_rows(total.rank(), &coords)?;
    let s = smith_normal_form(&m);
    Ok(s.torsion().is_empty())
}

/// Kernel of `Z^n -> Z^t / target` for the map `v -> map * v`.
pub fn kernel_modulo(map: &IntMatrix, target: &IntLattice) -> Result<IntLattice> {
    if target.ambient() != map.rows() {
        return Err(Error::AmbientMismatch {
            left: map.rows(),
            right: target.ambient(),
        });
    }
    let n = map.cols();
    if target.is_zero() {
        return Ok(kernel_basis(map));
    }
    // solve map*v - T^T c = 0 and keep the v part
    let mut neg_t = target.basis().transpose();
    for j in 0..neg_t.cols() {
        neg_t.negate_col(j);
    }
    let joint = map.hstack(&neg_t)?;
    let k = kernel_basis(&joint);
    let projected = k.basis().select_cols(0..n);
    IntLattice::from_generators(n, &projected)
}
