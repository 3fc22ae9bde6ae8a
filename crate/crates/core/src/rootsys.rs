//! Finite-type root systems in Bourbaki numbering.
//!
//! Conventions: the Cartan entries are `c_ij = <α_i^∨, α_j>`, the
//! symmetrizers `d_i` are coprime positive integers with `d_i c_ij`
//! symmetric, and the invariant form is `<α_i, α_j> = d_i c_ij`. Hence
//! `<α_i, α_i> = 2 d_i` and `<ω_i, α_j> = δ_ij d_j`.
//!
//! Long/short roots in the non simply laced types:
//!
//! | type | long simple roots      | d                |
//! |------|------------------------|------------------|
//! | B_n  | α_1 .. α_{n-1}         | (2, .., 2, 1)    |
//! | C_n  | α_n                    | (1, .., 1, 2)    |
//! | F_4  | α_1, α_2               | (2, 2, 1, 1)     |
//! | G_2  | α_2                    | (1, 3)           |

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::rational::{self, RatRow};
use crate::intlin::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    /// D_3 is rejected in favor of A_3.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            let hint = if series == Series::D && rank == 3 {
                " (use A3)"
            } else {
                ""
            };
            return Err(Error::InvalidLieType(format!("{series:?}{rank}{hint}")));
        }
        Ok(LieType { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Series::F => 24,
            Series::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::InvalidLieType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidLieType(s.to_string()))?;
        LieType::new(series, rank)
    }
}

/// Integer vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    /// `α_i` for `i` in `1..=rank`.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVec(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    pub fn from_bigint(v: &[BigInt]) -> Result<Self> {
        v.iter()
            .map(|x| {
                i64::try_from(x).map_err(|_| Error::shape(format!("coordinate {x} exceeds i64")))
            })
            .collect::<Result<_>>()
            .map(RootVec)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl Add for &RootVec {
    type Output = RootVec;
    fn add(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVec {
    type Output = RootVec;
    fn sub(self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Rational vector in the fundamental-weight basis. Elements of `(1/n)P`
/// have all denominators dividing `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVec {
    pub coords: Vec<BigRational>,
}

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn integral(coords: &[i64]) -> Self {
        WeightVec {
            coords: rational::from_i64(coords),
        }
    }

    /// `ω_i` for `i` in `1..=rank`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i - 1] = BigRational::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.denominator().is_one()
    }

    /// Membership in `(1/n) P`.
    pub fn in_scaled_lattice(&self, n: &BigInt) -> bool {
        n.is_multiple_of(&self.denominator())
    }

    pub fn to_integral(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|x| if x.is_integer() { i64::try_from(x.numer()).ok() } else { None })
            .collect()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        WeightVec {
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl Add for &WeightVec {
    type Output = WeightVec;
    fn add(self, o: &WeightVec) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &WeightVec {
    type Output = WeightVec;
    fn sub(self, o: &WeightVec) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Anything that can be written in simple-root coordinates over `Q`.
pub trait Pairable {
    fn root_coords(&self, rs: &RootSystem) -> Result<RatRow>;
}

impl Pairable for RootVec {
    fn root_coords(&self, rs: &RootSystem) -> Result<RatRow> {
        rs.check_rank(self.rank())?;
        Ok(rational::from_i64(&self.0))
    }
}

impl Pairable for WeightVec {
    fn root_coords(&self, rs: &RootSystem) -> Result<RatRow> {
        rs.check_rank(self.rank())?;
        Ok(rs.weight_to_root_coords(self))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    positive_roots: Vec<RootVec>,
    cartan_inv: Vec<RatRow>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.lie_type == other.lie_type
    }
}

impl Eq for RootSystem {}

fn cartan_table(t: LieType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = t.rank();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i - 1][j - 1] = cij;
        c[j - 1][i - 1] = cji;
    };
    let d = match t.series() {
        Series::A => {
            for i in 1..n {
                link(i, i + 1, -1, -1);
            }
            vec![1; n]
        }
        Series::B => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -1, -2);
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Series::C => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 1, n, -2, -1);
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Series::D => {
            for i in 1..n - 1 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n, -1, -1);
            vec![1; n]
        }
        Series::E => {
            link(1, 3, -1, -1);
            link(2, 4, -1, -1);
            for i in 3..n {
                link(i, i + 1, -1, -1);
            }
            vec![1; n]
        }
        Series::F => {
            link(1, 2, -1, -1);
            link(2, 3, -1, -2);
            link(3, 4, -1, -1);
            vec![2, 2, 1, 1]
        }
        Series::G => {
            link(1, 2, -3, -1);
            vec![1, 3]
        }
    };
    (c, d)
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let (cartan, symmetrizers) = cartan_table(lie_type);
        let n = lie_type.rank();
        let cartan_rat: Vec<RatRow> = cartan.iter().map(|r| rational::from_i64(r)).collect();
        let cartan_inv = rational::inverse(&cartan_rat).expect("Cartan matrices are invertible");
        let mut rs = RootSystem {
            lie_type,
            cartan,
            symmetrizers,
            positive_roots: Vec::new(),
            cartan_inv,
        };

        // close the simple roots under simple reflections, keeping positives
        let mut seen: BTreeSet<RootVec> = (1..=n).map(|i| RootVec::simple(n, i)).collect();
        let mut queue: VecDeque<RootVec> = seen.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for i in 1..=n {
                let y = rs.reflect(i, &x);
                if y.is_positive() && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut roots: Vec<RootVec> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.0.iter().sum::<i64>(), std::cmp::Reverse(r.0.clone())));
        rs.positive_roots = roots;
        rs
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(s.parse()?))
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(&self.cartan)
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// Positive roots ordered by height, ties broken by descending
    /// coordinates.
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        RootVec::simple(self.rank(), i)
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        WeightVec::fundamental(self.rank(), i)
    }

    pub(crate) fn check_rank(&self, r: usize) -> Result<()> {
        if r != self.rank() {
            return Err(Error::MixedRootSystems(
                format!("{} (rank {})", self.lie_type, self.rank()),
                format!("vector of rank {r}"),
            ));
        }
        Ok(())
    }

    /// Gram matrix of the invariant form on simple roots: `d_i c_ij`.
    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.symmetrizers[i] * self.cartan[i][j]
    }

    /// `<x, y>` for root-lattice vectors.
    pub fn form(&self, x: &RootVec, y: &RootVec) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x.0[i] * self.gram(i, j) * y.0[j];
            }
        }
        s
    }

    /// `<λ, γ>` for a weight and a root-lattice vector: `Σ λ_i d_i γ_i`.
    pub fn pair_weight_root(&self, lambda: &WeightVec, gamma: &RootVec) -> BigRational {
        lambda
            .coords
            .iter()
            .zip(&gamma.0)
            .zip(&self.symmetrizers)
            .map(|((l, &g), &d)| l * BigRational::from_integer(BigInt::from(g * d)))
            .sum()
    }

    /// The invariant form extended bilinearly to weights and roots.
    pub fn pairing<A: Pairable + ?Sized, B: Pairable + ?Sized>(&self, x: &A, y: &B) -> Result<BigRational> {
        let a = x.root_coords(self)?;
        let b = y.root_coords(self)?;
        let n = self.rank();
        let mut s = BigRational::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.gram(i, j);
                if g != 0 && !b[j].is_zero() {
                    s += &a[i] * &b[j] * BigRational::from_integer(g.into());
                }
            }
        }
        Ok(s)
    }

    /// `<λ, α^∨> = 2 <λ, α> / <α, α>`.
    pub fn coroot_pairing<A: Pairable + ?Sized>(&self, lambda: &A, alpha: &RootVec) -> Result<BigRational> {
        let aa = self.form(alpha, alpha);
        if aa == 0 {
            return Err(Error::shape("coroot of the zero vector"));
        }
        let la = self.pairing(lambda, alpha)?;
        Ok(la * BigRational::new(2.into(), aa.into()))
    }

    /// `s_i(x) = x - <x, α_i^∨> α_i`; for root-lattice vectors the
    /// coefficient is `Σ_j c_ij x_j`.
    pub fn reflect(&self, i: usize, x: &RootVec) -> RootVec {
        let k: i64 = (0..self.rank()).map(|j| self.cartan[i - 1][j] * x.0[j]).sum();
        let mut y = x.clone();
        y.0[i - 1] -= k;
        y
    }

    /// Fundamental-weight coordinates of a root-lattice vector: `C x`.
    pub fn root_to_weight(&self, x: &RootVec) -> WeightVec {
        let n = self.rank();
        let coords = (0..n)
            .map(|i| {
                let s: i64 = (0..n).map(|j| self.cartan[i][j] * x.0[j]).sum();
                BigRational::from_integer(s.into())
            })
            .collect();
        WeightVec { coords }
    }

    /// Simple-root coordinates of a weight: `C^{-1} λ`.
    pub fn weight_to_root_coords(&self, lambda: &WeightVec) -> RatRow {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.cartan_inv[i][j] * &lambda.coords[j])
                    .sum()
            })
            .collect()
    }

    /// The weight as a root-lattice vector, if it lies in `Q`.
    pub fn weight_to_root(&self, lambda: &WeightVec) -> Option<RootVec> {
        let c = self.weight_to_root_coords(lambda);
        c.iter()
            .map(|x| if x.is_integer() { i64::try_from(x.numer()).ok() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(RootVec)
    }

    pub fn is_root(&self, x: &RootVec) -> bool {
        if x.is_negative() {
            self.positive_roots.contains(&-x)
        } else {
            self.positive_roots.contains(x)
        }
    }

    /// Sign test used by length computations; `x` must be a root.
    pub(crate) fn root_is_negative(x: &[i64]) -> bool {
        x.iter().any(|&c| c < 0)
    }

    /// Dominance order `ν1 >= ν2`: the difference is a nonnegative integer
    /// combination of simple roots.
    pub fn dominates(&self, nu1: &WeightVec, nu2: &WeightVec) -> bool {
        let diff = self.weight_to_root_coords(&(nu1 - nu2));
        diff.iter().all(|x| x.is_integer() && !x.is_negative())
    }
}
