//! Weyl group elements as integer matrices on the root lattice.
//!
//! Column `j` of an element's matrix holds `w(α_j)` in simple-root
//! coordinates, so composition is matrix multiplication. Simple reflections
//! and word letters are numbered `1..=rank`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::intlin::IntMatrix;
use crate::rootsys::{LieType, RootSystem, RootVec, WeightVec};

/// Upper bound on group orders we are willing to enumerate in full.
pub const FULL_ENUMERATION_LIMIT: usize = 2000;

/// Cap on the number of reduced words produced by braid-move closure.
pub const REDUCED_WORD_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt {
    lie_type: LieType,
    matrix: Box<[i64]>,
}

impl WeylElt {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank() + j]
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| self.matrix[i * n..(i + 1) * n].to_vec()).collect();
        IntMatrix::from_i64_rows(&rows)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == i64::from(i == j)))
    }

    fn compose(&self, other: &WeylElt) -> WeylElt {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += a * other.matrix[k * n + j];
                }
            }
        }
        WeylElt {
            lie_type: self.lie_type,
            matrix: m.into_boxed_slice(),
        }
    }

    /// Raw action on simple-root coordinates.
    fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
            .collect()
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt({}, {:?})", self.lie_type, self.matrix)
    }
}

/// A word in the simple reflections; letters are in `1..=rank`. The
/// constructor on [`WeylGroup`] checks that it is reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

}

/// Space-separated letters; the empty word prints as `e`.
impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses letters from `"1 2 1"` (commas also accepted); `""` or `"e"` is
/// the empty word. Reducedness is not checked here.
pub fn parse_letters(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(1, "word", format!("`{t}` is not a letter")))
        })
        .collect()
}

impl FromStr for ReducedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_letters(s).map(ReducedWord)
    }
}

/// The Weyl group of a root system together with cached generator
/// matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    gens: Vec<WeylElt>,
    weight_gens: Vec<Vec<i64>>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let n = rs.rank();
        let lie_type = rs.lie_type();
        let mut gens = Vec::with_capacity(n);
        let mut weight_gens = Vec::with_capacity(n);
        for i in 0..n {
            // s_i(α_j) = α_j - c_ij α_i: only row i differs from the identity
            let mut m = vec![0i64; n * n];
            for k in 0..n {
                m[k * n + k] = 1;
            }
            for j in 0..n {
                m[i * n + j] -= rs.cartan()[i][j];
            }
            gens.push(WeylElt {
                lie_type,
                matrix: m.into_boxed_slice(),
            });
            // s_i(ω_j) = ω_j - δ_ij α_i, and α_i = Σ_k c_ki ω_k
            let mut wm = vec![0i64; n * n];
            for k in 0..n {
                wm[k * n + k] = 1;
            }
            for k in 0..n {
                wm[k * n + i] -= rs.cartan()[k][i];
            }
            weight_gens.push(wm);
        }
        WeylGroup {
            rs: Arc::new(rs),
            gens,
            weight_gens,
        }
    }

    pub fn of_type(s: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::parse(s)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn lie_type(&self) -> LieType {
        self.rs.lie_type()
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for k in 0..n {
            m[k * n + k] = 1;
        }
        WeylElt {
            lie_type: self.lie_type(),
            matrix: m.into_boxed_slice(),
        }
    }

    pub fn simple(&self, i: usize) -> Result<WeylElt> {
        self.check_letter(i)?;
        Ok(self.gens[i - 1].clone())
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::LetterOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Rejects elements of a different group.
    pub fn check_same(&self, w: &WeylElt) -> Result<()> {
        if w.lie_type != self.lie_type() {
            return Err(Error::MixedRootSystems(
                self.lie_type().to_string(),
                w.lie_type.to_string(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> Result<WeylElt> {
        self.check_same(a)?;
        self.check_same(b)?;
        Ok(a.compose(b))
    }

    /// `s_i w`
    pub fn left_mul_simple(&self, i: usize, w: &WeylElt) -> WeylElt {
        self.gens[i - 1].compose(w)
    }

    /// `w s_i`
    pub fn right_mul_simple(&self, w: &WeylElt, i: usize) -> WeylElt {
        w.compose(&self.gens[i - 1])
    }

    /// Product `s_{l_1} ... s_{l_k}` of an arbitrary (not necessarily
    /// reduced) word.
    pub fn product(&self, letters: &[usize]) -> Result<WeylElt> {
        let mut w = self.identity();
        for &l in letters {
            self.check_letter(l)?;
            w = self.right_mul_simple(&w, l);
        }
        Ok(w)
    }

    pub fn element_of(&self, word: &ReducedWord) -> WeylElt {
        self.product(word.letters()).expect("reduced words are validated")
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let mut word = self.reduced_word(w).0;
        word.reverse();
        self.product(&word).expect("letters come from a reduced word")
    }

    /// Validates a word: letters in range and length equal to word length.
    pub fn reduced_word_from(&self, letters: Vec<usize>) -> Result<ReducedWord> {
        let word = ReducedWord(letters);
        self.check_reduced(&word)?;
        Ok(word)
    }

    /// Checks that `word` is a reduced word over this group and returns its
    /// product.
    pub fn check_reduced(&self, word: &ReducedWord) -> Result<WeylElt> {
        let w = self.product(word.letters())?;
        if self.length(&w) != word.len() {
            return Err(Error::NotReduced(word.to_string()));
        }
        Ok(w)
    }

    pub fn parse_word(&self, s: &str) -> Result<ReducedWord> {
        self.reduced_word_from(parse_letters(s)?)
    }

    pub fn act_root(&self, w: &WeylElt, x: &RootVec) -> Result<RootVec> {
        self.check_same(w)?;
        self.rs.check_rank(x.rank())?;
        Ok(RootVec(w.apply(&x.0)))
    }

    /// Matrix of `w` on fundamental-weight coordinates (integral, since
    /// `W` preserves `P`).
    pub fn weight_matrix(&self, w: &WeylElt) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0i64; n * n];
        for k in 0..n {
            m[k * n + k] = 1;
        }
        for &l in self.reduced_word(w).letters() {
            let g = &self.weight_gens[l - 1];
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    let a = m[i * n + k];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i * n + j] += a * g[k * n + j];
                    }
                }
            }
            m = out;
        }
        m
    }

    pub fn act_weight(&self, w: &WeylElt, lambda: &WeightVec) -> Result<WeightVec> {
        self.check_same(w)?;
        self.rs.check_rank(lambda.rank())?;
        let n = self.rank();
        let m = self.weight_matrix(w);
        let coords = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &lambda.coords[j] * BigRational::from_integer(m[i * n + j].into()))
                    .sum()
            })
            .collect();
        Ok(WeightVec { coords })
    }

    /// `#{α > 0 : w(α) < 0}`
    pub fn length(&self, w: &WeylElt) -> usize {
        self.rs
            .positive_roots()
            .iter()
            .filter(|a| RootSystem::root_is_negative(&w.apply(&a.0)))
            .count()
    }

    /// Whether `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i) < 0`.
    pub fn is_left_descent(&self, w: &WeylElt, i: usize) -> bool {
        self.length(&self.left_mul_simple(i, w)) < self.length(w)
    }

    /// Whether `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) < 0`.
    pub fn is_right_descent(&self, w: &WeylElt, i: usize) -> bool {
        let n = self.rank();
        (0..n).any(|k| w.matrix[k * n + i - 1] < 0)
    }

    /// Greedy reduced word: repeatedly strip the smallest left descent.
    /// This is the lexicographically smallest reduced word of `w`.
    pub fn reduced_word(&self, w: &WeylElt) -> ReducedWord {
        let mut letters = Vec::new();
        let mut cur = w.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next) = (1..=self.rank())
                .map(|i| (i, self.left_mul_simple(i, &cur)))
                .find(|(_, v)| self.length(v) < len)
                .expect("a nonidentity element has a left descent");
            letters.push(i);
            cur = next;
            len -= 1;
        }
        ReducedWord(letters)
    }

    pub fn length_and_reduced_word(&self, w: &WeylElt) -> (usize, ReducedWord) {
        let word = self.reduced_word(w);
        (word.len(), word)
    }

    pub fn longest_element(&self) -> WeylElt {
        let mut w = self.identity();
        loop {
            match (1..=self.rank()).find(|&i| !self.is_right_descent(&w, i)) {
                Some(i) => w = self.right_mul_simple(&w, i),
                None => return w,
            }
        }
    }

    /// Bruhat order via the lifting property: if `s w < w` then
    /// `y <= w` iff `min(y, s y) <= s w`.
    pub fn bruhat_leq(&self, y: &WeylElt, w: &WeylElt) -> Result<bool> {
        self.check_same(y)?;
        self.check_same(w)?;
        let mut y = y.clone();
        let mut w = w.clone();
        let mut lw = self.length(&w);
        let mut ly = self.length(&y);
        loop {
            if ly > lw {
                return Ok(false);
            }
            if lw == 0 {
                return Ok(y.is_identity());
            }
            let i = (1..=self.rank())
                .find(|&i| self.is_left_descent(&w, i))
                .expect("nonidentity element has a left descent");
            w = self.left_mul_simple(i, &w);
            lw -= 1;
            let sy = self.left_mul_simple(i, &y);
            let lsy = self.length(&sy);
            if lsy < ly {
                y = sy;
                ly = lsy;
            }
        }
    }

    /// `y < w` in the Bruhat order.
    pub fn bruhat_lt(&self, y: &WeylElt, w: &WeylElt) -> Result<bool> {
        Ok(y != w && self.bruhat_leq(y, w)?)
    }

    /// Elements of length `ℓ(x) - 1` obtained by deleting one letter from
    /// the canonical reduced word of `x`.
    pub fn lower_covers(&self, x: &WeylElt) -> Vec<WeylElt> {
        let word = self.reduced_word(x);
        let l = word.len();
        let mut out: Vec<WeylElt> = Vec::new();
        for k in 0..l {
            let mut letters = word.0.clone();
            letters.remove(k);
            let u = self.product(&letters).expect("letters in range");
            if self.length(&u) + 1 == l && !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }

    /// `W^{<= w}`, sorted by length then canonical reduced word.
    pub fn lower_interval(&self, w: &WeylElt) -> Vec<WeylElt> {
        let mut seen: HashSet<WeylElt> = HashSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for u in self.lower_covers(&x) {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        self.sorted(seen)
    }

    /// Sorts by `(length, canonical reduced word)`.
    pub fn sorted(&self, elts: impl IntoIterator<Item = WeylElt>) -> Vec<WeylElt> {
        let mut keyed: Vec<(usize, ReducedWord, WeylElt)> = elts
            .into_iter()
            .map(|e| {
                let word = self.reduced_word(&e);
                (word.len(), word, e)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        keyed.into_iter().map(|(_, _, e)| e).collect()
    }

    /// All group elements; refuses groups above [`FULL_ENUMERATION_LIMIT`].
    pub fn elements(&self) -> Result<Vec<WeylElt>> {
        let order = self.lie_type().weyl_order();
        if order > FULL_ENUMERATION_LIMIT as u128 {
            return Err(Error::TooLarge {
                order,
                limit: FULL_ENUMERATION_LIMIT,
            });
        }
        let mut seen: HashSet<WeylElt> = HashSet::new();
        seen.insert(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for i in 1..=self.rank() {
                let y = self.right_mul_simple(&x, i);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(self.sorted(seen))
    }

    /// Letters of any reduced word of `w`.
    pub fn support(&self, w: &WeylElt) -> BTreeSet<usize> {
        self.reduced_word(w).0.into_iter().collect()
    }

    /// `{i : w(ω_i) != ω_i}`; equals [`support`](Self::support).
    pub fn moved_fundamental_weights(&self, w: &WeylElt) -> BTreeSet<usize> {
        let n = self.rank();
        let m = self.weight_matrix(w);
        (0..n)
            .filter(|&j| (0..n).any(|i| m[i * n + j] != i64::from(i == j)))
            .map(|j| j + 1)
            .collect()
    }

    /// Order `m_ij` of `s_i s_j`, read off `c_ij c_ji`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let c = self.rs.cartan();
        match c[i - 1][j - 1] * c[j - 1][i - 1] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => unreachable!("finite type Cartan product {p}"),
        }
    }

    /// All reduced words of `w` by braid-move closure from the canonical
    /// word, capped at [`REDUCED_WORD_CAP`]; sorted lexicographically.
    pub fn reduced_words(&self, w: &WeylElt) -> Vec<ReducedWord> {
        let start = self.reduced_word(w).0;
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        'bfs: while let Some(word) = queue.pop_front() {
            for k in 0..word.len() {
                let (i, j) = (word[k], word.get(k + 1).copied().unwrap_or(0));
                if j == 0 || i == j {
                    continue;
                }
                let m = self.braid_order(i, j);
                if k + m > word.len() {
                    continue;
                }
                let matches = (0..m).all(|t| word[k + t] == if t % 2 == 0 { i } else { j });
                if !matches {
                    continue;
                }
                let mut next = word.clone();
                for t in 0..m {
                    next[k + t] = if t % 2 == 0 { j } else { i };
                }
                if seen.insert(next.clone()) {
                    if seen.len() >= REDUCED_WORD_CAP {
                        break 'bfs;
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut words: Vec<ReducedWord> = seen.into_iter().map(ReducedWord).collect();
        words.sort();
        words
    }

    /// Label map from elements to their canonical reduced words.
    pub fn labels<'a>(&self, elts: impl IntoIterator<Item = &'a WeylElt>) -> HashMap<WeylElt, ReducedWord> {
        elts.into_iter()
            .map(|e| (e.clone(), self.reduced_word(e)))
            .collect()
    }
}
