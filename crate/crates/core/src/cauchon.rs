//! β-roots of a reduced word, Cauchon diagrams, the lattices `Q_{y,w}` and
//! the ascent chain from a diagram up to `w`.
//!
//! Positions in a word of length `l` are numbered `1..=l`. For a subset `D`
//! we write `s^D_i = s_i` on positions in `D` and `e` elsewhere, so
//! `w^D = s^D_{i_1} ... s^D_{i_l}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::intlin::IntLattice;
use crate::rootsys::RootVec;
use crate::weyl::{ReducedWord, WeylElt, WeylGroup};

/// A set of positions of a fixed reduced word satisfying the Cauchon
/// condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CauchonDiagram {
    word: ReducedWord,
    positions: BTreeSet<usize>,
}

impl CauchonDiagram {
    /// Validates `positions` against `word`.
    pub fn new(g: &WeylGroup, word: &ReducedWord, positions: BTreeSet<usize>) -> Result<Self> {
        if !is_cauchon_diagram(g, word, &positions)? {
            return Err(Error::InvalidDiagram(format!(
                "{} is not a Cauchon diagram of ({word})",
                fmt_positions(&positions)
            )));
        }
        Ok(CauchonDiagram {
            word: word.clone(),
            positions,
        })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn positions(&self) -> &BTreeSet<usize> {
        &self.positions
    }

    /// `[1, l] \ D` in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.word.len())
            .filter(|j| !self.positions.contains(j))
            .collect()
    }

    /// `w^D`.
    pub fn element(&self, g: &WeylGroup) -> WeylElt {
        subword_product(g, &self.word, &self.positions, 1..=self.word.len())
    }
}

fn fmt_positions(d: &BTreeSet<usize>) -> String {
    let inner: Vec<String> = d.iter().map(|j| j.to_string()).collect();
    format!("D=[{}]", inner.join(","))
}

/// Prints as `D=[1,3]`.
impl fmt::Display for CauchonDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_positions(&self.positions))
    }
}

/// Parses `D=[1,3]` (or a bare `[1,3]`) into a position set.
pub fn parse_positions(s: &str) -> Result<BTreeSet<usize>> {
    let s = s.trim();
    let s = s.strip_prefix("D=").unwrap_or(s);
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(1, "diagram", format!("expected `[..]`, got `{s}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(1, "diagram", format!("`{t}` is not a position")))
        })
        .collect()
}

/// Product of `s^D_{i_j}` over `j` in `range`.
fn subword_product(
    g: &WeylGroup,
    word: &ReducedWord,
    d: &BTreeSet<usize>,
    range: impl Iterator<Item = usize>,
) -> WeylElt {
    let mut w = g.identity();
    for j in range {
        if d.contains(&j) {
            w = g.right_mul_simple(&w, word.letters()[j - 1]);
        }
    }
    w
}

/// `w^D_{(j)} = s^D_{i_1} ... s^D_{i_j}`.
pub fn prefix_product(g: &WeylGroup, word: &ReducedWord, d: &BTreeSet<usize>, j: usize) -> WeylElt {
    subword_product(g, word, d, 1..=j)
}

/// `w̄^D_{(j)} = s^D_{i_{j+1}} ... s^D_{i_l}`.
pub fn suffix_product(g: &WeylGroup, word: &ReducedWord, d: &BTreeSet<usize>, j: usize) -> WeylElt {
    subword_product(g, word, d, j + 1..=word.len())
}

/// `β_j = s_{i_1} ... s_{i_{j-1}}(α_{i_j})`.
pub fn beta_roots(g: &WeylGroup, word: &ReducedWord) -> Result<Vec<RootVec>> {
    g.check_reduced(word)?;
    let rs = g.root_system();
    let mut prefix = g.identity();
    let mut out = Vec::with_capacity(word.len());
    for &i in word.letters() {
        out.push(g.act_root(&prefix, &rs.simple_root(i))?);
        prefix = g.right_mul_simple(&prefix, i);
    }
    Ok(out)
}

fn check_positions(word: &ReducedWord, d: &BTreeSet<usize>) -> Result<()> {
    match d.iter().find(|&&j| j == 0 || j > word.len()) {
        Some(&j) => Err(Error::PositionOutOfRange {
            position: j,
            len: word.len(),
        }),
        None => Ok(()),
    }
}

/// The Cauchon condition: `ℓ(s_{i_j} w̄^D_{(j)}) > ℓ(w̄^D_{(j)})` for
/// `j` in `[1, l-1]`.
pub fn is_cauchon_diagram(g: &WeylGroup, word: &ReducedWord, d: &BTreeSet<usize>) -> Result<bool> {
    g.check_reduced(word)?;
    check_positions(word, d)?;
    let l = word.len();
    let mut suffix = g.identity();
    for j in (1..=l).rev() {
        let i = word.letters()[j - 1];
        // `suffix` is w̄^D_{(j)} here
        if j < l && g.is_left_descent(&suffix, i) {
            return Ok(false);
        }
        if d.contains(&j) {
            suffix = g.left_mul_simple(i, &suffix);
        }
    }
    Ok(true)
}

/// Every Cauchon diagram of `word`, found by a right-to-left search that
/// abandons a branch as soon as the condition fails.
pub fn all_cauchon_diagrams(g: &WeylGroup, word: &ReducedWord) -> Result<Vec<CauchonDiagram>> {
    g.check_reduced(word)?;
    let mut out = Vec::new();
    let mut current = BTreeSet::new();
    search(g, word, word.len(), &g.identity(), &mut current, None, &mut |d| {
        out.push(CauchonDiagram {
            word: word.clone(),
            positions: d.clone(),
        })
    });
    Ok(out)
}

/// Depth-first search over positions `j, j-1, ..., 1` with `suffix` equal to
/// `w̄^D_{(j)}`. With a target `y`, branches whose size exceeds `ℓ(y)` are
/// cut, since every suffix product of a Cauchon diagram is reduced.
fn search(
    g: &WeylGroup,
    word: &ReducedWord,
    j: usize,
    suffix: &WeylElt,
    current: &mut BTreeSet<usize>,
    target: Option<(&WeylElt, usize)>,
    emit: &mut dyn FnMut(&BTreeSet<usize>),
) {
    if j == 0 {
        if target.is_none_or(|(y, _)| suffix == y) {
            emit(current);
        }
        return;
    }
    let i = word.letters()[j - 1];
    if j < word.len() && g.is_left_descent(suffix, i) {
        return;
    }
    search(g, word, j - 1, suffix, current, target, emit);
    if target.is_none_or(|(_, ly)| current.len() < ly) {
        current.insert(j);
        let next = g.left_mul_simple(i, suffix);
        search(g, word, j - 1, &next, current, target, emit);
        current.remove(&j);
    }
}

/// All Cauchon diagrams `D` of `word` with `w^D = y` (the reference
/// enumeration; uniqueness says there is exactly one when `y <= w`).
pub fn cauchon_diagrams_with(g: &WeylGroup, word: &ReducedWord, y: &WeylElt) -> Result<Vec<CauchonDiagram>> {
    g.check_reduced(word)?;
    let ly = g.length(y);
    let mut out = Vec::new();
    let mut current = BTreeSet::new();
    search(g, word, word.len(), &g.identity(), &mut current, Some((y, ly)), &mut |d| {
        out.push(CauchonDiagram {
            word: word.clone(),
            positions: d.clone(),
        })
    });
    Ok(out)
}

/// The unique Cauchon diagram with `w^D = y`, by enumeration.
pub fn cauchon_diagram_for(g: &WeylGroup, word: &ReducedWord, y: &WeylElt) -> Result<CauchonDiagram> {
    let w = g.check_reduced(word)?;
    if !g.bruhat_leq(y, &w)? {
        return Err(Error::NotBelow {
            y: g.reduced_word(y).to_string(),
            w: word.to_string(),
        });
    }
    let mut found = cauchon_diagrams_with(g, word, y)?;
    if found.len() != 1 {
        return Err(Error::invariant(format!(
            "{} Cauchon diagrams of ({word}) give y = {}",
            found.len(),
            g.reduced_word(y)
        )));
    }
    Ok(found.pop().expect("length checked"))
}

/// Left-to-right scan: at each position the Cauchon condition forces
/// `j ∈ D` exactly when `s_{i_j}` is a left descent of what remains of `y`.
pub fn cauchon_diagram_greedy(g: &WeylGroup, word: &ReducedWord, y: &WeylElt) -> Result<CauchonDiagram> {
    let w = g.check_reduced(word)?;
    if !g.bruhat_leq(y, &w)? {
        return Err(Error::NotBelow {
            y: g.reduced_word(y).to_string(),
            w: word.to_string(),
        });
    }
    let mut u = y.clone();
    let mut d = BTreeSet::new();
    for (k, &i) in word.letters().iter().enumerate() {
        if g.is_left_descent(&u, i) {
            d.insert(k + 1);
            u = g.left_mul_simple(i, &u);
        }
    }
    if !u.is_identity() {
        return Err(Error::invariant(format!("greedy scan of ({word}) did not exhaust y")));
    }
    Ok(CauchonDiagram {
        word: word.clone(),
        positions: d,
    })
}

/// Generators `w^D_{(j-1)}(α_{i_j})` for `j ∉ D`.
pub fn qyw_generators(g: &WeylGroup, d: &CauchonDiagram) -> Vec<RootVec> {
    let rs = g.root_system();
    let mut prefix = g.identity();
    let mut out = Vec::new();
    for (k, &i) in d.word.letters().iter().enumerate() {
        if d.positions.contains(&(k + 1)) {
            prefix = g.right_mul_simple(&prefix, i);
        } else {
            out.push(g.act_root(&prefix, &rs.simple_root(i)).expect("same root system"));
        }
    }
    out
}

/// `β_j` for `j ∉ D`.
pub fn qyw_beta_generators(g: &WeylGroup, d: &CauchonDiagram) -> Result<Vec<RootVec>> {
    let betas = beta_roots(g, &d.word)?;
    Ok(d.complement().into_iter().map(|j| betas[j - 1].clone()).collect())
}

fn lattice_of(rank: usize, gens: &[RootVec]) -> IntLattice {
    let rows: Vec<&[i64]> = gens.iter().map(|v| v.0.as_slice()).collect();
    IntLattice::from_rows(rank, &rows).expect("generators have the ambient rank")
}

/// `Q_{y,w}` in simple-root coordinates, from the subexpression generators.
pub fn qyw_lattice(g: &WeylGroup, d: &CauchonDiagram) -> Result<IntLattice> {
    CauchonDiagram::new(g, &d.word, d.positions.clone())?;
    Ok(lattice_of(g.rank(), &qyw_generators(g, d)))
}

/// `Q_{y,w}` generated by the β-roots outside `D`.
pub fn qyw_lattice_from_betas(g: &WeylGroup, d: &CauchonDiagram) -> Result<IntLattice> {
    CauchonDiagram::new(g, &d.word, d.positions.clone())?;
    Ok(lattice_of(g.rank(), &qyw_beta_generators(g, d)?))
}

/// `Z β_1 + ... + Z β_l`.
pub fn beta_lattice(g: &WeylGroup, word: &ReducedWord) -> Result<IntLattice> {
    Ok(lattice_of(g.rank(), &beta_roots(g, word)?))
}

/// `y = y_0 < y_1 < ... < y_k = w` with `y_m = w^{D ∪ [1, j_m]}`, where
/// `j_1 < ... < j_k` enumerate `[1, l] \ D`. Each step is checked against
/// the weight-drop identity
/// `y_m λ = y_{m-1} λ - <w̄^D_{(j_m)} λ, α_{i_{j_m}}^∨> β_{j_m}` for every
/// fundamental weight `λ`.
pub fn ascent_chain(g: &WeylGroup, d: &CauchonDiagram) -> Result<Vec<WeylElt>> {
    let d = CauchonDiagram::new(g, &d.word, d.positions.clone())?;
    let word = &d.word;
    let n = g.rank();
    let rs = g.root_system();
    let betas = beta_roots(g, word)?;
    let mut chain = vec![d.element(g)];
    let mut dm = d.positions.clone();
    for j in d.complement() {
        dm.extend(1..=j);
        let next = subword_product(g, word, &dm, 1..=word.len());
        let prev = chain.last().expect("chain starts nonempty");
        if g.length(&next) <= g.length(prev) {
            return Err(Error::invariant(format!("ascent chain of {d} does not increase at position {j}")));
        }
        let (wm_prev, wm_next) = (g.weight_matrix(prev), g.weight_matrix(&next));
        let vm = g.weight_matrix(&suffix_product(g, word, &d.positions, j));
        let i = word.letters()[j - 1] - 1;
        let beta_w = rs.root_to_weight(&betas[j - 1]).to_integral().expect("roots are integral weights");
        for lam in 0..n {
            // column `lam` of a weight matrix is the image of ω_lam
            let coeff = vm[i * n + lam];
            let ok = (0..n).all(|k| wm_next[k * n + lam] == wm_prev[k * n + lam] - coeff * beta_w[k]);
            if !ok {
                return Err(Error::invariant(format!(
                    "weight-drop identity fails for {d} at position {j}, weight ω{}",
                    lam + 1
                )));
            }
        }
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(t: &str) -> WeylGroup {
        WeylGroup::of_type(t).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    /// Brute force over every subset of positions.
    fn oracle_diagrams(g: &WeylGroup, word: &ReducedWord, y: &WeylElt) -> Vec<BTreeSet<usize>> {
        let l = word.len();
        (0u32..1 << l)
            .map(|mask| (1..=l).filter(|j| mask >> (j - 1) & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|d| {
                // condition straight from the definition
                let ok = (1..l).all(|j| {
                    let bar = suffix_product(g, word, d, j);
                    let s = g.left_mul_simple(word.letters()[j - 1], &bar);
                    g.length(&s) > g.length(&bar)
                });
                ok && &subword_product(g, word, d, 1..=l) == y
            })
            .collect()
    }

    #[test]
    fn betas_a2_and_b2() {
        let g = grp("A2");
        let word = g.parse_word("1 2 1").unwrap();
        let b = beta_roots(&g, &word).unwrap();
        assert_eq!(b, vec![RootVec(vec![1, 0]), RootVec(vec![1, 1]), RootVec(vec![0, 1])]);
        assert_eq!(beta_roots(&g, &g.parse_word("2").unwrap()).unwrap(), vec![RootVec(vec![0, 1])]);
        assert!(beta_roots(&g, &"1 1".parse().unwrap()).is_err());

        let g = grp("B2");
        let word = g.parse_word("1 2 1 2").unwrap();
        let mut b = beta_roots(&g, &word).unwrap();
        assert_eq!(b[0], RootVec(vec![1, 0]));
        assert_eq!(b[1], RootVec(vec![1, 1]));
        assert_eq!(b[2], RootVec(vec![1, 2]));
        assert_eq!(b[3], RootVec(vec![0, 1]));
        b.sort();
        let mut pos = g.root_system().positive_roots().to_vec();
        pos.sort();
        assert_eq!(b, pos);
    }

    #[test]
    fn betas_are_the_inversion_set() {
        for t in ["A3", "B3", "G2"] {
            let g = grp(t);
            for w in g.elements().unwrap() {
                let word = g.reduced_word(&w);
                let betas = beta_roots(&g, &word).unwrap();
                let set: BTreeSet<RootVec> = betas.iter().cloned().collect();
                assert_eq!(set.len(), betas.len());
                let winv = g.inverse(&w);
                let inv: BTreeSet<RootVec> = g
                    .root_system()
                    .positive_roots()
                    .iter()
                    .filter(|a| g.act_root(&winv, a).unwrap().is_negative())
                    .cloned()
                    .collect();
                assert_eq!(set, inv);
            }
        }
    }

    #[test]
    fn cauchon_examples() {
        let g = grp("A2");
        let word = g.parse_word("1 2 1").unwrap();
        assert!(is_cauchon_diagram(&g, &word, &set(&[1, 2, 3])).unwrap());
        assert!(is_cauchon_diagram(&g, &word, &set(&[2])).unwrap());
        assert!(!is_cauchon_diagram(&g, &word, &set(&[3])).unwrap());
        assert!(is_cauchon_diagram(&g, &word, &set(&[])).unwrap());
        assert!(matches!(
            is_cauchon_diagram(&g, &word, &set(&[4])),
            Err(Error::PositionOutOfRange { .. })
        ));

        let s2 = g.simple(2).unwrap();
        assert_eq!(cauchon_diagram_for(&g, &word, &s2).unwrap().positions(), &set(&[2]));
        assert_eq!(cauchon_diagram_for(&g, &word, &g.identity()).unwrap().positions(), &set(&[]));
        let w0 = g.longest_element();
        assert_eq!(cauchon_diagram_for(&g, &word, &w0).unwrap().positions(), &set(&[1, 2, 3]));

        let short = g.parse_word("1 2").unwrap();
        let s21 = g.product(&[2, 1]).unwrap();
        assert!(matches!(cauchon_diagram_for(&g, &short, &s21), Err(Error::NotBelow { .. })));
    }

    #[test]
    fn full_diagram_is_always_cauchon() {
        for t in ["A2", "B2", "G2"] {
            let g = grp(t);
            for w in g.elements().unwrap() {
                for word in g.reduced_words(&w) {
                    let full: BTreeSet<usize> = (1..=word.len()).collect();
                    assert!(is_cauchon_diagram(&g, &word, &full).unwrap());
                }
            }
        }
    }

    #[test]
    fn uniqueness_and_greedy_match_oracle() {
        for t in ["A2", "B2", "G2", "A3"] {
            let g = grp(t);
            let w0 = g.longest_element();
            let word = g.reduced_word(&w0);
            let mut total = 0;
            for y in g.lower_interval(&w0) {
                let oracle = oracle_diagrams(&g, &word, &y);
                assert_eq!(oracle.len(), 1, "{t}");
                let found = cauchon_diagram_for(&g, &word, &y).unwrap();
                assert_eq!(found.positions(), &oracle[0]);
                assert_eq!(cauchon_diagram_greedy(&g, &word, &y).unwrap(), found);
                assert_eq!(found.element(&g), y);
                assert_eq!(found.positions().len(), g.length(&y));
                total += 1;
            }
            assert_eq!(all_cauchon_diagrams(&g, &word).unwrap().len(), total);
        }
    }

    #[test]
    fn greedy_matches_enumeration_for_every_word() {
        for t in ["B3", "A3"] {
            let g = grp(t);
            for w in g.elements().unwrap() {
                let word = g.reduced_word(&w);
                for y in g.lower_interval(&w) {
                    assert_eq!(
                        cauchon_diagram_greedy(&g, &word, &y).unwrap(),
                        cauchon_diagram_for(&g, &word, &y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn qyw_examples() {
        let g = grp("A2");
        let word = g.parse_word("1 2 1").unwrap();
        let full = CauchonDiagram::new(&g, &word, set(&[1, 2, 3])).unwrap();
        assert!(qyw_lattice(&g, &full).unwrap().is_zero());

        let d = cauchon_diagram_for(&g, &word, &g.simple(2).unwrap()).unwrap();
        assert_eq!(qyw_generators(&g, &d), vec![RootVec(vec![1, 0]), RootVec(vec![1, 1])]);
        assert_eq!(qyw_lattice(&g, &d).unwrap().rank(), 2);

        let empty = CauchonDiagram::new(&g, &word, set(&[])).unwrap();
        assert_eq!(qyw_lattice(&g, &empty).unwrap(), IntLattice::full(2));
        assert!(CauchonDiagram::new(&g, &word, set(&[3])).is_err());
    }

    #[test]
    fn both_generating_sets_agree() {
        for t in ["A3", "B3", "G2", "C3"] {
            let g = grp(t);
            let w0 = g.longest_element();
            let word = g.reduced_word(&w0);
            for d in all_cauchon_diagrams(&g, &word).unwrap() {
                assert_eq!(qyw_lattice(&g, &d).unwrap(), qyw_lattice_from_betas(&g, &d).unwrap(), "{t} {d}");
            }
        }
    }

    #[test]
    fn beta_lattice_is_support_span() {
        for t in ["A3", "B3"] {
            let g = grp(t);
            for w in g.elements().unwrap() {
                let word = g.reduced_word(&w);
                let span: Vec<RootVec> = g.support(&w).into_iter().map(|i| RootVec::simple(g.rank(), i)).collect();
                assert_eq!(beta_lattice(&g, &word).unwrap(), lattice_of(g.rank(), &span));
            }
        }
    }

    #[test]
    fn qyw_is_word_independent() {
        for t in ["A3", "B2", "G2"] {
            let g = grp(t);
            for w in g.elements().unwrap() {
                if g.length(&w) > 6 {
                    continue;
                }
                let words = g.reduced_words(&w);
                for y in g.lower_interval(&w) {
                    let reference = qyw_lattice(&g, &cauchon_diagram_for(&g, &words[0], &y).unwrap()).unwrap();
                    for word in &words[1..] {
                        let d = cauchon_diagram_for(&g, word, &y).unwrap();
                        assert_eq!(qyw_lattice(&g, &d).unwrap(), reference);
                    }
                }
            }
        }
    }

    #[test]
    fn ascent_chain_examples() {
        let g = grp("A2");
        let word = g.parse_word("1 2 1").unwrap();
        let w0 = g.longest_element();
        let full = cauchon_diagram_for(&g, &word, &w0).unwrap();
        assert_eq!(ascent_chain(&g, &full).unwrap(), vec![w0.clone()]);

        let d = cauchon_diagram_for(&g, &word, &g.identity()).unwrap();
        let chain = ascent_chain(&g, &d).unwrap();
        let expect: Vec<WeylElt> = [&[][..], &[1], &[1, 2], &[1, 2, 1]]
            .iter()
            .map(|w| g.product(w).unwrap())
            .collect();
        assert_eq!(chain, expect);

        let d = cauchon_diagram_for(&g, &word, &g.simple(2).unwrap()).unwrap();
        let chain = ascent_chain(&g, &d).unwrap();
        assert_eq!(chain.first(), Some(&g.simple(2).unwrap()));
        assert_eq!(chain.last(), Some(&w0));
        for pair in chain.windows(2) {
            assert!(g.bruhat_lt(&pair[0], &pair[1]).unwrap());
        }
    }

    #[test]
    fn ascent_chains_climb_in_bruhat_order() {
        for t in ["A3", "B3", "G2"] {
            let g = grp(t);
            let w0 = g.longest_element();
            let word = g.reduced_word(&w0);
            for d in all_cauchon_diagrams(&g, &word).unwrap() {
                let chain = ascent_chain(&g, &d).unwrap();
                assert_eq!(chain.len(), word.len() - d.positions().len() + 1);
                assert_eq!(chain.last(), Some(&w0));
                for pair in chain.windows(2) {
                    assert!(g.length(&pair[0]) < g.length(&pair[1]));
                    assert!(g.bruhat_lt(&pair[0], &pair[1]).unwrap());
                }
            }
        }
    }

    #[test]
    fn diagram_text_round_trip() {
        let g = grp("A2");
        let word = g.parse_word("1 2 1").unwrap();
        let d = cauchon_diagram_for(&g, &word, &g.simple(2).unwrap()).unwrap();
        assert_eq!(d.to_string(), "D=[2]");
        assert_eq!(parse_positions("D=[2]").unwrap(), set(&[2]));
        assert_eq!(parse_positions("D=[]").unwrap(), set(&[]));
        assert!(parse_positions("D=2").is_err());
    }
}
