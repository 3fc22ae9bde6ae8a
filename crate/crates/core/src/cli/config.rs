//! The cocycle configuration file read by `--cocycle`.
//!
//! ```toml
//! type = "A2"
//! word = "1 2"
//! params = ["p"]
//! r_table = [
//!   [[0, 0], [-1, 1]],
//!   [[1, -1], [0, 0]],
//! ]
//! relations = [[0, 2]]
//! ```
//!
//! Rows and columns of `r_table` follow the sorted support `S(w)`; each
//! entry is an exponent vector over `(q, params...)`. A `p_table` of
//! cocycle values may be given instead, in which case `r(a, b) =
//! p(a, b) - p(b, a)`. `relations` lists exponent vectors equal to `1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::twist::{Bicharacter, ExponentScalar, ParamSpace, RelationsLattice};
use crate::weyl::{ReducedWord, WeylElt, WeylGroup};

type Table = Vec<Vec<Vec<i64>>>;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleConfig {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub word: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub r_table: Option<Table>,
    #[serde(default)]
    pub p_table: Option<Table>,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

/// A configuration checked against its root system.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub group: WeylGroup,
    pub word: ReducedWord,
    pub w: WeylElt,
    pub params: ParamSpace,
    pub r: Bicharacter,
    pub rel: RelationsLattice,
}

/// 1-based line of the first `key = ...` assignment, or 1.
fn line_of(text: &str, key: &str) -> usize {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(1, |k| k + 1)
}

impl CocycleConfig {
    /// The trivial configuration for `w`.
    pub fn trivial(group: &WeylGroup, word: &ReducedWord) -> Self {
        let s = group.support(&group.element_of(word)).len();
        CocycleConfig {
            lie_type: group.lie_type().to_string(),
            word: word.to_string(),
            params: Vec::new(),
            r_table: Some(vec![vec![vec![0]; s]; s]),
            p_table: None,
            relations: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| text[..s.start.min(text.len())].lines().count().max(1));
            let message = e.message().trim().to_string();
            let field = ["type", "word", "params", "r_table", "p_table", "relations"]
                .into_iter()
                .find(|f| message.contains(&format!("`{f}`")) || line_of(text, f) == line && line > 1)
                .unwrap_or("document");
            Error::parse(line, field, message)
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Validates against the root system and builds `r` and the relations.
    /// `text` is used only to point diagnostics at the right line.
    pub fn resolve_with_source(&self, text: Option<&str>) -> Result<Resolved> {
        let at = |field: &str, message: String| {
            Error::parse(text.map_or(1, |t| line_of(t, field)), field, message)
        };
        let group = WeylGroup::of_type(&self.lie_type).map_err(|e| at("type", e.to_string()))?;
        let word = group.parse_word(&self.word).map_err(|e| at("word", e.to_string()))?;
        let w = group.element_of(&word);
        let params = ParamSpace::new(&self.params).map_err(|e| at("params", e.to_string()))?;
        let m = params.len();
        let support: BTreeSet<usize> = group.support(&w);
        let s = support.len();
        let to_table = |field: &str, t: &Table| -> Result<Vec<Vec<ExponentScalar>>> {
            if t.len() != s || t.iter().any(|row| row.len() != s) {
                return Err(at(field, format!("expected a {s}x{s} table over S(w) = {support:?}")));
            }
            t.iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            if v.len() != m {
                                Err(at(field, format!("entry {v:?} should have {m} exponents (q, params...)")))
                            } else {
                                Ok(ExponentScalar(v.clone()))
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let r = match (&self.r_table, &self.p_table) {
            (Some(_), Some(_)) => return Err(at("p_table", "give r_table or p_table, not both".into())),
            (Some(t), None) => Bicharacter::from_table(group.rank(), &support, m, to_table("r_table", t)?)
                .map_err(|e| at("r_table", e.to_string()))?,
            (None, Some(t)) => Bicharacter::from_cocycle(group.rank(), &support, m, &to_table("p_table", t)?)
                .map_err(|e| at("p_table", e.to_string()))?,
            (None, None) => Bicharacter::trivial(group.rank(), &support, m),
        };
        let gens: Vec<ExponentScalar> = self.relations.iter().map(|v| ExponentScalar(v.clone())).collect();
        let rel = RelationsLattice::new(m, &gens).map_err(|e| at("relations", e.to_string()))?;
        Ok(Resolved {
            group,
            word,
            w,
            params,
            r,
            rel,
        })
    }

    pub fn resolve(&self) -> Result<Resolved> {
        self.resolve_with_source(None)
    }

    /// Canonical text: fixed key order, one table row per line, no
    /// comments. Parsing this text gives back an equal configuration.
    pub fn to_canonical_string(&self) -> String {
        fn vec(v: &[i64]) -> String {
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
        fn table(out: &mut String, key: &str, t: &Table) {
            let _ = writeln!(out, "{key} = [");
            for row in t {
                let cells: Vec<String> = row.iter().map(|v| vec(v)).collect();
                let _ = writeln!(out, "  [{}],", cells.join(", "));
            }
            out.push_str("]\n");
        }
        let mut out = String::new();
        let _ = writeln!(out, "type = {:?}", self.lie_type);
        let _ = writeln!(out, "word = {:?}", self.word);
        let names: Vec<String> = self.params.iter().map(|p| format!("{p:?}")).collect();
        let _ = writeln!(out, "params = [{}]", names.join(", "));
        if let Some(t) = &self.r_table {
            table(&mut out, "r_table", t);
        }
        if let Some(t) = &self.p_table {
            table(&mut out, "p_table", t);
        }
        let rels: Vec<String> = self.relations.iter().map(|v| vec(v)).collect();
        let _ = writeln!(out, "relations = [{}]", rels.join(", "));
        out
    }
}
