//! Text renderings of stratification reports: an aligned table, a
//! tab-separated machine format with a parser, and a DOT digraph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::cauchon::{parse_positions, CauchonDiagram};
use crate::error::{Error, Result};
use crate::strata::{cover_edges, StratumReport};
use crate::weyl::{ReducedWord, WeylGroup};

pub const MACHINE_HEADER: &str = concat!("# qschubert strata v", env!("CARGO_PKG_VERSION"));
const COLUMNS: [&str; 5] = ["y", "diagram", "dim", "height", "gk_codim"];

/// One line of the machine format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineRecord {
    pub y_word: ReducedWord,
    pub diagram: BTreeSet<usize>,
    pub dim: usize,
    pub height: usize,
    pub gk_codim: usize,
}

impl From<&StratumReport> for MachineRecord {
    fn from(r: &StratumReport) -> Self {
        MachineRecord {
            y_word: r.y_word.clone(),
            diagram: r.diagram.positions().clone(),
            dim: r.dim,
            height: r.height,
            gk_codim: r.gk_codim,
        }
    }
}

fn fmt_set(d: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = d.iter().map(|j| j.to_string()).collect();
    format!("D=[{}]", parts.join(","))
}

/// Header line, a `# key=value` context line, a column line, then one
/// tab-separated record per `y`.
pub fn machine(context: &[(&str, String)], reports: &[StratumReport]) -> String {
    let mut out = String::new();
    out.push_str(MACHINE_HEADER);
    out.push('\n');
    let ctx: Vec<String> = context.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "# {}", ctx.join("\t"));
    let _ = writeln!(out, "# {}", COLUMNS.join("\t"));
    for r in reports {
        let rec = MachineRecord::from(r);
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            rec.y_word,
            fmt_set(&rec.diagram),
            rec.dim,
            rec.height,
            rec.gk_codim
        );
    }
    out
}

/// Parses the records of [`machine`] output. The header line is required;
/// other comment lines are skipped.
pub fn parse_machine(text: &str) -> Result<Vec<MachineRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l == MACHINE_HEADER => {}
        Some((_, l)) => return Err(Error::parse(1, "header", format!("expected `{MACHINE_HEADER}`, got `{l}`"))),
        None => return Err(Error::parse(1, "header", "empty input")),
    }
    let mut out = Vec::new();
    for (k, line) in lines {
        let n = k + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != COLUMNS.len() {
            return Err(Error::parse(n, "record", format!("expected {} tab-separated fields, got {}", COLUMNS.len(), fields.len())));
        }
        let number = |i: usize| -> Result<usize> {
            fields[i]
                .parse()
                .map_err(|_| Error::parse(n, COLUMNS[i], format!("`{}` is not a count", fields[i])))
        };
        let y_word: ReducedWord = fields[0].parse().map_err(|e: Error| Error::parse(n, "y", e.to_string()))?;
        let diagram = parse_positions(fields[1]).map_err(|e| Error::parse(n, "diagram", e.to_string()))?;
        out.push(MachineRecord {
            y_word,
            diagram,
            dim: number(2)?,
            height: number(3)?,
            gk_codim: number(4)?,
        });
    }
    Ok(out)
}

/// Rebuilds full reports from parsed records, recomputing `y`, the
/// diagram's word and the closure lists.
pub fn reports_from_records(g: &WeylGroup, w_word: &ReducedWord, records: &[MachineRecord]) -> Result<Vec<StratumReport>> {
    records
        .iter()
        .map(|rec| {
            let y = g.element_of(&g.reduced_word_from(rec.y_word.letters().to_vec())?);
            Ok(StratumReport {
                diagram: CauchonDiagram::new(g, w_word, rec.diagram.clone())?,
                closure_down: g.lower_interval(&y).iter().map(|z| g.reduced_word(z)).collect(),
                y,
                y_word: rec.y_word.clone(),
                dim: rec.dim,
                height: rec.height,
                gk_codim: rec.gk_codim,
            })
        })
        .collect()
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 < row.len() {
                let pad = widths[c] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn table(reports: &[StratumReport]) -> String {
    let mut rows = vec![vec![
        "y".to_string(),
        "diagram".into(),
        "dim".into(),
        "height".into(),
        "gk_codim".into(),
        "below".into(),
    ]];
    for r in reports {
        rows.push(vec![
            r.y_word.to_string(),
            r.diagram.to_string(),
            r.dim.to_string(),
            r.height.to_string(),
            r.gk_codim.to_string(),
            r.closure_down.len().to_string(),
        ]);
    }
    align(&rows)
}

/// Hasse diagram of `W^{<= w}` with an edge `y' -> y` for each cover.
pub fn dot(g: &WeylGroup, reports: &[StratumReport]) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n  node [shape=box];\n");
    for (k, r) in reports.iter().enumerate() {
        let _ = writeln!(out, "  n{k} [label=\"{}\\ndim {}\"];", r.y_word, r.dim);
    }
    for (a, b) in cover_edges(g, reports) {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
