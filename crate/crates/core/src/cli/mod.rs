//! The `qschubert` command line front end.

pub mod config;
pub mod format;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cauchon::{cauchon_diagrams_with, qyw_lattice, qyw_lattice_from_betas};
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;
use crate::qtorus::build_torus;
use crate::rootsys::{LieType, RootSystem};
use crate::strata::{
    catenarity_report, n_yw, qyw_data, sandwich, stratification_report, stratum_dimension, stratum_report,
    uniparameter_dimension, StratumReport,
};
use crate::twist::{torsion_free_check, Bicharacter, ParamSpace, RelationsLattice};
use crate::weyl::{ReducedWord, WeylElt, WeylGroup};

use config::CocycleConfig;

#[derive(Debug, Parser)]
#[command(name = "qschubert", version, about = "Torus-invariant primes and their strata in quantum Schubert cell algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan matrix, symmetrizers and positive roots of a type.
    Roots(RootsArgs),
    /// Length, reduced word, support and the lower Bruhat interval of w.
    Weyl(RunArgs),
    /// Cauchon diagram, Q_{y,w} and n_{y,w} for each y <= w.
    Cauchon(RunArgs),
    /// Stratum dimension, height and GK-codimension for each y <= w.
    Strata(RunArgs),
    /// Commutation matrix and center rank of the quantum torus for each y <= w.
    Torus(RunArgs),
    /// Run the invariant suite for w; exits with status 1 if any check fails.
    Check(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
    Dot,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    /// Lie type such as A2, B3, G2.
    #[arg(long = "type")]
    pub lie_type: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Lie type such as A2, B3, G2; may come from --cocycle instead.
    #[arg(long = "type")]
    pub lie_type: Option<String>,
    /// Reduced word for w, e.g. "1 2 1", or "w0".
    #[arg(long, conflicts_with = "w0")]
    pub word: Option<String>,
    /// Use the longest element.
    #[arg(long)]
    pub w0: bool,
    /// Cocycle configuration (TOML); the default is the trivial twist.
    #[arg(long)]
    pub cocycle: Option<PathBuf>,
    /// Restrict to a single y, given as a reduced word ("e" for the identity).
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for per-y computations.
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Everything a subcommand needs, after validation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: WeylGroup,
    pub word: ReducedWord,
    pub w: WeylElt,
    pub params: ParamSpace,
    pub r: Bicharacter,
    pub rel: RelationsLattice,
    pub y: Option<WeylElt>,
    pub format: Format,
}

/// Rendered output and whether the run succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, success: true }
    }
}

fn header(kind: &str) -> String {
    format!("# qschubert {kind} v{}\n", env!("CARGO_PKG_VERSION"))
}

impl RunConfig {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let (group, cfg_word, params, r, rel) = match &args.cocycle {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let res = CocycleConfig::parse(&text)?.resolve_with_source(Some(&text))?;
                if let Some(t) = &args.lie_type {
                    let t: LieType = t.parse()?;
                    if t != res.group.lie_type() {
                        return Err(Error::MixedRootSystems(t.to_string(), res.group.lie_type().to_string()));
                    }
                }
                (res.group, Some(res.word), res.params, Some(res.r), res.rel)
            }
            None => {
                let t = args
                    .lie_type
                    .as_deref()
                    .ok_or_else(|| Error::parse(1, "type", "--type is required without --cocycle"))?;
                (WeylGroup::of_type(t)?, None, ParamSpace::generic(), None, RelationsLattice::generic(1))
            }
        };
        let word = match (args.w0, args.word.as_deref(), cfg_word) {
            (true, _, _) | (false, Some("w0"), _) => group.reduced_word(&group.longest_element()),
            (false, Some(s), _) => group.parse_word(s)?,
            (false, None, Some(wd)) => wd,
            (false, None, None) => return Err(Error::parse(1, "word", "give --word or --w0")),
        };
        let w = group.element_of(&word);
        let r = match r {
            Some(r) => {
                if let Some(i) = group.support(&w).into_iter().find(|i| !r.support().contains(i)) {
                    return Err(Error::InvalidBicharacter(format!("cocycle table does not cover α{i} in S(w)")));
                }
                r
            }
            None => Bicharacter::trivial(group.rank(), &group.support(&w), 1),
        };
        let y = match &args.y {
            Some(s) => {
                let yw = group.parse_word(s)?;
                let y = group.element_of(&yw);
                if !group.bruhat_leq(&y, &w)? {
                    return Err(Error::NotBelow {
                        y: yw.to_string(),
                        w: word.to_string(),
                    });
                }
                Some(y)
            }
            None => None,
        };
        Ok(RunConfig {
            group,
            word,
            w,
            params,
            r,
            rel,
            y,
            format: args.format,
        })
    }

    /// The `y` under consideration: the filter, or all of `W^{<= w}`.
    fn ys(&self) -> Vec<WeylElt> {
        match &self.y {
            Some(y) => vec![y.clone()],
            None => self.group.lower_interval(&self.w),
        }
    }

    fn context(&self) -> Vec<(&'static str, String)> {
        vec![
            ("type", self.group.lie_type().to_string()),
            ("word", self.word.to_string()),
            ("params", self.params.names().join(",")),
        ]
    }

    fn no_dot(&self, cmd: &str) -> Result<()> {
        if self.format == Format::Dot {
            return Err(Error::parse(1, "format", format!("dot output is only available for `strata`, not `{cmd}`")));
        }
        Ok(())
    }
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>, sep: &str) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn matrix_rows(m: &IntMatrix) -> String {
    join((0..m.rows()).map(|i| join(m.row(i), ",")), ";")
}

pub fn roots(args: &RootsArgs) -> Result<Output> {
    let rs = RootSystem::parse(&args.lie_type)?;
    let mut out = String::new();
    match args.format {
        Format::Dot => return Err(Error::parse(1, "format", "dot output is only available for `strata`, not `roots`")),
        Format::Machine => {
            out.push_str(&header("roots"));
            let _ = writeln!(out, "# type={}", rs.lie_type());
            let _ = writeln!(out, "symmetrizers\t{}", join(rs.symmetrizers(), " "));
            for row in rs.cartan() {
                let _ = writeln!(out, "cartan\t{}", join(row, " "));
            }
            for a in rs.positive_roots() {
                let _ = writeln!(out, "root\t{}\t{}", join(&a.0, ","), a.0.iter().sum::<i64>());
            }
        }
        Format::Table => {
            let _ = writeln!(out, "type {}  rank {}  |W| = {}", rs.lie_type(), rs.rank(), rs.lie_type().weyl_order());
            let _ = writeln!(out, "symmetrizers  {}", join(rs.symmetrizers(), " "));
            out.push_str("cartan matrix\n");
            let cells: Vec<Vec<String>> = rs.cartan().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
            for line in format::align(&cells).lines() {
                let _ = writeln!(out, "  {line}");
            }
            let _ = writeln!(out, "positive roots ({})", rs.positive_roots().len());
            let mut rows = vec![vec!["height".to_string(), "root".into(), "<a,a>".into()]];
            for a in rs.positive_roots() {
                rows.push(vec![a.0.iter().sum::<i64>().to_string(), a.to_string(), rs.form(a, a).to_string()]);
            }
            out.push_str(&format::align(&rows));
        }
    }
    Ok(Output::ok(out))
}

pub fn weyl(cfg: &RunConfig) -> Result<Output> {
    cfg.no_dot("weyl")?;
    let g = &cfg.group;
    let support = g.support(&cfg.w);
    let ys = cfg.ys();
    let mut out = String::new();
    match cfg.format {
        Format::Machine => {
            out.push_str(&header("weyl"));
            let _ = writeln!(out, "# type={}\tword={}", g.lie_type(), cfg.word);
            let _ = writeln!(out, "length\t{}", cfg.word.len());
            let _ = writeln!(out, "support\t{}", join(&support, ","));
            for y in &ys {
                let _ = writeln!(out, "below\t{}\t{}", g.reduced_word(y), g.length(y));
            }
        }
        _ => {
            let _ = writeln!(out, "w = ({})  length {}  S(w) = {{{}}}", cfg.word, cfg.word.len(), join(&support, ","));
            let _ = writeln!(out, "elements below w: {}", ys.len());
            let mut rows = vec![vec!["y".to_string(), "length".into()]];
            rows.extend(ys.iter().map(|y| vec![g.reduced_word(y).to_string(), g.length(y).to_string()]));
            out.push_str(&format::align(&rows));
        }
    }
    Ok(Output::ok(out))
}

pub fn cauchon(cfg: &RunConfig) -> Result<Output> {
    cfg.no_dot("cauchon")?;
    let g = &cfg.group;
    let mut rows = vec![vec!["y".to_string(), "diagram".into(), "rank".into(), "n_yw".into(), "Q_yw basis".into()]];
    for y in cfg.ys() {
        let (d, _) = qyw_data(g, &cfg.w, &y)?;
        let q = qyw_lattice(g, &d)?;
        rows.push(vec![
            g.reduced_word(&y).to_string(),
            d.to_string(),
            q.rank().to_string(),
            n_yw(g, &cfg.w, &y)?.to_string(),
            matrix_rows(q.basis()),
        ]);
    }
    let mut out = String::new();
    if cfg.format == Format::Machine {
        out.push_str(&header("cauchon"));
        let _ = writeln!(out, "# {}", join(cfg.context().iter().map(|(k, v)| format!("{k}={v}")), "\t"));
        for row in rows {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
    } else {
        let _ = writeln!(out, "w = ({}) in {}", cfg.word, g.lie_type());
        out.push_str(&format::align(&rows));
    }
    Ok(Output::ok(out))
}

pub fn strata(cfg: &RunConfig) -> Result<Output> {
    let g = &cfg.group;
    let reports: Vec<StratumReport> = match &cfg.y {
        Some(y) => vec![stratum_report(g, &cfg.w, y, &cfg.r, &cfg.rel)?],
        None => stratification_report(g, &cfg.w, &cfg.r, &cfg.rel)?,
    };
    let text = match cfg.format {
        Format::Machine => format::machine(&cfg.context(), &reports),
        Format::Dot => format::dot(g, &reports),
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "w = ({}) in {}  length {}", cfg.word, g.lie_type(), cfg.word.len());
            out.push_str(&format::table(&reports));
            out
        }
    };
    Ok(Output::ok(text))
}

pub fn torus(cfg: &RunConfig) -> Result<Output> {
    cfg.no_dot("torus")?;
    let g = &cfg.group;
    let mut out = String::new();
    let machine = cfg.format == Format::Machine;
    if machine {
        out.push_str(&header("torus"));
        let _ = writeln!(out, "# {}", join(cfg.context().iter().map(|(k, v)| format!("{k}={v}")), "\t"));
    }
    for y in cfg.ys() {
        let (d, _) = qyw_data(g, &cfg.w, &y)?;
        let t = build_torus(g, &d, &cfg.r)?;
        let center = t.center_lattice(&cfg.rel)?;
        if machine {
            let comm = join(t.comm_matrix().iter().map(|row| join(row.iter().map(|x| join(&x.0, ",")), " ")), ";");
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                g.reduced_word(&y),
                d,
                join(t.positions(), ","),
                center.rank(),
                comm
            );
        } else {
            let _ = writeln!(
                out,
                "y = {}  {}  generators at {{{}}}  center rank {}",
                g.reduced_word(&y),
                d,
                join(t.positions(), ","),
                center.rank()
            );
            let rows: Vec<Vec<String>> = t
                .comm_matrix()
                .iter()
                .map(|row| row.iter().map(|x| cfg.params.render(x)).collect())
                .collect();
            for line in format::align(&rows).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    Ok(Output::ok(out))
}

/// Outcome of one invariant over all `y`.
struct CheckLine {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
    informational: bool,
}

impl CheckLine {
    fn new(name: &'static str) -> Self {
        CheckLine {
            name,
            checked: 0,
            failure: None,
            informational: false,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }
}

pub fn check(cfg: &RunConfig) -> Result<Output> {
    cfg.no_dot("check")?;
    let g = &cfg.group;
    let w = &cfg.w;
    let wname = cfg.word.to_string();
    let trivial = Bicharacter::trivial(g.rank(), &g.support(w), 1);
    let generic = RelationsLattice::generic(1);
    let witness = |y: &WeylElt, detail: String| format!("y=({}) w=({wname}): {detail}", g.reduced_word(y));

    let mut unique = CheckLine::new("cauchon-uniqueness");
    let mut generators = CheckLine::new("qyw-generators-agree");
    let mut formula = CheckLine::new("formula-agreement");
    let mut torus_untwisted = CheckLine::new("torus-center-untwisted");
    let mut sandwich_line = CheckLine::new("sandwich-rank");
    let mut tauvel = CheckLine::new("tauvel-height");
    let mut closure = CheckLine::new("closure");
    let mut torus_twisted = CheckLine::new("torus-center-twisted");
    torus_twisted.informational = true;

    let ys = cfg.ys();
    let all = g.lower_interval(w);
    for y in &ys {
        let found = cauchon_diagrams_with(g, &cfg.word, y)?;
        unique.record(found.len() == 1, || witness(y, format!("{} diagrams", found.len())));
        let Some(d) = found.into_iter().next() else { continue };
        let (a, b) = (qyw_lattice(g, &d)?, qyw_lattice_from_betas(g, &d)?);
        generators.record(a == b, || witness(y, format!("{} vs {}", a.basis(), b.basis())));

        let dim = stratum_dimension(g, w, y, &trivial, &generic)?;
        let uni = uniparameter_dimension(g, w, y)?;
        formula.record(dim == uni, || witness(y, format!("stratum dimension {dim}, dim ker(w+y) = {uni}")));

        let center = build_torus(g, &d, &trivial)?.center_lattice(&generic)?.rank();
        torus_untwisted.record(center == uni, || witness(y, format!("center rank {center}, dim ker(w+y) = {uni}")));

        let c = sandwich(g, w, y, &cfg.r, &cfg.rel)?;
        sandwich_line.record(c.a_subset_b && c.rank_a == c.rank_b, || {
            witness(y, format!("rank L = {}, rank L' = {}, L in L': {}", c.rank_a, c.rank_b, c.a_subset_b))
        });

        let rep = stratum_report(g, w, y, &cfg.r, &cfg.rel)?;
        tauvel.record(rep.height + rep.gk_codim == cfg.word.len(), || {
            witness(y, format!("{} + {} != {}", rep.height, rep.gk_codim, cfg.word.len()))
        });
        let brute: Vec<ReducedWord> = all
            .iter()
            .filter(|z| g.bruhat_leq(z, y).unwrap_or(false))
            .map(|z| g.reduced_word(z))
            .collect();
        closure.record(rep.closure_down == brute, || witness(y, "closure list differs from W^{<=y}".into()));

        let tc = build_torus(g, &d, &cfg.r)?.center_lattice(&cfg.rel)?.rank();
        torus_twisted.record(tc == rep.dim, || witness(y, format!("center rank {tc}, stratum dimension {}", rep.dim)));
    }
    let mut caten = CheckLine::new("catenarity");
    let cr = catenarity_report(g, w, &cfg.r)?;
    caten.checked = cr.pairs_checked;
    caten.failure = cr.failures.first().map(|f| format!("w=({wname}): {f}"));

    let lines = [unique, generators, formula, torus_untwisted, sandwich_line, tauvel, closure, caten, torus_twisted];
    let success = lines.iter().all(|l| l.informational || l.failure.is_none());
    let torsion_free = torsion_free_check(g, &cfg.word, &cfg.r, &cfg.rel)?;

    let mut rows = Vec::new();
    for l in &lines {
        let status = match (&l.failure, l.informational) {
            (None, _) => "ok",
            (Some(_), true) => "note",
            (Some(_), false) => "FAIL",
        };
        rows.push(vec![
            status.to_string(),
            l.name.to_string(),
            format!("{} checked", l.checked),
            l.failure.clone().unwrap_or_default(),
        ]);
    }
    rows.push(vec![
        "info".into(),
        "completely-prime".into(),
        format!("torsion free: {torsion_free}"),
        String::new(),
    ]);
    let mut out = String::new();
    if cfg.format == Format::Machine {
        out.push_str(&header("check"));
        for row in rows {
            let _ = writeln!(out, "{}", row.join("\t").trim_end());
        }
    } else {
        let _ = writeln!(out, "w = ({}) in {}", cfg.word, g.lie_type());
        out.push_str(&format::align(&rows));
    }
    Ok(Output { text: out, success })
}

/// Runs a parsed command line and returns its rendered output.
pub fn run(cli: &Cli) -> Result<Output> {
    let dispatch = |args: &RunArgs, f: fn(&RunConfig) -> Result<Output>| -> Result<Output> {
        let cfg = RunConfig::from_args(args)?;
        match args.jobs {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?
                .install(|| f(&cfg)),
            None => f(&cfg),
        }
    };
    match &cli.command {
        Command::Roots(a) => roots(a),
        Command::Weyl(a) => dispatch(a, weyl),
        Command::Cauchon(a) => dispatch(a, cauchon),
        Command::Strata(a) => dispatch(a, strata),
        Command::Torus(a) => dispatch(a, torus),
        Command::Check(a) => dispatch(a, check),
    }
}

fn out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Roots(a) => a.out.as_ref(),
        Command::Weyl(a) | Command::Cauchon(a) | Command::Strata(a) | Command::Torus(a) | Command::Check(a) => a.out.as_ref(),
    }
}

/// Entry point for the binary: exit status 0 on success, 1 when `check`
/// finds a failing invariant, 2 on errors.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let written = match out_path(&cli) {
                Some(p) => std::fs::write(p, &output.text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if output.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Output> {
        let mut full = vec!["qschubert"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).expect("valid command line"))
    }

    #[test]
    fn strata_a1() {
        let out = run_args(&["strata", "--type", "A1", "--word", "1", "--format", "machine"]).unwrap();
        let recs = format::parse_machine(&out.text).unwrap();
        let dims: Vec<(String, usize)> = recs.iter().map(|r| (r.y_word.to_string(), r.dim)).collect();
        assert_eq!(dims, vec![("e".to_string(), 1), ("1".to_string(), 0)]);
    }

    #[test]
    fn roots_g2() {
        let out = run_args(&["roots", "--type", "G2", "--format", "machine"]).unwrap();
        assert_eq!(out.text.lines().filter(|l| l.starts_with("root\t")).count(), 6);
        assert!(run_args(&["roots", "--type", "G2", "--format", "dot"]).is_err());
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(run_args(&["strata", "--type", "A2", "--word", "1 1"]), Err(Error::NotReduced(_))));
        assert!(matches!(
            run_args(&["strata", "--type", "A2", "--word", "1 2", "--y", "2 1"]),
            Err(Error::NotBelow { .. })
        ));
        assert!(run_args(&["strata", "--type", "A2"]).is_err());
        assert!(run_args(&["strata", "--word", "1"]).is_err());
    }

    #[test]
    fn y_filter_and_w0() {
        let out = run_args(&["strata", "--type", "A2", "--w0", "--y", "1 2", "--format", "machine"]).unwrap();
        let recs = format::parse_machine(&out.text).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].dim, 1);
        let same = run_args(&["strata", "--type", "A2", "--word", "w0", "--y", "1 2", "--format", "machine"]).unwrap();
        assert_eq!(same, out);
    }

    #[test]
    fn check_passes_on_b2() {
        let out = run_args(&["check", "--type", "B2", "--w0"]).unwrap();
        assert!(out.success, "{}", out.text);
        assert!(!out.text.contains("FAIL"));
    }

    #[test]
    fn other_subcommands_render() {
        for cmd in ["weyl", "cauchon", "torus"] {
            for fmt in ["table", "machine"] {
                let out = run_args(&[cmd, "--type", "B2", "--w0", "--format", fmt]).unwrap();
                assert!(!out.text.is_empty());
            }
            assert!(run_args(&[cmd, "--type", "B2", "--w0", "--format", "dot"]).is_err());
        }
        let dot = run_args(&["strata", "--type", "A2", "--w0", "--format", "dot", "--jobs", "2"]).unwrap();
        assert!(dot.text.starts_with("digraph"));
    }
}
