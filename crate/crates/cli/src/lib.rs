//! Problem files, subcommand pipelines and exit codes for the `permcode`
//! binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use permcode::construct::{
    abelian_code, decide_existence, extend_code, selfdual_code, transitive_code, AbelianAction, ConstructionReport,
    Node,
};
use permcode::group::{GSet, Perm, PermGroup};
use permcode::modrep::{homogeneous_decomposition, FGModule};
use permcode::numtheory::{factorize, gcd};
use permcode::par::Execution;
use permcode::verify::{brute_force_search, classify_hull, invariance_check, Budget, HullRelation, Target};
use permcode::{Fel, FiniteField, Subspace, SymForm};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MATH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation failed ({rule}): {detail}")]
    Validation { rule: &'static str, detail: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{error}")]
    Math { error: permcode::Error, report: Option<String> },
    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Math { error, .. } => match error {
                permcode::Error::InternalCaseError(_) | permcode::Error::RationalityFailure => EXIT_MISMATCH,
                _ => EXIT_MATH,
            },
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl From<permcode::Error> for CliError {
    fn from(error: permcode::Error) -> CliError {
        match error {
            permcode::Error::Parse { line, column, message } => CliError::Parse { line, column, message },
            error => CliError::Math { error, report: None },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Contents of a problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub p: u64,
    pub m: u32,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub extend: bool,
}

impl ProblemSpec {
    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn field(&self) -> CliResult<Arc<FiniteField>> {
        Ok(FiniteField::shared(self.p, self.m)?)
    }

    pub fn group(&self) -> CliResult<Arc<PermGroup>> {
        let gens = self
            .generators
            .iter()
            .map(|g| Perm::new(g.clone()))
            .collect::<permcode::Result<Vec<_>>>()?;
        Ok(Arc::new(PermGroup::new(self.degree, gens)?))
    }

    pub fn gset(&self) -> CliResult<GSet> {
        Ok(GSet::natural(self.group()?))
    }

    /// Canonical text form; `parse_problem(format())` gives back `self`.
    pub fn format(&self) -> String {
        let mut out = format!("q = {}^{}\nn = {}\n", self.p, self.m, self.degree);
        for g in &self.generators {
            let im: Vec<String> = g.iter().map(u32::to_string).collect();
            writeln!(out, "gen = {}", im.join(" ")).unwrap();
        }
        if self.extend {
            out.push_str("extend = true\n");
        }
        out
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize, column: usize) -> CliResult<T> {
    tok.parse()
        .map_err(|_| parse_err(line, column, format!("expected a non-negative integer, found `{tok}`")))
}

/// Reads a problem file and checks the group it describes.
///
/// `q = p^m` must come first and `n = ...` second; then `gen = ...` lines
/// in image notation and an optional `extend = true`. `#` starts a comment.
pub fn parse_problem(text: &str) -> CliResult<ProblemSpec> {
    let mut field: Option<(u64, u32)> = None;
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut extend = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let Some(eq) = content.find('=') else {
            return Err(parse_err(line, indent + 1, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let value_col = eq + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        match key {
            "q" => {
                if field.is_some() || degree.is_some() || !generators.is_empty() {
                    return Err(parse_err(line, indent + 1, "`q` must be the first entry"));
                }
                let (p, m) = match value.split_once('^') {
                    Some((p, m)) => (
                        parse_int::<u64>(p.trim(), line, value_col)?,
                        parse_int::<u32>(m.trim(), line, value_col + p.len() + 1)?,
                    ),
                    None => {
                        let q: u64 = parse_int(value, line, value_col)?;
                        let f = factorize(q).0;
                        if f.len() != 1 {
                            return Err(parse_err(line, value_col, format!("{q} is not a prime power")));
                        }
                        (f[0].0, f[0].1)
                    }
                };
                if !permcode::numtheory::is_prime(p) || m == 0 {
                    return Err(parse_err(line, value_col, format!("{p}^{m} is not a prime power")));
                }
                field = Some((p, m));
            }
            "n" => {
                if field.is_none() {
                    return Err(parse_err(line, indent + 1, "`q` must come before `n`"));
                }
                if degree.is_some() {
                    return Err(parse_err(line, indent + 1, "`n` given twice"));
                }
                degree = Some(parse_int(value, line, value_col)?);
            }
            "gen" => {
                let Some(n) = degree else {
                    return Err(parse_err(line, indent + 1, "`n` must come before generators"));
                };
                let mut images = Vec::with_capacity(n);
                let mut seen = vec![false; n];
                let mut col = value_col;
                let rest = &content[eq + 1..];
                let mut offset = eq + 1;
                for tok in rest.split_whitespace() {
                    let start = rest[offset - eq - 1..].find(tok).unwrap() + offset;
                    col = start + 1;
                    offset = start + tok.len();
                    let x: u32 = parse_int(tok, line, col)?;
                    if x as usize >= n {
                        return Err(parse_err(line, col, format!("image {x} is outside 0..{n}")));
                    }
                    if seen[x as usize] {
                        return Err(parse_err(line, col, format!("not a bijection: {x} appears twice")));
                    }
                    seen[x as usize] = true;
                    images.push(x);
                }
                if images.len() != n {
                    return Err(parse_err(
                        line,
                        col,
                        format!("expected {n} images, found {}", images.len()),
                    ));
                }
                generators.push(images);
            }
            "extend" => match value {
                "true" => extend = true,
                "false" => extend = false,
                _ => return Err(parse_err(line, value_col, "expected `true` or `false`")),
            },
            _ => return Err(parse_err(line, indent + 1, format!("unknown key `{key}`"))),
        }
    }
    let (p, m) = field.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `q = p^m`"))?;
    let degree = degree.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `n = ...`"))?;
    let spec = ProblemSpec {
        p,
        m,
        degree,
        generators,
        extend,
    };
    let g = spec.group().map_err(|e| CliError::Validation {
        rule: "generators form a permutation group",
        detail: e.to_string(),
    })?;
    let q = spec.q();
    if gcd(g.order() as u64, q) != 1 {
        return Err(CliError::Validation {
            rule: "gcd(|G|, q) = 1",
            detail: format!("|G| = {} and q = {q}", g.order()),
        });
    }
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Self-dual submodule of the permutation module.
    #[value(alias = "theorem2")]
    Selfdual,
    /// `C^⊥ = C ⊕ span(e)` for a transitive action.
    #[value(alias = "theorem3")]
    Transitive,
    /// Character-orbit code for a regular abelian p-group.
    #[value(alias = "lemma8")]
    Abelian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchTarget {
    Selfdual,
    Hull,
}

#[derive(Debug, Parser)]
#[command(name = "permcode", version, about = "Self-dual permutation codes over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args, Clone)]
pub struct Common {
    /// Problem file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Code file in matrix text format.
    #[arg(long, value_name = "PATH")]
    pub code: Option<PathBuf>,
    /// Output matrix; the report goes to `<PATH>.report`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Composition factors and existence criteria.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Build a witness code.
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Selfdual)]
        mode: Mode,
    },
    /// Self-dual code on one more point from a code with `C^⊥ = C ⊕ span(e)`.
    Extend {
        #[command(flatten)]
        common: Common,
    },
    /// Dual code under the standard form.
    Dual {
        #[command(flatten)]
        common: Common,
    },
    /// Hull relation and invariance of a code file.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive search over invariant subspaces.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SearchTarget::Selfdual)]
        mode: SearchTarget,
        /// Largest number of module vectors to enumerate.
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Matrix and report text produced by a subcommand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Artifacts {
    pub matrix: Option<String>,
    pub report: String,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_problem(c: &Common) -> CliResult<ProblemSpec> {
    let path = c.input.as_ref().ok_or_else(|| CliError::Usage("--in <PATH> is required".into()))?;
    parse_problem(&read(path)?)
}

fn field_of_order(q: u64) -> CliResult<Arc<FiniteField>> {
    let f = factorize(q).0;
    if f.len() != 1 {
        return Err(CliError::Parse {
            line: 1,
            column: 1,
            message: format!("field order {q} is not a prime power"),
        });
    }
    Ok(FiniteField::shared(f[0].0, f[0].1)?)
}

fn load_code(c: &Common) -> CliResult<Subspace> {
    let path = c.code.as_ref().ok_or_else(|| CliError::Usage("--code <PATH> is required".into()))?;
    let text = read(path)?;
    let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let q = header
        .split_whitespace()
        .find_map(|t| t.strip_prefix("q="))
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| CliError::Parse {
            line: 1,
            column: 1,
            message: "header must start with `q=<order>`".into(),
        })?;
    Ok(Subspace::from_text(&field_of_order(q)?, &text)?)
}

fn render(node: &Node) -> String {
    let mut r = ConstructionReport::new("", Vec::new(), Vec::new(), Subspace::zero(&FiniteField::shared(2, 1).unwrap(), 0));
    r.trail = vec![node.clone()];
    // reuse the indented writer through the trail section
    let text = r.to_text();
    text.lines()
        .skip_while(|l| !l.starts_with("trail"))
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| format!("{}\n", &l[2..]))
        .collect()
}

fn report_with(base: &str, extra: &[Node]) -> String {
    let mut out = base.to_string();
    for n in extra {
        out.push_str(&render(n));
    }
    out
}

/// Extends the degree-`n` action by a fixed point `n`.
fn with_fixed_point(g: &PermGroup) -> CliResult<PermGroup> {
    let n = g.degree();
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            let mut im = p.images().to_vec();
            im.push(n as u32);
            Perm::new(im)
        })
        .collect::<permcode::Result<Vec<_>>>()?;
    Ok(PermGroup::new(n + 1, gens)?)
}

fn check(s: &Subspace, group: &PermGroup, want: HullRelation) -> CliResult<Node> {
    let f = s.field();
    let n = s.ambient();
    let hull = classify_hull(s, &SymForm::standard(f, n), &vec![Fel::ONE; n])?;
    let invariant = invariance_check(s, group)?;
    if hull.relation != want || !invariant {
        return Err(CliError::Mismatch(format!(
            "expected {want}, found {} (invariant: {invariant})",
            hull.relation
        )));
    }
    Ok(hull.to_node().leaf("invariant", invariant))
}

fn analyze(c: &Common) -> CliResult<Artifacts> {
    let spec = load_problem(c)?;
    let f = spec.field()?;
    let x = spec.gset()?;
    let v = FGModule::permutation_module(&x, &f)?;
    let h = homogeneous_decomposition(&v, c.seed)?;
    let mut table = Node::new("decomposition", "").leaf("seed", c.seed).leaf("dimension", v.dim());
    for (i, cl) in h.classes.iter().enumerate() {
        table.push(
            Node::new("class", i)
                .leaf("dim", cl.sample.dim())
                .leaf("multiplicity", cl.multiplicity)
                .leaf("self_dual", cl.self_dual)
                .leaf("dual", cl.dual),
        );
    }
    let verdict = decide_existence(&x, &f, c.seed)?;
    let mut orbits = Node::new("orbits", x.orbits().len());
    for o in x.orbits() {
        orbits.push(Node::new("orbit", o.len()));
    }
    let head = Node::new("problem", "")
        .leaf("q", spec.q())
        .leaf("n", spec.degree)
        .leaf("group_order", x.group().order())
        .child(orbits);
    Ok(Artifacts {
        matrix: None,
        report: report_with("operation: analyze\n", &[head, table, verdict.to_node()]),
    })
}

fn abelian_regular(x: &GSet, f: &Arc<FiniteField>) -> CliResult<(Subspace, Node)> {
    let g = x.image_group();
    if !x.is_transitive() || g.order() != x.points() || !g.is_abelian() {
        return Err(permcode::Error::PreconditionViolated(
            "abelian mode needs an abelian group acting regularly".into(),
        )
        .into());
    }
    let r = abelian_code(&g, &AbelianAction::trivial(), f)?;
    let n = x.points();
    let rows: Vec<Vec<Fel>> = r
        .code
        .basis()
        .row_vecs()
        .iter()
        .map(|row| {
            let mut out = vec![Fel::ZERO; n];
            for (i, a) in g.elements().iter().enumerate() {
                out[a.apply(0)] = row[i];
            }
            out
        })
        .collect();
    Ok((Subspace::from_rows(f, n, &rows), r.trail))
}

fn math_with_report(e: permcode::Error, op: &str, seed: u64) -> CliError {
    let report = match &e {
        permcode::Error::Obstruction(cert) => Some(report_with(
            &format!("operation: {op}\nseeds: {seed}\nstatus: failed\n"),
            &[cert.to_node()],
        )),
        other => Some(format!("operation: {op}\nseeds: {seed}\nstatus: failed\nerror: {other}\n")),
    };
    CliError::Math { error: e, report }
}

fn construct(c: &Common, mode: Mode) -> CliResult<Artifacts> {
    let spec = load_problem(c)?;
    let f = spec.field()?;
    let x = spec.gset()?;
    let group = x.group().clone();
    let (code, report, want) = match mode {
        Mode::Selfdual => {
            let v = FGModule::permutation_module(&x, &f)?;
            let r = selfdual_code(&v, c.seed).map_err(|e| math_with_report(e, "selfdual", c.seed))?;
            (r.code, r.report.to_text(), HullRelation::SelfDual)
        }
        Mode::Transitive => {
            let r = transitive_code(&x, &f, c.seed).map_err(|e| math_with_report(e, "transitive", c.seed))?;
            (r.code, r.report.to_text(), HullRelation::HullPlusE)
        }
        Mode::Abelian => {
            let (code, trail) = abelian_regular(&x, &f).map_err(|e| match e {
                CliError::Math { error, .. } => math_with_report(error, "abelian", c.seed),
                e => e,
            })?;
            let r = ConstructionReport::new("abelian", vec![c.seed], vec![trail], code.clone());
            (code, r.to_text(), HullRelation::HullPlusE)
        }
    };
    let verified = check(&code, &group, want)?;
    if spec.extend && want == HullRelation::HullPlusE {
        let ext = extend_code(&code, c.seed).map_err(|e| math_with_report(e, "extend", c.seed))?;
        let ext_check = check(&ext.code, &with_fixed_point(&group)?, HullRelation::SelfDual)?;
        let text = report_with(&(report + &ext.report.to_text()), &[verified, ext_check]);
        return Ok(Artifacts {
            matrix: Some(ext.code.to_text()),
            report: text,
        });
    }
    Ok(Artifacts {
        matrix: Some(code.to_text()),
        report: report_with(&report, &[verified]),
    })
}

fn extend(c: &Common) -> CliResult<Artifacts> {
    let (code, group) = match (&c.code, &c.input) {
        (Some(_), input) => {
            let code = load_code(c)?;
            let group = match input {
                Some(_) => Some(load_problem(c)?.group()?),
                None => None,
            };
            (code, group)
        }
        (None, Some(_)) => {
            let spec = load_problem(c)?;
            let x = spec.gset()?;
            let r = transitive_code(&x, &spec.field()?, c.seed).map_err(|e| math_with_report(e, "transitive", c.seed))?;
            (r.code, Some(x.group().clone()))
        }
        (None, None) => return Err(CliError::Usage("extend needs --code or --in".into())),
    };
    let ext = extend_code(&code, c.seed).map_err(|e| math_with_report(e, "extend", c.seed))?;
    let n = ext.code.ambient();
    let group = match group {
        Some(g) => with_fixed_point(&g)?,
        None => PermGroup::trivial(n),
    };
    let verified = check(&ext.code, &group, HullRelation::SelfDual)?;
    Ok(Artifacts {
        matrix: Some(ext.code.to_text()),
        report: report_with(&ext.report.to_text(), &[verified]),
    })
}

fn dual(c: &Common) -> CliResult<Artifacts> {
    let code = load_code(c)?;
    let gens: Vec<permcode::Mat> = match &c.input {
        Some(_) => {
            let g = load_problem(c)?.group()?;
            g.generators()
                .iter()
                .map(|p| permcode::Mat::permutation(code.field(), p.images()))
                .collect()
        }
        None => Vec::new(),
    };
    let form = SymForm::standard(code.field(), code.ambient());
    let d = permcode::verify::dual_code(&code, &form, &gens)?;
    let node = Node::new("dual", "")
        .leaf("length", code.ambient())
        .leaf("dimension", code.dim())
        .leaf("dual_dimension", d.dim());
    Ok(Artifacts {
        matrix: Some(d.to_text()),
        report: report_with("operation: dual\n", &[node]),
    })
}

fn verify(c: &Common) -> CliResult<Artifacts> {
    let code = load_code(c)?;
    let n = code.ambient();
    let hull = classify_hull(&code, &SymForm::standard(code.field(), n), &vec![Fel::ONE; n])?;
    let mut node = hull.to_node();
    let mut pass = matches!(hull.relation, HullRelation::SelfDual | HullRelation::HullPlusE);
    if c.input.is_some() {
        let spec = load_problem(c)?;
        let g = spec.group()?;
        let g = if g.degree() + 1 == n { Arc::new(with_fixed_point(&g)?) } else { g };
        let inv = invariance_check(&code, &g)?;
        node.push(Node::new("invariant", inv));
        pass &= inv;
    }
    node.push(Node::new("pass", pass));
    let report = report_with("operation: verify\n", &[node]);
    if pass {
        Ok(Artifacts { matrix: None, report })
    } else {
        Err(CliError::Math {
            error: permcode::Error::VerificationFailed(format!("relation {}", hull.relation)),
            report: Some(report),
        })
    }
}

fn search(c: &Common, target: SearchTarget, budget: Option<u64>) -> CliResult<Artifacts> {
    let spec = load_problem(c)?;
    let f = spec.field()?;
    let x = spec.gset()?;
    let v = FGModule::permutation_module(&x, &f)?;
    let mut b = Budget::default();
    if let Some(max) = budget {
        b.max_vectors = max;
    }
    let t = match target {
        SearchTarget::Selfdual => Target::SelfDual,
        SearchTarget::Hull => Target::HullPlusE,
    };
    let out = brute_force_search(&v, t, &b, Execution::Parallel)?;
    let node = Node::new("search", "")
        .leaf("target", format!("{target:?}").to_lowercase())
        .leaf("budget", b.max_vectors)
        .leaf("cyclic_submodules", out.cyclic_submodules)
        .leaf("lattice_size", out.lattice_size)
        .leaf("found", out.witness.is_some());
    let report = report_with("operation: search\n", &[node]);
    match out.witness {
        Some(w) => Ok(Artifacts {
            matrix: Some(w.to_text()),
            report,
        }),
        None => Err(CliError::Math {
            error: permcode::Error::VerificationFailed("no invariant subspace meets the target".into()),
            report: Some(report),
        }),
    }
}

/// Runs one subcommand and returns what it produced.
pub fn execute(cmd: &Command) -> CliResult<(Artifacts, Option<PathBuf>)> {
    let (common, res) = match cmd {
        Command::Analyze { common } => (common, analyze(common)),
        Command::Construct { common, mode } => (common, construct(common, *mode)),
        Command::Extend { common } => (common, extend(common)),
        Command::Dual { common } => (common, dual(common)),
        Command::Verify { common } => (common, verify(common)),
        Command::Search { common, mode, budget } => (common, search(common, *mode, *budget)),
    };
    res.map(|a| (a, common.out.clone()))
}

fn out_of(cmd: &Command) -> Option<PathBuf> {
    match cmd {
        Command::Analyze { common }
        | Command::Construct { common, .. }
        | Command::Extend { common }
        | Command::Dual { common }
        | Command::Verify { common }
        | Command::Search { common, .. } => common.out.clone(),
    }
}

fn report_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".report");
    PathBuf::from(s)
}

fn emit(a: &Artifacts, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            if let Some(m) = &a.matrix {
                write(path, m)?;
            }
            write(&report_path(path), &a.report)?;
        }
        None => {
            if let Some(m) = &a.matrix {
                print!("{m}");
            }
            print!("{}", a.report);
        }
    }
    Ok(())
}

/// Full pipeline for a parsed command line; returns the exit code.
pub fn run(cli: &Cli) -> u8 {
    match execute(&cli.command).and_then(|(a, out)| emit(&a, out.as_deref())) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let report = match &e {
                CliError::Math { report, .. } => report.clone(),
                _ => None,
            };
            if let Some(r) = report {
                match out_of(&cli.command) {
                    Some(path) => {
                        if let Err(w) = write(&report_path(&path), &r) {
                            eprintln!("error: {w}");
                        }
                    }
                    None => eprint!("{r}"),
                }
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z7: &str = "q = 2^1\nn = 7\ngen = 1 2 3 4 5 6 0\n";

    #[test]
    fn parses_sample() {
        let s = parse_problem(Z7).unwrap();
        assert_eq!((s.p, s.m, s.degree), (2, 1, 7));
        assert_eq!(s.generators, vec![vec![1, 2, 3, 4, 5, 6, 0]]);
        assert!(!s.extend);
        assert_eq!(parse_problem(&s.format()).unwrap(), s);
        assert_eq!(s.format(), Z7);
    }

    #[test]
    fn comments_and_bare_order() {
        let s = parse_problem("# header\nq = 4   # field\n\nn = 3\ngen = 1 2 0\nextend = true\n").unwrap();
        assert_eq!((s.p, s.m), (2, 2));
        assert!(s.extend);
        assert_eq!(parse_problem(&s.format()).unwrap(), s);
    }

    #[test]
    fn rejects_non_bijection() {
        match parse_problem("q = 2^1\nn = 3\ngen = 0 0 1\n") {
            Err(CliError::Parse { line, column, message }) => {
                assert_eq!((line, column), (3, 9));
                assert!(message.contains("bijection"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_coprime() {
        match parse_problem("q = 3^1\nn = 3\ngen = 1 2 0\n") {
            Err(CliError::Validation { rule, .. }) => assert_eq!(rule, "gcd(|G|, q) = 1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        let cases = [
            ("n = 3\n", 1, 1),
            ("q = 6\nn = 3\n", 1, 5),
            ("q = 2^1\ngen = 0\n", 2, 1),
            ("q = 2^1\nn = 2\ngen = 0 5\n", 3, 9),
            ("q = 2^1\nn = 2\ngen = 0\n", 3, 7),
            ("q = 2^1\nn = x\n", 2, 5),
            ("q = 2^1\nn = 2\nfoo\n", 3, 1),
            ("q = 2^1\nn = 2\nextend = maybe\n", 3, 10),
        ];
        for (text, line, column) in cases {
            match parse_problem(text) {
                Err(CliError::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Mismatch("x".into()).exit_code(), EXIT_MISMATCH);
        let e: CliError = permcode::Error::NotIrreducible.into();
        assert_eq!(e.exit_code(), EXIT_MATH);
    }
}
