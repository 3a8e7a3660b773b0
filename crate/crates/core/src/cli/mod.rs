//! The `widthkc` command line.
//!
//! Results go to stdout (JSON lines, counts, CSV rows), diagnostics to
//! stderr. Exit codes: 0 success, 1 internal contract failure, 2 parse or
//! input error, 3 capacity exceeded, 4 verification failed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::compiler::{
    compile_auto, verify_nbdd, verify_nnf, CompileOptions, Mode, Pipeline, Target,
};
use crate::decomp::pace::read_td;
use crate::decomp::{
    exact_pathwidth, exact_splitwidth, exact_treewidth, heuristic_path_decomposition,
    heuristic_tree_decomposition, SplitMode, EXACT_WIDTH_CAP, SPLITWIDTH_CAP,
};
use crate::error::{Error, Result, BRUTE_FORCE_CAP};
use crate::logic::parse::{parse_circuit, parse_dimacs, write_circuit, write_dimacs};
use crate::logic::random::{random_circuit, random_monotone, CircuitShape};
use crate::logic::{BoolFn, Circuit, ClauseForm, ClauseKind, MaybeConst, Probabilities, Var};
use crate::lowerbounds::{
    certify_width, gen_scov, gen_sint, interleaved_order, x_first_order, WidthEvidence, WidthKind,
    CSV_HEADER,
};
use crate::targets::io::{
    bdd_to_dot, nnf_to_dot, read_bdd, read_nnf, write_bdd, write_nnf, write_rho,
};
use crate::targets::{
    build_canonical_obdd, count_models, count_nbdd, enumerate_models, enumerate_nbdd,
    nfbdd_to_dnnf, nobdd_to_sdnnf, wmc, Nbdd, NnfBuilder, NnfCircuit,
};

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "widthkc",
    version,
    about = "Width-parameterized knowledge compilation"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Tree,
    Path,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Tree => Mode::Tree,
            ModeArg::Path => Mode::Path,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Nnf,
    Bdd,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// x1..xn then y1..yn.
    Xfirst,
    /// x1 y1 x2 y2 ...
    Interleaved,
    /// Ascending variable numbers.
    Natural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Scov,
    Sint,
    Cnf,
    Dnf,
    Circuit,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CompileFlags {
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// PACE `.td` decomposition of the primal graph (vertices are gate ids).
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Largest decomposition width the compiler accepts.
    #[arg(long, default_value_t = crate::compiler::DEFAULT_KCAP)]
    pub kcap: usize,
    /// Keep only gates that can reach the output.
    #[arg(long)]
    pub prune: bool,
}

impl CompileFlags {
    fn options(&self) -> CompileOptions {
        CompileOptions {
            kcap: self.kcap,
            prune_useless: self.prune,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a circuit or DIMACS form to a d-SDNNF (tree) or uOBDD (path).
    Compile {
        input: PathBuf,
        #[command(flatten)]
        flags: CompileFlags,
        /// Check the result exhaustively (up to --cap variables).
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = BRUTE_FORCE_CAP)]
        cap: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exact model count.
    Count {
        input: PathBuf,
        #[command(flatten)]
        flags: CompileFlags,
    },
    /// Weighted model count with independent variable probabilities.
    Wmc {
        input: PathBuf,
        #[command(flatten)]
        flags: CompileFlags,
        /// Probability of every variable.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// `var probability` lines overriding --p.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// One satisfying assignment per line, as its true variables.
    #[command(name = "enum")]
    Enumerate {
        input: PathBuf,
        #[command(flatten)]
        flags: CompileFlags,
    },
    /// Width measures of the input's hypergraph or primal graph.
    Analyze { input: PathBuf },
    /// Certification CSV placing observed widths between floor and ceiling.
    Lowerbound {
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "path")]
        mode: ModeArg,
        /// Variable order of the canonical OBDD to measure instead of the compiled one.
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
        #[arg(long, default_value_t = crate::compiler::DEFAULT_KCAP)]
        kcap: usize,
    },
    /// Write a generated instance as DIMACS (or circuit text) with its seed.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Size parameter: n for scov/sint, the variable count otherwise.
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        gates: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a subcommand, already carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Input(_) | Error::Io(_) | Error::EmptyEmbedding(_) => {
                EXIT_PARSE
            }
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Contract(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code. Output goes to the given writers.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match dispatch(cfg.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::from(Error::Io(e))
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

/// A source function: a circuit file or a DIMACS form.
pub enum Source {
    Circuit(Circuit),
    Form(ClauseForm),
}

impl Source {
    pub fn circuit(&self) -> Circuit {
        match self {
            Source::Circuit(c) => c.clone(),
            Source::Form(f) => f.to_circuit(),
        }
    }

    pub fn as_fn(&self) -> &dyn BoolFn {
        match self {
            Source::Circuit(c) => c,
            Source::Form(f) => f,
        }
    }
}

/// DIMACS when a `p cnf`/`p dnf` header is present, circuit text otherwise.
pub fn parse_source(text: &str) -> Result<Source> {
    let is_dimacs = text
        .lines()
        .map(str::trim)
        .any(|l| l.starts_with("p cnf") || l.starts_with("p dnf"));
    if is_dimacs {
        parse_dimacs(text).map(Source::Form)
    } else {
        parse_circuit(text).map(Source::Circuit)
    }
}

fn load_source(path: &Path) -> CliResult<Source> {
    let text = read_text(path)?;
    parse_source(&text).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn compile_source(src: &Source, flags: &CompileFlags) -> CliResult<(Circuit, Pipeline)> {
    let c = src.circuit();
    let given = match &flags.td {
        Some(p) => Some(read_td(&read_text(p)?, |v| c.gate_by_ext(v))?),
        None => None,
    };
    let p = compile_auto(&c, flags.mode.into(), given, &flags.options())?;
    Ok((c, p))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "out".to_string(), |s| s.to_string_lossy().into_owned())
}

fn constant_nnf(value: bool, vars: Vec<Var>) -> Result<NnfCircuit> {
    let mut b = NnfBuilder::new();
    let g = b.constant(value, None);
    b.finish(g, vars, None)
}

fn dispatch(
    cmd: Command,
    out: &mut dyn std::io::Write,
    err: &mut dyn std::io::Write,
) -> CliResult<()> {
    match cmd {
        Command::Compile {
            input,
            flags,
            verify,
            cap,
            out: dir,
            format,
        } => cmd_compile(&input, &flags, verify, cap, &dir, format, out, err),
        Command::Count { input, flags } => {
            let n = match load_target(&input, &flags)? {
                Loaded::Nnf(d) => count_models(&d)?,
                Loaded::Bdd(o) => count_nbdd(&o)?,
                Loaded::Const(v, vars) => {
                    if v {
                        BigUint::from(1u8) << vars.len()
                    } else {
                        BigUint::default()
                    }
                }
            };
            writeln!(out, "{n}").map_err(io_err)
        }
        Command::Wmc {
            input,
            flags,
            p,
            weights,
        } => {
            let loaded = load_target(&input, &flags)?;
            let vars = loaded.variables();
            let mut pi = Probabilities::uniform(&vars, p)?;
            if let Some(w) = weights {
                for (i, line) in read_text(&w)?.lines().enumerate() {
                    let t: Vec<&str> = line.split_whitespace().collect();
                    if t.is_empty() || t[0] == "c" {
                        continue;
                    }
                    let parsed = match t.as_slice() {
                        [v, q] => v.parse::<Var>().ok().zip(q.parse::<f64>().ok()),
                        _ => None,
                    };
                    let (v, q) =
                        parsed.ok_or_else(|| Error::parse(i + 1, "expected `var probability`"))?;
                    pi.set(v, q)?;
                }
            }
            let value = match loaded {
                Loaded::Nnf(d) => wmc(&d, &pi)?,
                Loaded::Bdd(o) => {
                    let d = if o.order().is_some() {
                        nobdd_to_sdnnf(&o)?
                    } else {
                        nfbdd_to_dnnf(&o)?
                    };
                    wmc(&d, &pi)?
                }
                Loaded::Const(v, _) => f64::from(u8::from(v)),
            };
            writeln!(out, "{}", fmt_sig15(value)).map_err(io_err)
        }
        Command::Enumerate { input, flags } => {
            let write_line = |out: &mut dyn std::io::Write, m: &[Var]| {
                let s: Vec<String> = m.iter().map(Var::to_string).collect();
                writeln!(out, "{}", s.join(" ")).map_err(io_err)
            };
            match load_target(&input, &flags)? {
                Loaded::Nnf(d) => {
                    for m in enumerate_models(&d)? {
                        write_line(out, &m)?;
                    }
                }
                Loaded::Bdd(o) => {
                    for m in enumerate_nbdd(&o)? {
                        write_line(out, &m)?;
                    }
                }
                Loaded::Const(false, _) => {}
                Loaded::Const(true, vars) => {
                    crate::error::check_cap("variable count", vars.len(), 63)?;
                    for mask in 0u64..1 << vars.len() {
                        let m: Vec<Var> = vars
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect();
                        write_line(out, &m)?;
                    }
                }
            }
            Ok(())
        }
        Command::Analyze { input } => {
            let src = load_source(&input)?;
            let report = analyze(&stem(&input), &src)?;
            writeln!(out, "{report}").map_err(io_err)
        }
        Command::Lowerbound {
            inputs,
            mode,
            order,
            kcap,
        } => {
            writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
            for input in inputs {
                let f = match load_source(&input)? {
                    Source::Form(f) => f,
                    Source::Circuit(_) => {
                        return Err(Failure {
                            code: EXIT_PARSE,
                            message: "lowerbound needs a DIMACS form".into(),
                        })
                    }
                };
                let cert = lowerbound(&stem(&input), &f, mode, order, kcap)?;
                write!(err, "{}", cert.to_report()).map_err(io_err)?;
                writeln!(out, "{}", cert.to_csv_row()).map_err(io_err)?;
            }
            Ok(())
        }
        Command::Gen {
            family,
            n,
            seed,
            clauses,
            arity,
            degree,
            gates,
            window,
            out: path,
        } => {
            let text = generate(family, n, seed, clauses, arity, degree, gates, window)?;
            match path {
                Some(p) => fs::write(&p, text).map_err(io_err),
                None => out.write_all(text.as_bytes()).map_err(io_err),
            }
        }
    }
}

/// Rounds to 15 significant digits and prints the shortest decimal form.
pub fn fmt_sig15(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    format!("{rounded}")
}

enum Loaded {
    Nnf(NnfCircuit),
    Bdd(Nbdd),
    Const(bool, Vec<Var>),
}

impl Loaded {
    fn variables(&self) -> Vec<Var> {
        match self {
            Loaded::Nnf(d) => d.variables().to_vec(),
            Loaded::Bdd(o) => o.variables().to_vec(),
            Loaded::Const(_, v) => v.clone(),
        }
    }
}

/// A compiled artifact (`.nnf` with optional `.vtree`/`.rho` sidecars, or
/// `.bdd`), or a source compiled on the fly.
fn load_target(path: &Path, flags: &CompileFlags) -> CliResult<Loaded> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let with_path = |e: Error| -> Failure {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    };
    match ext {
        "nnf" => {
            let text = read_text(path)?;
            let side = |e: &str| fs::read_to_string(path.with_extension(e)).ok();
            let (vt, rho) = (side("vtree"), side("rho"));
            Ok(Loaded::Nnf(
                read_nnf(&text, vt.as_deref(), rho.as_deref()).map_err(with_path)?,
            ))
        }
        "bdd" => Ok(Loaded::Bdd(read_bdd(&read_text(path)?).map_err(with_path)?)),
        _ => {
            let src = load_source(path)?;
            let vars = src.as_fn().variables();
            let (_, p) = compile_source(&src, flags)?;
            Ok(match p.target {
                Target::Sdnnf(MaybeConst::Value(d)) => Loaded::Nnf(d),
                Target::Obdd(MaybeConst::Value(o)) => Loaded::Bdd(o),
                Target::Sdnnf(MaybeConst::Const(v)) | Target::Obdd(MaybeConst::Const(v)) => {
                    Loaded::Const(v, vars)
                }
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compile(
    input: &Path,
    flags: &CompileFlags,
    verify: bool,
    cap: usize,
    dir: &Path,
    format: Option<Format>,
    out: &mut dyn std::io::Write,
    err: &mut dyn std::io::Write,
) -> CliResult<()> {
    let src = load_source(input)?;
    let (c, p) = compile_source(&src, flags)?;
    let name = stem(input);
    fs::create_dir_all(dir).map_err(io_err)?;
    let vars = c.variables();
    let mut written: Vec<PathBuf> = Vec::new();
    let mut put = |file: PathBuf, text: String| -> CliResult<()> {
        fs::write(&file, text).map_err(io_err)?;
        written.push(file);
        Ok(())
    };
    let mode_name;
    let verification = match &p.target {
        Target::Sdnnf(d) => {
            mode_name = "tree";
            let d_out = match d {
                MaybeConst::Value(d) => d.clone(),
                MaybeConst::Const(v) => constant_nnf(*v, vars.clone())?,
            };
            match format.unwrap_or(Format::Nnf) {
                Format::Nnf => {
                    put(dir.join(format!("{name}.nnf")), write_nnf(&d_out))?;
                    if let Some(vt) = d_out.vtree() {
                        put(dir.join(format!("{name}.vtree")), vt.to_text())?;
                    }
                    if let Some(rho) = write_rho(&d_out) {
                        put(dir.join(format!("{name}.rho")), rho)?;
                    }
                }
                Format::Dot => put(dir.join(format!("{name}.dot")), nnf_to_dot(&d_out))?,
                Format::Bdd => {
                    return Err(Error::input(
                        "tree mode produces an SDNNF; use --format nnf or dot",
                    )
                    .into())
                }
            }
            if verify && vars.len() <= cap {
                Some(verify_nnf(src.as_fn(), d)?)
            } else {
                None
            }
        }
        Target::Obdd(o) => {
            mode_name = "path";
            let o_out = match o {
                MaybeConst::Value(o) => o.clone(),
                MaybeConst::Const(v) => Nbdd::constant(*v, vars.clone(), None)?,
            };
            match format.unwrap_or(Format::Bdd) {
                Format::Bdd => put(dir.join(format!("{name}.bdd")), write_bdd(&o_out))?,
                Format::Dot => put(dir.join(format!("{name}.dot")), bdd_to_dot(&o_out))?,
                Format::Nnf => {
                    let d = nobdd_to_sdnnf(&o_out)?;
                    put(dir.join(format!("{name}.nnf")), write_nnf(&d))?;
                    if let Some(vt) = d.vtree() {
                        put(dir.join(format!("{name}.vtree")), vt.to_text())?;
                    }
                }
            }
            if verify && vars.len() <= cap {
                Some(verify_nbdd(src.as_fn(), o)?)
            } else {
                None
            }
        }
    };
    let ceiling = p.stats.ceiling();
    let mut report = json!({
        "input": name,
        "mode": mode_name,
        "vars": vars.len(),
        "gates": c.len(),
        "decomposition_width": p.decomposition_width(),
        "friendly_width": p.friendly.width(),
        "compiled_width": p.stats.compiled_width,
        "ceiling": ceiling.to_string(),
        "target_width": p.target_width(),
        "target_size": p.target_size(),
        "artifacts": written.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
    });
    let mut failed = false;
    report["verification"] = match (&verification, verify) {
        (Some(v), _) => {
            failed = !v.passed();
            let words = [
                if v.equivalent {
                    "equivalent"
                } else {
                    "not equivalent"
                },
                match (mode_name, v.deterministic) {
                    ("path", true) => "unambiguous",
                    ("path", false) => "ambiguous",
                    (_, true) => "deterministic",
                    (_, false) => "not deterministic",
                },
                if v.complete { "complete" } else { "incomplete" },
            ];
            json!({ "verdict": words.join(", "), "passed": v.passed(), "width": v.width })
        }
        (None, true) => {
            json!({ "verdict": "skipped", "reason": format!("{} variables exceed --cap {cap}", vars.len()) })
        }
        (None, false) => Value::Null,
    };
    writeln!(out, "{report}").map_err(io_err)?;
    let _ = writeln!(
        err,
        "{name}: {mode_name} mode, decomposition width {}, target width {} (ceiling {ceiling}), size {}",
        p.decomposition_width(),
        p.target_width(),
        p.target_size()
    );
    if failed {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{name}: verification failed"),
        });
    }
    Ok(())
}

/// Heuristic widths always; exact widths within the caps. Clause forms are
/// measured on their hypergraph, circuits on their primal graph.
pub fn analyze(name: &str, src: &Source) -> Result<Value> {
    let (h, kind) = match src {
        Source::Form(f) => (f.hypergraph(), "hypergraph"),
        Source::Circuit(c) => (c.primal_graph(), "primal"),
    };
    let n = h.num_vertices();
    let mut r = json!({
        "input": name,
        "graph": kind,
        "vertices": n,
        "edges": h.edges().len(),
        "tw_upper": heuristic_tree_decomposition(&h).width(),
        "pw_upper": heuristic_path_decomposition(&h).width(),
    });
    if let Source::Form(f) = src {
        r["arity"] = json!(f.arity());
        r["degree"] = json!(f.degree());
    }
    if n <= EXACT_WIDTH_CAP {
        r["tw"] = json!(exact_treewidth(&h)?);
        r["pw"] = json!(exact_pathwidth(&h)?);
    }
    if n <= SPLITWIDTH_CAP {
        r["psw"] = json!(exact_splitwidth(&h, SplitMode::Path)?.0);
        r["tsw"] = json!(exact_splitwidth(&h, SplitMode::Tree)?.0);
    }
    Ok(r)
}

/// Certifies one form: `k` is the exact width of its hypergraph when within
/// the cap (a heuristic bound otherwise); the observed width is the canonical
/// OBDD along `order` when given, else the compiled target.
pub fn lowerbound(
    name: &str,
    f: &ClauseForm,
    mode: ModeArg,
    order: Option<OrderArg>,
    kcap: usize,
) -> Result<crate::lowerbounds::Certification> {
    let h = f.hypergraph();
    let kind = if mode == ModeArg::Tree {
        WidthKind::Tree
    } else {
        WidthKind::Path
    };
    let exact = h.num_vertices() <= EXACT_WIDTH_CAP;
    let k = match (kind, exact) {
        (WidthKind::Path, true) => exact_pathwidth(&h)?,
        (WidthKind::Tree, true) => exact_treewidth(&h)?,
        (WidthKind::Path, false) => heuristic_path_decomposition(&h).width(),
        (WidthKind::Tree, false) => heuristic_tree_decomposition(&h).width(),
    };
    let opts = CompileOptions {
        kcap,
        prune_useless: false,
    };
    let cmode = if kind == WidthKind::Tree {
        Mode::Tree
    } else {
        Mode::Path
    };
    let p = compile_auto(&f.to_circuit(), cmode, None, &opts)?;
    let observed = match order {
        None => p.target_width(),
        Some(o) => {
            let vars = f.variables();
            let half = vars.len() / 2;
            let ord: Vec<Var> = match o {
                OrderArg::Natural => vars.to_vec(),
                OrderArg::Xfirst | OrderArg::Interleaved
                    if vars.len().is_multiple_of(2)
                        && vars == (1..=2 * half).collect::<Vec<_>>() =>
                {
                    if o == OrderArg::Xfirst {
                        x_first_order(half)
                    } else {
                        interleaved_order(half)
                    }
                }
                _ => {
                    return Err(Error::input(
                        "xfirst/interleaved orders need variables 1..=2n",
                    ))
                }
            };
            build_canonical_obdd(f, &ord)?.raw_width()
        }
    };
    let ev = WidthEvidence {
        kind,
        k,
        k_exact: exact,
        observed,
        compiled_k: Some(p.friendly.width()),
    };
    Ok(certify_width(name, f, ev))
}

#[allow(clippy::too_many_arguments)]
pub fn generate(
    family: Family,
    n: usize,
    seed: u64,
    clauses: usize,
    arity: usize,
    degree: usize,
    gates: usize,
    window: usize,
) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seed_line = format!("seed {seed}");
    match family {
        Family::Scov => Ok(write_dimacs(
            &gen_scov(n)?,
            &[format!("scov {n}"), seed_line],
        )),
        Family::Sint => Ok(write_dimacs(
            &gen_sint(n)?,
            &[format!("sint {n}"), seed_line],
        )),
        Family::Cnf | Family::Dnf => {
            let kind = if family == Family::Cnf {
                ClauseKind::Cnf
            } else {
                ClauseKind::Dnf
            };
            let m = if clauses == 0 { n } else { clauses };
            let f = random_monotone(&mut rng, kind, n, m, arity, degree)
                .ok_or_else(|| Error::input("no clause fits the arity and degree bounds"))?;
            let tag = format!(
                "random {} vars {n} clauses {m} arity {arity} degree {degree}",
                if kind == ClauseKind::Cnf {
                    "cnf"
                } else {
                    "dnf"
                }
            );
            Ok(write_dimacs(&f, &[tag, seed_line]))
        }
        Family::Circuit => {
            if n == 0 {
                return Err(Error::input("a circuit needs at least one variable"));
            }
            let internal = if gates == 0 { 2 * n } else { gates };
            let shape = CircuitShape {
                vars: n,
                internal,
                window: window.max(1),
                max_fanin: 3,
            };
            let c = random_circuit(&mut rng, shape);
            Ok(format!(
                "# random circuit vars {n} gates {internal} window {window}\n# {seed_line}\n{}",
                write_circuit(&c)
            ))
        }
    }
}
