use super::{compile_pathwidth, compile_treewidth, CompileOptions, CompileStats};
use crate::decomp::{
    heuristic_path_decomposition, heuristic_tree_decomposition, make_friendly, make_friendly_path,
    FriendlyDecomp, TreeDecomp,
};
use crate::error::{check_cap, Result, BRUTE_FORCE_CAP};
use crate::logic::{block_valid, equivalent, BoolFn, Circuit, MaybeConst};
use crate::targets::{reduce_unchecked, Nbdd, NnfCircuit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Tree,
    Path,
    /// Path when the heuristic path decomposition is no wider than the tree one.
    Auto,
}

#[derive(Clone, Debug)]
pub enum Target {
    Sdnnf(MaybeConst<NnfCircuit>),
    Obdd(MaybeConst<Nbdd>),
}

/// Everything one compilation run produced, stage by stage.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub mode: Mode,
    pub decomposition: TreeDecomp,
    pub friendly: FriendlyDecomp,
    pub stats: CompileStats,
    /// The extended circuit before reduction (tree mode only).
    pub extended: Option<NnfCircuit>,
    pub target: Target,
}

impl Pipeline {
    pub fn decomposition_width(&self) -> usize {
        self.decomposition.width()
    }

    /// Width of the final target (0 for constants).
    pub fn target_width(&self) -> usize {
        match &self.target {
            Target::Sdnnf(MaybeConst::Value(d)) => d.raw_width().unwrap_or(0),
            Target::Obdd(MaybeConst::Value(o)) => o.raw_width(),
            _ => 0,
        }
    }

    /// Wires or edges of the final target.
    pub fn target_size(&self) -> usize {
        match &self.target {
            Target::Sdnnf(MaybeConst::Value(d)) => d.size(),
            Target::Obdd(MaybeConst::Value(o)) => o.size(),
            _ => 0,
        }
    }
}

/// Primal graph, heuristic (or given) decomposition, friendliness, compilation
/// and reduction.
pub fn compile_auto(
    c: &Circuit,
    mode: Mode,
    given: Option<TreeDecomp>,
    opts: &CompileOptions,
) -> Result<Pipeline> {
    let h = c.primal_graph();
    let mode = match mode {
        Mode::Auto => match &given {
            Some(t) if t.is_path() => Mode::Path,
            Some(_) => Mode::Tree,
            None => {
                let pw = heuristic_path_decomposition(&h).width();
                let tw = heuristic_tree_decomposition(&h).width();
                if pw <= tw {
                    Mode::Path
                } else {
                    Mode::Tree
                }
            }
        },
        m => m,
    };
    let decomposition = match given {
        Some(t) => {
            t.validate(&h)?;
            t
        }
        None if mode == Mode::Path => heuristic_path_decomposition(&h),
        None => heuristic_tree_decomposition(&h),
    };
    match mode {
        Mode::Path => {
            let friendly = make_friendly_path(&decomposition, c.output())?;
            let (o, stats) = compile_pathwidth(c, &friendly, opts)?;
            Ok(Pipeline {
                mode,
                decomposition,
                friendly,
                stats,
                extended: None,
                target: Target::Obdd(o),
            })
        }
        _ => {
            let friendly = make_friendly(&decomposition, c.output());
            let compiled = compile_treewidth(c, &friendly, opts)?;
            let d = compiled.circuit;
            let reduced = reduce_unchecked(&d, &vec![None; d.len()], &Default::default());
            Ok(Pipeline {
                mode: Mode::Tree,
                decomposition,
                friendly,
                stats: compiled.stats,
                extended: Some(d),
                target: Target::Sdnnf(reduced),
            })
        }
    }
}

/// Exhaustive verdicts on a compiled target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub equivalent: bool,
    /// Determinism for circuits, unambiguity for diagrams.
    pub deterministic: bool,
    pub complete: bool,
    pub width: usize,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.equivalent && self.deterministic && self.complete
    }
}

fn constant_matches(f: &dyn BoolFn, value: bool) -> Result<bool> {
    let n = f.variables().len();
    check_cap("variable count", n, BRUTE_FORCE_CAP)?;
    let valid = block_valid(n);
    let want = if value { valid } else { 0 };
    Ok((0..(1u64 << n).div_ceil(64)).all(|b| f.eval_block(b * 64) & valid == want))
}

pub fn verify_nnf(source: &dyn BoolFn, d: &MaybeConst<NnfCircuit>) -> Result<Verification> {
    match d {
        MaybeConst::Const(v) => Ok(Verification {
            equivalent: constant_matches(source, *v)?,
            deterministic: true,
            complete: true,
            width: 0,
        }),
        MaybeConst::Value(d) => {
            let r = d.check_class(true)?;
            Ok(Verification {
                equivalent: equivalent(source, d)?,
                deterministic: r.deterministic == Some(true) && r.decomposable,
                complete: r.complete,
                width: r.width.unwrap_or(0),
            })
        }
    }
}

pub fn verify_nbdd(source: &dyn BoolFn, o: &MaybeConst<Nbdd>) -> Result<Verification> {
    match o {
        MaybeConst::Const(v) => Ok(Verification {
            equivalent: constant_matches(source, *v)?,
            deterministic: true,
            complete: true,
            width: 0,
        }),
        MaybeConst::Value(o) => {
            let r = o.check_class(true)?;
            Ok(Verification {
                equivalent: equivalent(source, o)?,
                deterministic: r.unambiguous == Some(true),
                complete: r.complete && r.ordered && r.free,
                width: r.width.unwrap_or(0),
            })
        }
    }
}
