use std::fmt::Write as _;

use crate::compiler::width_ceiling;
use crate::logic::ClauseForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthKind {
    /// Pathwidth against complete nOBDD/uOBDD width.
    Path,
    /// Treewidth against complete SDNNF/d-SDNNF width.
    Tree,
}

impl WidthKind {
    pub fn name(self) -> &'static str {
        match self {
            WidthKind::Path => "path",
            WidthKind::Tree => "tree",
        }
    }
}

/// What is known about one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthEvidence {
    pub kind: WidthKind,
    /// Pathwidth or treewidth of the formula's hypergraph.
    pub k: usize,
    /// `k` is exact; otherwise it is a heuristic upper bound.
    pub k_exact: bool,
    /// Width of a complete representation of the formula.
    pub observed: usize,
    /// Width of the friendly decomposition the representation was compiled
    /// from, when it came from the compiler.
    pub compiled_k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    /// Observed width is below the ceiling but `k` is heuristic, so the floor
    /// does not apply.
    FloorUncertified,
    BelowFloor,
    AboveCeiling,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::FloorUncertified => "floor-uncertified",
            Verdict::BelowFloor => "below-floor",
            Verdict::AboveCeiling => "above-ceiling",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub instance: String,
    pub n_vars: usize,
    pub arity: usize,
    pub degree: usize,
    pub evidence: WidthEvidence,
    /// `2^{k/(a³d²)} − 1` (path) or `2^{k/(3a³d²)} − 1` (tree).
    pub floor: f64,
    /// Floor on the size of any (not necessarily complete) representation,
    /// dividing by the `|V| + 1` completion factor.
    pub size_floor: f64,
    /// `2^{2(k+1)}` for the compiled decomposition width.
    pub ceiling: Option<u128>,
    pub verdict: Verdict,
}

pub const CSV_HEADER: &str = "instance,n_vars,arity,degree,k,kind,floor,observed,ceiling,verdict";

/// Width floor for a monotone form of arity `a`, degree `d` and width `k`.
pub fn width_floor(kind: WidthKind, k: usize, a: usize, d: usize) -> f64 {
    let denom = (a * a * a * d * d) as f64 * if kind == WidthKind::Tree { 3.0 } else { 1.0 };
    if denom == 0.0 {
        return 0.0;
    }
    (k as f64 / denom).exp2() - 1.0
}

/// Places the observed width between the lower-bound floor and the
/// compiler's ceiling. Floors are only asserted when `k` is exact.
pub fn certify_width(instance: &str, f: &ClauseForm, ev: WidthEvidence) -> Certification {
    let (a, d) = (f.arity(), f.degree());
    let floor = width_floor(ev.kind, ev.k, a, d);
    let ceiling = ev.compiled_k.map(width_ceiling);
    let n_vars = f.variables().len();
    let verdict = if ceiling.is_some_and(|c| ev.observed as u128 > c) {
        Verdict::AboveCeiling
    } else if !ev.k_exact {
        Verdict::FloorUncertified
    } else if (ev.observed as f64) < floor - 1e-9 {
        Verdict::BelowFloor
    } else {
        Verdict::Consistent
    };
    Certification {
        instance: instance.to_string(),
        n_vars,
        arity: a,
        degree: d,
        floor,
        size_floor: floor / (n_vars + 1) as f64,
        ceiling,
        verdict,
        evidence: ev,
    }
}

impl Certification {
    pub fn to_csv_row(&self) -> String {
        let k = if self.evidence.k_exact {
            self.evidence.k.to_string()
        } else {
            format!("<={}", self.evidence.k)
        };
        format!(
            "{},{},{},{},{},{},{:.6},{},{},{}",
            self.instance,
            self.n_vars,
            self.arity,
            self.degree,
            k,
            self.evidence.kind.name(),
            self.floor,
            self.evidence.observed,
            self.ceiling.map_or("-".to_string(), |c| c.to_string()),
            self.verdict.name()
        )
    }

    /// `key: value` lines.
    pub fn to_report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "instance: {}", self.instance);
        let _ = writeln!(s, "n_vars: {}", self.n_vars);
        let _ = writeln!(s, "arity: {}", self.arity);
        let _ = writeln!(s, "degree: {}", self.degree);
        let _ = writeln!(s, "kind: {}", self.evidence.kind.name());
        let _ = writeln!(s, "k: {}", self.evidence.k);
        let _ = writeln!(s, "k_exact: {}", self.evidence.k_exact);
        let _ = writeln!(s, "floor: {:.6}", self.floor);
        let _ = writeln!(s, "size_floor: {:.6}", self.size_floor);
        let _ = writeln!(s, "observed: {}", self.evidence.observed);
        if let Some(c) = self.ceiling {
            let _ = writeln!(s, "ceiling: {c}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict.name());
        s
    }
}
