use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::cut::split_edges;
use super::embed::embedding_size;
use super::families::{gen_scov, gen_sint, scov_pairs};
use super::rect::{Rectangle, RectangleCover};
use crate::error::{Error, Result};
use crate::logic::{brute_force_models, ClauseForm, ClauseKind, Var};

/// Outcome of a cover-size argument against `2^n − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingReport {
    pub n: usize,
    pub size: usize,
    pub bound: u64,
    pub covers: bool,
    /// Fooling-set condition (SCOV) or pairwise disjointness (SINT).
    pub separated: bool,
    pub violations: Vec<String>,
}

impl FoolingReport {
    pub fn passes(&self) -> bool {
        self.covers && self.separated && self.size as u64 >= self.bound
    }
}

fn show(vars: &[(Var, bool)]) -> String {
    let ones: Vec<String> = vars
        .iter()
        .filter(|p| p.1)
        .map(|p| p.0.to_string())
        .collect();
    format!("{{{}}}", ones.join(","))
}

/// Checks that `cov` covers `SCOV_n` and that each rectangle holds at most
/// one valuation `ν ∪ ν̄` (`y_i = ¬x_i`), so the cover has at least `2^n`
/// rectangles.
pub fn fooling_check_scov(cov: &RectangleCover, n: usize) -> Result<FoolingReport> {
    if n > 20 {
        return Err(Error::Capacity {
            what: "fooling set exponent",
            got: n,
            limit: 20,
        });
    }
    let f = gen_scov(n)?;
    let cr = cov.check(&f)?;
    let pairs = scov_pairs(n);
    let mut violations = cr.problems.clone();
    for (i, r) in cov.rects.iter().enumerate() {
        let mut hits: Vec<u64> = Vec::new();
        for nu in 0..1u64 << n {
            let value = |v: Var| {
                let k = pairs.iter().position(|p| p.0 == v || p.1 == v).unwrap();
                let xk = (nu >> k) & 1 == 1;
                if pairs[k].0 == v {
                    xk
                } else {
                    !xk
                }
            };
            if r.contains(value) {
                hits.push(nu);
                if hits.len() == 2 {
                    break;
                }
            }
        }
        if let [a, b] = hits[..] {
            let val = |nu: u64| -> Vec<(Var, bool)> {
                pairs
                    .iter()
                    .enumerate()
                    .map(|(k, p)| (p.0, (nu >> k) & 1 == 1))
                    .collect()
            };
            violations.push(format!(
                "rectangle {i} holds the fooling valuations with X = {} and X = {}",
                show(&val(a)),
                show(&val(b))
            ));
        }
    }
    let separated = violations.len() == cr.problems.len();
    Ok(FoolingReport {
        n,
        size: cov.len(),
        bound: (1u64 << n) - 1,
        covers: cr.covers,
        separated,
        violations,
    })
}

/// Checks that `cov` is a disjoint cover of `SINT_n` with at least `2^n − 1`
/// rectangles.
pub fn disjoint_check_sint(cov: &RectangleCover, n: usize) -> Result<FoolingReport> {
    if n > 20 {
        return Err(Error::Capacity {
            what: "bound exponent",
            got: n,
            limit: 20,
        });
    }
    let f = gen_sint(n)?;
    let cr = cov.check(&f)?;
    Ok(FoolingReport {
        n,
        size: cov.len(),
        bound: (1u64 << n) - 1,
        covers: cr.covers,
        separated: cr.disjoint,
        violations: cr.problems,
    })
}

/// `#R ≤ (1 + α)^{−n} · #φ` with `α = 2^{−a²d}` and `n = ⌊|K′|/(a²d²)⌋`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionReport {
    pub arity: usize,
    pub degree: usize,
    pub split: usize,
    pub n: usize,
    pub alpha: BigRational,
    pub rect_count: BigUint,
    pub models: BigUint,
    /// `#φ / (1 + α)^n`.
    pub bound: BigRational,
    /// Whether the rectangle implies φ; the inequality is only checked then.
    pub implies: bool,
    pub holds: Option<bool>,
}

impl FractionReport {
    pub fn bound_f64(&self) -> f64 {
        self.bound.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Exact check of the small-fraction inequality for one rectangle of a
/// monotone CNF. `k_split` defaults to every clause split by the rectangle's
/// partition.
pub fn small_fraction_check(
    f: &ClauseForm,
    r: &Rectangle,
    k_split: Option<&[usize]>,
) -> Result<FractionReport> {
    if f.kind() != ClauseKind::Cnf {
        return Err(Error::input("the small-fraction bound is for CNFs"));
    }
    let mut part: Vec<Var> = r.x.iter().chain(&r.y).copied().collect();
    part.sort_unstable();
    if part != f.variables() {
        return Err(Error::input(
            "the rectangle partition must be a partition of the variables",
        ));
    }
    let cover = RectangleCover {
        vars: f.variables().to_vec(),
        rects: vec![r.clone()],
        disjoint: false,
    };
    let implies = cover.check(f)?.sound;
    let h = f.hypergraph();
    let (a, d) = h.arity_degree();
    let split = match k_split {
        Some(k) => k.len(),
        None => split_edges(&h, &r.x, &r.y).len(),
    };
    let n = embedding_size(split, a, d);
    let m = (a * a * d) as u32;
    let two_m = BigUint::from(2u32).pow(m);
    let alpha = BigRational::new(1.into(), two_m.clone().into());
    let models = BigUint::from(brute_force_models(f, false)?.count);
    let rect_count = BigUint::from(r.count());
    let one_plus = BigRational::one() + alpha.clone();
    let bound = BigRational::from_integer(models.clone().into()) / num_traits::pow(one_plus, n);
    // #R · (2^m + 1)^n ≤ #φ · 2^{mn}
    let holds = implies
        .then(|| &rect_count * (&two_m + 1u32).pow(n as u32) <= &models * two_m.pow(n as u32));
    Ok(FractionReport {
        arity: a,
        degree: d,
        split,
        n,
        alpha,
        rect_count,
        models,
        bound,
        implies,
        holds,
    })
}
