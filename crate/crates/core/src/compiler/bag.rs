use crate::logic::{Circuit, GateId, GateKind};

/// Whether value `c` of an input is strong for a gate of kind `kind`.
pub fn is_strong(kind: &GateKind, c: bool) -> bool {
    match kind {
        GateKind::And => !c,
        GateKind::Or => c,
        GateKind::Not => true,
        GateKind::Var(_) => false,
    }
}

/// The value a strong input value `c` forces on its gate.
fn forced(kind: &GateKind, c: bool) -> bool {
    match kind {
        GateKind::Not => !c,
        _ => c,
    }
}

/// Almost-evaluations of one bag as bitmasks over its gates in ascending id
/// order, with their unjustified sets.
#[derive(Clone, Debug)]
pub struct BagTable {
    pub gates: Vec<GateId>,
    /// `unf[ν]` is `Some(UNF(ν))` when ν respects strong values.
    pub unf: Vec<Option<u32>>,
}

impl BagTable {
    pub fn new(c: &Circuit, bag: &[GateId]) -> Self {
        let m = bag.len();
        let kinds: Vec<&GateKind> = bag.iter().map(|&g| &c.gate(g).kind).collect();
        let ins: Vec<Vec<usize>> = bag
            .iter()
            .map(|&g| {
                c.gate(g)
                    .inputs
                    .iter()
                    .filter_map(|i| bag.binary_search(i).ok())
                    .collect()
            })
            .collect();
        let unf = (0..1u32 << m)
            .map(|nu| {
                let bit = |p: usize| (nu >> p) & 1 == 1;
                let mut unf = 0u32;
                for i in 0..m {
                    let k = kinds[i];
                    let mut justified = false;
                    for &j in &ins[i] {
                        if is_strong(k, bit(j)) {
                            if bit(i) != forced(k, bit(j)) {
                                return None;
                            }
                            justified = true;
                        }
                    }
                    if is_strong(k, bit(i)) && !justified {
                        unf |= 1 << i;
                    }
                }
                Some(unf)
            })
            .collect();
        BagTable {
            gates: bag.to_vec(),
            unf,
        }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// All `(ν, S)` with S ⊆ UNF(ν), ν first then S, both ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.unf
            .iter()
            .enumerate()
            .filter_map(|(nu, u)| u.map(|u| (nu as u32, u)))
            .flat_map(|(nu, u)| submasks(u).map(move |s| (nu, s)))
    }

    /// Number of candidate ∨-gates: Σ 2^{|UNF(ν)|}.
    pub fn slot_count(&self) -> usize {
        self.unf
            .iter()
            .flatten()
            .map(|u| 1usize << u.count_ones())
            .sum()
    }

    /// Position of each ν's first pair in [`BagTable::pairs`] order.
    pub fn offsets(&self) -> Vec<u32> {
        let mut acc = 0u32;
        self.unf
            .iter()
            .map(|u| {
                let o = acc;
                if let Some(u) = u {
                    acc += 1 << u.count_ones();
                }
                o
            })
            .collect()
    }

    pub fn mask_of(&self, gates: &[GateId]) -> u32 {
        gates
            .iter()
            .filter_map(|g| self.gates.binary_search(g).ok())
            .fold(0, |m, p| m | 1 << p)
    }
}

/// Submasks of `u` in ascending numeric order.
pub fn submasks(u: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == u {
            None
        } else {
            Some(((s | !u).wrapping_add(1)) & u)
        };
        Some(s)
    })
}

/// Packs the bits of `s` selected by `mask` into the low bits.
pub fn compress(s: u32, mask: u32) -> u32 {
    let mut out = 0u32;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros();
        out |= ((s >> p) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}
