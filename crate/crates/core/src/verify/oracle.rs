//! Reference computations taken straight from the definitions. None of these
//! call the routines they are used to certify.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Element};

/// `T = {w s w⁻¹ : w ∈ W, s ∈ S}`, sorted.
pub fn reflections_by_conjugation(sys: &CoxeterSystem) -> Result<Vec<Element>> {
    if !sys.is_complete() {
        return Err(Error::Incomplete);
    }
    let mut set = HashSet::new();
    for w in sys.elements() {
        let wi = sys.inverse(w)?;
        for s in sys.generators() {
            set.insert(sys.multiply(sys.multiply(w, s)?, wi)?);
        }
    }
    let mut t: Vec<Element> = set.into_iter().collect();
    t.sort_unstable();
    Ok(t)
}

/// `{t ∈ T : ℓ(wt) < ℓ(w)}` by testing every reflection.
pub fn inversions_by_definition(sys: &CoxeterSystem, reflections: &[Element], w: Element) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for &t in reflections {
        if sys.length(sys.multiply(w, t)?) < sys.length(w) {
            out.push(t);
        }
    }
    Ok(out)
}

/// The strong Bruhat order as the reflexive-transitive closure of
/// `x → xt` (`t ∈ T`, `ℓ(xt) > ℓ(x)`), stored as down-sets.
#[derive(Debug, Clone)]
pub struct BruhatOracle {
    below: Vec<FixedBitSet>,
}

impl BruhatOracle {
    pub fn new(sys: &CoxeterSystem) -> Result<Self> {
        let reflections = reflections_by_conjugation(sys)?;
        let n = sys.order();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        // ids are sorted by length, so every xt shorter than x is already done
        for x in sys.elements() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x.id());
            for &t in &reflections {
                let y = sys.multiply(x, t)?;
                if sys.length(y) < sys.length(x) {
                    set.union_with(&below[y.id()]);
                }
            }
            below.push(set);
        }
        Ok(Self { below })
    }

    /// Replaces the relation by "`ℓ(u) ≤ ℓ(w)`": a deliberately wrong oracle
    /// for negative-control runs.
    pub fn corrupted(sys: &CoxeterSystem) -> Self {
        let n = sys.order();
        let below = sys
            .elements()
            .map(|w| {
                let mut set = FixedBitSet::with_capacity(n);
                for u in sys.elements().filter(|&u| sys.length(u) <= sys.length(w)) {
                    set.insert(u.id());
                }
                set
            })
            .collect();
        Self { below }
    }

    pub fn leq(&self, u: Element, w: Element) -> bool {
        self.below[w.id()].contains(u.id())
    }

    /// Elements `≤ w`.
    pub fn down_set(&self, w: Element) -> impl Iterator<Item = usize> + '_ {
        self.below[w.id()].ones()
    }
}

/// `u ≤ w` iff some subword of the canonical word of `w` is a reduced word
/// for `u`. Exponential in `ℓ(w)`; for small groups only.
pub fn subword_leq(sys: &CoxeterSystem, u: Element, w: Element) -> Result<bool> {
    let word = sys.word(w);
    let target = sys.length(u);
    let k = word.len();
    if target > k {
        return Ok(false);
    }
    for mask in 0u64..(1u64 << k) {
        if mask.count_ones() as usize != target {
            continue;
        }
        let sub: Vec<usize> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| word[i] as usize)
            .collect();
        if sys.element_from_word(&sub)? == u {
            // the subword has ℓ(u) letters, so it is reduced
            return Ok(true);
        }
    }
    Ok(false)
}
