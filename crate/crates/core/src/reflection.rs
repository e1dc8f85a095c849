//! Reflections and inversion sets.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::system::{CoxeterSystem, Element, NONE};

/// An element of `T`, the set of conjugates of simple generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reflection(Element);

impl Reflection {
    pub fn element(self) -> Element {
        self.0
    }
}

/// The right inversion set `N(w) = {t ∈ T : ℓ(wt) < ℓ(w)}`, stored as a bitset
/// over the reflection index of its system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionSet {
    owner: Element,
    refs: FixedBitSet,
}

impl InversionSet {
    pub fn owner(&self) -> Element {
        self.owner
    }

    pub fn len(&self) -> usize {
        self.refs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.refs.is_clear()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.refs
    }

    pub fn contains(&self, sys: &CoxeterSystem, t: Element) -> bool {
        sys.reflection_index(t).is_some_and(|i| self.refs.contains(i))
    }

    pub fn iter<'a>(&'a self, sys: &'a CoxeterSystem) -> impl Iterator<Item = Reflection> + 'a {
        self.refs.ones().map(move |i| Reflection(sys.reflections[i]))
    }
}

impl CoxeterSystem {
    /// All enumerated reflections in ShortLex order.
    pub fn reflections(&self) -> impl ExactSizeIterator<Item = Reflection> + '_ {
        self.reflections.iter().map(|&t| Reflection(t))
    }

    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    /// Position of `t` in the reflection index, if it is a reflection.
    pub fn reflection_index(&self, t: Element) -> Option<usize> {
        let p = self.reflection_pos[t.id()];
        (p != NONE).then_some(p as usize)
    }

    pub fn is_reflection(&self, w: Element) -> bool {
        self.reflection_index(w).is_some()
    }

    pub fn as_reflection(&self, w: Element) -> Option<Reflection> {
        self.is_reflection(w).then_some(Reflection(w))
    }

    /// `N(w)` from a reduced word `s₁⋯s_k`: its members are
    /// `(s_{i+1}⋯s_k)⁻¹ s_i (s_{i+1}⋯s_k)`.
    pub fn inversion_set(&self, w: Element) -> Result<InversionSet> {
        let word = self.word(w);
        let mut refs = FixedBitSet::with_capacity(self.reflections.len());
        for i in 0..word.len() {
            let mut t = self.generator(word[i] as usize)?;
            for &s in &word[i + 1..] {
                let s = s as usize;
                t = self
                    .right_mul(t, s)
                    .and_then(|ts| self.left_mul(s, ts))
                    .ok_or(Error::OutOfEnumeratedRegion)?;
            }
            let idx = self.reflection_index(t).ok_or(Error::OutOfEnumeratedRegion)?;
            refs.insert(idx);
        }
        Ok(InversionSet { owner: w, refs })
    }
}
