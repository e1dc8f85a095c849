//! The fixed-point subgroup `W_L^θ` of an involutive diagram automorphism `θ`
//! of a standard parabolic subgroup `W_L`.
//!
//! `W_L^θ` is itself a Coxeter group. Its generators are the longest elements
//! `w₀^K` of the finite parabolic subgroups `W_K`, `K` running over the
//! θ-orbits of `L`. Orbits are singletons or pairs since `θ² = id`; a pair with
//! an infinite bond contributes no generator.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::Truncation;
use crate::system::{Bond, CoxeterSystem, Element};

/// An involutive, bond-preserving permutation `θ` of a subset `L ⊆ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    subset: Vec<usize>,
    /// `image[s] = θ(s)` for `s ∈ L`, and `s` elsewhere.
    image: Vec<usize>,
    in_subset: Vec<bool>,
}

impl DiagramAutomorphism {
    /// Validates `θ` given as `(s, θ(s))` pairs; members of `L` without a pair
    /// are fixed.
    pub fn new(sys: &CoxeterSystem, subset: &[usize], map: &[(usize, usize)]) -> Result<Self> {
        let rank = sys.rank();
        let mut in_subset = vec![false; rank];
        for &s in subset {
            if s >= rank {
                return Err(Error::InvalidGenerator(s));
            }
            in_subset[s] = true;
        }
        let mut image: Vec<Option<usize>> = vec![None; rank];
        for &(s, t) in map {
            for g in [s, t] {
                if g >= rank {
                    return Err(Error::InvalidGenerator(g));
                }
                if !in_subset[g] {
                    return Err(Error::OutOfL(g));
                }
            }
            match image[s] {
                Some(prev) if prev != t => return Err(Error::NotInvolutive(s)),
                _ => image[s] = Some(t),
            }
        }
        let image: Vec<usize> = image
            .into_iter()
            .enumerate()
            .map(|(s, t)| t.unwrap_or(s))
            .collect();
        let mut subset: Vec<usize> = (0..rank).filter(|&s| in_subset[s]).collect();
        subset.dedup();
        for &s in &subset {
            if image[image[s]] != s {
                return Err(Error::NotInvolutive(s));
            }
        }
        for &s in &subset {
            for &t in &subset {
                if sys.bond(image[s], image[t]) != sys.bond(s, t) {
                    return Err(Error::BondMismatch(s.min(t), s.max(t)));
                }
            }
        }
        Ok(Self {
            subset,
            image,
            in_subset,
        })
    }

    /// `θ` given by the swapped pairs (orbits of size two).
    pub fn from_swaps(sys: &CoxeterSystem, subset: &[usize], swaps: &[(usize, usize)]) -> Result<Self> {
        let map: Vec<(usize, usize)> = swaps.iter().flat_map(|&(s, t)| [(s, t), (t, s)]).collect();
        Self::new(sys, subset, &map)
    }

    pub fn identity(sys: &CoxeterSystem, subset: &[usize]) -> Result<Self> {
        Self::new(sys, subset, &[])
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn contains(&self, s: usize) -> bool {
        self.in_subset.get(s).copied().unwrap_or(false)
    }

    pub fn image(&self, s: usize) -> usize {
        self.image[s]
    }

    pub fn is_identity(&self) -> bool {
        self.subset.iter().all(|&s| self.image[s] == s)
    }

    /// Orbits of `θ` on `L`, ordered by their smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.subset
            .iter()
            .filter(|&&s| self.image[s] >= s)
            .map(|&s| {
                if self.image[s] == s {
                    vec![s]
                } else {
                    vec![s, self.image[s]]
                }
            })
            .collect()
    }

    /// Swapped pairs `(s, θ(s))` with `s < θ(s)`.
    pub fn swaps(&self) -> Vec<(usize, usize)> {
        self.orbits()
            .into_iter()
            .filter(|o| o.len() == 2)
            .map(|o| (o[0], o[1]))
            .collect()
    }

    /// `θ(w)`, applying `θ` letterwise to the canonical word.
    pub fn apply(&self, sys: &CoxeterSystem, w: Element) -> Result<Element> {
        let word = sys
            .word(w)
            .iter()
            .map(|&s| {
                let s = s as usize;
                if self.in_subset[s] {
                    Ok(self.image[s])
                } else {
                    Err(Error::NotInWL)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        sys.element_from_word(&word)
    }

    pub fn is_fixed(&self, sys: &CoxeterSystem, w: Element) -> Result<bool> {
        Ok(self.apply(sys, w)? == w)
    }

    /// Whether every letter of `w` lies in `L`.
    pub fn in_parabolic(&self, sys: &CoxeterSystem, w: Element) -> bool {
        sys.word(w).iter().all(|&s| self.in_subset[s as usize])
    }
}

/// `Θ` (even length, not a reflection of `W`) or `Θ_T` (odd length, a
/// reflection of `W`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParityClass {
    Even,
    Reflection,
}

/// One Coxeter generator of `W_L^θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedGenerator {
    pub element: Element,
    pub orbit: Vec<usize>,
    pub class: ParityClass,
}

/// The generators of `W_L^θ` together with the orbits that were skipped
/// because their parabolic subgroup is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedGenerators {
    pub generators: Vec<TwistedGenerator>,
    pub skipped: Vec<Vec<usize>>,
}

pub fn twisted_generators(sys: &CoxeterSystem, theta: &DiagramAutomorphism) -> Result<TwistedGenerators> {
    let mut generators = Vec::new();
    let mut skipped = Vec::new();
    for orbit in theta.orbits() {
        if orbit.len() == 2 && sys.bond(orbit[0], orbit[1]) == Bond::Infinite {
            skipped.push(orbit);
            continue;
        }
        let element = sys.longest_element(&orbit)?;
        let class = if sys.length(element) % 2 == 1 {
            ParityClass::Reflection
        } else {
            ParityClass::Even
        };
        generators.push(TwistedGenerator { element, orbit, class });
    }
    Ok(TwistedGenerators { generators, skipped })
}

/// Edge label for the `i`-th twisted generator: `x, y, z, u, v, w, g7, …`.
pub fn default_nickname(i: usize) -> String {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    NAMES
        .get(i)
        .map_or_else(|| format!("g{}", i + 1), |s| s.to_string())
}

/// The enumerated subgroup `W_L^θ`.
#[derive(Debug, Clone)]
pub struct TwistedSubgroup<'a> {
    sys: &'a CoxeterSystem,
    theta: DiagramAutomorphism,
    generators: Vec<TwistedGenerator>,
    skipped: Vec<Vec<usize>>,
    elements: Vec<Element>,
    members: FixedBitSet,
    nicknames: Vec<String>,
}

impl<'a> TwistedSubgroup<'a> {
    /// Closure of the twisted generators under right multiplication.
    pub fn enumerate(sys: &'a CoxeterSystem, theta: DiagramAutomorphism, cap: usize) -> Result<Self> {
        let TwistedGenerators { generators, skipped } = twisted_generators(sys, &theta)?;
        let gens: Vec<Element> = generators.iter().map(|g| g.element).collect();
        let ball = sys.enumerate_ball(&gens, cap);
        match ball.truncation {
            Some(Truncation::Cap) => return Err(Error::CapExceeded(cap)),
            Some(Truncation::Region) => return Err(Error::OutOfEnumeratedRegion),
            None => {}
        }
        let mut elements = ball.elements;
        elements.sort_unstable();
        let mut members = FixedBitSet::with_capacity(sys.order());
        for &z in &elements {
            if !theta.is_fixed(sys, z)? {
                return Err(Error::InvariantViolation(format!(
                    "{} is generated by S_L^θ but not fixed by θ",
                    sys.format_word(z)
                )));
            }
            members.insert(z.id());
        }
        let nicknames = (0..generators.len()).map(default_nickname).collect();
        Ok(Self {
            sys,
            theta,
            generators,
            skipped,
            elements,
            members,
            nicknames,
        })
    }

    /// Replaces the edge labels of the generators; missing entries keep
    /// their defaults.
    pub fn with_nicknames(mut self, names: &[String]) -> Self {
        for (slot, name) in self.nicknames.iter_mut().zip(names) {
            slot.clone_from(name);
        }
        self
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn theta(&self) -> &DiagramAutomorphism {
        &self.theta
    }

    pub fn generators(&self) -> &[TwistedGenerator] {
        &self.generators
    }

    pub fn skipped_orbits(&self) -> &[Vec<usize>] {
        &self.skipped
    }

    pub fn nickname(&self, i: usize) -> &str {
        &self.nicknames[i]
    }

    /// Elements in ShortLex order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: Element) -> bool {
        self.members.contains(w.id())
    }

    /// An `S_L^θ`-reduced expression of `z`, as generator indices.
    ///
    /// Greedy from the right: strip the first generator (in declared order)
    /// that shortens `z`. Length additivity over reduced expressions makes
    /// every such step drop `ℓ` by exactly the generator's length.
    pub fn reduced_word(&self, z: Element) -> Result<Vec<usize>> {
        if !self.contains(z) {
            return Err(Error::NotFixed);
        }
        let sys = self.sys;
        let mut rest = z;
        let mut letters = Vec::new();
        while rest != Element::IDENTITY {
            let mut step = None;
            for (i, g) in self.generators.iter().enumerate() {
                let next = sys.multiply(rest, g.element)?;
                if sys.length(next) < sys.length(rest) {
                    step = Some((i, next));
                    break;
                }
            }
            let Some((i, next)) = step else {
                return Err(Error::InvariantViolation(format!(
                    "no twisted generator shortens {}",
                    sys.format_word(rest)
                )));
            };
            if sys.length(next) + sys.length(self.generators[i].element) != sys.length(rest) {
                return Err(Error::InvariantViolation(format!(
                    "length is not additive at {} · {}",
                    sys.format_word(rest),
                    self.nickname(i)
                )));
            }
            letters.push(i);
            rest = next;
        }
        letters.reverse();
        Ok(letters)
    }

    pub fn twisted_length(&self, z: Element) -> Result<usize> {
        self.reduced_word(z).map(|w| w.len())
    }

    /// Product of a word over the twisted generators.
    pub fn evaluate(&self, word: &[usize]) -> Result<Element> {
        word.iter().try_fold(Element::IDENTITY, |acc, &i| {
            let g = self.generators.get(i).ok_or(Error::InvalidGenerator(i))?;
            self.sys.multiply(acc, g.element)
        })
    }
}
