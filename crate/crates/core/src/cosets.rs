//! Cosets `u·W_L^θ`: minimal-length elements, the equal-length graph on them,
//! chains between minimal elements, step classification along twisted
//! reduced words, and a minimal element Bruhat-below any coset member.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::*;
use crate::system::Element;
use crate::twisted::{ParityClass, TwistedSubgroup};

/// An edge `w — w·x` between two minimal elements, `x` the twisted
/// generator with index `generator`. Stored with `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinEdge {
    pub from: Element,
    pub to: Element,
    pub generator: usize,
}

/// A coset `u·W_L^θ` with its minimal-length elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAnalysis {
    /// ShortLex-least member.
    pub rep: Element,
    /// All members, ShortLex-sorted.
    pub members: Vec<Element>,
    pub min_length: usize,
    /// Members of length `min_length`, ShortLex-sorted.
    pub min_set: Vec<Element>,
    pub min_graph: Vec<MinEdge>,
}

impl CosetAnalysis {
    pub fn contains(&self, w: Element) -> bool {
        self.members.binary_search(&w).is_ok()
    }

    pub fn is_min(&self, w: Element) -> bool {
        self.min_set.binary_search(&w).is_ok()
    }

    /// Whether `min_graph` connects all of `min_set`.
    pub fn min_graph_connected(&self) -> bool {
        let n = self.min_set.len();
        let pos = |w: Element| self.min_set.binary_search(&w).expect("edge endpoint in min set");
        let mut adj = vec![Vec::new(); n];
        for e in &self.min_graph {
            let (a, b) = (pos(e.from), pos(e.to));
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// How the length changes along one step `v ↦ v·x` of a twisted reduced word
/// starting at a minimal element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepVerdict {
    /// `ℓ(v·x) = ℓ(v)`.
    Equal,
    /// `v < v·x` in the Bruhat order.
    BruhatUp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscalationTrace {
    pub base: Element,
    /// Twisted generator indices.
    pub word: Vec<usize>,
    pub steps: Vec<StepVerdict>,
}

/// A path `u = c₀, c₁, …, c_k = v` with `c_{i+1} = c_i · y_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub elements: Vec<Element>,
    /// Twisted generator indices `y_1, …, y_k`.
    pub steps: Vec<usize>,
}

/// Which candidate was kept at an equal-length step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Choice {
    Kept,
    Multiplied,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationStep {
    pub generator: usize,
    pub verdict: StepVerdict,
    /// Only set for `Equal` steps.
    pub choice: Option<Choice>,
    /// The dominated minimal element after this step.
    pub witness: Element,
}

/// Output of [`dominated_minimal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domination {
    pub target: Element,
    pub minimal: Element,
    /// The minimal element the construction started from.
    pub start: Element,
    pub word: Vec<usize>,
    pub steps: Vec<DominationStep>,
}

impl TwistedSubgroup<'_> {
    /// `u·W_L^θ` with its minimal set and equal-length graph.
    pub fn coset(&self, u: Element) -> Result<CosetAnalysis> {
        let sys = self.system();
        let mut members = self
            .elements()
            .iter()
            .map(|&z| sys.multiply(u, z))
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        let min_length = members.iter().map(|&w| sys.length(w)).min().expect("coset is nonempty");
        let min_set: Vec<Element> = members
            .iter()
            .copied()
            .filter(|&w| sys.length(w) == min_length)
            .collect();
        let mut min_graph = Vec::new();
        for &w in &min_set {
            for (i, g) in self.generators().iter().enumerate() {
                let v = sys.multiply(w, g.element)?;
                if w < v && min_set.binary_search(&v).is_ok() {
                    min_graph.push(MinEdge {
                        from: w,
                        to: v,
                        generator: i,
                    });
                }
            }
        }
        min_graph.sort_unstable();
        Ok(CosetAnalysis {
            rep: members[0],
            members,
            min_length,
            min_set,
            min_graph,
        })
    }

    pub fn min_set(&self, u: Element) -> Result<Vec<Element>> {
        Ok(self.coset(u)?.min_set)
    }

    /// Whether `u` has minimal length in `u·W_L^θ`.
    pub fn is_minimal(&self, u: Element) -> Result<bool> {
        let sys = self.system();
        for &z in self.elements() {
            if sys.length(sys.multiply(u, z)?) < sys.length(u) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Joins two minimal elements of one coset along a twisted reduced word
    /// of `u⁻¹v`; every element of the chain is minimal.
    pub fn connect_minimals(&self, u: Element, v: Element) -> Result<Chain> {
        let sys = self.system();
        let y = sys.multiply(sys.inverse(u)?, v)?;
        if !self.contains(y) {
            return Err(Error::NotSameCoset);
        }
        if !self.is_minimal(u)? || !self.is_minimal(v)? {
            return Err(Error::NotMinimal);
        }
        let steps = self.reduced_word(y)?;
        let mut elements = vec![u];
        let mut cur = u;
        for &i in &steps {
            cur = sys.multiply(cur, self.generators()[i].element)?;
            if sys.length(cur) != sys.length(u) {
                return Err(Error::InvariantViolation(format!(
                    "chain from {} to {} leaves the minimal length at {}",
                    sys.format_word(u),
                    sys.format_word(v),
                    sys.format_word(cur)
                )));
            }
            elements.push(cur);
        }
        debug_assert_eq!(cur, v);
        Ok(Chain { elements, steps })
    }

    /// Classifies every step `u x₁⋯x_i ↦ u x₁⋯x_{i+1}` along the twisted
    /// reduced word of `z`, for `u` minimal in its coset.
    pub fn escalation_trace(&self, u: Element, z: Element) -> Result<EscalationTrace> {
        let sys = self.system();
        if !self.contains(z) {
            return Err(Error::NotFixed);
        }
        if !self.is_minimal(u)? {
            return Err(Error::NotMinimal);
        }
        let word = self.reduced_word(z)?;
        let mut steps = Vec::with_capacity(word.len());
        let mut cur = u;
        for &i in &word {
            let g = &self.generators()[i];
            let next = sys.multiply(cur, g.element)?;
            let verdict = classify(self, cur, next)?;
            if verdict == StepVerdict::Equal && g.class == ParityClass::Reflection {
                return Err(Error::InvariantViolation(format!(
                    "length unchanged at {} · {} although the generator is a reflection",
                    sys.format_word(cur),
                    self.nickname(i)
                )));
            }
            steps.push(verdict);
            cur = next;
        }
        Ok(EscalationTrace { base: u, word, steps })
    }
}

fn classify(sub: &TwistedSubgroup<'_>, cur: Element, next: Element) -> Result<StepVerdict> {
    let sys = sub.system();
    let (a, b) = (sys.length(cur), sys.length(next));
    if a == b {
        Ok(StepVerdict::Equal)
    } else if a < b && sys.bruhat_leq(cur, next) {
        Ok(StepVerdict::BruhatUp)
    } else {
        Err(Error::InvariantViolation(format!(
            "step {} -> {} neither keeps the length nor goes up in Bruhat order",
            sys.format_word(cur),
            sys.format_word(next)
        )))
    }
}

/// A minimal element `w` of `x·W_L^θ` with `w ≤ x`.
///
/// Starts from the ShortLex-least minimal element `u` and walks the twisted
/// reduced word `x₁⋯x_k` of `u⁻¹x`, keeping a minimal `w ≤ u x₁⋯x_i`. A step
/// that raises the length keeps `w`; an equal-length step replaces `w` by
/// whichever of `w`, `w·x_{i+1}` is no longer than `w` and lies below the new
/// prefix (shorter first, then ShortLex).
pub fn dominated_minimal(sub: &TwistedSubgroup<'_>, x: Element) -> Result<Domination> {
    let sys = sub.system();
    let analysis = sub.coset(x)?;
    let start = analysis.min_set[0];
    let word = sub.reduced_word(sys.multiply(sys.inverse(start)?, x)?)?;

    let mut witness = start;
    let mut prefix = start;
    let mut steps = Vec::with_capacity(word.len());
    for &i in &word {
        let g = sub.generators()[i].element;
        let next = sys.multiply(prefix, g)?;
        let verdict = classify(sub, prefix, next)?;
        let mut choice = None;
        if verdict == StepVerdict::Equal {
            let moved = sys.multiply(witness, g)?;
            let mut candidates = [(witness, Choice::Kept), (moved, Choice::Multiplied)];
            candidates.sort_by_key(|&(v, _)| (sys.length(v), v));
            let picked = candidates
                .into_iter()
                .find(|&(v, _)| sys.length(v) <= sys.length(witness) && sys.bruhat_leq(v, next))
                .ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "neither {} nor its product with {} lies below {}",
                        sys.format_word(witness),
                        sub.nickname(i),
                        sys.format_word(next)
                    ))
                })?;
            witness = picked.0;
            choice = Some(picked.1);
        }
        steps.push(DominationStep {
            generator: i,
            verdict,
            choice,
            witness,
        });
        prefix = next;
    }
    if !analysis.is_min(witness) || !sys.bruhat_leq(witness, x) {
        return Err(Error::InvariantViolation(format!(
            "constructed {} is not a minimal element below {}",
            sys.format_word(witness),
            sys.format_word(x)
        )));
    }
    Ok(Domination {
        target: x,
        minimal: witness,
        start,
        word,
        steps,
    })
}

/// Partition of the whole (finite) group into cosets, ordered by
/// representative.
pub fn all_cosets(sub: &TwistedSubgroup<'_>) -> Result<Vec<CosetAnalysis>> {
    let sys = sub.system();
    if !sys.is_complete() {
        return Err(Error::Incomplete);
    }
    let reps = sys
        .elements()
        .collect::<Vec<_>>()
        .maybe_par_iter()
        .map(|x| -> Result<Option<Element>> {
            for &z in &sub.elements()[1..] {
                if sys.multiply(x, z)? < x {
                    return Ok(None);
                }
            }
            Ok(Some(x))
        })
        .collect::<Result<Vec<_>>>()?;
    let reps: Vec<Element> = reps.into_iter().flatten().collect();
    reps.maybe_par_iter().map(|u| sub.coset(u)).collect()
}

/// Histogram of `|Min|` over a list of cosets.
pub fn min_size_distribution(cosets: &[CosetAnalysis]) -> BTreeMap<usize, usize> {
    let mut dist = BTreeMap::new();
    for c in cosets {
        *dist.entry(c.min_set.len()).or_insert(0) += 1;
    }
    dist
}

/// The minimal-element graph in DOT format. Nodes are labeled by their
/// canonical words in digit-string form, edges by generator nickname.
pub fn min_graph_dot(sub: &TwistedSubgroup<'_>, coset: &CosetAnalysis) -> String {
    let sys = sub.system();
    let mut out = String::new();
    let _ = writeln!(out, "graph min_set {{");
    let _ = writeln!(out, "  node [shape=box];");
    for (i, &w) in coset.min_set.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", sys.compact_word(w));
    }
    let pos = |w: Element| coset.min_set.binary_search(&w).expect("endpoint in min set");
    for e in &coset.min_graph {
        let _ = writeln!(
            out,
            "  n{} -- n{} [label=\"{}\"];",
            pos(e.from),
            pos(e.to),
            sub.nickname(e.generator)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::twisted::DiagramAutomorphism;
    use crate::CoxeterSystem;

    fn build(name: &str) -> CoxeterSystem {
        CoxeterSystem::build(named::matrix(name).unwrap(), 10_000).unwrap()
    }

    fn f4_sub(sys: &CoxeterSystem) -> TwistedSubgroup<'_> {
        let theta = DiagramAutomorphism::from_swaps(sys, &[0, 1, 2, 3], &[(0, 3), (1, 2)]).unwrap();
        TwistedSubgroup::enumerate(sys, theta, 1000).unwrap()
    }

    fn swap_sub(sys: &CoxeterSystem) -> TwistedSubgroup<'_> {
        let theta = DiagramAutomorphism::from_swaps(sys, &[0, 1], &[(0, 1)]).unwrap();
        TwistedSubgroup::enumerate(sys, theta, 1000).unwrap()
    }

    fn parse(sys: &CoxeterSystem, w: &str) -> Element {
        sys.element_from_word(&sys.parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn identity_coset() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let c = sub.coset(sys.identity()).unwrap();
        assert_eq!(c.members, sub.elements());
        assert_eq!(c.min_set, vec![sys.identity()]);
        assert!(sub.is_minimal(sys.identity()).unwrap());
    }

    #[test]
    fn f4_class_with_four_minimal() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let u = parse(&sys, "42312342");
        let c = sub.coset(u).unwrap();
        assert_eq!(c.members.len(), 16);
        let mut want: Vec<Element> = ["42312342", "42312321", "43123121", "43123412"]
            .iter()
            .map(|w| parse(&sys, w))
            .collect();
        want.sort();
        assert_eq!(c.min_set, want);
        assert!(sub.is_minimal(u).unwrap());
        let big = c.members.iter().copied().find(|&w| sys.length(w) > 8).unwrap();
        assert!(!sub.is_minimal(big).unwrap());
    }

    #[test]
    fn f4_chain_between_minimal() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let u = parse(&sys, "42312342");
        let v = parse(&sys, "43123412");
        let chain = sub.connect_minimals(u, v).unwrap();
        assert_eq!(chain.steps, vec![0, 1, 0]);
        assert_eq!(chain.elements.len(), 4);
        assert_eq!(sub.connect_minimals(u, u).unwrap().elements, vec![u]);
    }

    #[test]
    fn chain_errors() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let u = parse(&sys, "42312342");
        assert_eq!(sub.connect_minimals(u, sys.identity()), Err(Error::NotSameCoset));
        let big = sub.coset(u).unwrap().members.into_iter().find(|&w| sys.length(w) > 8).unwrap();
        assert_eq!(sub.connect_minimals(u, big), Err(Error::NotMinimal));
    }

    #[test]
    fn a1xa1_swap() {
        let sys = build("A1xA1");
        let sub = swap_sub(&sys);
        let (s, t) = (sys.generator(0).unwrap(), sys.generator(1).unwrap());
        assert_eq!(sub.min_set(s).unwrap(), vec![s, t]);
        let chain = sub.connect_minimals(s, t).unwrap();
        assert_eq!(chain.elements, vec![s, t]);
        assert_eq!(chain.steps, vec![0]);
        let st = sys.multiply(s, t).unwrap();
        assert_eq!(dominated_minimal(&sub, st).unwrap().minimal, sys.identity());
        let cosets = all_cosets(&sub).unwrap();
        assert_eq!(cosets.len(), 2);
        assert!(cosets.iter().all(|c| c.members.len() == 2));
    }

    #[test]
    fn escalation() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let x = sub.generators()[0].element;
        let trace = sub.escalation_trace(sys.identity(), sys.identity()).unwrap();
        assert!(trace.steps.is_empty());
        let trace = sub.escalation_trace(parse(&sys, "42312342"), x).unwrap();
        assert_eq!(trace.steps, vec![StepVerdict::Equal]);
        let trace = sub.escalation_trace(sys.identity(), x).unwrap();
        assert_eq!(trace.steps, vec![StepVerdict::BruhatUp]);
        assert_eq!(
            sub.escalation_trace(sys.identity(), sys.generator(0).unwrap()),
            Err(Error::NotFixed)
        );
    }

    #[test]
    fn dominated_minimal_of_minimal_input() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let u = parse(&sys, "42312342");
        let d = dominated_minimal(&sub, u).unwrap();
        assert!(sub.is_minimal(d.minimal).unwrap());
        assert!(sys.bruhat_leq(d.minimal, u));
        let c = sub.coset(u).unwrap();
        for &x in &c.members {
            let d = dominated_minimal(&sub, x).unwrap();
            assert!(c.is_min(d.minimal) && sys.bruhat_leq(d.minimal, x));
        }
    }

    #[test]
    fn f4_partition() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let cosets = all_cosets(&sub).unwrap();
        assert_eq!(cosets.len(), 72);
        assert!(cosets.iter().all(|c| c.members.len() == 16 && c.rep == c.members[0]));
        let dist = min_size_distribution(&cosets);
        assert_eq!(
            dist.into_iter().collect::<Vec<_>>(),
            vec![(1, 5), (2, 25), (3, 18), (4, 9), (5, 6), (6, 4), (8, 4), (16, 1)]
        );
    }

    #[test]
    fn identity_theta_has_single_coset() {
        let sys = build("B3");
        let theta = DiagramAutomorphism::identity(&sys, &[0, 1, 2]).unwrap();
        let sub = TwistedSubgroup::enumerate(&sys, theta, 1000).unwrap();
        assert_eq!(all_cosets(&sub).unwrap().len(), 1);
    }

    #[test]
    fn dot_export() {
        let sys = build("F4");
        let sub = f4_sub(&sys);
        let c = sub.coset(parse(&sys, "42312342")).unwrap();
        let dot = min_graph_dot(&sub, &c);
        assert!(dot.starts_with("graph min_set {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("[label=\"x\"]").count(), 2);
        assert_eq!(dot.matches("[label=\"y\"]").count(), 1);
        assert!(dot.contains("label=\"12143234\""));
        let e = sub.coset(sys.identity()).unwrap();
        let dot = min_graph_dot(&sub, &e);
        assert!(dot.contains("n0 [label=\"e\"]"));
        assert!(!dot.contains(" -- "));
    }
}
