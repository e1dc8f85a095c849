//! Exhaustive checkers. Each returns a [`VerificationReport`].

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{inversions_by_definition, reflections_by_conjugation, subword_leq, BruhatOracle};
use super::{Tally, VerificationReport};
use crate::cosets::{dominated_minimal, min_size_distribution, CosetAnalysis, StepVerdict};
use crate::error::Result;
use crate::par::*;
use crate::system::{CoxeterSystem, Element, Side};
use crate::twisted::{ParityClass, TwistedSubgroup};

/// Groups up to this order are checked on every pair; larger ones are
/// sampled.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 48;

fn merge(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

fn all_elements(sys: &CoxeterSystem) -> Vec<Element> {
    sys.elements().collect()
}

/// `bruhat_leq` against the transitive-closure oracle: every pair for small
/// groups, otherwise `samples` uniform pairs plus `samples` pairs drawn from
/// down-sets. Small groups are also checked against the subword criterion.
pub fn check_bruhat_oracle(
    sys: &CoxeterSystem,
    oracle: &BruhatOracle,
    seed: u64,
    samples: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("bruhat-oracle");
    let describe = |u: Element, w: Element, tag: &str| {
        format!("{tag}: ({}) vs ({})", sys.format_word(u), sys.format_word(w))
    };
    let tally = if sys.order() <= EXHAUSTIVE_PAIR_LIMIT {
        let parts = all_elements(sys)
            .maybe_par_iter()
            .map(|w| {
                let mut t = Tally::default();
                for u in sys.elements() {
                    let fast = sys.bruhat_leq(u, w);
                    t.record(fast == oracle.leq(u, w), || describe(u, w, "closure"));
                    match subword_leq(sys, u, w) {
                        Ok(sub) => t.record(fast == sub, || describe(u, w, "subword")),
                        Err(e) => t.fail(format!("subword oracle: {e}")),
                    }
                }
                t
            })
            .collect();
        merge(parts)
    } else {
        report.seed = Some(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = sys.order();
        let mut pairs = Vec::with_capacity(2 * samples);
        for _ in 0..samples {
            let u = sys.element(rng.random_range(0..n)).expect("in range");
            let w = sys.element(rng.random_range(0..n)).expect("in range");
            pairs.push((u, w));
        }
        for _ in 0..samples {
            let w = sys.element(rng.random_range(0..n)).expect("in range");
            let down: Vec<usize> = oracle.down_set(w).collect();
            let u = sys.element(down[rng.random_range(0..down.len())]).expect("in range");
            pairs.push((u, w));
        }
        report.notes.push(format!("{} sampled pairs", pairs.len()));
        let mut t = Tally::default();
        for (u, w) in pairs {
            t.record(sys.bruhat_leq(u, w) == oracle.leq(u, w), || describe(u, w, "closure"));
        }
        t
    };
    report.absorb(tally);
    report
}

/// `|N(w)| = ℓ(w)`, agreement with the definition, and
/// `N(xy) = N(y) Δ y⁻¹N(x)y` on every pair.
pub fn check_inversion_sets(sys: &CoxeterSystem) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("inversion-sets");
    let refl_def = reflections_by_conjugation(sys)?;
    let indexed: Vec<Element> = sys.reflections().map(|t| t.element()).collect();
    let mut tally = Tally::default();
    tally.record(refl_def == indexed, || "reflection index differs from conjugation closure".into());

    let sets = all_elements(sys)
        .maybe_par_iter()
        .map(|w| sys.inversion_set(w))
        .collect::<Result<Vec<_>>>()?;
    let parts = all_elements(sys)
        .maybe_par_iter()
        .map(|w| -> Result<Tally> {
            let mut t = Tally::default();
            let n = &sets[w.id()];
            t.record(n.len() == sys.length(w), || {
                format!("|N({})| = {} != length", sys.format_word(w), n.len())
            });
            let got: Vec<Element> = n.iter(sys).map(|r| r.element()).collect();
            let want = inversions_by_definition(sys, &refl_def, w)?;
            t.record(got == want, || format!("N({}) differs from definition", sys.format_word(w)));
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    tally = tally.merge(merge(parts));

    // conj[y][i] = index of y⁻¹ t_i y
    let m = indexed.len();
    let rank = sys.rank();
    let mut gen_conj = vec![vec![0usize; m]; rank];
    for (s, row) in gen_conj.iter_mut().enumerate() {
        for (i, &t) in indexed.iter().enumerate() {
            let g = sys.generator(s)?;
            let c = sys.conjugate(t, g)?;
            row[i] = sys.reflection_index(c).expect("conjugate of a reflection");
        }
    }
    let mut conj: Vec<Vec<usize>> = Vec::with_capacity(sys.order());
    conj.push((0..m).collect());
    for y in sys.elements().skip(1) {
        let word = sys.word(y);
        let last = *word.last().expect("non-identity") as usize;
        let parent = sys.right_mul(y, last).expect("descent");
        let row = conj[parent.id()].iter().map(|&i| gen_conj[last][i]).collect();
        conj.push(row);
    }
    let parts = all_elements(sys)
        .maybe_par_iter()
        .map(|x| -> Result<Tally> {
            let mut t = Tally::default();
            for y in sys.elements() {
                let xy = sys.multiply(x, y)?;
                let mut expected = FixedBitSet::with_capacity(m);
                for i in sets[x.id()].bits().ones() {
                    expected.insert(conj[y.id()][i]);
                }
                expected.symmetric_difference_with(sets[y.id()].bits());
                t.record(&expected == sets[xy.id()].bits(), || {
                    format!("N(xy) identity fails for x = {}, y = {}", sys.format_word(x), sys.format_word(y))
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    report.absorb(tally.merge(merge(parts)));
    Ok(report)
}

/// Invariants of `w = w^J w_J` for every `w` and every `J ⊆ S`; on small
/// groups also uniqueness and Bruhat-monotonicity of `w ↦ w^J`.
pub fn check_parabolic(sys: &CoxeterSystem) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("parabolic");
    let rank = sys.rank();
    let subsets: Vec<Vec<usize>> = (0u32..1 << rank)
        .map(|mask| (0..rank).filter(|&s| mask >> s & 1 == 1).collect())
        .collect();
    let small = sys.order() <= EXHAUSTIVE_PAIR_LIMIT;
    let parts = subsets
        .maybe_par_iter()
        .map(|subset| -> Result<Tally> {
            let mut t = Tally::default();
            let gens = subset.iter().map(|&s| sys.generator(s)).collect::<Result<Vec<_>>>()?;
            let parabolic = sys.enumerate_ball(&gens, sys.order()).elements;
            let mut prefixes = vec![Element::IDENTITY; sys.order()];
            for w in sys.elements() {
                let d = sys.parabolic_decompose(w, &subset)?;
                let tag = || format!("w = {}, J = {:?}", sys.format_word(w), subset);
                t.record(sys.multiply(d.prefix, d.suffix)? == w, || format!("recomposition: {}", tag()));
                t.record(sys.length(d.prefix) + sys.length(d.suffix) == sys.length(w), || {
                    format!("length additivity: {}", tag())
                });
                t.record(
                    subset.iter().all(|&s| !sys.has_descent(d.prefix, s, Side::Right)),
                    || format!("prefix has a descent in J: {}", tag()),
                );
                t.record(
                    sys.word(d.suffix).iter().all(|&s| subset.contains(&(s as usize))),
                    || format!("suffix leaves W_J: {}", tag()),
                );
                if small {
                    let mut count = 0;
                    for &q in &parabolic {
                        let p = sys.multiply(w, sys.inverse(q)?)?;
                        if subset.iter().all(|&s| !sys.has_descent(p, s, Side::Right))
                            && sys.length(p) + sys.length(q) == sys.length(w)
                        {
                            count += 1;
                        }
                    }
                    t.record(count == 1, || format!("{count} decompositions: {}", tag()));
                }
                prefixes[w.id()] = d.prefix;
            }
            if small {
                for w in sys.elements() {
                    for u in sys.elements() {
                        if sys.bruhat_leq(u, w) {
                            t.record(sys.bruhat_leq(prefixes[u.id()], prefixes[w.id()]), || {
                                format!(
                                    "projection not monotone: {} <= {}, J = {:?}",
                                    sys.format_word(u),
                                    sys.format_word(w),
                                    subset
                                )
                            });
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    report.absorb(merge(parts));
    Ok(report)
}

/// Distinct commuting reflections `t, t'` satisfy `t ∉ N(t')`.
pub fn check_commuting_reflections(sys: &CoxeterSystem) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("commuting-reflections");
    let refl: Vec<Element> = sys.reflections().map(|t| t.element()).collect();
    let parts = refl
        .clone()
        .maybe_par_iter()
        .map(|tp| -> Result<Tally> {
            let mut tally = Tally::default();
            let n = sys.inversion_set(tp)?;
            for &t in &refl {
                if t == tp || sys.multiply(t, tp)? != sys.multiply(tp, t)? {
                    continue;
                }
                tally.record(!n.contains(sys, t), || {
                    format!("{} in N({})", sys.format_word(t), sys.format_word(tp))
                });
            }
            Ok(tally)
        })
        .collect::<Result<Vec<_>>>()?;
    report.absorb(merge(parts));
    Ok(report)
}

/// For `x ∈ S_L^θ`: `ℓ(u) < ℓ(ux)` implies `u < ux`.
pub fn check_ascent_is_bruhat(sub: &TwistedSubgroup<'_>) -> Result<VerificationReport> {
    let sys = sub.system();
    let mut report = VerificationReport::new("ascent-is-bruhat");
    let parts = all_elements(sys)
        .maybe_par_iter()
        .map(|u| -> Result<Tally> {
            let mut t = Tally::default();
            for (i, g) in sub.generators().iter().enumerate() {
                let ux = sys.multiply(u, g.element)?;
                if sys.length(u) < sys.length(ux) {
                    t.record(sys.bruhat_lt(u, ux), || {
                        format!("{} not below its product with {}", sys.format_word(u), sub.nickname(i))
                    });
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    report.absorb(merge(parts));
    Ok(report)
}

/// For `x ∈ S_L^θ`, `u ≤ w` and `ℓ(wx) = ℓ(w)`: one of `u`, `ux` is no
/// longer than `u` and lies below `wx`. Also checks that `ℓ(wx) = ℓ(w)`
/// never happens for a reflection generator.
pub fn check_equal_length_lift(sub: &TwistedSubgroup<'_>) -> Result<VerificationReport> {
    let sys = sub.system();
    let mut report = VerificationReport::new("equal-length-lift");
    let parts = all_elements(sys)
        .maybe_par_iter()
        .map(|w| -> Result<Tally> {
            let mut t = Tally::default();
            for (i, g) in sub.generators().iter().enumerate() {
                let wx = sys.multiply(w, g.element)?;
                let equal = sys.length(wx) == sys.length(w);
                t.record(!equal || g.class == ParityClass::Even, || {
                    format!("equal length at {} with reflection generator {}", sys.format_word(w), sub.nickname(i))
                });
                if !equal {
                    continue;
                }
                for u in sys.elements() {
                    if !sys.bruhat_leq(u, w) {
                        continue;
                    }
                    let ux = sys.multiply(u, g.element)?;
                    let ok = [u, ux]
                        .into_iter()
                        .any(|v| sys.length(v) <= sys.length(u) && sys.bruhat_leq(v, wx));
                    t.record(ok, || {
                        format!(
                            "u = {}, w = {}, x = {}",
                            sys.format_word(u),
                            sys.format_word(w),
                            sub.nickname(i)
                        )
                    });
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    report.absorb(merge(parts));
    Ok(report)
}

/// `ℓ(z) = Σ ℓ(x_i)` over the greedy twisted word of every `z ∈ W_L^θ`, the
/// word is as short as the word length in the Cayley graph of
/// `(W_L^θ, S_L^θ)`, and each greedy step drops the length exactly.
pub fn check_length_additivity(sub: &TwistedSubgroup<'_>) -> Result<VerificationReport> {
    let sys = sub.system();
    let mut report = VerificationReport::new("length-additivity");
    // breadth-first distances over the twisted generators
    let mut dist = vec![usize::MAX; sys.order()];
    dist[0] = 0;
    let mut queue = vec![Element::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let z = queue[head];
        head += 1;
        for g in sub.generators() {
            let y = sys.multiply(z, g.element)?;
            if dist[y.id()] == usize::MAX {
                dist[y.id()] = dist[z.id()] + 1;
                queue.push(y);
            }
        }
    }
    let mut t = Tally::default();
    for &z in sub.elements() {
        let tag = || sys.format_word(z);
        match sub.reduced_word(z) {
            Ok(word) => {
                let total: usize = word.iter().map(|&i| sys.length(sub.generators()[i].element)).sum();
                t.record(total == sys.length(z), || format!("lengths do not add up for {}", tag()));
                t.record(word.len() == dist[z.id()], || {
                    format!("greedy word of {} has {} letters, distance is {}", tag(), word.len(), dist[z.id()])
                });
                t.record(sub.evaluate(&word)? == z, || format!("greedy word does not evaluate to {}", tag()));
            }
            Err(e) => t.fail(format!("{}: {e}", tag())),
        }
    }
    report.absorb(t);
    Ok(report)
}

/// The closure of `S_L^θ` equals `{w ∈ W_L : θ(w) = w}`; generators are
/// fixed and their parity class matches reflection membership; `θ` does not
/// depend on the reduced word it is applied to.
pub fn check_fixed_subgroup(sub: &TwistedSubgroup<'_>) -> Result<VerificationReport> {
    let sys = sub.system();
    let theta = sub.theta();
    let mut report = VerificationReport::new("fixed-subgroup");
    let mut t = Tally::default();
    let gens = theta
        .subset()
        .iter()
        .map(|&s| sys.generator(s))
        .collect::<Result<Vec<_>>>()?;
    let parabolic = sys.enumerate_ball(&gens, sys.order());
    t.record(parabolic.is_complete(), || "W_L not fully enumerated".into());
    let mut filtered = Vec::new();
    for &w in &parabolic.elements {
        let image = theta.apply(sys, w)?;
        if image == w {
            filtered.push(w);
        }
        // a second reduced word of w: the reverse of the canonical word of w⁻¹
        let alt: Vec<usize> = sys
            .word(sys.inverse(w)?)
            .iter()
            .rev()
            .map(|&s| theta.image(s as usize))
            .collect();
        t.record(sys.element_from_word(&alt)? == image, || {
            format!("theta depends on the reduced word of {}", sys.format_word(w))
        });
    }
    filtered.sort_unstable();
    t.record(filtered == sub.elements(), || {
        format!("closure has {} elements, fixed filter has {}", sub.order(), filtered.len())
    });
    for (i, g) in sub.generators().iter().enumerate() {
        t.record(theta.is_fixed(sys, g.element)?, || format!("generator {} not fixed", sub.nickname(i)));
        let odd = sys.length(g.element) % 2 == 1;
        let refl = sys.is_reflection(g.element);
        let class_refl = g.class == ParityClass::Reflection;
        t.record(odd == refl && refl == class_refl, || {
            format!("parity class of {} inconsistent", sub.nickname(i))
        });
    }
    report.notes.push(format!("|W_L^theta| = {}", sub.order()));
    report.absorb(t);
    Ok(report)
}

/// Every element lies in exactly one coset, reps are ShortLex-least, and the
/// equal-length graph on each minimal set is connected.
pub fn check_coset_partition(sub: &TwistedSubgroup<'_>, cosets: &[CosetAnalysis]) -> VerificationReport {
    let sys = sub.system();
    let mut report = VerificationReport::new("coset-partition");
    let mut t = Tally::default();
    let mut seen = vec![false; sys.order()];
    let mut total = 0;
    for c in cosets {
        total += c.members.len();
        t.record(c.rep == c.members[0], || format!("rep of {} is not least", sys.format_word(c.rep)));
        t.record(c.members.len() == sub.order(), || {
            format!("coset of {} has {} members", sys.format_word(c.rep), c.members.len())
        });
        for &w in &c.members {
            t.record(!std::mem::replace(&mut seen[w.id()], true), || {
                format!("{} lies in two cosets", sys.format_word(w))
            });
        }
        t.record(c.min_graph_connected(), || {
            format!("minimal graph of {} is disconnected", sys.format_word(c.rep))
        });
    }
    t.record(total == sys.order(), || format!("cosets cover {total} of {} elements", sys.order()));
    let dist = min_size_distribution(cosets);
    report.notes.push(format!("{} cosets of size {}", cosets.len(), sub.order()));
    report.notes.push(format!(
        "|Min| distribution: {}",
        dist.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
    ));
    report.notes.push(format!(
        "|Min| values: {{{}}}",
        dist.keys().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
    ));
    report.absorb(t);
    report
}

/// Any two minimal elements of a coset (including `u` with itself) are
/// joined by equal-length steps along a twisted reduced word.
pub fn check_min_chains(sub: &TwistedSubgroup<'_>, cosets: &[CosetAnalysis]) -> VerificationReport {
    let sys = sub.system();
    let mut report = VerificationReport::new("min-chains");
    let parts = cosets
        .maybe_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            for &u in &c.min_set {
                for &v in &c.min_set {
                    match sub.connect_minimals(u, v) {
                        Ok(chain) => {
                            let linked = chain.elements.len() == chain.steps.len() + 1
                                && chain.elements.first() == Some(&u)
                                && chain.elements.last() == Some(&v)
                                && chain.elements.windows(2).zip(&chain.steps).all(|(pair, &i)| {
                                    sys.multiply(pair[0], sub.generators()[i].element).ok() == Some(pair[1])
                                });
                            t.record(linked && chain.elements.iter().all(|&w| c.is_min(w)), || {
                                format!("chain {} -> {} is broken or leaves Min", sys.format_word(u), sys.format_word(v))
                            })
                        }
                        Err(e) => t.fail(format!("{} -> {}: {e}", sys.format_word(u), sys.format_word(v))),
                    }
                }
            }
            t
        })
        .collect();
    report.absorb(merge(parts));
    report
}

/// For every minimal `u` and every `z ∈ W_L^θ`, each step along the twisted
/// reduced word of `z` keeps the length or goes up in Bruhat order, and
/// keeps it only at even generators.
pub fn check_step_dichotomy(sub: &TwistedSubgroup<'_>, cosets: &[CosetAnalysis]) -> VerificationReport {
    let sys = sub.system();
    let mut report = VerificationReport::new("step-dichotomy");
    let minimal: Vec<Element> = cosets.iter().flat_map(|c| c.min_set.iter().copied()).collect();
    report.notes.push(format!("{} minimal elements traced", minimal.len()));
    let parts = minimal
        .maybe_par_iter()
        .map(|u| {
            let mut t = Tally::default();
            for &z in sub.elements() {
                match sub.escalation_trace(u, z) {
                    Ok(trace) => {
                        let ok = trace.steps.iter().zip(&trace.word).all(|(v, &i)| {
                            *v == StepVerdict::BruhatUp || sub.generators()[i].class == ParityClass::Even
                        });
                        t.record(ok, || format!("equal step at a reflection from {}", sys.format_word(u)));
                    }
                    Err(e) => t.fail(format!("u = {}, z = {}: {e}", sys.format_word(u), sys.format_word(z))),
                }
            }
            t
        })
        .collect();
    report.absorb(merge(parts));
    report
}

/// In every coset the minimal-length elements are exactly the Bruhat-minimal
/// ones, and the constructive dominated minimal element is valid for every
/// element of the group.
pub fn check_bruhat_minimal(
    sub: &TwistedSubgroup<'_>,
    cosets: &[CosetAnalysis],
    oracle: Option<&BruhatOracle>,
) -> VerificationReport {
    let sys = sub.system();
    let leq = |u: Element, w: Element| match oracle {
        Some(o) => o.leq(u, w),
        None => sys.bruhat_leq(u, w),
    };
    let mut report = VerificationReport::new("bruhat-minimal");
    let parts = cosets
        .maybe_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            let bruhat_min: Vec<Element> = c
                .members
                .iter()
                .copied()
                .filter(|&w| !c.members.iter().any(|&v| v != w && leq(v, w)))
                .collect();
            t.record(bruhat_min == c.min_set, || {
                format!("coset of {}: Bruhat-minimal set differs from Min", sys.format_word(c.rep))
            });
            for &x in &c.members {
                let searched = c.min_set.iter().any(|&w| leq(w, x));
                match dominated_minimal(sub, x) {
                    Ok(d) => t.record(searched && c.is_min(d.minimal) && leq(d.minimal, x), || {
                        format!("dominated minimal of {} invalid", sys.format_word(x))
                    }),
                    Err(e) => t.fail(format!("{}: {e}", sys.format_word(x))),
                }
            }
            t
        })
        .collect();
    report.absorb(merge(parts));
    report
}
