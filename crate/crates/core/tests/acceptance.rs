//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxtwist::cosets::{all_cosets, min_size_distribution};
use coxtwist::twisted::{twisted_generators, DiagramAutomorphism, ParityClass, TwistedSubgroup};
use coxtwist::verify::{checks, default_bundle, oracle::BruhatOracle, run_suite, Suite, SuiteConfig};
use coxtwist::{named, Bond, CoxeterMatrix, CoxeterSystem, Element, Error, Truncation, DEFAULT_CAP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f4() -> CoxeterSystem {
    CoxeterSystem::build(named::matrix("F4").unwrap(), DEFAULT_CAP).unwrap()
}

fn f4_swap(sys: &CoxeterSystem) -> TwistedSubgroup<'_> {
    let theta = DiagramAutomorphism::from_swaps(sys, &[0, 1, 2, 3], &[(0, 3), (1, 2)]).unwrap();
    TwistedSubgroup::enumerate(sys, theta, DEFAULT_CAP).unwrap()
}

fn el(sys: &CoxeterSystem, digits: &str) -> Element {
    sys.element_from_word(&sys.parse_word(digits).unwrap()).unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn group_order() -> Outcome {
    let start = Instant::now();
    let sys = f4();
    let elapsed = start.elapsed();
    ensure(sys.is_complete(), || "enumeration truncated".into())?;
    ensure(sys.order() == 1152, || format!("order {}", sys.order()))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("|F4| = {} in {elapsed:.2?}", sys.order()))
}

fn twisted_subgroup() -> Outcome {
    let sys = f4();
    let sub = f4_swap(&sys);
    let gens: Vec<Element> = sub.generators().iter().map(|g| g.element).collect();
    let expected = vec![el(&sys, "14"), el(&sys, "2323")];
    ensure(gens == expected, || {
        let words: Vec<String> = gens.iter().map(|&g| sys.format_word(g)).collect();
        format!("generators {words:?}")
    })?;
    ensure(sub.generators().iter().all(|g| g.class == ParityClass::Even), || {
        "a generator is a reflection".into()
    })?;
    ensure(sub.order() == 16, || format!("|W^theta| = {}", sub.order()))?;
    // dihedral of order 16: (xy)^8 = e and no smaller power
    let xy = sys.multiply(gens[0], gens[1]).unwrap();
    let mut p = xy;
    let mut k = 1;
    while p != Element::IDENTITY {
        p = sys.multiply(p, xy).unwrap();
        k += 1;
    }
    ensure(k == 8, || format!("xy has order {k}"))?;
    Ok("S_L^theta = {1 4, 2 3 2 3}, |W^theta| = 16, dihedral".into())
}

fn min_distribution() -> Outcome {
    let sys = f4();
    let sub = f4_swap(&sys);
    let start = Instant::now();
    let cosets = all_cosets(&sub).map_err(|e| e.to_string())?;
    let report = checks::check_bruhat_minimal(&sub, &cosets, None);
    let elapsed = start.elapsed();
    ensure(cosets.len() == 72, || format!("{} cosets", cosets.len()))?;
    ensure(report.is_success(), || format!("Bruhat-minimal check: {:?}", report.failures))?;
    let dist = min_size_distribution(&cosets);
    let values: Vec<usize> = dist.keys().copied().collect();
    ensure(values == [1, 2, 3, 4, 5, 6, 8, 16], || format!("values {values:?}"))?;
    within(elapsed, Duration::from_secs(60))?;
    let hist: Vec<String> = dist.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    Ok(format!("72 cosets, |Min| histogram {} ({} Bruhat checks) in {elapsed:.2?}", hist.join(" "), report.checked))
}

fn labeled_edges(sub: &TwistedSubgroup<'_>, edges: &[(Element, Element, usize)]) -> BTreeSet<(Element, Element, String)> {
    edges
        .iter()
        .map(|&(a, b, g)| (a.min(b), a.max(b), sub.nickname(g).to_owned()))
        .collect()
}

fn four_minimal_graph() -> Outcome {
    let sys = f4();
    let sub = f4_swap(&sys);
    let words = ["42312342", "42312321", "43123121", "43123412"];
    let nodes: Vec<Element> = words.iter().map(|w| el(&sys, w)).collect();
    for (w, &e) in words.iter().zip(&nodes) {
        ensure(sys.length(e) == w.len(), || format!("{w} is not reduced"))?;
    }
    let coset = sub.coset(nodes[0]).map_err(|e| e.to_string())?;
    let mut expected = nodes.clone();
    expected.sort_unstable();
    ensure(coset.min_set == expected, || {
        let got: Vec<String> = coset.min_set.iter().map(|&w| sys.compact_word(w)).collect();
        format!("Min = {got:?}")
    })?;
    let got = labeled_edges(&sub, &coset.min_graph.iter().map(|e| (e.from, e.to, e.generator)).collect::<Vec<_>>());
    let want = labeled_edges(&sub, &[(nodes[0], nodes[1], 0), (nodes[1], nodes[2], 1), (nodes[2], nodes[3], 0)]);
    ensure(got == want, || format!("edges {got:?}"))?;
    let chain = sub.connect_minimals(nodes[0], nodes[3]).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = chain.steps.iter().map(|&i| sub.nickname(i)).collect();
    ensure(labels == ["x", "y", "x"], || format!("chain labels {labels:?}"))?;
    ensure(chain.elements == nodes, || "chain passes through other elements".into())?;
    Ok("Min = 4 elements, path x-y-x".into())
}

fn sixteen_minimal_graph() -> Outcome {
    let sys = f4();
    let sub = f4_swap(&sys);
    // nodes in drawing order and the labeled edges of the drawing
    let words = [
        "343231234312", "432343123121", "432342312321", "234323123432",
        "343231234123", "342312341231", "342312342312", "312343123121",
        "312342312321", "123423123432", "123423123423", "231234231231",
        "234323123423", "423123431231", "423123432312", "231234323121",
    ];
    let drawn: [(usize, usize, &str); 16] = [
        (1, 2, "x"), (2, 3, "y"), (3, 4, "x"),
        (1, 5, "y"), (5, 6, "x"), (6, 7, "y"), (7, 8, "x"),
        (8, 9, "y"), (9, 10, "x"), (10, 11, "y"), (11, 12, "x"),
        (4, 13, "y"), (13, 14, "x"), (14, 15, "y"), (15, 16, "x"), (16, 12, "y"),
    ];
    let nodes: Vec<Element> = words.iter().map(|w| el(&sys, w)).collect();
    let coset = sub.coset(nodes[0]).map_err(|e| e.to_string())?;
    ensure(coset.members.len() == 16, || format!("{} members", coset.members.len()))?;
    ensure(coset.members.iter().all(|&w| sys.length(w) == 12), || "a member has length != 12".into())?;
    ensure(coset.min_set == coset.members, || "Min is not the whole coset".into())?;
    let mut sorted = nodes.clone();
    sorted.sort_unstable();
    ensure(sorted == coset.members, || "drawn words are not the coset".into())?;
    let got: BTreeSet<_> = coset
        .min_graph
        .iter()
        .map(|e| (e.from.min(e.to), e.from.max(e.to), sub.nickname(e.generator).to_owned()))
        .collect();
    let want: BTreeSet<_> = drawn
        .iter()
        .map(|&(a, b, l)| {
            let (a, b) = (nodes[a - 1], nodes[b - 1]);
            (a.min(b), a.max(b), l.to_owned())
        })
        .collect();
    ensure(got == want, || {
        let extra = got.difference(&want).count();
        let missing = want.difference(&got).count();
        format!("{extra} extra and {missing} missing edges")
    })?;
    Ok("16 minimal elements of length 12, labeled 16-cycle matches exactly".into())
}

fn bundled_suites() -> Outcome {
    let start = Instant::now();
    let report = run_suite(&SuiteConfig::bundled());
    let elapsed = start.elapsed();
    ensure(report.is_success(), || {
        let bad: Vec<String> = report
            .reports
            .iter()
            .filter(|r| !r.is_success())
            .map(|r| format!("{} / {}: {:?}", r.system, r.suite, r.failures.first()))
            .collect();
        bad.join("; ")
    })?;
    let systems = default_bundle().len();
    ensure(report.reports.len() == systems * Suite::ALL.len(), || "missing reports".into())?;
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "{} suites x {systems} systems, {} checks, 0 failures in {elapsed:.2?}",
        Suite::ALL.len(),
        report.checked()
    ))
}

fn oracle_equivalence() -> Outcome {
    let config = SuiteConfig {
        systems: default_bundle(),
        suites: vec![Suite::BruhatOracle],
        ..SuiteConfig::default()
    };
    let report = run_suite(&config);
    let mut exhaustive = 0;
    for (case, r) in config.systems.iter().zip(&report.reports) {
        ensure(r.is_success(), || format!("{}: {:?}", r.system, r.failures))?;
        let sys = CoxeterSystem::build(case.matrix.clone(), case.cap).unwrap();
        let n = sys.order();
        if n <= checks::EXHAUSTIVE_PAIR_LIMIT {
            // closure and subword comparisons on every pair
            ensure(r.checked == 2 * n * n, || format!("{}: {} checks for order {n}", r.system, r.checked))?;
            exhaustive += 1;
        } else {
            ensure(r.checked >= 1000 && r.seed.is_some(), || format!("{}: {} sampled checks", r.system, r.checked))?;
        }
    }
    let f4 = report.reports.iter().find(|r| r.system == "F4 swap").ok_or("no F4 report")?;
    ensure(f4.checked >= 1000, || format!("F4: {} pairs", f4.checked))?;
    Ok(format!(
        "{exhaustive} groups exhaustive, F4 {} seeded pairs (seed {})",
        f4.checked,
        f4.seed.unwrap_or_default()
    ))
}

fn fixed_subgroup_equality() -> Outcome {
    let mut cases = 0;
    for case in default_bundle() {
        let sys = CoxeterSystem::build(case.matrix.clone(), case.cap).unwrap();
        let theta = DiagramAutomorphism::from_swaps(&sys, &case.subset, &case.swaps).unwrap();
        let sub = TwistedSubgroup::enumerate(&sys, theta.clone(), case.cap).map_err(|e| e.to_string())?;
        let fixed: Vec<Element> = sys
            .elements()
            .filter(|&w| theta.in_parabolic(&sys, w) && theta.is_fixed(&sys, w).unwrap())
            .collect();
        ensure(fixed == sub.elements(), || {
            format!("{}: closure {} vs fixed filter {}", case.name, sub.order(), fixed.len())
        })?;
        let r = checks::check_fixed_subgroup(&sub).map_err(|e| e.to_string())?;
        ensure(r.is_success(), || format!("{}: {:?}", case.name, r.failures))?;
        cases += 1;
    }
    Ok(format!("closure equals fixed filter on {cases} systems"))
}

fn infinite_handling() -> Outcome {
    // s1 -inf- s2, s3 - s4; theta swaps both pairs
    let matrix = CoxeterMatrix::from_orders(&[
        vec![1, 0, 2, 2],
        vec![0, 1, 2, 2],
        vec![2, 2, 1, 3],
        vec![2, 2, 3, 1],
    ])
    .unwrap();
    ensure(matrix.bond(0, 1) == Bond::Infinite, || "bond not infinite".into())?;
    let sys = CoxeterSystem::build(matrix, 500).unwrap();
    ensure(!sys.is_complete() && sys.order() == 500, || "infinite group not truncated at cap".into())?;
    let theta = DiagramAutomorphism::from_swaps(&sys, &[0, 1, 2, 3], &[(0, 1), (2, 3)]).unwrap();
    let gens = twisted_generators(&sys, &theta).map_err(|e| e.to_string())?;
    ensure(gens.skipped == vec![vec![0, 1]], || format!("skipped {:?}", gens.skipped))?;
    ensure(gens.generators.len() == 1 && gens.generators[0].orbit == [2, 3], || {
        "a generator was emitted for the infinite orbit".into()
    })?;
    ensure(gens.generators[0].element == el(&sys, "343"), || "wrong generator".into())?;
    let sub = TwistedSubgroup::enumerate(&sys, theta, 100).map_err(|e| e.to_string())?;
    ensure(sub.skipped_orbits() == [vec![0, 1]], || "skip not reported by subgroup".into())?;
    ensure(sub.order() == 2, || format!("|W^theta| = {}", sub.order()))?;

    // infinite dihedral with theta = id: the subgroup is the whole group
    let inf = CoxeterSystem::build(named::matrix("I2(inf)").unwrap(), 60).unwrap();
    let id = DiagramAutomorphism::identity(&inf, &[0, 1]).unwrap();
    let err = TwistedSubgroup::enumerate(&inf, id.clone(), 40).err();
    ensure(matches!(err, Some(Error::CapExceeded(40))), || format!("capped subgroup: {err:?}"))?;
    let err = TwistedSubgroup::enumerate(&inf, id, 1000).err();
    ensure(matches!(err, Some(Error::OutOfEnumeratedRegion)), || format!("region: {err:?}"))?;
    let gens: Vec<Element> = inf.generators().collect();
    let ball = inf.enumerate_ball(&gens, 30);
    ensure(ball.truncation == Some(Truncation::Cap) && !ball.is_complete(), || "ball not flagged".into())?;
    let err = inf.longest_element(&[0, 1]).err();
    ensure(matches!(err, Some(Error::InfiniteParabolic(_))), || format!("longest element: {err:?}"))?;
    ensure(BruhatOracle::new(&inf).is_err(), || "oracle accepted a truncated group".into())?;
    let sub = TwistedSubgroup::enumerate(&sys, DiagramAutomorphism::from_swaps(&sys, &[2, 3], &[(2, 3)]).unwrap(), 100)
        .map_err(|e| e.to_string())?;
    let err = all_cosets(&sub).err();
    ensure(matches!(err, Some(Error::Incomplete)), || format!("cosets of truncated group: {err:?}"))?;
    Ok("infinite orbit skipped and reported; truncation flagged by ball, subgroup, oracle and cosets".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("F4 group order", group_order),
        ("F4 twisted subgroup", twisted_subgroup),
        ("F4 |Min| distribution", min_distribution),
        ("first F4 minimal-element graph", four_minimal_graph),
        ("second F4 minimal-element graph", sixteen_minimal_graph),
        ("verification suites on bundled systems", bundled_suites),
        ("Bruhat oracle equivalence", oracle_equivalence),
        ("fixed-subgroup equality", fixed_subgroup_equality),
        ("infinite-group handling", infinite_handling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{elapsed:.2?}] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{elapsed:.2?}] {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
