//! Brute-force oracles and exhaustive checkers that certify the core and
//! coset routines against definitions.
//!
//! [`run_suite`] drives every checker over a list of [`SystemCase`]s and
//! collects one [`VerificationReport`] per (system, suite) pair. Errors raised
//! while checking are recorded as failures, never propagated.

pub mod checks;
pub mod oracle;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::cosets::{all_cosets, CosetAnalysis};
use crate::error::{Error, Result};
use crate::named;
use crate::system::{CoxeterMatrix, CoxeterSystem, DEFAULT_CAP};
use crate::twisted::{DiagramAutomorphism, TwistedSubgroup};
use oracle::BruhatOracle;

/// Failures kept verbatim per report; the rest are only counted.
pub const MAX_STORED_FAILURES: usize = 25;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1152;

/// Outcome of one suite on one system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub system: String,
    pub checked: usize,
    pub passed: usize,
    /// Counterexamples, written with canonical words. At most
    /// [`MAX_STORED_FAILURES`] are kept.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    /// Seed of the random sample, when one was drawn.
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_owned(),
            system: String::new(),
            checked: 0,
            passed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            seed: None,
        }
    }

    pub fn is_success(&self) -> bool {
        self.passed == self.checked && self.failures.is_empty()
    }

    pub fn failed(&self) -> usize {
        self.checked - self.passed
    }

    pub(crate) fn absorb(&mut self, t: Tally) {
        self.checked += t.checked;
        self.passed += t.passed;
        self.failures.extend(t.failures);
        self.failures.truncate(MAX_STORED_FAILURES);
    }

    fn errored(suite: &str, system: &str, e: &dyn fmt::Display) -> Self {
        let mut r = Self::new(suite);
        r.system = system.to_owned();
        r.checked = 1;
        r.failures.push(format!("error: {e}"));
        r
    }
}

/// Running count of checks. Merging keeps the failures of the left operand
/// first, so parallel results merge in a fixed order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: usize,
    passed: usize,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(describe());
        }
    }

    pub(crate) fn fail(&mut self, message: String) {
        self.record(false, || message);
    }

    pub(crate) fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.passed += other.passed;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// The checkers [`run_suite`] knows about, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    BruhatOracle,
    InversionSets,
    Parabolic,
    CommutingReflections,
    AscentIsBruhat,
    EqualLengthLift,
    LengthAdditivity,
    FixedSubgroup,
    CosetPartition,
    MinChains,
    StepDichotomy,
    BruhatMinimal,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::BruhatOracle,
        Suite::InversionSets,
        Suite::Parabolic,
        Suite::CommutingReflections,
        Suite::AscentIsBruhat,
        Suite::EqualLengthLift,
        Suite::LengthAdditivity,
        Suite::FixedSubgroup,
        Suite::CosetPartition,
        Suite::MinChains,
        Suite::StepDichotomy,
        Suite::BruhatMinimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BruhatOracle => "bruhat-oracle",
            Suite::InversionSets => "inversion-sets",
            Suite::Parabolic => "parabolic",
            Suite::CommutingReflections => "commuting-reflections",
            Suite::AscentIsBruhat => "ascent-is-bruhat",
            Suite::EqualLengthLift => "equal-length-lift",
            Suite::LengthAdditivity => "length-additivity",
            Suite::FixedSubgroup => "fixed-subgroup",
            Suite::CosetPartition => "coset-partition",
            Suite::MinChains => "min-chains",
            Suite::StepDichotomy => "step-dichotomy",
            Suite::BruhatMinimal => "bruhat-minimal",
        }
    }

    fn needs_subgroup(self) -> bool {
        !matches!(
            self,
            Suite::BruhatOracle | Suite::InversionSets | Suite::Parabolic | Suite::CommutingReflections
        )
    }

    fn needs_cosets(self) -> bool {
        matches!(
            self,
            Suite::CosetPartition | Suite::MinChains | Suite::StepDichotomy | Suite::BruhatMinimal
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// A system to verify: a Coxeter matrix, `L` and the swaps of `θ`, all
/// 0-based.
#[derive(Debug, Clone)]
pub struct SystemCase {
    pub name: String,
    pub matrix: CoxeterMatrix,
    pub subset: Vec<usize>,
    pub swaps: Vec<(usize, usize)>,
    pub cap: usize,
    /// Edge labels for the twisted generators; empty for the defaults.
    pub nicknames: Vec<String>,
}

impl SystemCase {
    /// A named type with `L = S`.
    pub fn named(name: &str, swaps: &[(usize, usize)]) -> Result<Self> {
        let matrix = named::matrix(name)?;
        let subset = (0..matrix.rank()).collect();
        Ok(Self {
            name: if swaps.is_empty() {
                name.to_owned()
            } else {
                format!("{name} swap")
            },
            matrix,
            subset,
            swaps: swaps.to_vec(),
            cap: DEFAULT_CAP,
            nicknames: Vec::new(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub systems: Vec<SystemCase>,
    /// Suites to run; empty means all of them.
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Random pairs per sampled Bruhat comparison.
    pub samples: usize,
    /// Replace the Bruhat oracle by a wrong one. Negative control: every
    /// suite using the oracle should then report failures.
    pub corrupt_oracle: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            systems: Vec::new(),
            suites: Vec::new(),
            seed: DEFAULT_SEED,
            samples: 1000,
            corrupt_oracle: false,
        }
    }
}

impl SuiteConfig {
    pub fn bundled() -> Self {
        Self {
            systems: default_bundle(),
            ..Self::default()
        }
    }
}

/// The desk-scale systems verified by default.
pub fn default_bundle() -> Vec<SystemCase> {
    let mut cases = Vec::new();
    let mut push = |name: &str, swaps: &[(usize, usize)]| {
        cases.push(SystemCase::named(name, swaps).expect("bundled type"));
    };
    push("A1xA1", &[(0, 1)]);
    push("A2", &[(0, 1)]);
    push("A3", &[(0, 2)]);
    push("B2", &[]);
    for m in 2..=8 {
        push(&format!("I2({m})"), &[(0, 1)]);
    }
    push("A2xA2", &[(0, 2), (1, 3)]);
    push("B2xB2", &[(0, 2), (1, 3)]);
    push("F4", &[(0, 3), (1, 2)]);
    let mut a3 = SystemCase::named("A3", &[]).expect("bundled type");
    a3.name = "A3 L={1,2}".into();
    a3.subset = vec![0, 1];
    cases.push(a3);
    cases
}

/// Reports of a whole run, ordered by system then suite.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AggregateReport {
    pub reports: Vec<VerificationReport>,
}

impl AggregateReport {
    pub fn is_success(&self) -> bool {
        self.reports.iter().all(VerificationReport::is_success)
    }

    pub fn checked(&self) -> usize {
        self.reports.iter().map(|r| r.checked).sum()
    }

    pub fn failed(&self) -> usize {
        self.reports.iter().map(VerificationReport::failed).sum()
    }

    pub fn find(&self, system: &str, suite: Suite) -> Option<&VerificationReport> {
        self.reports
            .iter()
            .find(|r| r.system == system && r.suite == suite.name())
    }

    /// Plain-text table, followed by notes and counterexamples.
    pub fn to_table(&self) -> String {
        let sys_w = self.reports.iter().map(|r| r.system.len()).max().unwrap_or(0).max(6);
        let suite_w = self.reports.iter().map(|r| r.suite.len()).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:sys_w$}  {:suite_w$}  {:>9}  {:>9}  status",
            "system", "suite", "checked", "passed"
        );
        for r in &self.reports {
            let _ = writeln!(
                out,
                "{:sys_w$}  {:suite_w$}  {:>9}  {:>9}  {}",
                r.system,
                r.suite,
                r.checked,
                r.passed,
                if r.is_success() { "ok" } else { "FAIL" }
            );
        }
        for r in &self.reports {
            for n in &r.notes {
                let _ = writeln!(out, "note [{} / {}]: {n}", r.system, r.suite);
            }
            if let Some(seed) = r.seed {
                let _ = writeln!(out, "note [{} / {}]: seed {seed}", r.system, r.suite);
            }
        }
        for r in self.reports.iter().filter(|r| !r.is_success()) {
            for f in &r.failures {
                let _ = writeln!(out, "counterexample [{} / {}]: {f}", r.system, r.suite);
            }
            let hidden = r.failed().saturating_sub(r.failures.len());
            if hidden > 0 {
                let _ = writeln!(out, "counterexample [{} / {}]: ... {hidden} more", r.system, r.suite);
            }
        }
        let _ = writeln!(
            out,
            "total: {} checks, {} failed, {} reports",
            self.checked(),
            self.failed(),
            self.reports.len()
        );
        out
    }
}

/// Runs the configured suites on every configured system.
pub fn run_suite(config: &SuiteConfig) -> AggregateReport {
    let suites: Vec<Suite> = if config.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        let mut s = config.suites.clone();
        s.sort_unstable();
        s.dedup();
        s
    };
    let mut reports = Vec::new();
    for case in &config.systems {
        reports.extend(run_case(case, &suites, config));
    }
    AggregateReport { reports }
}

fn run_case(case: &SystemCase, suites: &[Suite], config: &SuiteConfig) -> Vec<VerificationReport> {
    let fail_all = |e: &dyn fmt::Display| {
        suites
            .iter()
            .map(|s| VerificationReport::errored(s.name(), &case.name, e))
            .collect()
    };
    let sys = match CoxeterSystem::build(case.matrix.clone(), case.cap) {
        Ok(sys) => sys,
        Err(e) => return fail_all(&e),
    };
    if !sys.is_complete() {
        return fail_all(&Error::CapExceeded(case.cap));
    }
    let sub = suites.iter().any(|s| s.needs_subgroup()).then(|| {
        DiagramAutomorphism::from_swaps(&sys, &case.subset, &case.swaps)
            .and_then(|theta| TwistedSubgroup::enumerate(&sys, theta, case.cap))
            .map(|sub| sub.with_nicknames(&case.nicknames))
    });
    let cosets: Option<Result<Vec<CosetAnalysis>, String>> =
        suites.iter().any(|s| s.needs_cosets()).then(|| match &sub {
            Some(Ok(sub)) => all_cosets(sub).map_err(|e| e.to_string()),
            Some(Err(e)) => Err(e.to_string()),
            None => unreachable!("coset suites need the subgroup"),
        });
    let oracle = suites
        .iter()
        .any(|s| matches!(s, Suite::BruhatOracle | Suite::BruhatMinimal))
        .then(|| {
            if config.corrupt_oracle {
                Ok(BruhatOracle::corrupted(&sys))
            } else {
                BruhatOracle::new(&sys)
            }
        });

    let mut out = Vec::with_capacity(suites.len());
    for &suite in suites {
        let result: std::result::Result<VerificationReport, String> = (|| {
            let sub = match &sub {
                Some(Ok(s)) => Some(s),
                Some(Err(e)) if suite.needs_subgroup() => return Err(e.to_string()),
                _ => None,
            };
            let cosets = match &cosets {
                Some(Ok(c)) => Some(c.as_slice()),
                Some(Err(e)) if suite.needs_cosets() => return Err(e.clone()),
                _ => None,
            };
            let oracle = match &oracle {
                Some(Ok(o)) => Some(o),
                Some(Err(e)) if suite == Suite::BruhatOracle => return Err(e.to_string()),
                _ => None,
            };
            let sub = || sub.expect("subgroup built");
            let cosets = || cosets.expect("cosets built");
            let e = |r: Result<VerificationReport>| r.map_err(|e| e.to_string());
            Ok(match suite {
                Suite::BruhatOracle => {
                    checks::check_bruhat_oracle(&sys, oracle.expect("oracle built"), config.seed, config.samples)
                }
                Suite::InversionSets => e(checks::check_inversion_sets(&sys))?,
                Suite::Parabolic => e(checks::check_parabolic(&sys))?,
                Suite::CommutingReflections => e(checks::check_commuting_reflections(&sys))?,
                Suite::AscentIsBruhat => e(checks::check_ascent_is_bruhat(sub()))?,
                Suite::EqualLengthLift => e(checks::check_equal_length_lift(sub()))?,
                Suite::LengthAdditivity => e(checks::check_length_additivity(sub()))?,
                Suite::FixedSubgroup => e(checks::check_fixed_subgroup(sub()))?,
                Suite::CosetPartition => checks::check_coset_partition(sub(), cosets()),
                Suite::MinChains => checks::check_min_chains(sub(), cosets()),
                Suite::StepDichotomy => checks::check_step_dichotomy(sub(), cosets()),
                Suite::BruhatMinimal => checks::check_bruhat_minimal(sub(), cosets(), oracle),
            })
        })();
        let mut report = match result {
            Ok(r) => r,
            Err(msg) => VerificationReport::errored(suite.name(), &case.name, &msg),
        };
        report.system = case.name.clone();
        out.push(report);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_runs_nothing() {
        let report = run_suite(&SuiteConfig::default());
        assert!(report.reports.is_empty());
        assert_eq!(report.checked(), 0);
        assert!(report.is_success());
    }

    #[test]
    fn small_bundle_passes() {
        let config = SuiteConfig {
            systems: vec![
                SystemCase::named("A1xA1", &[(0, 1)]).unwrap(),
                SystemCase::named("A3", &[(0, 2)]).unwrap(),
                SystemCase::named("B2", &[]).unwrap(),
            ],
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert_eq!(report.reports.len(), 3 * Suite::ALL.len());
        assert!(report.is_success(), "{}", report.to_table());
        for r in &report.reports {
            assert!(r.checked > 0, "{} / {}", r.system, r.suite);
        }
    }

    #[test]
    fn corrupted_oracle_is_caught() {
        let config = SuiteConfig {
            systems: vec![SystemCase::named("A2", &[(0, 1)]).unwrap()],
            suites: vec![Suite::BruhatOracle, Suite::BruhatMinimal],
            corrupt_oracle: true,
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert!(!report.is_success());
        let r = report.find("A2 swap", Suite::BruhatOracle).unwrap();
        assert!(r.failed() > 0 && !r.failures.is_empty());
    }

    #[test]
    fn infinite_system_is_reported_not_panicked() {
        let mut case = SystemCase::named("I2(inf)", &[(0, 1)]).unwrap();
        case.cap = 40;
        let config = SuiteConfig {
            systems: vec![case],
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert!(!report.is_success());
        assert!(report.reports.iter().all(|r| !r.failures.is_empty()));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn tally_invariant() {
        let mut t = Tally::default();
        for i in 0..100 {
            t.record(i % 3 != 0, || format!("case {i}"));
        }
        let mut r = VerificationReport::new("x");
        r.absorb(t);
        assert_eq!(r.checked, 100);
        assert_eq!(r.passed, 66);
        assert_eq!(r.failures.len(), MAX_STORED_FAILURES);
        assert!(!r.is_success());
    }
}
