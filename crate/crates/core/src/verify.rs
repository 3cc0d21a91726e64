//! Seeded randomized checks over random curves, aggregated in trial order.
//!
//! Trial `t` of a run with seed `s` draws its curve seed as the first
//! `u64` of ChaCha8 seeded by `s` on stream `t`; its boundary node count
//! is `t mod (n + 1)`, so consecutive trials sweep every depth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curves::{canonical_form, omega, random_curve, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::mr_ideal::is_member;
use crate::reconstruct::{bad_configurations_with, color_leaves, reconstruct, BadConfiguration, Color, SeparationTable};
use crate::tangent::{compare_with_jacobian, jacobian_nullity};
use crate::trees::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Membership,
    RoundTrip,
    Nullity,
    Constructive,
    Separation,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Membership, Check::RoundTrip, Check::Nullity, Check::Constructive, Check::Separation];

    pub fn name(self) -> &'static str {
        match self {
            Check::Membership => "membership",
            Check::RoundTrip => "round-trip",
            Check::Nullity => "nullity",
            Check::Constructive => "constructive",
            Check::Separation => "separation",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

/// The curve seed and boundary node count of one trial.
pub fn trial_parameters(seed: u64, trial: u64, n: u32) -> (u64, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (rng.next_u64(), (trial % (n as u64 + 1)) as u32)
}

/// Bad configurations of every level's coloring, in both scenarios: zero
/// against nonzero, and each nonzero value against everything else.
pub fn separation_violations(curve: &MarkedCurve, point: &MultiPoint) -> Result<Vec<BadConfiguration>> {
    let mut bad = Vec::new();
    for l in 2..=point.n() {
        let tree = curve.restrict(l - 1)?.shape();
        let coloring = color_leaves(&tree, point.factor(l));
        let table = SeparationTable::new(&tree)?;
        let zero = coloring.labels_with(&Color::Z);
        let nonzero: BTreeSet<Label> = coloring.colors.keys().filter(|x| !zero.contains(x)).copied().collect();
        bad.extend(bad_configurations_with(&table, l - 1, &nonzero));
        for beta in coloring.nonzero_colors() {
            bad.extend(bad_configurations_with(&table, l - 1, &coloring.labels_with(&Color::Value(beta))));
        }
    }
    Ok(bad)
}

fn run_check(check: Check, curve: &MarkedCurve, point: &MultiPoint) -> Result<Option<String>> {
    let n = curve.top();
    Ok(match check {
        Check::Membership => {
            let v = is_member(point);
            (!v.is_empty()).then(|| format!("{} generators do not vanish, first {}", v.len(), v[0]))
        }
        Check::RoundTrip => {
            let back = reconstruct(point)?;
            (canonical_form(&back) != canonical_form(curve)).then(|| "reconstruction differs".to_string())
        }
        Check::Nullity => {
            let k = jacobian_nullity(point)?;
            (k != n as usize).then(|| format!("nullity {k}, expected {n}"))
        }
        Check::Constructive => {
            let c = compare_with_jacobian(curve)?;
            (!c.holds()).then(|| format!("{c:?}"))
        }
        Check::Separation => {
            let bad = separation_violations(curve, point)?;
            (!bad.is_empty()).then(|| format!("{} bad configurations, first {}", bad.len(), bad[0]))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub seed: u64,
    pub check: Check,
    pub detail: String,
}

/// Results of one trial, one entry per requested check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub seed: u64,
    pub results: Vec<(Check, Option<String>)>,
}

pub fn run_trial(n: u32, seed: u64, trial: u64, checks: &[Check]) -> TrialOutcome {
    let (curve_seed, nodes) = trial_parameters(seed, trial, n);
    let setup = random_curve(n, curve_seed, nodes).and_then(|c| Ok((omega(&c)?, c)));
    let results = checks
        .iter()
        .map(|&check| {
            let r = match &setup {
                Ok((point, curve)) => run_check(check, curve, point).unwrap_or_else(|e| Some(e.to_string())),
                Err(e) => Some(e.to_string()),
            };
            (check, r)
        })
        .collect();
    TrialOutcome { trial, seed: curve_seed, results }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub attempted: u64,
    pub passed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub seed: u64,
    pub trials: u64,
    pub checks: BTreeMap<Check, CheckCount>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    /// Aggregates outcomes, which must be in trial order.
    pub fn aggregate(n: u32, seed: u64, outcomes: &[TrialOutcome]) -> Self {
        let mut checks: BTreeMap<Check, CheckCount> = BTreeMap::new();
        let mut failures = Vec::new();
        for o in outcomes {
            for (check, r) in &o.results {
                let c = checks.entry(*check).or_default();
                c.attempted += 1;
                match r {
                    None => c.passed += 1,
                    Some(detail) => {
                        failures.push(Failure { trial: o.trial, seed: o.seed, check: *check, detail: detail.clone() })
                    }
                }
            }
        }
        VerifyReport { n, seed, trials: outcomes.len() as u64, checks, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, seed = {}, trials = {}", self.n, self.seed, self.trials)?;
        for (check, c) in &self.checks {
            writeln!(f, "  {:<13} {}/{}", check.name(), c.passed, c.attempted)?;
        }
        for x in &self.failures {
            writeln!(f, "  FAIL trial {} (curve seed {}) {}: {}", x.trial, x.seed, x.check, x.detail)?;
        }
        Ok(())
    }
}

/// Sequential run of `trials` trials.
pub fn verify(n: u32, trials: u64, seed: u64, checks: &[Check]) -> VerifyReport {
    let outcomes: Vec<TrialOutcome> = (0..trials).map(|t| run_trial(n, seed, t, checks)).collect();
    VerifyReport::aggregate(n, seed, &outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = verify(4, 10, 7, &Check::ALL);
        assert!(a.passed(), "{a}");
        assert_eq!(a.checks[&Check::Nullity].attempted, 10);
        assert_eq!(a, verify(4, 10, 7, &Check::ALL));
        assert_ne!(trial_parameters(7, 0, 4).0, trial_parameters(7, 1, 4).0);
    }

    #[test]
    fn check_names_parse() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }
}
