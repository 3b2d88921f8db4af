use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::report::{Decimal, ReportRow, RowStatus};
use super::sample::{sample_trial, SampleSpec};
use crate::error::{Error, Result};
use crate::inversion::{auto_invert, invert_with, CertifiedInverse, Theorem};
use crate::tol;

/// Which pipeline a campaign runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    /// First applicable pipeline, per trial.
    Auto,
    Fixed(Theorem),
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pipeline::Auto => f.write_str("auto"),
            Pipeline::Fixed(t) => t.fmt(f),
        }
    }
}

impl std::str::FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(Pipeline::Auto)
        } else {
            s.parse().map(Pipeline::Fixed)
        }
    }
}

impl From<Theorem> for Pipeline {
    fn from(t: Theorem) -> Self {
        Pipeline::Fixed(t)
    }
}

impl Serialize for Pipeline {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pipeline {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremBreakdown {
    pub trials: usize,
    pub violations: usize,
    pub certified_bound: f64,
    pub max_actual_norm: f64,
    pub min_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub spec: SampleSpec,
    pub pipeline: Pipeline,
    pub trials: usize,
    /// Trials with `actual_norm > certified_bound + 1e-9`.
    pub violations: usize,
    /// Largest certified bound over the trials (constant for a fixed pipeline).
    pub certified_bound: f64,
    pub max_actual_norm: f64,
    pub min_slack: f64,
    pub max_residual: f64,
    pub max_oracle_distance: f64,
    /// Number of trials failing each named intermediate check.
    pub check_failures: BTreeMap<String, usize>,
    pub per_theorem: BTreeMap<Theorem, TheoremBreakdown>,
}

impl CertificationReport {
    pub fn status(&self) -> RowStatus {
        if self.violations == 0 {
            RowStatus::Ok
        } else {
            RowStatus::Violated
        }
    }

    /// CSV row, echoing `p` and `delta` as given.
    pub fn to_row(&self, p: Decimal, delta: Decimal) -> ReportRow {
        ReportRow {
            kind: self.spec.kind.family(),
            p,
            delta,
            group: self.spec.group.clone(),
            theorem: self.pipeline.to_string(),
            trials: self.trials,
            violations: self.violations,
            certified_bound: Some(self.certified_bound),
            max_actual: Some(self.max_actual_norm),
            min_slack: Some(self.min_slack),
            status: self.status(),
        }
    }
}

/// Samples `trials` elements from `spec`, runs `pipeline` on each at the
/// spec's `δ`, and aggregates. Trial `i` uses stream `i` of the seed.
pub fn certify_campaign(
    spec: &SampleSpec,
    pipeline: Pipeline,
    trials: usize,
    execution: Execution,
) -> Result<CertificationReport> {
    if trials == 0 {
        return Err(Error::Domain("a campaign needs at least one trial".into()));
    }
    if let Pipeline::Fixed(theorem) = pipeline {
        theorem.check_applicable(spec.kind, spec.delta)?;
    }
    let run = |i: usize| -> Result<CertifiedInverse> {
        let x = sample_trial(spec, i as u64)?;
        match pipeline {
            Pipeline::Auto => auto_invert(&x, spec.kind, Some(spec.delta)),
            Pipeline::Fixed(theorem) => invert_with(theorem, &x, spec.kind, Some(spec.delta)),
        }
    };
    let outcomes: Vec<CertifiedInverse> = match execution {
        Execution::Serial => (0..trials).map(run).collect::<Result<_>>()?,
        Execution::Parallel => (0..trials).into_par_iter().map(run).collect::<Result<_>>()?,
    };
    Ok(aggregate(spec, pipeline, &outcomes))
}

fn aggregate(spec: &SampleSpec, pipeline: Pipeline, outcomes: &[CertifiedInverse]) -> CertificationReport {
    let mut report = CertificationReport {
        spec: spec.clone(),
        pipeline,
        trials: outcomes.len(),
        violations: 0,
        certified_bound: 0.0,
        max_actual_norm: 0.0,
        min_slack: f64::INFINITY,
        max_residual: 0.0,
        max_oracle_distance: 0.0,
        check_failures: BTreeMap::new(),
        per_theorem: BTreeMap::new(),
    };
    for out in outcomes {
        let violated = out.actual_norm > out.certified_bound + tol::BOUND;
        let slack = out.slack();
        report.violations += violated as usize;
        report.certified_bound = report.certified_bound.max(out.certified_bound);
        report.max_actual_norm = report.max_actual_norm.max(out.actual_norm);
        report.min_slack = report.min_slack.min(slack);
        report.max_residual = report.max_residual.max(out.diagnostics.residual);
        if let Some(d) = out.diagnostics.oracle_distance {
            report.max_oracle_distance = report.max_oracle_distance.max(d);
        }
        for check in out.diagnostics.failed_checks() {
            *report.check_failures.entry(check.name.clone()).or_default() += 1;
        }
        let entry = report.per_theorem.entry(out.theorem).or_insert(TheoremBreakdown {
            trials: 0,
            violations: 0,
            certified_bound: 0.0,
            max_actual_norm: 0.0,
            min_slack: f64::INFINITY,
        });
        entry.trials += 1;
        entry.violations += violated as usize;
        entry.certified_bound = entry.certified_bound.max(out.certified_bound);
        entry.max_actual_norm = entry.max_actual_norm.max(out.actual_norm);
        entry.min_slack = entry.min_slack.min(slack);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::group::Group;
    use crate::harness::Strategy;

    fn spec(kind: AlgebraKind, delta: f64) -> SampleSpec {
        SampleSpec::new(Group::cyclic(8).unwrap(), kind, delta, 7, Strategy::BoundaryBiased).unwrap()
    }

    #[test]
    fn thm5_campaign() {
        let s = spec(AlgebraKind::ap(2.0).unwrap(), 0.5);
        let r = certify_campaign(&s, Theorem::Thm5.into(), 200, Execution::Parallel).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.certified_bound, 6.0);
        assert!(r.check_failures.is_empty(), "{:?}", r.check_failures);
        assert!(r.max_oracle_distance < 1e-9);
    }

    #[test]
    fn splitting_campaign() {
        let s = spec(AlgebraKind::ap(1.0).unwrap(), 0.75);
        let r = certify_campaign(&s, Theorem::Splitting.into(), 200, Execution::Serial).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.max_actual_norm <= 2.0 + 1e-9);
    }

    #[test]
    fn inapplicable_is_rejected_before_sampling() {
        let s = spec(AlgebraKind::ap(3.0).unwrap(), 0.3);
        let err = certify_campaign(&s, Theorem::Thm6.into(), 10, Execution::Serial).unwrap_err();
        assert_eq!(err.to_string(), "thm6 requires delta > 1/3");
    }

    #[test]
    fn serial_and_parallel_agree() {
        let s = spec(AlgebraKind::lp(3.0).unwrap(), 0.4);
        let a = certify_campaign(&s, Pipeline::Auto, 64, Execution::Serial).unwrap();
        let b = certify_campaign(&s, Pipeline::Auto, 64, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.per_theorem.values().map(|t| t.trials).sum::<usize>(), 64);
        let json = serde_json::to_string(&a).unwrap();
        let back: CertificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn pipeline_names() {
        assert_eq!("auto".parse::<Pipeline>().unwrap(), Pipeline::Auto);
        assert_eq!("lp2".parse::<Pipeline>().unwrap(), Pipeline::Fixed(Theorem::ThmLp2));
        assert_eq!(Pipeline::Fixed(Theorem::Thm7).to_string(), "thm7");
    }
}
