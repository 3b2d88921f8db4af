use serde::{Deserialize, Serialize};

use super::campaign::{certify_campaign, Execution, Pipeline};
use super::report::{Decimal, ReportRow, RowStatus};
use super::sample::{SampleSpec, Strategy};
use crate::algebra::{AlgebraKind, Family};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::inversion::Theorem;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub ps: Vec<Decimal>,
    pub deltas: Vec<Decimal>,
    pub groups: Vec<Group>,
    pub pipelines: Vec<Pipeline>,
    pub trials: usize,
    pub seed: u64,
    pub strategy: Strategy,
    #[serde(skip)]
    pub execution: Execution,
}

fn theorem_family(t: Theorem) -> Option<Family> {
    match t {
        Theorem::Thm5 | Theorem::Thm6 | Theorem::Thm7 => Some(Family::Ap),
        Theorem::ThmLp1 | Theorem::ThmLp2 => Some(Family::Lp),
        Theorem::Splitting | Theorem::Oracle => None,
    }
}

/// One row per `(family, p, δ, group, pipeline)`, in that nesting order.
/// Pipelines belonging to the other family are left out; cells whose
/// hypotheses cannot hold are reported as skipped. Every cell reuses the
/// configured seed.
pub fn sweep(config: &SweepConfig) -> Result<Vec<ReportRow>> {
    let grids = [
        ("families", config.families.is_empty()),
        ("ps", config.ps.is_empty()),
        ("deltas", config.deltas.is_empty()),
        ("groups", config.groups.is_empty()),
        ("pipelines", config.pipelines.is_empty()),
    ];
    if let Some((name, _)) = grids.iter().find(|(_, empty)| *empty) {
        return Err(Error::Domain(format!("sweep grid {name} is empty")));
    }

    let mut rows = Vec::new();
    for &family in &config.families {
        for p in &config.ps {
            let kind = AlgebraKind::new(family, p.value())?;
            for delta in &config.deltas {
                for group in &config.groups {
                    for &pipeline in &config.pipelines {
                        if let Pipeline::Fixed(t) = pipeline {
                            if theorem_family(t).is_some_and(|f| f != family) {
                                continue;
                            }
                        }
                        rows.push(cell(config, kind, p, delta, group, pipeline)?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn cell(
    config: &SweepConfig,
    kind: AlgebraKind,
    p: &Decimal,
    delta: &Decimal,
    group: &Group,
    pipeline: Pipeline,
) -> Result<ReportRow> {
    let spec = SampleSpec::new(group.clone(), kind, delta.value(), config.seed, config.strategy)?;
    let formula = match pipeline {
        Pipeline::Fixed(t) => match t.certified_bound(kind, delta.value()) {
            Ok(b) => b,
            Err(Error::HypothesisViolated { .. }) => {
                return Ok(ReportRow {
                    kind: kind.family(),
                    p: p.clone(),
                    delta: delta.clone(),
                    group: group.clone(),
                    theorem: pipeline.to_string(),
                    trials: 0,
                    violations: 0,
                    certified_bound: None,
                    max_actual: None,
                    min_slack: None,
                    status: RowStatus::Skipped,
                })
            }
            Err(e) => return Err(e),
        },
        Pipeline::Auto => None,
    };
    match certify_campaign(&spec, pipeline, config.trials, config.execution) {
        Ok(report) => Ok(report.to_row(p.clone(), delta.clone())),
        Err(Error::SamplingExhausted(_)) => Ok(ReportRow {
            kind: kind.family(),
            p: p.clone(),
            delta: delta.clone(),
            group: group.clone(),
            theorem: pipeline.to_string(),
            trials: 0,
            violations: 0,
            certified_bound: formula,
            max_actual: None,
            min_slack: None,
            status: RowStatus::SamplingExhausted,
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decimals(xs: &[&str]) -> Vec<Decimal> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn config(families: Vec<Family>, ps: &[&str], deltas: &[&str], pipelines: Vec<Pipeline>) -> SweepConfig {
        SweepConfig {
            families,
            ps: decimals(ps),
            deltas: decimals(deltas),
            groups: vec![Group::cyclic(8).unwrap()],
            pipelines,
            trials: 20,
            seed: 1,
            strategy: Strategy::BoundaryBiased,
            execution: Execution::Parallel,
        }
    }

    #[test]
    fn splitting_bounds() {
        let rows = sweep(&config(vec![Family::Ap], &["1"], &["0.6", "0.75"], vec![Theorem::Splitting.into()])).unwrap();
        let bounds: Vec<f64> = rows.iter().map(|r| r.certified_bound.unwrap()).collect();
        assert!((bounds[0] - 5.0).abs() < 1e-12);
        assert_eq!(bounds[1], 2.0);
        assert!(rows.iter().all(|r| r.status == RowStatus::Ok));
    }

    #[test]
    fn thm5_and_skipped_rows() {
        let rows = sweep(&config(
            vec![Family::Ap, Family::Lp],
            &["2", "3"],
            &["0.3", "0.5"],
            vec![Theorem::Thm5.into(), Theorem::Thm6.into(), Theorem::ThmLp2.into()],
        ))
        .unwrap();
        let find = |fam: Family, p: &str, d: &str, t: &str| {
            rows.iter()
                .find(|r| r.kind == fam && r.p.as_str() == p && r.delta.as_str() == d && r.theorem == t)
                .unwrap()
        };
        assert_eq!(find(Family::Ap, "2", "0.5", "thm5").certified_bound, Some(6.0));
        assert_eq!(find(Family::Ap, "3", "0.3", "thm6").status, RowStatus::Skipped);
        assert_eq!(find(Family::Ap, "3", "0.5", "thm6").status, RowStatus::Ok);
        assert_eq!(find(Family::Lp, "3", "0.3", "lp2").status, RowStatus::Ok);
        assert!(rows.iter().all(|r| !(r.kind == Family::Lp && r.theorem.starts_with("thm"))));
        assert!(rows.iter().all(|r| r.violations == 0));
    }

    #[test]
    fn empty_grid() {
        let c = config(vec![Family::Ap], &[], &["0.5"], vec![Pipeline::Auto]);
        assert!(matches!(sweep(&c), Err(Error::Domain(_))));
    }
}
