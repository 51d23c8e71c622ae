//! Evaluation driver: runs every algorithm (and optionally the oracle) on
//! an instance, checks the competitive bounds with exact arithmetic, and
//! aggregates sweeps over generated instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{run_ljllm, run_lpt, run_ls, Flatten};
use crate::metrics::{idle_profile, source_stats, verify_schedule};
use crate::model::{Instance, Schedule, Time};
use crate::oracle::{competitive_ratio, greedy_bound, lower_bound, lpt_bound, Oracle, Ratio};
use crate::trace_io::{format_ratio, instance_digest, opt_ratio_str, ratio_str};
use crate::workloads::{generate, Family, GenSpec, WorkloadError};

/// One value per evaluated algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerAlgorithm<T> {
    pub ljllm: T,
    pub ls_concatenate: T,
    pub ls_round_robin: T,
    pub lpt: T,
}

impl<T> PerAlgorithm<T> {
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> PerAlgorithm<U> {
        PerAlgorithm {
            ljllm: f(&self.ljllm),
            ls_concatenate: f(&self.ls_concatenate),
            ls_round_robin: f(&self.ls_round_robin),
            lpt: f(&self.lpt),
        }
    }

    pub fn entries(&self) -> [(&'static str, &T); 4] {
        [
            ("ljllm", &self.ljllm),
            ("ls_concatenate", &self.ls_concatenate),
            ("ls_round_robin", &self.ls_round_robin),
            ("lpt", &self.lpt),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one check. `value` and `bound` are the two sides of the
/// comparison when one was made (`value <= bound`, or `==` for equalities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub status: Status,
    pub value: Option<String>,
    pub bound: Option<String>,
}

impl Check {
    pub fn not_applicable() -> Self {
        Self {
            status: Status::NotApplicable,
            value: None,
            bound: None,
        }
    }

    fn compare(holds: bool, value: String, bound: String) -> Self {
        Self {
            status: if holds { Status::Pass } else { Status::Fail },
            value: Some(value),
            bound: Some(bound),
        }
    }

    fn ratio_at_most(ratio: Ratio, bound: Ratio) -> Self {
        Self::compare(ratio <= bound, format_ratio(&ratio), format_ratio(&bound))
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Every check evaluated for an instance. Bound checks compare the LJLLM
/// schedule unless noted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    /// All four schedules pass `verify_schedule`.
    pub validity: Check,
    /// `m * C_max == sum p + sum idle` for the LJLLM schedule.
    pub accounting: Check,
    /// Idle total `<= (m - 1) * p_b`.
    pub eq4: Check,
    /// `k = 1`: LJLLM equals LS; `k = n`: LJLLM makespan equals LPT's.
    pub degeneracy: Check,
    /// `lower_bound <= opt <= every algorithm's makespan`.
    pub sandwich: Check,
    /// ratio `<= 2 - 1/m`.
    pub theorem1: Check,
    /// Unit jobs: ratio `<= 2`.
    pub corollary13: Check,
    /// `k = n`: ratio `<= 4/3 - 1/(3m)`.
    pub lemma14: Check,
    /// `m = 1` or `n <= m`: ratio `== 1`.
    pub lemma15: Check,
}

impl Checks {
    pub fn entries(&self) -> [(&'static str, &Check); 9] {
        [
            ("validity", &self.validity),
            ("accounting", &self.accounting),
            ("eq4", &self.eq4),
            ("degeneracy", &self.degeneracy),
            ("sandwich", &self.sandwich),
            ("theorem1", &self.theorem1),
            ("corollary13", &self.corollary13),
            ("lemma14", &self.lemma14),
            ("lemma15", &self.lemma15),
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.passed())
    }
}

/// Idle total of one schedule and whether it stays within `(m - 1) * p_b`.
/// Only the LJLLM entry is asserted (as `checks.eq4`); the others are
/// recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdleRecord {
    pub total: Time,
    pub within_eq4: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceStatsRow {
    pub list: usize,
    pub jobs: usize,
    pub total_size: Time,
    pub last_finish: Time,
    #[serde(with = "ratio_str")]
    pub mean_finish: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratios {
    #[serde(with = "opt_ratio_str")]
    pub ljllm: Option<Ratio>,
    #[serde(with = "opt_ratio_str")]
    pub ls_concatenate: Option<Ratio>,
    #[serde(with = "opt_ratio_str")]
    pub ls_round_robin: Option<Ratio>,
    #[serde(with = "opt_ratio_str")]
    pub lpt: Option<Ratio>,
}

impl Ratios {
    fn from_makespans(makespans: &PerAlgorithm<Time>, opt: Option<Time>) -> Self {
        let r = |c: Time| opt.and_then(|o| competitive_ratio(c, o).ok());
        Self {
            ljllm: r(makespans.ljllm),
            ls_concatenate: r(makespans.ls_concatenate),
            ls_round_robin: r(makespans.ls_round_robin),
            lpt: r(makespans.lpt),
        }
    }

    pub fn entries(&self) -> [(&'static str, Option<Ratio>); 4] {
        [
            ("ljllm", self.ljllm),
            ("ls_concatenate", self.ls_concatenate),
            ("ls_round_robin", self.ls_round_robin),
            ("lpt", self.lpt),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub digest: String,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub total_ptime: Time,
    pub max_ptime: Time,
    pub lower_bound: Time,
    pub makespans: PerAlgorithm<Time>,
    pub opt: Option<Time>,
    /// Why `opt` is absent.
    pub opt_reason: Option<String>,
    pub ratios: Ratios,
    pub checks: Checks,
    pub idle: PerAlgorithm<IdleRecord>,
    /// Per-source statistics of the LJLLM schedule.
    pub source_stats: Vec<SourceStatsRow>,
}

impl EvaluationReport {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }
}

/// Runs LJLLM, LS (both flatten modes) and LPT on `instance`; with an
/// oracle, also the exact optimum and every ratio check that needs it.
pub fn evaluate(instance: &Instance, oracle: Option<&Oracle>) -> EvaluationReport {
    let m = instance.m();
    let n = instance.n();
    let total = instance.total_ptime();
    let p_max = instance.max_ptime();
    let floor = lower_bound(instance);

    let schedules = PerAlgorithm {
        ljllm: run_ljllm(instance),
        ls_concatenate: run_ls(instance, Flatten::Concatenate),
        ls_round_robin: run_ls(instance, Flatten::RoundRobin),
        lpt: run_lpt(instance),
    };
    let makespans = schedules.map(|s| s.makespan);

    let validity = schedules
        .entries()
        .into_iter()
        .find_map(|(name, s)| {
            verify_schedule(instance, s)
                .err()
                .map(|v| format!("{name}: {v}"))
        })
        .map_or_else(
            || Check::compare(true, "ok".into(), "ok".into()),
            |msg| Check::compare(false, msg, "ok".into()),
        );

    let eq4_limit = (m as Time - 1) * p_max;
    let idle = schedules.map(|s| {
        let total = idle_profile(s).total;
        IdleRecord {
            total,
            within_eq4: total <= eq4_limit,
        }
    });
    let eq4 = Check::compare(
        idle.ljllm.within_eq4,
        idle.ljllm.total.to_string(),
        eq4_limit.to_string(),
    );
    let capacity = m as Time * makespans.ljllm;
    let accounted = total + idle.ljllm.total;
    let accounting = Check::compare(
        capacity == accounted,
        capacity.to_string(),
        accounted.to_string(),
    );

    let degeneracy = degeneracy_check(instance, &schedules);

    let (opt, opt_reason) = match oracle.map(|o| o.solve(instance)) {
        None => (None, Some("OracleDisabled".to_string())),
        Some(Ok(r)) => (Some(r.opt_makespan), None),
        Some(Err(e)) => (None, Some(e.reason().to_string())),
    };
    let ratios = Ratios::from_makespans(&makespans, opt);

    let sandwich = match opt {
        Some(o) => {
            let best = *makespans.entries().iter().map(|(_, c)| *c).min().unwrap();
            Check::compare(
                floor <= o && o <= best,
                o.to_string(),
                format!("[{floor}, {best}]"),
            )
        }
        None => Check::not_applicable(),
    };

    let ljllm_ratio = ratios.ljllm;
    let bound_check = |applies: bool, bound: Ratio| match ljllm_ratio {
        Some(r) if applies => Check::ratio_at_most(r, bound),
        _ => Check::not_applicable(),
    };
    let unit = instance.lists().iter().flatten().all(|&p| p == 1);
    let single_batch = instance.k() == n;
    let trivial = m == 1 || n <= m;

    let theorem1 = bound_check(true, greedy_bound(m));
    let corollary13 = bound_check(unit, Ratio::from_integer(2));
    let lemma14 = bound_check(single_batch, lpt_bound(m));
    let lemma15 = match ljllm_ratio {
        Some(r) if trivial => {
            let one = Ratio::from_integer(1);
            Check::compare(r == one, format_ratio(&r), format_ratio(&one))
        }
        _ => Check::not_applicable(),
    };

    let source_stats = source_stats(&schedules.ljllm)
        .rows
        .into_iter()
        .map(|r| SourceStatsRow {
            list: r.list_id,
            jobs: r.jobs,
            total_size: r.total_size,
            last_finish: r.last_finish,
            mean_finish: r.mean_finish,
        })
        .collect();

    EvaluationReport {
        digest: instance_digest(instance),
        m,
        k: instance.k(),
        n,
        total_ptime: total,
        max_ptime: p_max,
        lower_bound: floor,
        makespans,
        opt,
        opt_reason,
        ratios,
        checks: Checks {
            validity,
            accounting,
            eq4,
            degeneracy,
            sandwich,
            theorem1,
            corollary13,
            lemma14,
            lemma15,
        },
        idle,
        source_stats,
    }
}

fn degeneracy_check(instance: &Instance, schedules: &PerAlgorithm<Schedule>) -> Check {
    if instance.k() == 1 {
        let same = schedules.ljllm.assignments == schedules.ls_concatenate.assignments;
        Check::compare(
            same,
            format!("ljllm {}", schedules.ljllm.makespan),
            format!("ls {}", schedules.ls_concatenate.makespan),
        )
    } else if instance.k() == instance.n() {
        Check::compare(
            schedules.ljllm.makespan == schedules.lpt.makespan,
            format!("ljllm {}", schedules.ljllm.makespan),
            format!("lpt {}", schedules.lpt.makespan),
        )
    } else {
        Check::not_applicable()
    }
}

/// Inputs of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub specs: Vec<GenSpec>,
    /// Instances per spec; instance `j` uses seed `spec.seed + j`.
    pub seeds_per_spec: u64,
    pub oracle: Option<Oracle>,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub spec_index: usize,
    pub family: Family,
    pub seed: u64,
    pub report: EvaluationReport,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstRatio {
    pub family: Family,
    pub m: usize,
    pub algorithm: String,
    #[serde(with = "ratio_str")]
    pub ratio: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: u64,
    pub oracle_solved: u64,
    pub checks: BTreeMap<String, CheckCounts>,
    /// Largest observed ratio per (family, m, algorithm).
    pub worst: Vec<WorstRatio>,
    pub passed: bool,
}

impl SweepSummary {
    /// One `<check>: <n> failures` line per check, then a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (name, c) in &self.checks {
            writeln!(
                out,
                "{name}: {} failures ({} passed, {} not applicable)",
                c.fail, c.pass, c.not_applicable
            )
            .unwrap();
        }
        for w in &self.worst {
            writeln!(
                out,
                "worst {} m={} {}: {}",
                w.family,
                w.m,
                w.algorithm,
                format_ratio(&w.ratio)
            )
            .unwrap();
        }
        writeln!(
            out,
            "verdict: {} ({} instances, {} solved by oracle)",
            if self.passed { "pass" } else { "fail" },
            self.instances,
            self.oracle_solved
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub summary: SweepSummary,
    /// Sorted by `(digest, spec_index, seed)`.
    pub entries: Vec<SweepEntry>,
}

impl SweepOutcome {
    /// One compact JSON document per line, in entry order.
    pub fn reports_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        out.push('\n');
        out
    }
}

/// Generates and evaluates `seeds_per_spec` instances for every spec.
///
/// Evaluations run in parallel; output order depends only on the inputs.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutcome, WorkloadError> {
    let mut work = Vec::new();
    for (spec_index, spec) in config.specs.iter().enumerate() {
        for j in 0..config.seeds_per_spec {
            let seed = spec.seed.wrapping_add(j);
            let instance = generate(&spec.clone().seed(seed))?;
            work.push((spec_index, spec.family, seed, instance));
        }
    }

    let run = || {
        work.par_iter()
            .map(|(spec_index, family, seed, instance)| SweepEntry {
                spec_index: *spec_index,
                family: *family,
                seed: *seed,
                report: evaluate(instance, config.oracle.as_ref()),
            })
            .collect::<Vec<_>>()
    };
    let mut entries = if config.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool")
            .install(run)
    };
    entries.sort_by(|a, b| {
        (&a.report.digest, a.spec_index, a.seed).cmp(&(&b.report.digest, b.spec_index, b.seed))
    });

    Ok(SweepOutcome {
        summary: summarize(&entries),
        entries,
    })
}

pub fn summarize(entries: &[SweepEntry]) -> SweepSummary {
    let mut checks: BTreeMap<String, CheckCounts> = BTreeMap::new();
    let mut worst: BTreeMap<(Family, usize, &'static str), Ratio> = BTreeMap::new();
    let mut oracle_solved = 0;
    for e in entries {
        for (name, check) in e.report.checks.entries() {
            let counts = checks.entry(name.to_string()).or_default();
            match check.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::NotApplicable => counts.not_applicable += 1,
            }
        }
        if e.report.opt.is_some() {
            oracle_solved += 1;
        }
        for (alg, ratio) in e.report.ratios.entries() {
            if let Some(r) = ratio {
                let slot = worst.entry((e.family, e.report.m, alg)).or_insert(r);
                if r > *slot {
                    *slot = r;
                }
            }
        }
    }
    let passed = checks.values().all(|c| c.fail == 0);
    SweepSummary {
        instances: entries.len() as u64,
        oracle_solved,
        checks,
        worst: worst
            .into_iter()
            .map(|((family, m, algorithm), ratio)| WorstRatio {
                family,
                m,
                algorithm: algorithm.to_string(),
                ratio,
            })
            .collect(),
        passed,
    }
}
