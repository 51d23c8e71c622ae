//! Exact optimum for small instances, analytic lower bounds and exact
//! competitive ratios.

use num_rational::Ratio as GenericRatio;
use thiserror::Error;

use crate::algorithms::run_lpt;
use crate::model::{Instance, Time};

/// Exact non-negative rational, used for every ratio and bound comparison.
pub type Ratio = GenericRatio<u64>;

/// Default largest `n` the oracle accepts.
pub const DEFAULT_SIZE_CAP: usize = 16;
/// Default search budget in explored nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub opt_makespan: Time,
    /// Search nodes visited.
    pub explored: u64,
    /// Machine of each job, in [`Instance::jobs`] order.
    pub optimal_assignment: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} jobs, oracle cap is {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    /// The search gave up; `upper_bound` is the best makespan found, not a
    /// proven optimum.
    #[error("node limit exceeded after {explored} nodes (best known {upper_bound})")]
    NodeLimitExceeded { upper_bound: Time, explored: u64 },
}

impl OracleError {
    /// Short machine-readable reason, as written into reports.
    pub fn reason(&self) -> &'static str {
        match self {
            OracleError::InstanceTooLarge { .. } => "InstanceTooLarge",
            OracleError::NodeLimitExceeded { .. } => "NodeLimitExceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("optimum must be at least 1")]
    ZeroOpt,
}

/// `max(ceil(sum / m), max ptime)`.
pub fn lower_bound(instance: &Instance) -> Time {
    let m = instance.m() as Time;
    instance
        .total_ptime()
        .div_ceil(m)
        .max(instance.max_ptime())
}

/// Exact `alg / opt`.
pub fn competitive_ratio(alg_makespan: Time, opt: Time) -> Result<Ratio, RatioError> {
    if opt == 0 {
        return Err(RatioError::ZeroOpt);
    }
    Ok(Ratio::new(alg_makespan, opt))
}

/// `2 - 1/m`.
pub fn greedy_bound(m: usize) -> Ratio {
    let m = m as u64;
    Ratio::new(2 * m - 1, m)
}

/// `4/3 - 1/(3m)`.
pub fn lpt_bound(m: usize) -> Ratio {
    let m = m as u64;
    Ratio::new(4 * m - 1, 3 * m)
}

/// Depth-first branch-and-bound configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub size_cap: usize,
    pub node_limit: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            size_cap: DEFAULT_SIZE_CAP,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

/// [`Oracle::solve`] with the default size cap.
pub fn opt_makespan(instance: &Instance, node_limit: u64) -> Result<OptResult, OracleError> {
    Oracle {
        node_limit,
        ..Oracle::default()
    }
    .solve(instance)
}

impl Oracle {
    pub fn with_cap(size_cap: usize) -> Self {
        Self {
            size_cap,
            ..Self::default()
        }
    }

    /// Minimum makespan over all `m^n` assignments.
    ///
    /// Jobs are branched in non-increasing size order. Machines holding equal
    /// load are interchangeable, so only the first of each load class is
    /// tried (this covers the "at most one empty machine" rule). LPT seeds the
    /// incumbent and the search stops as soon as it meets the lower bound.
    pub fn solve(&self, instance: &Instance) -> Result<OptResult, OracleError> {
        let n = instance.n();
        if n > self.size_cap {
            return Err(OracleError::InstanceTooLarge {
                n,
                cap: self.size_cap,
            });
        }

        let mut jobs: Vec<(usize, Time)> = instance.jobs().map(|j| j.ptime).enumerate().collect();
        jobs.sort_by_key(|&(pos, p)| (std::cmp::Reverse(p), pos));

        let lpt = run_lpt(instance);
        let mut incumbent = vec![0; n];
        for a in &lpt.assignments {
            let pos = instance
                .job_position(a.job.list_id, a.job.index_in_list)
                .expect("LPT schedules instance jobs");
            incumbent[pos] = a.machine;
        }

        let mut search = Search {
            jobs: &jobs,
            m: instance.m(),
            floor: lower_bound(instance),
            best: lpt.makespan,
            best_assignment: incumbent,
            loads: vec![0; instance.m()],
            current: vec![0; n],
            explored: 0,
            node_limit: self.node_limit,
        };
        let completed = search.best == search.floor || search.descend(0, 0);
        if !completed {
            return Err(OracleError::NodeLimitExceeded {
                upper_bound: search.best,
                explored: search.explored,
            });
        }
        Ok(OptResult {
            opt_makespan: search.best,
            explored: search.explored,
            optimal_assignment: Some(search.best_assignment),
        })
    }
}

struct Search<'a> {
    /// `(position in Instance::jobs order, ptime)`, non-increasing ptime.
    jobs: &'a [(usize, Time)],
    m: usize,
    floor: Time,
    best: Time,
    best_assignment: Vec<usize>,
    loads: Vec<Time>,
    /// Machine per job position for the partial assignment.
    current: Vec<usize>,
    explored: u64,
    node_limit: u64,
}

impl Search<'_> {
    /// Returns false when the node budget ran out.
    fn descend(&mut self, depth: usize, current_max: Time) -> bool {
        self.explored += 1;
        if self.explored > self.node_limit {
            return false;
        }
        let Some(&(pos, p)) = self.jobs.get(depth) else {
            if current_max < self.best {
                self.best = current_max;
                self.best_assignment.clone_from(&self.current);
            }
            return true;
        };

        let min_load = self.loads.iter().copied().min().unwrap_or(0);
        if current_max.max(min_load + p).max(self.floor) >= self.best {
            return true;
        }

        let mut tried: Vec<Time> = Vec::with_capacity(self.m);
        for machine in 0..self.m {
            let load = self.loads[machine];
            if tried.contains(&load) {
                continue;
            }
            tried.push(load);
            let next_max = current_max.max(load + p);
            if next_max >= self.best {
                continue;
            }
            self.loads[machine] += p;
            self.current[pos] = machine;
            let ok = self.descend(depth + 1, next_max);
            self.loads[machine] -= p;
            if !ok {
                return false;
            }
            if self.best == self.floor {
                break;
            }
        }
        true
    }
}
