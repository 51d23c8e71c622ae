//! Schedule validation, idle-time accounting and per-source statistics.

use std::fmt;

use crate::model::{ArrivalOrder, Instance, Schedule, Time};
use crate::oracle::Ratio;

/// First problem found by [`verify_schedule`]. `index` is the 0-based
/// position in the schedule's assignment sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MachineCountMismatch { expected: usize, found: usize },
    UnknownJob { index: usize },
    PtimeMismatch { index: usize },
    DuplicateJob { index: usize },
    MissingJob { list_id: usize, index_in_list: usize },
    MachineOutOfRange { index: usize },
    StartMismatch { index: usize, expected: Time },
    FinishMismatch { index: usize },
    BatchOrder { index: usize },
    InconsistentLoads { machine: usize },
    InconsistentMakespan,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MachineCountMismatch { expected, found } => {
                write!(f, "schedule has {found} machines, instance has {expected}")
            }
            Violation::UnknownJob { index } => write!(f, "assignment {index}: job not in instance"),
            Violation::PtimeMismatch { index } => {
                write!(f, "assignment {index}: processing time differs from instance")
            }
            Violation::DuplicateJob { index } => write!(f, "assignment {index}: job placed twice"),
            Violation::MissingJob {
                list_id,
                index_in_list,
            } => write!(f, "job {index_in_list} of list {list_id} never placed"),
            Violation::MachineOutOfRange { index } => {
                write!(f, "assignment {index}: machine out of range")
            }
            Violation::StartMismatch { index, expected } => {
                write!(f, "assignment {index}: start should be {expected}")
            }
            Violation::FinishMismatch { index } => {
                write!(f, "assignment {index}: finish != start + ptime")
            }
            Violation::BatchOrder { index } => {
                write!(f, "assignment {index}: placed before an earlier batch finished")
            }
            Violation::InconsistentLoads { machine } => {
                write!(f, "load of machine {machine} disagrees with its assignments")
            }
            Violation::InconsistentMakespan => f.write_str("makespan is not the maximum load"),
        }
    }
}

/// Checks a schedule against its instance. Returns the first violation in
/// decision order, or `Ok(())`.
pub fn verify_schedule(instance: &Instance, schedule: &Schedule) -> Result<(), Violation> {
    let m = instance.m();
    if schedule.loads.len() != m {
        return Err(Violation::MachineCountMismatch {
            expected: m,
            found: schedule.loads.len(),
        });
    }
    let mut seen = vec![false; instance.n()];
    let mut loads = vec![0; m];
    let mut last_step = 0;
    for (index, a) in schedule.assignments.iter().enumerate() {
        let Some(pos) = instance.job_position(a.job.list_id, a.job.index_in_list) else {
            return Err(Violation::UnknownJob { index });
        };
        if instance.lists()[a.job.list_id - 1][a.job.index_in_list - 1] != a.job.ptime {
            return Err(Violation::PtimeMismatch { index });
        }
        if std::mem::replace(&mut seen[pos], true) {
            return Err(Violation::DuplicateJob { index });
        }
        if a.machine >= m {
            return Err(Violation::MachineOutOfRange { index });
        }
        if a.start != loads[a.machine] {
            return Err(Violation::StartMismatch {
                index,
                expected: loads[a.machine],
            });
        }
        if a.finish != a.start + a.job.ptime {
            return Err(Violation::FinishMismatch { index });
        }
        if schedule.order == ArrivalOrder::Batched && a.job.index_in_list < last_step {
            return Err(Violation::BatchOrder { index });
        }
        last_step = last_step.max(a.job.index_in_list);
        loads[a.machine] = a.finish;
    }
    if let Some(job) = instance.jobs().zip(&seen).find(|(_, &s)| !s).map(|(j, _)| j) {
        return Err(Violation::MissingJob {
            list_id: job.list_id,
            index_in_list: job.index_in_list,
        });
    }
    if let Some(machine) = (0..m).find(|&j| loads[j] != schedule.loads[j]) {
        return Err(Violation::InconsistentLoads { machine });
    }
    if schedule.makespan != loads.iter().copied().max().unwrap_or(0) {
        return Err(Violation::InconsistentMakespan);
    }
    Ok(())
}

/// Per-machine idle time `C_max - l_j` and its total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdleProfile {
    pub per_machine: Vec<Time>,
    pub total: Time,
}

pub fn idle_profile(schedule: &Schedule) -> IdleProfile {
    let per_machine: Vec<Time> = schedule
        .loads
        .iter()
        .map(|&l| schedule.makespan - l)
        .collect();
    let total = per_machine.iter().sum();
    IdleProfile { per_machine, total }
}

/// Aggregates for one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceRow {
    pub list_id: usize,
    pub jobs: usize,
    pub total_size: Time,
    /// Finish time of the last job from this source to complete.
    pub last_finish: Time,
    pub mean_finish: Ratio,
}

/// Descriptive per-source statistics, ordered by `list_id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceStats {
    pub rows: Vec<SourceRow>,
}

pub fn source_stats(schedule: &Schedule) -> SourceStats {
    let k = schedule
        .assignments
        .iter()
        .map(|a| a.job.list_id)
        .max()
        .unwrap_or(0);
    let mut acc = vec![(0usize, 0 as Time, 0 as Time, 0 as Time); k];
    for a in &schedule.assignments {
        let row = &mut acc[a.job.list_id - 1];
        row.0 += 1;
        row.1 += a.job.ptime;
        row.2 = row.2.max(a.finish);
        row.3 += a.finish;
    }
    let rows = acc
        .into_iter()
        .enumerate()
        .filter(|(_, (jobs, ..))| *jobs > 0)
        .map(|(r, (jobs, total_size, last_finish, finish_sum))| SourceRow {
            list_id: r + 1,
            jobs,
            total_size,
            last_finish,
            mean_finish: Ratio::new(finish_sum, jobs as Time),
        })
        .collect();
    SourceStats { rows }
}
