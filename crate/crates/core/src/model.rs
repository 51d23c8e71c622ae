//! Domain types for the multi-list scheduling model.
//!
//! An [`Instance`] holds `k` ordered sub-lists of processing times, one per
//! job source. At time step `t` every source whose list still has a `t`-th
//! job submits it; the jobs revealed together form a [`Batch`], which must
//! be placed irrevocably before the next batch arrives.

use std::fmt;

use thiserror::Error;

/// Processing time in integer time units.
pub type Time = u64;

/// A job `J^r_i`: the `i`-th arrival from source `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Job {
    /// 1-based source index.
    pub list_id: usize,
    /// 1-based arrival position within its list.
    pub index_in_list: usize,
    pub ptime: Time,
}

impl fmt::Display for Job {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{}_{}/{}", self.list_id, self.index_in_list, self.ptime)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("machine count must be at least 1")]
    ZeroMachines,
    #[error("instance needs at least one job list")]
    NoLists,
    /// 1-based list index.
    #[error("list {0} is empty")]
    EmptyList(usize),
    /// 1-based list index and 1-based position.
    #[error("list {list} job {index} has non-positive processing time")]
    NonPositivePtime { list: usize, index: usize },
}

/// The full online input: `m` identical machines and `k` job sources.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    m: usize,
    lists: Vec<Vec<Time>>,
    n: usize,
}

impl Instance {
    /// Validates and builds an instance.
    pub fn new(m: usize, lists: Vec<Vec<Time>>) -> Result<Self, InstanceError> {
        if m == 0 {
            return Err(InstanceError::ZeroMachines);
        }
        if lists.is_empty() {
            return Err(InstanceError::NoLists);
        }
        for (r, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(InstanceError::EmptyList(r + 1));
            }
            if let Some(i) = list.iter().position(|&p| p == 0) {
                return Err(InstanceError::NonPositivePtime {
                    list: r + 1,
                    index: i + 1,
                });
            }
        }
        let n = lists.iter().map(Vec::len).sum();
        Ok(Self { m, lists, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.lists.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lists(&self) -> &[Vec<Time>] {
        &self.lists
    }

    /// Number of time steps, i.e. the length of the longest list.
    pub fn steps(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All jobs in list-major order (`L_1` first, then `L_2`, ...).
    ///
    /// This is the canonical job order used wherever a flat per-job vector is
    /// needed, e.g. the oracle's optimal assignment.
    pub fn jobs(&self) -> impl Iterator<Item = Job> + '_ {
        self.lists.iter().enumerate().flat_map(|(r, list)| {
            list.iter().enumerate().map(move |(i, &ptime)| Job {
                list_id: r + 1,
                index_in_list: i + 1,
                ptime,
            })
        })
    }

    /// Position of a job in [`Instance::jobs`] order, if it belongs to this instance.
    pub fn job_position(&self, list_id: usize, index_in_list: usize) -> Option<usize> {
        if list_id == 0 || index_in_list == 0 || list_id > self.k() {
            return None;
        }
        if index_in_list > self.lists[list_id - 1].len() {
            return None;
        }
        let before: usize = self.lists[..list_id - 1].iter().map(Vec::len).sum();
        Some(before + index_in_list - 1)
    }

    pub fn job(&self, list_id: usize, index_in_list: usize) -> Option<Job> {
        self.job_position(list_id, index_in_list).map(|_| Job {
            list_id,
            index_in_list,
            ptime: self.lists[list_id - 1][index_in_list - 1],
        })
    }

    pub fn total_ptime(&self) -> Time {
        self.lists.iter().flatten().sum()
    }

    /// Largest processing time `p_b`.
    pub fn max_ptime(&self) -> Time {
        self.lists.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Batches in arrival order.
    pub fn batches(&self) -> Batches<'_> {
        Batches {
            instance: self,
            step: 1,
        }
    }
}

/// Jobs revealed together at one time step, at most one per source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    /// 1-based time step.
    pub step: usize,
    /// Ordered by `list_id`.
    pub jobs: Vec<Job>,
}

/// Iterator over the batches of an instance. Lists that are exhausted stop
/// contributing; iteration ends after the longest list.
#[derive(Debug, Clone)]
pub struct Batches<'a> {
    instance: &'a Instance,
    step: usize,
}

impl Iterator for Batches<'_> {
    type Item = Batch;

    fn next(&mut self) -> Option<Batch> {
        let step = self.step;
        let jobs: Vec<Job> = self
            .instance
            .lists
            .iter()
            .enumerate()
            .filter_map(|(r, list)| {
                list.get(step - 1).map(|&ptime| Job {
                    list_id: r + 1,
                    index_in_list: step,
                    ptime,
                })
            })
            .collect();
        if jobs.is_empty() {
            return None;
        }
        self.step += 1;
        Some(Batch { step, jobs })
    }
}

/// Convenience wrapper matching [`Instance::batches`], collected.
pub fn batches(instance: &Instance) -> Vec<Batch> {
    instance.batches().collect()
}

/// One job's irrevocable placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assignment {
    pub job: Job,
    /// 0-based machine index.
    pub machine: usize,
    pub start: Time,
    pub finish: Time,
}

/// How the decision order of a schedule relates to batch arrival.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrivalOrder {
    /// Decisions follow the batch sequence: no job of step `t + 1` is placed
    /// before every job of step `t`.
    Batched,
    /// Decision order is unconstrained (offline or single-list baselines).
    Free,
}

/// Assignments in decision order plus the resulting machine loads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub assignments: Vec<Assignment>,
    pub loads: Vec<Time>,
    pub makespan: Time,
    pub order: ArrivalOrder,
}

impl Schedule {
    /// Builds a schedule by appending each `(job, machine)` decision to the
    /// machine's current load.
    pub fn from_decisions(
        m: usize,
        order: ArrivalOrder,
        decisions: impl IntoIterator<Item = (Job, usize)>,
    ) -> Self {
        let mut loads = vec![0; m];
        let assignments = decisions
            .into_iter()
            .map(|(job, machine)| {
                let start = loads[machine];
                loads[machine] += job.ptime;
                Assignment {
                    job,
                    machine,
                    start,
                    finish: loads[machine],
                }
            })
            .collect();
        let makespan = loads.iter().copied().max().unwrap_or(0);
        Self {
            assignments,
            loads,
            makespan,
            order,
        }
    }

    pub fn m(&self) -> usize {
        self.loads.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(list_id: usize, index_in_list: usize, ptime: Time) -> Job {
        Job {
            list_id,
            index_in_list,
            ptime,
        }
    }

    #[test]
    fn builds_figure_instance() {
        let inst = Instance::new(2, vec![vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert_eq!(inst.n(), 6);
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.m(), 2);
    }

    #[test]
    fn single_job_instance() {
        let inst = Instance::new(3, vec![vec![5]]).unwrap();
        assert_eq!((inst.n(), inst.k()), (1, 1));
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(
            Instance::new(2, vec![vec![1], vec![], vec![2]]),
            Err(InstanceError::EmptyList(2))
        );
        assert_eq!(
            Instance::new(0, vec![vec![1]]),
            Err(InstanceError::ZeroMachines)
        );
        assert_eq!(
            Instance::new(2, vec![vec![1], vec![3, 0]]),
            Err(InstanceError::NonPositivePtime { list: 2, index: 2 })
        );
        assert_eq!(Instance::new(2, vec![]), Err(InstanceError::NoLists));
    }

    #[test]
    fn batches_of_figure_instance() {
        let inst = Instance::new(2, vec![vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        let got = batches(&inst);
        assert_eq!(got.len(), 3);
        for (t, b) in got.iter().enumerate() {
            assert_eq!(b.step, t + 1);
            assert_eq!(b.jobs, vec![job(1, t + 1, 1), job(2, t + 1, 2)]);
        }
    }

    #[test]
    fn exhausted_lists_stop_contributing() {
        let inst = Instance::new(2, vec![vec![4, 4], vec![7]]).unwrap();
        let got = batches(&inst);
        assert_eq!(
            got,
            vec![
                Batch {
                    step: 1,
                    jobs: vec![job(1, 1, 4), job(2, 1, 7)]
                },
                Batch {
                    step: 2,
                    jobs: vec![job(1, 2, 4)]
                },
            ]
        );
    }

    #[test]
    fn single_list_gives_singleton_batches() {
        let inst = Instance::new(1, vec![vec![3, 1, 2]]).unwrap();
        let got: Vec<Vec<Time>> = batches(&inst)
            .into_iter()
            .map(|b| b.jobs.iter().map(|j| j.ptime).collect())
            .collect();
        assert_eq!(got, vec![vec![3], vec![1], vec![2]]);
    }

    #[test]
    fn job_positions_follow_list_major_order() {
        let inst = Instance::new(2, vec![vec![4, 4], vec![7], vec![1, 2, 3]]).unwrap();
        let flat: Vec<_> = inst.jobs().collect();
        for (pos, j) in flat.iter().enumerate() {
            assert_eq!(inst.job_position(j.list_id, j.index_in_list), Some(pos));
            assert_eq!(inst.job(j.list_id, j.index_in_list), Some(*j));
        }
        assert_eq!(inst.job_position(2, 2), None);
        assert_eq!(inst.job_position(4, 1), None);
        assert_eq!(inst.job_position(0, 1), None);
    }
}
