//! Online LJLLM (largest job on least loaded machine) and the list
//! scheduling baselines it degenerates to.
//!
//! All algorithms break ties deterministically: the least loaded machine is
//! the lowest index among those with minimum load, and equal-sized jobs in a
//! batch are placed in increasing `list_id` order.

use std::fmt;
use std::str::FromStr;

use crate::model::{ArrivalOrder, Assignment, Batch, Instance, Job, Schedule, Time};

/// Accumulated per-machine loads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineState {
    loads: Vec<Time>,
}

impl MachineState {
    /// `m` idle machines. Panics if `m == 0`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "machine count must be at least 1");
        Self { loads: vec![0; m] }
    }

    pub fn from_loads(loads: Vec<Time>) -> Self {
        assert!(!loads.is_empty(), "machine count must be at least 1");
        Self { loads }
    }

    pub fn loads(&self) -> &[Time] {
        &self.loads
    }

    pub fn into_loads(self) -> Vec<Time> {
        self.loads
    }

    /// Appends `job` to `machine` and returns the resulting assignment.
    pub fn assign(&mut self, job: Job, machine: usize) -> Assignment {
        let start = self.loads[machine];
        self.loads[machine] += job.ptime;
        Assignment {
            job,
            machine,
            start,
            finish: self.loads[machine],
        }
    }
}

/// Index of a machine with minimum load; lowest index on ties.
pub fn min_loaded(state: &MachineState) -> usize {
    state
        .loads
        .iter()
        .enumerate()
        .min_by_key(|&(j, &l)| (l, j))
        .map(|(j, _)| j)
        .expect("at least one machine")
}

/// Schedules one batch: jobs in non-increasing size (lower `list_id` first
/// on ties), each onto the machine that is least loaded at that moment.
pub fn ljllm_step(batch: &Batch, state: &mut MachineState) -> Vec<Assignment> {
    let mut jobs = batch.jobs.clone();
    jobs.sort_by_key(|j| (std::cmp::Reverse(j.ptime), j.list_id));
    jobs.into_iter()
        .map(|job| {
            let machine = min_loaded(state);
            state.assign(job, machine)
        })
        .collect()
}

/// Runs LJLLM over the batch sequence of `instance`.
pub fn run_ljllm(instance: &Instance) -> Schedule {
    let mut state = MachineState::new(instance.m());
    let mut assignments = Vec::with_capacity(instance.n());
    for batch in instance.batches() {
        assignments.extend(ljllm_step(&batch, &mut state));
    }
    finish(assignments, state, ArrivalOrder::Batched)
}

/// How [`run_ls`] flattens the sources into one list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Flatten {
    /// `L_1` then `L_2` and so on.
    #[default]
    Concatenate,
    /// Batch order: step 1 of every list, then step 2, ...
    RoundRobin,
}

impl fmt::Display for Flatten {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flatten::Concatenate => "concatenate",
            Flatten::RoundRobin => "round_robin",
        })
    }
}

impl FromStr for Flatten {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "concatenate" | "concat" => Ok(Flatten::Concatenate),
            "round_robin" | "round-robin" => Ok(Flatten::RoundRobin),
            other => Err(format!("unknown flatten mode `{other}`")),
        }
    }
}

/// Graham's list scheduling over a flattened job sequence.
pub fn run_ls(instance: &Instance, flatten: Flatten) -> Schedule {
    match flatten {
        Flatten::Concatenate => {
            let order = if instance.k() == 1 {
                ArrivalOrder::Batched
            } else {
                ArrivalOrder::Free
            };
            greedy(instance.m(), instance.jobs(), order)
        }
        Flatten::RoundRobin => greedy(
            instance.m(),
            instance.batches().flat_map(|b| b.jobs),
            ArrivalOrder::Batched,
        ),
    }
}

/// Offline LPT: all jobs sorted by non-increasing size (ties by `list_id`,
/// then `index_in_list`), then list scheduled.
pub fn run_lpt(instance: &Instance) -> Schedule {
    let mut jobs: Vec<Job> = instance.jobs().collect();
    jobs.sort_by_key(|j| (std::cmp::Reverse(j.ptime), j.list_id, j.index_in_list));
    let order = if instance.steps() == 1 {
        ArrivalOrder::Batched
    } else {
        ArrivalOrder::Free
    };
    greedy(instance.m(), jobs, order)
}

fn greedy(m: usize, jobs: impl IntoIterator<Item = Job>, order: ArrivalOrder) -> Schedule {
    let mut state = MachineState::new(m);
    let assignments = jobs
        .into_iter()
        .map(|job| {
            let machine = min_loaded(&state);
            state.assign(job, machine)
        })
        .collect();
    finish(assignments, state, order)
}

fn finish(assignments: Vec<Assignment>, state: MachineState, order: ArrivalOrder) -> Schedule {
    let loads = state.into_loads();
    let makespan = loads.iter().copied().max().unwrap_or(0);
    Schedule {
        assignments,
        loads,
        makespan,
        order,
    }
}

/// The algorithms the engine can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Ljllm,
    Ls(Flatten),
    Lpt,
}

impl Algorithm {
    pub fn run(self, instance: &Instance) -> Schedule {
        match self {
            Algorithm::Ljllm => run_ljllm(instance),
            Algorithm::Ls(flatten) => run_ls(instance, flatten),
            Algorithm::Lpt => run_lpt(instance),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(list_id: usize, ptime: Time) -> Job {
        Job {
            list_id,
            index_in_list: 1,
            ptime,
        }
    }

    fn inst(m: usize, lists: &[&[Time]]) -> Instance {
        Instance::new(m, lists.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn min_loaded_breaks_ties_low() {
        assert_eq!(min_loaded(&MachineState::from_loads(vec![0, 0, 0])), 0);
        assert_eq!(min_loaded(&MachineState::from_loads(vec![3, 1, 2])), 1);
        assert_eq!(min_loaded(&MachineState::from_loads(vec![2, 5, 2])), 0);
    }

    #[test]
    fn step_places_larger_job_first() {
        let batch = Batch {
            step: 1,
            jobs: vec![job(1, 1), job(2, 2)],
        };
        let mut state = MachineState::new(2);
        let got = ljllm_step(&batch, &mut state);
        assert_eq!(got[0].job, job(2, 2));
        assert_eq!((got[0].machine, got[0].start), (0, 0));
        assert_eq!(got[1].job, job(1, 1));
        assert_eq!((got[1].machine, got[1].start), (1, 0));
        assert_eq!(state.loads(), &[2, 1]);
    }

    #[test]
    fn step_tie_goes_to_lower_list() {
        let batch = Batch {
            step: 1,
            jobs: vec![job(1, 5), job(2, 5)],
        };
        let mut state = MachineState::new(2);
        let got = ljllm_step(&batch, &mut state);
        assert_eq!(got[0].job.list_id, 1);
        assert_eq!(got[1].job.list_id, 2);
        assert_eq!(state.loads(), &[5, 5]);
    }

    #[test]
    fn step_with_three_sources() {
        let batch = Batch {
            step: 1,
            jobs: vec![job(1, 3), job(2, 2), job(3, 1)],
        };
        let mut state = MachineState::new(2);
        let got = ljllm_step(&batch, &mut state);
        let placed: Vec<(Time, usize)> = got.iter().map(|a| (a.job.ptime, a.machine)).collect();
        assert_eq!(placed, vec![(3, 0), (2, 1), (1, 1)]);
        assert_eq!(state.loads(), &[3, 3]);
    }

    #[test]
    fn ljllm_on_figure_instance() {
        let s = run_ljllm(&inst(2, &[&[1, 1, 1], &[2, 2, 2]]));
        assert_eq!(s.makespan, 5);
        assert_eq!(s.loads, vec![5, 4]);
    }

    #[test]
    fn ljllm_single_machine_sums() {
        let s = run_ljllm(&inst(1, &[&[3, 4], &[5], &[1, 1, 1]]));
        assert_eq!(s.makespan, 15);
    }

    #[test]
    fn ljllm_one_job_per_machine() {
        let s = run_ljllm(&inst(3, &[&[7], &[3], &[2]]));
        assert_eq!(s.makespan, 7);
    }

    #[test]
    fn ls_examples() {
        let f2 = inst(2, &[&[1, 1, 1], &[2, 2, 2]]);
        assert_eq!(run_ls(&f2, Flatten::Concatenate).makespan, 5);
        assert_eq!(run_ls(&f2, Flatten::RoundRobin).makespan, 5);
        let adv = inst(2, &[&[1, 1], &[1, 1], &[4]]);
        assert_eq!(run_ls(&adv, Flatten::Concatenate).makespan, 6);
        let single = run_ls(&inst(3, &[&[9]]), Flatten::Concatenate);
        assert_eq!(single.assignments[0].machine, 0);
    }

    #[test]
    fn lpt_examples() {
        // 3,3 | 2,2 | 2: LPT misses the {3,3}/{2,2,2} optimum of 6.
        assert_eq!(run_lpt(&inst(2, &[&[3, 3, 2, 2, 2]])).makespan, 7);
        assert_eq!(run_lpt(&inst(3, &[&[1], &[1], &[1]])).makespan, 1);
    }

    #[test]
    fn orders_are_tagged() {
        let f2 = inst(2, &[&[1, 1, 1], &[2, 2, 2]]);
        assert_eq!(run_ljllm(&f2).order, ArrivalOrder::Batched);
        assert_eq!(run_ls(&f2, Flatten::Concatenate).order, ArrivalOrder::Free);
        assert_eq!(run_ls(&f2, Flatten::RoundRobin).order, ArrivalOrder::Batched);
        assert_eq!(run_lpt(&f2).order, ArrivalOrder::Free);
    }

    #[test]
    fn flatten_parses() {
        assert_eq!("round-robin".parse::<Flatten>(), Ok(Flatten::RoundRobin));
        assert_eq!("concatenate".parse::<Flatten>(), Ok(Flatten::Concatenate));
        assert!("zigzag".parse::<Flatten>().is_err());
    }
}
