//! Online makespan scheduling on identical machines with jobs submitted in
//! parallel from `k` sources.
//!
//! At every time step each source that still has work submits one job; the
//! scheduler places the whole batch irrevocably before the next step. The
//! crate provides
//!
//! * [`model`]: instances, batches and schedules,
//! * [`algorithms`]: LJLLM (largest job on least loaded machine) and the
//!   LS / LPT baselines,
//! * [`oracle`]: exact optimum by branch and bound, lower bounds and exact
//!   competitive ratios,
//! * [`metrics`]: schedule verification, idle time and per-source stats,
//! * [`workloads`]: seeded instance families,
//! * [`trace_io`]: instance, schedule and report formats,
//! * [`harness`]: per-instance evaluation and parallel sweeps.
//!
//! ```
//! use mls_core::{run_ljllm, Instance, Oracle};
//!
//! let instance = Instance::new(2, vec![vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
//! let schedule = run_ljllm(&instance);
//! assert_eq!(schedule.makespan, 5);
//! assert_eq!(Oracle::default().solve(&instance).unwrap().opt_makespan, 5);
//! ```

pub mod algorithms;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod trace_io;
pub mod workloads;

pub use algorithms::{
    ljllm_step, min_loaded, run_ljllm, run_lpt, run_ls, Algorithm, Flatten, MachineState,
};
pub use harness::{evaluate, sweep, EvaluationReport, Status, SweepConfig, SweepOutcome};
pub use metrics::{idle_profile, source_stats, verify_schedule, IdleProfile, SourceStats, Violation};
pub use model::{batches, ArrivalOrder, Assignment, Batch, Instance, InstanceError, Job, Schedule, Time};
pub use oracle::{
    competitive_ratio, lower_bound, opt_makespan, OptResult, Oracle, OracleError, Ratio,
};
pub use workloads::{generate, Family, GenSpec, WorkloadError};
