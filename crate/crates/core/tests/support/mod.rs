//! Test-only reference implementations, independent of the crate's search
//! and greedy code paths.
#![allow(dead_code)]

use mls_core::{Instance, Time};

/// Minimum makespan by plain enumeration of all `m^n` assignments.
pub fn brute_force_opt(instance: &Instance) -> Time {
    let ptimes: Vec<Time> = instance.lists().iter().flatten().copied().collect();
    let m = instance.m();
    let n = ptimes.len();
    let total = (m as u64).pow(n as u32);
    let mut best = Time::MAX;
    let mut loads = vec![0; m];
    for code in 0..total {
        loads.iter_mut().for_each(|l| *l = 0);
        let mut c = code;
        for &p in &ptimes {
            loads[(c % m as u64) as usize] += p;
            c /= m as u64;
        }
        best = best.min(*loads.iter().max().unwrap());
    }
    best
}

/// Hand-rolled list scheduling over an explicit sequence: each job to the
/// first machine of minimum load.
pub fn list_schedule(m: usize, seq: &[Time]) -> Time {
    let mut loads = vec![0; m];
    for &p in seq {
        let mut best = 0;
        for j in 1..m {
            if loads[j] < loads[best] {
                best = j;
            }
        }
        loads[best] += p;
    }
    loads.into_iter().max().unwrap()
}
