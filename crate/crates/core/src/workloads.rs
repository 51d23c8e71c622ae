//! Seeded instance generators.
//!
//! Randomness comes from [`SplitMix64`], a fixed 64-bit recurrence, so a
//! spec and seed produce the same instance on every platform and in any
//! language that reimplements the draw order documented on [`generate`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, Time};

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// out = z ^ (z >> 31)
/// ```
/// all arithmetic wrapping mod 2^64.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `next_u64() % bound`. Plain modulo; the bias is negligible for the
    /// small bounds used here and keeps the draw trivially portable.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform-ish draw from `lo..=hi`.
    pub fn in_range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Random list lengths, ptimes uniform in `[lo, hi]`.
    Uniform,
    /// Random list lengths, every ptime 1.
    Unit,
    /// All lists the same length.
    EqualLists,
    /// One job per list (`k = n`): the whole input arrives in one batch.
    SingleBatch,
    /// Single list of `m(m-1)` unit jobs followed by one job of size `m`.
    LsAdversarial,
    /// `m = 2`, lists `[1,1,1]` and `[2,2,2]`.
    Figure2,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Uniform,
        Family::Unit,
        Family::EqualLists,
        Family::SingleBatch,
        Family::LsAdversarial,
        Family::Figure2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Unit => "unit",
            Family::EqualLists => "equal_lists",
            Family::SingleBatch => "single_batch",
            Family::LsAdversarial => "ls_adversarial",
            Family::Figure2 => "figure2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("inconsistent generator spec: {0}")]
    InconsistentSpec(String),
}

fn inconsistent<T>(msg: impl Into<String>) -> Result<T, WorkloadError> {
    Err(WorkloadError::InconsistentSpec(msg.into()))
}

/// Generator parameters.
///
/// List lengths come from, in priority order: `lens`; an exact `n`; or an
/// `n` drawn from `[n_min, n_max]` (`n_min` defaults to the smallest `n`
/// the family allows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub family: Family,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub lens: Option<Vec<usize>>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub n_min: Option<usize>,
    #[serde(default)]
    pub n_max: Option<usize>,
    #[serde(default = "default_lo")]
    pub lo: Time,
    #[serde(default = "default_hi")]
    pub hi: Time,
    #[serde(default)]
    pub seed: u64,
}

fn default_m() -> usize {
    2
}
fn default_lo() -> Time {
    1
}
fn default_hi() -> Time {
    10
}

impl GenSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            m: default_m(),
            k: None,
            lens: None,
            n: None,
            n_min: None,
            n_max: None,
            lo: default_lo(),
            hi: default_hi(),
            seed: 0,
        }
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn lens(mut self, lens: Vec<usize>) -> Self {
        self.lens = Some(lens);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn n_max(mut self, n_max: usize) -> Self {
        self.n_max = Some(n_max);
        self
    }

    pub fn n_range(mut self, n_min: usize, n_max: usize) -> Self {
        self.n_min = Some(n_min);
        self.n_max = Some(n_max);
        self
    }

    pub fn ptimes(mut self, lo: Time, hi: Time) -> Self {
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Builds an instance from a spec.
///
/// Draw order from `SplitMix64::new(seed)`:
/// 1. if `n` is not fixed: `n = in_range(n_min, n_max)` (for `equal_lists`
///    the draw picks the per-list length instead);
/// 2. `uniform`/`unit` without `lens`: every list starts with one job, then
///    each of the remaining `n - k` jobs goes to list `below(k)`;
/// 3. ptimes list by list in arrival order, each `in_range(lo, hi)`
///    (skipped for `unit`, where every ptime is 1).
pub fn generate(spec: &GenSpec) -> Result<Instance, WorkloadError> {
    match spec.family {
        Family::Figure2 => Ok(figure2()),
        Family::LsAdversarial => {
            if spec.m < 2 {
                return inconsistent("ls_adversarial needs m >= 2");
            }
            Ok(ls_adversarial(spec.m))
        }
        _ => generate_random(spec),
    }
}

fn generate_random(spec: &GenSpec) -> Result<Instance, WorkloadError> {
    if spec.m == 0 {
        return inconsistent("m must be at least 1");
    }
    if spec.lo == 0 || spec.lo > spec.hi {
        return inconsistent(format!("bad ptime range [{}, {}]", spec.lo, spec.hi));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let lens = list_lengths(spec, &mut rng)?;
    let lists = lens
        .iter()
        .map(|&len| {
            (0..len)
                .map(|_| match spec.family {
                    Family::Unit => 1,
                    _ => rng.in_range(spec.lo, spec.hi),
                })
                .collect()
        })
        .collect();
    Instance::new(spec.m, lists).map_err(|e| WorkloadError::InconsistentSpec(e.to_string()))
}

fn draw_count(
    spec: &GenSpec,
    min: usize,
    rng: &mut SplitMix64,
) -> Result<Option<usize>, WorkloadError> {
    if let Some(n) = spec.n {
        return Ok(Some(n));
    }
    let Some(hi) = spec.n_max else {
        return Ok(None);
    };
    let lo = spec.n_min.unwrap_or(min).max(min);
    if lo > hi {
        return inconsistent(format!("empty size range [{lo}, {hi}]"));
    }
    Ok(Some(rng.in_range(lo as u64, hi as u64) as usize))
}

fn list_lengths(spec: &GenSpec, rng: &mut SplitMix64) -> Result<Vec<usize>, WorkloadError> {
    if let Some(lens) = &spec.lens {
        if lens.is_empty() || lens.contains(&0) {
            return inconsistent("list lengths must be non-empty and positive");
        }
        if spec.k.is_some_and(|k| k != lens.len()) {
            return inconsistent("k disagrees with the number of list lengths");
        }
        let n: usize = lens.iter().sum();
        if spec.n.is_some_and(|want| want != n) {
            return inconsistent("n disagrees with the list lengths");
        }
        match spec.family {
            Family::EqualLists if lens.iter().any(|&l| l != lens[0]) => {
                return inconsistent("equal_lists needs equal list lengths")
            }
            Family::SingleBatch if lens.iter().any(|&l| l != 1) => {
                return inconsistent("single_batch needs every list of length 1")
            }
            _ => {}
        }
        return Ok(lens.clone());
    }

    match spec.family {
        Family::SingleBatch => {
            let n = match (spec.k, spec.n) {
                (Some(k), Some(n)) if k != n => {
                    return inconsistent("single_batch needs k = n")
                }
                (Some(k), _) => k,
                (None, _) => match draw_count(spec, 1, rng)? {
                    Some(n) => n,
                    None => return inconsistent("single_batch needs k, n or n_max"),
                },
            };
            if n == 0 {
                return inconsistent("n must be at least 1");
            }
            Ok(vec![1; n])
        }
        Family::EqualLists => {
            let Some(k) = spec.k.filter(|&k| k > 0) else {
                return inconsistent("equal_lists needs k >= 1");
            };
            let per_list = if let Some(n) = spec.n {
                if n == 0 || n % k != 0 {
                    return inconsistent(format!("k = {k} does not divide n = {n}"));
                }
                n / k
            } else {
                let Some(n_max) = spec.n_max else {
                    return inconsistent("equal_lists needs n or n_max");
                };
                let lo = spec.n_min.unwrap_or(k).div_ceil(k).max(1);
                let hi = n_max / k;
                if lo > hi {
                    return inconsistent(format!("no multiple of {k} in size range"));
                }
                rng.in_range(lo as u64, hi as u64) as usize
            };
            Ok(vec![per_list; k])
        }
        _ => {
            let k = spec.k.unwrap_or(1);
            if k == 0 {
                return inconsistent("k must be at least 1");
            }
            let Some(n) = draw_count(spec, k, rng)? else {
                return inconsistent("need lens, n or n_max");
            };
            if n < k {
                return inconsistent(format!("n = {n} is smaller than k = {k}"));
            }
            let mut lens = vec![1; k];
            for _ in k..n {
                lens[rng.below(k as u64) as usize] += 1;
            }
            Ok(lens)
        }
    }
}

/// The two-source, two-machine illustration instance.
pub fn figure2() -> Instance {
    Instance::new(2, vec![vec![1, 1, 1], vec![2, 2, 2]]).expect("valid")
}

/// Tight instance for list scheduling: `m(m-1)` unit jobs then one job of
/// size `m`, all from one source. LS reaches `2m - 1`, the optimum is `m`.
pub fn ls_adversarial(m: usize) -> Instance {
    assert!(m >= 2, "ls_adversarial needs m >= 2");
    let mut list = vec![1; m * (m - 1)];
    list.push(m as Time);
    Instance::new(m, vec![list]).expect("valid")
}

/// Same jobs, one list per job (`k = n`), in list-major order.
pub fn reshape_single_batch(instance: &Instance) -> Instance {
    let lists = instance.jobs().map(|j| vec![j.ptime]).collect();
    Instance::new(instance.m(), lists).expect("reshaping keeps a valid instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs for seed 0 and 1234567.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        let mut r = SplitMix64::new(1_234_567);
        assert_eq!(r.next_u64(), 6_457_827_717_110_365_317);
        assert_eq!(r.next_u64(), 3_203_168_211_198_807_973);
    }

    #[test]
    fn figure2_spec() {
        let i = generate(&GenSpec::new(Family::Figure2).m(7).seed(99)).unwrap();
        assert_eq!(i, Instance::new(2, vec![vec![1, 1, 1], vec![2, 2, 2]]).unwrap());
    }

    #[test]
    fn unit_family() {
        let i = generate(&GenSpec::new(Family::Unit).m(2).k(2).lens(vec![2, 2])).unwrap();
        assert_eq!(i.lists(), &[vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn uniform_is_deterministic() {
        let spec = GenSpec::new(Family::Uniform).m(3).k(3).n_max(12).seed(42);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.k(), 3);
        assert!(a.n() >= 3 && a.n() <= 12);
        assert!(a.lists().iter().flatten().all(|&p| (1..=10).contains(&p)));
        let c = generate(&spec.clone().seed(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn equal_lists_requires_divisibility() {
        let err = generate(&GenSpec::new(Family::EqualLists).k(3).n(10)).unwrap_err();
        assert!(matches!(err, WorkloadError::InconsistentSpec(_)));
        let ok = generate(&GenSpec::new(Family::EqualLists).k(3).n(12)).unwrap();
        assert!(ok.lists().iter().all(|l| l.len() == 4));
        let ranged = generate(&GenSpec::new(Family::EqualLists).k(3).n_max(12).seed(5)).unwrap();
        assert!(ranged.lists().iter().all(|l| l.len() == ranged.lists()[0].len()));
        assert!(ranged.n() <= 12);
    }

    #[test]
    fn single_batch_shape() {
        let i = generate(&GenSpec::new(Family::SingleBatch).m(3).n(8).seed(1)).unwrap();
        assert_eq!((i.k(), i.n()), (8, 8));
        assert_eq!(i.steps(), 1);
        assert!(generate(&GenSpec::new(Family::SingleBatch).k(3).n(4)).is_err());
        assert!(generate(&GenSpec::new(Family::SingleBatch).lens(vec![1, 2])).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(generate(&GenSpec::new(Family::Uniform).k(2)).is_err());
        assert!(generate(&GenSpec::new(Family::Uniform).k(4).n(3)).is_err());
        assert!(generate(&GenSpec::new(Family::Uniform).n(3).ptimes(0, 3)).is_err());
        assert!(generate(&GenSpec::new(Family::Uniform).n(3).ptimes(5, 3)).is_err());
        assert!(generate(&GenSpec::new(Family::Uniform).m(0).n(3)).is_err());
        assert!(generate(&GenSpec::new(Family::LsAdversarial).m(1)).is_err());
        assert!(generate(&GenSpec::new(Family::Uniform).k(3).lens(vec![1, 2])).is_err());
    }

    #[test]
    fn ls_adversarial_shape() {
        assert_eq!(ls_adversarial(2).lists(), &[vec![1, 1, 2]]);
        let four = ls_adversarial(4);
        assert_eq!(four.n(), 13);
        assert_eq!(four.lists()[0][12], 4);
        assert!(four.lists()[0][..12].iter().all(|&p| p == 1));
    }

    #[test]
    fn reshape_keeps_jobs() {
        let i = ls_adversarial(3);
        let r = reshape_single_batch(&i);
        assert_eq!(r.k(), r.n());
        assert_eq!(r.total_ptime(), i.total_ptime());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
        assert_eq!("equal-lists".parse::<Family>(), Ok(Family::EqualLists));
    }
}
