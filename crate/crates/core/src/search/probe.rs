//! Randomised descent probe.
//!
//! Samples valued families, repeatedly exchanges along unsaturated pairs until
//! none is left, and tallies every observation that would contradict the
//! expected behaviour: a step that fails to lower the SDR count or leaves the
//! valued class, a fixpoint with an unsaturated exclusive pair, or pair counts
//! on the wrong side of `Σ_{i<j} a_i a_j`.

use super::SearchSpec;
use crate::bitset::ElementSet;
use crate::counting::count_sdr;
use crate::exec::Execution;
use crate::family::{SetFamily, Valuation};
use crate::pairs::{census_with, descent_step};
use crate::{BigCount, Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_REJECTIONS: usize = 10_000;
const MAX_STEPS: usize = 100_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DescentReport {
    pub t: usize,
    pub valuation: Vec<usize>,
    pub seed: u64,
    pub samples_requested: usize,
    pub sampled: usize,
    /// Samples abandoned after too many rejected draws.
    pub sampling_failures: usize,
    pub rejections: u64,
    pub steps: u64,
    pub non_decreasing_steps: u64,
    pub invalid_steps: u64,
    pub unsaturated_fixpoints: u64,
    pub bound_violations: u64,
    /// Walks stopped by the step limit.
    pub runaway_walks: u64,
    pub fixpoints_bar: u64,
}

impl DescentReport {
    pub fn violations(&self) -> u64 {
        self.non_decreasing_steps
            + self.invalid_steps
            + self.unsaturated_fixpoints
            + self.bound_violations
            + self.runaway_walks
    }

    fn absorb(&mut self, other: &DescentReport) {
        self.sampled += other.sampled;
        self.sampling_failures += other.sampling_failures;
        self.rejections += other.rejections;
        self.steps += other.steps;
        self.non_decreasing_steps += other.non_decreasing_steps;
        self.invalid_steps += other.invalid_steps;
        self.unsaturated_fixpoints += other.unsaturated_fixpoints;
        self.bound_violations += other.bound_violations;
        self.runaway_walks += other.runaway_walks;
        self.fixpoints_bar += other.fixpoints_bar;
    }
}

/// Draws a ground size in `[Σa + t, cap]`, then each member as a uniform
/// subset of the required size, until the draw is a valued family. Returns
/// the family and the number of rejected draws.
pub fn sample_valued_family<R: Rng + ?Sized>(
    t: usize,
    a: &Valuation,
    cap: usize,
    rng: &mut R,
) -> (Option<SetFamily>, usize) {
    let low = a.total() + t;
    for attempt in 0..MAX_REJECTIONS {
        let ground = rng.gen_range(low..=cap.max(low));
        let members = a
            .as_slice()
            .iter()
            .map(|&ai| {
                sample(rng, ground, ai + t)
                    .into_iter()
                    .collect::<ElementSet>()
            })
            .collect();
        let family = SetFamily::from_index_sets(members).expect("sampled members are nonempty");
        if family.is_valued_family(t, a).expect("lengths agree") {
            return (Some(family), attempt);
        }
    }
    (None, MAX_REJECTIONS)
}

fn walk_one(spec: &SearchSpec, rng: &mut ChaCha8Rng) -> DescentReport {
    let (t, a) = (spec.t, &spec.valuation);
    let mut report = DescentReport::default();
    let (family, rejected) = sample_valued_family(t, a, spec.ground_cap, rng);
    report.rejections = rejected as u64;
    let Some(mut family) = family else {
        report.sampling_failures = 1;
        return report;
    };
    report.sampled = 1;
    let bound = a.pair_product_sum();
    let mut count = count_sdr(&family);
    for _ in 0..MAX_STEPS {
        let step = descent_step(&family, t, a).expect("walk stays valued");
        let Some(step) = step else {
            let census = census_with(&family, t, a, Execution::Sequential).expect("valued");
            if census.nep != census.nsp {
                report.unsaturated_fixpoints += 1;
            }
            if BigCount::from(census.nsp) > bound || BigCount::from(census.nep) < bound {
                report.bound_violations += 1;
            }
            if family.is_bar_family(t, a).expect("lengths agree") {
                report.fixpoints_bar += 1;
            }
            return report;
        };
        report.steps += 1;
        if !step.family.is_valued_family(t, a).expect("lengths agree") {
            report.invalid_steps += 1;
            return report;
        }
        let next = count_sdr(&step.family);
        if next >= count {
            report.non_decreasing_steps += 1;
        }
        count = next;
        family = step.family;
    }
    report.runaway_walks += 1;
    report
}

/// Runs `samples` independent walks; walk `i` draws from stream `i` of a
/// ChaCha generator seeded with `seed`, so the report does not depend on the
/// worker count.
pub fn descent_probe(spec: &SearchSpec, samples: usize, seed: u64) -> Result<DescentReport> {
    descent_probe_with(spec, samples, seed, Execution::default())
}

pub fn descent_probe_with(
    spec: &SearchSpec,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<DescentReport> {
    if spec.t < 2 {
        return Err(Error::Precondition(format!(
            "descent probe needs t >= 2, got t = {}",
            spec.t
        )));
    }
    let parts = exec.map_range(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        walk_one(spec, &mut rng)
    });
    let mut report = DescentReport {
        t: spec.t,
        valuation: spec.valuation.as_slice().to_vec(),
        seed,
        samples_requested: samples,
        ..DescentReport::default()
    };
    for part in &parts {
        report.absorb(part);
    }
    Ok(report)
}
