//! Exhaustive search for the valued families with the fewest SDRs.
//!
//! The universe is every valued `(t, n)`-family with a given valuation over at
//! most `ground_cap` elements, one representative per class under ground
//! relabelling and weight-preserving member permutations. The search tree is
//! split into shards by the first two rows; shards run independently and are
//! merged in shard order, so reports do not depend on the worker count.

mod orderly;
mod probe;

pub use probe::{descent_probe, descent_probe_with, sample_valued_family, DescentReport};

use crate::bitset::ElementSet;
use crate::closed::valued_u;
use crate::counting::count_sdr;
use crate::exec::Execution;
use crate::family::{canonical_form, construct_bar, SetFamily, Valuation};
use crate::{BigCount, Error, Result};
use orderly::{Generator, Prefix};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Ground sizes are bit positions of a single word.
pub const MAX_GROUND: usize = 63;
/// Union tables have `2^n` entries.
pub const MAX_SEARCH_MEMBERS: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Minimum and minimiser classes only.
    #[default]
    MinOnly,
    /// Also keep one concrete family per minimiser class.
    CollectMinimizers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub t: usize,
    pub valuation: Valuation,
    pub ground_cap: usize,
    pub mode: SearchMode,
}

impl SearchSpec {
    /// Full universe: `ground_cap = Σ (a_i + t)`.
    pub fn new(t: usize, valuation: Valuation) -> Result<Self> {
        let cap = valuation.total() + t * valuation.len();
        SearchSpec::with_ground_cap(t, valuation, cap)
    }

    pub fn with_ground_cap(t: usize, valuation: Valuation, ground_cap: usize) -> Result<Self> {
        let n = valuation.len();
        if n == 0 {
            return Err(Error::InvalidSearch("valuation is empty".into()));
        }
        if n > MAX_SEARCH_MEMBERS {
            return Err(Error::InvalidSearch(format!(
                "{n} members exceed the search limit of {MAX_SEARCH_MEMBERS}"
            )));
        }
        let low = valuation.total() + t;
        let high = valuation.total() + t * n;
        if ground_cap < low || ground_cap > high {
            return Err(Error::InvalidSearch(format!(
                "ground cap {ground_cap} outside [{low}, {high}]"
            )));
        }
        if ground_cap > MAX_GROUND {
            return Err(Error::InvalidSearch(format!(
                "ground cap {ground_cap} exceeds {MAX_GROUND}"
            )));
        }
        Ok(SearchSpec {
            t,
            valuation,
            ground_cap,
            mode: SearchMode::MinOnly,
        })
    }

    pub fn collecting(mut self) -> Self {
        self.mode = SearchMode::CollectMinimizers;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_families: Option<u64>,
    pub max_duration: Option<Duration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    /// A budget ran out; counts are partial and no uniqueness is claimed.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub t: usize,
    pub valuation: Valuation,
    pub ground_cap: usize,
    pub status: SearchStatus,
    /// Smallest SDR count seen; `None` only if nothing was scanned.
    pub minimum: Option<BigCount>,
    pub closed_form: BigCount,
    /// Canonical forms of the minimising classes, ascending.
    pub minimizers: Vec<Vec<u8>>,
    /// One family per entry of `minimizers` in collect mode, else empty.
    pub representatives: Vec<SetFamily>,
    pub families_scanned: u64,
    pub canonical_classes: u64,
    pub unique_bar: bool,
    pub shards: usize,
}

/// Progress of one finished shard.
#[derive(Clone, Debug)]
pub struct ShardProgress {
    pub shard: usize,
    pub shards: usize,
    pub families: u64,
    pub minimum: Option<BigCount>,
}

#[derive(Default)]
struct ShardResult {
    families: u64,
    minimum: Option<BigCount>,
    minimizers: BTreeMap<Vec<u8>, Option<SetFamily>>,
    classes: BTreeSet<Vec<u8>>,
}

impl ShardResult {
    fn offer(&mut self, count: BigCount, code: &[u8], family: &SetFamily, collect: bool) {
        match self.minimum.as_ref().map(|m| count.cmp(m)) {
            Some(std::cmp::Ordering::Greater) => return,
            Some(std::cmp::Ordering::Less) | None => {
                self.minimum = Some(count);
                self.minimizers.clear();
            }
            Some(std::cmp::Ordering::Equal) => {}
        }
        self.minimizers
            .entry(code.to_vec())
            .or_insert_with(|| collect.then(|| family.clone()));
    }

    fn merge(&mut self, other: ShardResult) {
        self.families += other.families;
        self.classes.extend(other.classes);
        let Some(other_min) = other.minimum else {
            return;
        };
        match self.minimum.as_ref().map(|m| other_min.cmp(m)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => {
                for (code, fam) in other.minimizers {
                    self.minimizers.entry(code).or_insert(fam);
                }
            }
            Some(std::cmp::Ordering::Less) | None => {
                self.minimum = Some(other_min);
                self.minimizers = other.minimizers;
            }
        }
    }
}

fn family_of(prefix: &Prefix) -> SetFamily {
    SetFamily::from_index_sets(
        prefix
            .rows
            .iter()
            .map(|&r| ElementSet::from_word(r))
            .collect(),
    )
    .expect("generated rows form a family")
}

fn shard_roots(generator: &Generator) -> Vec<Prefix> {
    let mut level = vec![generator.root()];
    for _ in 0..generator.n().min(2) {
        level = level.iter().flat_map(|p| generator.children(p)).collect();
    }
    level
}

/// Every class representative of the search universe, in generation order.
pub fn enumerate_families(spec: &SearchSpec) -> Result<Vec<SetFamily>> {
    let generator = Generator::new(spec.t, spec.valuation.as_slice(), spec.ground_cap);
    let mut out = Vec::new();
    for root in shard_roots(&generator) {
        let _ = generator.walk(&root, &mut |leaf: &Prefix| {
            out.push(family_of(leaf));
            ControlFlow::Continue(())
        });
    }
    Ok(out)
}

/// Minimum SDR count over the universe, with the minimising classes.
pub fn verify_extremal(spec: &SearchSpec) -> Result<SearchReport> {
    verify_extremal_with(spec, Execution::default(), &SearchBudget::default(), |_| {})
}

pub fn verify_extremal_with<P>(
    spec: &SearchSpec,
    exec: Execution,
    budget: &SearchBudget,
    progress: P,
) -> Result<SearchReport>
where
    P: Fn(&ShardProgress) + Sync,
{
    let a = &spec.valuation;
    let generator = Generator::new(spec.t, a.as_slice(), spec.ground_cap);
    let roots = shard_roots(&generator);
    let shards = roots.len();
    let collect = spec.mode == SearchMode::CollectMinimizers;
    let deadline = budget.max_duration.map(|d| Instant::now() + d);
    let seen = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);

    let results = exec.map_range(shards, |shard| {
        let mut result = ShardResult::default();
        let _ = generator.walk(&roots[shard], &mut |leaf: &Prefix| {
            if aborted.load(Ordering::Relaxed) {
                return ControlFlow::Break(());
            }
            let total = seen.fetch_add(1, Ordering::Relaxed) + 1;
            let over_count = budget.max_families.is_some_and(|max| total > max);
            let over_time = deadline.is_some_and(|d| Instant::now() > d);
            if over_count || over_time {
                aborted.store(true, Ordering::Relaxed);
                return ControlFlow::Break(());
            }
            let family = family_of(leaf);
            let code = canonical_form(&family, Some(a));
            result.families += 1;
            result.offer(count_sdr(&family), &code, &family, collect);
            result.classes.insert(code);
            ControlFlow::Continue(())
        });
        progress(&ShardProgress {
            shard,
            shards,
            families: result.families,
            minimum: result.minimum.clone(),
        });
        result
    });

    let mut total = ShardResult::default();
    for r in results {
        total.merge(r);
    }
    let status = if aborted.load(Ordering::Relaxed) {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Complete
    };
    let bar_code = canonical_form(&construct_bar(spec.t, a), Some(a));
    let unique_bar = status == SearchStatus::Complete
        && total.minimizers.len() == 1
        && total.minimizers.contains_key(&bar_code);
    let (minimizers, representatives): (Vec<Vec<u8>>, Vec<Option<SetFamily>>) =
        total.minimizers.into_iter().unzip();
    Ok(SearchReport {
        t: spec.t,
        valuation: a.clone(),
        ground_cap: spec.ground_cap,
        status,
        minimum: total.minimum,
        closed_form: valued_u(spec.t, a),
        minimizers,
        representatives: representatives.into_iter().flatten().collect(),
        families_scanned: total.families,
        canonical_classes: total.classes.len() as u64,
        unique_bar,
        shards,
    })
}
