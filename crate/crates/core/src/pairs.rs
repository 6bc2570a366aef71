//! Exclusive and saturated element pairs of valued families.
//!
//! `{x, y}` is exclusive when each of `x`, `y` lies in some member missing the
//! other. An exclusive pair is saturated when some index set `I` avoids
//! `I_x ∩ I_y`, meets both `I_x \ I_y` and `I_y \ I_x`, and is tight. Only
//! tight sets can witness saturation, so they are computed once per family
//! and filtered per pair.

use crate::bitset::IndexSet;
use crate::exec::Execution;
use crate::family::{tight_sets, SetFamily, TightSet, Valuation};
use crate::{BigCount, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub x: usize,
    pub y: usize,
    pub exclusive: bool,
    pub saturated: bool,
    /// First witnessing tight set in ascending bit-mask order.
    pub witness: Option<IndexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCensus {
    /// Number of exclusive pairs.
    pub nep: usize,
    /// Number of saturated pairs.
    pub nsp: usize,
    /// `Σ_{i<j} a_i a_j`.
    pub bound: BigCount,
    /// Every exclusive pair, ordered by `(x, y)` with `x < y`.
    pub reports: Vec<PairReport>,
    /// False for `t < 2`, where the pair-count bounds and the descent
    /// guarantee are not claimed.
    pub theorems_apply: bool,
}

fn classify(columns: &[IndexSet], tight: &[TightSet], x: usize, y: usize) -> PairReport {
    let (ix, iy) = (columns[x], columns[y]);
    let only_x = ix.difference(iy);
    let only_y = iy.difference(ix);
    let both = ix.intersection(iy);
    let exclusive = !only_x.is_empty() && !only_y.is_empty();
    let witness = if exclusive {
        tight.iter().map(|ts| ts.indices).find(|&set| {
            set.intersection(both).is_empty()
                && !set.intersection(only_x).is_empty()
                && !set.intersection(only_y).is_empty()
        })
    } else {
        None
    };
    PairReport {
        x,
        y,
        exclusive,
        saturated: witness.is_some(),
        witness,
    }
}

fn check_pair(family: &SetFamily, x: usize, y: usize) -> Result<()> {
    for e in [x, y] {
        if e >= family.m() {
            return Err(Error::ElementOutOfRange {
                element: e,
                m: family.m(),
            });
        }
    }
    if x == y {
        return Err(Error::SameElement);
    }
    Ok(())
}

pub fn classify_pair(
    family: &SetFamily,
    t: usize,
    a: &Valuation,
    x: usize,
    y: usize,
) -> Result<PairReport> {
    check_pair(family, x, y)?;
    let tight = tight_sets(family, t, a)?;
    Ok(classify(family.columns(), &tight, x, y))
}

/// Classifies every unordered pair of ground elements.
pub fn census(family: &SetFamily, t: usize, a: &Valuation) -> Result<PairCensus> {
    census_with(family, t, a, Execution::default())
}

pub fn census_with(
    family: &SetFamily,
    t: usize,
    a: &Valuation,
    exec: Execution,
) -> Result<PairCensus> {
    let tight = tight_sets(family, t, a)?;
    Ok(census_from(family, t, a, &tight, exec))
}

fn census_from(
    family: &SetFamily,
    t: usize,
    a: &Valuation,
    tight: &[TightSet],
    exec: Execution,
) -> PairCensus {
    let m = family.m();
    let columns = family.columns();
    let rows = exec.map_range(m, |x| {
        (x + 1..m)
            .map(|y| classify(columns, tight, x, y))
            .filter(|r| r.exclusive)
            .collect::<Vec<_>>()
    });
    let reports: Vec<PairReport> = rows.into_iter().flatten().collect();
    PairCensus {
        nep: reports.len(),
        nsp: reports.iter().filter(|r| r.saturated).count(),
        bound: a.pair_product_sum(),
        reports,
        theorems_apply: t >= 2,
    }
}

/// One exchange along the first unsaturated pair.
#[derive(Clone, Debug)]
pub struct DescentStep {
    /// `F_y^x` for the chosen pair, with `x < y`.
    pub family: SetFamily,
    pub pair: PairReport,
    /// Whether the strict-decrease guarantee applies (`t ≥ 2`).
    pub theorems_apply: bool,
}

/// Finds the lexicographically first unsaturated exclusive pair `(x, y)` and
/// applies the exchange replacing `x` by `y`. Returns `None` when every
/// exclusive pair is saturated.
pub fn descent_step(family: &SetFamily, t: usize, a: &Valuation) -> Result<Option<DescentStep>> {
    let tight = tight_sets(family, t, a)?;
    let columns = family.columns();
    let m = family.m();
    let pair = (0..m)
        .flat_map(|x| (x + 1..m).map(move |y| (x, y)))
        .map(|(x, y)| classify(columns, &tight, x, y))
        .find(|r| r.exclusive && !r.saturated);
    let Some(pair) = pair else {
        return Ok(None);
    };
    let exchanged = family.exchange(pair.x, pair.y)?;
    Ok(Some(DescentStep {
        family: exchanged.family,
        pair,
        theorems_apply: t >= 2,
    }))
}
