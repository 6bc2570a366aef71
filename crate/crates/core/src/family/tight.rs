//! Tight index sets and the equivalence classes they generate.
//!
//! For a valued family, an index set `I` with `|I| ≥ 2` is tight when
//! `|⋃_{i∈I} A_i| = Σ_{i∈I} a_i + t`. Two positions are equivalent when some
//! tight set holds both; tight sets that intersect have a tight union, so the
//! classes can be built by merging every tight set.

use super::{SetFamily, Valuation};
use crate::bitset::IndexSet;
use crate::{Error, Result};
use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TightSet {
    pub indices: IndexSet,
    pub union_size: usize,
}

fn require_valued(family: &SetFamily, t: usize, a: &Valuation) -> Result<()> {
    if !family.is_valued_family(t, a)? {
        return Err(Error::NotValued { t });
    }
    Ok(())
}

/// All tight sets, ascending by bit-mask.
pub fn tight_sets(family: &SetFamily, t: usize, a: &Valuation) -> Result<Vec<TightSet>> {
    require_valued(family, t, a)?;
    Ok(tight_sets_unchecked(family, t, a))
}

pub(crate) fn tight_sets_unchecked(family: &SetFamily, t: usize, a: &Valuation) -> Vec<TightSet> {
    let mut out = Vec::new();
    let _ = family.for_each_union(|set, union| {
        if set.len() >= 2 && union.len() == a.weight(set) + t {
            out.push(TightSet {
                indices: set,
                union_size: union.len(),
            });
        }
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    out
}

/// Partition of the member positions, each class as an [`IndexSet`], ordered
/// by smallest position.
pub fn equivalence_classes(family: &SetFamily, t: usize, a: &Valuation) -> Result<Vec<IndexSet>> {
    require_valued(family, t, a)?;
    Ok(classes_from(
        family.n(),
        &tight_sets_unchecked(family, t, a),
    ))
}

pub(crate) fn classes_from(n: usize, tight: &[TightSet]) -> Vec<IndexSet> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for ts in tight {
        let mut it = ts.indices.iter();
        let Some(first) = it.next() else { continue };
        for j in it {
            let (ra, rb) = (find(&mut parent, first), find(&mut parent, j));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut classes: Vec<IndexSet> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(IndexSet::EMPTY);
        }
        classes[slot[r]].0 |= 1 << i;
    }
    classes
}
