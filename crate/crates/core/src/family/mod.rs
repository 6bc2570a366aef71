//! Set families over a dense ground set.
//!
//! Ground elements are the integers `0..m`; the external labels live in a
//! [`GroundMap`]. Member sets are bit-masks, member positions are `0..n`.

mod canon;
mod io;
mod tight;

pub use canon::canonical_form;
pub use io::{parse_family, serialize_family, FamilyDocument, FamilyFile};
pub use tight::{equivalence_classes, tight_sets, TightSet};

use crate::bitset::{ElementSet, IndexSet, MAX_MEMBERS};
use crate::{BigCount, Error, Result};
use std::collections::HashMap;
use std::ops::ControlFlow;

/// External labels of the ground elements, indexed densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundMap {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundMap {
    /// Fails on repeated labels.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Malformed(format!("ground label {l:?} is repeated")));
            }
        }
        Ok(GroundMap { labels, index })
    }

    /// Labels `"1"`, `"2"`, ..., `"m"`.
    pub fn numbered(m: usize) -> Self {
        GroundMap::new((1..=m).map(|i| i.to_string()).collect()).expect("distinct numerals")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lookup(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}

/// A positive weight per member position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<usize>);

impl Valuation {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = a.iter().enumerate().find(|(_, &v)| v == 0) {
            return Err(Error::NonPositiveWeight { index, value });
        }
        Ok(Valuation(a))
    }

    pub fn ones(n: usize) -> Self {
        Valuation(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn weight(&self, set: IndexSet) -> usize {
        set.iter().map(|i| self.0[i]).sum()
    }

    /// `Σ_{i<j} a_i a_j`, the pair-count bound.
    pub fn pair_product_sum(&self) -> BigCount {
        let mut acc = BigCount::default();
        let mut prefix = BigCount::default();
        for &a in &self.0 {
            acc += &prefix * a;
            prefix += a;
        }
        acc
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::ValuationLength {
                expected: n,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

/// A family `(A_1, ..., A_n)` of nonempty sets whose union is exactly the
/// ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    members: Vec<ElementSet>,
    /// `columns[x]` is the set of member positions containing `x`.
    columns: Vec<IndexSet>,
    ground: GroundMap,
}

impl SetFamily {
    /// Builds a family from members given as element indices into `ground`.
    pub fn new(members: Vec<ElementSet>, ground: GroundMap) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::NoMembers);
        }
        if members.len() > MAX_MEMBERS {
            return Err(Error::TooManyMembers(members.len()));
        }
        let m = ground.len();
        let mut columns = vec![IndexSet::EMPTY; m];
        for (i, member) in members.iter().enumerate() {
            if member.is_empty() {
                return Err(Error::EmptyMember { member: i });
            }
            for x in member.iter() {
                if x >= m {
                    return Err(Error::ElementOutOfRange { element: x, m });
                }
                columns[x].0 |= 1 << i;
            }
        }
        if let Some(x) = columns.iter().position(|c| c.is_empty()) {
            return Err(Error::Malformed(format!(
                "ground element {:?} belongs to no member",
                ground.label(x)
            )));
        }
        Ok(SetFamily {
            members,
            columns,
            ground,
        })
    }

    /// Builds a family from element indices, relabelling the used elements
    /// densely in ascending order with labels `"1"`, `"2"`, ...
    pub fn from_index_sets(members: Vec<ElementSet>) -> Result<Self> {
        let used = members
            .iter()
            .fold(ElementSet::new(), |acc, s| acc.union(s));
        let max = used.iter().last().map_or(0, |x| x + 1);
        if used.len() == max {
            return SetFamily::new(members, GroundMap::numbered(max));
        }
        let mut remap = vec![usize::MAX; max];
        for (new, old) in used.iter().enumerate() {
            remap[old] = new;
        }
        let members = members
            .iter()
            .map(|s| s.iter().map(|x| remap[x]).collect())
            .collect();
        SetFamily::new(members, GroundMap::numbered(used.len()))
    }

    /// Convenience constructor from slices of element indices.
    pub fn from_slices(members: &[&[usize]]) -> Result<Self> {
        SetFamily::from_index_sets(
            members
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        )
    }

    /// Number of members.
    pub fn n(&self) -> usize {
        self.members.len()
    }

    /// Ground set size.
    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElementSet {
        &self.members[i]
    }

    pub fn ground(&self) -> &GroundMap {
        &self.ground
    }

    pub fn label(&self, x: usize) -> &str {
        self.ground.label(x)
    }

    /// `I_x` for every element, indexed by element.
    pub fn columns(&self) -> &[IndexSet] {
        &self.columns
    }

    pub fn all_members(&self) -> IndexSet {
        IndexSet::full(self.n())
    }

    /// `I_x`: positions of the members containing `x`.
    pub fn member_indices(&self, x: usize) -> Result<IndexSet> {
        self.columns
            .get(x)
            .copied()
            .ok_or(Error::ElementOutOfRange {
                element: x,
                m: self.m(),
            })
    }

    pub fn degree(&self, x: usize) -> Result<usize> {
        self.member_indices(x).map(IndexSet::len)
    }

    fn check_index_set(&self, set: IndexSet) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if let Some(index) = set.iter().find(|&i| i >= self.n()) {
            return Err(Error::IndexOutOfRange { index, n: self.n() });
        }
        Ok(())
    }

    /// `|⋃_{i∈I} A_i|`.
    pub fn union_size(&self, set: IndexSet) -> Result<usize> {
        self.check_index_set(set)?;
        Ok(self.union_of(set).len())
    }

    pub(crate) fn union_of(&self, set: IndexSet) -> ElementSet {
        let mut acc = ElementSet::with_capacity(self.m());
        for i in set.iter() {
            acc.union_with(&self.members[i]);
        }
        acc
    }

    /// Visits every nonempty subset of member positions together with the
    /// union of its members. Stops early on `Break`.
    pub(crate) fn for_each_union<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(IndexSet, &ElementSet) -> ControlFlow<()>,
    {
        fn walk<F>(
            members: &[ElementSet],
            start: usize,
            set: IndexSet,
            acc: &ElementSet,
            visit: &mut F,
        ) -> ControlFlow<()>
        where
            F: FnMut(IndexSet, &ElementSet) -> ControlFlow<()>,
        {
            for i in start..members.len() {
                let next = set.union(IndexSet::singleton(i));
                let union = acc.union(&members[i]);
                visit(next, &union)?;
                walk(members, i + 1, next, &union, visit)?;
            }
            ControlFlow::Continue(())
        }
        walk(
            &self.members,
            0,
            IndexSet::EMPTY,
            &ElementSet::with_capacity(self.m()),
            &mut visit,
        )
    }

    /// Whether every nonempty `I` has `|⋃_{i∈I} A_i| ≥ |I| + t`.
    pub fn is_t_family(&self, t: usize) -> bool {
        self.for_each_union(|set, union| {
            if union.len() < set.len() + t {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_continue()
    }

    /// Whether `|A_i| = a_i + t` for all `i` and every `I` with `|I| ≥ 2`
    /// has `|⋃_{i∈I} A_i| ≥ Σ_{i∈I} a_i + t`.
    pub fn is_valued_family(&self, t: usize, a: &Valuation) -> Result<bool> {
        a.check_len(self.n())?;
        if !self.has_valued_sizes(t, a) {
            return Ok(false);
        }
        Ok(self
            .for_each_union(|set, union| {
                if set.len() >= 2 && union.len() < a.weight(set) + t {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })
            .is_continue())
    }

    fn has_valued_sizes(&self, t: usize, a: &Valuation) -> bool {
        self.members
            .iter()
            .zip(a.as_slice())
            .all(|(s, &ai)| s.len() == ai + t)
    }

    /// Whether this is the family with pairwise-disjoint private blocks of
    /// sizes `a_i` around one shared block of `t` elements.
    pub fn is_bar_family(&self, t: usize, a: &Valuation) -> Result<bool> {
        a.check_len(self.n())?;
        if !self.has_valued_sizes(t, a) {
            return Ok(false);
        }
        if self.n() == 1 {
            return Ok(true);
        }
        let common = self.members[0].intersection(&self.members[1]);
        if common.len() != t {
            return Ok(false);
        }
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.members[i].intersection(&self.members[j]) != common {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The exchange transform `F_y^x`: every member containing `x` but not
    /// `y` has `x` replaced by `y`.
    pub fn exchange(&self, x: usize, y: usize) -> Result<Exchange> {
        let ix = self.member_indices(x)?;
        let iy = self.member_indices(y)?;
        if x == y {
            return Err(Error::SameElement);
        }
        let moved = ix.difference(iy);
        let mut members = self.members.clone();
        for i in moved.iter() {
            members[i].remove(x);
            members[i].insert(y);
        }
        if moved != ix {
            let index_map = (0..self.m()).map(Some).collect();
            let family = SetFamily::new(members, self.ground.clone())?;
            return Ok(Exchange {
                family,
                index_map,
                dropped: None,
            });
        }
        // x left every member: drop it and close the gap.
        let index_map: Vec<Option<usize>> = (0..self.m())
            .map(|e| match e.cmp(&x) {
                std::cmp::Ordering::Less => Some(e),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(e - 1),
            })
            .collect();
        let members = members
            .iter()
            .map(|s| s.iter().map(|e| index_map[e].expect("x removed")).collect())
            .collect();
        let labels = self
            .ground
            .labels()
            .iter()
            .enumerate()
            .filter(|&(e, _)| e != x)
            .map(|(_, l)| l.clone())
            .collect();
        let family = SetFamily::new(members, GroundMap::new(labels)?)?;
        Ok(Exchange {
            family,
            index_map,
            dropped: Some(x),
        })
    }

    /// Relabels ground elements: element `e` becomes `perm[e]`, carrying its
    /// label along.
    pub fn relabel(&self, perm: &[usize]) -> Result<SetFamily> {
        if perm.len() != self.m() {
            return Err(Error::Precondition(
                "permutation length differs from ground size".into(),
            ));
        }
        let mut labels = vec![String::new(); self.m()];
        for (e, &p) in perm.iter().enumerate() {
            labels[p] = self.label(e).to_string();
        }
        let members = self
            .members
            .iter()
            .map(|s| s.iter().map(|e| perm[e]).collect())
            .collect();
        SetFamily::new(members, GroundMap::new(labels)?)
    }

    /// Reorders members: position `i` of the result holds member `order[i]`.
    pub fn reorder_members(&self, order: &[usize]) -> Result<SetFamily> {
        if order.len() != self.n() {
            return Err(Error::Precondition(
                "member order length differs from n".into(),
            ));
        }
        let members = order.iter().map(|&i| self.members[i].clone()).collect();
        SetFamily::new(members, self.ground.clone())
    }
}

/// Result of [`SetFamily::exchange`].
#[derive(Clone, Debug)]
pub struct Exchange {
    pub family: SetFamily,
    /// Old element index to new element index; `None` for a dropped element.
    pub index_map: Vec<Option<usize>>,
    /// Old index of the element that left the ground set, if any.
    pub dropped: Option<usize>,
}

/// `A_i* = {i, n+1, ..., n+t}` with labels `"1"` to `"n+t"`.
pub fn construct_star(t: usize, n: usize) -> SetFamily {
    construct_bar(t, &Valuation::ones(n))
}

/// Private blocks `B_i` of sizes `a_i` (labelled first, in member order)
/// plus a shared block of `t` elements (labelled last); `A_i = B_i ∪ T`.
pub fn construct_bar(t: usize, a: &Valuation) -> SetFamily {
    assert!(!a.is_empty(), "valuation must have at least one entry");
    let private = a.total();
    let shared = private..private + t;
    let mut start = 0;
    let members = a
        .as_slice()
        .iter()
        .map(|&ai| {
            let block = start..start + ai;
            start += ai;
            block.chain(shared.clone()).collect()
        })
        .collect();
    SetFamily::new(members, GroundMap::numbered(private + t)).expect("bar family is well formed")
}
