//! Counting, listing and detecting SDRs.

use crate::family::SetFamily;
use crate::BigCount;
use num_traits::{One, Zero};

/// Number of SDRs of `family`, exactly.
///
/// Dynamic program over subsets of member positions: after processing ground
/// elements `0..=x`, `table[S]` counts the injective assignments of processed
/// elements to exactly the members in `S`. Element `x` can extend a partial
/// assignment `S` to any member `i ∈ I_x \ S`. Updating `S` in descending
/// order lets the table be rewritten in place. Runs in `O(m · 2^n · n)`.
///
/// Uses `u128` cells when `Π|A_i|` (an upper bound on every cell) fits, and
/// arbitrary precision otherwise.
pub fn count_sdr(family: &SetFamily) -> BigCount {
    let n = family.n();
    if n > family.m() {
        return BigCount::zero();
    }
    assert!(n <= 30, "subset table for {n} members is too large");
    let bound = family
        .members()
        .iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s.len() as u128));
    match bound {
        Some(_) => BigCount::from(subset_dp::<u128>(family)),
        None => subset_dp::<BigCount>(family),
    }
}

trait Cell: Clone + Zero + One + for<'a> std::ops::AddAssign<&'a Self> {}
impl Cell for u128 {}
impl Cell for BigCount {}

fn subset_dp<C: Cell>(family: &SetFamily) -> C {
    let n = family.n();
    let full = (1usize << n) - 1;
    let mut table = vec![C::zero(); full + 1];
    table[0] = C::one();
    // Only subsets of the members touched so far can be nonzero.
    let mut reach = 0usize;
    for col in family.columns() {
        let col = col.bits() as usize;
        reach |= col;
        let mut s = reach;
        loop {
            let mut gain = col & s;
            if gain != 0 {
                let mut acc = table[s].clone();
                while gain != 0 {
                    let i = gain & gain.wrapping_neg();
                    gain ^= i;
                    acc += &table[s ^ i];
                }
                table[s] = acc;
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & reach;
        }
    }
    table.swap_remove(full)
}

/// SDRs listed in a fixed order, possibly truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdrList {
    /// Element indices, position `i` drawn from member `i`.
    pub sequences: Vec<Vec<usize>>,
    /// More than `limit` SDRs exist.
    pub truncated: bool,
}

/// Backtracking enumeration: members in position order, candidate elements
/// ascending. Returns at most `limit` SDRs and reports whether more exist.
pub fn enumerate_sdrs(family: &SetFamily, limit: usize) -> SdrList {
    let n = family.n();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut taken = vec![false; family.m()];
    let mut truncated = false;

    fn walk(
        family: &SetFamily,
        current: &mut Vec<usize>,
        taken: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
        truncated: &mut bool,
    ) -> bool {
        let i = current.len();
        if i == family.n() {
            if out.len() == limit {
                *truncated = true;
                return false;
            }
            out.push(current.clone());
            return true;
        }
        for x in family.member(i).iter() {
            if taken[x] {
                continue;
            }
            taken[x] = true;
            current.push(x);
            let go_on = walk(family, current, taken, out, limit, truncated);
            current.pop();
            taken[x] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    walk(
        family,
        &mut current,
        &mut taken,
        &mut out,
        limit,
        &mut truncated,
    );
    SdrList {
        sequences: out,
        truncated,
    }
}

/// Whether at least one SDR exists, via augmenting paths.
pub fn has_sdr(family: &SetFamily) -> bool {
    let n = family.n();
    if n > family.m() {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; family.m()];

    fn augment(
        family: &SetFamily,
        i: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for x in family.member(i).iter() {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            if owner[x].is_none_or(|j| augment(family, j, seen, owner)) {
                owner[x] = Some(i);
                return true;
            }
        }
        false
    }

    (0..n).all(|i| {
        let mut seen = vec![false; family.m()];
        augment(family, i, &mut seen, &mut owner)
    })
}

/// Whether `sequence` is an SDR of `family`.
pub fn is_sdr(family: &SetFamily, sequence: &[usize]) -> bool {
    let mut elements = std::collections::HashSet::new();
    sequence.len() == family.n()
        && sequence
            .iter()
            .enumerate()
            .all(|(i, &x)| x < family.m() && family.member(i).contains(x) && elements.insert(x))
}
