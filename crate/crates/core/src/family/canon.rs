//! Canonical forms under ground relabelling and weight-preserving member
//! permutations.
//!
//! For a fixed order of the members, relabelling the ground set only permutes
//! the columns `I_x`, so the sorted column list is a complete invariant. The
//! canonical form is the largest such list over member orders. Colour
//! refinement on the member/element incidence graph fixes the order of members
//! with distinguishable neighbourhoods; only members that stay in the same
//! colour cell are permuted.

use super::{SetFamily, Valuation};
use std::collections::BTreeMap;

/// Canonical bytes of `family`. Members may only be swapped when their
/// weights agree; with `weights = None` every member order is allowed.
///
/// Layout: `n` and `m` as little-endian `u32`, one little-endian `u64` weight
/// per canonical position, then the columns as little-endian `u64` masks
/// with position 0 in the most significant bit, sorted descending.
pub fn canonical_form(family: &SetFamily, weights: Option<&Valuation>) -> Vec<u8> {
    let n = family.n();
    let base: Vec<usize> = match weights {
        Some(a) => {
            assert_eq!(a.len(), n, "weight grouping must cover every member");
            a.as_slice().to_vec()
        }
        None => vec![0; n],
    };
    let colors = refine(family, &base);

    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(i);
    }
    let cells: Vec<Vec<usize>> = by_color.into_values().collect();

    let mut best: Option<Vec<u64>> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    arrange(family, &cells, 0, &mut order, &mut used, &mut best);
    let columns = best.expect("at least one arrangement");

    let mut out = Vec::with_capacity(8 + 8 * n + 8 * columns.len());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&(family.m() as u32).to_le_bytes());
    for cell in &cells {
        for &i in cell {
            out.extend_from_slice(&(base[i] as u64).to_le_bytes());
        }
    }
    for c in columns {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

fn arrange(
    family: &SetFamily,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u64>>,
) {
    let Some(members) = cells.get(cell) else {
        let code = column_code(family, order);
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    };
    let placed = members.iter().filter(|&&i| used[i]).count();
    if placed == members.len() {
        return arrange(family, cells, cell + 1, order, used, best);
    }
    for &i in members {
        if !used[i] {
            used[i] = true;
            order.push(i);
            arrange(family, cells, cell, order, used, best);
            order.pop();
            used[i] = false;
        }
    }
}

/// Sorted (descending) columns when position `p` holds member `order[p]`.
fn column_code(family: &SetFamily, order: &[usize]) -> Vec<u64> {
    let mut position = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut code: Vec<u64> = family
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .fold(0u64, |acc, i| acc | 1 << (63 - position[i]))
        })
        .collect();
    code.sort_unstable_by(|a, b| b.cmp(a));
    code
}

/// Stable colour refinement; returns one colour per member. Colours are
/// ranks of isomorphism-invariant signatures, so equal inputs up to
/// relabelling give equal colourings up to the same relabelling.
fn refine(family: &SetFamily, base: &[usize]) -> Vec<usize> {
    let mut member_color: Vec<usize> = base.to_vec();
    let mut element_color: Vec<usize> = vec![0; family.m()];
    let mut classes = (usize::MAX, usize::MAX);
    loop {
        let element_sigs: Vec<(usize, Vec<usize>)> = family
            .columns()
            .iter()
            .zip(&element_color)
            .map(|(col, &c)| {
                let mut around: Vec<usize> = col.iter().map(|i| member_color[i]).collect();
                around.sort_unstable();
                (c, around)
            })
            .collect();
        let (ec, e_classes) = rank(&element_sigs);
        element_color = ec;

        let member_sigs: Vec<(usize, Vec<usize>)> = family
            .members()
            .iter()
            .zip(&member_color)
            .map(|(s, &c)| {
                let mut around: Vec<usize> = s.iter().map(|x| element_color[x]).collect();
                around.sort_unstable();
                (c, around)
            })
            .collect();
        let (mc, m_classes) = rank(&member_sigs);
        member_color = mc;

        if (e_classes, m_classes) == classes {
            return member_color;
        }
        classes = (e_classes, m_classes);
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> (Vec<usize>, usize) {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    let colors = sigs
        .iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect();
    (colors, distinct.len())
}
