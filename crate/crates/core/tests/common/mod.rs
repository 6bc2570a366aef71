//! Test-only oracles and instance generators. Nothing here calls the search
//! or counting code it is used to check.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use sdr_core::{canonical_form, ElementSet, SetFamily, Valuation};
use std::collections::BTreeSet;

/// Every family with `n` members over exactly `m` ground elements, up to
/// relabelling of the ground set: multisets of `m` nonzero columns in which
/// every member is hit.
pub fn families_up_to_relabelling(n: usize, m: usize, mut f: impl FnMut(&SetFamily)) {
    let types = (1u64 << n) - 1;
    let mut columns = Vec::with_capacity(m);
    fn rec(
        n: usize,
        m: usize,
        types: u64,
        start: u64,
        columns: &mut Vec<u64>,
        f: &mut dyn FnMut(&SetFamily),
    ) {
        if columns.len() == m {
            let hit = columns.iter().fold(0, |acc, c| acc | c);
            if hit != types {
                return;
            }
            let members: Vec<ElementSet> = (0..n)
                .map(|i| {
                    columns
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| *c >> i & 1 == 1)
                        .map(|(x, _)| x)
                        .collect()
                })
                .collect();
            f(&SetFamily::from_index_sets(members).unwrap());
            return;
        }
        for c in start..=types {
            columns.push(c);
            rec(n, m, types, c, columns, f);
            columns.pop();
        }
    }
    rec(n, m, types, 1, &mut columns, &mut f);
}

/// Random family with `1..=n_max` members, each a nonempty random subset of
/// `0..m` for `m` in `1..=m_max`; unused elements are dropped.
pub fn random_family<R: Rng>(rng: &mut R, n_max: usize, m_max: usize) -> SetFamily {
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(1..=m_max);
    let members = (0..n)
        .map(|_| loop {
            let s: ElementSet = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    SetFamily::from_index_sets(members).unwrap()
}

/// `k`-subsets of `0..n` as element vectors, lexicographic.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Every labelled valued family with member sizes `a_i + t` drawn from
/// `0..cap`. With `pin_first`, member 0 is fixed to `{0, ..., a_0 + t - 1}`,
/// which loses no class since the ground set can always be relabelled.
pub fn labelled_valued_families(
    t: usize,
    a: &Valuation,
    cap: usize,
    pin_first: bool,
    mut f: impl FnMut(&SetFamily),
) {
    let sizes: Vec<usize> = a.as_slice().iter().map(|ai| ai + t).collect();
    let choices: Vec<Vec<Vec<usize>>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i == 0 && pin_first {
                vec![(0..s).collect()]
            } else {
                subsets_of_size(cap, s)
            }
        })
        .collect();
    let mut pick = vec![0usize; sizes.len()];
    loop {
        let members: Vec<ElementSet> = pick
            .iter()
            .enumerate()
            .map(|(i, &p)| choices[i][p].iter().copied().collect())
            .collect();
        let family = SetFamily::from_index_sets(members).unwrap();
        if family.is_valued_family(t, a).unwrap() {
            f(&family);
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Canonical classes of the search universe, by filtering every labelled
/// family.
pub fn reference_classes(
    t: usize,
    a: &Valuation,
    cap: usize,
    pin_first: bool,
) -> BTreeSet<Vec<u8>> {
    let mut classes = BTreeSet::new();
    labelled_valued_families(t, a, cap, pin_first, |f| {
        classes.insert(canonical_form(f, Some(a)));
    });
    classes
}

/// SDR count by trying every tuple `(x_1, ..., x_n)` with `x_i ∈ A_i`.
pub fn brute_force_sdr_count(family: &SetFamily) -> u64 {
    fn rec(family: &SetFamily, i: usize, used: &mut Vec<usize>) -> u64 {
        if i == family.n() {
            return 1;
        }
        let mut total = 0;
        for x in family.member(i).iter() {
            if !used.contains(&x) {
                used.push(x);
                total += rec(family, i + 1, used);
                used.pop();
            }
        }
        total
    }
    rec(family, 0, &mut Vec::new())
}

/// Random ground permutation and weight-preserving member order.
pub fn random_symmetry<R: Rng>(rng: &mut R, family: &SetFamily, weights: &[usize]) -> SetFamily {
    let mut perm: Vec<usize> = (0..family.m()).collect();
    perm.shuffle(rng);
    let mut order: Vec<usize> = (0..family.n()).collect();
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &w) in weights.iter().enumerate() {
        groups.entry(w).or_default().push(i);
    }
    for positions in groups.values() {
        let mut shuffled = positions.clone();
        shuffled.shuffle(rng);
        for (&p, &i) in positions.iter().zip(&shuffled) {
            order[p] = i;
        }
    }
    family
        .relabel(&perm)
        .unwrap()
        .reorder_members(&order)
        .unwrap()
}

/// Brute-force isomorphism under ground relabelling and member orders that
/// keep weights: compare sorted column lists for every allowed member order.
pub fn isomorphic(f: &SetFamily, g: &SetFamily, weights: &[usize]) -> bool {
    if f.n() != g.n() || f.m() != g.m() {
        return false;
    }
    let cols = |fam: &SetFamily, order: &[usize]| {
        let mut pos = vec![0; order.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let mut c: Vec<u64> = fam
            .columns()
            .iter()
            .map(|col| col.iter().fold(0, |acc, i| acc | 1 << pos[i]))
            .collect();
        c.sort_unstable();
        c
    };
    let identity: Vec<usize> = (0..g.n()).collect();
    let target = cols(g, &identity);
    let mut order = identity.clone();
    fn perms(
        order: &mut Vec<usize>,
        p: usize,
        weights: &[usize],
        check: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if p == order.len() {
            return check(order);
        }
        for q in p..order.len() {
            if weights[order[q]] == weights[p] {
                order.swap(p, q);
                let hit = perms(order, p + 1, weights, check);
                order.swap(p, q);
                if hit {
                    return true;
                }
            }
        }
        false
    }
    perms(&mut order, 0, weights, &mut |o| cols(f, o) == target)
}
