//! Orderly generation of valued families, one per isomorphism class.
//!
//! A family is written as a 0/1 matrix with one row per member position and
//! one column per ground element. Its representative is the row-major
//! lexicographically largest matrix obtainable by permuting columns freely and
//! permuting rows among positions of equal weight (column 0 and row 0 are most
//! significant). If the full matrix is maximal, so is every prefix of rows
//! under the prefix's own symmetries, since any improvement of a prefix
//! extends to an improvement of the whole. Rows are therefore added one at a
//! time and a prefix is abandoned as soon as it is not maximal.
//!
//! A maximal matrix has its columns sorted in descending order, so each new
//! row uses some already-used elements plus a run of fresh elements that
//! immediately follows them.

use std::ops::ControlFlow;

pub(crate) struct Generator {
    sizes: Vec<usize>,
    weights: Vec<usize>,
    t: usize,
    cap: usize,
    /// `weight_of[S]` for every subset of positions.
    weight_of: Vec<usize>,
}

/// Partial assignment of the first rows.
#[derive(Clone, Debug)]
pub(crate) struct Prefix {
    pub rows: Vec<u64>,
    pub used: usize,
    /// Union of the rows in each subset of the placed positions.
    unions: Vec<u64>,
}

impl Generator {
    pub fn new(t: usize, weights: &[usize], cap: usize) -> Self {
        let n = weights.len();
        let mut weight_of = vec![0; 1 << n];
        for s in 1..weight_of.len() {
            let low = s.trailing_zeros() as usize;
            weight_of[s] = weight_of[s & (s - 1)] + weights[low];
        }
        Generator {
            sizes: weights.iter().map(|a| a + t).collect(),
            weights: weights.to_vec(),
            t,
            cap,
            weight_of,
        }
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn root(&self) -> Prefix {
        Prefix {
            rows: Vec::new(),
            used: 0,
            unions: vec![0],
        }
    }

    /// Every valid extension of `prefix` by one row, in generation order.
    pub fn children(&self, prefix: &Prefix) -> Vec<Prefix> {
        let mut out = Vec::new();
        let _ = self.for_each_child(prefix, |child| {
            out.push(child);
            ControlFlow::Continue(())
        });
        out
    }

    fn for_each_child<F>(&self, prefix: &Prefix, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(Prefix) -> ControlFlow<()>,
    {
        let k = prefix.rows.len();
        let size = self.sizes[k];
        let used = prefix.used;
        for fresh in 0..=size.min(self.cap - used) {
            let old = size - fresh;
            if old > used {
                continue;
            }
            let fresh_mask = ((1u64 << fresh) - 1) << used;
            let mut result = ControlFlow::Continue(());
            for_each_combination(used, old, |old_mask| {
                let row = old_mask | fresh_mask;
                if let Some(child) = self.extend(prefix, row, used + fresh) {
                    result = f(child);
                }
                result
            });
            result?;
        }
        ControlFlow::Continue(())
    }

    fn extend(&self, prefix: &Prefix, row: u64, used: usize) -> Option<Prefix> {
        let k = prefix.rows.len();
        let mut unions = prefix.unions.clone();
        unions.resize(1 << (k + 1), 0);
        for s in 0..1usize << k {
            let u = prefix.unions[s] | row;
            let set = s | 1 << k;
            if s != 0 && (u.count_ones() as usize) < self.weight_of[set] + self.t {
                return None;
            }
            unions[set] = u;
        }
        let mut rows = prefix.rows.clone();
        rows.push(row);
        if !self.is_maximal(&rows, used) {
            return None;
        }
        Some(Prefix { rows, used, unions })
    }

    /// Whether `rows` is the largest matrix in its orbit.
    fn is_maximal(&self, rows: &[u64], used: usize) -> bool {
        let keys = column_keys(rows, used);
        if keys.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        let own: Vec<u64> = rows.iter().map(|r| r.reverse_bits()).collect();
        let k = rows.len();
        let mut order: Vec<usize> = (0..k).collect();
        let mut maximal = true;
        let _ = self.weight_permutations(&mut order, 0, &mut |order| {
            if order.iter().enumerate().all(|(p, &i)| p == i) {
                return ControlFlow::Continue(());
            }
            let permuted: Vec<u64> = order.iter().map(|&i| rows[i]).collect();
            if sorted_matrix(&permuted, used) > own {
                maximal = false;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        maximal
    }

    /// Calls `f` with every arrangement of `order` that only swaps positions
    /// of equal weight.
    fn weight_permutations(
        &self,
        order: &mut Vec<usize>,
        p: usize,
        f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if p == order.len() {
            return f(order);
        }
        for q in p..order.len() {
            if self.weights[order[q]] != self.weights[p] {
                continue;
            }
            order.swap(p, q);
            let r = self.weight_permutations(order, p + 1, f);
            order.swap(p, q);
            r?;
        }
        ControlFlow::Continue(())
    }

    /// Depth-first walk below `prefix`, calling `leaf` on every complete
    /// family.
    pub fn walk<F>(&self, prefix: &Prefix, leaf: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Prefix) -> ControlFlow<()>,
    {
        if prefix.rows.len() == self.n() {
            return leaf(prefix);
        }
        self.for_each_child(prefix, |child| self.walk(&child, leaf))
    }
}

/// Column keys with row 0 in the most significant bit.
fn column_keys(rows: &[u64], used: usize) -> Vec<u64> {
    (0..used)
        .map(|j| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| *r >> j & 1 == 1)
                .fold(0u64, |acc, (p, _)| acc | 1 << (63 - p))
        })
        .collect()
}

/// Rows (column 0 in the most significant bit) after sorting the columns
/// into descending order.
fn sorted_matrix(rows: &[u64], used: usize) -> Vec<u64> {
    let mut keys = column_keys(rows, used);
    keys.sort_unstable_by(|a, b| b.cmp(a));
    (0..rows.len())
        .map(|p| {
            keys.iter()
                .enumerate()
                .filter(|(_, &key)| key >> (63 - p) & 1 == 1)
                .fold(0u64, |acc, (j, _)| acc | 1 << (63 - j))
        })
        .collect()
}

/// All `k`-subsets of `0..n` as bit-masks, in lexicographic order of their
/// sorted element lists.
fn for_each_combination<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    fn rec<F>(start: usize, n: usize, left: usize, acc: u64, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(u64) -> ControlFlow<()>,
    {
        if left == 0 {
            return f(acc);
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | 1 << i, f)?;
        }
        ControlFlow::Continue(())
    }
    if k <= n {
        let _ = rec(0, n, k, 0, &mut f);
    }
}
