//! Closed-form SDR counts of the extremal families.
//!
//! With `(t)_j = t (t-1) ⋯ (t-j+1)` the falling factorial,
//!
//! - `U(t, n) = Σ_{j=0}^{min(t,n)} C(t,j) C(n,j) j!`, the count of the star family;
//! - `U'(t, a) = Σ_{j=0}^{min(t,n)} C(t,j) j! e_{n-j}(a)`, the count of the
//!   family with private blocks of sizes `a_i` around a shared `t`-block.
//!
//! Terms with `j > n` vanish, so the sums stop at `min(t, n)`.

use crate::family::Valuation;
use crate::BigCount;
use num_traits::One;

/// `e[k]` is the elementary symmetric polynomial `e_k(a_1, ..., a_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricTable {
    pub e: Vec<BigCount>,
}

/// One pass of `e_k ← e_k + a · e_{k-1}`, highest `k` first.
pub fn elementary_symmetric(a: &Valuation) -> SymmetricTable {
    let n = a.len();
    let mut e = vec![BigCount::default(); n + 1];
    e[0] = BigCount::one();
    for (seen, &ai) in a.as_slice().iter().enumerate() {
        for k in (1..=seen + 1).rev() {
            let add = &e[k - 1] * ai;
            e[k] += add;
        }
    }
    SymmetricTable { e }
}

/// `U(t, n)`.
pub fn chang_u(t: usize, n: usize) -> BigCount {
    let mut total = BigCount::default();
    let mut falling = BigCount::one();
    let mut binom = BigCount::one();
    for j in 0..=t.min(n) {
        if j > 0 {
            falling *= t - j + 1;
            binom = binom * (n - j + 1) / j;
        }
        total += &falling * &binom;
    }
    total
}

/// `U'(t, a)`.
pub fn valued_u(t: usize, a: &Valuation) -> BigCount {
    let n = a.len();
    let table = elementary_symmetric(a);
    let mut total = BigCount::default();
    let mut falling = BigCount::one();
    for j in 0..=t.min(n) {
        if j > 0 {
            falling *= t - j + 1;
        }
        total += &falling * &table.e[n - j];
    }
    total
}
