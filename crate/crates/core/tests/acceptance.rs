//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test -p sdr-core --test acceptance`

mod common;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdr_core::search::sample_valued_family;
use sdr_core::{
    canonical_form, census, chang_u, construct_bar, construct_star, count_sdr, descent_step,
    enumerate_families, enumerate_sdrs, equivalence_classes, tight_sets, valued_u,
    verify_extremal_with, Execution, IndexSet, SearchBudget, SearchSpec, SearchStatus, SetFamily,
    Valuation,
};
use std::time::{Duration, Instant};

const RANDOM_SAMPLES: u64 = 1000;
const SEED: u64 = 0x5d12_2024;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn closed_form_table() -> Outcome {
    let mut bad = 0;
    for n in 1..=10u64 {
        bad += usize::from(chang_u(0, n as usize) != big(1));
        bad += usize::from(chang_u(1, n as usize) != big(n + 1));
        bad += usize::from(chang_u(2, n as usize) != big(n * n + n + 1));
    }
    outcome(bad == 0, format!("30 values, {bad} mismatches"))
}

fn star_identity() -> Outcome {
    let mut bad = 0;
    for t in 0..=4 {
        for n in 1..=6 {
            bad += usize::from(count_sdr(&construct_star(t, n)) != chang_u(t, n));
        }
    }
    outcome(bad == 0, format!("30 (t, n) pairs, {bad} mismatches"))
}

fn valuations(n: usize, values: &[usize], mut f: impl FnMut(&Valuation)) {
    let mut idx = vec![0; n];
    loop {
        f(&Valuation::new(idx.iter().map(|&i| values[i]).collect()).unwrap());
        let mut p = 0;
        loop {
            if p == n {
                return;
            }
            idx[p] += 1;
            if idx[p] < values.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

fn bar_identity() -> Outcome {
    let (mut cases, mut bad) = (0, 0);
    for t in 0..=4 {
        for n in 1..=5 {
            valuations(n, &[1, 2, 3], |a| {
                cases += 1;
                bad += usize::from(count_sdr(&construct_bar(t, a)) != valued_u(t, a));
            });
        }
    }
    outcome(bad == 0, format!("{cases} (t, a) cases, {bad} mismatches"))
}

fn extremal_search() -> Outcome {
    let grid: [(usize, &[usize], u64); 4] = [
        (2, &[1, 1], 7),
        (2, &[1, 1, 1], 13),
        (3, &[1, 1], 13),
        (2, &[2, 1], 10),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (t, a, expected) in grid {
        let a = Valuation::new(a.to_vec()).unwrap();
        let spec = SearchSpec::new(t, a.clone()).unwrap();
        let start = Instant::now();
        let report = verify_extremal_with(
            &spec,
            Execution::Sequential,
            &SearchBudget::default(),
            |_| {},
        )
        .unwrap();
        let elapsed = start.elapsed();
        // Independent check: minimum over every labelled family.
        let mut brute: Option<BigUint> = None;
        common::labelled_valued_families(t, &a, spec.ground_cap, true, |f| {
            let c = count_sdr(f);
            if brute.as_ref().is_none_or(|b| c < *b) {
                brute = Some(c);
            }
        });
        let ok = report.status == SearchStatus::Complete
            && report.minimum == Some(big(expected))
            && brute == Some(big(expected))
            && report.closed_form == big(expected)
            && report.unique_bar
            && elapsed < Duration::from_secs(300);
        passed &= ok;
        parts.push(format!(
            "t={t} a={:?}: min {} unique_bar {} ({} classes, {:.2?})",
            a.as_slice(),
            report.minimum.map_or("-".into(), |m| m.to_string()),
            report.unique_bar,
            report.canonical_classes,
            elapsed
        ));
    }
    outcome(passed, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let (mut cases, mut bad) = (0u64, 0u64);
    let mut check = |f: &SetFamily| {
        cases += 1;
        let list = enumerate_sdrs(f, usize::MAX);
        if list.truncated || count_sdr(f) != BigUint::from(list.sequences.len()) {
            bad += 1;
        }
    };
    for n in 1..=4 {
        for m in 1..=7 {
            common::families_up_to_relabelling(n, m, &mut check);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_SAMPLES {
        check(&common::random_family(&mut rng, 6, 10));
    }
    outcome(bad == 0, format!("{cases} families, {bad} mismatches"))
}

struct Sample {
    t: usize,
    a: Valuation,
    family: SetFamily,
}

fn random_valued_samples() -> Vec<Sample> {
    (0..RANDOM_SAMPLES)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            rng.set_stream(i);
            let t = rng.gen_range(2..=3);
            let n = rng.gen_range(2..=4);
            let a = Valuation::new((0..n).map(|_| rng.gen_range(1..=2)).collect()).unwrap();
            let cap = a.total() + t * n;
            let (family, _) = sample_valued_family(t, &a, cap, &mut rng);
            Sample {
                t,
                a,
                family: family.expect("valued sample within the rejection limit"),
            }
        })
        .collect()
}

/// Every family on the descent path from each sample, ending at its fixpoint.
fn descent_paths(samples: &[Sample]) -> (Vec<Vec<SetFamily>>, u64) {
    let mut violations = 0;
    let paths = samples
        .iter()
        .map(|s| {
            let mut path = vec![s.family.clone()];
            loop {
                let current = path.last().unwrap();
                let Some(step) = descent_step(current, s.t, &s.a).unwrap() else {
                    break;
                };
                if !step.family.is_valued_family(s.t, &s.a).unwrap()
                    || count_sdr(&step.family) >= count_sdr(current)
                {
                    violations += 1;
                    break;
                }
                path.push(step.family);
            }
            let end = census(path.last().unwrap(), s.t, &s.a).unwrap();
            if end.nep != end.nsp {
                violations += 1;
            }
            path
        })
        .collect();
    (paths, violations)
}

fn descent_property(samples: &[Sample], paths: &[Vec<SetFamily>], violations: u64) -> Outcome {
    let steps: usize = paths.iter().map(|p| p.len() - 1).sum();
    outcome(
        violations == 0,
        format!(
            "{} samples, {steps} steps, {violations} violations",
            samples.len()
        ),
    )
}

fn pair_bounds(samples: &[Sample], paths: &[Vec<SetFamily>]) -> Outcome {
    let (mut checked, mut bad, mut bars) = (0u64, 0u64, 0u64);
    let mut check = |f: &SetFamily, t: usize, a: &Valuation| {
        let c = census(f, t, a).unwrap();
        let is_bar = f.is_bar_family(t, a).unwrap();
        checked += 1;
        bars += u64::from(is_bar);
        let nep = BigUint::from(c.nep);
        let nsp = BigUint::from(c.nsp);
        if nsp > c.bound || nep < c.bound || (nep == c.bound) != is_bar {
            bad += 1;
        }
    };
    for (s, path) in samples.iter().zip(paths) {
        // The first entry is the sample itself; the rest are the walk.
        for f in path {
            check(f, s.t, &s.a);
        }
    }
    let a = Valuation::ones(2);
    for f in enumerate_families(&SearchSpec::new(2, a.clone()).unwrap()).unwrap() {
        check(&f, 2, &a);
    }
    outcome(
        bad == 0,
        format!("{checked} families ({bars} bar), {bad} violations"),
    )
}

fn union_relation() -> Outcome {
    let (mut pairs, mut bad) = (0u64, 0u64);
    let mut check = |f: &SetFamily| {
        let full = f.all_members();
        for x in 0..f.m() {
            for y in 0..f.m() {
                let (ix, iy) = (f.columns()[x], f.columns()[y]);
                if x == y || ix.difference(iy).is_empty() || iy.difference(ix).is_empty() {
                    continue;
                }
                pairs += 1;
                let g = f.exchange(x, y).unwrap().family;
                for bits in 1..=full.bits() {
                    let set = IndexSet(bits);
                    let before = f.union_size(set).unwrap();
                    let after = g.union_size(set).unwrap();
                    let drops = set.intersection(ix).intersection(iy).is_empty()
                        && !set.intersection(ix.difference(iy)).is_empty()
                        && !set.intersection(iy.difference(ix)).is_empty();
                    let expected = if drops { before - 1 } else { before };
                    if after != expected {
                        bad += 1;
                    }
                }
            }
        }
    };
    for n in 1..=4 {
        for m in 1..=7 {
            common::families_up_to_relabelling(n, m, &mut check);
        }
    }
    outcome(
        bad == 0,
        format!("{pairs} ordered exclusive pairs, {bad} violations"),
    )
}

fn structural(samples: &[Sample]) -> Outcome {
    let (mut bad_partition, mut bad_closure, mut bad_canon) = (0u64, 0u64, 0u64);
    for s in samples {
        let n = s.family.n();
        let classes = equivalence_classes(&s.family, s.t, &s.a).unwrap();
        let mut seen = IndexSet::EMPTY;
        for c in &classes {
            if c.is_empty() || !c.intersection(seen).is_empty() {
                bad_partition += 1;
            }
            seen = seen.union(*c);
        }
        if seen != IndexSet::full(n) {
            bad_partition += 1;
        }
        let tight: Vec<IndexSet> = tight_sets(&s.family, s.t, &s.a)
            .unwrap()
            .iter()
            .map(|ts| ts.indices)
            .collect();
        for &p in &tight {
            for &q in &tight {
                if !p.intersection(q).is_empty() && !tight.contains(&p.union(q)) {
                    bad_closure += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9e37);
    for s in samples {
        let w = s.a.as_slice();
        let image = common::random_symmetry(&mut rng, &s.family, w);
        if canonical_form(&image, Some(&s.a)) != canonical_form(&s.family, Some(&s.a)) {
            bad_canon += 1;
        }
    }
    let bad = bad_partition + bad_closure + bad_canon;
    outcome(
        bad == 0,
        format!(
            "{} families: partition {bad_partition}, closure {bad_closure}, relabelling {bad_canon} violations",
            samples.len()
        ),
    )
}

fn main() {
    let mut failures = 0;
    let mut report =
        |id: usize, name: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
            let start = Instant::now();
            let out = run();
            let elapsed = start.elapsed();
            let in_time = limit.is_none_or(|l| elapsed < l);
            let passed = out.passed && in_time;
            failures += usize::from(!passed);
            let limit_note = limit.map_or(String::new(), |l| format!(" limit {l:?}"));
            println!(
                "[{}] {id}. {name}: {} ({elapsed:.2?}{limit_note})",
                if passed { "PASS" } else { "FAIL" },
                out.detail
            );
        };
    report(
        1,
        "closed-form table",
        Some(Duration::from_millis(1)),
        &mut closed_form_table,
    );
    report(
        2,
        "star identity",
        Some(Duration::from_secs(1)),
        &mut star_identity,
    );
    report(
        3,
        "bar identity",
        Some(Duration::from_secs(30)),
        &mut bar_identity,
    );
    report(4, "extremal search", None, &mut extremal_search);
    report(
        5,
        "oracle equivalence",
        Some(Duration::from_secs(120)),
        &mut oracle_equivalence,
    );
    let samples = random_valued_samples();
    let mut paths = Vec::new();
    report(6, "descent property", None, &mut || {
        let (walked, violations) = descent_paths(&samples);
        paths = walked;
        descent_property(&samples, &paths, violations)
    });
    report(7, "pair-count bounds", None, &mut || {
        pair_bounds(&samples, &paths)
    });
    report(
        8,
        "exchange union sizes",
        Some(Duration::from_secs(120)),
        &mut union_relation,
    );
    report(9, "structural properties", None, &mut || {
        structural(&samples)
    });
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
