//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::alloc::{GlobalAlloc, Layout, System};
use std::collections::BTreeSet;
use std::hint::black_box;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use middle_levels::bitwords::{dyck_words, near_dyck_words, words_of_weight, BitWord, WordClass};
use middle_levels::flipseq::sigma;
use middle_levels::hamcycle::{ham_cycle, init, vertex_count, Flips, HamCycle};
use middle_levels::trees::canonical_root;
use middle_levels::verify::{
    aux_graph, check_c6_structure, check_edge_monotonicity, check_flipped_paths, check_listing,
    is_spanning_tree, two_factor,
};

const HAMILTONICITY_MAX_N: usize = 9;
const HAMILTONICITY_SECONDS: f64 = 60.0;
const SPANNING_TREE_MAX_N: usize = 12;
const SPANNING_TREE_SECONDS: f64 = 30.0;
const TIMING_VERTICES: u64 = 10_000_000;
const TIMING_REPEATS: usize = 3;
const TIMING_RATIO: f64 = 3.0;
const MEMORY_SHORT_RUN: u64 = 100_000;

struct Counting;

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            let now = CURRENT.fetch_add(layout.size(), Ordering::Relaxed) + layout.size();
            PEAK.fetch_max(now, Ordering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        CURRENT.fetch_sub(layout.size(), Ordering::Relaxed);
    }
}

#[global_allocator]
static ALLOC: Counting = Counting;

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

fn canonical_codes(n: usize) -> Vec<u64> {
    let total = vertex_count(n).unwrap();
    let mut out = Vec::with_capacity(total as usize);
    let start = BitWord::ones_then_zeros(n, n + 1);
    ham_cycle(n, &start, total, |v: &BitWord| out.push(v.to_u64())).unwrap();
    out
}

fn hamiltonicity() -> Outcome {
    let began = Instant::now();
    let expected = [6u64, 20, 70, 252, 924, 3432, 12870, 48620, 184756];
    let mut failures = Vec::new();
    for n in 1..=HAMILTONICITY_MAX_N {
        let total = vertex_count(n).unwrap();
        if total != expected[n - 1] {
            failures.push(format!("N({n})={total}"));
        }
        let mut seq = Vec::with_capacity(total as usize);
        let start = BitWord::ones_then_zeros(n, n + 1);
        ham_cycle(n, &start, total + 1, |v: &BitWord| seq.push(v.clone())).unwrap();
        let wraps = seq[total as usize] == seq[0];
        seq.pop();
        let report = check_listing(n, &seq);
        if !report.passed() || !wraps {
            failures.push(format!("n={n}: {}", report.to_string().trim()));
        }
    }
    let secs = began.elapsed().as_secs_f64();
    if secs >= HAMILTONICITY_SECONDS {
        failures.push(format!("took {secs:.1}s"));
    }
    if failures.is_empty() {
        outcome(true, format!("n=1..{HAMILTONICITY_MAX_N} in {secs:.2}s"))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn golden_vectors() -> Outcome {
    let cases: [(&str, &[usize]); 4] = [
        ("111000", &[6, 1, 5, 2, 4, 3, 2, 4, 1, 5]),
        ("110010", &[4, 1, 3, 2, 1, 3]),
        ("101100", &[2, 1]),
        (
            "111001110011110000001100",
            &[
                20, 1, 5, 2, 4, 3, 2, 4, 1, 5, 19, 6, 10, 7, 9, 8, 7, 9, 6, 10, 18, 11, 17, 12, 16,
                13, 15, 14, 13, 15, 12, 16, 11, 17, 10, 18, 5, 19,
            ],
        ),
    ];
    let mismatches: Vec<String> = cases
        .iter()
        .filter(|(x, want)| sigma(&x.parse().unwrap()).unwrap().as_slice() != *want)
        .map(|(x, _)| x.to_string())
        .collect();
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "4 sequences exact".to_owned()
        } else {
            format!("mismatch: {}", mismatches.join(", "))
        },
    )
}

fn two_factor_structure() -> Outcome {
    let expected = [(3, 2), (4, 3), (5, 6), (6, 14)];
    let mut details = Vec::new();
    let mut passed = true;
    for (n, count) in expected {
        let cycles = two_factor(n, Flips::Off).unwrap();
        let round = 4 * n + 2;
        let lengths_ok = cycles.lengths().iter().all(|l| l % round == 0);
        passed &= cycles.is_two_factor() && cycles.len() == count && lengths_ok;
        details.push(format!("n={n}:{}", cycles.len()));
    }
    outcome(passed, format!("cycles {}", details.join(" ")))
}

fn spanning_tree() -> Outcome {
    let began = Instant::now();
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for n in 3..=SPANNING_TREE_MAX_N {
        let g = aux_graph(n);
        let max_out = g.out_degrees().into_iter().max().unwrap_or(0);
        let monotone = check_edge_monotonicity(&g);
        if !is_spanning_tree(&g) || max_out > 1 || !monotone.passed() {
            failures.push(format!("n={n}: {}", monotone.to_string().trim()));
        }
        sizes.push(g.nodes.len());
    }
    let secs = began.elapsed().as_secs_f64();
    if secs >= SPANNING_TREE_SECONDS {
        failures.push(format!("took {secs:.1}s"));
    }
    if failures.is_empty() {
        outcome(
            true,
            format!("n=3..{SPANNING_TREE_MAX_N} nodes {sizes:?} in {secs:.2}s"),
        )
    } else {
        outcome(false, failures.join("; "))
    }
}

fn is_round_start(n: usize, code: u64) -> bool {
    let w = BitWord::from_u64(code, 2 * n + 1);
    w.bits()[2 * n] == 0 && w.subword(1, 2 * n).classify() == WordClass::Dyck
}

fn resynchronization() -> Outcome {
    let mut failures = Vec::new();
    let mut starts = 0usize;
    for n in 3..=6 {
        let canonical = canonical_codes(n);
        let total = canonical.len();
        let round_start: Vec<bool> = canonical.iter().map(|&c| is_round_start(n, c)).collect();
        for offset in 0..total {
            let x = BitWord::from_u64(canonical[offset], 2 * n + 1);
            let mut got = Vec::with_capacity(total);
            ham_cycle(n, &x, total as u64, |v: &BitWord| got.push(v.to_u64())).unwrap();
            let rotated = canonical[offset..].iter().chain(&canonical[..offset]);
            if !got.iter().eq(rotated) {
                failures.push(format!("rotation n={n} x={x}"));
                continue;
            }
            let ahead = (0..total)
                .find(|k| round_start[(offset + k) % total])
                .unwrap();
            let want_y = canonical[(offset + ahead) % total];
            let (state, visited) = init(n, &x).unwrap();
            if state.current().to_u64() != want_y
                || state.visited() != ahead as u64 + 1
                || visited.len() != ahead + 1
            {
                failures.push(format!("init n={n} x={x}"));
            }
            starts += 1;
        }
    }
    let (state, _) = init(3, &"0110010".parse().unwrap()).unwrap();
    let spot = (state.current().to_string(), state.visited());
    if spot != ("1100100".to_owned(), 13) {
        failures.push(format!("Init(3, 0110010) = {spot:?}"));
    }
    if failures.is_empty() {
        outcome(
            true,
            format!("{starts} starts n=3..6; Init(3, 0110010) = (1100100, 13)"),
        )
    } else {
        failures.truncate(5);
        outcome(false, failures.join("; "))
    }
}

fn time_run(n: usize) -> f64 {
    let mut state = HamCycle::canonical(n).unwrap();
    let began = Instant::now();
    let mut acc = 0usize;
    for _ in 0..TIMING_VERTICES {
        acc = acc.wrapping_add(state.step());
    }
    black_box(acc);
    began.elapsed().as_secs_f64() * 1e9 / TIMING_VERTICES as f64
}

/// Best ns/vertex per order; repeats interleave the orders so drift in host
/// speed affects all of them alike.
fn ns_per_vertex(orders: &[usize]) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; orders.len()];
    for _ in 0..TIMING_REPEATS {
        for (slot, &n) in best.iter_mut().zip(orders) {
            *slot = slot.min(time_run(n));
        }
    }
    best
}

fn peak_bytes(n: usize, count: u64) -> usize {
    let baseline = CURRENT.load(Ordering::Relaxed);
    PEAK.store(baseline, Ordering::Relaxed);
    let start = BitWord::ones_then_zeros(n, n + 1);
    let mut sink = 0u64;
    ham_cycle(n, &start, count, |v: &BitWord| {
        sink += u64::from(v.bits()[0])
    })
    .unwrap();
    black_box(sink);
    PEAK.load(Ordering::Relaxed) - baseline
}

fn constant_amortized_time() -> Outcome {
    let timings = ns_per_vertex(&[5, 19, 500]);
    let (small, mid, large) = (timings[0], timings[1], timings[2]);
    let ratio = |a: f64, b: f64| a.max(b) / a.min(b);
    let (r_small, r_large) = (ratio(mid, small), ratio(mid, large));
    let short = peak_bytes(19, MEMORY_SHORT_RUN);
    let long = peak_bytes(19, TIMING_VERTICES);
    let short_large = peak_bytes(500, MEMORY_SHORT_RUN);
    let long_large = peak_bytes(500, TIMING_VERTICES);
    let passed = r_small <= TIMING_RATIO
        && r_large <= TIMING_RATIO
        && short == long
        && short_large == long_large;
    outcome(
        passed,
        format!(
            "ns/vertex n=5 {small:.2} n=19 {mid:.2} n=500 {large:.2} (ratios {r_small:.2}, {r_large:.2} <= {TIMING_RATIO}); \
             peak heap n=19 {short}B/{long}B, n=500 {short_large}B/{long_large}B for {MEMORY_SHORT_RUN}/{TIMING_VERTICES} vertices"
        ),
    )
}

fn flipped_paths() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=6 {
        let report = check_flipped_paths(n).unwrap();
        let c6 = check_c6_structure(n).unwrap();
        if !report.passed() || !c6.lines.iter().any(|l| l.name == "c6-disjoint" && l.passed) {
            failures.push(format!("{}{}", report, c6).replace('\n', " "));
        }
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "n=2..6 symmetric difference, swapped ends, disjoint 6-cycles".to_owned()
        } else {
            failures.join("; ")
        },
    )
}

fn catalan_counts() -> Outcome {
    let expected = [1usize, 2, 5, 14, 42, 132];
    let mut passed = true;
    let mut got = Vec::new();
    for (i, &c) in expected.iter().enumerate() {
        let n = i + 1;
        let dyck = dyck_words(n).len();
        let near = near_dyck_words(n).len();
        // independent count by classifying every balanced word
        let classes: Vec<WordClass> = words_of_weight(2 * n, n)
            .iter()
            .map(|w| w.classify())
            .collect();
        let filtered_dyck = classes.iter().filter(|&&k| k == WordClass::Dyck).count();
        let filtered_near = classes
            .iter()
            .filter(|&&k| k == WordClass::NearDyck)
            .count();
        passed &= dyck == c && near == c && filtered_dyck == c && filtered_near == c;
        got.push(format!("{dyck}/{near}"));
    }
    // every Dyck word has exactly one canonical representative per rotation class
    let classes: BTreeSet<_> = dyck_words(6).iter().map(canonical_root).collect();
    passed &= classes.len() == 14;
    outcome(passed, format!("|D|/|D-| = {}", got.join(" ")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("hamiltonicity", hamiltonicity),
        ("golden-vectors", golden_vectors),
        ("two-factor", two_factor_structure),
        ("spanning-tree", spanning_tree),
        ("resynchronization", resynchronization),
        ("constant-amortized-time", constant_amortized_time),
        ("flipped-paths", flipped_paths),
        ("catalan-counts", catalan_counts),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        all &= result.passed;
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {} {name} {verdict} {}", i + 1, result.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
