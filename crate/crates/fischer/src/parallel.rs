//! Threaded basis-quadruple scan.
//!
//! Workers take first coordinates `x` from a shared counter. Results are
//! merged in `x` order with [`ScanOutcome::combine`], so the verdict, witness
//! and count are the same as for the sequential scan whatever the thread
//! count. A worker abandons slice `x` once a witness is known at some smaller
//! `x`, or once the finished slices below `x` already use up the budget.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use fischer_core::matsuo::{scan_slice, MatsuoAlgebra, ScanOutcome, SliceOutcome};

pub const THREADS_VAR: &str = "FISCHER_THREADS";

/// Available parallelism, capped by `FISCHER_THREADS` when that holds a
/// positive integer.
pub fn thread_count() -> usize {
    let available = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => available.min(cap),
        _ => available,
    }
}

struct Shared {
    next: AtomicUsize,
    /// Smallest `x` with a witness so far, `usize::MAX` if none.
    witness_x: AtomicUsize,
    slices: Mutex<Vec<Option<SliceOutcome>>>,
}

impl Shared {
    /// True when finished slices `0..x` together already exceed `budget`.
    fn prefix_over_budget(&self, x: usize, budget: u64) -> bool {
        let slices = self.slices.lock().expect("scan worker panicked");
        let mut total = 0u64;
        for s in &slices[..x] {
            match s {
                Some(s) => total += s.checked,
                None => return false,
            }
            if total > budget {
                return true;
            }
        }
        false
    }
}

pub fn parallel_scan(alg: &MatsuoAlgebra, prune: bool, budget: u64, threads: usize) -> ScanOutcome {
    let n = alg.dim();
    let shared = Shared {
        next: AtomicUsize::new(0),
        witness_x: AtomicUsize::new(usize::MAX),
        slices: Mutex::new(vec![None; n]),
    };
    thread::scope(|scope| {
        for _ in 0..threads.clamp(1, n.max(1)) {
            scope.spawn(|| loop {
                let x = shared.next.fetch_add(1, Ordering::Relaxed);
                if x >= n || shared.witness_x.load(Ordering::Relaxed) < x {
                    break;
                }
                let cancel = || shared.witness_x.load(Ordering::Relaxed) < x || shared.prefix_over_budget(x, budget);
                let s = scan_slice(alg, x, prune, budget, &cancel);
                if s.witness.is_some() {
                    shared.witness_x.fetch_min(x, Ordering::Relaxed);
                }
                shared.slices.lock().expect("scan worker panicked")[x] = Some(s);
            });
        }
    });
    let slices = shared.slices.into_inner().expect("scan worker panicked");
    // Everything up to the first witness, truncation or gap has been scanned
    // in full; combine stops at or before that point.
    let ordered = slices
        .into_iter()
        .map_while(|s| s.filter(|s| !s.cancelled));
    ScanOutcome::combine(ordered, budget, prune)
}
