//! Deterministic sweeps over basis-tuple index spaces.
//!
//! Axiom checks quantify over all basis tuples of a small shape (pairs,
//! triples, quadruples, 5-tuples). The sweep is data-parallel over the first
//! index; `BIHOMLIE_THREADS` caps the worker count. Witness merging picks the
//! lexicographically first failure, so the result does not depend on the
//! thread count.

use std::sync::OnceLock;

use crate::report::Witness;
use crate::scalar::Scalar;

fn configured_threads() -> usize {
    static THREADS: OnceLock<usize> = OnceLock::new();
    *THREADS.get_or_init(|| {
        let available = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        match std::env::var("BIHOMLIE_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
        {
            Some(n) => n.clamp(1, available.max(1)),
            None => available,
        }
    })
}

fn scan_range<F>(shape: &[usize], first_range: std::ops::Range<usize>, test: &F) -> Option<Witness>
where
    F: Fn(&[usize]) -> Option<Vec<Scalar>> + Sync,
{
    let k = shape.len();
    let mut idx = vec![0usize; k];
    idx[0] = first_range.start;
    if shape.contains(&0) || first_range.is_empty() {
        return None;
    }
    loop {
        if let Some(residual) = test(&idx) {
            return Some(Witness {
                tuple: idx.clone(),
                residual,
            });
        }
        // Lexicographic increment with the first coordinate confined.
        let mut slot = k;
        loop {
            if slot == 0 {
                return None;
            }
            slot -= 1;
            idx[slot] += 1;
            let limit = if slot == 0 { first_range.end } else { shape[slot] };
            if idx[slot] < limit {
                break;
            }
            if slot == 0 {
                return None;
            }
            idx[slot] = 0;
        }
    }
}

/// Runs `test` on every index tuple of the given shape and returns the
/// lexicographically first witness, or `None` when every tuple passes.
/// `test` returns the nonzero residual for a failing tuple.
pub fn scan_tuples<F>(shape: &[usize], test: F) -> Option<Witness>
where
    F: Fn(&[usize]) -> Option<Vec<Scalar>> + Sync,
{
    if shape.is_empty() {
        return test(&[]).map(|residual| Witness {
            tuple: vec![],
            residual,
        });
    }
    if shape.contains(&0) {
        return None;
    }
    let first = shape[0];
    let threads = configured_threads().min(first);
    if threads <= 1 {
        return scan_range(shape, 0..first, &test);
    }
    let chunk = first.div_ceil(threads);
    let ranges: Vec<std::ops::Range<usize>> = (0..threads)
        .map(|t| (t * chunk).min(first)..((t + 1) * chunk).min(first))
        .collect();
    let test = &test;
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(move || scan_range(shape, range, test)))
            .collect();
        // Chunks are contiguous in lexicographic order, so the first
        // non-empty result is the global minimum.
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("sweep worker panicked"))
            .next()
    })
}
