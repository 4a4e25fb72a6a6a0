//! Index-ordered worker pool for sweep evaluation.
//!
//! Work items are distributed over scoped threads; results land in an
//! index-addressed vector, so the output order never depends on
//! scheduling. `HALLSIM_THREADS` caps the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};

pub fn thread_cap() -> usize {
    if let Ok(raw) = std::env::var("HALLSIM_THREADS") {
        if let Ok(n) = raw.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Evaluate `f` over `0..n`, preserving index order in the output.
pub fn run_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = thread_cap().min(n.max(1));
    if workers <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let cursor = AtomicUsize::new(0);
    let slot_ptr = SlotsPtr(slots.as_mut_ptr());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            let f = &f;
            let cursor = &cursor;
            let slot_ptr = &slot_ptr;
            scope.spawn(move || loop {
                let idx = cursor.fetch_add(1, Ordering::Relaxed);
                if idx >= n {
                    break;
                }
                let value = f(idx);
                // Disjoint indices: each slot is written exactly once.
                unsafe {
                    *slot_ptr.0.add(idx) = Some(value);
                }
            });
        }
    });

    slots
        .into_iter()
        .map(|s| s.expect("every index visited"))
        .collect()
}

struct SlotsPtr<T>(*mut Option<T>);
unsafe impl<T: Send> Sync for SlotsPtr<T> {}
