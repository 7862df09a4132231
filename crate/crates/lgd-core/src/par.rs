//! Minimal fork-join helper for embarrassingly parallel sweeps.
//!
//! Worker count comes from the `LGD_THREADS` environment variable when set
//! (a value of 0 or 1 forces sequential execution), otherwise from the
//! available parallelism. Results are returned in input order, so callers
//! stay deterministic regardless of scheduling.

/// Effective worker count for parallel sections.
pub fn worker_count() -> usize {
    match std::env::var("LGD_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(0) | Some(1) => 1,
        Some(k) => k,
        None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    }
}

/// Applies `f` to every item, fanning out across `worker_count()` threads.
/// The output preserves input order.
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = worker_count().min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<Option<U>> = (0..items.len()).map(|_| None).collect();
    let slots: Vec<std::sync::Mutex<&mut Option<U>>> =
        out.iter_mut().map(std::sync::Mutex::new).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let value = f(&items[i]);
                **slots[i].lock().expect("result slot poisoned") = Some(value);
            });
        }
    });
    out.into_iter()
        .map(|v| v.expect("worker filled every slot"))
        .collect()
}
