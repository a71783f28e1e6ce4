//! Deterministic work splitting for Monte Carlo runs.
//!
//! Worker `w` draws from a ChaCha8 generator seeded with `seed` on stream
//! `w`. Samples are split as evenly as possible, earlier workers taking the
//! remainder, and results are concatenated in worker order, so the output
//! depends only on `(seed, threads)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

pub fn split_counts(total: usize, workers: usize) -> Vec<usize> {
    let workers = workers.max(1);
    (0..workers)
        .map(|w| total / workers + usize::from(w < total % workers))
        .collect()
}

pub fn run_workers<T, F>(samples: usize, seed: u64, threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> Vec<T> + Sync,
{
    let counts = split_counts(samples, threads);
    if counts.len() == 1 {
        return work(&mut worker_rng(seed, 0), samples);
    }
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = counts
            .iter()
            .enumerate()
            .map(|(w, &count)| scope.spawn(move || work(&mut worker_rng(seed, w), count)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
