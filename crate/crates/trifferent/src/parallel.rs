use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use trifferent_core::{first_violation_with_leading, verify_trifferent, Code, VerificationResult};

/// [`verify_trifferent`] with the leading index of each triple dealt
/// round-robin to `workers` threads.
///
/// Each worker scans its leading indices in increasing order and stops at its
/// first violation, which is the smallest one it can find. The reduction
/// keeps the minimum over workers, so the witness is the lexicographically
/// smallest violating triple for every worker count.
pub fn verify_parallel(code: &Code, workers: usize) -> VerificationResult {
    let m = code.len();
    if workers <= 1 || m < 3 {
        return verify_trifferent(code);
    }
    let workers = workers.min(m - 2);
    // smallest leading index with a known violation; larger ones are skipped
    let cutoff = AtomicUsize::new(usize::MAX);
    let witness = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let cutoff = &cutoff;
                scope.spawn(move || {
                    for i in (w..m - 2).step_by(workers) {
                        if i > cutoff.load(Ordering::Relaxed) {
                            return None;
                        }
                        if let Some(t) = first_violation_with_leading(code, i) {
                            cutoff.fetch_min(i, Ordering::Relaxed);
                            return Some(t);
                        }
                    }
                    None
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("verify worker panicked")).min()
    });
    match witness {
        Some(witness) => VerificationResult::NotTrifferent { witness },
        None => VerificationResult::Trifferent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use trifferent_core::constructions::{one_bounded, triple_construction};
    use trifferent_core::Codeword;

    #[test]
    fn matches_serial_for_every_worker_count() {
        let all: Vec<Codeword> = (0..27u32)
            .map(|x| Codeword::from_fn(3, |i| (x / 3u32.pow(2 - i as u32) % 3) as u8).unwrap())
            .collect();
        let codes = [
            Code::new(3, all).unwrap(),
            triple_construction(2, &one_bounded(3).unwrap()).unwrap(),
            Code::from_strs(&["2220", "0000", "2221", "1111", "2222", "0101", "1010"]).unwrap(),
        ];
        for code in &codes {
            let serial = verify_trifferent(code);
            for workers in 1..=8 {
                assert_eq!(verify_parallel(code, workers), serial);
            }
        }
    }
}
