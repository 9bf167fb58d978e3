//! Wall-clock comparison of the quadratic-form and permutation-sum hdet.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::hyperdet::{hdet_fast, hdet_reduced, MAX_SIGN_N};
use crate::state::{random_state_from, seeded_rng, state_to_hypermatrix, QubitState};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    /// Number of qubits (2n).
    pub qubits: usize,
    pub reps: usize,
    pub fast_mean: Duration,
    pub reduced_mean: Duration,
    /// Largest |hdet_fast − hdet_reduced| over the sampled states.
    pub max_abs_diff: f64,
}

impl BenchReport {
    pub fn ratio(&self) -> f64 {
        self.fast_mean.as_secs_f64() / self.reduced_mean.as_secs_f64()
    }
}

/// Times both routes on `reps` seeded random states of 2n qubits.
pub fn compare_hdet(n: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if n == 0 || n > MAX_SIGN_N as usize {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_SIGN_N as usize,
        });
    }
    if reps == 0 || reps > u32::MAX as usize {
        return Err(Error::OutOfRange {
            what: "reps",
            value: reps,
            min: 1,
            max: u32::MAX as usize,
        });
    }
    let mut rng = seeded_rng(seed);
    let states: Vec<QubitState> = (0..reps)
        .map(|_| random_state_from(&mut rng, 2 * n))
        .collect::<Result<_>>()?;
    let tensors: Vec<_> = states.iter().map(state_to_hypermatrix).collect();

    let mut max_abs_diff = 0.0f64;
    for (s, h) in states.iter().zip(&tensors) {
        max_abs_diff = max_abs_diff.max((hdet_fast(s)? - hdet_reduced(h)?).norm());
    }

    let start = Instant::now();
    for s in &states {
        black_box(hdet_fast(black_box(s))?);
    }
    let fast = start.elapsed();

    let start = Instant::now();
    for h in &tensors {
        black_box(hdet_reduced(black_box(h))?);
    }
    let reduced = start.elapsed();

    Ok(BenchReport {
        qubits: 2 * n,
        reps,
        fast_mean: fast / reps as u32,
        reduced_mean: reduced / reps as u32,
        max_abs_diff,
    })
}
