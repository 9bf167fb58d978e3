//! Seeded inputs shared by the benchmarks.

use qhyper_core::state::{random_state_from, random_su2_from, seeded_rng, state_to_hypermatrix};
use qhyper_core::{Hypermatrix, Matrix, QubitState};

pub const SEED: u64 = 0x5eed;

pub fn states(qubits: usize, count: usize) -> Vec<QubitState> {
    let mut rng = seeded_rng(SEED);
    (0..count)
        .map(|_| random_state_from(&mut rng, qubits).expect("qubit count in range"))
        .collect()
}

pub fn tensor(qubits: usize) -> Hypermatrix {
    state_to_hypermatrix(&states(qubits, 1).remove(0))
}

pub fn local_unitaries(qubits: usize) -> Vec<Matrix> {
    let mut rng = seeded_rng(SEED ^ 1);
    (0..qubits)
        .map(|_| random_su2_from(&mut rng).matrix().clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(states(4, 3), states(4, 3));
        assert_eq!(tensor(3).dims(), &[2, 2, 2]);
        assert_eq!(local_unitaries(5).len(), 5);
    }
}
