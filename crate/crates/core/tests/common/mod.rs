#![allow(dead_code)]

use proptest::prelude::*;
use qhyper_core::state::{random_state_from, random_su2_from, seeded_rng, QubitState};
use qhyper_core::{Complex, Hypermatrix, LocalUnitary, Matrix};

pub fn complex() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex::new(re, im))
}

pub fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex>> {
    prop::collection::vec(complex(), len)
}

/// Small tensors of order 1..=4 with side lengths 1..=3.
pub fn tensor() -> impl Strategy<Value = Hypermatrix> {
    prop::collection::vec(1usize..=3, 1..=4).prop_flat_map(|dims| {
        let len = dims.iter().product();
        complex_vec(len).prop_map(move |e| Hypermatrix::new(dims.clone(), e).unwrap())
    })
}

pub fn tensor_with_dims(dims: Vec<usize>) -> impl Strategy<Value = Hypermatrix> {
    let len = dims.iter().product();
    complex_vec(len).prop_map(move |e| Hypermatrix::new(dims.clone(), e).unwrap())
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    complex_vec(rows * cols).prop_map(move |e| Matrix::new(rows, cols, e).unwrap())
}

/// A tensor together with one matrix per mode (rows 1..=3).
pub fn tensor_and_matrices() -> impl Strategy<Value = (Hypermatrix, Vec<Matrix>)> {
    tensor().prop_flat_map(|h| {
        let mats: Vec<_> = h
            .dims()
            .iter()
            .map(|&n| (1usize..=3).prop_flat_map(move |r| matrix(r, n)).boxed())
            .collect();
        (Just(h), mats)
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn state_and_su2(n: usize, seed: u64) -> (QubitState, Vec<LocalUnitary>) {
    let mut rng = seeded_rng(seed);
    let s = random_state_from(&mut rng, n).unwrap();
    let us = (0..n).map(|_| random_su2_from(&mut rng)).collect();
    (s, us)
}

pub fn local_matrices(us: &[LocalUnitary]) -> Vec<Matrix> {
    us.iter().map(|u| u.matrix().clone()).collect()
}

pub fn close(a: Complex, b: Complex, tol: f64) -> bool {
    (a - b).norm() <= tol
}
