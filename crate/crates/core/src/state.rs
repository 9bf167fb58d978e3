//! Pure n-qubit states and their hypermatrix form.
//!
//! Amplitude j holds the coefficient of the bitstring given by the n-bit
//! binary expansion of j, qubit 1 being the most significant (leftmost) bit.
//! That is the row-major order of a 2×…×2 hypermatrix, so the isomorphism in
//! [`state_to_hypermatrix`] only reshapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hyperdet::{hdet_fast, sign_string_sigma};
use crate::tensor::{Complex, Hypermatrix, Matrix};
use crate::DEFAULT_TOL;

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct QubitState {
    num_qubits: usize,
    amplitudes: Vec<Complex>,
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Shape(format!(
            "amplitude vector length {len} is not 2^n with n >= 1"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::OutOfRange {
            what: "qubit count",
            value: n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    Ok(n)
}

fn norm_of(amps: &[Complex]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl QubitState {
    /// Validated state: length 2^n, finite, norm 1 within the default
    /// tolerance.
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        Self::with_tolerance(amplitudes, DEFAULT_TOL)
    }

    pub fn with_tolerance(amplitudes: Vec<Complex>, tol: f64) -> Result<Self> {
        let s = Self::unnormalized(amplitudes)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    /// Scales a nonzero vector to unit norm.
    pub fn renormalized(amplitudes: Vec<Complex>) -> Result<Self> {
        let mut s = Self::unnormalized(amplitudes)?;
        let mut sum: f64 = s.amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !sum.is_normal() || !sum.recip().is_normal() {
            // bring the scale near 1 before squaring
            let max = s
                .amplitudes
                .iter()
                .map(|z| z.re.abs().max(z.im.abs()))
                .fold(0.0, f64::max);
            s.amplitudes.iter_mut().for_each(|z| *z /= max);
            sum = s.amplitudes.iter().map(|z| z.norm_sqr()).sum();
        }
        // sqrt(1/sum) rounds 1/sqrt(2) correctly where dividing by sqrt(2) does not
        let scale = sum.recip().sqrt();
        s.amplitudes.iter_mut().for_each(|z| *z *= scale);
        Ok(s)
    }

    /// Shape and finiteness are checked, the norm is not (it must still be
    /// nonzero).
    pub fn unnormalized(amplitudes: Vec<Complex>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        if let Some(i) = amplitudes.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if amplitudes.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(QubitState { num_qubits, amplitudes })
    }

    #[cfg(test)]
    pub(crate) fn from_amplitudes_unchecked(amplitudes: Vec<Complex>) -> Self {
        let num_qubits = amplitudes.len().trailing_zeros() as usize;
        QubitState { num_qubits, amplitudes }
    }

    /// Basis ket with amplitude index `index` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || index >= 1 << n {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: index,
                min: 0,
                max: (1usize << n.min(MAX_QUBITS)) - 1,
            });
        }
        let mut amps = vec![Complex::new(0.0, 0.0); 1 << n];
        amps[index] = Complex::new(1.0, 0.0);
        Ok(QubitState {
            num_qubits: n,
            amplitudes: amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amplitudes)
    }

    /// Amplitude of the basis ket written as a bitstring, e.g. `"101"`.
    pub fn amplitude_of(&self, bits: &str) -> Option<Complex> {
        if bits.len() != self.num_qubits {
            return None;
        }
        usize::from_str_radix(bits, 2).ok().map(|j| self.amplitudes[j])
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &QubitState) -> Result<Complex> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::Shape(format!(
                "{} vs {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

pub fn state_to_hypermatrix(s: &QubitState) -> Hypermatrix {
    Hypermatrix::from_parts(vec![2; s.num_qubits], s.amplitudes.clone())
}

/// Inverse of [`state_to_hypermatrix`]; the tensor must be 2×…×2 with unit
/// Frobenius norm.
pub fn hypermatrix_to_state(h: &Hypermatrix) -> Result<QubitState> {
    if let Some(a) = h.dims().iter().position(|&n| n != 2) {
        return Err(Error::NotQubit {
            mode: a + 1,
            len: h.dims()[a],
        });
    }
    QubitState::new(h.entries().to_vec())
}

/// A single-qubit unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitary(Matrix);

impl LocalUnitary {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape(format!(
                "local unitary must be 2x2, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let residual = m.unitarity_residual().unwrap_or(f64::INFINITY);
        if residual > DEFAULT_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(LocalUnitary(m))
    }

    /// Requires det = 1 as well.
    pub fn special(m: Matrix) -> Result<Self> {
        let u = Self::new(m)?;
        let residual = (u.det() - Complex::new(1.0, 0.0)).norm();
        if residual > DEFAULT_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        LocalUnitary(Matrix::identity(2))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn det(&self) -> Complex {
        self.0.det2().expect("2x2 by construction")
    }
}

/// (U<sub>1</sub> ⊗ … ⊗ U<sub>n</sub>)|ψ⟩, applied one qubit at a time on the
/// amplitude vector.
pub fn apply_local_unitaries(s: &QubitState, us: &[LocalUnitary]) -> Result<QubitState> {
    let n = s.num_qubits;
    if us.len() != n {
        return Err(Error::CountMismatch {
            expected: n,
            found: us.len(),
        });
    }
    let mut amps = s.amplitudes.clone();
    for (q, u) in us.iter().enumerate() {
        let bit = 1usize << (n - 1 - q);
        let m = u.matrix().entries();
        let (u00, u01, u10, u11) = (m[0], m[1], m[2], m[3]);
        for i in 0..amps.len() {
            if i & bit != 0 {
                continue;
            }
            let (a0, a1) = (amps[i], amps[i | bit]);
            amps[i] = u00 * a0 + u01 * a1;
            amps[i | bit] = u10 * a0 + u11 * a1;
        }
    }
    Ok(QubitState {
        num_qubits: n,
        amplitudes: amps,
    })
}

fn require_even(s: &QubitState) -> Result<u32> {
    if !s.num_qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount(s.num_qubits));
    }
    Ok((s.num_qubits / 2) as u32)
}

/// σ<sub>y</sub><sup>⊗2n</sup>|ψ*⟩ via the anti-diagonal sign string:
/// output[j] = t<sub>j</sub> · conj(ψ<sub>L−1−j</sub>).
pub fn spin_flip(s: &QubitState) -> Result<Vec<Complex>> {
    let half = require_even(s)?;
    let t = sign_string_sigma(half)?;
    let last = s.amplitudes.len() - 1;
    Ok(t.iter()
        .enumerate()
        .map(|(j, sign)| s.amplitudes[last - j].conj() * f64::from(sign))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangleRoute {
    /// |⟨ψ|σ<sub>y</sub><sup>⊗2n</sup>|ψ*⟩|²
    SpinFlip,
    /// 4|hdet(ψ̂)|²
    Hdet,
}

/// τ<sub>n</sub> of a 2n-qubit state.
pub fn n_tangle(s: &QubitState, via: TangleRoute) -> Result<f64> {
    require_even(s)?;
    match via {
        TangleRoute::SpinFlip => {
            let flipped = spin_flip(s)?;
            let overlap: Complex = s.amplitudes.iter().zip(&flipped).map(|(a, b)| a.conj() * b).sum();
            Ok(overlap.norm_sqr())
        }
        TangleRoute::Hdet => Ok(4.0 * hdet_fast(s)?.norm_sqr()),
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// i.i.d. complex Gaussian amplitudes, normalized.
pub fn random_state_from<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<QubitState> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::OutOfRange {
            what: "qubit count",
            value: n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let amps = (0..1usize << n).map(|_| gaussian_complex(rng)).collect();
    QubitState::renormalized(amps)
}

pub fn random_state(n: usize, seed: u64) -> Result<QubitState> {
    random_state_from(&mut seeded_rng(seed), n)
}

/// Haar-random SU(2) element [[a, −b̄], [b, ā]] from a normalized Gaussian
/// pair (a, b).
pub fn random_su2_from<R: Rng + ?Sized>(rng: &mut R) -> LocalUnitary {
    let (a, b) = loop {
        let a = gaussian_complex(rng);
        let b = gaussian_complex(rng);
        let len = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if len > 1e-300 {
            break (a / len, b / len);
        }
    };
    LocalUnitary(Matrix::from_parts(2, 2, vec![a, -b.conj(), b, a.conj()]))
}

pub fn random_su2(seed: u64) -> LocalUnitary {
    random_su2_from(&mut seeded_rng(seed))
}

/// A Gaussian 2×2 complex matrix rescaled to determinant 1.
pub fn random_sl2_from<R: Rng + ?Sized>(rng: &mut R) -> Matrix {
    loop {
        let e: Vec<Complex> = (0..4).map(|_| gaussian_complex(rng)).collect();
        let det = e[0] * e[3] - e[1] * e[2];
        if det.norm() < 1e-3 {
            continue;
        }
        let scale = det.sqrt().inv();
        return Matrix::from_parts(2, 2, e.into_iter().map(|z| z * scale).collect());
    }
}
