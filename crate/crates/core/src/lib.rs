//! Pure qubit states as hypermatrices.
//!
//! An n-qubit state with lexicographically ordered amplitudes is the same data
//! as an order-n, 2×…×2 hypermatrix. This crate works on that hypermatrix:
//!
//! - [`tensor`]: dense complex hypermatrices with outer products,
//!   multilinear multiplication, k-mode unfolding and mode permutation
//!   (the π-transpose).
//! - [`hosvd`]: closed-form higher-order SVD for qubit modes, k-mode
//!   singular values and a three-valued LU-equivalence test.
//! - [`state`] and [`ket`]: states, Dirac-ket text, local unitaries, the
//!   spin-flip and the n-tangle.
//! - [`hyperdet`]: the combinatorial hyperdeterminant (full, even-order and
//!   quadratic-form evaluations) and the sign strings of Ent<sub>n</sub> and
//!   σ<sub>y</sub><sup>⊗2n</sup>.
//!
//! ```
//! use qhyper_core::{hosvd::lu_fingerprint, ket::parse_ket, state::state_to_hypermatrix};
//!
//! let psi = parse_ket("1/2|000> - 1/2|100> + 1/sqrt(2)|101>").unwrap();
//! let svals = lu_fingerprint(&state_to_hypermatrix(&psi)).unwrap();
//! assert!((svals[0][0] - 0.9238795325112867).abs() < 1e-12);
//! ```

pub mod bench;
pub mod error;
pub mod hosvd;
pub mod hyperdet;
pub mod json;
pub mod ket;
pub mod state;
pub mod tensor;

/// Default absolute tolerance for structural comparisons on unit-scale data.
pub const DEFAULT_TOL: f64 = 1e-10;

pub use error::{Error, ParseError, Result};
pub use hosvd::{hosvd, lu_equivalence, lu_fingerprint, HosvdResult, LuVerdict, SvalCertificate};
pub use hyperdet::{hdet_fast, hdet_general, hdet_reduced, SignKind, SignString};
pub use ket::{parse_ket, Normalization};
pub use state::{hypermatrix_to_state, state_to_hypermatrix, LocalUnitary, QubitState, TangleRoute};
pub use tensor::{Complex, Hypermatrix, Matrix, ModePermutation};
