//! JSON forms of tensors, states, matrices and HOSVD reports.
//!
//! Tensor: `{"dims":[n1,…,nN],"entries":[{"re":x,"im":y},…]}` (row-major).
//! State: `{"num_qubits":n,"amplitudes":[{"re":x,"im":y},…]}` (lexicographic).
//! Matrix: `{"rows":r,"cols":c,"entries":[…]}` (row-major).
//! HOSVD: `{"mode_svals":[[…],…],"factors":[matrix,…],"core":tensor}`.
//!
//! Floats are written with 17 significant digits.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::hosvd::HosvdResult;
use crate::ket::{normalize, Normalization};
use crate::state::QubitState;
use crate::tensor::{Complex, Hypermatrix, Matrix};

/// An `f64` serialized in `%.16e` form (17 significant digits).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        if !self.0.is_finite() {
            return Err(S::Error::custom("non-finite float"));
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(F17)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: F17,
    pub im: F17,
}

impl From<Complex> for ComplexJson {
    fn from(z: Complex) -> Self {
        ComplexJson {
            re: F17(z.re),
            im: F17(z.im),
        }
    }
}

impl From<ComplexJson> for Complex {
    fn from(z: ComplexJson) -> Self {
        Complex::new(z.re.0, z.im.0)
    }
}

fn to_json_vec(zs: &[Complex]) -> Vec<ComplexJson> {
    zs.iter().copied().map(ComplexJson::from).collect()
}

fn from_json_vec(zs: Vec<ComplexJson>) -> Vec<Complex> {
    zs.into_iter().map(Complex::from).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub dims: Vec<usize>,
    pub entries: Vec<ComplexJson>,
}

impl From<&Hypermatrix> for TensorJson {
    fn from(h: &Hypermatrix) -> Self {
        TensorJson {
            dims: h.dims().to_vec(),
            entries: to_json_vec(h.entries()),
        }
    }
}

impl TryFrom<TensorJson> for Hypermatrix {
    type Error = Error;
    fn try_from(t: TensorJson) -> Result<Self> {
        Hypermatrix::new(t.dims, from_json_vec(t.entries))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub num_qubits: usize,
    pub amplitudes: Vec<ComplexJson>,
}

impl From<&QubitState> for StateJson {
    fn from(s: &QubitState) -> Self {
        StateJson {
            num_qubits: s.num_qubits(),
            amplitudes: to_json_vec(s.amplitudes()),
        }
    }
}

impl StateJson {
    pub fn into_state(self, mode: Normalization) -> Result<QubitState> {
        let expected = 1usize
            .checked_shl(self.num_qubits as u32)
            .filter(|_| self.num_qubits < 64);
        if expected != Some(self.amplitudes.len()) {
            return Err(Error::Shape(format!(
                "num_qubits {} needs 2^{} amplitudes, got {}",
                self.num_qubits,
                self.num_qubits,
                self.amplitudes.len()
            )));
        }
        normalize(from_json_vec(self.amplitudes), mode)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ComplexJson>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: to_json_vec(m.entries()),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self> {
        Matrix::new(m.rows, m.cols, from_json_vec(m.entries))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HosvdJson {
    pub mode_svals: Vec<Vec<F17>>,
    pub factors: Vec<MatrixJson>,
    pub core: TensorJson,
}

impl From<&HosvdResult> for HosvdJson {
    fn from(r: &HosvdResult) -> Self {
        HosvdJson {
            mode_svals: r
                .mode_svals
                .iter()
                .map(|s| s.iter().copied().map(F17).collect())
                .collect(),
            factors: r.factors.iter().map(MatrixJson::from).collect(),
            core: TensorJson::from(&r.core),
        }
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("JSON forms serialize infallibly for finite data")
}

pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

pub fn tensor_to_json(h: &Hypermatrix) -> String {
    to_string(&TensorJson::from(h))
}

pub fn tensor_from_json(text: &str) -> Result<Hypermatrix> {
    from_str::<TensorJson>(text)?.try_into()
}

pub fn state_to_json(s: &QubitState) -> String {
    to_string(&StateJson::from(s))
}

pub fn state_from_json(text: &str, mode: Normalization) -> Result<QubitState> {
    from_str::<StateJson>(text)?.into_state(mode)
}

pub fn hosvd_to_json(r: &HosvdResult) -> String {
    to_string(&HosvdJson::from(r))
}
