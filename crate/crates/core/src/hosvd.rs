//! Higher-order SVD of qubit hypermatrices and the LU-equivalence test built
//! on it.
//!
//! Every mode has length 2, so each factor V<sub>k</sub> comes from the
//! closed-form eigendecomposition of the 2×2 Hermitian Gram matrix
//! H<sub>(k)</sub> H<sub>(k)</sub><sup>†</sup>. No iterative SVD is involved.

use crate::error::{Error, Result};
use crate::tensor::{k_mode_unfold, mode_to_axis, multilinear_multiply, Complex, Hypermatrix, Matrix, ONE, ZERO};

/// Relative spectral gap (σ<sub>1</sub> − σ<sub>2</sub>)/σ<sub>1</sub> below
/// which a mode's factor is treated as non-unique.
pub const DEGENERACY_GAP: f64 = 1e-6;

/// Magnitude slack when picking the phase-reference entry of a factor column.
const PHASE_TIE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct HosvdResult {
    /// V<sub>1</sub>, …, V<sub>N</sub>, each 2×2 unitary.
    pub factors: Vec<Matrix>,
    /// Σ = (V<sub>1</sub><sup>†</sup>, …, V<sub>N</sub><sup>†</sup>) * H.
    pub core: Hypermatrix,
    /// σ<sup>(k)</sup>, descending, one list per mode.
    pub mode_svals: Vec<Vec<f64>>,
}

/// Eigendecomposition of the Hermitian matrix [[a, c], [c̄, b]].
///
/// Returns the eigenvalues in descending order and a unitary matrix whose
/// columns are the matching eigenvectors. The leading eigenvector is built
/// from whichever of (λ−b, c̄) and (c, λ−a) avoids cancellation; the second
/// column is its orthogonal complement (−v̄<sub>1</sub>, v̄<sub>0</sub>).
pub fn hermitian_eigen2(a: f64, b: f64, c: Complex) -> ([f64; 2], Matrix) {
    let d = (a - b).hypot(2.0 * c.norm());
    let hi = 0.5 * (a + b + d);
    let lo = 0.5 * (a + b - d);
    let (x, y) = if a >= b {
        (Complex::new(0.5 * (a - b + d), 0.0), c.conj())
    } else {
        (c, Complex::new(0.5 * (b - a + d), 0.0))
    };
    let len = (x.norm_sqr() + y.norm_sqr()).sqrt();
    let (x, y) = if len > 0.0 { (x / len, y / len) } else { (ONE, ZERO) };
    let v = Matrix::from_parts(2, 2, vec![x, -y.conj(), y, x.conj()]);
    ([hi, lo], v)
}

fn require_qubit(h: &Hypermatrix, axis: usize) -> Result<()> {
    match h.dims()[axis] {
        2 => Ok(()),
        len => Err(Error::NotQubit { mode: axis + 1, len }),
    }
}

/// Left singular vectors and singular values of H<sub>(k)</sub> (`k` 1-based).
///
/// The singular values are the norms of the rows of V<sub>k</sub><sup>†</sup>
/// H<sub>(k)</sub>, which stays accurate near zero where the square root of a
/// Gram eigenvalue would not. A zero tensor yields the identity and zeros.
pub fn mode_factor(h: &Hypermatrix, k: usize) -> Result<(Matrix, Vec<f64>)> {
    let axis = mode_to_axis(k, h.order())?;
    require_qubit(h, axis)?;
    let m = k_mode_unfold(h, k)?;
    let (r0, r1) = (m.row(0), m.row(1));
    let a: f64 = r0.iter().map(|z| z.norm_sqr()).sum();
    let b: f64 = r1.iter().map(|z| z.norm_sqr()).sum();
    if a + b == 0.0 {
        return Ok((Matrix::identity(2), vec![0.0, 0.0]));
    }
    let c: Complex = r0.iter().zip(r1).map(|(x, y)| x * y.conj()).sum();
    let (_, v) = hermitian_eigen2(a, b, c);

    let project = |col: usize| -> f64 {
        let (p, q) = (v.get(0, col).conj(), v.get(1, col).conj());
        r0.iter()
            .zip(r1)
            .map(|(x, y)| (p * x + q * y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let (s0, s1) = (project(0), project(1));
    if s1 > s0 {
        let swapped = Matrix::from_parts(2, 2, vec![v.get(0, 1), v.get(0, 0), v.get(1, 1), v.get(1, 0)]);
        return Ok((swapped, vec![s1, s0]));
    }
    Ok((v, vec![s0, s1]))
}

fn require_all_qubit(h: &Hypermatrix) -> Result<()> {
    (0..h.order()).try_for_each(|axis| require_qubit(h, axis))
}

pub fn hosvd(h: &Hypermatrix) -> Result<HosvdResult> {
    require_all_qubit(h)?;
    let mut factors = Vec::with_capacity(h.order());
    let mut mode_svals = Vec::with_capacity(h.order());
    for k in 1..=h.order() {
        let (v, s) = mode_factor(h, k)?;
        factors.push(v);
        mode_svals.push(s);
    }
    let adjoints: Vec<Matrix> = factors.iter().map(Matrix::adjoint).collect();
    let core = multilinear_multiply(&adjoints, h)?;
    Ok(HosvdResult {
        factors,
        core,
        mode_svals,
    })
}

/// The per-mode singular values only; no core is formed.
pub fn lu_fingerprint(h: &Hypermatrix) -> Result<Vec<Vec<f64>>> {
    require_all_qubit(h)?;
    (1..=h.order()).map(|k| mode_factor(h, k).map(|(_, s)| s)).collect()
}

/// Multiplies the subtensor Σ<sub>i_axis = j</sub> by `z` in place.
fn scale_slice(entries: &mut [Complex], dims: &[usize], axis: usize, j: usize, z: Complex) {
    let inner: usize = dims[axis + 1..].iter().product();
    let n = dims[axis];
    for block in entries.chunks_mut(n * inner) {
        for x in &mut block[j * inner..(j + 1) * inner] {
            *x *= z;
        }
    }
}

/// Fixes the phase gauge of the factors: every column is rotated so that its
/// first entry of largest magnitude is real and positive, and the core absorbs
/// the inverse phase so the reconstruction is unchanged.
pub fn canonicalize_core(r: &HosvdResult) -> HosvdResult {
    let dims = r.core.dims().to_vec();
    let mut core = r.core.entries().to_vec();
    let mut factors = Vec::with_capacity(r.factors.len());
    for (axis, v) in r.factors.iter().enumerate() {
        let mut cols: Vec<Vec<Complex>> = (0..v.cols()).map(|j| v.column(j)).collect();
        for (j, col) in cols.iter_mut().enumerate() {
            let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if max == 0.0 {
                continue;
            }
            let pivot = col.iter().find(|z| z.norm() >= max - PHASE_TIE).copied().unwrap_or(ONE);
            let phase = pivot.conj() / pivot.norm();
            for z in col.iter_mut() {
                *z *= phase;
            }
            scale_slice(&mut core, &dims, axis, j, phase.conj());
        }
        let rows = v.rows();
        let entries = (0..rows)
            .flat_map(|i| cols.iter().map(move |c| c[i]))
            .collect::<Vec<_>>();
        factors.push(Matrix::from_parts(rows, cols.len(), entries));
    }
    HosvdResult {
        factors,
        core: Hypermatrix::from_parts(dims, core),
        mode_svals: r.mode_svals.clone(),
    }
}

/// Evidence that two tensors are not LU equivalent: their singular values
/// differ in mode `mode` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct SvalCertificate {
    pub mode: usize,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LuVerdict {
    NotEquivalent(SvalCertificate),
    /// Same singular values and matching canonical cores.
    EquivalentCoreMatch,
    /// Same singular values, but a degenerate spectrum or a core mismatch
    /// leaves the question open.
    Inconclusive,
}

impl LuVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            LuVerdict::NotEquivalent(_) => "NotEquivalent",
            LuVerdict::EquivalentCoreMatch => "EquivalentCoreMatch",
            LuVerdict::Inconclusive => "Inconclusive",
        }
    }
}

fn is_degenerate(svals: &[f64]) -> bool {
    match svals {
        [s1, s2, ..] => *s1 <= 0.0 || (s1 - s2) / s1 < DEGENERACY_GAP,
        _ => false,
    }
}

/// Three-valued LU-equivalence decision for two normalized qubit tensors.
pub fn lu_equivalence(a: &Hypermatrix, b: &Hypermatrix, tol: f64) -> Result<LuVerdict> {
    if a.dims() != b.dims() {
        return Err(Error::Shape(format!("dims {:?} vs {:?}", a.dims(), b.dims())));
    }
    for h in [a, b] {
        let norm = h.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm });
        }
    }
    let ra = hosvd(a)?;
    let rb = hosvd(b)?;
    for (k, (sa, sb)) in ra.mode_svals.iter().zip(&rb.mode_svals).enumerate() {
        if sa.iter().zip(sb).any(|(x, y)| (x - y).abs() > tol) {
            return Ok(LuVerdict::NotEquivalent(SvalCertificate {
                mode: k + 1,
                left: sa.clone(),
                right: sb.clone(),
            }));
        }
    }
    if ra.mode_svals.iter().chain(&rb.mode_svals).any(|s| is_degenerate(s)) {
        return Ok(LuVerdict::Inconclusive);
    }
    match core_phase_match(&ra.core, &rb.core, tol) {
        Some(_) => Ok(LuVerdict::EquivalentCoreMatch),
        None => Ok(LuVerdict::Inconclusive),
    }
}

/// Entries below this magnitude do not take part in solving for the phases;
/// they are still checked when the solution is verified.
const PHASE_SUPPORT: f64 = 1e-6;

/// Looks for diagonal unitaries P<sub>k</sub> = diag(e<sup>iα<sub>k</sub></sup>,
/// e<sup>iβ<sub>k</sub></sup>) with (P<sub>1</sub>, …, P<sub>N</sub>) * `a` = `b`
/// to within `tol` (max abs entry difference), and returns the angle pairs.
///
/// The phase picked up by entry i is γ + Σ<sub>k: i_k = 1</sub> δ<sub>k</sub>,
/// so matching is a linear system over the torus with 0/1 coefficients. It is
/// brought to Hermite form by unimodular integer row operations and solved by
/// back-substitution, which finds a solution whenever one exists. The answer is
/// then checked against every entry.
pub fn core_phase_match(a: &Hypermatrix, b: &Hypermatrix, tol: f64) -> Option<Vec<[f64; 2]>> {
    if a.dims() != b.dims() || a.dims().iter().any(|&d| d != 2) {
        return None;
    }
    let order = a.order();
    let cols = order + 1;
    // echelon rows (coefficients, rhs), at most one per pivot column
    let mut basis: Vec<Option<(Vec<i64>, f64)>> = vec![None; cols];
    for (i, (x, y)) in a.entries().iter().zip(b.entries()).enumerate() {
        if x.norm() <= PHASE_SUPPORT || y.norm() <= PHASE_SUPPORT {
            continue;
        }
        let mut row = vec![1i64; cols];
        for k in 0..order {
            row[k + 1] = ((i >> (order - 1 - k)) & 1) as i64;
        }
        insert_row(&mut basis, row, (y / x).arg())?;
    }
    // back-substitution; free variables stay at zero
    let mut x = vec![0.0f64; cols];
    for p in (0..cols).rev() {
        if let Some((row, rhs)) = &basis[p] {
            let rest: f64 = (p + 1..cols).map(|l| row[l] as f64 * x[l]).sum();
            x[p] = (rhs - rest) / row[p] as f64;
        }
    }
    let angles: Vec<[f64; 2]> = (0..order)
        .map(|k| if k == 0 { [x[0], x[0] + x[1]] } else { [0.0, x[k + 1]] })
        .collect();
    let phases: Vec<Matrix> = angles
        .iter()
        .map(|&[s, t]| {
            Matrix::from_parts(
                2,
                2,
                vec![Complex::from_polar(1.0, s), ZERO, ZERO, Complex::from_polar(1.0, t)],
            )
        })
        .collect();
    let moved = multilinear_multiply(&phases, a).ok()?;
    (moved.max_abs_diff(b).ok()? <= tol).then_some(angles)
}

/// Adds an equation to an integer echelon basis using extended-gcd row
/// combinations. Returns `None` on coefficient overflow.
fn insert_row(basis: &mut [Option<(Vec<i64>, f64)>], mut row: Vec<i64>, mut rhs: f64) -> Option<()> {
    for p in 0..row.len() {
        if row[p] == 0 {
            continue;
        }
        let Some((brow, brhs)) = basis[p].take() else {
            if row[p] < 0 {
                row.iter_mut().for_each(|c| *c = -*c);
                rhs = -rhs;
            }
            basis[p] = Some((row, rhs));
            return Some(());
        };
        let (g, u, v) = ext_gcd(brow[p], row[p]);
        let (bp, rp) = (brow[p] / g, row[p] / g);
        let mut top = Vec::with_capacity(row.len());
        let mut rest = Vec::with_capacity(row.len());
        for (&bc, &rc) in brow.iter().zip(&row) {
            top.push(u.checked_mul(bc)?.checked_add(v.checked_mul(rc)?)?);
            rest.push(rp.checked_mul(bc)?.checked_sub(bp.checked_mul(rc)?)?);
        }
        let top_rhs = u as f64 * brhs + v as f64 * rhs;
        rhs = rp as f64 * brhs - bp as f64 * rhs;
        basis[p] = Some((top, top_rhs));
        row = rest;
    }
    Some(())
}

/// (g, u, v) with u·a + v·b = g = gcd(a, b) > 0.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}
