//! Dense complex hypermatrices and the multilinear operations on them.
//!
//! A [`Hypermatrix`] of order *N* with dims (n<sub>1</sub>, …, n<sub>N</sub>)
//! stores its entries in a flat row-major array (last index fastest). For a
//! qubit tensor that is exactly the lexicographic amplitude order, so the
//! state ↔ hypermatrix correspondence is the identity on storage.
//!
//! Modes are 1-based at the public surface (`k_mode_unfold(h, 1)` unfolds
//! along the first mode), multi-indices passed to [`Hypermatrix::get`] are
//! 0-based. [`mode_to_axis`] is the single place where the two meet.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Converts a 1-based mode index into a 0-based axis.
pub fn mode_to_axis(mode: usize, order: usize) -> Result<usize> {
    if mode == 0 || mode > order {
        return Err(Error::ModeOutOfRange { mode, order });
    }
    Ok(mode - 1)
}

fn check_finite(entries: &[Complex]) -> Result<()> {
    match entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Row-major strides for `dims`.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1; dims.len()];
    for a in (0..dims.len().saturating_sub(1)).rev() {
        out[a] = out[a + 1] * dims[a + 1];
    }
    out
}

/// Calls `f(flat, multi_index)` for every multi-index of `dims` in row-major
/// order.
pub(crate) fn for_each_index(dims: &[usize], mut f: impl FnMut(usize, &[usize])) {
    let total: usize = dims.iter().product();
    let mut idx = vec![0usize; dims.len()];
    for flat in 0..total {
        f(flat, &idx);
        for a in (0..dims.len()).rev() {
            idx[a] += 1;
            if idx[a] < dims[a] {
                break;
            }
            idx[a] = 0;
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Hypermatrix {
    dims: Vec<usize>,
    entries: Vec<Complex>,
}

impl Hypermatrix {
    pub fn new(dims: Vec<usize>, entries: Vec<Complex>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Empty("dimension list"));
        }
        if let Some(a) = dims.iter().position(|&n| n == 0) {
            return Err(Error::Shape(format!("mode {} has length 0", a + 1)));
        }
        let len: usize = dims.iter().product();
        if entries.len() != len {
            return Err(Error::Shape(format!(
                "dims {:?} need {} entries, got {}",
                dims,
                len,
                entries.len()
            )));
        }
        check_finite(&entries)?;
        Ok(Hypermatrix { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let len = dims.iter().product();
        Self::new(dims, vec![ZERO; len])
    }

    /// Builds a tensor by evaluating `f` at every 0-based multi-index.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> Complex) -> Result<Self> {
        let len: usize = dims.iter().product();
        let mut entries = Vec::with_capacity(len);
        for_each_index(&dims, |_, idx| entries.push(f(idx)));
        Self::new(dims, entries)
    }

    /// Unchecked constructor for internal results whose shape is known good.
    pub(crate) fn from_parts(dims: Vec<usize>, entries: Vec<Complex>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), entries.len());
        Hypermatrix { dims, entries }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All modes have the same length.
    pub fn is_cuboid(&self) -> bool {
        self.dims.windows(2).all(|w| w[0] == w[1])
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.order(), "multi-index has wrong order");
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of bounds for mode length {n}");
            acc * n + i
        })
    }

    /// Entry at a 0-based multi-index.
    pub fn get(&self, idx: &[usize]) -> Complex {
        self.entries[self.flat_index(idx)]
    }

    pub fn conjugate(&self) -> Hypermatrix {
        Hypermatrix::from_parts(self.dims.clone(), self.entries.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, alpha: Complex) -> Hypermatrix {
        Hypermatrix::from_parts(self.dims.clone(), self.entries.iter().map(|&z| alpha * z).collect())
    }

    pub fn add(&self, other: &Hypermatrix) -> Result<Hypermatrix> {
        self.check_same_dims(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Hypermatrix::from_parts(self.dims.clone(), entries))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Hypermatrix) -> Result<f64> {
        self.check_same_dims(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Same dims and every entry within `tol` (absolute).
    pub fn approx_eq(&self, other: &Hypermatrix, tol: f64) -> bool {
        matches!(self.max_abs_diff(other), Ok(d) if d <= tol)
    }

    fn check_same_dims(&self, other: &Hypermatrix) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::Shape(format!("dims {:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    /// Frobenius inner product ⟨self, other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &Hypermatrix) -> Result<Complex> {
        self.check_same_dims(other)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl fmt::Debug for Hypermatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypermatrix")
            .field("dims", &self.dims)
            .field("entries", &self.entries)
            .finish()
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("matrix shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        check_finite(&entries)?;
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Real-valued convenience constructor, mostly for tests and fixtures.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn identity(n: usize) -> Matrix {
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = ONE;
        }
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<Complex>) -> Matrix {
        debug_assert_eq!(rows * cols, entries.len());
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    /// Entry at 0-based (row, col).
    pub fn get(&self, row: usize, col: usize) -> Complex {
        assert!(row < self.rows && col < self.cols, "matrix index out of bounds");
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Complex] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Complex> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn adjoint(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        Matrix::from_parts(self.cols, self.rows, entries)
    }

    pub fn scale(&self, alpha: Complex) -> Matrix {
        Matrix::from_parts(self.rows, self.cols, self.entries.iter().map(|&z| alpha * z).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix::from_parts(self.rows, self.cols, entries))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == ZERO {
                    continue;
                }
                let src = other.row(l);
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(Matrix::from_parts(self.rows, other.cols, out))
    }

    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![ZERO; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * cols + j * other.cols;
                    for (l, b) in other.row(k).iter().enumerate() {
                        entries[base + l] = a * b;
                    }
                }
            }
        }
        Matrix::from_parts(rows, cols, entries)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// ‖M†M − I‖<sub>max</sub>; `None` for non-square matrices.
    pub fn unitarity_residual(&self) -> Option<f64> {
        if self.rows != self.cols {
            return None;
        }
        let g = self.adjoint().matmul(self).ok()?;
        g.max_abs_diff(&Matrix::identity(self.rows)).ok()
    }

    pub fn det2(&self) -> Option<Complex> {
        (self.rows == 2 && self.cols == 2)
            .then(|| self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2])
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// A permutation π of the modes {1, …, N}, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModePermutation {
    images: Vec<usize>,
}

impl ModePermutation {
    /// From the 1-based images (π(1), …, π(N)).
    pub fn new(one_based: &[usize]) -> Result<Self> {
        let n = one_based.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &p in one_based {
            if p == 0 || p > n {
                return Err(Error::InvalidPermutation(format!("image {p} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
            images.push(p - 1);
        }
        Ok(ModePermutation { images })
    }

    /// Builds a permutation of {1..n} from disjoint cycles in 1-based
    /// notation, e.g. `from_cycles(3, &[&[1, 3, 2]])` is (132).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPermutation(format!("cycle element {a} outside 1..={n}")));
                }
                if std::mem::replace(&mut touched[a - 1], true) {
                    return Err(Error::InvalidPermutation(format!("{a} appears in two cycles")));
                }
                images[a - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(&images)
    }

    pub fn identity(n: usize) -> Self {
        ModePermutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of the 0-based axis `a`.
    pub fn image(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p + 1).collect()
    }

    pub fn inverse(&self) -> ModePermutation {
        let mut inv = vec![0; self.images.len()];
        for (a, &p) in self.images.iter().enumerate() {
            inv[p] = a;
        }
        ModePermutation { images: inv }
    }

    /// The composite π∘ρ, i.e. `m ↦ π(ρ(m))`. With the axis convention of
    /// [`mode_permute`], permuting by π and then by ρ equals permuting once
    /// by `π.compose(ρ)`.
    pub fn compose(&self, rho: &ModePermutation) -> Result<ModePermutation> {
        if self.len() != rho.len() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose permutations of {} and {} modes",
                self.len(),
                rho.len()
            )));
        }
        Ok(ModePermutation {
            images: rho.images.iter().map(|&r| self.images[r]).collect(),
        })
    }
}

/// v<sub>1</sub> ∘ v<sub>2</sub> ∘ … ∘ v<sub>N</sub>.
pub fn outer_product(vectors: &[Vec<Complex>]) -> Result<Hypermatrix> {
    if vectors.is_empty() {
        return Err(Error::Empty("vector list"));
    }
    if vectors.iter().any(Vec::is_empty) {
        return Err(Error::Empty("outer product factor"));
    }
    let dims: Vec<usize> = vectors.iter().map(Vec::len).collect();
    Hypermatrix::from_fn(dims, |idx| idx.iter().zip(vectors).map(|(&i, v)| v[i]).product())
}

/// Contracts mode `axis` (0-based) of `h` with `a`: the result has length
/// `a.rows()` along that axis.
pub fn mode_multiply(h: &Hypermatrix, a: &Matrix, axis: usize) -> Result<Hypermatrix> {
    if axis >= h.order() {
        return Err(Error::ModeOutOfRange {
            mode: axis + 1,
            order: h.order(),
        });
    }
    let n = h.dims[axis];
    if a.cols() != n {
        return Err(Error::ModeMismatch {
            mode: axis + 1,
            expected: n,
            found: a.cols(),
        });
    }
    let m = a.rows();
    let inner: usize = h.dims[axis + 1..].iter().product();
    let outer: usize = h.dims[..axis].iter().product();
    let mut out = vec![ZERO; outer * m * inner];
    for o in 0..outer {
        let src = &h.entries[o * n * inner..(o + 1) * n * inner];
        let dst = &mut out[o * m * inner..(o + 1) * m * inner];
        for i in 0..m {
            let d = &mut dst[i * inner..(i + 1) * inner];
            for j in 0..n {
                let aij = a.get(i, j);
                if aij == ZERO {
                    continue;
                }
                for (x, y) in d.iter_mut().zip(&src[j * inner..(j + 1) * inner]) {
                    *x += aij * y;
                }
            }
        }
    }
    let mut dims = h.dims.clone();
    dims[axis] = m;
    Ok(Hypermatrix::from_parts(dims, out))
}

/// (A<sub>1</sub>, …, A<sub>N</sub>) * H.
pub fn multilinear_multiply(matrices: &[Matrix], h: &Hypermatrix) -> Result<Hypermatrix> {
    if matrices.len() != h.order() {
        return Err(Error::Shape(format!(
            "{} matrices for a tensor of order {}",
            matrices.len(),
            h.order()
        )));
    }
    for (axis, a) in matrices.iter().enumerate() {
        if a.cols() != h.dims[axis] {
            return Err(Error::ModeMismatch {
                mode: axis + 1,
                expected: h.dims[axis],
                found: a.cols(),
            });
        }
    }
    matrices
        .iter()
        .enumerate()
        .try_fold(h.clone(), |acc, (axis, a)| mode_multiply(&acc, a, axis))
}

/// Column of the mode-`axis` unfolding holding the multi-index `idx`:
/// j = Σ<sub>l≠k</sub> i<sub>l</sub> Π<sub>m&lt;l, m≠k</sub> n<sub>m</sub>.
fn unfold_column(dims: &[usize], axis: usize, idx: &[usize]) -> usize {
    let mut j = 0;
    let mut stride = 1;
    for (l, (&i, &n)) in idx.iter().zip(dims).enumerate() {
        if l == axis {
            continue;
        }
        j += i * stride;
        stride *= n;
    }
    j
}

/// H<sub>(k)</sub>, the n<sub>k</sub> × Π<sub>l≠k</sub> n<sub>l</sub> matrix
/// whose rows are indexed by mode `k` (1-based).
pub fn k_mode_unfold(h: &Hypermatrix, k: usize) -> Result<Matrix> {
    let axis = mode_to_axis(k, h.order())?;
    let rows = h.dims[axis];
    let cols = h.len() / rows;
    let mut entries = vec![ZERO; rows * cols];
    for_each_index(&h.dims, |flat, idx| {
        let j = unfold_column(&h.dims, axis, idx);
        entries[idx[axis] * cols + j] = h.entries[flat];
    });
    Ok(Matrix::from_parts(rows, cols, entries))
}

/// Inverse of [`k_mode_unfold`].
pub fn k_mode_fold(m: &Matrix, k: usize, dims: &[usize]) -> Result<Hypermatrix> {
    let axis = mode_to_axis(k, dims.len())?;
    let total: usize = dims.iter().product();
    if dims.contains(&0) || m.rows() != dims[axis] || m.rows() * m.cols() != total {
        return Err(Error::Shape(format!(
            "{}x{} matrix cannot fold along mode {k} into dims {dims:?}",
            m.rows(),
            m.cols()
        )));
    }
    let cols = m.cols();
    let mut entries = vec![ZERO; total];
    for_each_index(dims, |flat, idx| {
        let j = unfold_column(dims, axis, idx);
        entries[flat] = m.entries[idx[axis] * cols + j];
    });
    Ok(Hypermatrix::from_parts(dims.to_vec(), entries))
}

/// π-transpose as a permutation of modes: the result has dims
/// (n<sub>π(1)</sub>, …, n<sub>π(N)</sub>) and its entry at
/// (i<sub>π(1)</sub>, …, i<sub>π(N)</sub>) is H at (i<sub>1</sub>, …, i<sub>N</sub>).
/// For qubit tensors this relabels qubits, e.g. π = (13) sends |100⟩ to |001⟩.
pub fn mode_permute(h: &Hypermatrix, pi: &ModePermutation) -> Result<Hypermatrix> {
    if pi.len() != h.order() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of {} modes applied to a tensor of order {}",
            pi.len(),
            h.order()
        )));
    }
    let order = h.order();
    let dims: Vec<usize> = (0..order).map(|m| h.dims[pi.image(m)]).collect();
    let out_strides = strides(&dims);
    // stride in the result for each source axis
    let mut src_to_out = vec![0; order];
    for (m, &s) in out_strides.iter().enumerate() {
        src_to_out[pi.image(m)] = s;
    }
    let mut entries = vec![ZERO; h.len()];
    for_each_index(&h.dims, |flat, idx| {
        let dst: usize = idx.iter().zip(&src_to_out).map(|(i, s)| i * s).sum();
        entries[dst] = h.entries[flat];
    });
    Ok(Hypermatrix::from_parts(dims, entries))
}

pub fn frobenius_inner(h: &Hypermatrix, k: &Hypermatrix) -> Result<Complex> {
    h.inner(k)
}

pub fn frobenius_norm(h: &Hypermatrix) -> f64 {
    h.norm()
}

pub fn conjugate(h: &Hypermatrix) -> Hypermatrix {
    h.conjugate()
}
