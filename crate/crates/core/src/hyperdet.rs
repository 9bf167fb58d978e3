//! Combinatorial hyperdeterminants and the sign strings along the main
//! anti-diagonal of Ent<sub>n</sub> and σ<sub>y</sub><sup>⊗2n</sup>.
//!
//! A [`SignString`] is the ±1 pattern of a 4<sup>n</sup>×4<sup>n</sup>
//! anti-diagonal matrix read left to right. It is stored packed, one bit per
//! entry (set bit = −1), so n = 13 costs 8 MiB instead of a dense matrix.
//! Every such string is a concatenation of the blocks P = `+--+` and
//! N = `-++-`.
//!
//! The global ½ of Ent<sub>n</sub> is not part of the string; it is applied
//! by [`hdet_fast`] and [`ent_matrix_dense`].

use std::fmt;

use crate::error::{Error, Result};
use crate::state::QubitState;
use crate::tensor::{strides, Complex, Hypermatrix, Matrix, ZERO};

/// Largest n accepted by the sign-string constructors (strings of 4^13 signs).
pub const MAX_SIGN_N: u32 = 13;

/// Largest n for which dense 4^n × 4^n matrices are built.
pub const MAX_DENSE_N: u32 = 5;

/// Enumeration cap on the number of permutation tuples in a hyperdeterminant.
pub const MAX_HDET_TERMS: f64 = 1e7;

/// Bits of `j` in 0..64 with odd popcount.
const ODD_PARITY_64: u64 = 0x6996_9669_9669_6996;

const P_BITS: u64 = 0b0110;
const N_BITS: u64 = 0b1001;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignKind {
    /// Anti-diagonal of Ent<sub>n</sub>, the matrix of the hdet quadratic form.
    Ent,
    /// Anti-diagonal of σ<sub>y</sub><sup>⊗2n</sup>.
    SigmaY,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SignString {
    n: u32,
    kind: SignKind,
    len: usize,
    // bit j set <=> sign j is -1; bits past `len` are always clear
    bits: Vec<u64>,
}

struct Builder {
    len: usize,
    bits: Vec<u64>,
}

impl Builder {
    fn with_capacity(len: usize) -> Self {
        Builder {
            len: 0,
            bits: Vec::with_capacity(len.div_ceil(64)),
        }
    }

    fn push(&mut self, minus: bool) {
        if self.len.is_multiple_of(64) {
            self.bits.push(0);
        }
        if minus {
            *self.bits.last_mut().unwrap() |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    fn extend(&mut self, src: &SignString, negate: bool) {
        if self.len.is_multiple_of(64) && src.len.is_multiple_of(64) {
            self.bits.extend(src.bits.iter().map(|&w| if negate { !w } else { w }));
            self.len += src.len;
        } else {
            for j in 0..src.len {
                self.push(src.is_minus(j) ^ negate);
            }
        }
    }

    fn finish(self, n: u32, kind: SignKind) -> SignString {
        SignString {
            n,
            kind,
            len: self.len,
            bits: self.bits,
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_SIGN_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as usize,
            min: 1,
            max: MAX_SIGN_N as usize,
        });
    }
    Ok(())
}

impl SignString {
    fn from_nibble(nibble: u64, kind: SignKind) -> SignString {
        SignString {
            n: 1,
            kind,
            len: 4,
            bits: vec![nibble],
        }
    }

    /// One recursion step: each quarter is `self` or its negation according
    /// to `pattern`.
    fn grow(&self, pattern: [bool; 4]) -> SignString {
        let mut b = Builder::with_capacity(4 * self.len);
        for negate in pattern {
            b.extend(self, negate);
        }
        b.finish(self.n + 1, self.kind)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> SignKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn is_minus(&self, j: usize) -> bool {
        (self.bits[j / 64] >> (j % 64)) & 1 == 1
    }

    /// Sign at 0-based position `j`, as ±1.
    pub fn get(&self, j: usize) -> i8 {
        assert!(j < self.len, "sign index {j} out of range");
        if self.is_minus(j) {
            -1
        } else {
            1
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i8> + '_ {
        (0..self.len).map(|j| self.get(j))
    }

    pub fn negated(&self) -> SignString {
        let mut b = Builder::with_capacity(self.len);
        b.extend(self, true);
        b.finish(self.n, self.kind)
    }

    /// First index where `self` differs from `other` (or from `-other` when
    /// `negate` is set). Strings of different length mismatch at the shorter
    /// length.
    pub fn first_mismatch(&self, other: &SignString, negate: bool) -> Option<usize> {
        let common = self.len.min(other.len);
        let full = common / 64;
        for w in 0..full {
            let theirs = if negate { !other.bits[w] } else { other.bits[w] };
            let diff = self.bits[w] ^ theirs;
            if diff != 0 {
                return Some(w * 64 + diff.trailing_zeros() as usize);
            }
        }
        if let Some(j) = (full * 64..common).find(|&j| self.is_minus(j) != (other.is_minus(j) ^ negate)) {
            return Some(j);
        }
        (self.len != other.len).then_some(common)
    }

    /// signs[j] = signs[len − 1 − j] for every j.
    pub fn is_palindromic(&self) -> bool {
        if self.len.is_multiple_of(64) {
            let w = self.bits.len();
            (0..w / 2 + w % 2).all(|i| self.bits[i] == self.bits[w - 1 - i].reverse_bits())
        } else {
            (0..self.len / 2).all(|j| self.is_minus(j) == self.is_minus(self.len - 1 - j))
        }
    }

    /// The string over {P, N}, or `None` if some 4-block is neither.
    pub fn block_word(&self) -> Option<String> {
        if !self.len.is_multiple_of(4) {
            return None;
        }
        (0..self.len / 4)
            .map(|b| match (self.bits[b / 16] >> (4 * (b % 16))) & 0xf {
                P_BITS => Some('P'),
                N_BITS => Some('N'),
                _ => None,
            })
            .collect()
    }

    /// Prefix of the first `len` signs.
    pub fn prefix(&self, len: usize) -> SignString {
        assert!(len <= self.len);
        let mut b = Builder::with_capacity(len);
        for j in 0..len {
            b.push(self.is_minus(j));
        }
        b.finish(self.n, self.kind)
    }

    /// The signs in `range` as a fresh string.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SignString {
        assert!(range.end <= self.len);
        let mut b = Builder::with_capacity(range.len());
        for j in range {
            b.push(self.is_minus(j));
        }
        b.finish(self.n, self.kind)
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|j| if self.is_minus(j) { '-' } else { '+' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignString({:?}, n={}, ", self.kind, self.n)?;
        if self.len <= 256 {
            write!(f, "{self})")
        } else {
            write!(f, "{} signs)", self.len)
        }
    }
}

/// +1 for a binary string with an even number of 1s, −1 otherwise. The input
/// must have even length, where the parities of 0s and 1s agree.
pub fn chi(bits: &str) -> Result<i8> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::Shape(format!("binary string of odd length {}", bits.len())));
    }
    let mut ones = 0usize;
    for (i, ch) in bits.char_indices() {
        match ch {
            '0' => {}
            '1' => ones += 1,
            _ => return Err(Error::Shape(format!("non-binary character {ch:?} at {i}"))),
        }
    }
    Ok(if ones.is_multiple_of(2) { 1 } else { -1 })
}

/// Anti-diagonal of Ent<sub>n</sub> by the block recursion
/// S ↦ S S̄ S̄ S starting from P.
pub fn sign_string_ent(n: u32) -> Result<SignString> {
    check_n(n)?;
    let mut s = SignString::from_nibble(P_BITS, SignKind::Ent);
    for _ in 1..n {
        s = s.grow([false, true, true, false]);
    }
    Ok(s)
}

/// Anti-diagonal of σ<sub>y</sub><sup>⊗2n</sup> by the recursion
/// S ↦ S̄ S S S̄ starting from N.
pub fn sign_string_sigma(n: u32) -> Result<SignString> {
    check_n(n)?;
    let mut s = SignString::from_nibble(N_BITS, SignKind::SigmaY);
    for _ in 1..n {
        s = s.grow([true, false, false, true]);
    }
    Ok(s)
}

/// Ent<sub>n</sub> signs straight from parity: sign j is χ of the 2n-bit
/// binary expansion of j.
pub fn sign_string_chi(n: u32) -> Result<SignString> {
    check_n(n)?;
    let len = 1usize << (2 * n);
    let mut b = Builder::with_capacity(len);
    if len.is_multiple_of(64) {
        for w in 0..len / 64 {
            let high_odd = w.count_ones() % 2 == 1;
            b.bits.push(if high_odd { !ODD_PARITY_64 } else { ODD_PARITY_64 });
        }
        b.len = len;
    } else {
        for j in 0..len {
            b.push(j.count_ones() % 2 == 1);
        }
    }
    Ok(b.finish(n, SignKind::Ent))
}

/// 1-based position in the lexicographic list of all `width`-bit strings of
/// the string whose only 1 sits at position `k` counted from the right.
pub fn fact1_position(k: usize, width: usize) -> Result<usize> {
    if width == 0 || width > 62 {
        return Err(Error::OutOfRange {
            what: "width",
            value: width,
            min: 1,
            max: 62,
        });
    }
    if k == 0 || k > width {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 1,
            max: width,
        });
    }
    Ok((1usize << (k - 1)) + 1)
}

/// A permutation of {0, …, m−1} with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationWord {
    images: Vec<usize>,
    parity: i8,
}

impl PermutationWord {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &p in &images {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        // sign = (-1)^(m - #cycles)
        let mut visited = vec![false; m];
        let mut cycles = 0;
        for start in 0..m {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = images[i];
            }
        }
        let parity = if (m - cycles).is_multiple_of(2) { 1 } else { -1 };
        Ok(PermutationWord { images, parity })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// All m! permutations in lexicographic order.
    pub fn all(m: usize) -> Vec<PermutationWord> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(PermutationWord::new(cur.clone()).expect("valid by construction"));
            // next lexicographic permutation
            let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|x| x as f64).product()
}

fn cuboid_side(h: &Hypermatrix) -> Result<usize> {
    if !h.is_cuboid() {
        return Err(Error::NotCuboid(h.dims().to_vec()));
    }
    Ok(h.dims()[0])
}

fn check_cap(terms: f64) -> Result<()> {
    if terms > MAX_HDET_TERMS {
        return Err(Error::SizeCap {
            terms,
            cap: MAX_HDET_TERMS,
        });
    }
    Ok(())
}

/// Σ over all tuples (σ<sub>a</sub>)<sub>a ∈ axes</sub> of the signed product
/// Π<sub>j</sub> H[…], where axes not in the tuple carry the identity index j.
fn signed_permutation_sum(h: &Hypermatrix, permuted_axes: usize) -> Complex {
    let m = h.dims()[0];
    let order = h.order();
    let st = strides(h.dims());
    let perms = PermutationWord::all(m);
    let fixed = order - permuted_axes;
    // base offset of row j from the unpermuted leading axes
    let base: Vec<usize> = (0..m).map(|j| (0..fixed).map(|a| j * st[a]).sum()).collect();
    let entries = h.entries();
    let mut digits = vec![0usize; permuted_axes];
    let mut total = ZERO;
    loop {
        let mut sign = 1i8;
        let mut prod = Complex::new(1.0, 0.0);
        for (j, &row) in base.iter().enumerate() {
            let mut flat = row;
            for (t, &d) in digits.iter().enumerate() {
                flat += perms[d].images[j] * st[fixed + t];
            }
            prod *= entries[flat];
        }
        for &d in &digits {
            sign *= perms[d].parity;
        }
        if sign > 0 {
            total += prod;
        } else {
            total -= prod;
        }
        // odometer
        let mut t = permuted_axes;
        loop {
            if t == 0 {
                return total;
            }
            t -= 1;
            digits[t] += 1;
            if digits[t] < perms.len() {
                break;
            }
            digits[t] = 0;
        }
    }
}

/// (1/m!) Σ<sub>σ<sub>1</sub>,…,σ<sub>N</sub></sub> sgn(σ<sub>1</sub>)⋯sgn(σ<sub>N</sub>)
/// Π<sub>j</sub> H<sub>σ<sub>1</sub>(j)…σ<sub>N</sub>(j)</sub> over a cuboid
/// hypermatrix of side m.
pub fn hdet_general(h: &Hypermatrix) -> Result<Complex> {
    let m = cuboid_side(h)?;
    check_cap(factorial(m).powi(h.order() as i32))?;
    Ok(signed_permutation_sum(h, h.order()) / factorial(m))
}

/// Even-order form with σ<sub>1</sub> fixed to the identity:
/// Σ<sub>σ<sub>2</sub>,…,σ<sub>N</sub></sub> (±) Π<sub>j</sub> H<sub>j σ<sub>2</sub>(j)…σ<sub>N</sub>(j)</sub>.
pub fn hdet_reduced(h: &Hypermatrix) -> Result<Complex> {
    let m = cuboid_side(h)?;
    if !h.order().is_multiple_of(2) {
        return Err(Error::OddOrder(h.order()));
    }
    check_cap(factorial(m).powi(h.order() as i32 - 1))?;
    Ok(signed_permutation_sum(h, h.order() - 1))
}

/// hdet of a 2n-qubit state as the quadratic form
/// ½ Σ<sub>j</sub> s<sub>j</sub> ψ<sub>j</sub> ψ<sub>4<sup>n</sup>−1−j</sub>
/// with s the Ent<sub>n</sub> sign string.
pub fn hdet_fast(state: &QubitState) -> Result<Complex> {
    let qubits = state.num_qubits();
    if !qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount(qubits));
    }
    let signs = sign_string_ent((qubits / 2) as u32)?;
    Ok(antidiagonal_form(state.amplitudes(), &signs) * 0.5)
}

/// Σ<sub>j</sub> s<sub>j</sub> x<sub>j</sub> x<sub>L−1−j</sub>.
pub(crate) fn antidiagonal_form(x: &[Complex], signs: &SignString) -> Complex {
    debug_assert_eq!(x.len(), signs.len());
    let last = x.len() - 1;
    let mut acc = ZERO;
    for (j, s) in signs.iter().enumerate() {
        let term = x[j] * x[last - j];
        if s > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_dense_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_DENSE_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as usize,
            min: 1,
            max: MAX_DENSE_N as usize,
        });
    }
    Ok(())
}

fn antidiagonal_matrix(signs: &SignString, scale: f64) -> Matrix {
    let len = signs.len();
    let mut entries = vec![ZERO; len * len];
    for (j, s) in signs.iter().enumerate() {
        entries[j * len + (len - 1 - j)] = Complex::new(scale * f64::from(s), 0.0);
    }
    Matrix::from_parts(len, len, entries)
}

/// Dense Ent<sub>n</sub>, including the global ½.
pub fn ent_matrix_dense(n: u32) -> Result<Matrix> {
    check_dense_n(n)?;
    Ok(antidiagonal_matrix(&sign_string_ent(n)?, 0.5))
}

/// Dense σ<sub>y</sub><sup>⊗2n</sup> materialized from its sign string.
pub fn sigma_y_dense(n: u32) -> Result<Matrix> {
    check_dense_n(n)?;
    Ok(antidiagonal_matrix(&sign_string_sigma(n)?, 1.0))
}

/// The Pauli matrix σ<sub>y</sub> = [[0, −i], [i, 0]].
pub fn pauli_y() -> Matrix {
    Matrix::from_parts(2, 2, vec![ZERO, Complex::new(0.0, -1.0), Complex::new(0.0, 1.0), ZERO])
}

/// σ<sub>y</sub><sup>⊗2n</sup> by repeated Kronecker products.
pub fn sigma_y_kron_power(n: u32) -> Result<Matrix> {
    check_dense_n(n)?;
    let y = pauli_y();
    Ok((1..2 * n).fold(y.clone(), |acc, _| acc.kron(&y)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseCheck {
    pub pass: bool,
    /// (row, col) of the first differing entry.
    pub first_mismatch: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem2Report {
    pub n: u32,
    /// (−1)<sup>n</sup>, the sign relating the two strings.
    pub factor: i8,
    /// Ent recursion equals `factor` × σ<sub>y</sub> recursion.
    pub string_pass: bool,
    pub string_first_mismatch: Option<usize>,
    /// Ent recursion equals the parity formula.
    pub chi_pass: bool,
    pub chi_first_mismatch: Option<usize>,
    /// Ent<sub>n</sub> = ((−1)<sup>n</sup>/2) σ<sub>y</sub><sup>⊗2n</sup> on dense
    /// matrices; only for n ≤ [`MAX_DENSE_N`].
    pub dense: Option<DenseCheck>,
}

impl Theorem2Report {
    pub fn passed(&self) -> bool {
        self.string_pass && self.chi_pass && self.dense.as_ref().is_none_or(|d| d.pass)
    }
}

/// Checks Ent<sub>n</sub> = ((−1)<sup>n</sup>/2) σ<sub>y</sub><sup>⊗2n</sup>.
///
/// The string check compares the two block recursions; the dense check
/// compares Ent<sub>n</sub> against an explicit Kronecker power of σ<sub>y</sub>.
pub fn verify_theorem2(n: u32) -> Result<Theorem2Report> {
    check_n(n)?;
    let ent = sign_string_ent(n)?;
    let sigma = sign_string_sigma(n)?;
    let chi = sign_string_chi(n)?;
    let factor: i8 = if n.is_multiple_of(2) { 1 } else { -1 };
    let string_first_mismatch = ent.first_mismatch(&sigma, factor < 0);
    let chi_first_mismatch = ent.first_mismatch(&chi, false);

    let dense = if n <= MAX_DENSE_N {
        let lhs = ent_matrix_dense(n)?;
        let rhs = sigma_y_kron_power(n)?.scale(Complex::new(0.5 * f64::from(factor), 0.0));
        let len = lhs.rows();
        let first = lhs
            .entries()
            .iter()
            .zip(rhs.entries())
            .position(|(a, b)| a != b)
            .map(|i| (i / len, i % len));
        Some(DenseCheck {
            pass: first.is_none(),
            first_mismatch: first,
        })
    } else {
        None
    };

    Ok(Theorem2Report {
        n,
        factor,
        string_pass: string_first_mismatch.is_none(),
        string_first_mismatch,
        chi_pass: chi_first_mismatch.is_none(),
        chi_first_mismatch,
        dense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ENT2: &str = "+--+-++--++-+--+";

    fn binary(j: usize, width: usize) -> String {
        format!("{j:0width$b}")
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn chi_basics() {
        assert_eq!(chi("0000").unwrap(), 1);
        assert_eq!(chi("0001").unwrap(), -1);
        assert_eq!(chi("").unwrap(), 1);
        assert!(chi("001").is_err());
        assert!(chi("0a").is_err());
        let seq: String = (0..16)
            .map(|j| if chi(&binary(j, 4)).unwrap() > 0 { '+' } else { '-' })
            .collect();
        assert_eq!(seq, ENT2);
    }

    #[test]
    fn ent_strings() {
        assert_eq!(sign_string_ent(1).unwrap().to_string(), "+--+");
        assert_eq!(sign_string_ent(2).unwrap().to_string(), ENT2);
        let e3 = sign_string_ent(3).unwrap();
        assert_eq!(e3.len(), 64);
        assert_eq!(e3.block_word().unwrap(), "PNNPNPPNNPPNPNNP");
        assert_eq!(sign_string_ent(1).unwrap().block_word().unwrap(), "P");
    }

    #[test]
    fn sigma_strings() {
        assert_eq!(sign_string_sigma(1).unwrap().to_string(), "-++-");
        assert_eq!(sign_string_sigma(2).unwrap().to_string(), ENT2);
        assert_eq!(sign_string_sigma(1).unwrap().kind(), SignKind::SigmaY);
    }

    #[test]
    fn n_out_of_range() {
        assert!(sign_string_ent(0).is_err());
        assert!(sign_string_sigma(MAX_SIGN_N + 1).is_err());
        assert!(sign_string_chi(0).is_err());
        assert!(ent_matrix_dense(MAX_DENSE_N + 1).is_err());
        assert!(verify_theorem2(14).is_err());
    }

    #[test]
    fn recursion_matches_parity_for_small_n() {
        for n in 1..=6 {
            let e = sign_string_ent(n).unwrap();
            let width = 2 * n as usize;
            for j in 0..e.len() {
                assert_eq!(e.get(j), chi(&binary(j, width)).unwrap(), "n={n} j={j}");
            }
            let sigma = sign_string_sigma(n).unwrap();
            let factor = if n % 2 == 0 { 1 } else { -1 };
            assert!(sigma.iter().zip(e.iter()).all(|(s, t)| s == factor * t));
            assert_eq!(sign_string_chi(n).unwrap(), e);
        }
    }

    #[test]
    fn first_mismatch_reports_position() {
        let a = sign_string_ent(3).unwrap();
        let b = sign_string_sigma(3).unwrap();
        assert_eq!(a.first_mismatch(&b, false), Some(0));
        assert_eq!(a.first_mismatch(&b, true), None);
        let mut tweaked = a.clone();
        tweaked.bits[0] ^= 1 << 37;
        assert_eq!(a.first_mismatch(&tweaked, false), Some(37));
        assert_eq!(a.first_mismatch(&sign_string_ent(2).unwrap(), false), Some(16));
    }

    #[test]
    fn palindromes_and_negation() {
        for n in 1..=7 {
            let e = sign_string_ent(n).unwrap();
            assert!(e.is_palindromic());
            assert!(sign_string_sigma(n).unwrap().is_palindromic());
            assert_eq!(e.negated().first_mismatch(&e, true), None);
        }
        let mut broken = sign_string_ent(4).unwrap();
        broken.bits[0] ^= 1;
        assert!(!broken.is_palindromic());
        assert_eq!(broken.block_word(), None);
    }

    #[test]
    fn fact1_positions() {
        assert_eq!(fact1_position(1, 4).unwrap(), 2);
        assert_eq!(fact1_position(2, 4).unwrap(), 3);
        assert!(fact1_position(0, 4).is_err());
        assert!(fact1_position(5, 4).is_err());
        // brute force: enumerate width-bit strings lexicographically
        for width in [2usize, 4, 6, 8] {
            let b: Vec<String> = (0..1usize << width).map(|j| binary(j, width)).collect();
            for k in 1..=width {
                let target: String = (1..=width).rev().map(|p| if p == k { '1' } else { '0' }).collect();
                let pos = b.iter().position(|s| *s == target).unwrap() + 1;
                assert_eq!(fact1_position(k, width).unwrap(), pos);
            }
        }
    }

    #[test]
    fn permutation_parity() {
        let all = PermutationWord::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].images(), &[0, 1, 2]);
        let signs: Vec<i8> = all.iter().map(PermutationWord::parity).collect();
        assert_eq!(signs, vec![1, -1, -1, 1, 1, -1]);
        // inversion count oracle
        for p in PermutationWord::all(5) {
            let im = p.images();
            let inv = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&(i, j)| im[i] > im[j])
                .count();
            assert_eq!(p.parity(), if inv % 2 == 0 { 1 } else { -1 });
        }
        assert!(PermutationWord::new(vec![0, 0]).is_err());
        assert_eq!(PermutationWord::all(1).len(), 1);
    }

    #[test]
    fn order_two_is_determinant() {
        let h = Hypermatrix::new(vec![2, 2], vec![c(1.0, 2.0), c(3.0, 0.0), c(-1.0, 1.0), c(0.5, 0.0)]).unwrap();
        let det = c(1.0, 2.0) * c(0.5, 0.0) - c(3.0, 0.0) * c(-1.0, 1.0);
        assert!((hdet_general(&h).unwrap() - det).norm() < 1e-14);
        assert!((hdet_reduced(&h).unwrap() - det).norm() < 1e-14);
        // side 3
        let m: Vec<f64> = vec![2.0, -1.0, 0.0, 1.0, 3.0, 2.0, 0.0, 1.0, 4.0];
        let h3 = Hypermatrix::new(vec![3, 3], m.iter().map(|&x| c(x, 0.0)).collect()).unwrap();
        let det3 = 2.0 * (3.0 * 4.0 - 2.0 * 1.0) - -(1.0 * 4.0 - 2.0 * 0.0) + 0.0;
        assert!((hdet_general(&h3).unwrap().re - det3).abs() < 1e-12);
        assert!((hdet_reduced(&h3).unwrap().re - det3).abs() < 1e-12);
    }

    #[test]
    fn odd_order_vanishes() {
        let h = Hypermatrix::from_fn(vec![2, 2, 2], |i| c(1.0 + i[0] as f64, i[1] as f64 - 2.0 * i[2] as f64)).unwrap();
        assert!(hdet_general(&h).unwrap().norm() < 1e-12);
        assert_eq!(hdet_reduced(&h), Err(Error::OddOrder(3)));
        let h3 = Hypermatrix::from_fn(vec![3, 3, 3], |i| c((i[0] * 9 + i[1] * 3 + i[2]) as f64, 1.0)).unwrap();
        assert!(hdet_general(&h3).unwrap().norm() < 1e-9);
    }

    #[test]
    fn four_qubit_eight_term_expansion() {
        // ψ0000ψ1111 − ψ0001ψ1110 − ψ0010ψ1101 + ψ0011ψ1100
        // − ψ0100ψ1011 + ψ0101ψ1010 + ψ0110ψ1001 − ψ0111ψ1000
        let x: Vec<Complex> = (0..16)
            .map(|j| c(0.1 * j as f64 + 0.3, 0.05 * (j * j) as f64 - 0.4))
            .collect();
        let signs = [1.0, -1.0, -1.0, 1.0, -1.0, 1.0, 1.0, -1.0];
        let expect: Complex = (0..8).map(|j| x[j] * x[15 - j] * signs[j]).sum();
        let h = Hypermatrix::new(vec![2; 4], x.clone()).unwrap();
        assert!((hdet_reduced(&h).unwrap() - expect).norm() < 1e-12);
        assert!((hdet_general(&h).unwrap() - expect).norm() < 1e-12);
        let s = QubitState::from_amplitudes_unchecked(x);
        assert!((hdet_fast(&s).unwrap() - expect).norm() < 1e-12);
    }

    #[test]
    fn non_cuboid_and_cap() {
        let h = Hypermatrix::zeros(vec![2, 3]).unwrap();
        assert!(matches!(hdet_general(&h), Err(Error::NotCuboid(_))));
        let big = Hypermatrix::zeros(vec![4; 8]).unwrap();
        assert!(matches!(hdet_general(&big), Err(Error::SizeCap { .. })));
        assert!(matches!(hdet_reduced(&big), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn dense_matrices() {
        let e1 = ent_matrix_dense(1).unwrap();
        let expect = Matrix::from_real(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.5, //
                0.0, 0.0, -0.5, 0.0, //
                0.0, -0.5, 0.0, 0.0, //
                0.5, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert_eq!(e1, expect);
        let y2 = Matrix::from_real(
            4,
            4,
            &[
                0.0, 0.0, 0.0, -1.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert_eq!(sigma_y_dense(1).unwrap(), y2);
        assert_eq!(sigma_y_kron_power(1).unwrap(), y2);
        for n in 1..=3 {
            assert_eq!(sigma_y_dense(n).unwrap(), sigma_y_kron_power(n).unwrap());
        }
    }

    #[test]
    fn ent1_quadratic_form() {
        let x = [c(0.3, 0.1), c(-1.2, 0.4), c(0.7, -0.9), c(2.0, 0.5)];
        let e1 = ent_matrix_dense(1).unwrap();
        let ex = e1.apply(&x).unwrap();
        let q: Complex = x.iter().zip(&ex).map(|(a, b)| a * b).sum();
        let expect = x[0] * x[3] - x[1] * x[2];
        assert!((q - expect).norm() < 1e-14);
    }

    #[test]
    fn kronecker_sign_rule() {
        // antidiag(σ_y⊗2 ⊗ M) = (−m, m, m, −m)
        let m = [c(2.0, 0.0), c(-3.0, 1.0)];
        let mm = Matrix::new(2, 2, vec![ZERO, m[0], m[1], ZERO]).unwrap();
        let k = sigma_y_kron_power(1).unwrap().kron(&mm);
        let anti: Vec<Complex> = (0..8).map(|j| k.get(j, 7 - j)).collect();
        let expect = [-m[0], -m[1], m[0], m[1], m[0], m[1], -m[0], -m[1]];
        assert_eq!(anti, expect);
        for i in 0..8 {
            for j in 0..8 {
                if i + j != 7 {
                    assert_eq!(k.get(i, j), ZERO);
                }
            }
        }
    }

    #[test]
    fn ent_matches_sigma_small() {
        let r1 = verify_theorem2(1).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.factor, -1);
        let r2 = verify_theorem2(2).unwrap();
        assert!(r2.passed());
        assert_eq!(r2.factor, 1);
        assert_eq!(
            r2.dense,
            Some(DenseCheck {
                pass: true,
                first_mismatch: None
            })
        );
        let r6 = verify_theorem2(6).unwrap();
        assert!(r6.passed() && r6.dense.is_none());
    }
}
