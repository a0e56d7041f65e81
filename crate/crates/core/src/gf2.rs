//! Bit-packed linear algebra over the two-element field.
//!
//! Coordinate `i` of a [`BitVector`] lives in word `i / 64`, bit `i % 64`.
//! Bits past `len` are always zero, so word-level equality, hashing and
//! popcounts need no masking.
//!
//! Elimination is Gauss-Jordan to reduced row echelon form. Pivot search
//! scans columns left to right and, within a column, rows top-down; the
//! first row carrying a one becomes the pivot. There is no randomization,
//! so every result (rank, kernel basis order, particular solution) is a
//! deterministic function of the input.

use std::cmp::Ordering;
use std::fmt;
use std::ops::BitXorAssign;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// An element of `(Z/2)^len`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The basis vector `e_index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` from the low `len` bits of `mask`.
    ///
    /// # Panics
    ///
    /// Panics if `len > 64`.
    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask & low_mask(len);
        }
        v
    }

    /// Builds a vector from raw words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "bit index {index} out of range for length {}",
            self.len
        );
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set coordinates, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    /// Parity of the number of positions where both vectors are 1.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        check_len(self.len, other.len)?;
        Ok(self.dot_unchecked(other))
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &BitVector) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Number of indices `j > index` set in both `self` and `other`.
    pub(crate) fn and_count_above(&self, other: &BitVector, index: usize) -> usize {
        let start = index + 1;
        if start >= self.len {
            return 0;
        }
        let first = start / WORD_BITS;
        let head = (self.words[first] & other.words[first]) & (!0u64 << (start % WORD_BITS));
        let tail: u32 = self.words[first + 1..]
            .iter()
            .zip(&other.words[first + 1..])
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        head.count_ones() as usize + tail as usize
    }

    /// Coordinatewise sum.
    pub fn add(&self, other: &BitVector) -> Result<BitVector> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &BitVector) -> Result<()> {
        check_len(self.len, other.len)?;
        xor_words(&mut self.words, &other.words);
        Ok(())
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= low_mask(rem);
            }
        }
    }
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        !0
    } else {
        (1u64 << bits) - 1
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// In-place sum.
///
/// # Panics
///
/// Panics on a length mismatch; use [`BitVector::add_assign`] for a checked
/// version.
impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "bit vector length mismatch");
        xor_words(&mut self.words, &rhs.words);
    }
}

/// Lexicographic order of the bit strings, coordinate 0 first and `0 < 1`.
/// A proper prefix sorts first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if (a >> bit) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid character {found:?} at position {position} (expected '0' or '1')")]
pub struct ParseBitsError {
    pub position: usize,
    pub found: char,
}

/// Parses a string of `'0'`/`'1'` characters; character `i` is coordinate `i`.
impl FromStr for BitVector {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut v = BitVector::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(ParseBitsError {
                        position: i,
                        found: other,
                    })
                }
            }
        }
        Ok(v)
    }
}

/// A `rows x cols` matrix over GF(2), stored row-major as bit vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            data: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Assembles a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { cols, data: rows })
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, index: usize) -> &BitVector {
        &self.data[index]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row].set(col, value)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.data[c].set(r, true);
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols
    }

    /// `M x`: component `k` is `row_k . x`.
    pub fn apply(&self, x: &BitVector) -> Result<BitVector> {
        check_len(self.cols, x.len())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.rows());
        for (k, row) in self.data.iter().enumerate() {
            if row.dot_unchecked(x) {
                out.set(k, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self, None, false).pivots.len()
    }

    /// Rank together with a basis of the null space `{x : M x = 0}`.
    ///
    /// Basis vectors are listed in order of their free column; each has a
    /// single one among the free coordinates.
    pub fn rank_kernel(&self) -> RankKernel {
        let ech = Echelon::reduce(self, None, false);
        RankKernel {
            rank: ech.pivots.len(),
            kernel_basis: ech.kernel_basis(self.cols),
        }
    }

    /// Solves `M x = target`.
    ///
    /// Free variables are set to zero in the particular solution. When the
    /// system is inconsistent the returned [`Inconsistency`] carries a row
    /// combination `y` with `y^T M = 0` and `y . target = 1`.
    pub fn solve(&self, target: &BitVector) -> Result<SystemOutcome> {
        check_len(self.rows(), target.len())?;
        let ech = Echelon::reduce(self, Some(target), false);
        let rank = ech.pivots.len();
        let rhs = ech.rhs.as_ref().expect("rhs tracked");
        if (rank..self.rows()).any(|r| rhs.get(r)) {
            // Re-run with the row transform recorded to extract the witness.
            let traced = Echelon::reduce(self, Some(target), true);
            let rhs = traced.rhs.as_ref().expect("rhs tracked");
            let row = (rank..self.rows())
                .find(|&r| rhs.get(r))
                .expect("inconsistency is reproducible");
            let witness = traced.transform.expect("transform tracked")[row].clone();
            return Ok(SystemOutcome::Unsolvable(Inconsistency {
                eliminated_row: row,
                witness,
            }));
        }
        let mut particular = BitVector::zeros(self.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            if rhs.get(r) {
                particular.set(p, true);
            }
        }
        Ok(SystemOutcome::Solved(Solution {
            particular,
            kernel_basis: ech.kernel_basis(self.cols),
        }))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.iter().map(|r| r.to_string()))
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel_basis: Vec<BitVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: BitVector,
    pub kernel_basis: Vec<BitVector>,
}

impl Solution {
    /// Every solution, `particular + span(kernel_basis)`, sorted.
    ///
    /// # Panics
    ///
    /// Panics if the kernel has dimension 32 or more.
    pub fn enumerate(&self) -> Vec<BitVector> {
        let k = self.kernel_basis.len();
        assert!(k < 32, "solution set too large to enumerate");
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1u32 << k) {
            let mut x = self.particular.clone();
            for (i, b) in self.kernel_basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    x ^= b;
                }
            }
            out.push(x);
        }
        out.sort();
        out
    }
}

/// Certificate that `M x = t` has no solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    /// Index of the all-zero eliminated row whose right-hand side is 1.
    pub eliminated_row: usize,
    /// Coefficients `y` over the original rows with `y^T M = 0`, `y . t = 1`.
    pub witness: BitVector,
}

impl Inconsistency {
    pub fn certifies(&self, matrix: &BitMatrix, target: &BitVector) -> bool {
        if self.witness.len() != matrix.rows() || target.len() != matrix.rows() {
            return false;
        }
        let mut combo = BitVector::zeros(matrix.cols());
        for r in self.witness.iter_ones() {
            combo ^= matrix.row(r);
        }
        combo.is_zero() && self.witness.dot_unchecked(target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemOutcome {
    Solved(Solution),
    Unsolvable(Inconsistency),
}

struct Echelon {
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
    rhs: Option<BitVector>,
    transform: Option<Vec<BitVector>>,
}

impl Echelon {
    fn reduce(m: &BitMatrix, rhs: Option<&BitVector>, track: bool) -> Self {
        let n_rows = m.rows();
        let mut rows = m.data.clone();
        let mut rhs = rhs.cloned();
        let mut transform = track.then(|| BitMatrix::identity(n_rows).data);
        let mut pivots = Vec::new();

        for col in 0..m.cols {
            let rank = pivots.len();
            if rank == n_rows {
                break;
            }
            let Some(found) = (rank..n_rows).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            if let Some(t) = transform.as_mut() {
                t.swap(rank, found);
            }
            if let Some(b) = rhs.as_mut() {
                let (x, y) = (b.get(rank), b.get(found));
                b.set(rank, y);
                b.set(found, x);
            }

            let (word, shift) = (col / WORD_BITS, col % WORD_BITS);
            let pivot_row = std::mem::take(&mut rows[rank]);
            let pivot_rhs = rhs.as_ref().map(|b| b.get(rank));
            let pivot_transform = transform.as_mut().map(|t| std::mem::take(&mut t[rank]));
            for (i, row) in rows.iter_mut().enumerate() {
                if i == rank || (row.words[word] >> shift) & 1 == 0 {
                    continue;
                }
                // Entries left of `col` are zero in the pivot row.
                xor_words(&mut row.words[word..], &pivot_row.words[word..]);
                if let (Some(b), Some(true)) = (rhs.as_mut(), pivot_rhs) {
                    b.flip(i);
                }
                if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_transform.as_ref()) {
                    xor_words(&mut t[i].words, &pt.words);
                }
            }
            rows[rank] = pivot_row;
            if let (Some(t), Some(pt)) = (transform.as_mut(), pivot_transform) {
                t[rank] = pt;
            }
            pivots.push(col);
        }

        Self {
            rows,
            pivots,
            rhs,
            transform,
        }
    }

    fn kernel_basis(&self, cols: usize) -> Vec<BitVector> {
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(cols, free);
                for (r, &p) in self.pivots.iter().enumerate() {
                    if self.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Parses a bit string, mapping failure into a crate error.
pub fn bits(s: &str) -> Result<BitVector> {
    s.parse()
        .map_err(|e: ParseBitsError| Error::Precondition(e.to_string()))
}
