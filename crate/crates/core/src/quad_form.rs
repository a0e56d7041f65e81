//! The value group `H = (1/2 Z)/(2 Z)`, mod-2 inner-product spaces and
//! quadratic refinements of their pairing.
//!
//! Values of `H` are stored in half-integer units: `HValue` wraps `q` in
//! `0..4` and denotes `q/2`. This is the `Z/4` convention, so the mod-2
//! pairing embeds as `1 -> q = 2` and the refinement law reads
//! `q(x + y) = q(x) + q(y) + 2 (x . y)  (mod 4)`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::report::ValidationReport;

/// Default cap on `d` for the pairwise refinement-law check in
/// [`QuadraticRefinement::validate`].
pub const PAIRWISE_CHECK_LIMIT: usize = 10;

/// Default cap on `d` for [`QuadraticRefinement::gauss_invariant`].
pub const GAUSS_LIMIT: usize = 24;

/// An element of the cyclic group of order 4, in half-integer units.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct HValue(u8);

impl HValue {
    pub const ZERO: HValue = HValue(0);
    pub const HALF: HValue = HValue(1);
    pub const ONE: HValue = HValue(2);
    pub const THREE_HALVES: HValue = HValue(3);

    /// Reduces `q` modulo 4.
    pub fn from_half_units(q: i64) -> Self {
        HValue(q.rem_euclid(4) as u8)
    }

    pub fn half_units(self) -> u8 {
        self.0
    }

    /// The inclusion `Z/2 -> H`.
    pub fn embed(bit: bool) -> Self {
        if bit {
            HValue::ONE
        } else {
            HValue::ZERO
        }
    }

    /// Whether the value lies in the image of `Z/2` (annulus classes).
    pub fn is_integral(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// The preimage under [`HValue::embed`], if the value is integral.
    pub fn to_bit(self) -> Option<bool> {
        self.is_integral().then_some(self.0 == 2)
    }

    pub fn double(self) -> Self {
        self + self
    }
}

impl TryFrom<u8> for HValue {
    type Error = String;

    fn try_from(q: u8) -> std::result::Result<Self, Self::Error> {
        if q < 4 {
            Ok(HValue(q))
        } else {
            Err(format!("value {q} is outside 0..=3"))
        }
    }
}

impl From<HValue> for u8 {
    fn from(h: HValue) -> u8 {
        h.0
    }
}

impl Add for HValue {
    type Output = HValue;
    fn add(self, rhs: HValue) -> HValue {
        HValue((self.0 + rhs.0) & 3)
    }
}

impl AddAssign for HValue {
    fn add_assign(&mut self, rhs: HValue) {
        *self = *self + rhs;
    }
}

impl Neg for HValue {
    type Output = HValue;
    fn neg(self) -> HValue {
        HValue((4 - self.0) & 3)
    }
}

impl Sub for HValue {
    type Output = HValue;
    fn sub(self, rhs: HValue) -> HValue {
        self + (-rhs)
    }
}

impl fmt::Display for HValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1/2",
            2 => "1",
            _ => "3/2",
        })
    }
}

impl fmt::Debug for HValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HValue({self})")
    }
}

/// `(Z/2)^d` with a bilinear pairing given by its Gram matrix.
///
/// Construction only checks that the matrix is square; symmetry and
/// non-degeneracy are reported by [`InnerSpace::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerSpace {
    pairing: BitMatrix,
}

impl InnerSpace {
    pub fn new(pairing: BitMatrix) -> Result<Self> {
        check_len(pairing.rows(), pairing.cols())?;
        Ok(Self { pairing })
    }

    /// `genus` hyperbolic blocks `[[0,1],[1,0]]` on `(e_{2k}, e_{2k+1})`.
    pub fn standard_symplectic(genus: usize) -> Self {
        let d = 2 * genus;
        let mut q = BitMatrix::zeros(d, d);
        for k in 0..genus {
            q.set(2 * k, 2 * k + 1, true);
            q.set(2 * k + 1, 2 * k, true);
        }
        Self { pairing: q }
    }

    /// The identity pairing, `e_i . e_j = [i == j]`.
    pub fn diagonal(dimension: usize) -> Self {
        Self {
            pairing: BitMatrix::identity(dimension),
        }
    }

    pub fn dimension(&self) -> usize {
        self.pairing.rows()
    }

    pub fn pairing(&self) -> &BitMatrix {
        &self.pairing
    }

    /// `Q y`, the vector whose dot product with `x` is `x . y`.
    pub fn dual(&self, y: &BitVector) -> Result<BitVector> {
        self.pairing.apply(y)
    }

    /// `x^T Q y`.
    pub fn intersection(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        check_len(self.dimension(), x.len())?;
        let qy = self.dual(y)?;
        Ok(x.dot_unchecked(&qy))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairing == self.pairing.transpose()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let d = self.dimension();
        let t = self.pairing.transpose();
        if self.pairing != t {
            let (i, j) = (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .find(|&(i, j)| self.pairing.get(i, j) != t.get(i, j))
                .expect("asymmetric matrix has a differing entry");
            report.violation(
                "symmetry",
                format!("e{i}.e{j} != e{j}.e{i}"),
                vec![BitVector::unit(d, i), BitVector::unit(d, j)],
            );
        }
        let rk = self.pairing.rank_kernel();
        if rk.rank != d {
            report.violation(
                "non-degeneracy",
                format!("pairing has rank {} < {d}", rk.rank),
                rk.kernel_basis,
            );
        }
        report
    }
}

/// A function `g: (Z/2)^d -> H` determined by its values on the basis and
/// the law `g(x + y) = g(x) + g(y) + x . y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRefinement {
    space: Arc<InnerSpace>,
    values: Vec<HValue>,
}

impl QuadraticRefinement {
    pub fn new(space: Arc<InnerSpace>, basis_values: Vec<HValue>) -> Result<Self> {
        check_len(space.dimension(), basis_values.len())?;
        Ok(Self {
            space,
            values: basis_values,
        })
    }

    pub fn space(&self) -> &Arc<InnerSpace> {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn basis_values(&self) -> &[HValue] {
        &self.values
    }

    /// `g(x)` for `x = sum_{i in S} e_i`: the sum of `g(e_i)` over `S` plus
    /// `embed(Q[i][j])` for every pair `i < j` in `S`.
    pub fn eval(&self, x: &BitVector) -> Result<HValue> {
        check_len(self.dimension(), x.len())?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &BitVector) -> HValue {
        let q = self.space.pairing();
        let mut linear = 0usize;
        let mut pairs = 0usize;
        for i in x.iter_ones() {
            linear += self.values[i].half_units() as usize;
            pairs += q.row(i).and_count_above(x, i);
        }
        HValue::from_half_units((linear + 2 * pairs) as i64)
    }

    /// Parity check plus the exhaustive law check for `d <= 10`.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(PAIRWISE_CHECK_LIMIT)
    }

    /// Checks `g(e_i) = Q[i][i] (mod 2)` for every `i`. When
    /// `d <= exhaustive_limit`, also checks the refinement law on every pair
    /// and `2 g(x) = embed(x . x)` on every vector.
    pub fn validate_with(&self, exhaustive_limit: usize) -> ValidationReport {
        let mut report = ValidationReport::new();
        let d = self.dimension();
        let q = self.space.pairing();
        for (i, v) in self.values.iter().enumerate() {
            if v.is_integral() == q.get(i, i) {
                report.violation(
                    "parity",
                    format!("g(e{i}) = {v} but e{i}.e{i} = {}", u8::from(q.get(i, i))),
                    vec![BitVector::unit(d, i)],
                );
            }
        }
        if d <= exhaustive_limit.min(16) {
            self.exhaustive_law_check(&mut report);
        }
        report
    }

    fn exhaustive_law_check(&self, report: &mut ValidationReport) {
        let d = self.dimension();
        let size = 1u64 << d;
        let vec_of = |m: u64| BitVector::from_u64(d, m);
        let table: Vec<HValue> = (0..size).map(|m| self.eval_unchecked(&vec_of(m))).collect();
        let duals: Vec<u64> = (0..d)
            .map(|j| {
                // Column j of Q as a mask, so x . e_j = parity(x & col_j).
                (0..d).fold(0u64, |acc, i| {
                    acc | (u64::from(self.space.pairing().get(i, j)) << i)
                })
            })
            .collect();
        let pair = |x: u64, y: u64| -> bool {
            let mut acc = 0u32;
            let mut rest = y;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                acc ^= (x & duals[j]).count_ones() & 1;
                rest &= rest - 1;
            }
            acc == 1
        };
        for x in 0..size {
            if table[x as usize].double() != HValue::embed(pair(x, x)) {
                report.violation("double", "2 g(x) != embed(x.x)", vec![vec_of(x)]);
                return;
            }
        }
        for x in 0..size {
            for y in 0..size {
                let lhs = table[(x ^ y) as usize];
                let rhs = table[x as usize] + table[y as usize] + HValue::embed(pair(x, y));
                if lhs != rhs {
                    report.violation(
                        "refinement-law",
                        "g(x+y) != g(x) + g(y) + x.y",
                        vec![vec_of(x), vec_of(y)],
                    );
                    return;
                }
            }
        }
    }

    /// The sum `S = sum_x i^{q(x)}` over all `2^d` vectors, as an exact
    /// Gaussian integer.
    pub fn gauss_sum(&self, limit: usize) -> Result<GaussSum> {
        let d = self.dimension();
        let limit = limit.min(40);
        if d > limit {
            return Err(Error::Capacity {
                what: "dimension",
                value: d,
                limit,
            });
        }
        let q = self.space.pairing();
        // For bit i: mask of j > i with Q[i][j] and of j < i with Q[j][i].
        // Toggling i changes the pair count by popcount(x & (upper | lower)).
        let neighbours: Vec<u64> = (0..d)
            .map(|i| {
                (0..d).fold(0u64, |acc, j| {
                    let hit = (j > i && q.get(i, j)) || (j < i && q.get(j, i));
                    acc | (u64::from(hit) << j)
                })
            })
            .collect();
        let values: Vec<u32> = self
            .values
            .iter()
            .map(|v| u32::from(v.half_units()))
            .collect();

        let mut counts = [0u64; 4];
        let mut x = 0u64;
        let mut cur = 0u32;
        counts[0] += 1;
        for step in 1u64..(1u64 << d) {
            let i = step.trailing_zeros() as usize;
            let delta = values[i] + 2 * (x & neighbours[i]).count_ones();
            if x >> i & 1 == 0 {
                cur = cur.wrapping_add(delta);
            } else {
                cur = cur.wrapping_sub(delta);
            }
            x ^= 1 << i;
            counts[(cur & 3) as usize] += 1;
        }
        Ok(GaussSum {
            re: counts[0] as i64 - counts[2] as i64,
            im: counts[1] as i64 - counts[3] as i64,
        })
    }

    /// The phase `beta` in `Z/8` with `S = 2^{d/2} exp(2 pi i beta / 8)`,
    /// using the default dimension limit.
    pub fn gauss_invariant(&self) -> Result<u8> {
        self.gauss_invariant_with_limit(GAUSS_LIMIT)
    }

    pub fn gauss_invariant_with_limit(&self, limit: usize) -> Result<u8> {
        let d = self.dimension();
        let s = self.gauss_sum(limit)?;
        s.phase(d).ok_or_else(|| {
            Error::InvalidForm(format!("Gauss sum {s} does not have modulus 2^({d}/2)"))
        })
    }
}

/// An exact Gaussian integer `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussSum {
    pub re: i64,
    pub im: i64,
}

impl GaussSum {
    /// `beta` with `self = 2^{d/2} exp(2 pi i beta / 8)`, if one exists.
    ///
    /// Even `beta` needs `d` even (`2^{d/2} i^{beta/2}`); odd `beta` needs `d`
    /// odd (`2^{(d-1)/2} (1 + i) i^{(beta-1)/2}`).
    pub fn phase(&self, d: usize) -> Option<u8> {
        let m = 1i64 << (d / 2);
        let candidates: [(i64, i64); 4] = if d.is_multiple_of(2) {
            [(m, 0), (0, m), (-m, 0), (0, -m)]
        } else {
            [(m, m), (-m, m), (-m, -m), (m, -m)]
        };
        let offset = (d % 2) as u8;
        candidates
            .iter()
            .position(|&c| c == (self.re, self.im))
            .map(|k| 2 * k as u8 + offset)
    }
}

impl fmt::Display for GaussSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}
