//! Brute-force reference computations for tests.
//!
//! Nothing here goes through the closed-form evaluator, the pullback, or
//! the linear system: pairings are summed entry by entry, forms are built up
//! one basis vector at a time with the refinement law, and twists are
//! applied one after another on plain bit arrays.

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::heegaard::HeegaardDiagram;
use crate::quad_form::{HValue, InnerSpace, QuadraticRefinement};
use crate::report::ValidationReport;

pub const BRUTE_FORCE_CURVE_LIMIT: usize = 20;
pub const EXHAUSTIVE_FORM_LIMIT: usize = 10;

type Bits = Vec<bool>;

struct PlainForm {
    gram: Vec<Bits>,
    values: Vec<u8>,
}

fn to_bits(v: &BitVector) -> Bits {
    (0..v.len()).map(|i| v.get(i)).collect()
}

fn gram_of(space: &InnerSpace) -> Vec<Bits> {
    space.pairing().row_vectors().iter().map(to_bits).collect()
}

fn pair(gram: &[Bits], x: &[bool], y: &[bool]) -> bool {
    let mut acc = false;
    for (i, row) in gram.iter().enumerate() {
        for (j, &entry) in row.iter().enumerate() {
            acc ^= x[i] & entry & y[j];
        }
    }
    acc
}

impl PlainForm {
    fn new(g: &QuadraticRefinement) -> Self {
        Self {
            gram: gram_of(g.space()),
            values: g.basis_values().iter().map(|v| v.half_units()).collect(),
        }
    }

    /// g(y + e_i) = g(y) + g(e_i) + y.e_i, starting from g(0) = 0.
    fn eval(&self, x: &[bool]) -> u8 {
        let d = x.len();
        let mut partial = vec![false; d];
        let mut acc = 0u8;
        for i in 0..d {
            if x[i] {
                let mut e = vec![false; d];
                e[i] = true;
                acc += self.values[i] + 2 * u8::from(pair(&self.gram, &partial, &e));
                acc %= 4;
                partial[i] = true;
            }
        }
        acc
    }

    fn twist(&self, x: &mut Bits, a: &[bool]) {
        if pair(&self.gram, x, a) {
            for (xi, &ai) in x.iter_mut().zip(a) {
                *xi ^= ai;
            }
        }
    }
}

/// Every `epsilon` in `(Z/2)^n` whose twist word zeroes the form on all
/// `b`-curves, sorted lexicographically.
pub fn brute_force_twists(diagram: &HeegaardDiagram) -> Result<Vec<BitVector>> {
    let n = diagram.curve_count();
    if n > BRUTE_FORCE_CURVE_LIMIT {
        return Err(Error::Capacity {
            what: "curve count",
            value: n,
            limit: BRUTE_FORCE_CURVE_LIMIT,
        });
    }
    let plain = PlainForm::new(diagram.form());
    let a: Vec<Bits> = diagram.a_curves().iter().map(to_bits).collect();
    let b: Vec<Bits> = diagram.b_curves().iter().map(to_bits).collect();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let chosen: Bits = (0..n).map(|j| mask >> j & 1 == 1).collect();
        let all_vanish = b.iter().all(|bk| {
            let mut image = bk.clone();
            for (j, aj) in a.iter().enumerate() {
                if chosen[j] {
                    plain.twist(&mut image, aj);
                }
            }
            plain.eval(&image) == 0
        });
        if all_vanish {
            found.push(BitVector::from_bools(&chosen));
        }
    }
    found.sort();
    Ok(found)
}

/// Checks the refinement law on all pairs and `2 g(x) = x . x` on all
/// vectors, for `d <= 10`.
pub fn exhaustive_form_check(g: &QuadraticRefinement) -> Result<ValidationReport> {
    exhaustive_check_with(g.space(), |x| g.eval(x).expect("length matches"))
}

/// [`exhaustive_form_check`] against an arbitrary evaluator.
pub fn exhaustive_check_with(
    space: &InnerSpace,
    eval: impl Fn(&BitVector) -> HValue,
) -> Result<ValidationReport> {
    let d = space.dimension();
    if d > EXHAUSTIVE_FORM_LIMIT {
        return Err(Error::Capacity {
            what: "dimension",
            value: d,
            limit: EXHAUSTIVE_FORM_LIMIT,
        });
    }
    let gram = gram_of(space);
    let vectors: Vec<Bits> = (0u64..(1u64 << d))
        .map(|m| (0..d).map(|i| m >> i & 1 == 1).collect())
        .collect();
    let values: Vec<HValue> = vectors
        .iter()
        .map(|x| eval(&BitVector::from_bools(x)))
        .collect();
    let mut report = ValidationReport::new();
    if values[0] != HValue::ZERO {
        report.violation("zero", "g(0) != 0", vec![BitVector::zeros(d)]);
    }
    for (x, &gx) in vectors.iter().zip(&values) {
        if gx.double() != HValue::embed(pair(&gram, x, x)) {
            report.violation(
                "double",
                "2 g(x) != embed(x.x)",
                vec![BitVector::from_bools(x)],
            );
            break;
        }
    }
    'outer: for (xi, x) in vectors.iter().enumerate() {
        for (yi, y) in vectors.iter().enumerate() {
            let expected = values[xi] + values[yi] + HValue::embed(pair(&gram, x, y));
            if values[xi ^ yi] != expected {
                report.violation(
                    "refinement-law",
                    "g(x+y) != g(x) + g(y) + x.y",
                    vec![BitVector::from_bools(x), BitVector::from_bools(y)],
                );
                break 'outer;
            }
        }
    }
    Ok(report)
}

/// `g(x)` by sequential application of the refinement law.
pub fn eval_by_law(g: &QuadraticRefinement, x: &BitVector) -> HValue {
    HValue::from_half_units(i64::from(PlainForm::new(g).eval(&to_bits(x))))
}

/// `x -> x + (x.a) a` summed entry by entry.
pub fn transvect(space: &InnerSpace, x: &BitVector, a: &BitVector) -> BitVector {
    let gram = gram_of(space);
    let (xb, ab) = (to_bits(x), to_bits(a));
    if pair(&gram, &xb, &ab) {
        let summed: Bits = xb.iter().zip(&ab).map(|(p, q)| p ^ q).collect();
        BitVector::from_bools(&summed)
    } else {
        x.clone()
    }
}
